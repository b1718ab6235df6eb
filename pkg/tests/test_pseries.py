import random

import pytest
from hypothesis import given, settings, strategies as st

from qdissect.pseries import (
    NonUnitConstantTerm,
    OutOfRange,
    TruncatedSeries as T,
    add,
    coefficient,
    convolve,
    dissect,
    dissect_compact,
    first_mismatch,
    invert,
    mul,
    negate_variable,
    power,
    shift,
    substitute_power,
)
from qdissect.qproducts import named


def naive_mul(a, b, order):
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        for j, y in enumerate(b[: order + 1 - i]):
            out[i + j] += x * y
    return out


coeff = st.integers(min_value=-(10**30), max_value=10**30)


@st.composite
def series(draw, order=None, unit=False):
    if order is None:
        order = draw(st.integers(0, 64))
    cs = draw(st.lists(coeff, min_size=order + 1, max_size=order + 1))
    if unit:
        cs[0] = draw(st.sampled_from([1, -1]))
    return T(cs, order)


@st.composite
def same_order(draw, count):
    order = draw(st.integers(0, 64))
    return [draw(series(order)) for _ in range(count)]


def rebuild(f, m):
    out = [0] * (f.order + 1)
    for r in range(min(m, f.order + 1)):
        for n, c in enumerate(dissect(f, m, r).coeffs):
            out[n + r] += c
    return T(out, f.order)


# -- small worked examples


def test_add_examples():
    assert T([1, -1]) + T([1, 1]) == T([2, 0])
    f = T([3, 1, 4])
    assert f + T.zero(2) == f
    assert T([1, 0, 1]) + T([0, 1, -1]) == T([1, 1, 0])


def test_add_takes_min_order():
    assert add(T([1, 2, 3]), T([1])).order == 0


def test_mul_examples():
    assert T([1, -1]) * T([1, 1]) == T([1, 0, -1], 1)
    assert mul(T([1, -1], 5), T([1] * 6)) == T.one(5)
    f = T([5, 0, -2, 7])
    assert f * T.one(3) == f


def test_invert_examples():
    assert invert(T([1, -1], 6)) == T([1] * 7)
    assert invert(T.one(4)) == T.one(4)
    assert invert(named("X", 3)) == T([1, 1, 0, -1])


def test_invert_rejects_non_unit():
    with pytest.raises(NonUnitConstantTerm):
        invert(T([2, 1]))
    with pytest.raises(NonUnitConstantTerm):
        invert(T([0, 1]))


def test_power_examples():
    assert power(T([1, 1], 2), 2) == T([1, 2, 1])
    assert power(T([9, 8, 7]), 0) == T.one(2)
    assert power(T([1, -1], 10), -2) == T([n + 1 for n in range(11)])
    with pytest.raises(NonUnitConstantTerm):
        power(T([3, 1]), -1)


def test_substitute_power_examples():
    assert substitute_power(T([1, 1]), 2) == T([1, 0, 1])
    f = T([4, 5, 6])
    assert substitute_power(f, 1) == f
    lhs = substitute_power(invert(named("phi", 20)), 2)
    assert lhs.order == 40
    assert lhs == invert(named("phi_2", 40))


def test_negate_variable_examples():
    assert negate_variable(T([1, 1, 1])) == T([1, -1, 1])
    f = T([3, -1, 4, 1, -5])
    assert negate_variable(negate_variable(f)) == f
    lhs = negate_variable(named("u_2", 300) * named("u_dag_4", 300))
    assert lhs == named("u_dag_2", 300) * named("u_4", 300)


def test_dissect_examples():
    ones = T([1] * 101)
    assert dissect(ones, 10, 3) == T([1 if n % 10 == 0 else 0 for n in range(91)])
    one = T.one(50)
    assert dissect(one, 10, 0) == T.one(50).truncate(50)
    for r in range(1, 10):
        assert dissect(one, 10, r).is_zero()
    assert dissect(invert(named("X", 200)), 10, 2).is_zero()


def test_dissect_order_is_largest_exact_multiple():
    f = T(range(1, 24))  # order 22
    assert dissect(f, 10, 2).order == 20
    assert dissect(f, 10, 3).order == 10
    assert dissect_compact(f, 10, 3).coeffs == (4, 14)


def test_dissect_bad_arguments():
    with pytest.raises(ValueError):
        dissect(T([1, 2]), 10, 10)
    with pytest.raises(ValueError):
        dissect(T([1, 2]), 0, 0)
    with pytest.raises(ValueError):
        dissect(T([1, 2]), 10, 5)


def test_coefficient_examples():
    inv_x = invert(named("X", 20))
    assert coefficient(inv_x, 0) == 1
    assert coefficient(inv_x, 12) == 0
    assert coefficient(invert(named("Y", 2)), 2) == 2
    with pytest.raises(OutOfRange):
        coefficient(inv_x, 21)
    with pytest.raises(OutOfRange):
        coefficient(inv_x, -1)


def test_first_mismatch():
    assert first_mismatch(T([1, 2, 3]), T([1, 2, 3])) is None
    assert first_mismatch(T([1, 2, 3]), T([1, 5, 3])) == (1, 2, 5)
    assert first_mismatch(T([1, 2, 3]), T([1, 2])) is None


def test_immutable_and_validated():
    f = T([1, 2])
    with pytest.raises(AttributeError):
        f.order = 5
    with pytest.raises(ValueError):
        T([], None)
    with pytest.raises(ValueError):
        T([1], -1)
    with pytest.raises(ValueError):
        f.truncate(3)


def test_shift():
    assert shift(T([1, 2, 3]), 1) == T([0, 1, 2])
    assert shift(T([1, 2, 3]), 5).is_zero()


# -- convolution against the schoolbook oracle


def test_convolve_matches_naive_on_mixed_shapes():
    rng = random.Random(7)
    for _ in range(300):
        la, lb = rng.randint(1, 120), rng.randint(1, 120)
        width = rng.choice([1, 5, 40, 200])
        a = [rng.randint(-(2**width), 2**width) for _ in range(la)]
        b = [rng.randint(-(2**width), 2**width) for _ in range(lb)]
        if rng.random() < 0.3:
            a = [x if rng.random() < 0.05 else 0 for x in a]
        length = rng.randint(1, la + lb)
        expect = naive_mul(a + [0] * length, b + [0] * length, length - 1)
        assert convolve(a, b, length) == expect


@given(same_order(2))
def test_mul_matches_naive(pair):
    f, g = pair
    assert mul(f, g).coeffs == tuple(naive_mul(f.coeffs, g.coeffs, f.order))


# -- ring axioms at a fixed order


@given(same_order(3))
def test_ring_axioms(triple):
    f, g, h = triple
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + T.zero(f.order) == f
    assert f * T.one(f.order) == f
    assert (f - f).is_zero()


@given(series(unit=True))
def test_inverse_is_two_sided(f):
    assert mul(f, invert(f)) == T.one(f.order)
    assert invert(invert(f)) == f


@given(series(unit=True), st.integers(-4, 4), st.integers(-4, 4))
@settings(max_examples=50)
def test_power_laws(f, a, b):
    assert power(f, a) * power(f, b) == power(f, a + b)


# -- dissection properties


@given(series(), st.integers(1, 12))
def test_dissection_reconstructs(f, m):
    assert rebuild(f, m) == f


@given(st.data())
@settings(max_examples=60)
def test_pull_out_rule(data):
    order = data.draw(st.integers(10, 120))
    f = data.draw(series(order))
    g = data.draw(series(order // 10))
    g10 = substitute_power(g, 10)
    r = data.draw(st.integers(0, 9))
    lhs = dissect(mul(f, g10), 10, r)
    rhs = mul(g10.truncate(lhs.order), dissect(f, 10, r))
    assert lhs == rhs


@given(series(), st.integers(1, 5), st.integers(1, 5))
def test_substitution_composes(f, a, b):
    assert substitute_power(f, a * b) == substitute_power(substitute_power(f, a), b)
