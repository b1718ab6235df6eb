import random

import pytest

from qdissect import lattice as L
from qdissect.lattice import (
    AffineMap,
    CosetSystem,
    CrossTermPresent,
    DegenerateLattice,
    NonConstantResidue,
    NotBoundedBelow,
    QuadForm2,
    SignFunctional,
)
from qdissect.pseries import TruncatedSeries as T, add
from qdissect.qdsl import evaluate
from qdissect.qproducts import ProductSpec, expand_product, named

UNIT = CosetSystem((1, 0), (0, 1), [(0, 0)])
PLUS = SignFunctional()

# expected transformed forms: (sign, E, A, B, C, D) for r = 0..9
G_TABLE = [
    (+1, 0, 50, 10, 50, 10),
    (+1, 1, 50, 0, 50, -20),
    (-1, 12, 50, -10, 50, 50),
    (-1, 3, 50, -20, 50, 20),
    (-1, 4, 50, -30, 50, -10),
    (-1, 15, 50, -40, 50, -40),
    (-1, 16, 50, 50, 50, 30),
    (-1, 7, 50, 40, 50, 0),
    (-1, 8, 50, 30, 50, -30),
    (+1, 9, 50, 20, 50, 40),
]


def test_partition_examples():
    assert L.verify_partition(L.LATTICE_5, 50)
    assert L.verify_partition(UNIT, 10)
    # (2,1) . (x,y) mod 5 separates these, so they are a valid choice
    along_axis = CosetSystem((2, 1), (-1, 2), [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)])
    assert L.verify_partition(along_axis, 20)
    clash = CosetSystem((2, 1), (-1, 2), [(0, 0), (1, 0), (2, 1), (3, 0), (4, 0)])
    assert not L.verify_partition(clash, 20)
    too_few = CosetSystem((2, 1), (-1, 2), [(0, 0), (1, 0)])
    assert not L.verify_partition(too_few, 5)


def test_degenerate_lattice():
    with pytest.raises(DegenerateLattice):
        L.verify_partition(CosetSystem((1, 2), (2, 4), [(0, 0)]), 3)


def test_coordinates_solve_exactly():
    cs = L.LATTICE_10
    assert cs.coordinates((2, 4)) == (1, 1)
    assert cs.coordinates((1, 0)) is None
    assert cs.coordinates((1, 0), (1, 0)) == (0, 0)


def test_residue_examples():
    assert L.residue_on_cosets(L.F_FORM, L.LATTICE_5, 5, 30) == [0, 1, 2, 3, 4]
    assert L.residue_on_cosets(L.G_FORM, L.LATTICE_10, 10, 30) == list(range(10))
    assert L.residue_on_cosets(QuadForm2(1, 0, 0, 0), UNIT, 1, 5) == [0]


def test_residue_non_constant():
    with pytest.raises(NonConstantResidue):
        L.residue_on_cosets(QuadForm2(1, 0, 1, 0), L.LATTICE_5, 5, 5)


def test_transform_table_rows():
    for r, (sign, E, A, B, C, D) in enumerate(G_TABLE):
        amap = L.LATTICE_10.affine_map(r)
        assert L.transform_form(L.G_FORM, amap) == QuadForm2(A, B, C, D, E)
        assert L.transform_sign(L.SIGN_M, amap).constant_sign == sign


def test_transform_examples():
    row7 = L.transform_form(L.G_FORM, L.LATTICE_10.affine_map(7))
    assert str(row7) == "7+50mu^2+40mu+50nu^2+0nu"
    ident = AffineMap.from_rows((1, 0), (0, 1), (0, 0))
    assert L.transform_form(L.F_FORM, ident) == L.F_FORM


def test_transform_sign_examples():
    amap = AffineMap.from_rows((2, 1), (-1, 2), (1, 0))
    assert L.transform_sign(L.SIGN_M, amap) == SignFunctional(0, 1, 1)
    amap0 = AffineMap.from_rows((2, 1), (-1, 2), (0, 0))
    assert L.transform_sign(L.SIGN_N, amap0) == SignFunctional(1, 0, 0)
    assert L.transform_sign(PLUS, amap) == PLUS


def test_transform_agrees_with_pointwise_evaluation():
    rng = random.Random(11)
    for _ in range(1000):
        cs, f = rng.choice([(L.LATTICE_5, L.F_FORM), (L.LATTICE_10, L.G_FORM)])
        r = rng.randrange(len(cs.reps))
        mu, nu = rng.randint(-50, 50), rng.randint(-50, 50)
        amap = cs.affine_map(r)
        m, n = amap.apply(mu, nu)
        assert L.transform_form(f, amap)(mu, nu) == f(m, n)
        for s in (L.SIGN_M, L.SIGN_N, SignFunctional(1, 1, 1)):
            assert L.transform_sign(s, amap)(mu, nu) == s(m, n)


def test_cross_term_rejected():
    with pytest.raises(CrossTermPresent):
        L.transform_form(L.F_FORM, AffineMap.from_rows((1, 1), (1, 0), (0, 0)))


def test_affine_map_validation():
    with pytest.raises(ValueError):
        AffineMap(((1, 0, 1), (0, 1, 0), (0, 0, 1)))
    with pytest.raises(ValueError):
        AffineMap(((1, 0), (0, 1)))


def test_bilateral_sum_examples():
    order = 2000
    u1u3 = expand_product(ProductSpec.of(10, -2, 4, 6, -8, 10, 10), order)
    assert L.bilateral_sum(L.F_FORM, L.SIGN_M, order) == u1u3
    assert L.bilateral_sum(L.G_FORM, L.SIGN_M, order) == named("u_2", order) * named("udag_4", order)
    assert L.bilateral_sum(QuadForm2(1, 0, 1, 0), PLUS, 0) == T.one(0)


def test_bilateral_sum_counts_sums_of_two_squares():
    got = L.bilateral_sum(QuadForm2(1, 0, 1, 0), PLUS, 50).coeffs
    direct = [sum(1 for a in range(-8, 9) for b in range(-8, 9) if a * a + b * b == n)
              for n in range(51)]
    assert list(got) == direct


def test_bilateral_sum_unbounded():
    with pytest.raises(NotBoundedBelow):
        L.bilateral_sum(QuadForm2(0, 1, 1, 0), PLUS, 10)
    with pytest.raises(NotBoundedBelow):
        L.bilateral_sum(QuadForm2(1, 5, 1, 0), PLUS, 10)


def test_f_components():
    order = 500
    comps = L.dissect_via_cosets(L.F_FORM, L.SIGN_M, L.LATTICE_5, 10, order)
    assert [res for res, _ in comps] == [0, 6, 2, 8, 4]
    for res, comp in comps:
        assert L.support_residues(comp, 10) <= {res}
    assert L.recombine(comps, order) == L.bilateral_sum(L.F_FORM, L.SIGN_M, order)
    by_res = dict(comps)
    assert by_res[6] == evaluate("-2*q^6*U_2*U_3", order)
    assert by_res[8].is_zero()


def test_f_components_match_printed_sums():
    # the same five double sums written with mu -> -mu reflections of our cosets
    order = 600
    printed = [(1, 0, 25, 5, 25, 5), (-1, 6, 25, 25, 25, 5), (1, 2, 25, 5, 25, 15),
               (1, 8, 25, 15, 25, 25), (-1, 4, 25, 15, 25, 15)]
    total = T.zero(order)
    for sign, E, A, B, C, D in printed:
        term = L.bilateral_sum(QuadForm2(A, B, C, D, E), SignFunctional(0, 1, 0), order)
        total = add(total, sign * term)
    assert total == named("u_1", order) * named("udag_3", order)


def test_g_components_match_terms():
    order = 500
    expected = ["U_1^2", "q*U_2*Phi", "0", "-q^3*U_2^2", "-q^4*U_1*U_3",
                "-q^15*U_4^2", "0", "-q^7*U_4*Phi", "-q^8*U_3^2", "q^9*U_2*U_4"]
    comps = L.dissect_via_cosets(L.G_FORM, L.SIGN_M, L.LATTICE_10, 10, order)
    assert [res for res, _ in comps] == list(range(10))
    for (res, comp), text in zip(comps, expected):
        assert comp == evaluate(text, order), res
    assert comps[2][1].is_zero() and comps[6][1].is_zero()


def test_partitions_at_acceptance_bound():
    assert L.verify_partition(L.LATTICE_5, 100)
    assert L.verify_partition(L.LATTICE_10, 100)
