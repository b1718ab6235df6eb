"""Acceptance criteria, each checked exactly (zero tolerance).

Run under pytest, or directly with ``python tests/test_acceptance.py`` to get
one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import random
import subprocess
import sys
import textwrap

import pytest

from qdissect import identities, lattice
from qdissect.partitions import dp_signed_sums, enumerate_signed_sum
from qdissect.pseries import TruncatedSeries, dissect, invert, mul, substitute_power
from qdissect.qdsl import ParseError, evaluate, parse
from qdissect.qproducts import PRINTED_FORMS, expand_product, named, u_spec, U_spec

RESULTS: list[str] = []

G_TABLE = [
    (+1, 0, 50, 10, 50, 10), (+1, 1, 50, 0, 50, -20), (-1, 12, 50, -10, 50, 50),
    (-1, 3, 50, -20, 50, 20), (-1, 4, 50, -30, 50, -10), (-1, 15, 50, -40, 50, -40),
    (-1, 16, 50, 50, 50, 30), (-1, 7, 50, 40, 50, 0), (-1, 8, 50, 30, 50, -30),
    (+1, 9, 50, 20, 50, 40),
]


def criterion_1() -> tuple[bool, str]:
    scan = identities.theorem_scan("thm1", 2000)
    n = sum(len(v) for v in scan.checked.values())
    return scan.passed, f"first theorem scan to 2000, {n} coefficients, {len(scan.violations)} nonzero"


def criterion_2() -> tuple[bool, str]:
    scan = identities.theorem_scan("thm2", 2000)
    n = sum(len(v) for v in scan.checked.values())
    return scan.passed, f"second theorem scan to 2000, {n} coefficient pairs, {len(scan.violations)} off"


def criterion_3() -> tuple[bool, str]:
    reports = identities.verify_all(1000)
    failed = [r.id for r in reports if not r.passed]
    zero_ids = ["cor:Adiff0", "eq:XXR4.factored", "eq:YYR2.factored"]
    nonzero = []
    for id in zero_ids:
        lhs, rhs = identities.get(id).builder(1000)
        if not (lhs.is_zero() and rhs.is_zero()):
            nonzero.append(id)
    ok = not failed and not nonzero and all(r.order >= 1000 for r in reports)
    return ok, (f"{len(reports) - len(failed)}/{len(reports)} identities at order 1000; "
                f"zero identities literal zero: {not nonzero}")


def criterion_4() -> tuple[bool, str]:
    rows_ok = all(
        lattice.transform_form(lattice.G_FORM, lattice.LATTICE_10.affine_map(r))
        == lattice.QuadForm2(A, B, C, D, E)
        and lattice.transform_sign(lattice.SIGN_M, lattice.LATTICE_10.affine_map(r)).constant_sign
        == sign
        for r, (sign, E, A, B, C, D) in enumerate(G_TABLE))
    part_ok = (lattice.verify_partition(lattice.LATTICE_5, 100)
               and lattice.verify_partition(lattice.LATTICE_10, 100))
    res_ok = (lattice.residue_on_cosets(lattice.F_FORM, lattice.LATTICE_5, 5, 100) == [0, 1, 2, 3, 4]
              and lattice.residue_on_cosets(lattice.G_FORM, lattice.LATTICE_10, 10, 100)
              == list(range(10)))
    return rows_ok and part_ok and res_ok, (
        f"table rows {rows_ok}, partitions {part_ok}, residues constant {res_ok} (box 100)")


def criterion_5() -> tuple[bool, str]:
    ok = True
    for variant, name in (("plain", "X"), ("dagger", "Y")):
        series = invert(named(name, 500)).coeffs
        dp = dp_signed_sums(500, variant)
        enum = [enumerate_signed_sum(n, variant) for n in range(41)]
        ok &= enum == dp[:41] == list(series[:41])
        ok &= tuple(dp) == series
    return ok, "enumeration (n <= 40), DP and series (n <= 500) agree for both variants"


def criterion_6() -> tuple[bool, str]:
    order = 2000
    ok = True
    for k in range(5):
        ok &= expand_product(u_spec(k), order) == named(f"u_{k}", order)
        ok &= expand_product(u_spec(k, dagger=True), order) == named(f"u_dag_{k}", order)
        ok &= expand_product(U_spec(k), order) == named(f"U_{k}", order)
    ok &= named("U_5", order).is_zero()
    ok &= named("U_0", order) == named("Phi", order)
    return ok, "triple product = bilateral sum for u_k, u_k dagger, U_k (k=0..4); U_5 = 0; U_0 = Phi"


def criterion_7() -> tuple[bool, str]:
    rng = random.Random(0xD155EC7)
    order = 300
    ok = True
    for _ in range(100):
        f = TruncatedSeries([rng.randint(-10**12, 10**12) for _ in range(order + 1)])
        g = TruncatedSeries([rng.randint(-10**6, 10**6) for _ in range(order // 10 + 1)])
        rebuilt = [0] * (order + 1)
        for r in range(10):
            for n, c in enumerate(dissect(f, 10, r).coeffs):
                rebuilt[n + r] += c
        ok &= TruncatedSeries(rebuilt, order) == f
        g10 = substitute_power(g, 10)
        r = rng.randrange(10)
        lhs = dissect(mul(f, g10), 10, r)
        ok &= lhs == mul(g10.truncate(lhs.order), dissect(f, 10, r))
    return ok, "reconstruction and pull-out rule on 100 random cases at order 300"


_EXIT_ONE = textwrap.dedent("""
    import dataclasses, sys
    from qdissect import identities
    from qdissect.cli import main
    from qdissect.pseries import TruncatedSeries as T
    case = identities.get("eq:XYprod")
    identities.REGISTRY["zz:broken"] = dataclasses.replace(
        case, id="zz:broken", builder=lambda n: (T.one(n), T.zero(n)))
    sys.exit(main(["verify", "--filter", "zz:*", "--order", "20"]))
""")


def criterion_8() -> tuple[bool, str]:
    names_ok = all(evaluate(PRINTED_FORMS[s], 200) == named(s, 200) for s in PRINTED_FORMS)
    rng = random.Random(8)
    crashes = 0
    for _ in range(100_000):
        data = bytes(rng.getrandbits(8) & rng.choice((0x7F, 0xFF)) for _ in range(rng.randint(0, 64)))
        if rng.random() < 0.01:
            data += bytes(rng.getrandbits(8) for _ in range(rng.randint(0, 960)))
        try:
            parse(data)
        except ParseError:
            pass
        except Exception:
            crashes += 1

    def code(*args):
        return subprocess.run([sys.executable, "-m", "qdissect", *args],
                              capture_output=True, text=True).returncode

    exits = (
        code("expand", "1/X", "--order", "12") == 0,
        code("verify", "--filter", "cor:Adiff0") == 0,
        code("expand", "(q") == 2,
        code("verify", "--filter", "no-such-id") == 2,
        subprocess.run([sys.executable, "-c", _EXIT_ONE], capture_output=True).returncode == 1,
    )
    ok = names_ok and crashes == 0 and all(exits)
    return ok, (f"{len(PRINTED_FORMS)} names round-trip at 200, fuzz crashes {crashes}/100000, "
                f"exit codes 0/1/2 {all(exits)}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


def _run(i: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[i - 1]()
    line = f"{'PASS' if ok else 'FAIL'}  criterion {i}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("i", range(1, 9))
def test_criterion(i):
    ok, line = _run(i)
    assert ok, line


if __name__ == "__main__":
    results = [_run(i)[0] for i in range(1, 9)]
    sys.exit(0 if all(results) else 1)
