"""Pochhammer products, theta series and the named series built from them."""

from __future__ import annotations

import re
from math import isqrt
from dataclasses import dataclass
from functools import lru_cache

from .pseries import TruncatedSeries, invert, mul, power, substitute_power


class UnknownName(KeyError):
    pass


@dataclass(frozen=True)
class PochhammerFactor:
    """``(sign * q^offset; q^modulus)``, i.e. prod_j (1 - sign q^(offset + j modulus))."""

    sign: int
    offset: int
    modulus: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.offset < 0:
            raise ValueError(f"offset must be >= 0, got {self.offset}")
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")

    def __str__(self) -> str:
        base = "1" if self.offset == 0 else ("q" if self.offset == 1 else f"q^{self.offset}")
        lead = "-" if self.sign == -1 else ""
        return f"({lead}{base};{_qpow(self.modulus)})"


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple[PochhammerFactor, ...] = ()

    @classmethod
    def of(cls, modulus: int, *terms: int) -> "ProductSpec":
        """``ProductSpec.of(5, 1, -2, -3, 4)`` is (q,-q^2,-q^3,q^4;q^5).

        A negative entry denotes a negated monomial; a literal ``-0`` cannot
        be written this way, use :class:`PochhammerFactor` directly.
        """
        return cls(tuple(
            PochhammerFactor(-1 if t < 0 else 1, abs(t), modulus) for t in terms))

    def __mul__(self, other: "ProductSpec") -> "ProductSpec":
        return ProductSpec(self.factors + other.factors)

    def __str__(self) -> str:
        return "*".join(str(f) for f in self.factors) or "1"


def _qpow(k: int) -> str:
    return "q" if k == 1 else f"q^{k}"


def expand_pochhammer(fac: PochhammerFactor, order: int) -> TruncatedSeries:
    if order < 0:
        raise ValueError("order must be non-negative")
    cs = [0] * (order + 1)
    cs[0] = 1
    s = fac.sign
    e = fac.offset
    if e == 0:
        if s == 1:
            return TruncatedSeries.zero(order)
        cs[0] = 2
        e += fac.modulus
    while e <= order:
        # multiply by (1 - s q^e); the right side is built from the old list
        cs[e:] = [x - s * y for x, y in zip(cs[e:], cs)]
        e += fac.modulus
    return TruncatedSeries(cs, order)


def expand_product(spec: ProductSpec, order: int) -> TruncatedSeries:
    result = TruncatedSeries.one(order)
    for fac in spec.factors:
        result = mul(result, _pochhammer_cached(fac, order))
    return result


@lru_cache(maxsize=512)
def _pochhammer_cached(fac: PochhammerFactor, order: int) -> TruncatedSeries:
    return expand_pochhammer(fac, order)


def _isqrt_ceil(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1


def theta_jtp(a: int, b: int, negate_sign: bool, order: int) -> TruncatedSeries:
    """Bilateral sum ``sum_m sigma^m q^(a m^2 + b m)`` with sigma = -1 if
    ``negate_sign`` else +1."""
    if a < 1:
        raise ValueError(f"a must be >= 1, got {a}")
    # a m^2 + b m <= order  <=>  |2 a m + b| <= sqrt(b^2 + 4 a order)
    bound = (abs(b) + _isqrt_ceil(b * b + 4 * a * order)) // (2 * a) + 1
    cs = [0] * (order + 1)
    for m in range(-bound, bound + 1):
        e = a * m * m + b * m
        if e < 0:
            raise ValueError(f"exponent {e} < 0 at m={m}; sum is not a power series")
        if e <= order:
            cs[e] += -1 if (negate_sign and m & 1) else 1
    return TruncatedSeries(cs, order)


# --------------------------------------------------------------------------
# named series

X_SPEC = ProductSpec.of(5, 1, -2, -3, 4)
Y_SPEC = ProductSpec.of(5, -1, 2, 3, -4)
R_NUM = ProductSpec.of(5, 1, 4)
R_DEN = ProductSpec.of(5, 2, 3)


def euler_spec(m: int) -> ProductSpec:
    """phi_m = (q^m; q^m)."""
    return ProductSpec.of(m, m)


def u_spec(k: int, dagger: bool = False) -> ProductSpec:
    """Product side of u_k (or u_k dagger) with the second entry q^(5+k)."""
    s = -1 if dagger else 1
    return ProductSpec((
        PochhammerFactor(s, 5 - k, 10),
        PochhammerFactor(s, 5 + k, 10),
        PochhammerFactor(1, 10, 10),
    ))


def U_spec(k: int) -> ProductSpec:
    return ProductSpec((
        PochhammerFactor(1, 50 - 10 * k, 100),
        PochhammerFactor(1, 50 + 10 * k, 100),
        PochhammerFactor(1, 100, 100),
    ))


GREEK = {"alpha": 1, "beta": 2, "gamma": 3, "delta": 4}

_INDEXED = re.compile(r"^(phi|u|u_dag|udag|U)_?(\d+)$")


def canonical_name(name: str) -> str:
    """Normalise spellings such as ``udag_3`` / ``u_dag3`` / ``phi10``."""
    if name in ("X", "Y", "Phi", "R", "Rcal") or name in GREEK:
        return name
    if name == "phi":
        return "phi_1"
    m = _INDEXED.match(name)
    if not m:
        raise UnknownName(name)
    head, idx = m.group(1), int(m.group(2))
    if head == "udag":
        head = "u_dag"
    if head == "phi":
        if idx < 1:
            raise UnknownName(name)
    elif idx > 5:
        raise UnknownName(name)
    return f"{head}_{idx}"


def named(name: str, order: int) -> TruncatedSeries:
    """The series called ``name`` truncated at ``order``.

    Recognised: X, Y, phi_m, u_k, u_dag_k, U_k (0 <= k <= 5), Phi, R, Rcal
    and alpha..delta as aliases of U_1..U_4.
    """
    return _named(canonical_name(name), order)


@lru_cache(maxsize=1024)
def _named(name: str, order: int) -> TruncatedSeries:
    if name in GREEK:
        return _named(f"U_{GREEK[name]}", order)
    if name == "X":
        return expand_product(X_SPEC, order)
    if name == "Y":
        return expand_product(Y_SPEC, order)
    if name == "R":
        return mul(expand_product(R_NUM, order), invert(expand_product(R_DEN, order)))
    if name == "Rcal":
        inner = _named("R", order // 10)
        return _extend(substitute_power(inner, 10), order)
    if name == "Phi":
        return mul(power(_named("phi_50", order), 2), invert(_named("phi_100", order)))
    head, idx = name.rsplit("_", 1)
    k = int(idx)
    if head == "phi":
        return expand_product(euler_spec(k), order)
    if head == "u":
        return theta_jtp(5, k, True, order)
    if head == "u_dag":
        return theta_jtp(5, k, False, order)
    if head == "U":
        return theta_jtp(50, 10 * k, True, order)
    raise UnknownName(name)


def _extend(f: TruncatedSeries, order: int) -> TruncatedSeries:
    # only valid for series whose coefficients past f.order are known zero
    return TruncatedSeries(f.coeffs, order)


# Definitional text for each named symbol, in the expression language.
PRINTED_FORMS: dict[str, str] = {
    "X": "(q,-q^2,-q^3,q^4;q^5)",
    "Y": "(-q,q^2,q^3,-q^4;q^5)",
    "R": "(q,q^4;q^5)/(q^2,q^3;q^5)",
    "Rcal": "(q^10,q^40;q^50)/(q^20,q^30;q^50)",
    "Phi": "(q^50;q^50)^2/(q^100;q^100)",
}
for _m in (1, 2, 5, 10, 25, 50, 100):
    PRINTED_FORMS[f"phi_{_m}"] = f"({_qpow(_m)};{_qpow(_m)})"
for _k in range(6):
    PRINTED_FORMS[f"u_{_k}"] = f"({_qpow(5 - _k) if _k < 5 else '1'},q^{5 + _k},q^10;q^10)"
    PRINTED_FORMS[f"u_dag_{_k}"] = (
        f"(-{_qpow(5 - _k) if _k < 5 else '1'},-q^{5 + _k},q^10;q^10)")
    PRINTED_FORMS[f"U_{_k}"] = (
        f"({'q^%d' % (50 - 10 * _k) if _k < 5 else '1'},q^{50 + 10 * _k},q^100;q^100)")
for _g, _k in GREEK.items():
    PRINTED_FORMS[_g] = PRINTED_FORMS[f"U_{_k}"]
