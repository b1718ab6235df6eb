"""
Truncated formal power series in q with exact integer coefficients.

A :class:`TruncatedSeries` of order N stores the coefficients of
q^0 .. q^N, all of which are exact.  Every operation returns a result whose
order is the largest order it can guarantee; nothing past that is reported.

Products are computed by Kronecker substitution: both operands are packed
into single Python integers, multiplied once, and unpacked.  This keeps
convolution at order ~10^3 with large coefficients well under a
millisecond-per-product budget without leaving exact integer arithmetic.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class NonUnitConstantTerm(ValueError):
    """Raised when a reciprocal is requested of a series whose constant
    term is not +1 or -1."""


class OutOfRange(IndexError):
    pass


class TruncatedSeries:
    """Immutable truncated power series ``sum_{n<=order} coeffs[n] q^n``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        cs = [int(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
            if order < 0:
                raise ValueError("cannot infer the order of an empty series")
        if order < 0:
            raise ValueError(f"order must be non-negative, got {order}")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        elif len(cs) < order + 1:
            cs.extend([0] * (order + 1 - len(cs)))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # construction helpers

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, k: int, order: int, c: int = 1) -> "TruncatedSeries":
        """``c * q^k`` truncated at ``order`` (zero if k > order)."""
        if k < 0:
            raise ValueError("negative exponents are not representable")
        if k > order:
            return cls.zero(order)
        cs = [0] * (order + 1)
        cs[k] = c
        return cls(cs, order)

    @classmethod
    def from_dict(cls, terms: dict[int, int], order: int) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        for k, c in terms.items():
            if k < 0:
                raise ValueError("negative exponents are not representable")
            if k <= order:
                cs[k] += c
        return cls(cs, order)

    # views

    def __len__(self) -> int:
        return self.order + 1

    def __getitem__(self, n: int) -> int:
        return coefficient(self, n)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncatedSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = [(n, c) for n, c in enumerate(self.coeffs) if c]
        shown = " + ".join(f"{c}*q^{n}" for n, c in terms[:8]) or "0"
        if len(terms) > 8:
            shown += " + ..."
        return f"TruncatedSeries({shown}; O(q^{self.order + 1}))"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def nonzero_terms(self) -> list[tuple[int, int]]:
        return [(n, c) for n, c in enumerate(self.coeffs) if c]

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """True iff both series agree on every exponent up to the shared order."""
        n = min(self.order, other.order) + 1
        return self.coeffs[:n] == other.coeffs[:n]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(
                f"cannot raise the order from {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    # operators

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.monomial(0, self.order, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries.monomial(0, self.order, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return NotImplemented

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return mul(self, invert(other))

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return scale(invert(self), other)
        return NotImplemented

    def __pow__(self, k: int):
        return power(self, k)


# --------------------------------------------------------------------------
# packed-integer convolution


def _trim(cs: Sequence[int]) -> int:
    """Length of ``cs`` without trailing zeros."""
    n = len(cs)
    while n and not cs[n - 1]:
        n -= 1
    return n


def _digit_ones(count: int, nbytes: int) -> int:
    # sum_{i<count} 2^(8*nbytes*i)
    return int.from_bytes((b"\x01" + b"\x00" * (nbytes - 1)) * count, "little")


def _pack(cs: Sequence[int], nbytes: int, bias: int) -> int:
    raw = b"".join((c + bias).to_bytes(nbytes, "little") for c in cs)
    return int.from_bytes(raw, "little") - bias * _digit_ones(len(cs), nbytes)


def convolve(a: Sequence[int], b: Sequence[int], length: int) -> list[int]:
    """First ``length`` coefficients of the product of two coefficient lists."""
    la = min(_trim(a), length)
    lb = min(_trim(b), length)
    out = [0] * length
    if not la or not lb:
        return out
    a = a[:la]
    b = b[:lb]
    nz_a = [(i, c) for i, c in enumerate(a) if c]
    nz_b = [(i, c) for i, c in enumerate(b) if c]
    if len(nz_b) < len(nz_a):
        a, b, nz_a, nz_b, la, lb = b, a, nz_b, nz_a, lb, la
    if len(nz_a) <= 8:
        for i, c in nz_a:
            for j in range(min(lb, length - i)):
                out[i + j] += c * b[j]
        return out

    ma = max(abs(c) for _, c in nz_a).bit_length()
    mb = max(abs(c) for _, c in nz_b).bit_length()
    bits = ma + mb + min(la, lb).bit_length() + 2
    nbytes = (bits + 7) // 8
    bias = 1 << (8 * nbytes - 1)

    prod = _pack(a, nbytes, bias) * _pack(b, nbytes, bias)
    ndig = min(length, la + lb - 1)
    width = 8 * nbytes * ndig
    biased = (prod + bias * _digit_ones(ndig, nbytes)) & ((1 << width) - 1)
    raw = biased.to_bytes(nbytes * ndig, "little")
    for i in range(ndig):
        out[i] = int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - bias
    return out


# --------------------------------------------------------------------------
# ring operations


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(
        [x + y for x, y in zip(f.coeffs[: n + 1], g.coeffs[: n + 1])], n)


def sub(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(
        [x - y for x, y in zip(f.coeffs[: n + 1], g.coeffs[: n + 1])], n)


def scale(f: TruncatedSeries, c: int) -> TruncatedSeries:
    return TruncatedSeries([c * x for x in f.coeffs], f.order)


def shift(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """Multiply by q^k, keeping the order of ``f``."""
    if k < 0:
        raise ValueError("negative shifts are not representable")
    if k > f.order:
        return TruncatedSeries.zero(f.order)
    return TruncatedSeries([0] * k + list(f.coeffs[: f.order + 1 - k]), f.order)


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    n = min(f.order, g.order)
    return TruncatedSeries(convolve(f.coeffs, g.coeffs, n + 1), n)


def invert(f: TruncatedSeries) -> TruncatedSeries:
    """Reciprocal of a unit series by Newton iteration ``g <- g (2 - f g)``."""
    c0 = f.coeffs[0]
    if c0 not in (1, -1):
        raise NonUnitConstantTerm(
            f"constant term is {c0}; only +1 or -1 can be inverted over Z")
    length = f.order + 1
    g = [c0]
    prec = 1
    while prec < length:
        prec = min(2 * prec, length)
        e = convolve(f.coeffs, g, prec)
        e = [-x for x in e]
        e[0] += 2
        g = convolve(g, e, prec)
    return TruncatedSeries(g, f.order)


def power(f: TruncatedSeries, k: int) -> TruncatedSeries:
    if k < 0:
        return power(invert(f), -k)
    result = TruncatedSeries.one(f.order)
    base = f
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def product(factors: Iterable[TruncatedSeries], order: int) -> TruncatedSeries:
    result = TruncatedSeries.one(order)
    for f in factors:
        result = mul(result, f)
    return result


# --------------------------------------------------------------------------
# substitutions and dissection


def substitute_power(f: TruncatedSeries, m: int) -> TruncatedSeries:
    """f(q^m), exact to order ``m * f.order``."""
    if m < 1:
        raise ValueError(f"substitution power must be >= 1, got {m}")
    if m == 1:
        return f
    cs = [0] * (m * f.order + 1)
    cs[::m] = f.coeffs
    return TruncatedSeries(cs, m * f.order)


def negate_variable(f: TruncatedSeries) -> TruncatedSeries:
    """f(-q)."""
    return TruncatedSeries(
        [-c if n & 1 else c for n, c in enumerate(f.coeffs)], f.order)


def dissect(f: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """The component ``sum_j a_{mj+r} q^{mj}``.

    The q^r prefactor is stripped but the variable stays q^m, so
    ``sum_r q^r * dissect(f, m, r)`` rebuilds ``f``.
    """
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if not 0 <= r < m:
        raise ValueError(f"residue {r} outside [0, {m})")
    if f.order < r:
        raise ValueError(
            f"order {f.order} holds no exponent congruent to {r} mod {m}")
    top = m * ((f.order - r) // m)
    cs = [0] * (top + 1)
    cs[::m] = f.coeffs[r: top + r + 1: m]
    return TruncatedSeries(cs, top)


def dissect_compact(f: TruncatedSeries, m: int, r: int) -> TruncatedSeries:
    """``[a_r, a_{m+r}, a_{2m+r}, ...]`` as a series in a fresh variable."""
    if not 0 <= r < m:
        raise ValueError(f"residue {r} outside [0, {m})")
    if f.order < r:
        raise ValueError("series too short to contain the requested class")
    return TruncatedSeries(f.coeffs[r::m])


def coefficient(f: TruncatedSeries, n: int) -> int:
    if n < 0 or n > f.order:
        raise OutOfRange(f"exponent {n} outside 0..{f.order}")
    return f.coeffs[n]


def first_mismatch(f: TruncatedSeries, g: TruncatedSeries):
    """``(n, f_n, g_n)`` for the lowest disagreeing exponent, else None."""
    n = min(f.order, g.order) + 1
    for i, (x, y) in enumerate(zip(f.coeffs[:n], g.coeffs[:n])):
        if x != y:
            return i, x, y
    return None
