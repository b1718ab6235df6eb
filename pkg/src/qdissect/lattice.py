"""
Coset dissection of two-variable theta sums.

A double sum ``sum_{m,n} (-1)^(s m + t n + c) q^(A m^2 + B m + C n^2 + D n + E)``
is split along the cosets ``lambda_r + L`` of a sublattice L of Z^2.  On
each coset the exponent is rewritten in coordinates (mu, nu) via the affine
map (mu, nu, 1) . B_r, where B_r stacks the two generators of L over the
representative lambda_r.  When L is chosen so that the mixed mu*nu term
cancels, every coset contributes a product of two one-variable theta sums,
and the residue of the exponent modulo the dissection modulus is constant
on the coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .pseries import TruncatedSeries, add

Vec = tuple[int, int]


class DegenerateLattice(ValueError):
    pass


class NonConstantResidue(ValueError):
    pass


class CrossTermPresent(ValueError):
    pass


class NotBoundedBelow(ValueError):
    pass


@dataclass(frozen=True)
class QuadForm2:
    """``A m^2 + B m + C n^2 + D n + E``."""

    A: int
    B: int
    C: int
    D: int
    E: int = 0

    def __call__(self, m: int, n: int) -> int:
        return self.A * m * m + self.B * m + self.C * n * n + self.D * n + self.E

    def __str__(self) -> str:
        return (f"{self.E}{self.A:+d}mu^2{self.B:+d}mu"
                f"{self.C:+d}nu^2{self.D:+d}nu")


@dataclass(frozen=True)
class SignFunctional:
    """The sign ``(-1)^(s m + t n + c)``; coefficients are kept mod 2."""

    s: int = 0
    t: int = 0
    c: int = 0

    def __post_init__(self):
        object.__setattr__(self, "s", self.s % 2)
        object.__setattr__(self, "t", self.t % 2)
        object.__setattr__(self, "c", self.c % 2)

    def __call__(self, m: int, n: int) -> int:
        return -1 if (self.s * m + self.t * n + self.c) & 1 else 1

    @property
    def constant_sign(self) -> int:
        return -1 if self.c else 1


@dataclass(frozen=True)
class CosetSystem:
    gen1: Vec
    gen2: Vec
    reps: tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "gen1", tuple(self.gen1))
        object.__setattr__(self, "gen2", tuple(self.gen2))
        object.__setattr__(self, "reps", tuple(tuple(r) for r in self.reps))

    @property
    def det(self) -> int:
        (a, b), (c, d) = self.gen1, self.gen2
        return a * d - b * c

    def coordinates(self, point: Vec, rep: Vec = (0, 0)):
        """Integer (mu, nu) with point - rep = mu gen1 + nu gen2, or None."""
        det = self.det
        if det == 0:
            raise DegenerateLattice(f"generators {self.gen1}, {self.gen2} are dependent")
        x = point[0] - rep[0]
        y = point[1] - rep[1]
        (a, b), (c, d) = self.gen1, self.gen2
        # solve mu (a, b) + nu (c, d) = (x, y) by Cramer's rule
        mu_num = x * d - y * c
        nu_num = a * y - b * x
        if mu_num % det or nu_num % det:
            return None
        return mu_num // det, nu_num // det

    def coset_of(self, point: Vec) -> list[int]:
        """Indices of all representatives whose coset contains ``point``."""
        return [i for i, rep in enumerate(self.reps)
                if self.coordinates(point, rep) is not None]

    def affine_map(self, r: int) -> "AffineMap":
        return AffineMap.from_rows(self.gen1, self.gen2, self.reps[r])


@dataclass(frozen=True)
class AffineMap:
    """3x3 integer matrix with rows (gen1, 0), (gen2, 0), (lambda, 1);
    acts on row vectors (mu, nu, 1)."""

    matrix: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        if len(m) != 3 or any(len(row) != 3 for row in m):
            raise ValueError("affine map must be 3x3")
        if (m[0][2], m[1][2], m[2][2]) != (0, 0, 1):
            raise ValueError("third column of an affine map must be (0, 0, 1)")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_rows(cls, gen1: Vec, gen2: Vec, shift: Vec) -> "AffineMap":
        return cls(((gen1[0], gen1[1], 0), (gen2[0], gen2[1], 0),
                    (shift[0], shift[1], 1)))

    def apply(self, mu: int, nu: int) -> Vec:
        (a, b, _), (c, d, _), (e, f, _) = self.matrix
        return mu * a + nu * c + e, mu * b + nu * d + f


def _box(bound: int) -> Iterator[Vec]:
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            yield x, y


def verify_partition(cs: CosetSystem, bound: int) -> bool:
    """Every point of the box [-bound, bound]^2 lies in exactly one coset."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if cs.det == 0:
        raise DegenerateLattice(f"generators {cs.gen1}, {cs.gen2} are dependent")
    if abs(cs.det) != len(cs.reps):
        return False
    return all(len(cs.coset_of(p)) == 1 for p in _box(bound))


def residue_on_cosets(f: QuadForm2, cs: CosetSystem, modulus: int,
                      bound: int) -> list[int]:
    """The residue of f mod ``modulus`` on each coset, checked over the box."""
    found: list[int | None] = [None] * len(cs.reps)
    for p in _box(bound):
        hits = cs.coset_of(p)
        if len(hits) != 1:
            raise ValueError(f"cosets do not partition Z^2 at {p}")
        r = hits[0]
        v = f(*p) % modulus
        if found[r] is None:
            found[r] = v
        elif found[r] != v:
            raise NonConstantResidue(
                f"coset {r} (rep {cs.reps[r]}) takes residues {found[r]} and {v} "
                f"mod {modulus}")
    if any(v is None for v in found):
        raise ValueError("box too small to meet every coset")
    return found


def transform_form(f: QuadForm2, amap: AffineMap) -> QuadForm2:
    """The form ``(mu, nu) -> f((mu, nu, 1) B)``; rejects a mu*nu term."""
    (a, b, _), (c, d, _), (e, g, _) = amap.matrix
    # m = a mu + c nu + e,  n = b mu + d nu + g
    cross = 2 * f.A * a * c + 2 * f.C * b * d
    if cross:
        raise CrossTermPresent(f"mu*nu coefficient {cross} after transforming {f}")
    return QuadForm2(
        A=f.A * a * a + f.C * b * b,
        B=2 * f.A * a * e + f.B * a + 2 * f.C * b * g + f.D * b,
        C=f.A * c * c + f.C * d * d,
        D=2 * f.A * c * e + f.B * c + 2 * f.C * d * g + f.D * d,
        E=f(e, g),
    )


def transform_sign(s: SignFunctional, amap: AffineMap) -> SignFunctional:
    (a, b, _), (c, d, _), (e, g, _) = amap.matrix
    return SignFunctional(s.s * a + s.t * b, s.s * c + s.t * d, s.s * e + s.t * g + s.c)


def _min_over(a: int, b: int) -> int:
    """min over integers x of a x^2 + b x, for a > 0."""
    x0 = -b // (2 * a)
    return min(a * x * x + b * x for x in (x0, x0 + 1))


def _scan(a: int, b: int, limit: int) -> list[int]:
    """All integers x with a x^2 + b x <= limit (a > 0), found by walking
    outward from the vertex; the quadratic is convex so the walk is exact."""
    x0 = -b // (2 * a)
    out = []
    x = x0
    while a * x * x + b * x <= limit:
        out.append(x)
        x -= 1
    x = x0 + 1
    while a * x * x + b * x <= limit:
        out.append(x)
        x += 1
    return out


def bilateral_sum(f: QuadForm2, s: SignFunctional, order: int) -> TruncatedSeries:
    """``sum over (m, n) in Z^2 of s(m, n) q^f(m, n)`` truncated at ``order``."""
    if f.A <= 0 or f.C <= 0:
        raise NotBoundedBelow(f"{f} is not bounded below in both variables")
    n_min = _min_over(f.C, f.D)
    if _min_over(f.A, f.B) + n_min + f.E < 0:
        raise NotBoundedBelow(f"{f} takes negative values")
    cs = [0] * (order + 1)
    for m in _scan(f.A, f.B, order - f.E - n_min):
        base = f.A * m * m + f.B * m + f.E
        for n in _scan(f.C, f.D, order - base):
            cs[base + f.C * n * n + f.D * n] += s(m, n)
    return TruncatedSeries(cs, order)


def dissect_via_cosets(f: QuadForm2, s: SignFunctional, cs: CosetSystem,
                       modulus: int, order: int,
                       bound: int = 20) -> list[tuple[int, TruncatedSeries]]:
    """Per-coset components ``(residue, series)`` of the bilateral sum.

    Each component keeps its q^residue factor, so it is supported on one
    residue class mod ``modulus`` and the components add up to
    ``bilateral_sum(f, s, order)``.
    """
    residues = residue_on_cosets(f, cs, modulus, bound)
    out = []
    for r, res in enumerate(residues):
        amap = cs.affine_map(r)
        comp = bilateral_sum(transform_form(f, amap), transform_sign(s, amap), order)
        out.append((res, comp))
    return out


def recombine(components: Sequence[tuple[int, TruncatedSeries]],
              order: int) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    for _, comp in components:
        total = add(total, comp)
    return total


def support_residues(f: TruncatedSeries, modulus: int) -> set[int]:
    return {n % modulus for n, c in enumerate(f.coeffs) if c}


# The two systems used to dissect u1 u3-dagger and u2 u4-dagger.

F_FORM = QuadForm2(5, 1, 5, 3)
G_FORM = QuadForm2(5, 2, 5, 4)

LATTICE_5 = CosetSystem((2, 1), (-1, 2), ((0, 0), (1, 0), (0, -1), (0, 1), (-1, 0)))
LATTICE_10 = CosetSystem(
    (3, 1), (-1, 3),
    ((0, 0), (0, -1), (-1, 1), (-1, 0), (-1, -1),
     (-1, -2), (1, 1), (1, 0), (1, -1), (0, 1)),
)

SIGN_M = SignFunctional(1, 0, 0)
SIGN_N = SignFunctional(0, 1, 0)
