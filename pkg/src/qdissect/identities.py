"""
Registry of the series identities behind the two vanishing theorems, and a
verifier that expands both sides to a given order and compares exactly.

Most cases are written as a pair of expressions in :mod:`qdissect.qdsl`, so
the registry reads like ordinary q-series notation.  A few cases are built in
Python because they go through the lattice-coset route or the partition
oracles instead of the expression evaluator.
"""

from __future__ import annotations

import fnmatch
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import lattice
from .partitions import dp_signed_sums
from .pseries import TruncatedSeries, dissect, first_mismatch, invert, negate_variable
from .qdsl import _Evaluator, parse
from .qproducts import named

MIN_ORDER = 10

Builder = Callable[[int], "tuple[TruncatedSeries, TruncatedSeries]"]


class UnknownIdentity(KeyError):
    pass


@dataclass(frozen=True)
class IdentityCase:
    id: str
    label: str
    description: str
    builder: Builder = field(repr=False)
    default_order: int = MIN_ORDER
    zero: bool = False
    lhs_text: str | None = None
    rhs_text: str | None = None


@dataclass(frozen=True)
class IdentityReport:
    id: str
    order: int
    status: str
    first_mismatch: tuple[int, int, int] | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"id": self.id, "order": self.order, "status": self.status}
        if self.first_mismatch is not None:
            n, a, b = self.first_mismatch
            out["first_mismatch"] = {"exponent": n, "lhs": str(a), "rhs": str(b)}
        out["millis"] = round(self.elapsed * 1000, 3)
        return out


def _dsl_builder(lhs: str, rhs: str) -> Builder:
    lhs_ast, rhs_ast = parse(lhs), parse(rhs)

    def build(order: int):
        ev = _Evaluator()
        return ev.run(lhs_ast, order), ev.run(rhs_ast, order)

    return build


REGISTRY: dict[str, IdentityCase] = {}


def register(case: IdentityCase) -> IdentityCase:
    if case.id in REGISTRY:
        raise ValueError(f"duplicate identity id {case.id!r}")
    REGISTRY[case.id] = case
    return case


def _eq(id: str, label: str, description: str, lhs: str, rhs: str,
        zero: bool = False, default_order: int = MIN_ORDER) -> None:
    register(IdentityCase(id, label, description, _dsl_builder(lhs, rhs),
                          default_order, zero, lhs, rhs))


# --------------------------------------------------------------------------
# building blocks

D0 = ("(alpha^3*delta^2*(alpha*beta+q^10*gamma*delta)"
      "-beta^2*gamma^3*(alpha*beta-q^10*gamma*delta))")
SCALE = "phi_10^9/phi_50^5"
PHI2_CORE = "(phi_10^6/(phi_2*phi_50^5))"


def XX(r: int) -> str:
    return f"({SCALE}/X)[[{r}]]%10"


def YY(r: int) -> str:
    return f"({SCALE}/Y)[[{r}]]%10"


def _qpow(k: int) -> str:
    return "q" if k == 1 else f"q^{k}"


# --------------------------------------------------------------------------
# definitions, generating functions and first relations

_eq("eq:XYprod", "eq:XYrels", "X Y as a single Pochhammer product",
    "X*Y", "(q^2,q^4,q^6,q^8;q^10)")
_eq("eq:XYprod.phi", "eq:XYrels", "X Y as a ratio of Euler products",
    "X*Y", "(q^2;q^2)/(q^10;q^10)")
_eq("eq:XYrels.1", "eq:XYrels", "1/X in terms of Y",
    "1/X", "Y*(q^10;q^10)/(q^2;q^2)")
_eq("eq:XYrels.2", "eq:XYrels", "1/Y in terms of X",
    "1/Y", "X*(q^10;q^10)/(q^2;q^2)")
_eq("eq:XYR.X", "eq:XYR", "X through the continued fraction R",
    "X", "(q^4,q^6;q^10)*R")
_eq("eq:XYR.Y", "eq:XYR", "Y through the continued fraction R",
    "Y", "(q^2,q^8;q^10)/R")
_eq("eq:XYfracs.1", "eq:XYfracs", "phi_10^3/X after clearing denominators",
    "phi_10^3/X", "Y*phi_10^4/phi_2")
_eq("eq:XYfracs.2", "eq:XYfracs", "phi_10^3/Y after clearing denominators",
    "phi_10^3/Y", "X*phi_10^4/phi_2")
_eq("eq:XYinv-u.Xphi", "eq:XYinv-u", "X phi_10^4 as a product of four theta series",
    "X*phi_10^4", "u_1*udag_2*udag_3*u_4")
_eq("eq:XYinv-u.Yphi", "eq:XYinv-u", "Y phi_10^4 as a product of four theta series",
    "Y*phi_10^4", "udag_1*u_2*u_3*udag_4")
_eq("eq:XYinv-u.1", "eq:XYinv-u", "phi_10^3/X via theta series",
    "phi_10^3/X", "udag_1*u_2*u_3*udag_4/phi_2")
_eq("eq:XYinv-u.2", "eq:XYinv-u", "phi_10^3/Y via theta series",
    "phi_10^3/Y", "u_1*udag_2*udag_3*u_4/phi_2")

# --------------------------------------------------------------------------
# triple product instances and the theta series U_k

for _k in range(5):
    _a, _b = _qpow(5 - _k), _qpow(5 + _k)
    _eq(f"eq:JTP.u_{_k}", "eq:uk", f"u_{_k}: triple product equals bilateral sum",
        f"u_{_k}", f"({_a},{_b},q^10;q^10)")
    _eq(f"eq:JTP.udag_{_k}", "eq:ukdag", f"u_{_k} dagger: triple product equals bilateral sum",
        f"udag_{_k}", f"(-{_a},-{_b},q^10;q^10)")
    _eq(f"eq:JTP.U_{_k}", "eq:Uk", f"U_{_k}: triple product equals bilateral sum",
        f"U_{_k}", f"(q^{50 - 10 * _k},q^{50 + 10 * _k},q^100;q^100)")
_eq("eq:Uk.U0", "eq:Uk", "U_0 equals Phi", "U_0", "Phi")
_eq("eq:Uk.U5", "eq:Uk", "U_5 vanishes", "U_5", "0", zero=True)
_eq("eq:Uk.U5.product", "eq:Uk", "U_5 product form vanishes",
    "(1,q^100,q^100;q^100)", "0", zero=True)

_eq("eq:RU.subst", "eq:RU", "R(q^10) as a product ratio in q^50",
    "R@(q->q^10)", "(q^10,q^40;q^50)/(q^20,q^30;q^50)")
_eq("eq:RU", "eq:RU", "R(q^10) as a ratio of theta series",
    "(q^10,q^40;q^50)/(q^20,q^30;q^50)", "U_1*U_4/(U_2*U_3)")
_eq("eq:Ralpha", "eq:Ralpha", "Rcal in Greek notation",
    "Rcal", "alpha*delta/(beta*gamma)")

# --------------------------------------------------------------------------
# dissections of 1/phi and 1/phi_2

_RS = "R@(q->q^5)"
_eq("eq:phiR", "eq:phiR", "5-dissection of 1/phi",
    "1/phi_1",
    f"phi_25^5/phi_5^6*({_RS}^-4+q*{_RS}^-3+2*q^2*{_RS}^-2+3*q^3*{_RS}^-1+5*q^4"
    f"-3*q^5*{_RS}+2*q^6*{_RS}^2-q^7*{_RS}^3+q^8*{_RS}^4)")
_eq("eq:phi2R", "eq:phi2R", "10-dissection of 1/phi_2",
    "1/phi_2",
    "phi_50^5/phi_10^6*(Rcal^-4+q^2*Rcal^-3+2*q^4*Rcal^-2+3*q^6*Rcal^-1+5*q^8"
    "-3*q^10*Rcal+2*q^12*Rcal^2-q^14*Rcal^3+q^16*Rcal^4)")
_eq("eq:phi2R.subst", "eq:phi2R", "1/phi_2 is 1/phi at q^2",
    "(1/phi_1)@(q->q^2)", "1/(q^2;q^2)")

# --------------------------------------------------------------------------
# dissections of the theta products

_eq("eq:u1-u3dgV", "eq:u1-u3dgV", "10-dissection of u_1 u_3 dagger",
    "u_1*udag_3", "(U_1+q^2*U_1*Rcal-q^4*U_3-2*q^6*U_2*U_3/Phi+0*q^8)*Phi")
_eq("eq:u1dg-u3V", "eq:u1dg-u3V", "10-dissection of u_1 dagger u_3",
    "udag_1*u_3", "(U_1-q^2*U_3/Rcal+q^4*U_3+0*q^6-2*q^8*U_1*U_4/Phi)*Phi")
_eq("eq:u2-u4dgV", "eq:u2-u4dgV", "10-dissection of u_2 u_4 dagger",
    "u_2*udag_4",
    "U_1^2+q*U_2*Phi+0*q^2-q^3*U_2^2-q^4*U_1*U_3-q^15*U_4^2+0*q^6-q^7*U_4*Phi"
    "-q^8*U_3^2+q^9*U_2*U_4")
_eq("eq:u2dg-u4V", "eq:u2dg-u4V", "10-dissection of u_2 dagger u_4",
    "udag_2*u_4",
    "U_1^2-q*U_2*Phi+0*q^2+q^3*U_2^2-q^4*U_1*U_3+q^15*U_4^2+0*q^6+q^7*U_4*Phi"
    "-q^8*U_3^2-q^9*U_2*U_4")
_eq("eq:u1-u3dgRaw", "eq:u1-u3dgRaw", "five-term product form of u_1 u_3 dagger",
    "u_1*udag_3",
    "(-q^20,q^20,-q^30,q^30,q^50,q^50;q^50)"
    "-q^6*(-1,q^20,q^30,-q^50,q^50,q^50;q^50)"
    "+q^2*(q^10,-q^20,-q^30,q^40,q^50,q^50;q^50)"
    "+q^8*(1,-q^10,-q^40,q^50,q^50;q^50)"
    "-q^4*(-q^10,q^10,-q^40,q^40,q^50,q^50;q^50)")
_eq("eq:u1-u3dgRaw.q2", "eq:u1-u3dgRaw", "type-2 product equals U_1 Rcal Phi",
    "(q^10,-q^20,-q^30,q^40,q^50,q^50;q^50)", "U_1*Rcal*Phi")
_eq("eq:u1-u3dgRaw.q6", "eq:u1-u3dgRaw", "type-6 product equals 2 U_2 U_3",
    "(-1,q^20,q^30,-q^50,q^50,q^50;q^50)", "2*U_2*U_3")
_eq("eq:u1-u3dgRaw.halve", "eq:u1-u3dgRaw", "(-1;q^50) = 2(-q^50;q^50)",
    "(-1;q^50)", "2*(-q^50;q^50)")
_eq("lem:uiDissections.u2u4dag.table", "lem:uiDissections",
    "u_2 u_4 dagger read off the coset table, before U_0 = Phi and U_5 = 0",
    "u_2*udag_4",
    "U_1^2+q*U_0*U_2-q^12*U_1*U_5-q^3*U_2^2-q^4*U_1*U_3-q^15*U_4^2-q^16*U_3*U_5"
    "-q^7*U_0*U_4-q^8*U_3^2+q^9*U_2*U_4")


def _coset_case(id: str, form, sign, system, rhs_text: str, description: str):
    rhs_ast = parse(rhs_text)

    def build(order: int):
        comps = lattice.dissect_via_cosets(form, sign, system, 10, order)
        for res, comp in comps:
            if lattice.support_residues(comp, 10) - {res}:
                raise AssertionError(f"{id}: component {res} leaks out of its class")
        return lattice.recombine(comps, order), _Evaluator().run(rhs_ast, order)

    register(IdentityCase(id, "lem:uiDissections", description, build,
                          MIN_ORDER, False, None, rhs_text))


_coset_case("lem:uiDissections.u1u3dag", lattice.F_FORM, lattice.SIGN_M, lattice.LATTICE_5,
            "(U_1+q^2*U_1*Rcal-q^4*U_3-2*q^6*U_2*U_3/Phi)*Phi",
            "coset route for u_1 u_3 dagger against its dissection")
_coset_case("lem:uiDissections.u1dagu3", lattice.F_FORM, lattice.SIGN_N, lattice.LATTICE_5,
            "(U_1-q^2*U_3/Rcal+q^4*U_3-2*q^8*U_1*U_4/Phi)*Phi",
            "coset route for u_1 dagger u_3 against its dissection")
_coset_case("lem:uiDissections.u2u4dag", lattice.G_FORM, lattice.SIGN_M, lattice.LATTICE_10,
            "U_1^2+q*U_2*Phi-q^3*U_2^2-q^4*U_1*U_3-q^15*U_4^2-q^7*U_4*Phi"
            "-q^8*U_3^2+q^9*U_2*U_4",
            "coset route for u_2 u_4 dagger against its dissection")
_coset_case("lem:uiDissections.u2dagu4", lattice.G_FORM, lattice.SIGN_N, lattice.LATTICE_10,
            "U_1^2-q*U_2*Phi+q^3*U_2^2-q^4*U_1*U_3+q^15*U_4^2+q^7*U_4*Phi"
            "-q^8*U_3^2-q^9*U_2*U_4",
            "coset route for u_2 dagger u_4 against its dissection")


def _negation_case(order: int):
    lhs = negate_variable(named("u_2", order) * named("udag_4", order))
    return lhs, named("udag_2", order) * named("u_4", order)


register(IdentityCase("lem:uiDissections.negation", "lem:uiDissections",
                      "u_2 dagger(q) u_4(q) = u_2(-q) u_4 dagger(-q)", _negation_case))

# --------------------------------------------------------------------------
# the two relations between U_k, Phi and Rcal

_eq("hirschhorn.41.2.1", "lem:Udiff", "X-type quintuple-style product identity",
    "(q,-q^2,-q^3,q^4,q^5,q^5;q^5)",
    "(q^3,q^4,q^6,q^7,q^10,q^10;q^10)-q*(q,q^2,q^8,q^9,q^10,q^10;q^10)")
_eq("hirschhorn.41.2.2", "lem:Udiff", "Y-type quintuple-style product identity",
    "(-q,q^2,q^3,-q^4,q^5,q^5;q^5)",
    "(q^3,q^4,q^6,q^7,q^10,q^10;q^10)+q*(q,q^2,q^8,q^9,q^10,q^10;q^10)")
_eq("hirschhorn.41.2.1.u", "lem:Udiff", "X phi_5^2 in theta notation",
    "X*phi_5^2", "u_1*u_2-q*u_3*u_4")
_eq("hirschhorn.41.2.2.u", "lem:Udiff", "Y phi_5^2 in theta notation",
    "Y*phi_5^2", "u_1*u_2+q*u_3*u_4")
_eq("lem:Udiff.X", "lem:Udiff", "X = u_1 R / phi_10", "X", "u_1*R/phi_10")
_eq("lem:Udiff.Y", "lem:Udiff", "Y = u_3 / (R phi_10)", "Y", "u_3/(R*phi_10)")
_eq("lem:Udiff.minus", "eq:VRminus", "U_1 Phi Rcal = U_1 U_2 - q^10 U_3 U_4",
    "U_1*Phi*Rcal", "U_1*U_2-q^10*U_3*U_4")
_eq("lem:Udiff.plus", "eq:VRplus", "U_3 Phi / Rcal = U_1 U_2 + q^10 U_3 U_4",
    "U_3*Phi/Rcal", "U_1*U_2+q^10*U_3*U_4")
_eq("eq:Rpmalpha.1", "eq:Rpmalpha", "alpha Phi Rcal in Greek notation",
    "alpha*Phi*Rcal", "alpha*beta-q^10*gamma*delta")
_eq("eq:Rpmalpha.2", "eq:Rpmalpha", "gamma Phi / Rcal in Greek notation",
    "gamma*Phi/Rcal", "alpha*beta+q^10*gamma*delta")
_eq("cor:Adiff0", "eq:diff0", "the cancelling combination of alpha..delta",
    D0, "0", zero=True)

# --------------------------------------------------------------------------
# scaled components of 1/X and 1/Y

for _r in (0, 2, 8):
    _eq(f"eq:XXYYdef.X{_r}", "eq:XXYYdef", f"X component {_r} pulls phi_10^9/phi_50^5 out",
        XX(_r), f"{SCALE}*(1/X)[[{_r}]]%10", zero=_r == 2)
for _r in (0, 6, 8):
    _eq(f"eq:XXYYdef.Y{_r}", "eq:XXYYdef", f"Y component {_r} pulls phi_10^9/phi_50^5 out",
        YY(_r), f"{SCALE}*(1/Y)[[{_r}]]%10", zero=_r == 6)

COMPONENT_ORDER = 100  # component identities need headroom for the q^10, q^20, q^30 terms

# X chain, type 2
_eq("eq:XXp2.bracketY", "eq:XXp2", "X_2 Rcal^-2 as a component of Y phi_10^4 (...)",
    f"{XX(2)}*Rcal^-2", f"(Y*phi_10^4*{PHI2_CORE})[[2]]%10*Rcal^-2", zero=True,
    default_order=COMPONENT_ORDER)
_eq("eq:XXp2.bracketU", "eq:XXp2", "X_2 Rcal^-2 as a component of theta products",
    f"{XX(2)}*Rcal^-2", f"(udag_1*u_2*u_3*udag_4*{PHI2_CORE})[[2]]%10*Rcal^-2",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:XXp2", "eq:XXp2", "X_2 Rcal^-2 expanded in alpha..delta, Phi, Rcal",
    f"{XX(2)}*Rcal^-2",
    "2*q^10*alpha^2*gamma*delta*Rcal^-6-4*q^10*alpha^3*delta*Rcal^-4"
    "+6*q^20*alpha*gamma^2*delta*Rcal^-3-6*q^20*alpha^2*gamma*delta*Rcal^-1"
    "+2*q^20*alpha^3*delta*Rcal+2*q^30*alpha*gamma^2*delta*Rcal^2"
    "+alpha^3*Phi*Rcal^-5+2*q^10*alpha^3*Phi+(3*q^20*gamma^2)*alpha*Phi*Rcal"
    "+(-alpha^2*Rcal^-6-q^10*alpha*gamma*Rcal^-3+3*q^10*alpha^2*Rcal^-1"
    "+5*q^20*gamma^2)*gamma*Phi*Rcal^-1",
    zero=True, default_order=COMPONENT_ORDER)
_XXP3 = ("-alpha^3*beta*Rcal^-6+q^10*alpha^2*gamma*delta*Rcal^-6"
         "-4*q^10*alpha^3*delta*Rcal^-4-q^10*alpha^2*beta*gamma*Rcal^-3"
         "+5*q^20*alpha*gamma^2*delta*Rcal^-3+3*q^10*alpha^3*beta*Rcal^-1"
         "-3*q^20*alpha^2*gamma*delta*Rcal^-1+8*q^20*alpha*beta*gamma^2"
         "+2*q^30*gamma^3*delta+2*q^20*alpha^3*delta*Rcal"
         "+2*q^30*alpha*gamma^2*delta*Rcal^2+alpha^3*Phi*Rcal^-5+2*q^10*alpha^3*Phi")
_eq("eq:XXp3", "eq:XXp3", "X_2 Rcal^-2 after eliminating gamma Phi / Rcal",
    f"{XX(2)}*Rcal^-2", _XXP3, zero=True, default_order=COMPONENT_ORDER)
_eq("eq:XXp3.identification", "eq:XXp3", "the alpha^3 Phi terms of the X chain",
    "alpha^3*Phi*Rcal+2*q^10*alpha^3*Phi*Rcal^6",
    "alpha^3*beta-q^10*alpha^2*gamma*delta+2*q^10*alpha^3*beta*Rcal^5"
    "-2*q^20*alpha^2*gamma*delta*Rcal^5",
    default_order=COMPONENT_ORDER)
_eq("eq:XXR4", "eq:XXp3", "X_2 Rcal^4 free of Phi",
    f"{XX(2)}*Rcal^4",
    "-4*q^10*alpha^3*delta*Rcal^2-q^10*alpha^2*beta*gamma*Rcal^3"
    "+5*q^20*alpha*gamma^2*delta*Rcal^3+5*q^10*alpha^3*beta*Rcal^5"
    "-5*q^20*alpha^2*gamma*delta*Rcal^5+8*q^20*alpha*beta*gamma^2*Rcal^6"
    "+2*q^30*gamma^3*delta*Rcal^6+2*q^20*alpha^3*delta*Rcal^7"
    "+2*q^30*alpha*gamma^2*delta*Rcal^8",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:XXR4.factored", "eq:XXp3", "X_2 Rcal^4 factored through the cancelling combination",
    f"{XX(2)}*Rcal^4",
    f"{D0}*(5*q^10*alpha^4*delta^3/(beta^5*gamma^5)"
    "+2*q^20*alpha^6*delta^6/(beta^8*gamma^7))",
    zero=True, default_order=COMPONENT_ORDER)

# Y chain, type 6
_eq("eq:YYpre.bracketX", "eq:YYp3", "Y_6 Rcal^-4 as a component of X phi_10^4 (...)",
    f"{YY(6)}*Rcal^-4", f"(X*phi_10^4*{PHI2_CORE})[[6]]%10*Rcal^-4", zero=True,
    default_order=COMPONENT_ORDER)
_eq("eq:YYpre.bracketU", "eq:YYp3", "Y_6 Rcal^-4 as a component of theta products",
    f"{YY(6)}*Rcal^-4", f"(u_1*udag_2*udag_3*u_4*{PHI2_CORE})[[6]]%10*Rcal^-4",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:YYpre", "eq:YYp3", "Y_6 Rcal^-4 expanded in alpha..delta, Phi, Rcal",
    f"{YY(6)}*Rcal^-4",
    "-2*alpha^2*beta*gamma*Rcal^-8+2*q^10*beta*gamma^3*Rcal^-7"
    "+6*q^10*alpha*beta*gamma^2*Rcal^-5+6*q^10*alpha^2*beta*gamma*Rcal^-3"
    "+4*q^20*beta*gamma^3*Rcal^-2+2*q^20*alpha*beta*gamma^2"
    "+5*alpha^3*Phi*Rcal^-5-(q^20*gamma^2)*alpha*Phi*Rcal"
    "+(-3*alpha^2*Rcal^-6+2*q^10*gamma^2*Rcal^-5-3*q^10*alpha*gamma*Rcal^-3"
    "-q^10*alpha^2*Rcal^-1-q^20*gamma^2)*gamma*Phi*Rcal^-1",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:YYp3", "eq:YYp3", "Y_6 Rcal^-4 after eliminating gamma Phi / Rcal",
    f"{YY(6)}*Rcal^-4",
    "-2*alpha^2*beta*gamma*Rcal^-8+2*q^10*beta*gamma^3*Rcal^-7"
    "-3*alpha^3*beta*Rcal^-6-3*q^10*alpha^2*gamma*delta*Rcal^-6"
    "+8*q^10*alpha*beta*gamma^2*Rcal^-5+2*q^20*gamma^3*delta*Rcal^-5"
    "+3*q^10*alpha^2*beta*gamma*Rcal^-3-3*q^20*alpha*gamma^2*delta*Rcal^-3"
    "+4*q^20*beta*gamma^3*Rcal^-2-q^10*alpha^3*beta*Rcal^-1"
    "-q^20*alpha^2*gamma*delta*Rcal^-1+5*alpha^3*Phi*Rcal^-5",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:YYp3.identification", "eq:YYp3", "the 5 alpha^3 Phi term of the Y chain",
    "5*alpha^3*Phi*Rcal", "5*alpha^3*beta-5*q^10*alpha^2*gamma*delta",
    default_order=COMPONENT_ORDER)
_eq("eq:YYR2", "eq:YYp3", "Y_6 Rcal^2 free of Phi",
    f"{YY(6)}*Rcal^2",
    "-2*alpha^2*beta*gamma*Rcal^-2+2*q^10*beta*gamma^3*Rcal^-1+2*alpha^3*beta"
    "-8*q^10*alpha^2*gamma*delta+8*q^10*alpha*beta*gamma^2*Rcal"
    "+2*q^20*gamma^3*delta*Rcal+3*q^10*alpha^2*beta*gamma*Rcal^3"
    "-3*q^20*alpha*gamma^2*delta*Rcal^3+4*q^20*beta*gamma^3*Rcal^4"
    "-q^10*alpha^3*beta*Rcal^5-q^20*alpha^2*gamma*delta*Rcal^5",
    zero=True, default_order=COMPONENT_ORDER)
_eq("eq:YYR2.factored", "eq:YYp3", "Y_6 Rcal^2 factored through the cancelling combination",
    f"{YY(6)}*Rcal^2",
    f"{D0}*(2/(alpha*delta^2)+2*q^10*alpha*delta/(beta^3*gamma^2)"
    "-q^10*alpha^4*delta^3/(beta^5*gamma^5))",
    zero=True, default_order=COMPONENT_ORDER)

# types 0 and 8
_eq("comp:X0-Y0", "thm:XY8-XY0", "X_0 - Y_0 expanded in alpha..delta, Phi, Rcal",
    f"{XX(0)}-{YY(0)}",
    "-2*q^10*alpha*beta*gamma^2*Rcal^-4-2*q^10*alpha^3*delta*Rcal^-3"
    "+4*q^10*alpha^2*beta*gamma*Rcal^-2+4*q^20*alpha*gamma^2*delta*Rcal^-2"
    "-6*q^20*beta*gamma^3*Rcal^-1+10*q^20*alpha^2*gamma*delta"
    "+6*q^20*alpha*beta*gamma^2*Rcal-4*q^20*alpha^3*delta*Rcal^2"
    "-2*q^20*alpha^2*beta*gamma*Rcal^3-2*q^30*alpha*gamma^2*delta*Rcal^3"
    "-2*q^30*beta*gamma^3*Rcal^4"
    "+(q^10*gamma^2*Rcal^-4+q^10*alpha*gamma*Rcal^-2+3*q^10*alpha^2)*gamma*Phi*Rcal^-1"
    "-13*q^20*gamma^3*Phi"
    "-(5*q^10*alpha^2+8*q^20*gamma^2*Rcal-q^20*alpha*gamma*Rcal^3)*alpha*Phi*Rcal",
    zero=True, default_order=COMPONENT_ORDER)
_eq("comp:X0-Y0.factored", "thm:XY8-XY0", "(X_0 - Y_0)/Rcal factored",
    f"({XX(0)}-{YY(0)})*Rcal^-1",
    f"{D0}*(beta^3*gamma^4/(alpha^5*delta^5)-5*q^10/(beta^2*gamma)"
    "-2*beta*gamma/(alpha^2*delta^3))",
    zero=True, default_order=COMPONENT_ORDER)
_eq("comp:X8+Y8", "thm:XY8-XY0", "X_8 + Y_8 expanded in alpha..delta, Phi, Rcal",
    f"{XX(8)}+{YY(8)}",
    "-2*alpha^3*delta*Rcal^-4-2*alpha^2*beta*gamma*Rcal^-3"
    "+2*q^10*alpha*gamma^2*delta*Rcal^-3+4*q^10*beta*gamma^3*Rcal^-2"
    "+6*q^10*alpha^2*gamma*delta*Rcal^-1+10*q^10*alpha*beta*gamma^2"
    "+6*q^10*alpha^3*delta*Rcal-4*q^10*alpha^2*beta*gamma*Rcal^2"
    "+4*q^20*alpha*gamma^2*delta*Rcal^2-2*q^20*beta*gamma^3*Rcal^3"
    "+2*q^20*alpha^2*gamma*delta*Rcal^4"
    "-(alpha*gamma*Rcal^-3+8*alpha^2*Rcal^-1-5*q^10*gamma^2)*gamma*Phi*Rcal^-1"
    "+13*alpha^3*Phi"
    "+(3*q^10*gamma^2-q^10*alpha*gamma*Rcal^2+q^10*alpha^2*Rcal^4)*alpha*Phi*Rcal",
    zero=True, default_order=COMPONENT_ORDER)
_eq("comp:X8+Y8.factored", "thm:XY8-XY0", "(X_8 + Y_8) Rcal factored",
    f"({XX(8)}+{YY(8)})*Rcal",
    f"{D0}*(5/(alpha*delta^2)+2*q^10*alpha*delta/(beta^3*gamma^2)"
    "+q^10*alpha^4*delta^3/(beta^5*gamma^5))",
    zero=True, default_order=COMPONENT_ORDER)

# --------------------------------------------------------------------------
# generating functions against the partition oracle, and the theorems


def _oracle_case(name: str, variant: str) -> Builder:
    def build(order: int):
        return invert(named(name, order)), TruncatedSeries(dp_signed_sums(order, variant))
    return build


register(IdentityCase("eq:qseriesXY.X", "eq:qseriesXY",
                      "1/X against the signed-partition dynamic program",
                      _oracle_case("X", "plain")))
register(IdentityCase("eq:qseriesXY.Y", "eq:qseriesXY",
                      "1/Y against the dagger signed-partition dynamic program",
                      _oracle_case("Y", "dagger")))

SCAN_ORDER = 2000

_eq("thm:X2Y6.X", "thm:X2Y6", "p_5(10j+2) = 0", "(1/X)[[2]]%10", "0", zero=True,
    default_order=SCAN_ORDER)
_eq("thm:X2Y6.Y", "thm:X2Y6", "p_5 dagger(10j+6) = 0", "(1/Y)[[6]]%10", "0", zero=True,
    default_order=SCAN_ORDER)
_eq("thm:XY8-XY0.0", "thm:XY8-XY0", "p_5 dagger(10j) = p_5(10j)",
    "(1/Y)[[0]]%10", "(1/X)[[0]]%10", default_order=SCAN_ORDER)
_eq("thm:XY8-XY0.8", "thm:XY8-XY0", "p_5 dagger(10j+8) = -p_5(10j+8)",
    "(1/Y)[[8]]%10", "-(1/X)[[8]]%10", default_order=SCAN_ORDER)


# --------------------------------------------------------------------------
# verification


def get(id: str) -> IdentityCase:
    try:
        return REGISTRY[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def matching(pattern: str) -> list[IdentityCase]:
    """Registered cases whose id matches the glob ``pattern``, sorted by id."""
    return [REGISTRY[k] for k in sorted(REGISTRY) if fnmatch.fnmatchcase(k, pattern)]


def compare(case: IdentityCase, lhs: TruncatedSeries, rhs: TruncatedSeries,
            order: int, elapsed: float = 0.0) -> IdentityReport:
    lhs, rhs = lhs.truncate(order), rhs.truncate(order)
    mismatch = first_mismatch(lhs, rhs)
    if mismatch is None and case.zero and not lhs.is_zero():
        n = next(i for i, c in enumerate(lhs.coeffs) if c)
        mismatch = (n, lhs.coeffs[n], rhs.coeffs[n])
    status = "pass" if mismatch is None else "fail"
    return IdentityReport(case.id, order, status, mismatch, elapsed)


def verify(id: str | IdentityCase, order: int) -> IdentityReport:
    case = id if isinstance(id, IdentityCase) else get(id)
    if order < MIN_ORDER:
        raise ValueError(f"order must be at least {MIN_ORDER}, got {order}")
    start = time.perf_counter()
    lhs, rhs = case.builder(order)
    return compare(case, lhs, rhs, order, time.perf_counter() - start)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("QS_THREADS", "1")))
    except ValueError:
        return 1


def verify_cases(cases: list[IdentityCase], order: int,
                 workers: int | None = None) -> list[IdentityReport]:
    """Verify each case at max(order, its default order); results sorted by id."""
    cases = sorted(cases, key=lambda c: c.id)
    workers = workers or default_workers()
    jobs = [(c, max(order, c.default_order)) for c in cases]
    if workers == 1:
        return [verify(c, n) for c, n in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: verify(*job), jobs))


def verify_all(order: int, workers: int | None = None) -> list[IdentityReport]:
    return verify_cases(list(REGISTRY.values()), order, workers)


def listing() -> list[tuple[str, str, str, int]]:
    return [(c.id, c.label, c.description, c.default_order)
            for c in (REGISTRY[k] for k in sorted(REGISTRY))]


# --------------------------------------------------------------------------
# theorem scans and component checks


@dataclass
class ScanReport:
    which: str
    order: int
    checked: dict[str, list[int]]
    violations: list[tuple[str, int, int, int]]

    @property
    def passed(self) -> bool:
        return not self.violations


def theorem_scan(which: str, N: int) -> ScanReport:
    """Coefficient-by-coefficient check of a theorem up to exponent N.

    ``thm1``: [q^(10j+2)] 1/X and [q^(10j+6)] 1/Y vanish.
    ``thm2``: 1/Y and 1/X agree at 10j and are opposite at 10j+8.
    Violations are ``(part, exponent, value from 1/X, value from 1/Y)``.
    """
    if N < 10:
        raise ValueError("theorem scans need N >= 10")
    inv_x = invert(named("X", N)).coeffs
    inv_y = invert(named("Y", N)).coeffs
    checked: dict[str, list[int]] = {}
    violations = []
    if which == "thm1":
        checked["X2"] = list(range(2, N + 1, 10))
        checked["Y6"] = list(range(6, N + 1, 10))
        violations += [("X2", n, inv_x[n], inv_y[n]) for n in checked["X2"] if inv_x[n]]
        violations += [("Y6", n, inv_x[n], inv_y[n]) for n in checked["Y6"] if inv_y[n]]
    elif which == "thm2":
        checked["0"] = list(range(0, N + 1, 10))
        checked["8"] = list(range(8, N + 1, 10))
        violations += [("0", n, inv_x[n], inv_y[n]) for n in checked["0"]
                       if inv_y[n] != inv_x[n]]
        violations += [("8", n, inv_x[n], inv_y[n]) for n in checked["8"]
                       if inv_y[n] != -inv_x[n]]
    else:
        raise ValueError(f"unknown theorem {which!r}; use 'thm1' or 'thm2'")
    return ScanReport(which, N, checked, violations)


COMPONENT_CHAINS = {
    "X2": ["eq:XXYYdef.X2", "eq:XXp2.bracketY", "eq:XXp2.bracketU", "eq:XXp2",
           "eq:XXp3", "eq:XXp3.identification", "eq:XXR4", "eq:XXR4.factored"],
    "Y6": ["eq:XXYYdef.Y6", "eq:YYpre.bracketX", "eq:YYpre.bracketU", "eq:YYpre",
           "eq:YYp3", "eq:YYp3.identification", "eq:YYR2", "eq:YYR2.factored"],
    "X0Y0": ["eq:XXYYdef.X0", "eq:XXYYdef.Y0", "comp:X0-Y0", "comp:X0-Y0.factored"],
    "X8Y8": ["eq:XXYYdef.X8", "eq:XXYYdef.Y8", "comp:X8+Y8", "comp:X8+Y8.factored"],
}


def component_chain(which: str, order: int) -> list[IdentityReport]:
    """Reports for every identity in a component's chain, factored form last."""
    if which not in COMPONENT_CHAINS:
        raise ValueError(f"unknown component {which!r}; use one of {sorted(COMPONENT_CHAINS)}")
    if order < 100:
        raise ValueError("component checks need order >= 100")
    return [verify(id, order) for id in COMPONENT_CHAINS[which]]


def component_factorization_check(which: str, order: int) -> IdentityReport:
    """One report for a component: passes iff every identity in its chain
    does.  On failure the mismatch of the first failing identity is kept."""
    start = time.perf_counter()
    chain = component_chain(which, order)
    bad = next((r for r in chain if not r.passed), None)
    return IdentityReport(f"component:{which}", order,
                          "pass" if bad is None else "fail",
                          None if bad is None else bad.first_mismatch,
                          time.perf_counter() - start)


@dataclass
class ComponentSeries:
    """The scaled type-10 components of phi_10^9 / (X phi_50^5) and of the
    same with Y, keyed by residue."""

    order: int
    X: dict[int, TruncatedSeries]
    Y: dict[int, TruncatedSeries]

    def times_rcal(self, k: int) -> "ComponentSeries":
        from .pseries import mul, power
        rk = power(named("Rcal", self.order), k)
        return ComponentSeries(self.order,
                               {r: mul(f, rk) for r, f in self.X.items()},
                               {r: mul(f, rk) for r, f in self.Y.items()})


def components(order: int) -> ComponentSeries:
    from .pseries import mul, power
    top = order + 10
    scale = mul(power(named("phi_10", top), 9), power(named("phi_50", top), -5))
    fx = mul(scale, invert(named("X", top)))
    fy = mul(scale, invert(named("Y", top)))
    return ComponentSeries(
        order,
        {r: dissect(fx, 10, r).truncate(order) for r in range(10)},
        {r: dissect(fy, 10, r).truncate(order) for r in range(10)},
    )
