"""
A small expression language for q-series.

Grammar (EBNF)::

    expr      = term { ("+" | "-") term } ;
    term      = factor { ("*" | "/") factor } ;
    factor    = ("+" | "-") factor | power ;
    power     = postfix [ "^" exponent ] ;
    exponent  = [ "+" | "-" ] INT | "(" [ "+" | "-" ] INT ")" ;
    postfix   = primary { substitution | dissection } ;
    substitution = "@" "(" "q" "->" "q" [ "^" INT ] ")" ;
    dissection   = "[" "[" INT "]" "]" "%" INT ;
    primary   = INT | "q" | NAME | "(" expr ")" | pochhammer ;
    pochhammer = "(" entry { "," entry } ";" "q" [ "^" INT ] ")" ;
    entry     = [ "+" | "-" ] ( "1" | "q" [ "^" INT ] ) ;

A parenthesised group is a Pochhammer product when a ``;`` or ``,`` occurs
at its top nesting level.  ``f[[r]]%m`` is the component
``sum_j a_{mj+r} q^{mj}``; ``f@(q->q^m)`` is f(q^m).

Examples: ``(q,-q^2,-q^3,q^4;q^5)``, ``1/X``, ``(phi_10^9/(X*phi_50^5))[[2]]%10``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import pseries
from .pseries import NonUnitConstantTerm, TruncatedSeries
from .qproducts import (PochhammerFactor, ProductSpec, UnknownName,
                        canonical_name, expand_product, named)

MAX_DEPTH = 100
MAX_EXPONENT = 10**6
MAX_INNER_ORDER = 10**6


class ParseError(ValueError):
    """Syntax error at a character offset, with the set of tokens that
    would have been accepted there."""

    def __init__(self, message: str, position: int, expected=()):
        self.position = position
        self.expected = frozenset(expected)
        shown = ", ".join(sorted(e if e in _DESCRIBE.values() else repr(e) for e in self.expected))
        detail = f" (expected one of: {shown})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


class UnknownSymbol(ParseError):
    pass


class NonUnitDivision(NonUnitConstantTerm):
    pass


class DissectionIndexOutOfRange(ValueError):
    pass


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Mono:
    exponent: int


@dataclass(frozen=True)
class Poch:
    spec: ProductSpec


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Sum:
    """``terms`` are (op, expr) pairs with op in "+-"; the first op is "+"."""

    terms: tuple[tuple[str, "Expr"], ...]


@dataclass(frozen=True)
class Product:
    """``factors`` are (op, expr) pairs with op in "*/"; the first op is "*"."""

    factors: tuple[tuple[str, "Expr"], ...]


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Subst:
    operand: "Expr"
    power: int


@dataclass(frozen=True)
class Dissect:
    operand: "Expr"
    residue: int
    modulus: int


Expr = Union[Int, Mono, Poch, Name, Neg, Sum, Product, Pow, Subst, Dissect]


# --------------------------------------------------------------------------
# tokenizer

_SINGLE = set("+-*/^(),;@[]%")


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, Q, END, or the punctuation itself
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif "0" <= c <= "9":
            j = i
            while j < n and "0" <= text[j] <= "9":
                j += 1
            if j - i > 1000:
                raise ParseError("integer literal too long", i)
            tokens.append(Token("INT", text[i:j], i))
            i = j
        elif c == "_" or ("a" <= c <= "z") or ("A" <= c <= "Z"):
            j = i
            while j < n and (text[j] == "_" or text[j].isascii() and text[j].isalnum()):
                j += 1
            word = text[i:j]
            tokens.append(Token("Q" if word == "q" else "NAME", word, i))
            i = j
        elif c == "-" and text.startswith("->", i):
            tokens.append(Token("->", "->", i))
            i += 2
        elif c in _SINGLE:
            tokens.append(Token(c, c, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {c!r}", i)
    tokens.append(Token("END", "", n))
    return tokens


# --------------------------------------------------------------------------
# parser


_DESCRIBE = {"INT": "integer", "NAME": "name", "Q": "q", "END": "end of input"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.depth = 0
        self.had_exponent = False  # the last power already took its '^'

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, *expected: str):
        tok = self.tok
        found = _DESCRIBE.get(tok.kind, repr(tok.text)) if tok.kind != "END" else "end of input"
        raise ParseError(f"unexpected {found}", tok.pos,
                         [_DESCRIBE.get(e, e) for e in expected])

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, kind: str, *alternatives: str) -> Token:
        tok = self.accept(kind)
        if tok is None:
            self.fail(kind, *alternatives)
        return tok

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.pos)

    # grammar rules

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "END":
            self.fail("+", "-", "*", "/", *self._caret(), "END")
        return e

    def expr(self) -> Expr:
        self.enter()
        terms = [("+", self.term())]
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.i += 1
            terms.append((op, self.term()))
        self.depth -= 1
        return terms[0][1] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [("*", self.factor())]
        while self.tok.kind in ("*", "/"):
            op = self.tok.kind
            self.i += 1
            factors.append((op, self.factor()))
        return factors[0][1] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        if self.tok.kind in ("+", "-"):
            self.enter()
            op = self.tok.kind
            self.i += 1
            inner = self.factor()
            self.depth -= 1
            return Neg(inner) if op == "-" else inner
        return self.power()

    def power(self) -> Expr:
        base = self.postfix()
        if self.accept("^"):
            e = Pow(base, self.exponent())
            self.had_exponent = True
            return e
        self.had_exponent = False
        return base

    def _caret(self) -> tuple[str, ...]:
        return () if self.had_exponent else ("^", "@", "[")

    def signed_int(self) -> int:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        return sign * int(self.expect("INT", "+", "-").text)

    def exponent(self) -> int:
        if self.accept("("):
            k = self.signed_int()
            self.expect(")")
            return k
        return self.signed_int()

    def postfix(self) -> Expr:
        e = self.primary()
        while True:
            if self.accept("@"):
                self.expect("(")
                self.expect("Q")
                self.expect("->")
                self.expect("Q")
                m = int(self.expect("INT").text) if self.accept("^") else 1
                self.expect(")", "^")
                e = Subst(e, m)
            elif self.accept("["):
                self.expect("[")
                r = int(self.expect("INT").text)
                self.expect("]")
                self.expect("]")
                self.expect("%")
                m = int(self.expect("INT").text)
                e = Dissect(e, r, m)
            else:
                return e

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "INT":
            self.i += 1
            return Int(int(tok.text))
        if tok.kind == "Q":
            self.i += 1
            return Mono(1)
        if tok.kind == "NAME":
            self.i += 1
            try:
                return Name(canonical_name(tok.text))
            except UnknownName:
                raise UnknownSymbol(f"unknown symbol {tok.text!r}", tok.pos) from None
        if tok.kind == "(":
            if self._is_pochhammer():
                return self.pochhammer()
            self.i += 1
            e = self.expr()
            more = (",", ";") if _could_be_entry(e) else ()
            self.expect(")", "+", "-", "*", "/", *self._caret(), *more)
            return e
        self.fail("INT", "Q", "NAME", "(", "+", "-")

    def _is_pochhammer(self) -> bool:
        depth = 0
        for tok in self.tokens[self.i:]:
            if tok.kind in ("(", "["):
                depth += 1
            elif tok.kind in (")", "]"):
                depth -= 1
                if depth == 0:
                    return False
            elif tok.kind in (";", ",") and depth == 1:
                return True
        return False

    def pochhammer(self) -> Poch:
        self.expect("(")
        entries = [self.poch_entry()]
        while self.accept(","):
            entries.append(self.poch_entry())
        self.expect(";", ",")
        self.expect("Q")
        b = 1
        if self.accept("^"):
            b = int(self.expect("INT").text)
            if b < 1:
                raise ParseError("Pochhammer base must be q^b with b >= 1", self.tokens[self.i - 1].pos)
        self.expect(")", "^")
        return Poch(ProductSpec(tuple(PochhammerFactor(s, a, b) for s, a in entries)))

    def poch_entry(self) -> tuple[int, int]:
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        tok = self.tok
        if tok.kind == "INT":
            if tok.text.lstrip("0") != "1":
                raise ParseError("Pochhammer entries must be +-1 or +-q^a", tok.pos, ["q", "1"])
            self.i += 1
            return sign, 0
        self.expect("Q", "1")
        if self.accept("^"):
            return sign, int(self.expect("INT").text)
        return sign, 1


def _could_be_entry(e: Expr) -> bool:
    # a group that so far reads as a Pochhammer entry, e.g. the "q" in "(q"
    if isinstance(e, Neg):
        e = e.operand
    if isinstance(e, Pow):
        return isinstance(e.base, Mono) and e.base.exponent == 1 and e.exponent >= 0
    return isinstance(e, Mono) or (isinstance(e, Int) and e.value == 1)


def parse(text: str | bytes) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` (or its subclass :class:`UnknownSymbol`) on
    any malformed input; no other exception escapes for string or bytes
    input.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# printing


def _prec(e: Expr) -> int:
    if isinstance(e, Sum):
        return 1
    if isinstance(e, Product):
        return 2
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def unparse(e: Expr) -> str:
    """Text that parses back to ``e``."""
    if isinstance(e, Int):
        return str(e.value) if e.value >= 0 else f"({e.value})"
    if isinstance(e, Mono):
        return "q" if e.exponent == 1 else f"q^{e.exponent}"
    if isinstance(e, Name):
        return e.name
    if isinstance(e, Poch):
        items = []
        for f in e.spec.factors:
            base = "1" if f.offset == 0 else ("q" if f.offset == 1 else f"q^{f.offset}")
            items.append(("-" if f.sign == -1 else "") + base)
        mod = "q" if e.spec.factors[0].modulus == 1 else f"q^{e.spec.factors[0].modulus}"
        return f"({','.join(items)};{mod})"
    if isinstance(e, Neg):
        inner = unparse(e.operand)
        return f"-{inner}" if _prec(e.operand) >= 3 else f"-({inner})"
    if isinstance(e, (Sum, Product)):
        p = _prec(e)
        parts = []
        for i, (op, sub) in enumerate(e.terms if isinstance(e, Sum) else e.factors):
            text = unparse(sub)
            if _prec(sub) <= p:
                text = f"({text})"
            parts.append(text if i == 0 else op + text)
        return "".join(parts)
    if isinstance(e, Pow):
        base = unparse(e.base)
        if _prec(e.base) < 5:
            base = f"({base})"
        return f"{base}^{e.exponent}" if e.exponent >= 0 else f"{base}^({e.exponent})"
    if isinstance(e, Subst):
        inner = unparse(e.operand)
        if _prec(e.operand) < 5:
            inner = f"({inner})"
        return f"{inner}@(q->q^{e.power})"
    if isinstance(e, Dissect):
        inner = unparse(e.operand)
        if _prec(e.operand) < 5:
            inner = f"({inner})"
        return f"{inner}[[{e.residue}]]%{e.modulus}"
    raise TypeError(f"not an expression node: {e!r}")


# --------------------------------------------------------------------------
# evaluation


def _unit_inverse(f: TruncatedSeries) -> TruncatedSeries:
    try:
        return pseries.invert(f)
    except NonUnitConstantTerm as exc:
        raise NonUnitDivision(str(exc)) from None


def evaluate(e: Expr | str, order: int) -> TruncatedSeries:
    """Expand ``e`` as a series exact through q^order."""
    if isinstance(e, str):
        e = parse(e)
    if order < 0:
        raise ValueError("order must be non-negative")
    return _Evaluator().run(e, order)


class _Evaluator:
    def __init__(self):
        self.memo: dict[tuple[Expr, int], TruncatedSeries] = {}

    def run(self, e: Expr, order: int) -> TruncatedSeries:
        key = (e, order)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._eval(e, order)
        return hit

    def _eval(self, e: Expr, order: int) -> TruncatedSeries:
        T = TruncatedSeries
        if isinstance(e, Int):
            return T.monomial(0, order, e.value)
        if isinstance(e, Mono):
            return T.monomial(e.exponent, order)
        if isinstance(e, Name):
            return named(e.name, order)
        if isinstance(e, Poch):
            return expand_product(e.spec, order)
        if isinstance(e, Neg):
            return -self.run(e.operand, order)
        if isinstance(e, Sum):
            acc = self.run(e.terms[0][1], order)
            for op, sub in e.terms[1:]:
                f = self.run(sub, order)
                acc = pseries.add(acc, f) if op == "+" else pseries.sub(acc, f)
            return acc
        if isinstance(e, Product):
            acc = self.run(e.factors[0][1], order)
            for op, sub in e.factors[1:]:
                f = self.run(sub, order)
                acc = pseries.mul(acc, f if op == "*" else _unit_inverse(f))
            return acc
        if isinstance(e, Pow):
            k = e.exponent
            if isinstance(e.base, Mono) and k >= 0:
                return T.monomial(e.base.exponent * k, order)
            if abs(k) > MAX_EXPONENT:
                raise ValueError(f"exponent {k} exceeds {MAX_EXPONENT}")
            base = self.run(e.base, order)
            if k < 0:
                base = _unit_inverse(base)
                k = -k
            return pseries.power(base, k)
        if isinstance(e, Subst):
            if e.power < 1:
                raise ValueError("substitution q -> q^m needs m >= 1")
            inner = self.run(e.operand, order // e.power)
            cs = [0] * (order + 1)
            cs[::e.power] = inner.coeffs
            return T(cs, order)
        if isinstance(e, Dissect):
            m, r = e.modulus, e.residue
            if m < 1 or not 0 <= r < m:
                raise DissectionIndexOutOfRange(
                    f"component [[{r}]] needs 0 <= r < m, m = {m}")
            need = m * (order // m) + r
            if need > MAX_INNER_ORDER:
                raise ValueError(f"component would need expansion to order {need}")
            inner = self.run(e.operand, need)
            # exponents strictly between multiples of m are zero by construction
            return T(pseries.dissect(inner, m, r).coeffs, order)
        raise TypeError(f"not an expression node: {e!r}")
