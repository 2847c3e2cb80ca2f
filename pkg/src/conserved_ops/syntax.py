"""Surface syntax for operators: a small recursive-descent parser and the
canonical printer.

Grammar (whitespace insignificant)::

    operator := [sign] term (sign term)*
    term     := 'D' INT | coeff ['*' 'D' INT]
    coeff    := factor ('*' factor)*
    factor   := NUMBER ['/' NUMBER] | 'i' | IDENT | 'E' '(' [sign] NUMBER ')'
              | '(' [sign] coeff (sign coeff)* ')'

``Dn`` is the n-th derivative in phi, ``E(k)`` is ``e^{ik phi}``, and any
other identifier is a real symbolic constant, declared by use.  The printer
emits exactly this grammar, so ``parse_operator(print_operator(p)) == p``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .exactnum import ConstPoly, GaussRat, I
from .fourier import FourierPoly

__all__ = [
    "ParseError",
    "OperatorExpr",
    "parse_expr",
    "parse_operator",
    "parse_coefficient",
    "print_operator",
    "format_fourier",
    "format_const",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Number:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Exp:
    freq: int


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    # (sign, Product) pairs, sign is +1 or -1
    items: tuple


@dataclass(frozen=True)
class Term:
    coeff: Union[Product, None]
    order: int


@dataclass(frozen=True)
class OperatorExpr:
    """Parse tree of an operator, before conversion to DiffOp."""

    terms: tuple  # (sign, Term) pairs


# ---------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d*)?)
  | (?P<ident>[^\W\d]\w*)
  | (?P<op>[-+*/()])
    """,
    re.VERBOSE,
)
_DERIV_RE = re.compile(r"D(\d+)$")


@dataclass
class _Tok:
    kind: str  # num, ident, deriv, op, eof
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind, text = m.lastgroup, m.group()
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                line_start = pos + text.rindex("\n") + 1
        elif kind == "num":
            if "." in text:
                raise ParseError(f"non-integer literal {text!r}; write rationals as p/q", line, col)
            toks.append(_Tok("num", text, line, col))
        elif kind == "ident":
            if text == "D":
                if src.startswith("-", m.end()):
                    raise ParseError("negative derivative order", line, col)
                raise ParseError("derivative order must be a non-negative integer literal", line, col)
            if _DERIV_RE.match(text):
                if src.startswith(".", m.end()):
                    raise ParseError("non-integer derivative order", line, col)
                toks.append(_Tok("deriv", text, line, col))
            else:
                toks.append(_Tok("ident", text, line, col))
        else:
            toks.append(_Tok("op", text, line, col))
        pos = m.end()
    col = pos - line_start + 1
    toks.append(_Tok("eof", "", line, col))
    return toks


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message: str, tok: _Tok | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def advance(self) -> _Tok:
        tok = self.tok
        self.i += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op: str) -> _Tok:
        if not self.at_op(op):
            self.error(f"expected {op!r}, found {self._describe(self.tok)}")
        return self.advance()

    @staticmethod
    def _describe(tok: _Tok) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def sign(self) -> int:
        if self.at_op("+", "-"):
            return -1 if self.advance().text == "-" else 1
        return 1

    # operator := [sign] term (sign term)*
    def operator(self) -> OperatorExpr:
        if self.tok.kind == "eof":
            self.error("empty expression")
        terms = [(self.sign(), self.term())]
        while self.at_op("+", "-"):
            terms.append((self.sign(), self.term()))
        if self.tok.kind != "eof":
            self.error(f"unexpected {self._describe(self.tok)}")
        return OperatorExpr(tuple(terms))

    def term(self) -> Term:
        if self.tok.kind == "deriv":
            order = self.deriv()
            return Term(None, order)
        coeff = self.product(in_operator=True)
        if self.at_op("*") and self.peek().kind == "deriv":
            self.advance()
            return Term(coeff, self.deriv())
        return Term(coeff, 0)

    def deriv(self) -> int:
        tok = self.advance()
        if self.at_op("*"):
            self.error("derivative must be the last factor of a term", self.tok)
        return int(_DERIV_RE.match(tok.text).group(1))

    def product(self, in_operator: bool) -> Product:
        factors = [self.factor()]
        while self.at_op("*"):
            if in_operator and self.peek().kind == "deriv":
                break
            self.advance()
            factors.append(self.factor())
        return Product(tuple(factors))

    def factor(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            value = Fraction(int(tok.text))
            if self.at_op("/"):
                self.advance()
                if self.tok.kind != "num":
                    self.error("expected an integer denominator")
                den = int(self.advance().text)
                if den == 0:
                    self.error("division by zero", tok)
                value /= den
            return Number(value)
        if tok.kind == "ident":
            self.advance()
            if tok.text == "i":
                return Imag()
            if tok.text == "E":
                self.expect_op("(")
                sgn = self.sign()
                if self.tok.kind != "num":
                    self.error("expected an integer frequency")
                freq = sgn * int(self.advance().text)
                self.expect_op(")")
                return Exp(freq)
            return Name(tok.text)
        if tok.kind == "deriv":
            self.error("derivative 'D' is not allowed in coefficient position")
        if self.at_op("("):
            self.advance()
            items = [(self.sign(), self.product(in_operator=False))]
            while self.at_op("+", "-"):
                items.append((self.sign(), self.product(in_operator=False)))
            if self.tok.kind == "deriv":
                self.error("derivative 'D' is not allowed in coefficient position")
            self.expect_op(")")
            return Sum(tuple(items))
        self.error(f"expected a coefficient factor, found {self._describe(tok)}")


def parse_expr(src: str) -> OperatorExpr:
    """Parse operator text into its syntax tree."""
    return _Parser(src).operator()


# Lowering works on flat dicts {(freq, monomial): GaussRat} and builds the
# canonical polynomial types once at the end.


def _mono(powers: dict) -> tuple:
    return tuple(sorted(powers.items()))


def _dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (k1, m1), c1 in a.items():
        for (k2, m2), c2 in b.items():
            powers = dict(m1)
            for name, e in m2:
                powers[name] = powers.get(name, 0) + e
            key = (k1 + k2, _mono(powers))
            out[key] = out[key] + c1 * c2 if key in out else c1 * c2
    return out


def _lower_product(node: Product) -> dict:
    coeff, powers, freq, sums = GaussRat(1), {}, 0, []
    for f in node.factors:
        if isinstance(f, Number):
            coeff = coeff * GaussRat(f.value)
        elif isinstance(f, Imag):
            coeff = coeff * I
        elif isinstance(f, Name):
            powers[f.name] = powers.get(f.name, 0) + 1
        elif isinstance(f, Exp):
            freq += f.freq
        elif isinstance(f, Sum):
            sums.append(_lower_sum(f))
        else:
            raise TypeError(f"unknown node {f!r}")
    out = {(freq, _mono(powers)): coeff}
    for s in sums:
        out = _dict_mul(out, s)
    return out


def _lower_sum(node: Sum) -> dict:
    out: dict = {}
    for sgn, prod in node.items:
        for key, c in _lower_product(prod).items():
            c = c if sgn > 0 else -c
            out[key] = out[key] + c if key in out else c
    return out


def _to_fourier(flat: dict) -> FourierPoly:
    modes: dict = {}
    for (k, mono), c in flat.items():
        modes.setdefault(k, {})[mono] = c
    return FourierPoly._from_canonical(
        {k: ConstPoly._from_canonical(terms) for k, terms in modes.items()}
    )


def lower(expr: OperatorExpr):
    """Convert a syntax tree into a canonical DiffOp."""
    from .diffop import DiffOp

    orders: dict[int, dict] = {}
    for sgn, term in expr.terms:
        flat = {(0, ()): GaussRat(1)} if term.coeff is None else _lower_product(term.coeff)
        acc = orders.setdefault(term.order, {})
        for key, c in flat.items():
            c = c if sgn > 0 else -c
            acc[key] = acc[key] + c if key in acc else c
    return DiffOp._from_canonical({n: _to_fourier(flat) for n, flat in orders.items()})


def parse_operator(src: str):
    """Parse operator text into a canonical DiffOp."""
    return lower(parse_expr(src))


def parse_coefficient(src: str) -> FourierPoly:
    """Parse a derivative-free expression into a FourierPoly."""
    op = parse_operator(src)
    if op.order > 0:
        raise ParseError("derivative not allowed in a coefficient expression", 1, 1)
    return op.coeff(0)


# ---------------------------------------------------------------- printer


def _num(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _atoms(f: FourierPoly) -> list[tuple[int, str]]:
    """Signed single-product pieces of f in canonical order."""
    atoms = []
    for k, c in f.modes:
        tail = []
        for mono, coeff in c.terms:
            names = [name for name, e in mono for _ in range(e)]
            tail = names + ([f"E({k})"] if k else [])
            for part, imaginary in ((coeff.re, False), (coeff.im, True)):
                if part == 0:
                    continue
                factors = []
                if abs(part) != 1 or not (imaginary or tail):
                    factors.append(_num(abs(part)))
                if imaginary:
                    factors.append("i")
                atoms.append((1 if part > 0 else -1, "*".join(factors + tail)))
    return atoms


def _join(atoms: list[tuple[int, str]]) -> str:
    if not atoms:
        return "0"
    first_sign, first = atoms[0]
    out = ("-" if first_sign < 0 else "") + first
    for sgn, body in atoms[1:]:
        out += (" - " if sgn < 0 else " + ") + body
    return out


def format_fourier(f: FourierPoly) -> str:
    return _join(_atoms(f))


def format_const(c: ConstPoly) -> str:
    return _join(_atoms(FourierPoly({0: c})))


def print_operator(p) -> str:
    """Canonical text: ascending order, ascending frequency inside coefficients."""
    atoms = []
    for n, f in p.coeffs:
        pieces = _atoms(f)
        if n == 0:
            atoms.extend(pieces)
        elif len(pieces) == 1:
            sgn, body = pieces[0]
            atoms.append((sgn, f"D{n}" if body == "1" else f"{body}*D{n}"))
        else:
            atoms.append((1, f"({_join(pieces)})*D{n}"))
    return _join(atoms)
