"""Text syntax for R-ideals.

    RIDEAL := FACTOR+                       juxtaposition is the formal product
    FACTOR := '(' POLY (',' POLY)* ')' ('^' ('(' RAT ')' | INT))?
    POLY   := polynomial in x, y (aliases x1, x2) with + - * / ^ and parentheses

A lone ``1`` denotes the trivial R-ideal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, format_poly
from .rideal import Ideal, RIdeal


class ParseError(ValueError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        where = f" at position {position}" if position is not None else ""
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message}{where}{exp}")


class ZeroGenerator(ParseError):
    pass


class NonpositiveExponent(ParseError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x1|x2|x|y)|(?P<op>[-+*/^(),−]))")


@dataclass
class ParsedProblem:
    rideal: RIdeal
    source_text: str
    variable_names: tuple[str, str] = ("x", "y")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped,
                             ("number", "x", "y", "operator"))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if val == "−":
            val = "-"
        out.append((kind, val, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def at(self, val) -> bool:
        return self.tok[0] != "end" and self.tok[1] == val

    def expect(self, val):
        if not self.at(val):
            self.fail(f"unexpected {self._desc()}", (repr(val),))
        self.i += 1

    def fail(self, message, expected=()):
        raise ParseError(message, self.tok[2], expected)

    def _desc(self):
        kind, val, _ = self.tok
        return "end of input" if kind == "end" else repr(val)

    # ideal level
    def rideal(self) -> RIdeal:
        if self.tok[0] == "num" and self.tok[1] == "1" and self.toks[self.i + 1][0] == "end":
            self.i += 1
            return RIdeal()
        factors = [self.factor()]
        while self.tok[0] != "end":
            if self.at("*"):
                self.i += 1
            factors.append(self.factor())
        return RIdeal(tuple(factors))

    def factor(self):
        start = self.tok[2]
        self.expect("(")
        gens = [self.poly_at()]
        while self.at(","):
            self.i += 1
            gens.append(self.poly_at())
        self.expect(")")
        exponent = Fraction(1)
        if self.at("^"):
            self.i += 1
            exponent = self.exponent()
        if all(g.is_zero() for g in gens):
            raise ZeroGenerator("ideal generated by zero", start)
        return Ideal(gens), exponent

    def poly_at(self) -> Poly:
        pos = self.tok[2]
        p = self.expr()
        if p.is_zero():
            raise ZeroGenerator("zero generator", pos)
        return p

    def exponent(self) -> Fraction:
        pos = self.tok[2]
        if self.tok[0] == "num":
            val = Fraction(int(self.tok[1]))
            self.i += 1
        else:
            self.expect("(")
            sign = 1
            if self.at("-"):
                sign = -1
                self.i += 1
            val = Fraction(sign * self.integer())
            if self.at("/"):
                self.i += 1
                den_pos = self.tok[2]
                den = self.integer()
                if den == 0:
                    raise ParseError("zero denominator", den_pos, ("positive integer",))
                val /= den
            self.expect(")")
        if val <= 0:
            raise NonpositiveExponent(f"exponent {val} is not positive", pos)
        return val

    def integer(self) -> int:
        if self.tok[0] != "num":
            self.fail(f"unexpected {self._desc()}", ("integer",))
        v = int(self.tok[1])
        self.i += 1
        return v

    # polynomial level
    def expr(self) -> Poly:
        p = self.term()
        while self.at("+") or self.at("-"):
            op = self.tok[1]
            self.i += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.unary()
        while self.at("*") or self.at("/"):
            op = self.tok[1]
            pos = self.tok[2]
            self.i += 1
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                p = p * Poly.const(1 / q.constant_term())
        return p

    def unary(self) -> Poly:
        if self.at("-"):
            self.i += 1
            return -self.unary()
        if self.at("+"):
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.at("^"):
            self.i += 1
            base = base ** self.integer()
        return base

    def atom(self) -> Poly:
        kind, val, _ = self.tok
        if kind == "num":
            self.i += 1
            return Poly.const(int(val))
        if kind == "var":
            self.i += 1
            return Poly.x1() if val in ("x", "x1") else Poly.x2()
        if self.at("("):
            self.i += 1
            p = self.expr()
            self.expect(")")
            return p
        self.fail(f"unexpected {self._desc()}", ("number", "x", "y", "'('"))


def parse_rideal(text: str) -> RIdeal:
    parser = _Parser(text)
    a = parser.rideal()
    if parser.tok[0] != "end":
        parser.fail(f"trailing {parser._desc()}", ("end of input",))
    return a


def parse_problem(text: str) -> ParsedProblem:
    return ParsedProblem(parse_rideal(text), text)


def format_rideal(a: RIdeal, names=("x", "y")) -> str:
    if not a.factors:
        return "1"
    out = []
    for ideal, r in a.factors:
        body = "(" + ", ".join(format_poly(g, names) for g in ideal.generators) + ")"
        if r != 1:
            rs = str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
            body += f"^({rs})"
        out.append(body)
    return "".join(out)
