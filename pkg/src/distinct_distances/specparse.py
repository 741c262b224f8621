"""Curve-spec grammar.

::

    line:base=(r,...);dir=(r,...)
    poly:(p_1(t),...,p_D(t))
    circle:r=R
    torus:a=[a_1,...,a_k];lambda=[l_1,...,l_k]

Whitespace is ignored. Polynomials accept ``+ - * ^``, parentheses, ``t``,
integer/decimal literals and division by constants.
"""

from __future__ import annotations

from fractions import Fraction

from .curves import Line, Polynomial, RationalCircle, Reparam, Torus, ParamCurve, trim_poly, _poly_add, _poly_mul
from .errors import CurveSpecError
from .numeric import format_rational


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.pos = 0

    def fail(self, expected):
        raise CurveSpecError(len(self.s[: self.pos].encode()), expected, self.s)

    def ws(self):
        while self.pos < len(self.s) and self.s[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.ws()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def accept(self, tok):
        self.ws()
        if self.s.startswith(tok, self.pos):
            self.pos += len(tok)
            return True
        return False

    def expect(self, tok):
        if not self.accept(tok):
            self.fail(repr(tok))

    def word(self):
        self.ws()
        start = self.pos
        while self.pos < len(self.s) and self.s[self.pos].isalpha():
            self.pos += 1
        return self.s[start:self.pos]

    def end(self):
        self.ws()
        if self.pos != len(self.s):
            self.fail("end of input")

    def number(self) -> Fraction:
        self.ws()
        start = self.pos
        while self.pos < len(self.s) and self.s[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(self.s) and self.s[self.pos] == ".":
            self.pos += 1
            while self.pos < len(self.s) and self.s[self.pos].isdigit():
                self.pos += 1
        text = self.s[start:self.pos]
        if not text or text == "." or not any(ch.isdigit() for ch in text):
            self.pos = start
            self.fail("number")
        return Fraction(text)

    def integer(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.s) and self.s[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("integer")
        return int(self.s[start:self.pos])

    def rational(self) -> Fraction:
        neg = self.accept("-")
        if not neg:
            self.accept("+")
        v = self.number()
        if self.accept("/"):
            at = self.pos
            den = self.number()
            if den == 0:
                self.pos = at
                self.fail("nonzero denominator")
            v = v / den
        return -v if neg else v

    def seq(self, open_, close, item):
        self.expect(open_)
        out = [item()]
        while self.accept(","):
            out.append(item())
        self.expect(close)
        return out

    # polynomial expressions -> coefficient tuples (constant first)
    def expr(self):
        if self.accept("-"):
            acc = _poly_mul(self.term(), (Fraction(-1),))
        else:
            self.accept("+")
            acc = self.term()
        while True:
            if self.accept("+"):
                acc = _poly_add(acc, self.term())
            elif self.accept("-"):
                acc = _poly_add(acc, _poly_mul(self.term(), (Fraction(-1),)))
            else:
                return trim_poly(acc)

    def term(self):
        acc = self.factor()
        while True:
            if self.accept("*"):
                acc = _poly_mul(acc, self.factor())
            elif self.accept("/"):
                at = self.pos
                d = trim_poly(self.factor())
                if len(d) != 1 or d[0] == 0:
                    self.pos = at
                    self.fail("nonzero constant divisor")
                acc = tuple(c / d[0] for c in acc)
            else:
                return acc

    def factor(self):
        if self.accept("-"):
            return _poly_mul(self.factor(), (Fraction(-1),))
        base = self.atom()
        if self.accept("^"):
            k = self.integer()
            out = (Fraction(1),)
            for _ in range(k):
                out = _poly_mul(out, base)
            return out
        return base

    def atom(self):
        c = self.peek()
        if c == "t":
            self.pos += 1
            return (Fraction(0), Fraction(1))
        if c == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if c.isdigit() or c == ".":
            return (self.number(),)
        self.fail("'t', number or '('")


def parse_curve_spec(text: str) -> ParamCurve:
    """Parse a curve spec string; raises CurveSpecError with a byte offset on bad syntax."""
    p = _Parser(text)
    fam = p.word()
    if fam not in ("line", "poly", "circle", "torus"):
        p.pos -= len(fam)
        p.fail("one of 'line', 'poly', 'circle', 'torus'")
    p.expect(":")
    if fam == "line":
        p.expect("base")
        p.expect("=")
        base = p.seq("(", ")", p.rational)
        p.expect(";")
        p.expect("dir")
        p.expect("=")
        direction = p.seq("(", ")", p.rational)
        p.end()
        return Line(tuple(base), tuple(direction))
    if fam == "poly":
        polys = p.seq("(", ")", p.expr)
        p.end()
        return Polynomial(tuple(polys))
    if fam == "circle":
        p.expect("r")
        p.expect("=")
        r = p.rational()
        p.end()
        return RationalCircle(r)
    p.expect("a")
    p.expect("=")
    amps = p.seq("[", "]", p.rational)
    p.expect(";")
    p.expect("lambda")
    p.expect("=")
    freqs = p.seq("[", "]", p.integer)
    p.end()
    return Torus(tuple(amps), tuple(freqs))


def _format_poly(coeffs) -> str:
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0 and len(coeffs) > 1:
            continue
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = "t" if k == 1 else f"t^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def format_curve_spec(curve: ParamCurve) -> str:
    if isinstance(curve, Line):
        vec = lambda v: "(" + ",".join(format_rational(x) for x in v) + ")"
        return f"line:base={vec(curve.base)};dir={vec(curve.direction)}"
    if isinstance(curve, Polynomial):
        return "poly:(" + ", ".join(_format_poly(p) for p in curve.polys) + ")"
    if isinstance(curve, RationalCircle):
        return f"circle:r={format_rational(curve.radius)}"
    if isinstance(curve, Torus):
        a = ",".join(format_rational(x) for x in curve.amplitudes)
        lam = ",".join(str(l) for l in curve.freqs)
        return f"torus:a=[{a}];lambda=[{lam}]"
    if isinstance(curve, Reparam):
        raise ValueError("reparameterized curves have no spec syntax")
    raise TypeError(f"not a curve: {curve!r}")
