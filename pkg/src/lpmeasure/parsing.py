"""Measure-description mini-language.

Grammar::

    measure  := 'zero'
              | 'delta' '(' number [',' number] ')'        # position, weight
              | 'atoms' '[' pair {',' pair} ']'
              | 'gauss' '(' number ',' number ')'          # exp(-pi ((x-c)/s)^2) dx
              | 'box' '(' number ',' number ')'            # Lebesgue measure on [a, b]
              | 'cantor' ['(' integer ')']                 # optional recursion depth
              | 'sum' '[' term {',' term} ']'
              | 'restrict' '(' measure ',' number ',' number ')'
    term     := [number '*'] measure
    pair     := '(' number ',' number ')'

Numbers may be complex in Python syntax (``2j``, ``1-0.5j``). Errors report
line and column of the offending token.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from . import measures as M
from .errors import SpecParseError
from .grid import SetOfIntervals

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?
        (?:[+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?j|j)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<punct>[()\[\],*])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SpecParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        tok = m.group()
        if kind == "ws":
            for i, ch in enumerate(tok):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            out.append(Token(kind, tok, line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str, points_per_unit: int, gauss_points: int):
        self.toks = tokenize(text)
        self.i = 0
        self.ppu = points_per_unit
        self.gauss_points = gauss_points

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, msg: str, tok: Token | None = None):
        t = tok or self.tok
        raise SpecParseError(msg, t.line, t.column)

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text:
            self.fail(f"expected {text!r}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.text == text:
            self.i += 1
            return True
        return False

    def number(self) -> complex:
        t = self.tok
        if t.kind != "number":
            self.fail(f"expected a number, found {t.text or 'end of input'!r}")
        self.i += 1
        return complex(t.text)

    def real(self) -> float:
        t = self.tok
        z = self.number()
        if z.imag:
            self.fail("expected a real number", t)
        return z.real

    def parse(self) -> M.Measure:
        mu = self.measure()
        if self.tok.kind != "end":
            self.fail(f"unexpected {self.tok.text!r} after measure")
        return mu

    def measure(self) -> M.Measure:
        t = self.tok
        if t.kind != "name":
            self.fail(f"expected a measure, found {t.text or 'end of input'!r}")
        self.i += 1
        name = t.text
        if name == "zero":
            return M.zero()
        if name == "delta":
            self.expect("(")
            a = self.real()
            w = self.number() if self.accept(",") else 1.0
            self.expect(")")
            return M.delta(a, w)
        if name == "atoms":
            self.expect("[")
            pairs = [self.pair()]
            while self.accept(","):
                pairs.append(self.pair())
            self.expect("]")
            return M.atoms(pairs)
        if name == "gauss":
            self.expect("(")
            c = self.real()
            self.expect(",")
            s_tok = self.tok
            s = self.real()
            self.expect(")")
            if s <= 0:
                self.fail("gauss scale must be positive", s_tok)
            return M.gaussian_density(c, s, n=self.gauss_points)
        if name == "box":
            self.expect("(")
            a = self.real()
            self.expect(",")
            b_tok = self.tok
            b = self.real()
            self.expect(")")
            if b <= a:
                self.fail("box needs a < b", b_tok)
            return M.lebesgue(a, b, self.ppu)
        if name == "cantor":
            if self.accept("("):
                d_tok = self.tok
                d = self.real()
                self.expect(")")
                if d != int(d) or d < 1:
                    self.fail("cantor depth must be a positive integer", d_tok)
                return M.cantor(int(d))
            return M.cantor()
        if name == "sum":
            self.expect("[")
            terms = [self.term()]
            while self.accept(","):
                terms.append(self.term())
            self.expect("]")
            return M.Sum(tuple(terms))
        if name == "restrict":
            self.expect("(")
            mu = self.measure()
            self.expect(",")
            a = self.real()
            self.expect(",")
            b_tok = self.tok
            b = self.real()
            self.expect(")")
            if b <= a:
                self.fail("restrict needs a < b", b_tok)
            return M.restrict(mu, SetOfIntervals.interval(a, b))
        self.fail(f"unknown measure {name!r}", t)
        raise AssertionError  # unreachable

    def term(self) -> tuple[complex, M.Measure]:
        if self.tok.kind == "number":
            c = self.number()
            self.expect("*")
            return c, self.measure()
        return 1.0, self.measure()

    def pair(self) -> tuple[float, complex]:
        self.expect("(")
        a = self.real()
        self.expect(",")
        w = self.number()
        self.expect(")")
        return a, w


def parse_measure(text: str, points_per_unit: int = 256, gauss_points: int = 4096) -> M.Measure:
    """Build a measure from its textual description."""
    return _Parser(text, points_per_unit, gauss_points).parse()


def parse_interval(text: str) -> SetOfIntervals:
    """``'a,b'`` or ``'a,b;c,d'`` as a union of half-open intervals."""
    parts = [p for p in text.replace(" ", "").split(";") if p]
    out = []
    col = 1
    for part in parts:
        bits = part.split(",")
        if len(bits) != 2:
            raise SpecParseError(f"interval {part!r} needs two endpoints", 1, col)
        try:
            a, b = float(bits[0]), float(bits[1])
        except ValueError:
            raise SpecParseError(f"bad interval {part!r}", 1, col) from None
        if b <= a:
            raise SpecParseError(f"empty interval {part!r}", 1, col)
        out.append((a, b))
        col += len(part) + 1
    if not out:
        raise SpecParseError("empty interval list", 1, 1)
    return SetOfIntervals.of(*out)
