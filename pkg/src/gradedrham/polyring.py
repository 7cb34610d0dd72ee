"""Weighted-graded polynomial ring Q[x1..xn].

Monomials are exponent tuples; a ``Poly`` is an immutable map from monomials
to nonzero ``Fraction`` coefficients.  Bases of graded pieces are listed in
descending lexicographic order of exponent vectors, so x1^2 comes before
x1*x2 before x2^2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

Monomial = tuple[int, ...]


class NotHomogeneousError(ValueError):
    pass


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__("%s at line %d, column %d" % (msg, line, col))
        self.line, self.column = line, col


@dataclass(frozen=True)
class Weights:
    w: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if not w:
            raise ValueError("need at least one variable")
        if any(x < 1 for x in w):
            raise ValueError("weights must be positive integers, got %r" % (w,))
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def omega(self) -> int:
        return sum(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, i):
        return self.w[i]


def weighted_degree(m: Monomial, w: Weights) -> int:
    return sum(e * wi for e, wi in zip(m, w.w))


@lru_cache(maxsize=None)
def _basis(d: int, w: tuple[int, ...]) -> tuple[Monomial, ...]:
    if d < 0:
        return ()
    if len(w) == 1:
        return ((d // w[0],),) if d % w[0] == 0 else ()
    out = []
    for e in range(d // w[0], -1, -1):
        for rest in _basis(d - e * w[0], w[1:]):
            out.append((e,) + rest)
    return tuple(out)


def monomial_basis(d: int, w: Weights) -> tuple[Monomial, ...]:
    """All monomials of weighted degree exactly ``d``, descending lex order."""
    return _basis(d, w.w)


@lru_cache(maxsize=None)
def monomial_index(d: int, w: Weights) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomial_basis(d, w))}


class Poly:
    """Sparse polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(m)] = c
        if nvars is None:
            if not clean:
                raise ValueError("nvars required for the zero polynomial")
            nvars = len(next(iter(clean)))
        for m in clean:
            if len(m) != nvars:
                raise ValueError("monomial %r has wrong length for %d variables" % (m, nvars))
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "Poly":
        return cls({tuple(m): c}, len(m))

    @classmethod
    def from_vector(cls, coords, basis: Iterable[Monomial], nvars: int) -> "Poly":
        return cls({m: c for m, c in zip(basis, coords) if c}, nvars)

    # value semantics
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.nvars: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "Poly(%r)" % format_poly(self)

    def __str__(self):
        return format_poly(self)

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly({m: c * a for m, a in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    # grading
    def degrees(self, w: Weights) -> set[int]:
        return {weighted_degree(m, w) for m in self.terms}

    def is_homogeneous(self, w: Weights) -> bool:
        return len(self.degrees(w)) <= 1

    def degree(self, w: Weights) -> int | None:
        """Weighted degree of a homogeneous polynomial; None for zero."""
        degs = self.degrees(w)
        if len(degs) > 1:
            raise NotHomogeneousError("%s is not homogeneous for weights %s" % (self, w.w))
        return degs.pop() if degs else None

    def coords(self, d: int, w: Weights) -> list[Fraction]:
        """Coefficient vector on ``monomial_basis(d, w)``."""
        idx = monomial_index(d, w)
        v = [Fraction(0)] * len(idx)
        for m, c in self.terms.items():
            try:
                v[idx[m]] = c
            except KeyError:
                raise NotHomogeneousError("%s has a term outside degree %d" % (self, d)) from None
        return v


def check_homogeneous(p: Poly, w: Weights) -> int | None:
    if p.nvars != w.n:
        raise ValueError("polynomial has %d variables but %d weights were given" % (p.nvars, w.n))
    return p.degree(w)


def partial(p: Poly, j: int) -> Poly:
    out = {}
    for m, c in p.terms.items():
        if m[j]:
            e = list(m)
            e[j] -= 1
            out[tuple(e)] = c * m[j]
    return Poly(out, p.nvars)


def jacobian(f: Poly) -> list[Poly]:
    return [partial(f, j) for j in range(f.nvars)]


def euler_apply(p: Poly, w: Weights) -> Poly:
    """Apply sum_i w_i x_i d/dx_i term by term from the partials."""
    out = Poly.zero(p.nvars)
    for i in range(p.nvars):
        out = out + Poly.var(i, p.nvars) * partial(p, i) * w[i]
    return out


def _leading(p: Poly) -> Monomial:
    return max(p.terms)


def divide_exact(g: Poly, f: Poly) -> Poly | None:
    """Quotient q with g = q*f, or None when f does not divide g.

    Plain multivariate division by leading terms in lex order; for exact
    division this never needs a remainder.
    """
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    lm_f = _leading(f)
    lc_f = f.terms[lm_f]
    rest = dict(g.terms)
    q = {}
    while rest:
        lm = max(rest)
        e = tuple(a - b for a, b in zip(lm, lm_f))
        if min(e) < 0:
            return None
        c = rest[lm] / lc_f
        q[e] = c
        for m, a in f.terms.items():
            t = tuple(x + y for x, y in zip(e, m))
            v = rest.get(t, 0) - c * a
            if v:
                rest[t] = v
            else:
                rest.pop(t, None)
    return Poly(q, g.nvars)


def divides(f: Poly, g: Poly) -> bool:
    return divide_exact(g, f) is not None


# -- text form -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|(\^)|(\*)|(\+)|(-)|(/))")


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = len(text) - len(text[pos:].lstrip())
            raise PolySyntaxError("unexpected character %r" % text[start], text, start)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(1):
            out.append(("int", int(m.group(1)), start))
        elif m.group(2):
            out.append(("var", int(m.group(3)), start))
        else:
            out.append((m.group(0).strip(), None, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse e.g. ``"x1^2 + 3/2*x2*x3 - x3^3"`` over ``nvars`` variables."""
    toks = _tokens(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise PolySyntaxError("expected %s, found %s" % (kind, what), text, tok[2])
        i += 1
        return tok

    def power():
        tok = take("var")
        idx = tok[1]
        if not 1 <= idx <= nvars:
            raise PolySyntaxError("variable x%d out of range 1..%d" % (idx, nvars), text, tok[2])
        e = 1
        if peek()[0] == "^":
            take("^")
            e = take("int")[1]
        m = [0] * nvars
        m[idx - 1] = e
        return tuple(m)

    def term():
        coeff = Fraction(1)
        mono = [0] * nvars
        if peek()[0] == "int":
            num = take("int")[1]
            if peek()[0] == "/":
                take("/")
                tok = take("int")
                if tok[1] == 0:
                    raise PolySyntaxError("zero denominator", text, tok[2])
                coeff = Fraction(num, tok[1])
            else:
                coeff = Fraction(num)
            if peek()[0] != "*":
                return coeff, tuple(mono)
            take("*")
        while True:
            p = power()
            mono = [a + b for a, b in zip(mono, p)]
            if peek()[0] != "*":
                break
            take("*")
        return coeff, tuple(mono)

    terms: dict[Monomial, Fraction] = {}
    sign = 1
    if peek()[0] in ("+", "-"):
        sign = -1 if take(peek()[0])[0] == "-" else 1
    while True:
        c, m = term()
        terms[m] = terms.get(m, 0) + sign * c
        kind = peek()[0]
        if kind == "end":
            break
        if kind not in ("+", "-"):
            tok = peek()
            raise PolySyntaxError("expected '+' or '-', found %r" % (tok[1] if tok[1] is not None else kind), text, tok[2])
        sign = 1 if take(kind)[0] == "+" else -1
    return Poly(terms, nvars)


def _format_mono(m: Monomial) -> str:
    parts = []
    for i, e in enumerate(m):
        if e == 1:
            parts.append("x%d" % (i + 1))
        elif e > 1:
            parts.append("x%d^%d" % (i + 1, e))
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m in sorted(p.terms, reverse=True):
        c = p.terms[m]
        mono = _format_mono(m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono and a == 1:
            body = mono
        elif mono:
            body = "%s*%s" % (a, mono)
        else:
            body = str(a)
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += " %s %s" % (sign, body)
    return text
