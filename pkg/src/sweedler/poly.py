"""Multivariate rational polynomials and the residue pairing.

The pairing sends a ket |v1,...,vs>_P and a polynomial f to the iterated
directional derivative of f along the tangents, evaluated at the point:

    <|v1,...,vs>_P, f>  =  (d_{v1} ... d_{vs} f)(P).

Everything is exact; this module is the independent witness that the
coalgebra maps are the duals of ordinary polynomial calculus.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .exact import DimensionError, Vec, as_scalar, scalar_str
from .bang import BangElement, BaseSpace, Ket, SpaceError, TensorElement


class Polynomial:
    """Polynomial over Q in variables x1..xn, stored as exponent -> coeff."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms):
        if not isinstance(nvars, int) or nvars < 1:
            raise DimensionError("nvars must be a positive integer")
        clean = {}
        for expo, c in dict(terms).items():
            expo = tuple(expo)
            if len(expo) != nvars or any(e < 0 or not isinstance(e, int) for e in expo):
                raise ValueError("bad exponent tuple %r for %d variables" % (expo, nvars))
            c = as_scalar(c)
            if c != 0:
                clean[expo] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: as_scalar(c)})

    @classmethod
    def variable(cls, nvars, i):
        """The coordinate function x_{i+1} (0-based index i)."""
        if not 0 <= i < nvars:
            raise DimensionError("variable index %d out of range" % i)
        return cls(nvars, {tuple(1 if j == i else 0 for j in range(nvars)): 1})

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=0)

    def _merge(self, other, sign):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise DimensionError("polynomials over different variable counts")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            acc[e] = acc.get(e, Fraction(0)) + sign * c
        return Polynomial(self.nvars, acc)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_scalar(c)
        return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise DimensionError("polynomials over different variable counts")
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, acc)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        acc = Polynomial.const(self.nvars, 1)
        for _ in range(n):
            acc = acc * self
        return acc

    def partial(self, i):
        """d/dx_{i+1}."""
        acc = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = e[:i] + (e[i] - 1,) + e[i + 1:]
            acc[e2] = acc.get(e2, Fraction(0)) + c * e[i]
        return Polynomial(self.nvars, acc)

    def directional(self, v: Vec):
        """Directional derivative along a vector."""
        if v.dim != self.nvars:
            raise DimensionError("direction has dim %d, polynomial has %d vars" % (v.dim, self.nvars))
        acc = Polynomial.zero(self.nvars)
        for i, c in enumerate(v.coords):
            if c != 0:
                acc = acc + self.partial(i).scale(c)
        return acc

    def eval_at(self, p: Vec) -> Fraction:
        if p.dim != self.nvars:
            raise DimensionError("point has dim %d, polynomial has %d vars" % (p.dim, self.nvars))
        total = Fraction(0)
        for e, c in self.terms.items():
            val = c
            for x, k in zip(p.coords, e):
                for _ in range(k):
                    val *= x
            total += val
        return total

    def reflect(self):
        """Substitute x -> -x."""
        return Polynomial(self.nvars,
                          {e: (c if sum(e) % 2 == 0 else -c) for e, c in self.terms.items()})

    def to_str(self):
        if not self.terms:
            return "0"
        def monom(e):
            bits = []
            for i, k in enumerate(e):
                if k == 1:
                    bits.append("x%d" % (i + 1))
                elif k > 1:
                    bits.append("x%d^%d" % (i + 1, k))
            return " ".join(bits)
        order = sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e)))
        out = ""
        for e, c in ((e, self.terms[e]) for e in order):
            m = monom(e)
            mag = scalar_str(abs(c))
            if m and abs(c) == 1:
                piece = m
            elif m:
                piece = mag + " " + m
            else:
                piece = mag
            if not out:
                out = ("-" if c < 0 else "") + piece
            else:
                out += (" - " if c < 0 else " + ") + piece
        return out

    __repr__ = to_str

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and other.nvars == self.nvars and other.terms == self.terms)

    def __hash__(self):
        return hash(("Polynomial", self.nvars, frozenset(self.terms.items())))


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def shift_doubling(f: Polynomial) -> Polynomial:
    """Send f(x) over n variables to f(x + y) over 2n variables x1..xn,y1..yn."""
    n = f.nvars
    acc = {}
    for e, c in f.terms.items():
        # expand prod_i (x_i + y_i)^{e_i} by the binomial theorem
        factor_terms = [[(math.comb(k, j), j, k - j) for j in range(k + 1)] for k in e]
        stack = [((), Fraction(1))]
        for i, options in enumerate(factor_terms):
            stack = [(done + ((xj, yj),), cc * b) for done, cc in stack for b, xj, yj in options]
        for done, cc in stack:
            expo = tuple(xj for xj, _ in done) + tuple(yj for _, yj in done)
            acc[expo] = acc.get(expo, Fraction(0)) + c * cc
    return Polynomial(2 * n, acc)


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<num>\d+(?:/\d+)?)|x(?P<var>\d+)(?:\^(?P<pow>\d+))?|(?P<bad>\S))")


def parse_poly(text: str, nvars=None) -> Polynomial:
    """Parse things like '3/2 x1^2 x2 - x3'.  Whitespace is insignificant.

    Terms are separated by + or -; a term is an optional rational coefficient
    followed by variable powers (juxtaposition means product).  If nvars is
    omitted it is inferred from the highest variable index (at least 1).
    """
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group("bad"):
            raise ValueError("bad character %r at offset %d in polynomial" % (m.group("bad"), m.start("bad")))
        if m.group("sign"):
            tokens.append(("sign", m.group("sign")))
        elif m.group("num"):
            tokens.append(("num", Fraction(m.group("num"))))
        else:
            tokens.append(("var", (int(m.group("var")), int(m.group("pow") or 1))))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial text %r" % text)

    terms = []  # (coeff, {index: power})
    i = 0
    while i < len(tokens):
        sign = Fraction(1)
        while i < len(tokens) and tokens[i][0] == "sign":
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        if i == len(tokens):
            raise ValueError("dangling sign in polynomial %r" % text)
        coeff = sign
        powers = {}
        saw = False
        if tokens[i][0] == "num":
            coeff *= tokens[i][1]
            saw = True
            i += 1
        while i < len(tokens) and tokens[i][0] == "var":
            idx, k = tokens[i][1]
            if idx < 1:
                raise ValueError("variables are numbered from x1")
            powers[idx] = powers.get(idx, 0) + k
            saw = True
            i += 1
        if not saw:
            raise ValueError("empty term in polynomial %r" % text)
        terms.append((coeff, powers))

    width = max((max(p) for _, p in terms if p), default=0)
    if nvars is None:
        nvars = max(width, 1)
    elif width > nvars:
        raise DimensionError("polynomial mentions x%d but nvars=%d" % (width, nvars))
    acc = Polynomial.zero(nvars)
    for coeff, powers in terms:
        expo = tuple(powers.get(i + 1, 0) for i in range(nvars))
        acc = acc + Polynomial(nvars, {expo: coeff})
    return acc


# ---------------------------------------------------------------------------
# residue pairing


def _ket_pair(space: BaseSpace, k: Ket, f: Polynomial) -> Fraction:
    g = f
    for v in k.tangents:
        g = g.directional(v)
    return g.eval_at(k.point)


def residue_pairing(t: BangElement, f: Polynomial) -> Fraction:
    """<t, f> for t in !V with V a concrete base space."""
    if not isinstance(t.space, BaseSpace):
        raise SpaceError("residue pairing needs a concrete base space")
    if f.nvars != t.space.dim:
        raise DimensionError("polynomial has %d vars, space has dim %d" % (f.nvars, t.space.dim))
    total = Fraction(0)
    for k, c in t.terms.items():
        total += c * _ket_pair(t.space, k, f)
    return total


def residue_pairing_tensor(te: TensorElement, fs) -> Fraction:
    """<t1 (x) ... (x) tk, f1 (x) ... (x) fk> = product of factor pairings."""
    fs = tuple(fs)
    if len(fs) != len(te.spaces):
        raise DimensionError("need one polynomial per tensor factor")
    for s, f in zip(te.spaces, fs):
        if not isinstance(s, BaseSpace) or f.nvars != s.dim:
            raise SpaceError("tensor factor/polynomial mismatch")
    total = Fraction(0)
    for kets, c in te.terms.items():
        val = c
        for s, k, f in zip(te.spaces, kets, fs):
            val *= _ket_pair(s, k, f)
            if val == 0:
                break
        total += val
    return total
