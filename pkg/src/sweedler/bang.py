"""Cofree cocommutative coalgebra !V with exact rational coefficients.

Elements are finite sums ``c |t1,...,ts>_P`` of kets: a base point ``P``
together with an unordered multiset of tangent vectors attached at that
point.  Over a concrete base space Q^n the sums are kept canonical:
tangents are expanded multilinearly into sorted basis vectors, like kets
are merged, zero terms are dropped.  Points are never expanded, because no
structural map is linear in the point.  The same machinery runs one level
up, for !!V, with unit kets playing the role of basis vectors.

Subset and partition enumerations are guarded; blowing the guard raises
``EnumerationLimitError`` rather than silently truncating.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .exact import Vec, as_scalar, check_dim, scalar_str

MAX_SUBSET_TANGENTS = 12
MAX_PARTITION_TANGENTS = 8


class SpaceError(ValueError):
    """An entry was used with a space it does not belong to."""


class EnumerationLimitError(RuntimeError):
    """A subset/partition enumeration exceeded its resource guard."""


def index_subsets(n):
    """All splittings of range(n) into (chosen, rest), deterministic order."""
    if n > MAX_SUBSET_TANGENTS:
        raise EnumerationLimitError(
            "refusing to enumerate 2^%d subsets (limit %d tangents)" % (n, MAX_SUBSET_TANGENTS))
    for mask in range(1 << n):
        chosen = tuple(i for i in range(n) if mask >> i & 1)
        rest = tuple(i for i in range(n) if not mask >> i & 1)
        yield chosen, rest


def set_partitions(items):
    """All partitions of a sequence into unordered nonempty blocks.

    Deterministic order: the first item anchors the first block, later items
    either join an existing block or open a new one.
    """
    items = list(items)
    if len(items) > MAX_PARTITION_TANGENTS:
        raise EnumerationLimitError(
            "refusing to enumerate partitions of %d items (limit %d)"
            % (len(items), MAX_PARTITION_TANGENTS))

    def rec(rest, blocks):
        if not rest:
            yield [tuple(b) for b in blocks]
            return
        head, tail = rest[0], rest[1:]
        for i in range(len(blocks)):
            blocks[i].append(head)
            yield from rec(tail, blocks)
            blocks[i].pop()
        blocks.append([head])
        yield from rec(tail, blocks)
        blocks.pop()

    yield from rec(items, [])


class BaseSpace:
    """The base space V = Q^dim; entries are Vec values."""

    __slots__ = ("dim",)

    def __init__(self, dim):
        object.__setattr__(self, "dim", check_dim(dim))

    def __setattr__(self, name, value):
        raise AttributeError("BaseSpace is immutable")

    def contains(self, entry):
        return isinstance(entry, Vec) and entry.dim == self.dim

    def expand(self, entry):
        """Decompose into canonical units: the standard basis vectors."""
        if not self.contains(entry):
            raise SpaceError("expected a vector of dim %d, got %r" % (self.dim, entry))
        return [(c, Vec.basis(self.dim, i)) for i, c in enumerate(entry.coords) if c != 0]

    def key(self, entry):
        return entry.coords

    def zero(self):
        return Vec.zero(self.dim)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def scale(self, c, a):
        return a.scale(c)

    def render(self, entry):
        return repr(entry)

    def label(self):
        return str(self.dim)

    def __eq__(self, other):
        return isinstance(other, BaseSpace) and other.dim == self.dim

    def __hash__(self):
        return hash(("BaseSpace", self.dim))

    def __repr__(self):
        return "BaseSpace(%d)" % self.dim


class BangSpace:
    """!W for an inner space W; entries are BangElement values over W."""

    __slots__ = ("inner",)

    def __init__(self, inner):
        object.__setattr__(self, "inner", inner)

    def __setattr__(self, name, value):
        raise AttributeError("BangSpace is immutable")

    def contains(self, entry):
        return isinstance(entry, BangElement) and entry.space == self.inner

    def expand(self, entry):
        """Canonical units of !W are the single kets with coefficient 1."""
        if not self.contains(entry):
            raise SpaceError("expected an element of !%s" % self.inner.label())
        return [(c, unit(self.inner, k)) for k, c in entry.sorted_terms()]

    def key(self, entry):
        return entry.term_key()

    def zero(self):
        return BangElement(self.inner, {})

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def scale(self, c, a):
        return a.scale(c)

    def render(self, entry):
        return "(%s)" % entry

    def label(self):
        return "!%s" % self.inner.label()

    def __eq__(self, other):
        return isinstance(other, BangSpace) and other.inner == self.inner

    def __hash__(self):
        return hash(("BangSpace", self.inner))

    def __repr__(self):
        return "BangSpace(%r)" % (self.inner,)


class Ket:
    """One ket |t1,...,ts>_P.  Tangents are kept sorted by the space key."""

    __slots__ = ("point", "tangents", "_hash")

    def __init__(self, point, tangents):
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "tangents", tuple(tangents))

    def __setattr__(self, name, value):
        raise AttributeError("Ket is immutable")

    @property
    def order(self):
        return len(self.tangents)

    def __eq__(self, other):
        return isinstance(other, Ket) and self.point == other.point and self.tangents == other.tangents

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash(("Ket", self.point, self.tangents))
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self):
        return "|%s>_%r" % (",".join(repr(t) for t in self.tangents), self.point)


def ket_key(space, k: Ket):
    return (space.key(k.point), tuple(space.key(t) for t in k.tangents))


class BangElement:
    """A finite linear combination of kets over a fixed entry space.

    The constructor trusts its term dict; use ``ket`` / ``from_terms`` to
    build canonical sums from raw data.
    """

    __slots__ = ("space", "terms", "_hash")

    def __init__(self, space, terms):
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("BangElement is immutable")

    @classmethod
    def zero(cls, space):
        return cls(space, {})

    @classmethod
    def ket(cls, space, point, tangents=(), coeff=1):
        return cls.from_terms(space, [(coeff, point, tuple(tangents))])

    @classmethod
    def from_terms(cls, space, items):
        """Canonicalize raw (coeff, point, tangents) triples into a sum.

        Tangents are expanded multilinearly into the space's canonical units
        and sorted; like kets merge; zero coefficients vanish.  Points pass
        through untouched.
        """
        acc = {}
        for coeff, point, tangents in items:
            coeff = as_scalar(coeff)
            if coeff == 0:
                continue
            if not space.contains(point):
                raise SpaceError("point %r does not lie in %s" % (point, space.label()))
            expansions = [space.expand(t) for t in tangents]
            for combo in itertools.product(*expansions):
                c = coeff
                for u, _ in combo:
                    c *= u
                entries = tuple(sorted((e for _, e in combo), key=space.key))
                k = Ket(point, entries)
                c0 = acc.get(k)
                acc[k] = c if c0 is None else c0 + c
        return cls(space, {k: c for k, c in acc.items() if c != 0})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: ket_key(self.space, kc[0]))

    def term_key(self):
        return tuple((ket_key(self.space, k), c) for k, c in self.sorted_terms())

    def is_zero(self):
        return not self.terms

    def max_order(self):
        return max((k.order for k in self.terms), default=0)

    def _merge(self, other, sign):
        if not isinstance(other, BangElement):
            return NotImplemented
        if other.space != self.space:
            raise SpaceError("cannot combine elements of %s and %s"
                             % (self.space.label(), other.space.label()))
        acc = dict(self.terms)
        for k, c in other.terms.items():
            c0 = acc.get(k)
            c1 = sign * c if c0 is None else c0 + sign * c
            if c1 == 0:
                acc.pop(k, None)
            else:
                acc[k] = c1
        return BangElement(self.space, acc)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_scalar(c)
        if c == 0:
            return BangElement(self.space, {})
        return BangElement(self.space, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, BangElement)
                and other.space == self.space and other.terms == self.terms)

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash(("BangElement", self.space, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
            return h

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.sorted_terms():
            body = "|%s>_%s" % (", ".join(self.space.render(t) for t in k.tangents),
                                self.space.render(k.point))
            if c == 1:
                bits.append(body)
            elif c == -1:
                bits.append("-" + body)
            else:
                bits.append(scalar_str(c) + " " + body)
        return " + ".join(bits).replace("+ -", "- ")


def unit(space, k: Ket) -> BangElement:
    """The single-ket element 1·k; the ket must already be canonical."""
    return BangElement(space, {k: Fraction(1)})


class TensorElement:
    """A sum of pure tensors of kets, one factor per listed space.

    Kets inside tensor terms are always taken from canonical elements, so
    only merging happens here, never re-expansion.
    """

    __slots__ = ("spaces", "terms")

    def __init__(self, spaces, terms):
        object.__setattr__(self, "spaces", tuple(spaces))
        object.__setattr__(self, "terms", dict(terms))

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    @classmethod
    def zero(cls, spaces):
        return cls(spaces, {})

    @classmethod
    def from_terms(cls, spaces, items):
        acc = {}
        for coeff, kets in items:
            coeff = as_scalar(coeff)
            if coeff == 0:
                continue
            kets = tuple(kets)
            assert len(kets) == len(spaces)
            c0 = acc.get(kets)
            acc[kets] = coeff if c0 is None else c0 + coeff
        return cls(spaces, {k: c for k, c in acc.items() if c != 0})

    def sorted_terms(self):
        def termkey(item):
            kets, _ = item
            return tuple(ket_key(s, k) for s, k in zip(self.spaces, kets))
        return sorted(self.terms.items(), key=termkey)

    def is_zero(self):
        return not self.terms

    def _merge(self, other, sign):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if other.spaces != self.spaces:
            raise SpaceError("tensor factor spaces differ")
        acc = dict(self.terms)
        for k, c in other.terms.items():
            c0 = acc.get(k)
            c1 = sign * c if c0 is None else c0 + sign * c
            if c1 == 0:
                acc.pop(k, None)
            else:
                acc[k] = c1
        return TensorElement(self.spaces, acc)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = as_scalar(c)
        if c == 0:
            return TensorElement(self.spaces, {})
        return TensorElement(self.spaces, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, TensorElement)
                and other.spaces == self.spaces and other.terms == self.terms)

    def __hash__(self):
        return hash(("TensorElement", self.spaces, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for kets, c in self.sorted_terms():
            body = " (x) ".join(
                "|%s>_%s" % (", ".join(s.render(t) for t in k.tangents), s.render(k.point))
                for s, k in zip(self.spaces, kets))
            bits.append(body if c == 1 else scalar_str(c) + " " + body)
        return " + ".join(bits)


def tensor_pair(a: BangElement, b: BangElement) -> TensorElement:
    return TensorElement.from_terms(
        (a.space, b.space),
        ((ca * cb, (ka, kb)) for ka, ca in a.terms.items() for kb, cb in b.terms.items()))


def map_factor(te: TensorElement, i, fn, out_space) -> TensorElement:
    """Apply a linear map (given on kets, returning BangElement) to factor i."""
    spaces = list(te.spaces)
    spaces[i] = out_space
    items = []
    for kets, c in te.terms.items():
        image = fn(kets[i])
        for k2, c2 in image.terms.items():
            items.append((c * c2, kets[:i] + (k2,) + kets[i + 1:]))
    return TensorElement.from_terms(tuple(spaces), items)


def coproduct_factor(te: TensorElement, i) -> TensorElement:
    """Apply the coproduct to factor i, splicing in the two new factors."""
    spaces = te.spaces[:i] + (te.spaces[i], te.spaces[i]) + te.spaces[i + 1:]
    items = []
    for kets, c in te.terms.items():
        k = kets[i]
        for chosen, rest in index_subsets(k.order):
            k1 = Ket(k.point, tuple(k.tangents[j] for j in chosen))
            k2 = Ket(k.point, tuple(k.tangents[j] for j in rest))
            items.append((c, kets[:i] + (k1, k2) + kets[i + 1:]))
    return TensorElement.from_terms(spaces, items)


# ---------------------------------------------------------------------------
# structural maps


def coproduct(t: BangElement) -> TensorElement:
    """Delta: split the tangent multiset over all 2^s subsets, same point."""
    items = []
    for k, c in t.terms.items():
        for chosen, rest in index_subsets(k.order):
            k1 = Ket(k.point, tuple(k.tangents[j] for j in chosen))
            k2 = Ket(k.point, tuple(k.tangents[j] for j in rest))
            items.append((c, (k1, k2)))
    return TensorElement.from_terms((t.space, t.space), items)


def counit(t: BangElement) -> Fraction:
    """The coefficient sum over the tangent-free kets."""
    return sum((c for k, c in t.terms.items() if k.order == 0), Fraction(0))


def dereliction(t: BangElement):
    """d: group-likes fall to their point, single tangents to their vector."""
    space = t.space
    acc = space.zero()
    for k, c in t.terms.items():
        if k.order == 0:
            acc = space.add(acc, space.scale(c, k.point))
        elif k.order == 1:
            acc = space.add(acc, space.scale(c, k.tangents[0]))
    return acc


def promote(t: BangElement) -> BangElement:
    """delta: !V -> !!V by summing over set partitions of each tangent multiset."""
    outer = BangSpace(t.space)
    items = []
    for k, c in t.terms.items():
        base = BangElement.ket(t.space, k.point)
        for blocks in set_partitions(range(k.order)):
            entries = tuple(
                BangElement.ket(t.space, k.point, tuple(k.tangents[j] for j in block))
                for block in blocks)
            items.append((c, base, entries))
    return BangElement.from_terms(outer, items)


def deriving(t: BangElement, v) -> BangElement:
    """D: adjoin one more tangent v to every ket."""
    return BangElement.from_terms(
        t.space, ((c, k.point, k.tangents + (v,)) for k, c in t.terms.items()))


def deriving_mutated(t: BangElement, v) -> BangElement:
    """Deliberately wrong D (tangent appended with flipped sign); used to
    demonstrate that the law suite can catch a corrupted structural map."""
    return BangElement.from_terms(
        t.space, ((-c, k.point, k.tangents + (v,)) for k, c in t.terms.items()))


def cocontract(a: BangElement, b: BangElement) -> BangElement:
    """nabla: multiply kets by adding points and concatenating tangents."""
    if a.space != b.space:
        raise SpaceError("cocontraction needs matching spaces")
    space = a.space
    return BangElement.from_terms(
        space,
        ((ca * cb, space.add(ka.point, kb.point), ka.tangents + kb.tangents)
         for ka, ca in a.terms.items() for kb, cb in b.terms.items()))


def antipode(t: BangElement) -> BangElement:
    """S: negate the point and every tangent."""
    space = t.space
    return BangElement.from_terms(
        space,
        ((c, space.neg(k.point), tuple(space.neg(x) for x in k.tangents))
         for k, c in t.terms.items()))


def coweaken(space) -> BangElement:
    """u: the group-like ket at the origin."""
    return BangElement.ket(space, space.zero())


def codereliction(space, v) -> BangElement:
    """dbar: a single tangent at the origin."""
    return BangElement.from_terms(space, [(1, space.zero(), (v,))])


def split_merge(a: BangElement, b: BangElement) -> BangElement:
    """Psi: !V1 (x) !V2 -> !(V1 + V2), concatenating points blockwise."""
    if not isinstance(a.space, BaseSpace) or not isinstance(b.space, BaseSpace):
        raise SpaceError("split_merge needs concrete base spaces")
    d1, d2 = a.space.dim, b.space.dim
    target = BaseSpace(d1 + d2)
    z1, z2 = Vec.zero(d1), Vec.zero(d2)
    items = []
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            point = ka.point.concat(kb.point)
            tangents = tuple(x.concat(z2) for x in ka.tangents) \
                + tuple(z1.concat(x) for x in kb.tangents)
            items.append((ca * cb, point, tangents))
    return BangElement.from_terms(target, items)


def split_inverse(t: BangElement, d1, d2) -> TensorElement:
    """Psi^{-1}: split a !(V1 + V2) element back into !V1 (x) !V2 terms.

    Every tangent must be supported in a single block; canonical elements
    always are, since their tangents are standard basis vectors.
    """
    if not isinstance(t.space, BaseSpace) or t.space.dim != d1 + d2:
        raise SpaceError("expected an element over a base space of dim %d" % (d1 + d2))
    s1, s2 = BaseSpace(d1), BaseSpace(d2)
    items = []
    for k, c in t.terms.items():
        p1 = Vec(k.point.coords[:d1])
        p2 = Vec(k.point.coords[d1:])
        left, right = [], []
        for x in k.tangents:
            head, tail = Vec(x.coords[:d1]), Vec(x.coords[d1:])
            if tail.is_zero():
                left.append(head)
            elif head.is_zero():
                right.append(tail)
            else:
                raise SpaceError("tangent %r straddles the direct-sum blocks" % (x,))
        items.append((c, (Ket(p1, tuple(left)), Ket(p2, tuple(right)))))
    return TensorElement.from_terms((s1, s2), items)


def tangent_lift(space, point, direction):
    """The curve-of-kets pair (|>_P, |v>_P) induced by a tangent vector."""
    return (BangElement.ket(space, point),
            BangElement.from_terms(space, [(1, point, (direction,))]))
