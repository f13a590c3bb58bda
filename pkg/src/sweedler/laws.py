"""Randomized verification of the engine's structural laws.

Each law is an executable identity over exact rational data.  A run draws
random elements from a seeded generator, evaluates both sides with exact
arithmetic, and reports a concrete witness on the first mismatch.  There is
no tolerance anywhere: two sides are equal or the law fails.

Laws are grouped:

* ``bang``       -- comonoid, bialgebra, antipode, (co)dereliction and
                    deriving-map identities of the bang coalgebra.
* ``poly``       -- duality between structural maps and polynomial algebra
                    through the residue pairing.
* ``semantics``  -- linearity, promotion behaviour and path coherence of the
                    proof denotations.
* ``encodings``  -- bundled proof families against closed-form matrix
                    oracles.

The ``mutate`` flag swaps the deriving map for a deliberately corrupted
variant; the suite is expected to catch it (see ``deriving-dereliction`` and
``deriving-promotion``).
"""

from __future__ import annotations

import random
import zlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from . import bang as bg
from . import poly as pl
from .exact import Matrix, Vec
from . import encodings as enc
from .semantics import (
    BangSpace, BangVal, Base, HomSpace, MapVal, MatVal, ProbeConfig,
    add_values, apply_hom, denote_proof, derivative_eval, entry_space,
    extensional_equal, nl_eval, scale_value)
from .syntax import Axiom, Bang, Cut, Prom, PropVar, derivative_transform


# ---------------------------------------------------------------------------
# configuration and results


@dataclass(frozen=True)
class RunConfig:
    """Settings for a law run.  Identical configs give identical runs."""

    seed: int = 0
    dim: int = 2
    trials: int = 200
    max_tangents: int = 3
    probe_depth: int = 4
    span: int = 3
    mutate: bool = False


@dataclass(frozen=True)
class LawResult:
    group: str
    name: str
    passed: bool
    trials: int
    witness: Optional[str] = None

    def line(self) -> str:
        if self.passed:
            return "PASS %s/%s (%d trials)" % (self.group, self.name, self.trials)
        return "FAIL %s/%s (trial %d): %s" % (self.group, self.name, self.trials, self.witness)


@dataclass(frozen=True)
class Law:
    group: str
    name: str
    fn: Callable
    weight: int = 1  # divides cfg.trials; expensive laws get fewer rounds


LAWS: list[Law] = []


def law(group, name, weight=1):
    def deco(fn):
        LAWS.append(Law(group, name, fn, weight))
        return fn
    return deco


def law_groups() -> tuple:
    seen = []
    for l in LAWS:
        if l.group not in seen:
            seen.append(l.group)
    return tuple(seen)


def _law_seed(seed, group, name):
    return seed * 1000003 + zlib.crc32(("%s/%s" % (group, name)).encode("ascii"))


def run_law(l: Law, cfg: RunConfig) -> LawResult:
    rng = random.Random(_law_seed(cfg.seed, l.group, l.name))
    rounds = max(1, cfg.trials // l.weight)
    for i in range(rounds):
        witness = l.fn(rng, cfg)
        if witness is not None:
            return LawResult(l.group, l.name, False, i + 1, witness)
    return LawResult(l.group, l.name, True, rounds, None)


def run_laws(cfg: RunConfig, groups=None, names=None) -> list:
    picked = [l for l in LAWS
              if (groups is None or l.group in groups)
              and (names is None or l.name in names)]
    return [run_law(l, cfg) for l in picked]


# ---------------------------------------------------------------------------
# random generators


def _short(x, limit=200):
    s = str(x)
    return s if len(s) <= limit else s[:limit - 3] + "..."


def _witness(parts):
    return "; ".join("%s = %s" % (k, _short(v)) for k, v in parts)


def rand_fraction(rng, span):
    return Fraction(rng.randint(-span, span), rng.randint(1, 2))


def rand_vec(rng, dim, span):
    return Vec(tuple(rand_fraction(rng, span) for _ in range(dim)))


def rand_matrix(rng, n, span):
    return Matrix(tuple(tuple(rng.randint(-span, span) for _ in range(n)) for _ in range(n)))


def rand_bang(rng, space, max_tangents, span, terms=2):
    items = []
    for _ in range(rng.randint(1, terms)):
        order = rng.randint(0, max_tangents)
        point = rand_vec(rng, space.dim, span)
        tangents = tuple(rand_vec(rng, space.dim, span) for _ in range(order))
        coeff = Fraction(rng.choice((-2, -1, 1, 1, 2)), rng.choice((1, 2)))
        items.append((coeff, point, tangents))
    return bg.BangElement.from_terms(space, items)


def rand_poly(rng, nvars, span, deg=2, terms=3):
    acc = {}
    for _ in range(rng.randint(1, terms)):
        expo = tuple(rng.randint(0, deg) for _ in range(nvars))
        c = rand_fraction(rng, span)
        acc[expo] = acc.get(expo, Fraction(0)) + c
    return pl.Polynomial(nvars, {e: c for e, c in acc.items() if c != 0})


def _unit_of(space, k):
    return bg.BangElement.from_terms(space, [(1, k.point, k.tangents)])


def _D(cfg):
    return bg.deriving_mutated if cfg.mutate else bg.deriving


# ---------------------------------------------------------------------------
# bang-coalgebra laws


@law("bang", "deriving-counit")
def _law_deriving_counit(rng, cfg):
    """Adjoining a tangent kills the counit."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    got = bg.counit(_D(cfg)(x, v))
    if got != 0:
        return _witness([("x", x), ("v", v), ("counit", got)])


@law("bang", "deriving-coproduct")
def _law_deriving_coproduct(rng, cfg):
    """The coproduct routes a fresh tangent into either factor."""
    space = bg.BaseSpace(cfg.dim)
    D = _D(cfg)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    lhs = bg.coproduct(D(x, v))
    dx = bg.coproduct(x)
    kD = lambda k: D(_unit_of(space, k), v)
    rhs = bg.map_factor(dx, 1, kD, space) + bg.map_factor(dx, 0, kD, space)
    if lhs != rhs:
        return _witness([("x", x), ("v", v), ("lhs", lhs), ("rhs", rhs)])


@law("bang", "deriving-dereliction")
def _law_deriving_dereliction(rng, cfg):
    """Dereliction after a fresh tangent returns counit(x) times the tangent."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    lhs = bg.dereliction(_D(cfg)(x, v))
    rhs = v.scale(bg.counit(x))
    if lhs != rhs:
        return _witness([("x", x), ("v", v), ("lhs", lhs), ("rhs", rhs)])


@law("bang", "deriving-promotion")
def _law_deriving_promotion(rng, cfg):
    """Promotion of a derived element re-derives the promoted split."""
    space = bg.BaseSpace(cfg.dim)
    D = _D(cfg)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    lhs = bg.promote(D(x, v))
    outer = bg.BangSpace(space)
    rhs = bg.BangElement.zero(outer)
    for (k1, k2), c in bg.coproduct(x).terms.items():
        part = D(bg.promote(_unit_of(space, k1)), D(_unit_of(space, k2), v))
        rhs = rhs + part.scale(c)
    if lhs != rhs:
        return _witness([("x", x), ("v", v), ("lhs", lhs), ("rhs", rhs)])


@law("bang", "coproduct-coassociative")
def _law_coassoc(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    dx = bg.coproduct(x)
    lhs = bg.coproduct_factor(dx, 0)
    rhs = bg.coproduct_factor(dx, 1)
    if lhs != rhs:
        return _witness([("x", x), ("lhs", lhs), ("rhs", rhs)])


@law("bang", "coproduct-cocommutative")
def _law_cocomm(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    dx = bg.coproduct(x)
    swapped = bg.TensorElement.from_terms(
        dx.spaces, ((c, (k2, k1)) for (k1, k2), c in dx.terms.items()))
    if swapped != dx:
        return _witness([("x", x), ("coproduct", dx)])


@law("bang", "coproduct-counit")
def _law_counit_law(rng, cfg):
    """Collapsing one coproduct leg with the counit is the identity."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    acc = bg.BangElement.zero(space)
    for (k1, k2), c in bg.coproduct(x).terms.items():
        if k1.order == 0:
            acc = acc + _unit_of(space, k2).scale(c)
    if acc != x:
        return _witness([("x", x), ("collapsed", acc)])


@law("bang", "promotion-dereliction")
def _law_promotion_dereliction(rng, cfg):
    """Dereliction undoes promotion (comonad counit law)."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    got = bg.dereliction(bg.promote(x))
    if got != x:
        return _witness([("x", x), ("got", got)])


@law("bang", "promotion-coalgebra-morphism")
def _law_promotion_morphism(rng, cfg):
    """Promotion intertwines the coproducts and preserves the counit."""
    space = bg.BaseSpace(cfg.dim)
    outer = bg.BangSpace(space)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    lhs = bg.coproduct(bg.promote(x))
    dprom = lambda k: bg.promote(_unit_of(space, k))
    dx = bg.coproduct(x)
    rhs = bg.map_factor(bg.map_factor(dx, 0, dprom, outer), 1, dprom, outer)
    if lhs != rhs:
        return _witness([("x", x), ("lhs", lhs), ("rhs", rhs)])
    if bg.counit(bg.promote(x)) != bg.counit(x):
        return _witness([("x", x), ("counit(promote)", bg.counit(bg.promote(x)))])


@law("bang", "cocontraction-commutative-monoid")
def _law_cocontraction_monoid(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, 2, cfg.span)
    y = rand_bang(rng, space, 2, cfg.span)
    z = rand_bang(rng, space, 1, cfg.span)
    if bg.cocontract(x, y) != bg.cocontract(y, x):
        return _witness([("x", x), ("y", y)])
    if bg.cocontract(bg.cocontract(x, y), z) != bg.cocontract(x, bg.cocontract(y, z)):
        return _witness([("x", x), ("y", y), ("z", z)])
    if bg.cocontract(x, bg.coweaken(space)) != x:
        return _witness([("x", x), ("against", "unit")])


@law("bang", "bialgebra-compatibility")
def _law_bialgebra(rng, cfg):
    """Coproduct of a cocontraction factors through both coproducts."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, 2, cfg.span)
    y = rand_bang(rng, space, 2, cfg.span)
    lhs = bg.coproduct(bg.cocontract(x, y))
    items = []
    for (x1, x2), cx in bg.coproduct(x).terms.items():
        for (y1, y2), cy in bg.coproduct(y).terms.items():
            p1 = bg.cocontract(_unit_of(space, x1), _unit_of(space, y1))
            p2 = bg.cocontract(_unit_of(space, x2), _unit_of(space, y2))
            for k1, c1 in p1.terms.items():
                for k2, c2 in p2.terms.items():
                    items.append((cx * cy * c1 * c2, (k1, k2)))
    rhs = bg.TensorElement.from_terms((space, space), items)
    if lhs != rhs:
        return _witness([("x", x), ("y", y), ("lhs", lhs), ("rhs", rhs)])
    if bg.counit(bg.cocontract(x, y)) != bg.counit(x) * bg.counit(y):
        return _witness([("x", x), ("y", y), ("counit mismatch", "")])


@law("bang", "coweakening-group-like")
def _law_coweaken(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    u = bg.coweaken(space)
    if bg.coproduct(u) != bg.tensor_pair(u, u):
        return "coproduct of the empty ket is not group-like"
    if bg.counit(u) != 1:
        return "counit of the empty ket is not 1"


@law("bang", "antipode-convolution-inverse")
def _law_antipode(rng, cfg):
    """Cocontracting the antipode against one coproduct leg gives u . counit."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    acc = bg.BangElement.zero(space)
    for (k1, k2), c in bg.coproduct(x).terms.items():
        acc = acc + bg.cocontract(
            bg.antipode(_unit_of(space, k1)), _unit_of(space, k2)).scale(c)
    target = bg.coweaken(space).scale(bg.counit(x))
    if acc != target:
        return _witness([("x", x), ("lhs", acc), ("rhs", target)])
    if bg.antipode(bg.antipode(x)) != x:
        return _witness([("x", x), ("S(S(x))", bg.antipode(bg.antipode(x)))])


@law("bang", "codereliction-primitives")
def _law_codereliction(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    v = rand_vec(rng, cfg.dim, cfg.span)
    e = bg.codereliction(space, v)
    u = bg.coweaken(space)
    if bg.counit(e) != 0:
        return _witness([("v", v), ("counit", bg.counit(e))])
    if bg.dereliction(e) != v:
        return _witness([("v", v), ("dereliction", bg.dereliction(e))])
    if bg.coproduct(e) != bg.tensor_pair(e, u) + bg.tensor_pair(u, e):
        return _witness([("v", v), ("coproduct", bg.coproduct(e))])


@law("bang", "deriving-via-cocontraction")
def _law_deriving_cocontraction(rng, cfg):
    """D(x; v) is cocontraction against a coderelicted tangent."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    lhs = _D(cfg)(x, v)
    rhs = bg.cocontract(x, bg.codereliction(space, v))
    if lhs != rhs:
        return _witness([("x", x), ("v", v), ("lhs", lhs), ("rhs", rhs)])


@law("bang", "split-merge-inverse")
def _law_split_merge(rng, cfg):
    d1, d2 = cfg.dim, max(1, cfg.dim - 1)
    a = rand_bang(rng, bg.BaseSpace(d1), cfg.max_tangents, cfg.span)
    b = rand_bang(rng, bg.BaseSpace(d2), cfg.max_tangents, cfg.span)
    merged = bg.split_merge(a, b)
    back = bg.split_inverse(merged, d1, d2)
    if back != bg.tensor_pair(a, b):
        return _witness([("a", a), ("b", b), ("roundtrip", back)])
    if bg.counit(merged) != bg.counit(a) * bg.counit(b):
        return _witness([("a", a), ("b", b), ("counit", bg.counit(merged))])


@law("bang", "tangent-lift-primitive-pair")
def _law_tangent_lift(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    p = rand_vec(rng, cfg.dim, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    e0, e1 = bg.tangent_lift(space, p, v)
    if bg.coproduct(e0) != bg.tensor_pair(e0, e0):
        return _witness([("p", p), ("coproduct(e0)", bg.coproduct(e0))])
    if bg.coproduct(e1) != bg.tensor_pair(e0, e1) + bg.tensor_pair(e1, e0):
        return _witness([("p", p), ("v", v), ("coproduct(e1)", bg.coproduct(e1))])
    if bg.counit(e0) != 1 or bg.counit(e1) != 0 or bg.dereliction(e1) != v:
        return _witness([("p", p), ("v", v)])


# ---------------------------------------------------------------------------
# residue-pairing duality laws


@law("poly", "coproduct-dual-to-multiplication")
def _law_pair_coproduct(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    f = rand_poly(rng, cfg.dim, cfg.span)
    g = rand_poly(rng, cfg.dim, cfg.span)
    lhs = pl.residue_pairing_tensor(bg.coproduct(x), (f, g))
    rhs = pl.residue_pairing(x, pl.poly_mul(f, g))
    if lhs != rhs:
        return _witness([("x", x), ("f", f.to_str()), ("g", g.to_str()),
                         ("lhs", lhs), ("rhs", rhs)])


@law("poly", "cocontraction-dual-to-doubling")
def _law_pair_cocontraction(rng, cfg):
    """Pairing a product of kets equals pairing blockwise against f(x + y)."""
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, 2, cfg.span)
    y = rand_bang(rng, space, 2, cfg.span)
    f = rand_poly(rng, cfg.dim, cfg.span)
    lhs = pl.residue_pairing(bg.cocontract(x, y), f)
    rhs = pl.residue_pairing(bg.split_merge(x, y), pl.shift_doubling(f))
    if lhs != rhs:
        return _witness([("x", x), ("y", y), ("f", f.to_str()),
                         ("lhs", lhs), ("rhs", rhs)])


@law("poly", "deriving-dual-to-directional")
def _law_pair_deriving(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    f = rand_poly(rng, cfg.dim, cfg.span, deg=3)
    lhs = pl.residue_pairing(_D(cfg)(x, v), f)
    rhs = pl.residue_pairing(x, f.directional(v))
    if lhs != rhs:
        return _witness([("x", x), ("v", v), ("f", f.to_str()),
                         ("lhs", lhs), ("rhs", rhs)])


@law("poly", "units-dual-to-evaluation")
def _law_pair_units(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    v = rand_vec(rng, cfg.dim, cfg.span)
    f = rand_poly(rng, cfg.dim, cfg.span)
    one = pl.Polynomial.const(cfg.dim, 1)
    origin = Vec.zero(cfg.dim)
    if pl.residue_pairing(x, one) != bg.counit(x):
        return _witness([("x", x)])
    if pl.residue_pairing(bg.coweaken(space), f) != f.eval_at(origin):
        return _witness([("f", f.to_str())])
    if pl.residue_pairing(bg.codereliction(space, v), f) != f.directional(v).eval_at(origin):
        return _witness([("v", v), ("f", f.to_str())])


@law("poly", "antipode-dual-to-reflection")
def _law_pair_antipode(rng, cfg):
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, cfg.max_tangents, cfg.span)
    f = rand_poly(rng, cfg.dim, cfg.span, deg=3)
    lhs = pl.residue_pairing(bg.antipode(x), f)
    rhs = pl.residue_pairing(x, f.reflect())
    if lhs != rhs:
        return _witness([("x", x), ("f", f.to_str()), ("lhs", lhs), ("rhs", rhs)])


# ---------------------------------------------------------------------------
# semantics laws


@lru_cache(maxsize=None)
def _den_comp(n, dim):
    return denote_proof(enc.comp_proof(n, dim))


@lru_cache(maxsize=None)
def _den_church_prom(n, dim):
    return denote_proof(Prom(enc.church_proof(n, dim)))


@lru_cache(maxsize=None)
def _den_bint(s, dim):
    return denote_proof(enc.bint_proof(s, dim))


@lru_cache(maxsize=None)
def _bint_value(s, dim):
    return _den_bint(s, dim).eval()


@lru_cache(maxsize=None)
def _den_int(n, dim):
    return denote_proof(enc.int_proof(n, dim))


def _bend(dim, point, *tangents):
    end = HomSpace(Base(dim), Base(dim))
    return BangVal(BangSpace(end), bg.BangElement.ket(
        entry_space(end), MatVal(point), tuple(MatVal(t) for t in tangents)))


def _probe_cfg(rng, cfg, max_tangents=2):
    return ProbeConfig(seed=rng.randint(0, 2**30), samples=2,
                       max_tangents=max_tangents, depth=cfg.probe_depth,
                       span=min(cfg.span, 3))


@law("semantics", "denotation-multilinearity", weight=5)
def _law_multilinearity(rng, cfg):
    """Proof denotations are linear in every sequent slot."""
    den = _den_comp(3, cfg.dim)
    slot = rng.randint(0, 2)
    mats = [MatVal(rand_matrix(rng, cfg.dim, cfg.span)) for _ in range(3)]
    extra = MatVal(rand_matrix(rng, cfg.dim, cfg.span))
    c = rand_fraction(rng, cfg.span)
    combo = list(mats)
    combo[slot] = add_values(mats[slot], scale_value(c, extra))
    alt = list(mats)
    alt[slot] = extra
    lhs = den.eval(*combo)
    rhs = add_values(den.eval(*mats), scale_value(c, den.eval(*alt)))
    if lhs != rhs:
        return _witness([("slot", slot), ("c", c), ("lhs", lhs), ("rhs", rhs)])


@law("semantics", "promotion-on-identity", weight=5)
def _law_promotion_identity(rng, cfg):
    """The promoted identity proof denotes the promotion map itself."""
    a = PropVar("A", cfg.dim)
    den = denote_proof(Prom(Axiom(Bang(a))))
    space = bg.BaseSpace(cfg.dim)
    x = rand_bang(rng, space, 2, cfg.span)
    got = den.eval(BangVal(BangSpace(Base(cfg.dim)), x))
    want = BangVal(BangSpace(BangSpace(Base(cfg.dim))), bg.promote(x))
    if got != want:
        return _witness([("x", x), ("got", got), ("want", want)])


@law("semantics", "promotion-group-like-totem", weight=10)
def _law_promotion_group_like(rng, cfg):
    """Promoted proofs send group-like kets to group-like kets at the image."""
    n = rng.randint(0, 3)
    den = _den_church_prom(n, cfg.dim)
    alpha = rand_matrix(rng, cfg.dim, cfg.span)
    end = HomSpace(Base(cfg.dim), Base(cfg.dim))
    got = den.eval(_bend(cfg.dim, alpha))
    want = BangVal(BangSpace(end), bg.BangElement.ket(
        entry_space(end), MatVal(enc.church_value_oracle(n, alpha))))
    if got != want:
        return _witness([("n", n), ("alpha", alpha), ("got", got), ("want", want)])


@law("semantics", "promotion-tangent-totem", weight=10)
def _law_promotion_tangent(rng, cfg):
    """Promoted proofs push one tangent forward along the derivative."""
    n = rng.randint(0, 3)
    den = _den_church_prom(n, cfg.dim)
    alpha = rand_matrix(rng, cfg.dim, cfg.span)
    nu = rand_matrix(rng, cfg.dim, cfg.span)
    end = HomSpace(Base(cfg.dim), Base(cfg.dim))
    got = den.eval(_bend(cfg.dim, alpha, nu))
    want = BangVal(BangSpace(end), bg.BangElement.from_terms(
        entry_space(end),
        [(1, MatVal(enc.church_value_oracle(n, alpha)),
          (MatVal(enc.church_derivative_oracle(n, alpha, nu)),))]))
    if got != want:
        return _witness([("n", n), ("alpha", alpha), ("nu", nu),
                         ("got", got), ("want", want)])


@law("semantics", "derivative-path-coherence", weight=10)
def _law_derivative_path(rng, cfg):
    """The syntactic derivative transform matches the semantic derivative."""
    n = rng.randint(0, 3)
    p = enc.church_proof(n, cfg.dim)
    dpi = denote_proof(derivative_transform(p))
    alpha = rand_matrix(rng, cfg.dim, cfg.span)
    nu = rand_matrix(rng, cfg.dim, cfg.span)
    got = dpi.eval(_bend(cfg.dim, alpha), MatVal(nu))
    want = derivative_eval(p, MatVal(alpha), MatVal(nu))
    oracle = MatVal(enc.church_derivative_oracle(n, alpha, nu))
    if not (got == want == oracle):
        return _witness([("n", n), ("alpha", alpha), ("nu", nu),
                         ("transform", got), ("direct", want), ("oracle", oracle)])


@law("semantics", "derivative-path-coherence-curried", weight=100)
def _law_derivative_path_bint(rng, cfg):
    """Transform-vs-direct derivative agreement on a curried conclusion."""
    s = "".join(rng.choice("01") for _ in range(rng.randint(0, 2)))
    p = enc.bint_proof(s, cfg.dim, arrows=1)
    dpi = denote_proof(derivative_transform(p))
    gamma = rand_matrix(rng, cfg.dim, cfg.span)
    nu = rand_matrix(rng, cfg.dim, cfg.span)
    got = dpi.eval(_bend(cfg.dim, gamma), MatVal(nu))
    want = derivative_eval(p, MatVal(gamma), MatVal(nu))
    end = HomSpace(Base(cfg.dim), Base(cfg.dim))
    target = HomSpace(BangSpace(end), end)
    if not extensional_equal(got, want, target, _probe_cfg(rng, cfg)):
        return _witness([("s", repr(s)), ("gamma", gamma), ("nu", nu)])


@law("semantics", "cut-against-promotion", weight=100)
def _law_cut_promotion(rng, cfg):
    """Cutting a promoted string numeral into the doubling proof concatenates."""
    s = "".join(rng.choice("01") for _ in range(rng.randint(0, 2)))
    p = Cut(0, Prom(enc.bint_proof(s, cfg.dim)), enc.repeat_proof(cfg.dim))
    got = denote_proof(p).eval()
    want = _bint_value(s + s, cfg.dim)
    end = HomSpace(Base(cfg.dim), Base(cfg.dim))
    target = HomSpace(BangSpace(end), HomSpace(BangSpace(end), end))
    if not extensional_equal(got, want, target, _probe_cfg(rng, cfg)):
        return _witness([("s", repr(s))])


# ---------------------------------------------------------------------------
# encoding laws


@law("encodings", "iteration-counts-compositions", weight=10)
def _law_church_oracle(rng, cfg):
    n = rng.randint(0, 4)
    p = enc.church_proof(n, cfg.dim)
    alpha = rand_matrix(rng, cfg.dim, cfg.span)
    nu = rand_matrix(rng, cfg.dim, cfg.span)
    if nl_eval(p, MatVal(alpha)) != MatVal(enc.church_value_oracle(n, alpha)):
        return _witness([("n", n), ("alpha", alpha)])
    got = derivative_eval(p, MatVal(alpha), MatVal(nu))
    if got != MatVal(enc.church_derivative_oracle(n, alpha, nu)):
        return _witness([("n", n), ("alpha", alpha), ("nu", nu), ("got", got)])


@law("encodings", "string-numeral-oracle", weight=20)
def _law_bint_oracle(rng, cfg):
    s = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
    stang = rng.randint(0, 2)
    rtang = rng.randint(0, 2 - stang)
    gamma = rand_matrix(rng, cfg.dim, cfg.span)
    delta = rand_matrix(rng, cfg.dim, cfg.span)
    alphas = tuple(rand_matrix(rng, cfg.dim, cfg.span) for _ in range(stang))
    betas = tuple(rand_matrix(rng, cfg.dim, cfg.span) for _ in range(rtang))
    v = _bint_value(s, cfg.dim)
    got = apply_hom(apply_hom(v, _bend(cfg.dim, gamma, *alphas)),
                    _bend(cfg.dim, delta, *betas))
    want = MatVal(enc.bint_oracle(s, gamma, delta, alphas, betas))
    if got != want:
        return _witness([("s", repr(s)), ("gamma", gamma), ("delta", delta),
                         ("alphas", alphas), ("betas", betas),
                         ("got", got), ("want", want)])


@law("encodings", "doubling-concatenates", weight=100)
def _law_repeat(rng, cfg):
    s = "".join(rng.choice("01") for _ in range(rng.randint(0, 2)))
    got = nl_eval(enc.repeat_proof(cfg.dim), _bint_value(s, cfg.dim))
    want = _bint_value(s + s, cfg.dim)
    end = HomSpace(Base(cfg.dim), Base(cfg.dim))
    target = HomSpace(BangSpace(end), HomSpace(BangSpace(end), end))
    if not extensional_equal(got, want, target, _probe_cfg(rng, cfg)):
        return _witness([("s", repr(s))])


@law("encodings", "multiplication-derivative", weight=50)
def _law_mult(rng, cfg):
    l, m, n = rng.randint(0, 2), rng.randint(0, 2), rng.randint(1, 2)
    dv = derivative_eval(enc.mult_by_numeral(n, cfg.dim),
                         _den_int(l, cfg.dim).eval(),
                         _den_int(m, cfg.dim).eval())
    x = rand_matrix(rng, cfg.dim, cfg.span)
    got = apply_hom(dv, _bend(cfg.dim, x))
    closed = MatVal(enc.mult_derivative_oracle(l, m, n, x))
    interp = MatVal(enc.mult_difference_quotient(l, m, n, x))
    if not (got == closed == interp):
        return _witness([("l", l), ("m", m), ("n", n), ("x", x),
                         ("got", got), ("closed", closed), ("interpolated", interp)])
