"""Command-line front end for the exact coalgebra engine.

Subcommands:

* ``check``     -- type-check a proof file and print its sequent.
* ``eval``      -- evaluate a proof's denotation on JSON inputs; with
                   ``--derive``, evaluate the derivative at a point toward a
                   tangent instead.
* ``derive``    -- shorthand for ``eval --derive``.
* ``axioms``    -- run the randomized law suite and report per-law results.
* ``examples``  -- recompute the bundled worked examples and verify them.

Values are JSON (matrices as row arrays, bang elements as ket lists, plus the
named forms ``{"church": n}`` and ``{"bint": "S"}``); proofs are
s-expressions.  Exit codes: 0 success, 1 semantic or law failure, 2 usage,
parse, or I/O error.  Identical seeds and flags give identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import laws as lw
from .exact import Matrix, scalar_str
from .sexpr import ParseError, parse_proof
from .syntax import Bang, ProofError, check_proof
from .semantics import (
    Base, BangSpace, BangVal, BaseVec, HomSpace, MapVal, MatVal, ProbeConfig,
    SpaceMismatch, TensorVal, _probes, apply_hom, denote_formula, denote_proof,
    derivative_eval, extensional_equal, parse_value, space_label, value_to_json)
from . import encodings as enc


# ---------------------------------------------------------------------------
# named JSON values


def _is_end(space):
    return (isinstance(space, HomSpace) and isinstance(space.dom, Base)
            and space.dom == space.cod)


def _numeral_dim(space):
    """Dimension d if space is Hom(!(d -o d), d -o d), else None."""
    if (isinstance(space, HomSpace) and isinstance(space.dom, BangSpace)
            and _is_end(space.dom.inner) and space.cod == space.dom.inner):
        return space.dom.inner.dom.dim
    return None


def _string_numeral_dim(space):
    """Dimension d if space is Hom(!(d -o d), Hom(!(d -o d), d -o d))."""
    if (isinstance(space, HomSpace) and isinstance(space.dom, BangSpace)
            and _is_end(space.dom.inner) and isinstance(space.cod, HomSpace)
            and space.cod.dom == space.dom and space.cod.cod == space.dom.inner):
        return space.dom.inner.dom.dim
    return None


def named_value(space, data):
    """Hook for parse_value: named constants {"church": n} and {"bint": S}."""
    if set(data) == {"church"}:
        n = data["church"]
        if not isinstance(n, int) or n < 0:
            raise SpaceMismatch("church numerals take a non-negative integer")
        dim = _numeral_dim(space)
        if dim is None:
            raise SpaceMismatch(
                "a church numeral does not live in %s" % space_label(space))
        return denote_proof(enc.int_proof(n, dim)).eval()
    if set(data) == {"bint"}:
        bits = enc.parse_bits(data["bint"])
        dim = _string_numeral_dim(space)
        if dim is None:
            raise SpaceMismatch(
                "a binary integer does not live in %s" % space_label(space))
        return denote_proof(enc.bint_proof(bits, dim)).eval()
    return None


# ---------------------------------------------------------------------------
# value rendering


def _fmt_scalar(c):
    return scalar_str(Fraction(c))


def _fmt_matrix(m: Matrix):
    return "[%s]" % ", ".join(
        "[%s]" % ", ".join(scalar_str(x) for x in row) for row in m.rows)


def _probe_config(args):
    return ProbeConfig(seed=args.seed, samples=2,
                       max_tangents=args.max_tangents, depth=args.probe_depth)


def render_text(v, space, args, indent="") -> list:
    """Deterministic text lines for a semantic value."""
    if isinstance(v, BaseVec):
        return [indent + "(%s)" % ", ".join(scalar_str(x) for x in v.vec.coords)]
    if isinstance(v, MatVal):
        return [indent + _fmt_matrix(v.mat)]
    if isinstance(v, (BangVal, TensorVal)):
        return [indent + str(v.elt) if isinstance(v, BangVal) else indent + str(v)]
    if isinstance(v, MapVal):
        cfg = _probe_config(args)
        rng = random.Random(args.seed)
        lines = [indent + "map %s, sampled on probes:" % space_label(space)]
        for probe, used in _probes(space.dom, rng, cfg, cfg.depth, cfg.max_tangents):
            result = apply_hom(v, probe)
            arg = render_text(probe, space.dom, args, "")[0]
            sub = render_text(result, space.cod, args, indent + "    ")
            lines.append(indent + "  " + arg + " ->")
            lines.extend(sub)
        return lines
    return [indent + repr(v)]


def render_json(v, space, args):
    if isinstance(v, MapVal):
        cfg = _probe_config(args)
        rng = random.Random(args.seed)
        probes = []
        for probe, used in _probes(space.dom, rng, cfg, cfg.depth, cfg.max_tangents):
            result = apply_hom(v, probe)
            probes.append({"arg": value_to_json(probe),
                           "value": render_json(result, space.cod, args)})
        return {"space": space_label(space), "probes": probes}
    return {"space": space_label(space), "value": value_to_json(v)}


def _emit(v, space, args):
    if args.format == "json":
        print(json.dumps(render_json(v, space, args), indent=2))
    else:
        for line in render_text(v, space, args):
            print(line)


# ---------------------------------------------------------------------------
# subcommands


def _load_proof(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_proof(fh.read())


def cmd_check(args):
    proof = _load_proof(args.file)
    try:
        seq = check_proof(proof)
    except ProofError as e:
        if args.format == "json":
            print(json.dumps({"valid": False, "path": e.path, "error": e.message}))
        else:
            print("invalid at %s: %s" % (e.path, e.message))
        return 1
    if args.format == "json":
        print(json.dumps({"valid": True, "sequent": str(seq)}))
    else:
        print("valid: %s" % seq)
    return 0


def _parse_json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("%s is not valid JSON: %s" % (what, e), 0, 0)


def cmd_eval(args):
    proof = _load_proof(args.file)
    seq = check_proof(proof)
    inputs = _parse_json_arg(args.input, "--input") if args.input else []
    if not isinstance(inputs, list):
        raise SpaceMismatch("--input must be a JSON list, one value per slot")
    if args.derive:
        if args.point is None or args.tangent is None:
            raise SpaceMismatch("--derive needs --point and --tangent")
        if len(seq.context) != 1 or not isinstance(seq.context[0], Bang):
            raise SpaceMismatch(
                "--derive needs a proof of !A |- B, got %s" % seq)
        inner = denote_formula(seq.context[0].inner)
        point = parse_value(inner, _parse_json_arg(args.point, "--point"), named_value)
        tangent = parse_value(inner, _parse_json_arg(args.tangent, "--tangent"), named_value)
        result = derivative_eval(proof, point, tangent)
        space = denote_formula(seq.conclusion)
        extras = inputs
    else:
        if len(inputs) < len(seq.context):
            raise SpaceMismatch(
                "proof context needs %d values (%s), got %d"
                % (len(seq.context), ", ".join(map(str, seq.context)), len(inputs)))
        den = denote_proof(proof)
        ctx_vals = [parse_value(s, d, named_value)
                    for s, d in zip(den.source, inputs)]
        result = den.eval(*ctx_vals)
        space = den.target
        extras = inputs[len(seq.context):]
    for data in extras:
        if not isinstance(space, HomSpace):
            raise SpaceMismatch(
                "cannot apply a value of %s to further input" % space_label(space))
        arg = parse_value(space.dom, data, named_value)
        result = apply_hom(result, arg)
        space = space.cod
    _emit(result, space, args)
    return 0


def cmd_axioms(args):
    cfg = lw.RunConfig(seed=args.seed, dim=args.dim, trials=args.trials,
                       max_tangents=args.max_tangents,
                       probe_depth=args.probe_depth, mutate=args.mutate)
    results = lw.run_laws(cfg, groups=args.group or None)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        print(json.dumps({
            "laws": [{"group": r.group, "name": r.name, "passed": r.passed,
                      "trials": r.trials, "witness": r.witness} for r in results],
            "failed": len(failed)}, indent=2))
    else:
        for r in results:
            print(r.line())
        print("%d laws, %d failed" % (len(results), len(failed)))
    return 1 if failed else 0


def cmd_examples(args):
    dim = 2
    ok = True
    out = []

    def check(label, got, want):
        nonlocal ok
        good = got == want
        ok = ok and good
        out.append("  %s = %s   [%s]" % (label, got, "ok" if good else
                                         "MISMATCH, expected %s" % want))

    shear = Matrix(((1, 1), (0, 1)))
    nilp = Matrix(((0, 0), (1, 0)))
    out.append("iterating a map twice squares it:")
    from .semantics import nl_eval
    got = nl_eval(enc.church_proof(2, dim), MatVal(shear))
    check("church-2 at [[1, 1], [0, 1]]", _fmt_matrix(got.mat),
          _fmt_matrix(shear @ shear))

    out.append("derivative of iteration inserts the tangent in every slot:")
    got = derivative_eval(enc.church_proof(3, dim), MatVal(shear), MatVal(nilp))
    want = nilp @ shear @ shear + shear @ nilp @ shear + shear @ shear @ nilp
    check("church-3 derivative", _fmt_matrix(got.mat), _fmt_matrix(want))

    out.append("binary integer 001 composes one map per bit, leftmost first:")
    gamma = Matrix(((1, 1), (0, 1)))
    delta = Matrix(((2, 0), (0, 1)))
    alpha = Matrix(((0, 1), (1, 0)))
    alpha2 = Matrix(((1, 0), (1, 1)))
    beta = Matrix(((1, 0), (1, 1)))

    def bval(point, *tangents):
        from . import bang as bg
        from .semantics import entry_space
        end = HomSpace(Base(dim), Base(dim))
        return BangVal(BangSpace(end), bg.BangElement.ket(
            entry_space(end), MatVal(point), tuple(MatVal(t) for t in tangents)))

    v001 = denote_proof(enc.bint_proof("001", dim)).eval()

    def run001(a, b):
        return apply_hom(apply_hom(v001, a), b)

    check("001 at (|>_g, |>_d)", _fmt_matrix(run001(bval(gamma), bval(delta)).mat),
          _fmt_matrix(delta @ gamma @ gamma))
    check("001 at (|a>_g, |>_d)", _fmt_matrix(run001(bval(gamma, alpha), bval(delta)).mat),
          _fmt_matrix(delta @ alpha @ gamma + delta @ gamma @ alpha))
    check("001 at (|a1,a2>_g, |>_d)",
          _fmt_matrix(run001(bval(gamma, alpha, alpha2), bval(delta)).mat),
          _fmt_matrix(delta @ alpha @ alpha2 + delta @ alpha2 @ alpha))
    check("001 at (|>_g, |b>_d)", _fmt_matrix(run001(bval(gamma), bval(delta, beta)).mat),
          _fmt_matrix(beta @ gamma @ gamma))
    check("001 at (|a>_g, |b>_d)",
          _fmt_matrix(run001(bval(gamma, alpha), bval(delta, beta)).mat),
          _fmt_matrix(beta @ alpha @ gamma + beta @ gamma @ alpha))
    check("001 with three tangents on the first slot",
          _fmt_matrix(run001(bval(gamma, alpha, alpha2, alpha), bval(delta)).mat),
          _fmt_matrix(Matrix.zero(dim, dim)))

    out.append("doubling a promoted string concatenates it with itself:")
    end = HomSpace(Base(dim), Base(dim))
    bint_space = HomSpace(BangSpace(end), HomSpace(BangSpace(end), end))
    pcfg = ProbeConfig(seed=args.seed, samples=2, max_tangents=2,
                       depth=args.probe_depth)
    got = nl_eval(enc.repeat_proof(dim), denote_proof(enc.bint_proof("01", dim)).eval())
    same = extensional_equal(got, denote_proof(enc.bint_proof("0101", dim)).eval(),
                             bint_space, pcfg)
    check("repeat at |>_[01] agrees with [0101] on all probes", same, True)
    from .semantics import add_values
    got = derivative_eval(enc.repeat_proof(dim),
                          denote_proof(enc.bint_proof("0", dim)).eval(),
                          denote_proof(enc.bint_proof("1", dim)).eval())
    want = add_values(denote_proof(enc.bint_proof("01", dim)).eval(),
                      denote_proof(enc.bint_proof("10", dim)).eval())
    same = extensional_equal(got, want, bint_space, pcfg)
    check("repeat derivative at [0] toward [1] agrees with [01] + [10]", same, True)

    out.append("derivative of multiplication by a numeral has a closed form:")
    x = Matrix(((1, 2), (3, 4)))
    l, m, n = 1, 1, 2
    dv = derivative_eval(enc.mult_by_numeral(n, dim),
                         denote_proof(enc.int_proof(l, dim)).eval(),
                         denote_proof(enc.int_proof(m, dim)).eval())
    got = apply_hom(dv, bval(x))
    check("mult(-, 2) derivative at 1 toward 1, on |>_x",
          _fmt_matrix(got.mat), _fmt_matrix((x @ x).scale(2)))
    check("difference-quotient interpolation gives the same matrix",
          _fmt_matrix(enc.mult_difference_quotient(l, m, n, x)),
          _fmt_matrix((x @ x).scale(2)))

    for line in out:
        print(line)
    print("all examples verified" if ok else "EXAMPLE MISMATCH")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized trials and probes")
    common.add_argument("--dim", type=int, default=2,
                        help="dimension of the base space for law runs")
    common.add_argument("--trials", type=int, default=200,
                        help="trial budget per law")
    common.add_argument("--max-tangents", type=int, default=3,
                        help="largest tangent multiset drawn by generators")
    common.add_argument("--probe-depth", type=int, default=4,
                        help="recursion depth for extensional probing")
    common.add_argument("--format", choices=("text", "json"), default="text")

    ap = argparse.ArgumentParser(
        prog="sweedler",
        description="exact engine for a vector-space coalgebra semantics "
                    "of linear-logic proofs with derivatives")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="type-check a proof file")
    p.add_argument("file", help="s-expression proof file")
    p.set_defaults(fn=cmd_check)

    for name, derive in (("eval", False), ("derive", True)):
        p = sub.add_parser(name, parents=[common],
                           help="evaluate a proof's denotation"
                           if not derive else "evaluate a proof's derivative")
        p.add_argument("file", help="s-expression proof file")
        p.add_argument("--input", help="JSON list of context values; "
                       "extra entries are applied to the result")
        if derive:
            p.set_defaults(derive=True)
        else:
            p.add_argument("--derive", action="store_true",
                           help="evaluate the derivative of a proof of !A |- B")
        p.add_argument("--point", help="JSON value of A: where to differentiate")
        p.add_argument("--tangent", help="JSON value of A: direction")
        p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("axioms", parents=[common],
                       help="run the randomized structural-law suite")
    p.add_argument("--group", action="append", choices=lw.law_groups(),
                   help="restrict to a law group (repeatable)")
    p.add_argument("--mutate", action="store_true",
                   help="corrupt the deriving map to show the suite catches it")
    p.set_defaults(fn=cmd_axioms)

    p = sub.add_parser("examples", parents=[common],
                       help="recompute and verify the bundled worked examples")
    p.set_defaults(fn=cmd_examples)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if os.environ.get("SWEEDLER_SEED"):
        try:
            args.seed = int(os.environ["SWEEDLER_SEED"])
        except ValueError:
            print("SWEEDLER_SEED must be an integer", file=sys.stderr)
            return 2
    try:
        return args.fn(args)
    except (OSError, ParseError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ProofError as e:
        print("invalid proof at %s: %s" % (e.path, e.message), file=sys.stderr)
        return 1
    except (SpaceMismatch, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
