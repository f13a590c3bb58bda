"""S-expression surface syntax for formulas and proofs.

Formulas:   (pvar A 2) | (lolli F G) | (tensor F G) | (bang F)
Proofs:     (axiom F) | (lolli-r P) | (lolli-l i P Q) | (tensor-r P Q)
            | (tensor-l i P) | (der i P) | (ctr i P) | (weak i F P)
            | (prom P) | (cut i P Q) | (exch (j ...) P)
            | (coder i P) | (coctr i P) | (coweak i F P)

Comments run from ';' to end of line.  Parse errors carry line and column.
The printer indents one rule per line and round-trips through the parser.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as syn


class ParseError(ValueError):
    def __init__(self, message, line, col):
        self.line, self.col = line, col
        super().__init__("%d:%d: %s" % (line, col, message))


@dataclass(frozen=True)
class _Atom:
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class _List:
    items: tuple
    line: int
    col: int


def _tokenize(text):
    line, col = 1, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 0
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield (ch, line, col)
            col += 1
            i += 1
        else:
            start, start_col = i, col
            while i < len(text) and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield (text[start:i], line, start_col)
    yield (None, line, col)


def _read(text):
    tokens = list(_tokenize(text))
    pos = 0

    def rec():
        nonlocal pos
        tok, line, col = tokens[pos]
        if tok is None:
            raise ParseError("unexpected end of input", line, col)
        pos += 1
        if tok == "(":
            items = []
            while True:
                nxt, l2, c2 = tokens[pos]
                if nxt is None:
                    raise ParseError("unclosed '(' opened here", line, col)
                if nxt == ")":
                    pos += 1
                    return _List(tuple(items), line, col)
                items.append(rec())
        if tok == ")":
            raise ParseError("unmatched ')'", line, col)
        return _Atom(tok, line, col)

    form = rec()
    tok, line, col = tokens[pos]
    if tok is not None:
        raise ParseError("trailing input after the first expression", line, col)
    return form


def _expect_list(sx, what):
    if not isinstance(sx, _List) or not sx.items or not isinstance(sx.items[0], _Atom):
        line, col = (sx.line, sx.col)
        raise ParseError("expected a %s form" % what, line, col)
    return sx.items[0].text, sx.items[1:]


def _arity(sx, head, args, n):
    if len(args) != n:
        raise ParseError("%s takes %d arguments, got %d" % (head, n, len(args)),
                         sx.line, sx.col)


def _int_atom(sx, what):
    if not isinstance(sx, _Atom):
        raise ParseError("expected an integer %s" % what, sx.line, sx.col)
    try:
        return int(sx.text)
    except ValueError:
        raise ParseError("expected an integer %s, got %r" % (what, sx.text),
                         sx.line, sx.col) from None


def _formula(sx):
    head, args = _expect_list(sx, "formula")
    if head == "pvar":
        _arity(sx, head, args, 2)
        name = args[0]
        if not isinstance(name, _Atom):
            raise ParseError("pvar name must be an atom", sx.line, sx.col)
        dim = _int_atom(args[1], "dimension")
        try:
            return syn.PropVar(name.text, dim)
        except ValueError as exc:
            raise ParseError(str(exc), sx.line, sx.col) from None
    if head == "lolli":
        _arity(sx, head, args, 2)
        return syn.Lolli(_formula(args[0]), _formula(args[1]))
    if head == "tensor":
        _arity(sx, head, args, 2)
        return syn.Tensor(_formula(args[0]), _formula(args[1]))
    if head == "bang":
        _arity(sx, head, args, 1)
        return syn.Bang(_formula(args[0]))
    raise ParseError("unknown formula head %r" % head, sx.line, sx.col)


def _proof(sx):
    head, args = _expect_list(sx, "proof")
    if head == "axiom":
        _arity(sx, head, args, 1)
        return syn.Axiom(_formula(args[0]))
    if head == "lolli-r":
        _arity(sx, head, args, 1)
        return syn.LolliR(_proof(args[0]))
    if head == "lolli-l":
        _arity(sx, head, args, 3)
        return syn.LolliL(_int_atom(args[0], "index"), _proof(args[1]), _proof(args[2]))
    if head == "tensor-r":
        _arity(sx, head, args, 2)
        return syn.TensorR(_proof(args[0]), _proof(args[1]))
    if head == "tensor-l":
        _arity(sx, head, args, 2)
        return syn.TensorL(_int_atom(args[0], "index"), _proof(args[1]))
    if head == "der":
        _arity(sx, head, args, 2)
        return syn.Der(_int_atom(args[0], "index"), _proof(args[1]))
    if head == "ctr":
        _arity(sx, head, args, 2)
        return syn.Ctr(_int_atom(args[0], "index"), _proof(args[1]))
    if head == "weak":
        _arity(sx, head, args, 3)
        return syn.Weak(_int_atom(args[0], "index"), _formula(args[1]), _proof(args[2]))
    if head == "prom":
        _arity(sx, head, args, 1)
        return syn.Prom(_proof(args[0]))
    if head == "cut":
        _arity(sx, head, args, 3)
        return syn.Cut(_int_atom(args[0], "index"), _proof(args[1]), _proof(args[2]))
    if head == "exch":
        _arity(sx, head, args, 2)
        perm_sx = args[0]
        if not isinstance(perm_sx, _List):
            raise ParseError("exch needs a parenthesized permutation", sx.line, sx.col)
        perm = tuple(_int_atom(a, "permutation entry") for a in perm_sx.items)
        return syn.Exchange(perm, _proof(args[1]))
    if head == "coder":
        _arity(sx, head, args, 2)
        return syn.Coder(_int_atom(args[0], "index"), _proof(args[1]))
    if head == "coctr":
        _arity(sx, head, args, 2)
        return syn.Coctr(_int_atom(args[0], "index"), _proof(args[1]))
    if head == "coweak":
        _arity(sx, head, args, 3)
        return syn.Coweak(_int_atom(args[0], "index"), _formula(args[1]), _proof(args[2]))
    raise ParseError("unknown proof head %r" % head, sx.line, sx.col)


def parse_formula(text: str) -> syn.Formula:
    return _formula(_read(text))


def parse_proof(text: str) -> syn.Proof:
    return _proof(_read(text))


# -- printing ---------------------------------------------------------------


def print_formula(f: syn.Formula) -> str:
    if isinstance(f, syn.PropVar):
        return "(pvar %s %d)" % (f.name, f.dim)
    if isinstance(f, syn.Lolli):
        return "(lolli %s %s)" % (print_formula(f.left), print_formula(f.right))
    if isinstance(f, syn.Tensor):
        return "(tensor %s %s)" % (print_formula(f.left), print_formula(f.right))
    if isinstance(f, syn.Bang):
        return "(bang %s)" % print_formula(f.inner)
    raise TypeError("not a formula: %r" % (f,))


def _proof_lines(p: syn.Proof, depth):
    pad = "  " * depth
    if isinstance(p, syn.Axiom):
        return [pad + "(axiom %s)" % print_formula(p.formula)]

    def wrap(header, subs, trailer=")"):
        lines = [pad + header]
        for sub in subs:
            lines.extend(_proof_lines(sub, depth + 1))
        lines[-1] += trailer
        return lines

    if isinstance(p, syn.LolliR):
        return wrap("(lolli-r", [p.premise])
    if isinstance(p, syn.LolliL):
        return wrap("(lolli-l %d" % p.index, [p.arg, p.body])
    if isinstance(p, syn.TensorR):
        return wrap("(tensor-r", [p.left, p.right])
    if isinstance(p, syn.TensorL):
        return wrap("(tensor-l %d" % p.index, [p.premise])
    if isinstance(p, syn.Der):
        return wrap("(der %d" % p.index, [p.premise])
    if isinstance(p, syn.Ctr):
        return wrap("(ctr %d" % p.index, [p.premise])
    if isinstance(p, syn.Weak):
        return wrap("(weak %d %s" % (p.index, print_formula(p.formula)), [p.premise])
    if isinstance(p, syn.Prom):
        return wrap("(prom", [p.premise])
    if isinstance(p, syn.Cut):
        return wrap("(cut %d" % p.index, [p.left, p.right])
    if isinstance(p, syn.Exchange):
        return wrap("(exch (%s)" % " ".join(str(j) for j in p.perm), [p.premise])
    if isinstance(p, syn.Coder):
        return wrap("(coder %d" % p.index, [p.premise])
    if isinstance(p, syn.Coctr):
        return wrap("(coctr %d" % p.index, [p.premise])
    if isinstance(p, syn.Coweak):
        return wrap("(coweak %d %s" % (p.index, print_formula(p.formula)), [p.premise])
    raise TypeError("not a proof: %r" % (p,))


def print_proof(p: syn.Proof) -> str:
    return "\n".join(_proof_lines(p, 0)) + "\n"
