import pytest

from sweedler.syntax import (
    Axiom, Bang, Coctr, Coder, Coweak, Ctr, Cut, Der, Exchange, Lolli, LolliL,
    LolliR, Prom, PropVar, ProofError, Sequent, Tensor, TensorL, TensorR, Weak,
    check_proof, derivative_transform)
from sweedler.sexpr import ParseError, parse_formula, parse_proof, print_formula, print_proof

A = PropVar("A", 2)
B = PropVar("B", 3)
C = PropVar("C", 1)


def test_axiom():
    assert check_proof(Axiom(A)) == Sequent((A,), A)


def test_lolli_r_moves_last_formula():
    p = LolliL(0, Axiom(A), Axiom(B))          # A, A -o B |- B
    assert check_proof(p) == Sequent((A, Lolli(A, B)), B)
    q = LolliR(p)                              # A |- (A -o B) -o B
    assert check_proof(q) == Sequent((A,), Lolli(Lolli(A, B), B))
    r = LolliR(q)
    assert check_proof(r) == Sequent((), Lolli(A, Lolli(Lolli(A, B), B)))
    with pytest.raises(ProofError):
        check_proof(LolliR(r))                 # nothing left to abstract


def test_lolli_l_places_left_context_first():
    body = Weak(0, Bang(C), Axiom(B))          # !C, B |- B
    p = LolliL(1, Axiom(A), body)              # A, !C, A -o B |- B
    assert check_proof(p) == Sequent((A, Bang(C), Lolli(A, B)), B)


def test_tensor_rules():
    p = TensorR(Axiom(A), Axiom(B))
    assert check_proof(p) == Sequent((A, B), Tensor(A, B))
    q = TensorL(0, p)
    assert check_proof(q) == Sequent((Tensor(A, B),), Tensor(A, B))
    with pytest.raises(ProofError):
        check_proof(TensorL(1, p))


def test_der_weak_ctr():
    d = Der(0, Axiom(A))                       # !A |- A
    assert check_proof(d) == Sequent((Bang(A),), A)
    w = Weak(0, Bang(A), d)                    # !A, !A |- A
    assert check_proof(w) == Sequent((Bang(A), Bang(A)), A)
    c = Ctr(0, w)                              # !A |- A
    assert check_proof(c) == Sequent((Bang(A),), A)


def test_ctr_requires_adjacent_equal_bangs():
    mixed = Weak(0, Bang(B), Der(0, Axiom(A)))  # !B, !A |- A
    with pytest.raises(ProofError, match="equal !-formulas"):
        check_proof(Ctr(0, mixed))
    with pytest.raises(ProofError, match="weak inserts"):
        check_proof(Weak(0, A, Axiom(A)))


def test_prom_needs_banged_context():
    d = Der(0, Axiom(A))
    assert check_proof(Prom(d)) == Sequent((Bang(A),), Bang(A))
    err = pytest.raises(ProofError, match="all-!").value if False else None
    with pytest.raises(ProofError, match="all-!"):
        check_proof(Prom(Axiom(A)))


def test_cut():
    d = Der(0, Axiom(A))                       # !A |- A
    p = Cut(0, d, Axiom(A))                    # !A |- A
    assert check_proof(p) == Sequent((Bang(A),), A)
    with pytest.raises(ProofError, match="mismatch"):
        check_proof(Cut(0, d, Axiom(B)))


def test_exchange_convention_frozen():
    body = Weak(0, Bang(C), Axiom(B))
    p = LolliL(1, Axiom(A), body)              # [A, !C, A -o B] |- B
    e = Exchange((2, 0, 1), p)
    assert check_proof(e) == Sequent((Lolli(A, B), A, Bang(C)), B)
    with pytest.raises(ProofError, match="permutation"):
        check_proof(Exchange((0, 0, 1), p))


def test_costructural_rules():
    d = Der(0, Axiom(A))                       # !A |- A
    assert check_proof(Coctr(0, d)) == Sequent((Bang(A), Bang(A)), A)
    assert check_proof(Coder(0, d)) == Sequent((A,), A)
    assert check_proof(Coweak(0, Bang(A), d)) == Sequent((), A)
    with pytest.raises(ProofError, match="annotation"):
        check_proof(Coweak(0, Bang(B), d))
    with pytest.raises(ProofError, match="!-formula"):
        check_proof(Coder(0, Axiom(A)))


def test_error_paths_point_inside_the_tree():
    bad = LolliR(Ctr(5, Der(0, Axiom(A))))
    with pytest.raises(ProofError) as exc:
        check_proof(bad)
    assert exc.value.path == (0,)
    bad2 = Cut(0, Axiom(A), Ctr(3, Axiom(B)))
    with pytest.raises(ProofError) as exc2:
        check_proof(bad2)
    assert exc2.value.path == (1,)


def test_derivative_transform_shape():
    d = Der(0, Axiom(A))                       # !A |- A
    t = derivative_transform(d)
    assert check_proof(t) == Sequent((Bang(A), A), A)
    with pytest.raises(ProofError, match="!A"):
        derivative_transform(Axiom(A))
    with pytest.raises(ProofError):
        derivative_transform(Weak(0, Bang(A), LolliL(0, Axiom(A), Axiom(A))))


# -- s-expressions ----------------------------------------------------------


def test_formula_round_trip():
    f = Lolli(Bang(Tensor(A, B)), PropVar("Z", 1))
    assert parse_formula(print_formula(f)) == f
    assert parse_formula("(lolli (pvar A 2) (pvar A 2))") == Lolli(A, A)


def test_proof_round_trip_every_node():
    d = Der(0, Axiom(A))
    p = Coweak(0, Bang(A),
               Coder(1,
                     Coctr(0,
                           Cut(0, Prom(d),
                               Exchange((0,),
                                        Prom(Ctr(0, Weak(0, Bang(A), d))))))))
    q = LolliR(LolliL(0, Axiom(A), TensorL(0, TensorR(Axiom(A), Axiom(B)))))
    for proof in (p, q):
        text = print_proof(proof)
        assert parse_proof(text) == proof
    check_proof(p)


def test_parse_comments_and_whitespace():
    text = """
    ; the identity on !A via dereliction
    (der 0  ; slot zero
         (axiom (pvar A 2)))
    """
    assert parse_proof(text) == Der(0, Axiom(A))


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as exc:
        parse_proof("(axiom (pvar A 2)")
    assert exc.value.line == 1
    with pytest.raises(ParseError, match="unknown proof head"):
        parse_proof("(bogus 1)")
    with pytest.raises(ParseError, match="integer"):
        parse_proof("(der x (axiom (pvar A 2)))")
    with pytest.raises(ParseError, match="trailing"):
        parse_proof("(axiom (pvar A 2)) junk")
    with pytest.raises(ParseError, match="dimension|integer"):
        parse_formula("(pvar A two)")
    with pytest.raises(ParseError):
        parse_formula("(pvar A 9)")  # dimension guard surfaces as a parse error
    with pytest.raises(ParseError, match="takes"):
        parse_proof("(ctr 0)")


def test_print_proof_is_indented():
    text = print_proof(Ctr(0, Weak(0, Bang(A), Der(0, Axiom(A)))))
    lines = text.strip("\n").split("\n")
    assert lines[0].startswith("(ctr 0")
    assert lines[1].startswith("  (weak")
    assert lines[-1].endswith(")))")
