"""Interpretations, carriers and the compositional semantics."""

from fractions import Fraction
from random import Random

import pytest

from tapecalc.circuit import (CCopier, CGen, CIdOne, CIdSort, CSeq, CTensor,
                              MonSignature)
from tapecalc.errors import DimensionError, ModelError
from tapecalc.interp import (Interpretation, carrier_of, eval_circuit,
                             eval_tape, prod_index)
from tapecalc.kleisli import Matrix, model_for
from tapecalc.objects import ONE, ZERO, mono, poly, poly_of_mono
from tapecalc.suites import Freshener, standard_interpretation
from tapecalc.tape import TCirc, TCodiag, TIdZero, TOpInj, TSeq, TSum, tseq, tsum
from tapecalc.theory import builtin_theory, choice

H = Fraction(1, 2)

SIG = MonSignature(("A", "B"), {
    "AND": (mono("A", "A"), mono("A")),
    "NOT": (mono("A"), mono("A")),
    "F1": (ONE, mono("A")),
})

INTERP = Interpretation(
    SIG, {"A": 2, "B": 3},
    {"AND": Matrix.from_rows([[1, 1, 1, 0], [0, 0, 0, 1]]),
     "NOT": Matrix.from_rows([[0, 1], [1, 0]]),
     "F1": Matrix.from_rows([[0], [1]])},
    model_for(builtin_theory("PCA", [H, Fraction(1, 3)])))


def test_carrier_sizes():
    assert carrier_of(poly(("A",), ("B",)), INTERP) == 5
    assert carrier_of(mono("A", "B"), INTERP) == 6
    assert carrier_of(ZERO, INTERP) == 0
    assert carrier_of(poly_of_mono(ONE), INTERP) == 1


def test_prod_index_left_major():
    p, q = poly_of_mono(mono("A")), poly_of_mono(mono("B"))
    idx = prod_index(p, q, INTERP)
    for x in range(2):
        for y in range(3):
            assert idx(x, y) == 3 * x + y


def test_prod_index_blocks():
    p = poly(("A",), ("B",))
    q = poly((), ("A",))
    idx = prod_index(p, q, INTERP)
    # blocks of p (x) q in order: A1, AA, B1, BA with sizes 2, 4, 3, 6
    assert idx(0, 0) == 0            # (A:0, unit)
    assert idx(1, 0) == 1
    assert idx(0, 1) == 2            # (A:0, A:0) in the AA block
    assert idx(2, 0) == 6            # (B:0, unit) in the B1 block
    assert idx(4, 2) == 9 + 2 * 2 + 1  # (B:2, A:1) in the BA block


def test_eval_and_gate():
    m = eval_circuit(CGen("AND"), INTERP)
    assert m.to_rows() == [[1, 1, 1, 0], [0, 0, 0, 1]]


def test_eval_id_one():
    assert eval_circuit(CIdOne(), INTERP) == Matrix.identity(1)


def test_eval_copier_then_not():
    c = CSeq(CCopier("A"), CTensor(CGen("NOT"), CIdSort("A")))
    m = eval_circuit(c, INTERP)
    # x maps to (not x, x): column x has a single 1 at row (1-x)*2 + x
    assert m.to_rows() == [[0, 0], [0, 1], [1, 0], [0, 0]]


def test_eval_flip():
    flip = tseq(TOpInj(choice(Fraction(1, 3)), ONE),
                tsum(TCirc(CGen("F1")),
                     TCirc(CSeq(CGen("F1"), CGen("NOT")))),
                TCodiag(mono("A")))
    m = eval_tape(flip, INTERP)
    assert m.to_rows() == [[Fraction(2, 3)], [Fraction(1, 3)]]


def test_eval_id_zero():
    m = eval_tape(TIdZero(), INTERP)
    assert (m.dom, m.cod) == (0, 0)


def test_functoriality_randomized():
    interp = standard_interpretation()
    fresh = Freshener(interp, Random(21))
    p, q, r = poly(("A",)), poly(("B",), ()), poly(("A", "B"))
    t1, t2 = fresh.tape(p, q), fresh.tape(q, r)
    extended = fresh.interp()
    assert eval_tape(TSeq(t1, t2), extended) == \
        eval_tape(t1, extended).then(eval_tape(t2, extended))
    assert eval_tape(TSum(t1, t2), extended) == \
        eval_tape(t1, extended).oplus(eval_tape(t2, extended))


def test_tensor_tape_is_transported_kronecker():
    from tapecalc.suites import rand_poly
    from tapecalc.tape import tensor_tape
    interp = standard_interpretation()
    for seed in range(6):
        rng = Random(100 + seed)
        fresh = Freshener(interp, rng)
        p, q = (rand_poly(rng, ("A", "B"), 2, 2) for _ in range(2))
        r, s = (rand_poly(rng, ("A", "B"), 2, 2) for _ in range(2))
        t1, t2 = fresh.tape(p, q), fresh.tape(r, s)
        extended = fresh.interp()
        m1 = eval_tape(t1, extended)
        m2 = eval_tape(t2, extended)
        mt = eval_tape(tensor_tape(t1, t2, fresh.sig), extended)
        idx_dom = prod_index(p, r, extended)
        idx_cod = prod_index(q, s, extended)
        for x1 in range(m1.dom):
            for x2 in range(m2.dom):
                for y1 in range(m1.cod):
                    for y2 in range(m2.cod):
                        assert mt.entry(idx_cod(y1, y2), idx_dom(x1, x2)) == \
                            m1.entry(y1, x1) * m2.entry(y2, x2)


def test_validation_catches_bad_dims():
    bad = Interpretation(
        SIG, {"A": 2, "B": 3},
        {"AND": Matrix.identity(2), "NOT": Matrix.identity(2),
         "F1": Matrix.from_rows([[0], [1]])},
        model_for(builtin_theory("PCA", [H])))
    with pytest.raises(DimensionError):
        bad.validate()


def test_validation_catches_missing_matrix():
    bad = Interpretation(SIG, {"A": 2, "B": 3}, {},
                         model_for(builtin_theory("PCA", [H])))
    with pytest.raises(ModelError):
        bad.validate()
