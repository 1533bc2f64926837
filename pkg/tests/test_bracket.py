import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from braidtrace import (BraidWord, StateSumTooLarge, TLDiagram, jones, normalized_f, raw_bracket,
                        reduced_bracket, smooth_letter, tl_fold_bracket)
from braidtrace.bracket import exact_invariants
from braidtrace.laurent import LOOP, LaurentInt


@st.composite
def braids(draw, max_n=4, max_len=7):
    n = draw(st.integers(1, max_n))
    if n == 1:
        return BraidWord(1, ())
    letters = draw(st.lists(st.integers(1, n - 1).flatmap(lambda g: st.sampled_from([g, -g])),
                            max_size=max_len))
    return BraidWord(n, tuple(letters))


def sympy_to_laurent(expr):
    return LaurentInt({int(k): c for k, c in oracle.laurent_terms(expr).items()})


def test_frozen_raw_brackets():
    # derived with the sympy/networkx oracle
    assert raw_bracket(BraidWord(2, (1,))) == LaurentInt({1: 1, 5: 1})
    assert raw_bracket(BraidWord(2, (1, 1))) == LOOP * LaurentInt({4: -1, -4: -1})
    assert raw_bracket(BraidWord(3, ())) == LOOP ** 3
    assert raw_bracket(BraidWord(2, (1, 1, 1))) == LaurentInt({-9: -1, -1: 1, 3: 1, 7: 1})


def test_frozen_reduced_trefoil():
    assert reduced_bracket(BraidWord(2, (1, 1, 1))).to_text() == "A^-7 - A^-3 - A^5"


@settings(max_examples=40, deadline=None)
@given(braids())
def test_state_sum_matches_oracle(b):
    assert raw_bracket(b) == sympy_to_laurent(oracle.bracket(b.n_strands, b.letters))


@settings(max_examples=60, deadline=None)
@given(braids(max_n=5, max_len=9))
def test_tl_fold_matches_state_sum(b):
    assert tl_fold_bracket(b) == raw_bracket(b)


def test_tl_fold_long_word():
    b = BraidWord(3, (1, -2) * 15)
    assert tl_fold_bracket(b) == tl_fold_bracket(BraidWord(3, (-2, 1) * 15))
    assert jones(BraidWord(3, (1, -2) * 2)).to_text() == "t^-2 - t^-1 + 1 - t + t^2"


def test_state_sum_cap():
    with pytest.raises(StateSumTooLarge):
        raw_bracket(BraidWord(2, (1,) * 30))
    assert raw_bracket(BraidWord(2, (1,) * 3), cap=3) == tl_fold_bracket(BraidWord(2, (1,) * 3))


def test_threaded_state_sum_matches_serial():
    b = BraidWord(4, (1, -2, 3, 2, -1, 3, -2, 1, 2, -3, 1, 2, 3, -1))
    assert raw_bracket(b, workers=3) == raw_bracket(b, workers=1)


def test_tl_diagrams():
    n = 4
    e1, e2, e3 = (TLDiagram.cupcap(n, i) for i in (1, 2, 3))
    ident = TLDiagram.identity(n)
    sq = e1 * e1
    assert sq.pairs == e1.pairs and sq.loops == 1
    assert (e1 * e2 * e1).pairs == e1.pairs and (e1 * e2 * e1).loops == 0
    assert (e1 * e3).pairs == (e3 * e1).pairs
    assert (ident * e2).pairs == e2.pairs
    assert ident.closure_loops() == n
    assert e1.closure_loops() == n - 1


def test_tl_diagram_rejects_nonplanar():
    with pytest.raises(ValueError):
        TLDiagram(2, (3, 2, 1, 0))  # top 0 to bottom 1 crosses top 1 to bottom 0
    with pytest.raises(ValueError):
        TLDiagram(2, (1, 0, 2, 3))


def test_smooth_letter():
    d, w = smooth_letter(1, "A", 2)
    assert d.pairs == TLDiagram.identity(2).pairs and w == LaurentInt({1: 1})
    d, w = smooth_letter(-1, "A", 2)
    assert w == LaurentInt({-1: 1})
    d, w = smooth_letter(1, "B", 2)
    assert d.pairs == TLDiagram.cupcap(2, 1).pairs and w == LaurentInt({-1: 1})


@settings(max_examples=30, deadline=None)
@given(braids(max_n=3, max_len=6))
def test_markov_stabilization(b):
    if b.n_strands == 1:
        return
    assert normalized_f(b.stabilize(1)) == normalized_f(b)
    assert normalized_f(b.stabilize(-1)) == normalized_f(b)


def test_conjugation_invariance():
    b = BraidWord(3, (1, 1, -2, 1))
    conj = BraidWord(3, (2,)) + b + BraidWord(3, (-2,))
    assert raw_bracket(conj) == raw_bracket(b)


def test_exact_invariants_json():
    doc = exact_invariants(BraidWord(2, (1, 1, 1))).to_json()
    assert doc["jones"]["text"] == "t + t^3 - t^4"
    assert doc["raw"]["terms"] == [[-9, -1], [-1, 1], [3, 1], [7, 1]]
    with pytest.raises(ValueError):
        exact_invariants(BraidWord(2, (1,)), "bogus")


def test_evaluation_consistency():
    b = BraidWord(3, (1, -2, 1, -2))
    A = np.exp(0.3j)
    assert abs(raw_bracket(b).eval_unit(A) - reduced_bracket(b).eval_unit(A) * LOOP.eval_unit(A)) < 1e-12
