import cmath
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from braidtrace.laurent import (CURL, LOOP, ONE, ZERO, LaurentInt, QuarterLaurent, monomial_scale,
                                substitute_quarter_power)

polys = st.dictionaries(st.integers(-12, 12), st.integers(-9, 9), max_size=6).map(LaurentInt)
unit = st.floats(0, 2 * cmath.pi, allow_nan=False).map(lambda th: cmath.exp(1j * th))


def to_sympy(p: LaurentInt):
    a = sp.Symbol("A")
    return sum(c * a**k for k, c in p.terms.items())


def test_zero_coefficients_dropped():
    p = LaurentInt({1: 0, 2: 3, -1: 0})
    assert p.terms == {2: 3}
    assert LaurentInt({0: 0}) == ZERO
    assert not ZERO


def test_text_rendering():
    assert LaurentInt({-7: 1, -3: -1, 5: -1}).to_text() == "A^-7 - A^-3 - A^5"
    assert ONE.to_text() == "1"
    assert ZERO.to_text() == "0"
    assert LOOP.to_text() == "-A^-2 - A^2"


def test_json_roundtrip():
    p = LaurentInt({-3: 2, 0: -1, 4: 7})
    assert p.to_json() == [[-3, 2], [0, -1], [4, 7]]
    assert LaurentInt.from_json(p.to_json()) == p


def test_negative_power_of_monomial():
    assert CURL ** -2 == LaurentInt({-6: 1})
    with pytest.raises(ArithmeticError):
        LOOP ** -1


def test_exact_div():
    assert (LOOP * LOOP).exact_div(LOOP) == LOOP
    with pytest.raises(ArithmeticError):
        (LOOP + ONE).exact_div(LOOP)


def test_eval_unit_rejects_off_circle():
    with pytest.raises(ValueError):
        LOOP.eval_unit(1.5)


def test_quarter_substitution():
    f = LaurentInt({-4: 1, -12: 1, -16: -1})
    v = substitute_quarter_power(f)
    assert v.to_text() == "t + t^3 - t^4"
    assert v.coeff(3) == 1
    hopf = substitute_quarter_power(LaurentInt({-2: -1, -10: -1}))
    assert hopf.to_text() == "-t^(1/2) - t^(5/2)"
    assert hopf.to_json() == [["1/2", -1], ["5/2", -1]]


def test_quarter_eval_matches_laurent():
    f = LaurentInt({-4: 1, 3: -2, 9: 5})
    A = cmath.exp(0.37j)
    assert abs(substitute_quarter_power(f).eval(A) - f.eval_unit(A)) < 1e-12


def test_monomial_scale():
    assert monomial_scale(LOOP, -1, 3) == LaurentInt({5: 1, 1: 1})


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO


@given(polys, polys)
@settings(max_examples=60)
def test_matches_sympy(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(polys, polys, unit)
def test_evaluation_is_homomorphism(p, q, A):
    assert abs((p * q).eval_unit(A) - p.eval_unit(A) * q.eval_unit(A)) < 1e-6 * (1 + abs(p.eval_unit(A) * q.eval_unit(A)))
    assert abs((p + q).eval_unit(A) - p.eval_unit(A) - q.eval_unit(A)) < 1e-9


@given(polys)
def test_division_inverts_multiplication(p):
    assert (p * LOOP).exact_div(LOOP) == p


@given(polys)
def test_hash_consistent(p):
    assert hash(p) == hash(LaurentInt(dict(p.terms)))


def test_quarter_terms_are_fractions():
    v = substitute_quarter_power(LaurentInt({-2: 1}))
    assert isinstance(v, QuarterLaurent)
    assert v.terms == ((Fraction(1, 2), 1),)
