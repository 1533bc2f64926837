import math

import numpy as np
import pytest

from braidtrace import (BraidError, BraidWord, KLParams, ParameterError, bracket_kl3, is_unitary,
                        jones_kl3, normalized_f, reduced_bracket, rho3, u_matrices)
from braidtrace.kl3 import generator_matrices


def test_parameters():
    p = KLParams(math.pi / 2)
    assert p.delta == pytest.approx(2.0)
    assert abs(p.A - 1j) < 1e-15
    assert p.unitary and not p.singular
    assert p.tau == pytest.approx(0.25)


def test_singular_angle_refused():
    p = KLParams(math.pi / 4)
    assert p.singular
    with pytest.raises(ParameterError):
        u_matrices(p)


def test_nonunitary_requires_opt_in():
    p = KLParams(0.7)
    assert not p.unitary
    with pytest.raises(ParameterError):
        u_matrices(p)
    U1, U2 = u_matrices(p, allow_nonunitary=True)
    assert U2.dtype == complex
    assert abs(np.trace(U1 @ U2) - 1) < 1e-12


def test_boundary_angle_is_unitary():
    assert is_unitary(math.pi / 6)
    assert is_unitary(math.pi / 3)
    assert not is_unitary(math.pi / 4)


def test_generators_unitary_and_braided():
    p = KLParams(2.0)
    g = generator_matrices(p)
    eye = np.eye(2)
    for k in (1, 2):
        assert np.allclose(g[k] @ g[-k], eye)
        assert np.allclose(g[k].conj().T @ g[k], eye)
    assert np.allclose(g[1] @ g[2] @ g[1], g[2] @ g[1] @ g[2])


def test_rho3_strand_limit():
    with pytest.raises(BraidError):
        rho3(BraidWord(4, (3,)), KLParams(2.0))


@pytest.mark.parametrize("letters", [(1, -2, 1, -2), (1, 1, 1), (), (2, 2, -1, 2, 1)])
@pytest.mark.parametrize("theta", [0.2, 1.4, math.pi / 2, 3.5, 5.9])
def test_matches_exact_bracket(letters, theta):
    b = BraidWord(3, letters)
    p = KLParams(theta)
    assert abs(bracket_kl3(b, p) - reduced_bracket(b).eval_unit(p.A)) < 1e-10
    assert abs(jones_kl3(b, p) - normalized_f(b).eval_unit(p.A)) < 1e-10


def test_two_strand_words_use_three_strand_closure():
    b2 = BraidWord(2, (1, 1, 1))
    p = KLParams(1.3)
    assert abs(bracket_kl3(b2, p) - reduced_bracket(b2.embed(3)).eval_unit(p.A)) < 1e-10


def test_trace_formula_examples():
    p = KLParams(1.2)
    A, d = p.A, p.delta
    assert abs(bracket_kl3(BraidWord(3, ()), p) - d ** 2) < 1e-12
    assert abs(np.trace(rho3(BraidWord(3, (1, 2)), p)) - (2 * A ** 2 + 2 * d + A ** -2)) < 1e-12
    assert abs(bracket_kl3(BraidWord(3, (1, 2)), p) - A ** 6) < 1e-12
    assert abs(bracket_kl3(BraidWord(3, (1,)), p) + A ** 3 * d) < 1e-12
