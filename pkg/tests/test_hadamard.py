import math

import numpy as np
import pytest

from braidtrace import (AJLParams, BraidWord, KLParams, ShotPlan, enumerate_basis, estimate_jones,
                        estimate_weighted_trace, hadamard_shot, normalized_f, rho_ajl, weighted_trace)
from braidtrace.hadamard import CHUNK, estimate_trace

TREFOIL = BraidWord(2, (1, 1, 1))


def test_plan_validation():
    with pytest.raises(ValueError):
        ShotPlan(0)
    with pytest.raises(ValueError):
        ShotPlan(10, seed=-1)
    with pytest.raises(ValueError):
        ShotPlan(10, parts="magnitude")
    assert ShotPlan(11).split() == {"real": 5, "imaginary": 6}
    assert ShotPlan(11, parts="real").split() == {"real": 11}


def test_single_shot_probabilities():
    U = np.diag([1.0, -1.0]).astype(complex)
    g = np.random.default_rng(0)
    assert all(hadamard_shot(U, 0, 1, g) == 0 for _ in range(50))
    assert all(hadamard_shot(U, 1, 1, g) == 1 for _ in range(50))
    with pytest.raises(ValueError):
        hadamard_shot(2 * U, 0, 1, g)
    with pytest.raises(ValueError):
        hadamard_shot(U, 0, 0.5, g)


def test_imaginary_part():
    U = np.diag([1j, 1j])
    est = estimate_trace(U, np.ones(2), ShotPlan(4000, 1, "imaginary"))
    assert est.estimate.real == 0.0
    assert est.estimate.imag == pytest.approx(2.0)
    assert est.stderr_im == 0.0


def test_reproducible_and_seed_sensitive():
    basis = enumerate_basis(2, 4)
    p = AJLParams(0.4, 4)
    a = estimate_weighted_trace(TREFOIL, basis, p, ShotPlan(3 * CHUNK + 17, 5))
    b = estimate_weighted_trace(TREFOIL, basis, p, ShotPlan(3 * CHUNK + 17, 5), workers=3)
    c = estimate_weighted_trace(TREFOIL, basis, p, ShotPlan(3 * CHUNK + 17, 6))
    assert a.estimate == b.estimate
    assert a.estimate != c.estimate
    assert a.shots_used == 3 * CHUNK + 17


def test_estimate_close_to_exact():
    basis = enumerate_basis(3, 5)
    p = AJLParams(0.3, 5)
    b = BraidWord(3, (1, -2, 1, -2))
    exact = weighted_trace(rho_ajl(b, basis, p), basis, p)
    est = estimate_weighted_trace(b, basis, p, ShotPlan(200_000, 3))
    assert abs(est.estimate - exact) <= 5 * est.stderr
    assert set(est.per_sector) == {2, 4}


def test_per_sector_sums_to_diagonal_mean():
    basis = enumerate_basis(3, 5)
    p = AJLParams(0.3, 5)
    b = BraidWord(3, (1, 2))
    est = estimate_weighted_trace(b, basis, p, ShotPlan(50_000, 9))
    assert abs(sum(est.per_sector.values()) - est.estimate) < 1e-9


@pytest.mark.parametrize("params", [AJLParams(0.4, 4), KLParams(2.0)])
def test_jones_estimate(params):
    est = estimate_jones(TREFOIL, params, ShotPlan(400_000, 11))
    # the 2x2 model closes on three strands
    b = TREFOIL if isinstance(params, AJLParams) else TREFOIL.embed(3)
    exact = normalized_f(b).eval_unit(params.A)
    assert abs(est.value - exact) <= est.confidence_radius
    assert est.confidence_radius == pytest.approx(4 * est.stderr)
    assert est.A == params.A


def test_jones_estimate_type_check():
    with pytest.raises(TypeError):
        estimate_jones(TREFOIL, 0.4, ShotPlan(10))


def test_stderr_scaling():
    basis = enumerate_basis(2, 4)
    p = AJLParams(0.4, 4)
    small = estimate_weighted_trace(TREFOIL, basis, p, ShotPlan(50_000, 2))
    big = estimate_weighted_trace(TREFOIL, basis, p, ShotPlan(800_000, 2))
    assert small.stderr / big.stderr == pytest.approx(4.0, rel=0.1)
    assert math.isclose(small.stderr, math.hypot(small.stderr_re, small.stderr_im))


def test_identity_braid_weight_noise_only():
    basis = enumerate_basis(3, 5)
    p = AJLParams(0.5, 5)
    exact = float(p.lambdas[basis.endpoint_array].sum())
    est = estimate_weighted_trace(BraidWord(3, ()), basis, p, ShotPlan(100_000, 4))
    assert abs(est.estimate - exact) <= 4 * est.stderr


def test_unknot_one_strand():
    est = estimate_jones(BraidWord(1, ()), AJLParams(0.7, 3), ShotPlan(10_000, 1))
    assert abs(est.value - 1.0) <= est.confidence_radius + 1e-12


def test_trefoil_million_shots():
    p = AJLParams(0.4, 4)
    est = estimate_jones(TREFOIL, p, ShotPlan(1_000_000, 2024))
    assert abs(est.value - normalized_f(TREFOIL).eval_unit(p.A)) <= 4 * est.stderr


def test_kl3_trace_estimate_matches_bracket():
    from braidtrace import bracket_kl3

    p = KLParams(1.9)
    b = BraidWord(3, (1, -2, 1, -2, 2))
    est = estimate_jones(b, p, ShotPlan(200_000, 5))
    assert abs(est.reduced - bracket_kl3(b, p)) <= 4 * est.stderr
