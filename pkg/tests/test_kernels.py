import os
import subprocess
import sys

import numpy as np
import pytest

from braidtrace import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def word(rng, n, c):
    gens = rng.integers(0, n - 1, size=c).astype(np.int64)
    signs = rng.choice([-1, 1], size=c).astype(np.int64)
    return gens, signs


@pytest.mark.parametrize("n,c", [(2, 1), (2, 5), (3, 8), (4, 11), (5, 9)])
def test_state_sum_histogram_total(n, c):
    gens, signs = word(np.random.default_rng(c), n, c)
    hist = _kernels.numpy_state_sum_histogram(gens, signs, n, 0, 1 << c)
    assert hist.sum() == 1 << c
    assert hist.shape == (2 * c + 1, c * n + 1)


def test_numpy_block_boundaries():
    gens, signs = word(np.random.default_rng(3), 3, 10)
    whole = _kernels.numpy_state_sum_histogram(gens, signs, 3, 0, 1 << 10)
    split = (_kernels.numpy_state_sum_histogram(gens, signs, 3, 0, 333, block=64)
             + _kernels.numpy_state_sum_histogram(gens, signs, 3, 333, 1 << 10, block=100))
    assert np.array_equal(whole, split)


@needs_numba
@pytest.mark.parametrize("seed", range(6))
def test_state_sum_backends_agree(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    c = int(rng.integers(1, 12))
    gens, signs = word(rng, n, c)
    a = _kernels.numpy_state_sum_histogram(gens, signs, n, 0, 1 << c)
    b = _kernels.numba_state_sum_histogram(gens, signs, n, 0, 1 << c)
    assert np.array_equal(a, b)


@needs_numba
@pytest.mark.parametrize("phase", [1.0, -1j])
def test_shot_backends_agree(phase):
    rng = np.random.default_rng(7)
    dim = 9
    diag = np.exp(1j * rng.uniform(0, 6, dim)) * rng.uniform(0, 1, dim)
    weights = rng.uniform(0, 1, dim)
    idx = rng.integers(0, dim, size=5000)
    u = rng.random(5000)
    s1, q1, p1 = _kernels.numpy_shot_accumulate(diag, weights, idx, u, complex(phase))
    s2, q2, p2 = _kernels.numba_shot_accumulate(diag, weights, idx, u, complex(phase))
    assert s1 == pytest.approx(s2, rel=1e-12)
    assert q1 == pytest.approx(q2, rel=1e-12)
    assert np.allclose(p1, p2)


def test_shot_values():
    diag = np.array([1.0, -1.0], dtype=complex)
    w = np.array([0.5, 2.0])
    idx = np.array([0, 1, 1])
    u = np.array([0.3, 0.3, 0.9])
    s, sq, per = _kernels.shot_accumulate(diag, w, idx, u, 1.0)
    # X = D w (1 - 2 bit): +1, -4, -4
    assert s == pytest.approx(-7.0)
    assert sq == pytest.approx(33.0)
    assert np.allclose(per, [1.0, -8.0])


def test_env_flag_selects_numpy():
    env = dict(os.environ, BRAIDTRACE_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from braidtrace import _kernels; print(_kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
