"""Simulated Hadamard-test estimation of traces and Jones values.

Only the ancilla statistics are simulated: a shot on basis state ``p`` reads 0
with probability ``(1 + Re(phase <p|U|p>)) / 2``.  The weighted trace is
estimated by sampling ``p`` uniformly from the ``D`` basis states and
averaging ``X = D * w(p) * (1 - 2 bit)``, with ``w(p) = lambda_{end(p)}`` for
the path model and ``w = 1`` for the 2x2 representation.  ``phase = 1`` gives
the real part, ``phase = -i`` the imaginary part.

Shots are drawn in fixed-size chunks; chunk ``w`` of stream ``s`` uses the
generator seeded by ``(seed ^ w, s)``, so results do not depend on how chunks
are scheduled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import _kernels
from .ajl import AJLParams, PathBasis, enumerate_basis, rho_ajl
from .braid import BraidWord, exponent_sum
from .bracket import default_workers
from .kl3 import KLParams, correct_trace, rho3
from .markov import check_trace_regime, sector_weights

UNITARY_TOL = 1e-8
CHUNK = 1 << 16
_STREAM = {"real": 0, "imaginary": 1}


@dataclass(frozen=True)
class ShotPlan:
    shots: int
    seed: int = 0
    parts: Literal["real", "imaginary", "both"] = "both"

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.parts not in ("real", "imaginary", "both"):
            raise ValueError(f"parts must be real, imaginary or both, got {self.parts!r}")

    def split(self) -> dict[str, int]:
        if self.parts == "both":
            half = max(1, self.shots // 2)
            return {"real": half, "imaginary": max(1, self.shots - half)}
        return {self.parts: self.shots}


@dataclass(frozen=True)
class TraceEstimate:
    estimate: complex
    stderr_re: float
    stderr_im: float
    shots_used: int
    per_sector: dict[int, complex] = field(default_factory=dict)

    @property
    def stderr(self) -> float:
        return math.hypot(self.stderr_re, self.stderr_im)


def _check_unitary(U: np.ndarray):
    dev = np.abs(U.conj().T @ U - np.eye(U.shape[0])).max()
    if dev > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary (max deviation {dev:.3g})")


def hadamard_shot(U: np.ndarray, p: int, phase: complex, rng: np.random.Generator) -> int:
    """One ancilla measurement of the Hadamard test on ``U`` with input ``|p>``."""
    U = np.asarray(U)
    _check_unitary(U)
    if phase not in (1, -1j):
        raise ValueError("phase must be 1 (real part) or -1j (imaginary part)")
    p0 = 0.5 * (1.0 + (phase * U[p, p]).real)
    return 0 if rng.random() < p0 else 1


def _run_stream(diag, weights, shots, seed, stream, workers):
    phase = 1.0 if stream == "real" else -1j
    dim = diag.shape[0]
    starts = range(0, shots, CHUNK)

    def chunk(w):
        m = min(CHUNK, shots - w * CHUNK)
        rng = np.random.default_rng([seed ^ w, _STREAM[stream]])
        idx = rng.integers(0, dim, size=m)
        u = rng.random(m)
        return _kernels.shot_accumulate(diag, weights, idx, u, phase)

    jobs = range(len(starts))
    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(chunk, jobs))
    else:
        parts = [chunk(w) for w in jobs]
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    per_index = np.sum([p[2] for p in parts], axis=0)
    mean = total / shots
    var = max(total_sq / shots - mean * mean, 0.0)
    if shots > 1:
        var *= shots / (shots - 1)
    return mean, math.sqrt(var / shots), per_index / shots


def estimate_trace(U: np.ndarray, weights: np.ndarray, plan: ShotPlan,
                   endpoints: np.ndarray | None = None,
                   workers: int | None = None) -> TraceEstimate:
    """Estimate ``sum_p w(p) <p|U|p>`` from simulated Hadamard-test shots."""
    U = np.asarray(U, dtype=complex)
    _check_unitary(U)
    # the shot loop sees nothing of U beyond its diagonal
    diag = np.ascontiguousarray(np.diagonal(U))
    weights = np.asarray(weights, dtype=float)
    workers = workers or default_workers()
    re = im = 0.0
    se_re = se_im = 0.0
    per_index = np.zeros(diag.shape[0], dtype=complex)
    used = 0
    for stream, shots in plan.split().items():
        mean, se, per = _run_stream(diag, weights, shots, plan.seed, stream, workers)
        used += shots
        if stream == "real":
            re, se_re = mean, se
            per_index += per
        else:
            im, se_im = mean, se
            per_index += 1j * per
    per_sector = {}
    if endpoints is not None:
        for k in np.unique(endpoints):
            per_sector[int(k)] = complex(per_index[endpoints == k].sum())
    return TraceEstimate(complex(re, im), se_re, se_im, used, per_sector)


def estimate_weighted_trace(b: BraidWord, basis: PathBasis, params: AJLParams, plan: ShotPlan,
                            force: bool = False, workers: int | None = None) -> TraceEstimate:
    """Estimate ``TR(rho(b))`` on the path model."""
    check_trace_regime(basis, params, force)
    U = rho_ajl(b, basis, params)
    return estimate_trace(U, sector_weights(basis, params), plan, basis.endpoint_array, workers)


def estimate_trace_kl3(b: BraidWord, params: KLParams, plan: ShotPlan,
                       workers: int | None = None) -> TraceEstimate:
    """Estimate the plain trace of the 2x2 unitary ``rho(b)``."""
    return estimate_trace(rho3(b, params), np.ones(2), plan, workers=workers)


@dataclass(frozen=True)
class JonesEstimate:
    """Estimated ``f`` (= V at ``t = A^-4``) with its confidence radius.

    ``stderr`` is the propagated standard error ``|scale| * hypot(se_re, se_im)``
    and ``confidence_radius = z * stderr``.
    """

    value: complex
    stderr: float
    confidence_radius: float
    reduced: complex
    trace: TraceEstimate
    A: complex


def estimate_jones(b: BraidWord, params: AJLParams | KLParams, plan: ShotPlan,
                   basis: PathBasis | None = None, z: float = 4.0,
                   force: bool = False, workers: int | None = None) -> JonesEstimate:
    """Trace estimate pushed through the bracket and writhe normalization.

    Path model: TR / lambda_1 is the raw bracket, divided by d for the
    reduced one.  2x2 model: the reduced bracket is ``tr + A^I (delta^2 - 2)``.
    Both end with ``f = (-A^3)^-I * reduced``.
    """
    I = exponent_sum(b)
    if isinstance(params, AJLParams):
        basis = basis or enumerate_basis(b.n_strands, params.r)
        est = estimate_weighted_trace(b, basis, params, plan, force, workers)
        scale = 1.0 / (params.lambdas[1] * params.d)
        reduced = est.estimate * scale
    elif isinstance(params, KLParams):
        est = estimate_trace_kl3(b, params, plan, workers)
        scale = 1.0
        reduced = correct_trace(est.estimate, I, params)
    else:
        raise TypeError(f"unsupported parameter type {type(params).__name__}")
    norm = (-params.A ** 3) ** (-I)
    stderr = abs(scale * norm) * est.stderr
    return JonesEstimate(norm * reduced, stderr, z * stderr, reduced, est, params.A)
