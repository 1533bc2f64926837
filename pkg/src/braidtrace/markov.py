"""Weighted Markov trace on the path model and brackets computed through it.

``TR(M) = sum_k lambda_k tr(M_k)`` where ``M_k`` is the block of walks ending
at node ``k``.  On an untruncated basis ``TR(1) = lambda_1 d^n``, so
``TR(rho(b)) / lambda_1`` is the raw bracket (unknot = d) of the closure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ajl import AJLParams, PathBasis, enumerate_basis, generator_matrices, rho_ajl, tl_matrix
from .braid import BraidWord, exponent_sum
from .errors import TruncationError


@dataclass(frozen=True)
class SectorDecomposition:
    sectors: dict[int, np.ndarray]

    @property
    def dims(self) -> dict[int, int]:
        return {k: len(ix) for k, ix in self.sectors.items()}


def sector_decomposition(basis: PathBasis) -> SectorDecomposition:
    ends = basis.endpoint_array
    return SectorDecomposition({int(k): np.flatnonzero(ends == k) for k in np.unique(ends)})


def off_sector_norm(M: np.ndarray, basis: PathBasis) -> float:
    """Largest entry of ``M`` coupling walks with different endpoints."""
    ends = basis.endpoint_array
    mask = ends[:, None] != ends[None, :]
    return float(np.abs(M[mask]).max()) if mask.any() else 0.0


def sector_weights(basis: PathBasis, params: AJLParams) -> np.ndarray:
    """``lambda_{end(p)}`` for every basis walk ``p``."""
    return params.lambdas[basis.endpoint_array]


def weighted_trace(M: np.ndarray, basis: PathBasis, params: AJLParams) -> complex:
    if M.shape != (basis.dim, basis.dim):
        raise ValueError(f"matrix shape {M.shape} does not match basis dimension {basis.dim}")
    return complex(np.dot(sector_weights(basis, params), np.diagonal(M)))


def sector_traces(M: np.ndarray, basis: PathBasis) -> dict[int, complex]:
    diag = np.diagonal(M)
    return {k: complex(diag[ix].sum()) for k, ix in sector_decomposition(basis).sectors.items()}


def check_trace_regime(basis: PathBasis, params: AJLParams, force: bool):
    if basis.truncated and not params.root_of_unity and not force:
        raise TruncationError(
            f"r = {basis.r} truncates {basis.n}-bit walks and theta = {params.theta!r} "
            f"is not a root-of-unity angle (pi/{basis.r}); the trace does not "
            "compute the bracket here; use r >= n + 2 or force")


def bracket_ajl(b: BraidWord, params: AJLParams, basis: PathBasis | None = None,
                force: bool = False) -> complex:
    """Raw-convention bracket of the closure at ``A = i exp(i theta / 2)``."""
    basis = basis or enumerate_basis(b.n_strands, params.r)
    check_trace_regime(basis, params, force)
    return weighted_trace(rho_ajl(b, basis, params), basis, params) / params.lambdas[1]


@dataclass(frozen=True)
class AJLEvaluation:
    A: complex
    d: float
    trace: complex
    raw: complex
    reduced: complex
    f: complex
    dim: int


def evaluate_ajl(b: BraidWord, params: AJLParams, basis: PathBasis | None = None,
                 force: bool = False) -> AJLEvaluation:
    basis = basis or enumerate_basis(b.n_strands, params.r)
    check_trace_regime(basis, params, force)
    tr = weighted_trace(rho_ajl(b, basis, params), basis, params)
    raw = tr / params.lambdas[1]
    reduced = raw / params.d
    f = (-params.A ** 3) ** (-exponent_sum(b)) * reduced
    return AJLEvaluation(params.A, params.d, tr, raw, reduced, f, basis.dim)


def markov_residual(word, n: int, params: AJLParams) -> float:
    """``|d TR(M E_n) - TR(M')|`` for the TL monomial ``M`` in ``E_1..E_{n-1}``,
    both sides evaluated on the ``(n+1)``-bit basis."""
    word = tuple(word)
    if any(not 1 <= i <= n - 1 for i in word):
        raise ValueError(f"TL word {word} uses generators outside E_1..E_{n - 1}")
    basis = enumerate_basis(n + 1, params.r)
    E = generator_matrices(basis, params)
    M = tl_matrix(word, basis, params, E)
    lhs = params.d * weighted_trace(M @ E[n - 1], basis, params)
    rhs = weighted_trace(M, basis, params)
    return abs(lhs - rhs)


def loop_count_value(c: int, params: AJLParams) -> float:
    """``d^c``."""
    if c < 0:
        raise ValueError("loop count must be nonnegative")
    return params.d ** c
