"""Unitary 2x2 representation of the three-strand braid group.

``A = exp(i theta)``, ``delta = -A^2 - A^-2 = -2 cos(2 theta)``.  The
generators act by ``rho(sigma_i) = A I + A^-1 U_i`` and the reduced bracket of
the closure is recovered from the matrix trace by
``<b> = tr rho(b) + A^I(b) (delta^2 - 2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .braid import BraidWord, exponent_sum
from .errors import BraidError, ParameterError

BOUNDARY_TOL = 1e-12
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class KLParams:
    theta: float
    A: complex = field(init=False)
    delta: float = field(init=False)

    def __post_init__(self):
        theta = float(self.theta)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "A", cmath.exp(1j * theta))
        object.__setattr__(self, "delta", -2.0 * math.cos(2.0 * theta))

    @property
    def singular(self) -> bool:
        return abs(self.delta) <= SINGULAR_TOL

    @property
    def tau(self) -> float:
        self._require_regular()
        return self.delta ** -2

    @property
    def unitary(self) -> bool:
        return self.delta ** 2 >= 1.0 - BOUNDARY_TOL

    @property
    def b_entry(self) -> float | complex:
        """Off-diagonal entry sqrt(1 - delta^-2) of U_2; complex when delta^2 < 1."""
        self._require_regular()
        x = 1.0 - self.delta ** -2
        if self.unitary:
            return math.sqrt(max(x, 0.0))
        return cmath.sqrt(x)

    def _require_regular(self):
        if self.singular:
            raise ParameterError(
                f"delta = 0 at theta = {self.theta!r}: U_2 contains 1/delta")


def u_matrices(params: KLParams, allow_nonunitary: bool = False) -> tuple[np.ndarray, np.ndarray]:
    """Temperley-Lieb generators U_1, U_2 (real symmetric when unitary)."""
    params._require_regular()
    if not params.unitary and not allow_nonunitary:
        raise ParameterError(
            f"delta^2 = {params.delta ** 2:.6g} < 1 at theta = {params.theta!r}; "
            "pass allow_nonunitary=True for complex entries")
    d = params.delta
    b = params.b_entry
    dtype = float if isinstance(b, float) else complex
    U1 = np.array([[d, 0.0], [0.0, 0.0]], dtype=dtype)
    U2 = np.array([[1.0 / d, b], [b, d - 1.0 / d]], dtype=dtype)
    return U1, U2


def generator_matrices(params: KLParams, allow_nonunitary: bool = False) -> dict[int, np.ndarray]:
    """rho(sigma_i^{+-1}) keyed by signed letter."""
    A = params.A
    eye = np.eye(2, dtype=complex)
    out = {}
    for i, U in enumerate(u_matrices(params, allow_nonunitary), start=1):
        out[i] = A * eye + U / A
        out[-i] = eye / A + A * U
    return out


def rho3(b: BraidWord, params: KLParams, allow_nonunitary: bool = False) -> np.ndarray:
    """Ordered product of generator matrices; 2-strand words embed via sigma_1."""
    if b.n_strands > 3:
        raise BraidError(f"the 2x2 representation needs at most 3 strands, got {b.n_strands}")
    gens = generator_matrices(params, allow_nonunitary)
    M = np.eye(2, dtype=complex)
    for g in b.letters:
        M = M @ gens[g]
    return M


_RANGES = ((0.0, 1 / 6), (1 / 3, 2 / 3), (5 / 6, 7 / 6), (4 / 3, 5 / 3), (11 / 6, 2.0))


def unitary_theta_ranges() -> list[tuple[float, float]]:
    """Closed angle intervals in [0, 2 pi] where delta^2 >= 1."""
    return [(lo * math.pi, hi * math.pi) for lo, hi in _RANGES]


def is_unitary(theta: float) -> bool:
    return KLParams(theta).unitary


def bracket_kl3(b: BraidWord, params: KLParams, allow_nonunitary: bool = False) -> complex:
    """Reduced bracket of the 3-strand closure of ``b`` at ``params.A``."""
    tr = complex(np.trace(rho3(b, params, allow_nonunitary)))
    return correct_trace(tr, exponent_sum(b), params)


def correct_trace(trace: complex, writhe: int, params: KLParams) -> complex:
    """``tr rho(b) + A^I(b) (delta^2 - 2)``."""
    return trace + params.A ** writhe * (params.delta ** 2 - 2.0)


def jones_kl3(b: BraidWord, params: KLParams, allow_nonunitary: bool = False) -> complex:
    """``(-A^3)^-I(b) <b>``: the value of ``f``, equal to V at ``t = A^-4``."""
    I = exponent_sum(b)
    return (-params.A ** 3) ** (-I) * bracket_kl3(b, params, allow_nonunitary)


def angle_from_path_model(theta: float) -> float:
    """KL angle giving the same A as the path model's ``A = i exp(i theta / 2)``."""
    return math.pi / 2 + theta / 2
