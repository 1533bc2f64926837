"""Path-model representation of the Temperley-Lieb algebra over a continuous
angle range.

Basis states of ``H_{n,r}`` are ``n``-bit walks on the line graph ``G_r``
(nodes ``1..r-1``, walks start at node 1, bit 1 steps right, bit 0 steps left).
With ``lambda_k = sin(k theta)``, ``A = i exp(i theta / 2)`` and
``d = 2 cos(theta)``, the generator ``E_i`` acts on bits ``i, i+1`` through the
rank-one block ``v v^T`` where

    v = (sqrt(lambda_{z-1} / lambda_z), sqrt(lambda_{z+1} / lambda_z))

in the local order ``01, 10`` and ``z`` is the node reached after the first
``i - 1`` bits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .braid import BraidWord
from .errors import ParameterError

ANGLE_TOL = 1e-12
ROOT_OF_UNITY_TOL = 1e-10
CLAMP_TOL = 1e-14


@dataclass(frozen=True)
class AJLParams:
    theta: float
    r: int
    A: complex = field(init=False)
    d: float = field(init=False)
    lambdas: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        theta = float(self.theta)
        r = int(self.r)
        if r < 3:
            raise ParameterError(f"line graph needs r >= 3, got {r}")
        if not 0.0 < theta <= math.pi / r + ANGLE_TOL:
            raise ParameterError(f"theta = {theta!r} outside (0, pi/{r}]")
        lam = np.sin(np.arange(r + 1) * theta)
        lam[np.abs(lam) <= CLAMP_TOL] = 0.0
        lam.setflags(write=False)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "A", 1j * cmath.exp(0.5j * theta))
        object.__setattr__(self, "d", 2.0 * math.cos(theta))
        object.__setattr__(self, "lambdas", lam)

    @property
    def root_of_unity(self) -> bool:
        return abs(math.sin(self.r * self.theta)) <= ROOT_OF_UNITY_TOL


@dataclass(frozen=True)
class PathBasis:
    n: int
    r: int
    walks: tuple[str, ...]
    endpoints: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.walks)

    @property
    def dim(self) -> int:
        return len(self.walks)

    @cached_property
    def index(self) -> dict[str, int]:
        return {w: k for k, w in enumerate(self.walks)}

    @cached_property
    def endpoint_array(self) -> np.ndarray:
        return np.array(self.endpoints, dtype=np.int64)

    @property
    def truncated(self) -> bool:
        """Whether some n-bit walk leaves the graph on the right."""
        return self.r < self.n + 2


def enumerate_basis(n: int, r: int) -> PathBasis:
    """All n-bit walks on ``G_r`` in lexicographic order."""
    if n < 1:
        raise ParameterError(f"need n >= 1 bits, got {n}")
    if r < 3:
        raise ParameterError(f"line graph needs r >= 3, got {r}")
    walks = [("", 1)]
    for _ in range(n):
        nxt = []
        for w, node in walks:
            if node - 1 >= 1:
                nxt.append((w + "0", node - 1))
            if node + 1 <= r - 1:
                nxt.append((w + "1", node + 1))
        walks = nxt
    if not walks:
        raise ParameterError(f"no {n}-bit walks on G_{r}")
    walks.sort()
    return PathBasis(n, r, tuple(w for w, _ in walks), tuple(e for _, e in walks))


def endpoint_prefix(p: str, i: int) -> int:
    """``z(i)``: node reached by the walk ``p`` after its first ``i - 1`` bits."""
    if not 1 <= i <= len(p) + 1:
        raise ValueError(f"prefix index {i} outside 1..{len(p) + 1}")
    node = 1
    for bit in p[: i - 1]:
        node += 1 if bit == "1" else -1
    return node


def build_E(i: int, basis: PathBasis, params: AJLParams) -> np.ndarray:
    """Matrix of the generator ``E_i`` on the walk basis."""
    n = basis.n
    if not 1 <= i <= n - 1:
        raise ValueError(f"E_{i} needs 1 <= i <= {n - 1}")
    if basis.r != params.r:
        raise ParameterError(f"basis built for r = {basis.r}, params have r = {params.r}")
    lam = params.lambdas
    E = np.zeros((basis.dim, basis.dim))
    index = basis.index
    for row, p in enumerate(basis.walks):
        local = p[i - 1:i + 1]
        if local not in ("01", "10"):
            continue
        z = endpoint_prefix(p, i)
        if lam[z] <= 0.0:
            raise ParameterError(f"lambda_{z} = {lam[z]!r} must be positive")
        comp = {"01": math.sqrt(max(lam[z - 1], 0.0) / lam[z]),
                "10": math.sqrt(max(lam[z + 1], 0.0) / lam[z])}
        E[row, row] = comp[local] ** 2
        other = "10" if local == "01" else "01"
        col = index.get(p[: i - 1] + other + p[i + 1:])
        if col is not None:
            E[row, col] = comp[local] * comp[other]
    return E


def generator_matrices(basis: PathBasis, params: AJLParams) -> list[np.ndarray]:
    """``[E_1, ..., E_{n-1}]``."""
    return [build_E(i, basis, params) for i in range(1, basis.n)]


def rho_ajl(b: BraidWord, basis: PathBasis, params: AJLParams,
            E: list[np.ndarray] | None = None) -> np.ndarray:
    """Ordered product of ``A I + A^-1 E_i`` (``A^-1 I + A E_i`` for inverses)."""
    if b.n_strands != basis.n:
        raise ParameterError(f"braid on {b.n_strands} strands, basis built for {basis.n}")
    A = params.A
    cache: dict[int, np.ndarray] = {}
    eye = np.eye(basis.dim, dtype=complex)
    M = eye.copy()
    for g in b.letters:
        if g not in cache:
            Ei = E[abs(g) - 1] if E is not None else build_E(abs(g), basis, params)
            cache[g] = A * eye + Ei / A if g > 0 else eye / A + A * Ei
        M = M @ cache[g]
    return M


def tl_matrix(word, basis: PathBasis, params: AJLParams,
              E: list[np.ndarray] | None = None) -> np.ndarray:
    """Matrix of the TL monomial ``E_{w1} E_{w2} ...``."""
    E = E if E is not None else generator_matrices(basis, params)
    M = np.eye(basis.dim)
    for i in word:
        M = M @ E[i - 1]
    return M


@dataclass
class ParamReport:
    theta: float
    r: int
    n: int
    admissible: bool
    mode: str
    truncated: bool
    warnings: list[str] = field(default_factory=list)

    @property
    def trace_identity_holds(self) -> bool:
        return self.admissible and (not self.truncated or self.mode == "root-of-unity")

    def to_json(self) -> dict:
        return {"theta": self.theta, "r": self.r, "n": self.n, "admissible": self.admissible,
                "mode": self.mode, "truncated": self.truncated, "warnings": list(self.warnings)}


def validate_params(theta: float, r: int, n: int) -> ParamReport:
    """Admissibility of ``(theta, r)`` for ``n`` strands; raises on theta outside (0, pi/r]."""
    params = AJLParams(theta, r)
    lam = params.lambdas
    warnings = []
    bad = [k for k in range(1, r) if lam[k] <= 0.0]
    if bad:
        warnings.append(f"lambda_k <= 0 for k = {bad}")
    mode = "root-of-unity" if params.root_of_unity else "generic"
    truncated = r < n + 2
    if truncated:
        if mode == "generic":
            warnings.append(
                f"truncated basis (r = {r} < n + 2 = {n + 2}) at generic theta; "
                "trace-bracket identity not guaranteed")
        else:
            warnings.append(f"truncated basis (r = {r} < n + 2 = {n + 2}), root-of-unity angle")
    return ParamReport(float(theta), r, n, not bad, mode, truncated, warnings)
