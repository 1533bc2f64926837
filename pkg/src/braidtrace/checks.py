"""Invariant suites run by ``braidtrace check``.

Each suite returns a :class:`CheckResult` carrying its worst residual.  The
``fast`` level shrinks sample counts; ``full`` runs the complete counts
(20 angles per size, 50 to 100 random words, 20 x 1e5 shots).
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .ajl import AJLParams, enumerate_basis, generator_matrices, rho_ajl, tl_matrix
from .braid import BraidWord, closure_permutation
from .bracket import default_workers, normalized_f, raw_bracket, reduced_bracket, tl_fold_bracket
from .hadamard import ShotPlan, estimate_weighted_trace
from .kl3 import (KLParams, angle_from_path_model, bracket_kl3, generator_matrices as kl3_generators,
                  is_unitary, u_matrices, unitary_theta_ranges)
from .markov import bracket_ajl, markov_residual, off_sector_norm, weighted_trace


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    cases: int
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)


def random_braid(rng: np.random.Generator, n: int, max_len: int, min_len: int = 0) -> BraidWord:
    length = int(rng.integers(min_len, max_len + 1))
    if n < 2:
        return BraidWord(n, ())
    gens = rng.integers(1, n, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(n, tuple(int(g * s) for g, s in zip(gens, signs)))


def random_tl_word(rng: np.random.Generator, n: int, max_len: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    return tuple(int(i) for i in rng.integers(1, n, size=int(rng.integers(0, max_len + 1))))


def random_unitary_kl_theta(rng: np.random.Generator) -> float:
    """Uniform angle from the closed intervals where the 2x2 model is unitary."""
    ranges = unitary_theta_ranges()
    widths = np.array([hi - lo for lo, hi in ranges])
    k = rng.choice(len(ranges), p=widths / widths.sum())
    lo, hi = ranges[k]
    return float(rng.uniform(lo, hi))


def random_path_theta(rng: np.random.Generator, r: int) -> float:
    """Uniform in (0, pi/r]."""
    return float(math.pi / r * (1.0 - rng.random()))


def _err(a, b) -> float:
    return float(np.abs(np.asarray(a) - np.asarray(b)).max())


def check_tl_relations(rng, level) -> CheckResult:
    thetas = 20 if level == "full" else 4
    worst = worst_comm = 0.0
    cases = 0
    for n in range(2, 7):
        r = n + 2
        basis = enumerate_basis(n, r)
        for _ in range(thetas):
            p = AJLParams(random_path_theta(rng, r), r)
            E = generator_matrices(basis, p)
            for i in range(n - 1):
                worst = max(worst, _err(E[i] @ E[i], p.d * E[i]))
                for j in (i - 1, i + 1):
                    if 0 <= j < n - 1:
                        worst = max(worst, _err(E[i] @ E[j] @ E[i], E[i]))
                for j in range(i + 2, n - 1):
                    worst_comm = max(worst_comm, _err(E[i] @ E[j], E[j] @ E[i]))
            cases += 1
    passed = worst <= 1e-10 and worst_comm <= 1e-12
    return CheckResult("tl_relations", passed, max(worst, worst_comm), 1e-10, cases,
                       detail={"relations": worst, "commutation": worst_comm})


def check_kl3_trace_values(rng, level) -> CheckResult:
    worst = 0.0
    cases = 10
    for _ in range(cases):
        while True:
            p = KLParams(random_unitary_kl_theta(rng))
            if abs(p.delta) >= 1.0:
                break
        U1, U2 = u_matrices(p)
        worst = max(worst, abs(np.trace(U1) - p.delta), abs(np.trace(U2) - p.delta),
                    abs(np.trace(U1 @ U2) - 1.0), abs(np.trace(U2 @ U1) - 1.0),
                    _err(U1 @ U2 @ U1, U1), _err(U2 @ U1 @ U2, U2),
                    _err(U1 @ U1, p.delta * U1), _err(U2 @ U2, p.delta * U2))
    return CheckResult("kl3_trace_values", worst <= 1e-12, worst, 1e-12, cases)


def check_kl3_representation(rng, level) -> CheckResult:
    cases = 50 if level == "full" else 10
    worst = 0.0
    for _ in range(cases):
        p = KLParams(random_unitary_kl_theta(rng))
        if p.singular:
            continue
        g = kl3_generators(p)
        eye = np.eye(2)
        for i in (1, 2):
            worst = max(worst, _err(g[i].conj().T @ g[i], eye), _err(g[i] @ g[-i], eye))
            ev = np.linalg.eigvals(g[i])
            targets = np.array([p.A, -p.A ** -3])
            worst = max(worst, max(np.abs(targets - e).min() for e in ev))
        worst = max(worst, _err(g[1] @ g[2] @ g[1], g[2] @ g[1] @ g[2]))
    return CheckResult("kl3_representation", worst <= 1e-10, worst, 1e-10, cases)


def check_unitary_intervals(rng, level) -> CheckResult:
    grid = np.linspace(0.0, 2 * math.pi, 10_000)
    step = grid[1] - grid[0]
    ranges = unitary_theta_ranges()
    mismatches = 0
    for th in grid:
        by_delta = (-2 * math.cos(2 * th)) ** 2 >= 1.0 - 1e-12
        if is_unitary(th) != by_delta:
            mismatches += 1
            continue
        in_union = any(lo - 1e-12 <= th <= hi + 1e-12 for lo, hi in ranges)
        near_edge = min(min(abs(th - lo), abs(th - hi)) for lo, hi in ranges) <= step
        if in_union != by_delta and not near_edge:
            mismatches += 1
    return CheckResult("unitary_intervals", mismatches == 0, float(mismatches), 0.0, len(grid))


def check_kl3_oracle(rng, level) -> CheckResult:
    cases = 100 if level == "full" else 20
    worst = 0.0
    for _ in range(cases):
        b = random_braid(rng, 3, 10)
        p = KLParams(random_unitary_kl_theta(rng))
        if p.singular:
            continue
        worst = max(worst, abs(bracket_kl3(b, p) - reduced_bracket(b).eval_unit(p.A)))
    return CheckResult("kl3_oracle_equivalence", worst <= 1e-9, worst, 1e-9, cases)


def check_ajl_unitarity(rng, level) -> CheckResult:
    cases = 30 if level == "full" else 8
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 6))
        r = n + 2
        basis = enumerate_basis(n, r)
        p = AJLParams(random_path_theta(rng, r), r)
        eye = np.eye(basis.dim)
        for i in range(1, n):
            U = rho_ajl(BraidWord(n, (i,)), basis, p)
            worst = max(worst, _err(U.conj().T @ U, eye))
        b = random_braid(rng, n, 10)
        worst = max(worst, _err(rho_ajl(b, basis, p) @ rho_ajl(b.inverse(), basis, p), eye))
    return CheckResult("ajl_unitarity", worst <= 1e-9, worst, 1e-9, cases)


def check_ajl_kl3_correspondence(rng, level) -> CheckResult:
    cases = 25 if level == "full" else 8
    worst = 0.0
    basis = enumerate_basis(3, 5)
    for _ in range(cases):
        b = random_braid(rng, 3, 10)
        th = float(rng.uniform(0.0, math.pi / 5))
        if th == 0.0:
            continue
        p = AJLParams(th, 5)
        kl = bracket_kl3(b, KLParams(angle_from_path_model(th)))
        worst = max(worst, abs(bracket_ajl(b, p, basis) / p.d - kl))
    return CheckResult("ajl_kl3_correspondence", worst <= 1e-9, worst, 1e-9, cases)


def check_sector_structure(rng, level) -> CheckResult:
    cases = 30 if level == "full" else 8
    worst_block = worst_trace = 0.0
    for _ in range(cases):
        n = int(rng.integers(2, 6))
        r = n + 2
        basis = enumerate_basis(n, r)
        p = AJLParams(random_path_theta(rng, r), r)
        worst_block = max(worst_block, off_sector_norm(rho_ajl(random_braid(rng, n, 10), basis, p), basis))
        E = generator_matrices(basis, p)
        x = tl_matrix(random_tl_word(rng, n, 6), basis, p, E)
        y = tl_matrix(random_tl_word(rng, n, 6), basis, p, E)
        worst_trace = max(worst_trace, abs(weighted_trace(x @ y, basis, p) - weighted_trace(y @ x, basis, p)))
    passed = worst_block <= 1e-12 and worst_trace <= 1e-10
    return CheckResult("sector_structure", passed, max(worst_block, worst_trace), 1e-10, cases,
                       detail={"off_sector": worst_block, "trace_cyclicity": worst_trace})


def check_markov_property(rng, level) -> CheckResult:
    cases = 50 if level == "full" else 12
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(1, 6))
        r = n + 3
        p = AJLParams(random_path_theta(rng, r), r)
        worst = max(worst, markov_residual(random_tl_word(rng, n, 8), n, p))
    truncated = markov_residual((), 2, AJLParams(0.5, 4))
    rescued = markov_residual((), 2, AJLParams(math.pi / 4, 4))
    passed = worst <= 1e-9 and truncated > 1e-3 and rescued <= 1e-10
    return CheckResult("markov_property", passed, worst, 1e-9, cases,
                       detail={"truncated_generic": truncated, "root_of_unity": rescued})


def check_oracle_equivalence(rng, level) -> CheckResult:
    cases = 50 if level == "full" else 15
    worst = 0.0
    for _ in range(cases):
        n = int(rng.integers(1, 5))
        b = random_braid(rng, n, 8)
        r = n + 2
        p = AJLParams(random_path_theta(rng, r), r)
        worst = max(worst, abs(bracket_ajl(b, p) - raw_bracket(b).eval_unit(p.A)))
    return CheckResult("oracle_equivalence", worst <= 1e-9, worst, 1e-9, cases)


def check_bracket_invariance(rng, level) -> CheckResult:
    cases = 100 if level == "full" else 20
    failures = 0
    for _ in range(cases):
        n = int(rng.integers(3, 5))
        b = random_braid(rng, n, 6)
        base = raw_bracket(b)
        pos = int(rng.integers(0, len(b) + 1))
        g = int(rng.integers(1, n)) * int(rng.choice([-1, 1]))
        r2 = BraidWord(n, b.letters[:pos] + (g, -g) + b.letters[pos:])
        i = int(rng.integers(1, n - 1))
        s = int(rng.choice([-1, 1]))
        left = BraidWord(n, b.letters[:pos] + (s * i, s * (i + 1), s * i) + b.letters[pos:])
        right = BraidWord(n, b.letters[:pos] + (s * (i + 1), s * i, s * (i + 1)) + b.letters[pos:])
        stab = b.stabilize(int(rng.choice([-1, 1])))
        ok = (raw_bracket(r2) == base and raw_bracket(left) == raw_bracket(right)
              and normalized_f(stab) == normalized_f(b) and tl_fold_bracket(b) == base
              and closure_permutation(b.rotate(pos))[1] == closure_permutation(b)[1])
        failures += not ok
    return CheckResult("bracket_invariance", failures == 0, float(failures), 0.0, cases)


def check_hadamard(rng, level) -> CheckResult:
    b = BraidWord(2, (1, 1, 1))
    p = AJLParams(0.4, 4)
    basis = enumerate_basis(2, 4)
    exact = weighted_trace(rho_ajl(b, basis, p), basis, p)
    runs, shots = (20, 100_000) if level == "full" else (6, 20_000)
    seeds = [int(s) for s in rng.integers(0, 2 ** 62, size=runs)]
    inside = 0
    for s in seeds:
        est = estimate_weighted_trace(b, basis, p, ShotPlan(shots, s))
        inside += (abs(est.estimate.real - exact.real) <= 4 * est.stderr_re
                   and abs(est.estimate.imag - exact.imag) <= 4 * est.stderr_im)
    need = math.ceil(0.9 * runs)
    small = estimate_weighted_trace(b, basis, p, ShotPlan(shots, seeds[0]))
    large = estimate_weighted_trace(b, basis, p, ShotPlan(4 * shots, seeds[0]))
    ratio = small.stderr_re / large.stderr_re
    again = estimate_weighted_trace(b, basis, p, ShotPlan(shots, seeds[0]))
    reproducible = again.estimate == small.estimate
    mean_runs, mean_shots = (200, 10_000) if level == "full" else (40, 5_000)
    ests = np.array([estimate_weighted_trace(b, basis, p, ShotPlan(mean_shots, s, "real")).estimate.real
                     for s in rng.integers(0, 2 ** 62, size=mean_runs)])
    sem = ests.std(ddof=1) / math.sqrt(mean_runs)
    bias = abs(ests.mean() - exact.real)
    passed = inside >= need and 1.6 <= ratio <= 2.4 and reproducible and bias <= 3 * sem
    return CheckResult("hadamard_statistics", passed, bias / sem, 3.0, runs,
                       detail={"within_4_sigma": inside, "required": need, "stderr_ratio": ratio,
                               "reproducible": reproducible, "bias": bias, "sem": sem})


SUITES = {
    "tl_relations": check_tl_relations,
    "kl3_trace_values": check_kl3_trace_values,
    "kl3_representation": check_kl3_representation,
    "unitary_intervals": check_unitary_intervals,
    "kl3_oracle_equivalence": check_kl3_oracle,
    "ajl_unitarity": check_ajl_unitarity,
    "ajl_kl3_correspondence": check_ajl_kl3_correspondence,
    "sector_structure": check_sector_structure,
    "markov_property": check_markov_property,
    "oracle_equivalence": check_oracle_equivalence,
    "bracket_invariance": check_bracket_invariance,
    "hadamard_statistics": check_hadamard,
}


def run_checks(level: str = "fast", seed: int = 2024, workers: int | None = None,
               only: list[str] | None = None) -> dict:
    if level not in ("fast", "full"):
        raise ValueError(f"level must be fast or full, got {level!r}")
    names = only or list(SUITES)
    unknown = set(names) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    seeds = np.random.SeedSequence(seed).spawn(len(names))

    def run(k):
        t0 = time.perf_counter()
        res = SUITES[names[k]](np.random.default_rng(seeds[k]), level)
        res.seconds = time.perf_counter() - t0
        res.passed = bool(res.passed)
        res.worst = float(res.worst)
        res.detail = {k: v.item() if isinstance(v, np.generic) else v for k, v in res.detail.items()}
        return res

    workers = workers or default_workers()
    with ThreadPoolExecutor(workers) as pool:
        results = list(pool.map(run, range(len(names))))
    return {
        "level": level,
        "seed": seed,
        "passed": all(r.passed for r in results),
        "suites": [asdict(r) for r in results],
    }
