"""Exact bracket polynomial of braid closures.

Two independent evaluators of the same polynomial:

* :func:`raw_bracket` enumerates all ``2^c`` smoothings and counts closed
  loops with union-find (compiled kernel in :mod:`braidtrace._kernels`);
* :func:`tl_fold_bracket` folds the word through the Temperley-Lieb algebra,
  keeping a linear combination of planar diagrams.

Conventions: a positive letter expands as ``A * identity + A^-1 * cupcap``,
a negative one with ``A`` and ``A^-1`` swapped.  The *raw* bracket values a
state with ``c`` loops at ``d^c`` (the unknot is ``d``), the *reduced*
bracket divides by one ``d`` (the unknot is 1).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .braid import BraidWord, exponent_sum
from .errors import StateSumTooLarge
from .laurent import CURL, LOOP, ONE, ZERO, LaurentInt, QuarterLaurent, substitute_quarter_power

STATE_SUM_CAP = 24


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("BRAIDTRACE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class TLDiagram:
    """Planar matching of ``n`` top points (0..n-1) and ``n`` bottom points
    (n..2n-1), plus the number of closed loops produced while building it.

    ``pairs[p]`` is the point matched to ``p``.  Composition ``D1 * D2`` glues
    the bottom of ``D1`` to the top of ``D2``.
    """

    n: int
    pairs: tuple[int, ...]
    loops: int = 0

    def __post_init__(self):
        size = 2 * self.n
        p = self.pairs
        if len(p) != size or any(not 0 <= p[k] < size or p[k] == k or p[p[k]] != k
                                 for k in range(size)):
            raise ValueError(f"not a perfect matching on {size} points: {p}")
        if not _is_planar(p, self.n):
            raise ValueError(f"matching is not planar: {p}")

    @classmethod
    def identity(cls, n: int) -> TLDiagram:
        return cls(n, tuple(list(range(n, 2 * n)) + list(range(n))))

    @classmethod
    def cupcap(cls, n: int, i: int) -> TLDiagram:
        """The generator E_i joining strands i and i+1 (1-based)."""
        if not 1 <= i < n:
            raise ValueError(f"E_{i} needs 1 <= i < {n}")
        k = i - 1
        p = list(range(n, 2 * n)) + list(range(n))
        p[k], p[k + 1] = k + 1, k
        p[n + k], p[n + k + 1] = n + k + 1, n + k
        return cls(n, tuple(p))

    def __mul__(self, other: TLDiagram) -> TLDiagram:
        return compose(self, other)

    def closure_loops(self) -> int:
        """Loops of the braid-style closure (top i joined to bottom i),
        not counting ``self.loops``."""
        n = self.n
        seen = [False] * (2 * n)
        count = 0
        for start in range(2 * n):
            if seen[start]:
                continue
            count += 1
            k = start
            while not seen[k]:
                seen[k] = True
                m = self.pairs[k]
                seen[m] = True
                k = m + n if m < n else m - n

        return count


def _is_planar(pairs, n) -> bool:
    # walk the boundary circle: tops left to right, bottoms right to left
    order = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    pos = {p: k for k, p in enumerate(order)}
    stack = []
    for p in order:
        q = pairs[p]
        if pos[q] > pos[p]:
            stack.append(p)
        elif not stack or stack.pop() != q:
            return False
    return True


def compose(upper: TLDiagram, lower: TLDiagram) -> TLDiagram:
    """Glue ``upper``'s bottom row to ``lower``'s top row."""
    if upper.n != lower.n:
        raise ValueError("diagrams on different strand counts")
    n = upper.n
    result = [-1] * (2 * n)
    visited = [False] * n

    def follow(side, k):
        # side 0: at point k of upper, side 1: at point k of lower
        while True:
            if side == 0:
                q = upper.pairs[k]
                if q < n:
                    return q
                visited[q - n] = True
                side, k = 1, q - n
            else:
                q = lower.pairs[k]
                if q >= n:
                    return q
                visited[q] = True
                side, k = 0, q + n

    for k in range(n):
        if result[k] < 0:
            end = follow(0, k)
            result[k], result[end] = end, k
    for k in range(n, 2 * n):
        if result[k] < 0:
            end = follow(1, k)
            result[k], result[end] = end, k
    loops = 0
    for m in range(n):
        if visited[m]:
            continue
        loops += 1
        k = m
        while not visited[k]:
            visited[k] = True
            j = lower.pairs[k]          # top of lower to top of lower
            visited[j] = True
            k = upper.pairs[j + n] - n  # back through upper's bottom row
    return TLDiagram(n, tuple(result), upper.loops + lower.loops + loops)


def smooth_letter(g: int, choice: Literal["A", "B"], n: int) -> tuple[TLDiagram, LaurentInt]:
    """Smoothing of one crossing and its weight.

    ``"A"`` is the identity smoothing, ``"B"`` the cup-cap; the weight is
    ``A^sign(g)`` resp. ``A^-sign(g)``.
    """
    sign = 1 if g > 0 else -1
    if choice == "A":
        return TLDiagram.identity(n), LaurentInt.monomial(sign)
    if choice == "B":
        return TLDiagram.cupcap(n, abs(g)), LaurentInt.monomial(-sign)
    raise ValueError(f"smoothing choice must be 'A' or 'B', got {choice!r}")


def _loop_powers(k: int) -> list[LaurentInt]:
    out = [ONE]
    for _ in range(k):
        out.append(out[-1] * LOOP)
    return out


def raw_bracket(b: BraidWord, cap: int = STATE_SUM_CAP, workers: int | None = None) -> LaurentInt:
    """Bracket of the closure by full state sum, unknot = d."""
    c = len(b)
    n = b.n_strands
    if c > cap:
        raise StateSumTooLarge(
            f"{c} letters means 2^{c} states (cap {cap}); use tl_fold_bracket for long words")
    if c == 0:
        return LOOP ** n
    gens = np.array([abs(g) - 1 for g in b.letters], dtype=np.int64)
    signs = np.array([1 if g > 0 else -1 for g in b.letters], dtype=np.int64)
    total = 1 << c
    workers = workers or default_workers()
    if workers > 1 and total >= 1 << 12:
        bounds = np.linspace(0, total, workers + 1).astype(np.int64)
        with ThreadPoolExecutor(workers) as pool:
            parts = pool.map(lambda k: _kernels.state_sum_histogram(
                gens, signs, n, int(bounds[k]), int(bounds[k + 1])), range(workers))
            hist = sum(parts)
    else:
        hist = _kernels.state_sum_histogram(gens, signs, n, 0, total)
    powers = _loop_powers(hist.shape[1] - 1)
    result = ZERO
    for e_idx, loops in zip(*np.nonzero(hist)):
        result = result + (powers[loops] * int(hist[e_idx, loops])).scale(1, int(e_idx) - c)
    return result


def tl_fold_bracket(b: BraidWord) -> LaurentInt:
    """Same value as :func:`raw_bracket`, in time polynomial in the word length."""
    n = b.n_strands
    ident = TLDiagram.identity(n)
    gens = {i: TLDiagram.cupcap(n, i) for i in range(1, n)}
    powers = _loop_powers(n)
    state: dict[tuple[int, ...], LaurentInt] = {ident.pairs: ONE}
    for g in b.letters:
        sign = 1 if g > 0 else -1
        nxt: dict[tuple[int, ...], LaurentInt] = {}
        for pairs, coef in state.items():
            kept = coef.scale(1, sign)
            nxt[pairs] = nxt.get(pairs, ZERO) + kept
            prod = compose(TLDiagram(n, pairs), gens[abs(g)])
            term = coef.scale(1, -sign)
            if prod.loops:
                term = term * LOOP ** prod.loops
            nxt[prod.pairs] = nxt.get(prod.pairs, ZERO) + term
        state = {k: v for k, v in nxt.items() if v}
    result = ZERO
    for pairs, coef in state.items():
        result = result + coef * powers[TLDiagram(n, pairs).closure_loops()]
    return result


def _bracket(b: BraidWord, method: str) -> LaurentInt:
    if method == "state_sum":
        return raw_bracket(b)
    if method == "tl":
        return tl_fold_bracket(b)
    if method == "auto":
        return raw_bracket(b) if len(b) <= 12 else tl_fold_bracket(b)
    raise ValueError(f"unknown bracket method {method!r}")


def reduce(raw: LaurentInt) -> LaurentInt:
    """Raw to reduced convention: exact division by d."""
    try:
        return raw.exact_div(LOOP)
    except ArithmeticError as exc:  # every closure has at least one loop
        raise AssertionError(f"bracket {raw} not divisible by d") from exc


def reduced_bracket(b: BraidWord, method: str = "auto") -> LaurentInt:
    return reduce(_bracket(b, method))


def normalize(reduced: LaurentInt, writhe: int) -> LaurentInt:
    """``(-A^3)^-writhe * reduced``."""
    return CURL ** (-writhe) * reduced


def normalized_f(b: BraidWord, method: str = "auto") -> LaurentInt:
    return normalize(reduced_bracket(b, method), exponent_sum(b))


def jones(b: BraidWord, method: str = "auto") -> QuarterLaurent:
    """Jones polynomial of the closure, ``f`` at ``A = t^(-1/4)``."""
    return substitute_quarter_power(normalized_f(b, method))


@dataclass(frozen=True)
class ExactInvariants:
    raw: LaurentInt
    reduced: LaurentInt
    f: LaurentInt
    jones: QuarterLaurent

    def to_json(self) -> dict:
        def poly(p):
            return {"text": p.to_text(), "terms": p.to_json()}
        return {"raw": poly(self.raw), "reduced": poly(self.reduced),
                "f": poly(self.f), "jones": poly(self.jones)}


def exact_invariants(b: BraidWord, method: str = "auto") -> ExactInvariants:
    raw = _bracket(b, method)
    red = reduce(raw)
    f = normalize(red, exponent_sum(b))
    return ExactInvariants(raw, red, f, substitute_quarter_power(f))
