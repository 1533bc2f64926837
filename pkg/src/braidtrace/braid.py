"""Braid words in signed-integer notation.

A letter ``g`` stands for the generator sigma_|g| (crossing of strands |g| and
|g|+1), with ``sign(g)`` the crossing sign. ``"1 -2 1 -2"`` on 3 strands is
the figure-eight knot.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .errors import BraidError


@dataclass(frozen=True)
class BraidWord:
    n_strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n_strands, int) or self.n_strands < 1:
            raise BraidError(f"n_strands must be a positive integer, got {self.n_strands!r}")
        letters = tuple(int(g) for g in self.letters)
        for g in letters:
            if g == 0:
                raise BraidError("letter 0 is not a generator")
            if abs(g) >= self.n_strands:
                raise BraidError(
                    f"letter {g} needs {abs(g) + 1} strands, braid has {self.n_strands}")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.letters)

    def __add__(self, other: BraidWord) -> BraidWord:
        if other.n_strands != self.n_strands:
            raise BraidError("cannot concatenate braids on different strand counts")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n_strands, tuple(-g for g in reversed(self.letters)))

    def embed(self, n_strands: int) -> BraidWord:
        """Same word on more strands; the extra strands close to unknots."""
        if n_strands < self.n_strands:
            raise BraidError(f"cannot embed a {self.n_strands}-strand braid in {n_strands} strands")
        return BraidWord(n_strands, self.letters)

    def stabilize(self, sign: int = 1) -> BraidWord:
        """Markov stabilization: add a strand and the letter +-n_strands."""
        if sign not in (1, -1):
            raise BraidError("stabilization sign must be +1 or -1")
        n = self.n_strands
        return BraidWord(n + 1, self.letters + (sign * n,))

    def rotate(self, k: int) -> BraidWord:
        if not self.letters:
            return self
        k %= len(self.letters)
        return BraidWord(self.n_strands, self.letters[k:] + self.letters[:k])


_TOKEN = re.compile(r"[\s,]+")


def parse_braid(text: str, n_strands: int) -> BraidWord:
    """Parse whitespace- or comma-separated signed integers.

    >>> parse_braid("1 -2, 1 -2", 3).letters
    (1, -2, 1, -2)
    """
    tokens = [t for t in _TOKEN.split(text.strip()) if t]
    letters = []
    for tok in tokens:
        try:
            letters.append(int(tok))
        except ValueError:
            raise BraidError(f"not an integer braid letter: {tok!r}") from None
    return BraidWord(n_strands, tuple(letters))


def exponent_sum(b: BraidWord | Iterable[int]) -> int:
    """Sum of crossing signs (the writhe of the closure)."""
    return sum(1 if g > 0 else -1 for g in b)


def closure_permutation(b: BraidWord) -> tuple[tuple[int, ...], int]:
    """Strand permutation of ``b`` (0-based images) and the number of link
    components of its closure, i.e. the number of permutation cycles."""
    perm = list(range(b.n_strands))
    for g in b.letters:
        i = abs(g) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * b.n_strands
    cycles = 0
    for start in range(b.n_strands):
        if seen[start]:
            continue
        cycles += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return tuple(perm), cycles
