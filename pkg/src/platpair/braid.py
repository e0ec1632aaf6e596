"""Braid words on 2n strands, plat admissibility, and move constructors.

A plat-admissible braid preserves the alternating puncture colors
(0, N+1, 0, N+1, ...), equivalently its induced permutation maps odd
positions to odd positions and even to even.  The multiplicative strand
character assigns a monomial in q^(1/2) to each braid by a per-crossing
rule depending on the colors of the two strands that meet there.

Letters are integers k with 1 <= |k| < strand_count; k > 0 is the positive
half twist exchanging strands k, k+1 and k < 0 its inverse.  Words read
left to right correspond to braid diagrams read top to bottom.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .laurent import LaurentPoly


class BraidError(ValueError):
    """Malformed braid input (bad token, index out of range, too few strands)."""


@dataclass(frozen=True)
class BraidWord:
    """A word in the braid group generators on a fixed strand count."""

    strand_count: int
    letters: Tuple[int, ...]

    def __post_init__(self):
        if self.strand_count < 2 or self.strand_count % 2 != 0:
            raise BraidError(f"strand count must be a positive even integer, got {self.strand_count}")
        for k in self.letters:
            if k == 0 or abs(k) >= self.strand_count:
                raise BraidError(f"generator index {k} out of range for {self.strand_count} strands")

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: "BraidWord") -> "BraidWord":
        if other.strand_count != self.strand_count:
            raise BraidError("cannot concatenate words on different strand counts")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strand_count, tuple(-k for k in reversed(self.letters)))

    def permutation(self) -> Tuple[int, ...]:
        """perm[i] = final position of the strand starting at position i (0-based)."""
        pos = list(range(self.strand_count))
        for k in self.letters:
            i = abs(k) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        # pos[j] = which start index sits at position j after the word; invert.
        perm = [0] * self.strand_count
        for j, start in enumerate(pos):
            perm[start] = j
        return tuple(perm)

    def free_reduce(self) -> "BraidWord":
        """Cancel adjacent sigma_k sigma_k^-1 pairs.  Not applied implicitly."""
        out: List[int] = []
        for k in self.letters:
            if out and out[-1] == -k:
                out.pop()
            else:
                out.append(k)
        return BraidWord(self.strand_count, tuple(out))


def parse_braid(text: str, strand_count: int) -> BraidWord:
    """Parse whitespace- or comma-separated nonzero integer tokens."""
    letters: List[int] = []
    for tok in text.replace(",", " ").split():
        try:
            k = int(tok)
        except ValueError:
            raise BraidError(f"malformed braid token {tok!r}") from None
        if k == 0:
            raise BraidError("generator index 0 is not a valid letter")
        if abs(k) >= strand_count:
            raise BraidError(f"generator index {k} out of range for {strand_count} strands")
        letters.append(k)
    return BraidWord(strand_count, tuple(letters))


def is_plat_admissible(word: BraidWord, N: int = 1) -> bool:
    """True iff the induced permutation preserves position parity."""
    return all(i % 2 == j % 2 for i, j in enumerate(word.permutation()))


@dataclass(frozen=True)
class PlatBraid:
    """A plat-admissible braid word together with the color depth N."""

    word: BraidWord
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise BraidError(f"color depth N must be >= 1, got {self.N}")
        if not is_plat_admissible(self.word, self.N):
            raise BraidError("braid does not preserve the alternating puncture colors")

    @property
    def n(self) -> int:
        return self.word.strand_count // 2

    @property
    def strand_count(self) -> int:
        return self.word.strand_count

    @property
    def mobile_count(self) -> int:
        return self.N * self.n

    def inverse(self) -> "PlatBraid":
        return PlatBraid(self.word.inverse(), self.N)

    def key(self) -> Tuple:
        return (self.word.strand_count, self.N, self.word.letters)


def position_colors(strand_count: int, N: int) -> Tuple[int, ...]:
    """Puncture colors by position: 0 at odd positions, N+1 at even ones (1-based)."""
    return tuple(0 if i % 2 == 0 else N + 1 for i in range(strand_count))


def strand_character(braid: PlatBraid) -> LaurentPoly:
    """Monomial character of the plat braid.

    Each positive crossing contributes q^(N/2) when the two strands carry the
    same color and q^(-(N+1)/2) when the colors differ; negative crossings
    contribute the reciprocals.  Colors are tracked through the running
    permutation, never stored per letter.
    """
    N = braid.N
    colors = list(position_colors(braid.strand_count, N))
    half = 0
    for k in braid.word.letters:
        i = abs(k) - 1
        same = colors[i] == colors[i + 1]
        step = N if same else -(N + 1)
        half += step if k > 0 else -step
        colors[i], colors[i + 1] = colors[i + 1], colors[i]
    return LaurentPoly.q_power(half)


# -- move constructors ----------------------------------------------------

def _prepend(braid: PlatBraid, prefix: Sequence[int]) -> PlatBraid:
    word = BraidWord(braid.strand_count, tuple(prefix) + braid.word.letters)
    return PlatBraid(word, braid.N)

def _append(braid: PlatBraid, suffix: Sequence[int]) -> PlatBraid:
    word = BraidWord(braid.strand_count, braid.word.letters + tuple(suffix))
    return PlatBraid(word, braid.N)


def sigma_prime_letters(i: int) -> Tuple[int, ...]:
    """The height-preserving move word sigma_2i sigma_2i+1 sigma_2i-1 sigma_2i."""
    return (2 * i, 2 * i + 1, 2 * i - 1, 2 * i)


TWIST_2112 = (2, 1, 1, 2)


def apply_move(braid: PlatBraid, move: str, i: int = 1) -> PlatBraid:
    """Apply a named invariance move; always returns a plat-admissible braid.

    Moves: left/right_sigma1_sq, left/right_sigma_prime (index i),
    left/right_2112, stabilize.
    """
    if move == "left_sigma1_sq":
        return _prepend(braid, (1, 1))
    if move == "right_sigma1_sq":
        return _append(braid, (1, 1))
    if move == "left_sigma_prime":
        _check_sigma_prime_index(braid, i)
        return _prepend(braid, sigma_prime_letters(i))
    if move == "right_sigma_prime":
        _check_sigma_prime_index(braid, i)
        return _append(braid, sigma_prime_letters(i))
    if move == "left_2112":
        _check_strands(braid, 4)
        return _prepend(braid, TWIST_2112)
    if move == "right_2112":
        _check_strands(braid, 4)
        return _append(braid, TWIST_2112)
    if move == "stabilize":
        return stabilize(braid)
    raise BraidError(f"unknown move {move!r}")


def _check_strands(braid: PlatBraid, needed: int) -> None:
    if braid.strand_count < needed:
        raise BraidError(f"move needs at least {needed} strands, braid has {braid.strand_count}")


def _check_sigma_prime_index(braid: PlatBraid, i: int) -> None:
    if i < 1 or 2 * i + 1 >= braid.strand_count:
        raise BraidError(f"sigma-prime index {i} out of range for {braid.strand_count} strands")


def stabilize(braid: PlatBraid) -> PlatBraid:
    """Add a trivial bridge on the right: (s_{n+1}^-1 s_n s_{n+1}) then the
    original word, on two more strands."""
    n = braid.n
    word = BraidWord(
        braid.strand_count + 2,
        (-(n + 1), n, n + 1) + braid.word.letters,
    )
    return PlatBraid(word, braid.N)


def skein_siblings(braid: PlatBraid) -> Tuple[PlatBraid, PlatBraid]:
    """(beta_plus, beta_minus) = (s2^-1 s1 s2 . beta, s2^-1 s1^-1 s2 . beta)."""
    _check_strands(braid, 4)
    return _prepend(braid, (-2, 1, 2)), _prepend(braid, (-2, -1, 2))


# -- random sampling -------------------------------------------------------

def random_plat_braid(rng: random.Random, strand_count: int, max_length: int, N: int = 1) -> PlatBraid:
    """Uniform letters of a random bounded length, rejection-sampled for
    plat admissibility.  Deterministic for a fixed Random state."""
    gens = [k for k in range(1, strand_count)]
    while True:
        length = rng.randint(1, max_length)
        letters = tuple(rng.choice(gens) * rng.choice((1, -1)) for _ in range(length))
        word = BraidWord(strand_count, letters)
        if is_plat_admissible(word, N):
            return PlatBraid(word, N)
