"""Block decompositions of words, divider restrictors and letter depth.

The 0-decomposition of a word cuts it at every occurrence of a letter that
appears exactly once.  Level k+1 refines level k: inside each block, every
letter that occurs exactly once in the block and nowhere to the left of the
block becomes a new divider.  Divider positions stabilise after at most
len(word) rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .words import Letter, Word

LAMBDA = "λ"

# A divider set is a sorted tuple of 1-based positions. Position 0 stands for
# the empty divider that precedes the whole word.


def _refine(word: Word, dividers: tuple[int, ...]) -> tuple[int, ...]:
    n = len(word)
    out = list(dividers)
    bounds = list(dividers) + [n + 1]
    for j in range(len(dividers)):
        lo, hi = bounds[j], bounds[j + 1]
        # block occupies positions lo+1 .. hi-1
        counts: dict[Letter, int] = {}
        for p in range(lo + 1, hi):
            letter = word[p - 1]
            counts[letter] = counts.get(letter, 0) + 1
        left = {word[p - 1] for p in range(1, lo + 1)}
        for p in range(lo + 1, hi):
            letter = word[p - 1]
            if counts[letter] == 1 and letter not in left:
                out.append(p)
    return tuple(sorted(out))


def _levels(word: Word) -> list[tuple[int, ...]]:
    level0 = tuple(sorted([0] + [p for l in word.content() if word.occ(l) == 1
                                 for p in word.positions(l)]))
    levels = [level0]
    while True:
        nxt = _refine(word, levels[-1])
        if nxt == levels[-1]:
            return levels
        levels.append(nxt)


class Profile:
    """Cached per-word decomposition data shared by the deciders."""

    def __init__(self, word: Word):
        self.word = word
        self.con = word.content()
        self.sim = word.simple()
        self.mul = word.multiple()
        self.ini = word.ini()
        self.simple_part = word.retain(self.sim)
        self.positions = {l: word.positions(l) for l in self.con}
        self.levels = _levels(word)
        self.stab = len(self.levels) - 1

    def dividers(self, k: int) -> tuple[int, ...]:
        if k < 0:
            raise ValueError("decomposition level must be >= 0")
        return self.levels[min(k, self.stab)]

    def restrictor(self, letter: Letter, i: int, k: int) -> Optional[Letter]:
        """Rightmost k-divider strictly left of the i-th occurrence.

        None stands for the empty divider.
        """
        pos = self.positions.get(letter)
        if pos is None or i < 1 or i > len(pos):
            raise ValueError(f"{self.word} has no occurrence {i} of {letter}")
        q = pos[i - 1]
        best = 0
        for p in self.dividers(k):
            if p < q:
                best = p
            else:
                break
        return None if best == 0 else self.word[best - 1]

    def depth(self, letter: Letter) -> float:
        """Least k such that the first two occurrences fall into different
        (k-1)-blocks; 0 for a letter occurring once; inf if they never split.
        """
        if letter not in self.con:
            raise ValueError(f"{letter} does not occur in {self.word}")
        if letter in self.sim:
            return 0
        for lvl in range(self.stab + 1):
            if self.restrictor(letter, 1, lvl) != self.restrictor(letter, 2, lvl):
                return lvl + 1
        return math.inf

    def is_divider(self, letter: Letter, k: int) -> bool:
        if letter not in self.con:
            return False
        first = self.positions[letter][0]
        return first in self.dividers(k)

    def depth_profile(self) -> dict[Letter, float]:
        return {l: self.depth(l) for l in self.con}


@lru_cache(maxsize=65536)
def profile(word: Word) -> Profile:
    return Profile(word)


@dataclass(frozen=True)
class Decomposition:
    """A word cut into dividers and blocks at a fixed level."""

    word: Word
    k: int
    divider_positions: tuple[int, ...]

    def divider_letters(self) -> tuple[Optional[Letter], ...]:
        return tuple(None if p == 0 else self.word[p - 1]
                     for p in self.divider_positions)

    def blocks(self) -> tuple[Word, ...]:
        bounds = list(self.divider_positions) + [len(self.word) + 1]
        return tuple(self.word[bounds[j]:bounds[j + 1] - 1]
                     for j in range(len(self.divider_positions)))

    def render(self) -> str:
        parts = []
        for d, b in zip(self.divider_letters(), self.blocks()):
            parts.append(LAMBDA if d is None else str(d))
            parts.append(f"[{b}]" if len(b) else f"[{LAMBDA}]")
        return "·".join(parts)

    def check(self) -> None:
        """Structural invariants: dividers are first occurrences and the
        pieces concatenate back to the word."""
        assert self.divider_positions[0] == 0
        rebuilt: list[Letter] = []
        for p, b in zip(self.divider_positions, self.blocks()):
            if p != 0:
                letter = self.word[p - 1]
                assert self.word.positions(letter)[0] == p
                rebuilt.append(letter)
            rebuilt.extend(b.letters)
        assert Word(rebuilt) == self.word


def decompose(word: Word, k: Optional[int] = None) -> Decomposition:
    """The k-decomposition of word; k defaults to the stabilisation level."""
    prof = profile(word)
    if k is None:
        k = prof.stab
    return Decomposition(word, k, prof.dividers(k))


def stabilization(word: Word) -> int:
    return profile(word).stab


def restrictor(word: Word, letter: Letter, i: int, k: int) -> Optional[Letter]:
    return profile(word).restrictor(letter, i, k)


def depth(word: Word, letter: Letter) -> float:
    return profile(word).depth(letter)


def depth_profile(word: Word) -> dict[Letter, float]:
    return profile(word).depth_profile()


def render_depths(word: Word) -> str:
    """Depths with multiple letters first, each group in first-occurrence order."""
    prof = profile(word)
    ordered = [l for l in prof.ini if l in prof.mul] + \
              [l for l in prof.ini if l in prof.sim]
    def show(d: float) -> str:
        return "inf" if d == math.inf else str(int(d))
    return " ".join(f"{l}:{show(prof.depth(l))}" for l in ordered)
