"""Words over a countable alphabet of indexed letters, plus identities."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence


class Letter(NamedTuple):
    base: str
    index: Optional[int] = None

    def __str__(self) -> str:
        if self.index is None:
            return self.base
        return f"{self.base}{self.index}"

    def __repr__(self) -> str:
        return f"Letter({str(self)!r})"


def letter_key(letter: Letter) -> tuple[str, int]:
    """Total order on letters: base first, unindexed before indexed."""
    return (letter.base, -1 if letter.index is None else letter.index)


def L(text: str) -> Letter:
    """Shorthand letter constructor, e.g. L("x2")."""
    m = re.fullmatch(r"([a-z])(\d*)", text)
    if m is None:
        raise ValueError(f"bad letter: {text!r}")
    base, digits = m.groups()
    return Letter(base, int(digits) if digits else None)


_TERM = re.compile(r"([a-z])(\d*)(?:\^(\d+))?")


class Word:
    """Immutable finite word. The empty word renders as "1"."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", tuple(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(str(l) for l in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        return (len(self.letters), tuple(letter_key(l) for l in self.letters))

    # containment and occurrence counts

    def content(self) -> frozenset[Letter]:
        return frozenset(self.letters)

    def occ(self, letter: Letter) -> int:
        return self.letters.count(letter)

    def positions(self, letter: Letter) -> tuple[int, ...]:
        """1-based positions of all occurrences of letter."""
        return tuple(i + 1 for i, l in enumerate(self.letters) if l == letter)

    def ell(self, letter: Letter, i: int) -> int:
        """Length of the shortest prefix containing i occurrences of letter."""
        pos = self.positions(letter)
        if i < 1 or i > len(pos):
            raise ValueError(f"{self} has no occurrence {i} of {letter}")
        return pos[i - 1]

    def simple(self) -> frozenset[Letter]:
        return frozenset(l for l in self.content() if self.occ(l) == 1)

    def multiple(self) -> frozenset[Letter]:
        return frozenset(l for l in self.content() if self.occ(l) >= 2)

    def max_occ(self) -> int:
        return max((self.occ(l) for l in self.content()), default=0)

    def ini(self) -> tuple[Letter, ...]:
        """Letters in order of first occurrence."""
        seen: dict[Letter, None] = {}
        for l in self.letters:
            seen.setdefault(l)
        return tuple(seen)

    # derived words

    def delete(self, letters: Iterable[Letter]) -> "Word":
        drop = frozenset(letters)
        return Word(l for l in self.letters if l not in drop)

    def retain(self, letters: Iterable[Letter]) -> "Word":
        keep = frozenset(letters)
        return Word(l for l in self.letters if l in keep)

    def reverse(self) -> "Word":
        return Word(reversed(self.letters))


EMPTY = Word()


def word(*texts: str) -> Word:
    """Build a word from letter shorthands, e.g. word("x", "y1", "x")."""
    return Word(L(t) for t in texts)


def parse_word(text: str) -> Word:
    """Parse the word grammar: "1" or a sequence of letter terms.

    A term is a lowercase letter, optional digits (the letter index) and an
    optional positive exponent, e.g. "x", "y12", "x^3".  Whitespace is
    ignored.  A zero exponent is a syntax error.
    """
    squeezed = re.sub(r"\s+", "", text)
    if squeezed == "1":
        return EMPTY
    if not squeezed:
        raise ValueError("empty input is not a word; write 1 for the empty word")
    letters: list[Letter] = []
    pos = 0
    while pos < len(squeezed):
        m = _TERM.match(squeezed, pos)
        if m is None:
            raise ValueError(f"unexpected character {squeezed[pos]!r} in {text!r}")
        base, digits, exp = m.groups()
        letter = Letter(base, int(digits) if digits else None)
        count = 1
        if exp is not None:
            count = int(exp)
            if count == 0:
                raise ValueError(f"zero exponent in {text!r}")
        letters.extend([letter] * count)
        pos = m.end()
    return Word(letters)


Substitution = Mapping[Letter, Word]


def substitute(w: Word, xi: Substitution) -> Word:
    """Apply the endomorphism xi to w. Unlisted letters map to themselves.

    Mapping a letter to the empty word is allowed.
    """
    out: list[Letter] = []
    for l in w:
        image = xi.get(l)
        if image is None:
            out.append(l)
        else:
            out.extend(image.letters)
    return Word(out)


@dataclass(frozen=True)
class Identity:
    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"

    def content(self) -> frozenset[Letter]:
        return self.lhs.content() | self.rhs.content()

    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def reverse(self) -> "Identity":
        return Identity(self.lhs.reverse(), self.rhs.reverse())

    def swap(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    def substitute(self, xi: Substitution) -> "Identity":
        return Identity(substitute(self.lhs, xi), substitute(self.rhs, xi))


def parse_identity(text: str) -> Identity:
    parts = re.split(r"=|≈", text)
    if len(parts) != 2:
        raise ValueError(f"an identity needs exactly one '=': {text!r}")
    return Identity(parse_word(parts[0]), parse_word(parts[1]))


def identity(lhs: str, rhs: str) -> Identity:
    return Identity(parse_word(lhs), parse_word(rhs))


def iter_words(alphabet: Sequence[Letter], max_len: int, min_len: int = 0) -> Iterator[Word]:
    """All words over alphabet, by length then left-to-right alphabet order."""
    for n in range(min_len, max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            yield Word(combo)


def fresh_letter(base: str, used: Iterable[Letter]) -> Letter:
    """Smallest-indexed letter with the given base not in used."""
    taken = {l.index for l in used if l.base == base}
    if None not in taken:
        return Letter(base)
    i = 0
    while i in taken:
        i += 1
    return Letter(base, i)
