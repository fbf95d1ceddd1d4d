"""Finite monoids, divisibility oracles and identity satisfaction."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Mapping, Optional

from .words import Identity, Letter, Word, letter_key


class Monoid:
    """A finite monoid given by a multiplication table over element labels."""

    def __init__(self, name: str, labels: list[str], table: list[list[int]],
                 identity_index: int = 0):
        n = len(labels)
        assert len(table) == n and all(len(row) == n for row in table)
        self.name = name
        self.labels = list(labels)
        self.table = [list(row) for row in table]
        self.identity_index = identity_index
        self.index = {label: i for i, label in enumerate(labels)}
        assert len(self.index) == n, "duplicate element labels"

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        return f"Monoid({self.name}, {len(self)} elements)"

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def check(self) -> None:
        """Assert associativity and the identity laws."""
        n = len(self)
        e = self.identity_index
        for i in range(n):
            assert self.mul(e, i) == i and self.mul(i, e) == i
        for i in range(n):
            for j in range(n):
                ij = self.mul(i, j)
                for k in range(n):
                    assert self.mul(ij, k) == self.mul(i, self.mul(j, k)), (
                        self.labels[i], self.labels[j], self.labels[k])

    def evaluate(self, w: Word, assignment: Mapping[Letter, int]) -> int:
        acc = self.identity_index
        for letter in w:
            acc = self.table[acc][assignment[letter]]
        return acc

    def _assignments(self, letters: tuple[Letter, ...]) -> Iterator[dict[Letter, int]]:
        for values in itertools.product(range(len(self)), repeat=len(letters)):
            yield dict(zip(letters, values))

    def sorted_letters(self, ident: Identity) -> tuple[Letter, ...]:
        return tuple(sorted(ident.content(), key=letter_key))

    def find_violation(self, ident: Identity,
                       max_letters: int = 4) -> Optional[dict[Letter, int]]:
        """First assignment on which the two sides evaluate differently."""
        letters = self.sorted_letters(ident)
        if len(letters) > max_letters:
            raise ValueError(
                f"identity {ident} uses {len(letters)} letters, above the "
                f"cap of {max_letters}; pass a larger max_letters to allow "
                f"{len(self)}**{len(letters)} evaluations")
        for assignment in self._assignments(letters):
            if self.evaluate(ident.lhs, assignment) != self.evaluate(ident.rhs, assignment):
                return assignment
        return None

    def satisfies(self, ident: Identity, max_letters: int = 4) -> bool:
        return self.find_violation(ident, max_letters) is None

    def describe_assignment(self, assignment: Mapping[Letter, int]) -> str:
        return ", ".join(f"{l}={self.labels[i]}"
                         for l, i in sorted(assignment.items(),
                                            key=lambda kv: letter_key(kv[0])))

    def dump(self) -> str:
        width = max(len(l) for l in self.labels)
        head = " " * width + " | " + " ".join(l.ljust(width) for l in self.labels)
        lines = [head, "-" * len(head)]
        for i, row in enumerate(self.table):
            cells = " ".join(self.labels[j].ljust(width) for j in row)
            lines.append(f"{self.labels[i].ljust(width)} | {cells}")
        return "\n".join(lines)


class ReesQuotient(Monoid):
    """Monoid of all contiguous subwords of one or more words, with 0 for
    any product that is not itself a subword."""

    def __init__(self, *ws: Word):
        assert ws, "at least one generator word required"
        subwords: set[Word] = set()
        for w in ws:
            n = len(w)
            for i in range(n):
                for j in range(i + 1, n + 1):
                    subwords.add(w[i:j])
        ordered = sorted(subwords, key=lambda u: u.sort_key())
        words = [Word()] + ordered
        labels = ["1"] + [str(u) for u in ordered] + ["0"]
        zero = len(labels) - 1
        index_of = {u: i for i, u in enumerate(words)}
        table: list[list[int]] = []
        for u in words:
            row = []
            for v in words:
                row.append(index_of.get(u + v, zero))
            table.append(row)
        table.append([zero] * len(labels))
        for row in table[:-1]:
            row.append(zero)
        super().__init__(f"S({','.join(str(w) for w in ws)})", labels, table)
        self.words = ws
        self.word = ws[0]
        self.zero_index = zero
        self.element_words = words  # parallel to labels[:-1]

    def letter_index(self, letter: Letter) -> int:
        """Index of the one-letter subword, or of zero if absent."""
        return self.index.get(str(letter), self.zero_index)


@lru_cache(maxsize=256)
def rees_quotient(*ws: Word) -> ReesQuotient:
    return ReesQuotient(*ws)


def oracle_decide(ws, ident: Identity, max_letters: int = 4) -> bool:
    """Exact membership of ident in the variety generated by S(ws)."""
    return rees_quotient(*ws).satisfies(ident, max_letters)


def _monoid_from_products(name: str, labels: list[str],
                          products: dict[tuple[str, str], str]) -> Monoid:
    """Table builder; "1" is the identity and "0", if present, absorbs."""
    def prod(a: str, b: str) -> str:
        if a == "1":
            return b
        if b == "1":
            return a
        if a == "0" or b == "0":
            return "0"
        return products[(a, b)]

    index = {l: i for i, l in enumerate(labels)}
    table = [[index[prod(a, b)] for b in labels] for a in labels]
    return Monoid(name, labels, table, identity_index=index["1"])


@lru_cache(maxsize=None)
def p1() -> Monoid:
    """Four elements: an idempotent e and a-null element a with ea = 0, ae = a."""
    return _monoid_from_products("P1", ["1", "e", "a", "0"], {
        ("e", "e"): "e",
        ("e", "a"): "0",
        ("a", "e"): "a",
        ("a", "a"): "0",
    })


@lru_cache(maxsize=None)
def b21() -> Monoid:
    """The six element Brandt monoid."""
    return _monoid_from_products("B21", ["1", "a", "b", "ab", "ba", "0"], {
        ("a", "a"): "0",
        ("a", "b"): "ab",
        ("a", "ab"): "0",
        ("a", "ba"): "a",
        ("b", "a"): "ba",
        ("b", "b"): "0",
        ("b", "ab"): "b",
        ("b", "ba"): "0",
        ("ab", "a"): "a",
        ("ab", "b"): "0",
        ("ab", "ab"): "ab",
        ("ab", "ba"): "0",
        ("ba", "a"): "0",
        ("ba", "b"): "b",
        ("ba", "ab"): "0",
        ("ba", "ba"): "ba",
    })


@lru_cache(maxsize=None)
def k5() -> Monoid:
    """Five elements 1, a, b, ba, bb with aa = ab = a and bba = bbb = bb."""
    return _monoid_from_products("K5", ["1", "a", "b", "ba", "bb"], {
        ("a", "a"): "a",
        ("a", "b"): "a",
        ("a", "ba"): "a",
        ("a", "bb"): "a",
        ("b", "a"): "ba",
        ("b", "b"): "bb",
        ("b", "ba"): "bb",
        ("b", "bb"): "bb",
        ("ba", "a"): "ba",
        ("ba", "b"): "ba",
        ("ba", "ba"): "ba",
        ("ba", "bb"): "ba",
        ("bb", "a"): "bb",
        ("bb", "b"): "bb",
        ("bb", "ba"): "bb",
        ("bb", "bb"): "bb",
    })


_NAMED_MONOIDS = {"P1": p1, "B21": b21, "K5": k5}


def named_monoid(name: str) -> Monoid:
    """P1, B21, K5, or S(<word>) for a subword quotient."""
    if name in _NAMED_MONOIDS:
        return _NAMED_MONOIDS[name]()
    if name.startswith("S(") and name.endswith(")"):
        from .words import parse_word
        return rees_quotient(parse_word(name[2:-1]))
    raise KeyError(f"unknown monoid {name!r}; use P1, B21, K5 or S(<word>)")


def isoterm_search(w: Word, decide, bound: Optional[int] = None):
    """Look for a different word with the same content that decide deems
    equal to w, trying every candidate with at most bound occurrences per
    letter.  Returns the first hit in (length, alphabet) order, or None.

    decide may be a callable Identity -> bool or a Monoid (then table
    satisfaction is the test; for a subword quotient the candidates are
    prescreened by evaluating both sides under the letter-to-itself
    substitution, which can only discard words the full check would
    reject).  None does not prove w is an isoterm, only that no witness
    exists within the bound.
    """
    from .words import Identity, iter_words

    alphabet = tuple(sorted(w.content(), key=letter_key))
    if not alphabet:
        return None
    if bound is None:
        bound = w.max_occ() + 2
    if bound < w.max_occ():
        raise ValueError(f"bound {bound} is below the occurrence count of {w}")

    prescreen = None
    if isinstance(decide, ReesQuotient):
        monoid = decide
        phi = {letter: monoid.letter_index(letter) for letter in alphabet}
        target = monoid.evaluate(w, phi)
        prescreen = lambda u: monoid.evaluate(u, phi) == target
    if isinstance(decide, Monoid):
        monoid = decide
        cap = max(4, len(alphabet))
        test = lambda ident: monoid.satisfies(ident, max_letters=cap)
    else:
        test = decide

    content = w.content()
    for u in iter_words(alphabet, bound * len(alphabet), min_len=len(alphabet)):
        if u == w or u.content() != content:
            continue
        if any(u.occ(letter) > bound for letter in alphabet):
            continue
        if prescreen is not None and not prescreen(u):
            continue
        if test(Identity(w, u)):
            return u
    return None
