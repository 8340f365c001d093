"""Online indexes over a packed word: suffix automaton and palindromic tree.

Both structures are built letter by letter, so the counts for the half prefix
are read off at a checkpoint during the same pass that builds the full index.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

logger = logging.getLogger(__name__)


class SuffixAutomaton:
    """Minimal automaton of all factors, built online.

    State v recognises the factors of lengths (length[link[v]], length[v]], so the
    number of distinct length-n factors is the number of states whose interval
    contains n.
    """

    def __init__(self) -> None:
        self.length: list[int] = [0]
        self.link: list[int] = [-1]
        self.transitions: list[dict[int, int]] = [{}]
        self.last = 0

    def extend(self, letter: int) -> None:
        current = len(self.length)
        self.length.append(self.length[self.last] + 1)
        self.link.append(-1)
        self.transitions.append({})

        p = self.last
        while p != -1 and letter not in self.transitions[p]:
            self.transitions[p][letter] = current
            p = self.link[p]

        if p == -1:
            self.link[current] = 0
        else:
            q = self.transitions[p][letter]
            if self.length[q] == self.length[p] + 1:
                self.link[current] = q
            else:
                clone = len(self.length)
                self.length.append(self.length[p] + 1)
                self.link.append(self.link[q])
                self.transitions.append(self.transitions[q].copy())
                while p != -1 and self.transitions[p].get(letter) == q:
                    self.transitions[p][letter] = clone
                    p = self.link[p]
                self.link[q] = clone
                self.link[current] = clone
        self.last = current

    def factor_counts(self, n_max: int) -> list[int]:
        """Distinct factors of each length 0..n_max of the word read so far."""
        diff = [0] * (n_max + 2)
        for v in range(1, len(self.length)):
            lo = self.length[self.link[v]] + 1
            hi = min(self.length[v], n_max)
            if lo <= hi:
                diff[lo] += 1
                diff[hi + 1] -= 1
        counts = [1]
        running = 0
        for n in range(1, n_max + 1):
            running += diff[n]
            counts.append(running)
        return counts


@dataclass
class PalindromeTree:
    """Eertree: one node per distinct non-empty palindrome of the word read so far.

    Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
    ``created_at[v]`` is the position at whose end palindrome v first occurred.
    """

    letters: bytearray = field(default_factory=bytearray)
    length: list[int] = field(default_factory=lambda: [-1, 0])
    link: list[int] = field(default_factory=lambda: [0, 0])
    transitions: list[dict[int, int]] = field(default_factory=lambda: [{}, {}])
    created_at: list[int] = field(default_factory=lambda: [-1, -1])
    last: int = 1

    def _suffix_palindrome(self, v: int, i: int, letter: int) -> int:
        while True:
            start = i - 1 - self.length[v]
            if start >= 0 and self.letters[start] == letter:
                return v
            v = self.link[v]

    def extend(self, letter: int) -> bool:
        """Append a letter; True iff it ends a palindrome never seen before."""
        i = len(self.letters)
        self.letters.append(letter)
        parent = self._suffix_palindrome(self.last, i, letter)
        if letter in self.transitions[parent]:
            self.last = self.transitions[parent][letter]
            return False

        node = len(self.length)
        self.length.append(self.length[parent] + 2)
        self.transitions.append({})
        self.created_at.append(i)
        if self.length[node] == 1:
            self.link.append(1)
        else:
            ancestor = self._suffix_palindrome(self.link[parent], i, letter)
            self.link.append(self.transitions[ancestor][letter])
        self.transitions[parent][letter] = node
        self.last = node
        return True

    def palindrome_counts(self, n_max: int, before: int | None = None) -> list[int]:
        """Distinct palindromes of each length 0..n_max among those created before ``before``."""
        counts = [0] * (n_max + 1)
        counts[0] = 1
        for v in range(2, len(self.length)):
            if before is not None and self.created_at[v] >= before:
                continue
            if self.length[v] <= n_max:
                counts[self.length[v]] += 1
        return counts


@dataclass(frozen=True)
class FactorIndex:
    """Factor and palindrome counts per length on the full prefix and on its half."""

    host_length: int
    n_max: int
    factors: list[int]
    factors_half: list[int]
    palindromes: list[int]
    palindromes_half: list[int]
    new_palindrome: list[bool]

    @classmethod
    def build(cls, letters: bytes, n_max: int) -> FactorIndex:
        """Index ``letters`` for lengths up to ``n_max`` (counts for n > |letters| are 0)."""
        half = len(letters) // 2
        automaton = SuffixAutomaton()
        tree = PalindromeTree()
        new_palindrome: list[bool] = []
        factors_half: list[int] | None = None

        for i, letter in enumerate(letters):
            if i == half:
                factors_half = automaton.factor_counts(n_max)
            automaton.extend(letter)
            new_palindrome.append(tree.extend(letter))
        if factors_half is None:
            factors_half = automaton.factor_counts(n_max)

        index = cls(
            host_length=len(letters),
            n_max=n_max,
            factors=automaton.factor_counts(n_max),
            factors_half=factors_half,
            palindromes=tree.palindrome_counts(n_max),
            palindromes_half=tree.palindrome_counts(n_max, before=half),
            new_palindrome=new_palindrome,
        )
        logger.debug(
            f"Indexed {len(letters)} letters: {len(automaton.length)} automaton states, "
            f"{len(tree.length) - 2} palindromes"
        )
        return index
