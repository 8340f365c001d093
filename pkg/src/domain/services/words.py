"""Finite-word primitives: reflection, palindromes, Parikh vectors, factors, runs.

All functions are pure and operate on immutable Words.
"""

import logging

import numpy as np

from src.domain.errors import AlphabetError
from src.domain.schemas.word import Alphabet, FactorSet, OccurrenceSet, ParikhVector, Word

logger = logging.getLogger(__name__)


def reflect(w: Word) -> Word:
    """Return the reflection (mirror image) of ``w``."""
    return Word(w.alphabet, w.letters[::-1])


def is_palindrome(w: Word) -> bool:
    """True iff ``w`` equals its reflection; the empty word is a palindrome."""
    return w.letters == w.letters[::-1]


def parikh_vector(w: Word, alphabet: Alphabet | None = None) -> ParikhVector:
    """Count occurrences of each alphabet letter in ``w``.

    Args:
        w: Word to count.
        alphabet: Alphabet fixing the coordinate order; defaults to ``w.alphabet``.

    Raises:
        AlphabetError: if ``w`` uses a letter outside ``alphabet``.
    """
    if alphabet is not None and alphabet != w.alphabet:
        w = w.over(alphabet)
    counts = np.bincount(np.frombuffer(w.letters, dtype=np.uint8), minlength=w.alphabet.size)
    return ParikhVector(tuple(int(c) for c in counts))


def windows(letters: bytes, n: int) -> set[bytes]:
    """Distinct length-``n`` blocks of a packed word."""
    return {letters[i : i + n] for i in range(len(letters) - n + 1)}


def factor_set(host: Word, n: int) -> FactorSet:
    """Distinct length-``n`` factors of ``host`` in lexicographic order.

    Requesting ``n > |host|`` yields an empty set with ``truncated=True``
    instead of an error, so analyzers can ask past the prefix and report it.
    """
    if n < 0:
        raise ValueError(f"Factor length must be non-negative, got {n}")
    if n > len(host):
        logger.warning(f"Factor length {n} exceeds host length {len(host)}; empty factor set")
        return FactorSet(n=n, factors=(), truncated=True)
    blocks = sorted(windows(host.letters, n))
    return FactorSet(n=n, factors=tuple(Word(host.alphabet, b) for b in blocks))


def occurrences(host: Word, factor: Word) -> OccurrenceSet:
    """All (possibly overlapping) start positions of ``factor`` in ``host``."""
    if len(factor) < 1:
        raise ValueError("Factor must be non-empty")
    if factor.alphabet != host.alphabet:
        try:
            factor = factor.over(host.alphabet)
        except AlphabetError:
            return OccurrenceSet(factor=factor, positions=())

    positions: list[int] = []
    letters, target = host.letters, factor.letters
    start = letters.find(target)
    while start != -1:
        positions.append(start)
        start = letters.find(target, start + 1)
    return OccurrenceSet(factor=factor, positions=tuple(positions))


def max_run(host: Word, x: str) -> int:
    """Length of the longest block of consecutive ``x`` in ``host`` (0 if absent)."""
    if x not in host.alphabet:
        return 0
    code = host.alphabet.index(x)
    best = current = 0
    for letter in host.letters:
        if letter == code:
            current += 1
            if current > best:
                best = current
        else:
            current = 0
    return best


def max_power(host: Word, block: Word) -> int:
    """Largest k such that ``block`` repeated k times is a factor of ``host``."""
    if len(block) < 1:
        raise ValueError("Block must be non-empty")
    step = len(block)
    # copies[p] = number of back-to-back copies of block starting at p
    copies: dict[int, int] = {}
    for p in reversed(occurrences(host, block).positions):
        copies[p] = 1 + copies.get(p + step, 0)
    return max(copies.values(), default=0)


def exchange(w: Word) -> Word:
    """Apply the letter transposition E (a <-> b) position-wise on a binary word."""
    if w.alphabet.size != 2:
        raise AlphabetError(
            f"The exchange map is defined on binary words only, alphabet has "
            f"{w.alphabet.size} letters"
        )
    return Word(w.alphabet, w.letters.translate(bytes([1, 0]) + bytes(range(2, 256))))


def smallest_period(w: Word) -> int:
    """Smallest p >= 1 with w[i] = w[i+p] for all valid i (|w| for aperiodic words)."""
    n = len(w)
    if n == 0:
        return 0
    letters = w.letters
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k and letters[i] != letters[k]:
            k = border[k - 1]
        if letters[i] == letters[k]:
            k += 1
        border[i] = k
    return n - border[-1]


def relabel(w: Word, alphabet: Alphabet) -> Word:
    """Read the letter indices of ``w`` over another alphabet of the same size."""
    if alphabet.size != w.alphabet.size:
        raise AlphabetError(
            f"Cannot relabel a word over {w.alphabet} onto {alphabet}: sizes differ"
        )
    return Word(alphabet, w.letters)
