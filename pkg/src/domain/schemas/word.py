"""Finite-word value types.

Letters are stored as indices into an ordered Alphabet, packed into ``bytes``.
Slicing, hashing and comparison therefore run at C speed, and the lexicographic
order of the packed bytes is the lexicographic order induced by the alphabet.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field

from src.domain.errors import AlphabetError

MAX_ALPHABET_SIZE = 256


@dataclass(frozen=True, slots=True)
class Alphabet:
    """Ordered finite set of single-character symbols.

    The order is part of the identity: Parikh coordinates and factor
    iteration order both follow it.
    """

    letters: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if not self.letters:
            raise AlphabetError("Alphabet must contain at least one letter")
        if len(self.letters) > MAX_ALPHABET_SIZE:
            raise AlphabetError(f"Alphabet larger than {MAX_ALPHABET_SIZE} letters")
        if len(set(self.letters)) != len(self.letters):
            raise AlphabetError(f"Alphabet letters must be distinct: {''.join(self.letters)}")
        for letter in self.letters:
            if len(letter) != 1:
                raise AlphabetError(f"Alphabet letters must be single characters, got '{letter}'")
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(self.letters)})

    @classmethod
    def of(cls, letters: str) -> Alphabet:
        """Build an alphabet from a string, e.g. ``Alphabet.of("ab")``."""
        return cls(tuple(letters))

    @property
    def size(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self._index

    def __str__(self) -> str:
        return "".join(self.letters)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(
                f"Letter '{symbol}' is not in alphabet {{{','.join(self.letters)}}}"
            ) from None

    def encode(self, text: str) -> bytes:
        """Translate symbols to packed letter indices."""
        return bytes(self.index(symbol) for symbol in text)

    def decode(self, letters: bytes) -> str:
        return "".join(self.letters[i] for i in letters)


BINARY = Alphabet.of("ab")


@dataclass(frozen=True, slots=True)
class Word:
    """Finite sequence of letters over an alphabet; length 0 is the empty word."""

    alphabet: Alphabet
    letters: bytes = b""

    def __post_init__(self) -> None:
        if self.letters and max(self.letters) >= self.alphabet.size:
            raise AlphabetError(
                f"Word uses letter index {max(self.letters)} outside alphabet "
                f"{{{','.join(self.alphabet.letters)}}}"
            )

    @classmethod
    def from_text(cls, text: str, alphabet: Alphabet = BINARY) -> Word:
        return cls(alphabet, alphabet.encode(text))

    @classmethod
    def empty(cls, alphabet: Alphabet = BINARY) -> Word:
        return cls(alphabet, b"")

    @property
    def text(self) -> str:
        return self.alphabet.decode(self.letters)

    def __str__(self) -> str:
        return self.text

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return (self.alphabet.letters[i] for i in self.letters)

    def __getitem__(self, key: int | slice) -> str | Word:
        if isinstance(key, slice):
            return Word(self.alphabet, self.letters[key])
        return self.alphabet.letters[self.letters[key]]

    def __add__(self, other: Word) -> Word:
        if other.alphabet != self.alphabet:
            other = other.over(self.alphabet)
        return Word(self.alphabet, self.letters + other.letters)

    def __lt__(self, other: Word) -> bool:
        return self.letters < other.letters

    def slice(self, start: int, stop: int) -> Word:
        """Typed slice helper (``word[i:j]`` is typed as ``str | Word``)."""
        return Word(self.alphabet, self.letters[start:stop])

    def prefix(self, n: int) -> Word:
        return Word(self.alphabet, self.letters[:n])

    def over(self, alphabet: Alphabet) -> Word:
        """Re-encode this word over another alphabet containing all its symbols."""
        if alphabet == self.alphabet:
            return self
        return Word(alphabet, alphabet.encode(self.text))


@dataclass(frozen=True, slots=True)
class ParikhVector:
    """Letter counts of a word, one coordinate per alphabet letter in order."""

    counts: tuple[int, ...]

    def __add__(self, other: ParikhVector) -> ParikhVector:
        if len(other.counts) != len(self.counts):
            raise AlphabetError("Parikh vectors over different alphabets cannot be added")
        return ParikhVector(tuple(x + y for x, y in zip(self.counts, other.counts, strict=True)))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True, slots=True)
class OccurrenceSet:
    """All 0-based start positions of a factor in a host word, ascending."""

    factor: Word
    positions: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True, slots=True)
class FactorSet:
    """Distinct factors of one length, in lexicographic alphabet order.

    ``truncated`` is set when the requested length exceeded the host, in which
    case the set is empty by construction rather than by the word's language.
    """

    n: int
    factors: tuple[Word, ...]
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.factors)

    def __contains__(self, word: object) -> bool:
        return word in self.factors

    @property
    def texts(self) -> list[str]:
        return [w.text for w in self.factors]
