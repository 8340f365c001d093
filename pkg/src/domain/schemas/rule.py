"""Local rule schemas.

A LocalRule stores its table densely: one output index per window, where a
window is read as a base-q number with its first letter most significant.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import product

from pydantic import BaseModel, Field

from src.domain.errors import RuleError
from src.domain.schemas.word import Alphabet, Word


@dataclass(frozen=True, slots=True)
class LocalRule:
    """Radius-r map f from length-r words over the input alphabet to single letters."""

    input_alphabet: Alphabet
    output_alphabet: Alphabet
    radius: int
    table: tuple[int, ...]
    name: str = "rule"

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise RuleError(f"radius: must be >= 1, got {self.radius}")
        expected = self.input_alphabet.size**self.radius
        if len(self.table) != expected:
            raise RuleError(
                f"Rule table for radius {self.radius} over {self.input_alphabet} needs "
                f"{expected} entries, got {len(self.table)}"
            )
        if self.table and max(self.table) >= self.output_alphabet.size:
            raise RuleError(f"Rule table uses outputs outside alphabet {self.output_alphabet}")

    @property
    def q(self) -> int:
        return self.input_alphabet.size

    def code(self, window: bytes) -> int:
        """Base-q index of a packed window, first letter most significant."""
        value = 0
        for letter in window:
            value = value * self.q + letter
        return value

    def windows(self) -> Iterator[bytes]:
        """All q^r packed windows in table order."""
        for letters in product(range(self.q), repeat=self.radius):
            yield bytes(letters)

    def lookup(self, window: Word) -> str:
        """Output letter for one length-r window."""
        if len(window) != self.radius:
            raise RuleError(
                f"Window '{window.text}' has length {len(window)}, rule radius is {self.radius}"
            )
        packed = window.over(self.input_alphabet).letters
        return self.output_alphabet.letters[self.table[self.code(packed)]]

    def __str__(self) -> str:
        return self.name


class RuleProfile(BaseModel):
    """Rule-level predicates that theorem hypotheses depend on."""

    invariant: bool = Field(description="f(xy) = x for every window (first-letter projection)")
    stable: bool = Field(description="f(reflect(w)) = f(w) for every window")
    first_letter_determined: bool = Field(
        description="Outputs of two windows agree iff their first letters agree"
    )
    surjective: bool = Field(description="Every output letter is attained")
