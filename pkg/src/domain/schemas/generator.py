"""Generator parameter schemas."""

from __future__ import annotations

from collections.abc import Iterator
from typing import TYPE_CHECKING, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

if TYPE_CHECKING:
    from src.domain.services.generators import PrefixSource


class DirectiveSequence(BaseModel):
    """Continued-fraction partial quotients driving a characteristic Sturmian word.

    ``coefficients`` are used first; if ``period`` is non-empty it then repeats
    forever, so (2, 1, 1, ...) is ``coefficients=[2], period=[1]``.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[int, ...] = Field(min_length=1, description="Leading partial quotients")
    period: tuple[int, ...] = Field(default=(), description="Repeating tail, may be empty")

    @field_validator("coefficients", "period")
    @classmethod
    def _positive(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(c < 1 for c in value):
            raise ValueError("Directive coefficients must all be >= 1")
        return value

    def stream(self) -> Iterator[int]:
        """Yield coefficients in order, cycling the tail forever when present."""
        yield from self.coefficients
        while self.period:
            yield from self.period

    def label(self) -> str:
        head = ",".join(str(c) for c in self.coefficients)
        if self.period:
            return f"({head};{','.join(str(c) for c in self.period)}*)"
        return f"({head})"


GeneratorKind = Literal["fibonacci", "sturmian", "asturmian", "champernowne", "periodic"]


class GeneratorSpec(BaseModel):
    """Serializable description of a prefix source.

    Only the fields relevant to ``kind`` are read; the rest keep their defaults.
    """

    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind = Field(description="Which infinite word to produce")
    letters: str | None = Field(
        default=None,
        min_length=2,
        max_length=2,
        description="Letter pair, heavy letter first ('ab' by default, '01' for champernowne)",
    )
    alphabet: str | None = Field(default=None, description="Alphabet for periodic seeds")
    directive: tuple[int, ...] = Field(default=(1,), description="Directive coefficients")
    period: tuple[int, ...] = Field(default=(1,), description="Directive repeating tail")
    seed: str | None = Field(default=None, description="Seed word for periodic words")
    l0: int | None = Field(default=None, ge=0, description="Leading a-run for a-Sturmian words")
    l: int = Field(default=1, ge=1, description="Base a-run for a-Sturmian words")
    epsilon: str | GeneratorSpec = Field(
        default="fibonacci01", description="epsilon source: preset name or nested spec"
    )

    @property
    def label(self) -> str:
        if self.kind == "periodic":
            return f"periodic({self.seed})"
        if self.kind == "sturmian":
            directive = DirectiveSequence(coefficients=self.directive, period=self.period)
            return f"sturmian{directive.label()}[{self.letters or 'ab'}]"
        if self.kind == "asturmian":
            eps = self.epsilon if isinstance(self.epsilon, str) else self.epsilon.label
            l0 = self.l if self.l0 is None else self.l0
            return f"asturmian(l0={l0},l={self.l},eps={eps})"
        if self.kind == "fibonacci" and self.letters not in (None, "ab"):
            return f"fibonacci[{self.letters}]"
        return self.kind


class ASturmianParams(BaseModel):
    """Parameters of the normal form a^l0 b a^(l+e1) b a^(l+e2) b ..."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    l0: int = Field(ge=0, description="Length of the leading a-run")
    l: int = Field(ge=1, description="Base length of the following a-runs")
    epsilon: Any = Field(description="PrefixSource over {0,1} giving the run increments")

    @model_validator(mode="after")
    def _check(self) -> ASturmianParams:
        if self.l0 > self.l + 1:
            raise ValueError(f"l0 must satisfy l0 <= l+1, got l0={self.l0}, l={self.l}")
        source: PrefixSource = self.epsilon
        letters = set(source.alphabet.letters)
        if not letters <= {"0", "1"}:
            raise ValueError(
                f"epsilon source must be over {{0,1}}, got alphabet {source.alphabet}"
            )
        return self


GeneratorSpec.model_rebuild()
