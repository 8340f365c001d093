"""Theorem verdict schemas.

A check evaluates a closed formula and a brute-force count side by side and
records one row per comparison. Rows at unconverged lengths are kept for the
record but never decide the outcome.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field

from src.domain.schemas.generator import GeneratorSpec


class VerdictStatus(str, Enum):
    """Outcome of one theorem check.

    Aggregation priority (highest first):
    - FAIL: a converged comparison disagrees
    - INCONCLUSIVE: nothing converged, or a prefix was too short to decide
    - PASS: every converged comparison agrees
    - SKIPPED: the theorem's hypothesis does not hold for the inputs (neutral)
    """

    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"
    SKIPPED = "SKIPPED"


Relation = Literal["==", "<=", "in", "divides"]


class VerdictRow(BaseModel):
    """One expected-vs-observed comparison."""

    n: int | None = Field(default=None, description="Factor length, if the row is per-length")
    quantity: str = Field(description="What is compared, e.g. 'p', 'pal', 'n0'")
    expected: Any = Field(description="Value predicted by the formula")
    observed: Any = Field(description="Value counted on the prefix")
    relation: Relation = Field(default="==", description="How observed must relate to expected")
    converged: bool = Field(default=True, description="Observed value is stable on N and N//2")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return holds(self.relation, self.expected, self.observed)


def holds(relation: Relation, expected: Any, observed: Any) -> bool:
    if relation == "==":
        return bool(expected == observed)
    if relation == "<=":
        return bool(observed <= expected)
    if relation == "in":
        return observed in expected
    return expected % observed == 0


class Verdict(BaseModel):
    """Structured outcome of one theorem check."""

    model_config = ConfigDict(populate_by_name=True)

    theorem_id: str = Field(description="Registry id, e.g. 'cc'")
    title: str = Field(default="", description="Human-readable statement checked")
    config: dict[str, Any] = Field(default_factory=dict, description="Inputs of the check")
    rows: list[VerdictRow] = Field(default_factory=list)
    status: VerdictStatus
    notes: list[str] = Field(default_factory=list)

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.status == VerdictStatus.PASS

    @property
    def failures(self) -> list[VerdictRow]:
        return [row for row in self.rows if row.converged and not row.passed]


def decide(rows: list[VerdictRow]) -> VerdictStatus:
    """Status from rows alone: a converged mismatch fails, no converged row is inconclusive."""
    converged = [row for row in rows if row.converged]
    if any(not row.passed for row in converged):
        return VerdictStatus.FAIL
    if not converged:
        return VerdictStatus.INCONCLUSIVE
    return VerdictStatus.PASS


def aggregate_status(verdicts: list[Verdict]) -> VerdictStatus:
    """Combine verdicts: any FAIL, else any INCONCLUSIVE, else PASS (SKIPPED is neutral).

    Order-independent, so parallel checks aggregate to the same status.
    """
    statuses = {v.status for v in verdicts}
    if VerdictStatus.FAIL in statuses:
        return VerdictStatus.FAIL
    if VerdictStatus.INCONCLUSIVE in statuses:
        return VerdictStatus.INCONCLUSIVE
    return VerdictStatus.PASS


class N0Estimate(BaseModel):
    """n0 = k0 (l+1), with k0 from the source and n0 cross-checked on the image."""

    n0: int = Field(description="k0 * (l+1)")
    k0: int = Field(description="Largest power of a^l b in the source prefix")
    l: int
    b_run: int = Field(description="Longest run of b in the image prefix")
    method_agreement: bool = Field(description="b_run equals k0 * (l+1)")


class ImageConfig(BaseModel):
    """Inputs of the checks on F(v), v a-Sturmian and F the run-length rule."""

    model_config = ConfigDict(frozen=True)

    l: int = Field(default=1, ge=1)
    l0: int | None = Field(default=None, ge=0, description="Leading a-run; defaults to l")
    epsilon: str | GeneratorSpec = Field(default="fibonacci01", description="epsilon source")
    prefix_length: int = Field(default=100_000, ge=1, description="Length of the image prefix")
    n_max: int | None = Field(default=None, ge=1, description="Largest n checked; 3*n0 if unset")
    richness_prefix: int = Field(default=2000, ge=1, description="Image prefix for richness")

    def describe(self) -> dict[str, Any]:
        eps = self.epsilon if isinstance(self.epsilon, str) else self.epsilon.label
        return {
            "l": self.l,
            "l0": self.l if self.l0 is None else self.l0,
            "epsilon": eps,
            "prefix_length": self.prefix_length,
            "n_max": self.n_max,
        }
