"""Analyzer result schemas.

Every count an analyzer reports is computed twice, on the prefix of length N and
on its first N//2 letters; agreement marks the count as converged.
"""

from __future__ import annotations

from dataclasses import dataclass

from pydantic import BaseModel, Field

CSV_COLUMNS = ("n", "p", "pf", "pal", "rho_ab", "converged")


@dataclass(frozen=True, slots=True)
class GuardedCount:
    """A count on the full prefix together with the same count on the half prefix."""

    n: int
    value: int
    half_value: int | None

    @property
    def converged(self) -> bool:
        return self.half_value is not None and self.value == self.half_value

    def __int__(self) -> int:
        return self.value


class ComplexityRow(BaseModel):
    """One length of a ComplexityTable (CSV and JSON record layout)."""

    n: int
    p: int
    pf: int | None = Field(default=None, description="Window complexity; None if < 2 windows")
    pal: int
    rho_ab: int
    converged: bool = Field(description="Every defined count agrees on N and N//2")
    p_converged: bool = True
    pf_converged: bool = True
    pal_converged: bool = True
    rho_converged: bool = True


class ComplexityTable(BaseModel):
    """Factor, window, palindromic and abelian complexity over a range of lengths.

    Convergence is tracked per quantity; ``converged`` is their conjunction and
    is what the CSV reports. Checks comparing one quantity use that quantity's flag.
    """

    host_length: int = Field(description="Prefix length N the table was computed on")
    lengths: list[int] = Field(default_factory=list)
    p: list[int] = Field(default_factory=list, description="Factor complexity")
    pf: list[int | None] = Field(default_factory=list, description="Window complexity")
    pal: list[int] = Field(default_factory=list, description="Palindromic complexity")
    rho_ab: list[int] = Field(default_factory=list, description="Abelian complexity")
    p_converged: list[bool] = Field(default_factory=list)
    pf_converged: list[bool] = Field(
        default_factory=list, description="False when pf is undefined on N//2 or differs"
    )
    pal_converged: list[bool] = Field(default_factory=list)
    rho_converged: list[bool] = Field(default_factory=list)
    converged: list[bool] = Field(
        default_factory=list, description="All defined counts agree on N and N//2"
    )

    def rows(self) -> list[ComplexityRow]:
        columns = zip(
            self.lengths,
            self.p,
            self.pf,
            self.pal,
            self.rho_ab,
            self.converged,
            self.p_converged,
            self.pf_converged,
            self.pal_converged,
            self.rho_converged,
            strict=True,
        )
        return [
            ComplexityRow(
                n=n,
                p=p,
                pf=pf,
                pal=pal,
                rho_ab=rho,
                converged=ok,
                p_converged=p_ok,
                pf_converged=pf_ok,
                pal_converged=pal_ok,
                rho_converged=rho_ok,
            )
            for n, p, pf, pal, rho, ok, p_ok, pf_ok, pal_ok, rho_ok in columns
        ]

    def row(self, n: int) -> ComplexityRow:
        """Row for length ``n``; raises KeyError if ``n`` is outside the table."""
        try:
            i = self.lengths.index(n)
        except ValueError:
            raise KeyError(n) from None
        return self.rows()[i]


class ExtensionCount(BaseModel):
    factor: str
    degree: int = Field(description="Number of distinct one-letter extensions")


class SpecialFactorReport(BaseModel):
    """Right, left and bispecial factors of one length, with the extension identity."""

    n: int
    right_special: list[ExtensionCount] = Field(default_factory=list)
    left_special: list[ExtensionCount] = Field(default_factory=list)
    bispecial: list[str] = Field(default_factory=list)
    p_n: int = Field(description="p(n) on the prefix")
    p_next: int = Field(description="p(n+1) on the prefix")
    right_excess: int = Field(description="Sum over length-n factors of (right degree - 1)")
    converged: bool = Field(description="p(n) and p(n+1) agree on N and N//2")

    @property
    def identity_holds(self) -> bool:
        return self.p_next - self.p_n == self.right_excess


class BalanceWitness(BaseModel):
    n: int
    letter: str
    heavy: str = Field(description="Factor with the most occurrences of the letter")
    light: str = Field(description="Factor with the fewest occurrences of the letter")


class BalanceReport(BaseModel):
    """Largest letter-count gap between equal-length factors over n <= max_n."""

    alpha: int
    max_n: int = Field(description="Largest factor length scanned")
    witness: BalanceWitness | None = None


class ResidueCoverage(BaseModel):
    factor: str
    first_position: int
    occurrences: int = Field(description="Number of starting positions in the prefix")
    residues: list[int] = Field(description="Residues mod n at which the factor starts")


class ModuloRecurrenceReport(BaseModel):
    """Residue coverage of every length-n factor; ``result`` is None when inconclusive."""

    n: int
    result: bool | None
    coverage: list[ResidueCoverage] = Field(default_factory=list)
    refuted: list[tuple[str, int]] = Field(
        default_factory=list,
        description="(factor, residue) pairs missed by factors frequent enough to decide",
    )
    window_factors_equal_language: bool = Field(
        description="Aligned length-n blocks are exactly the length-n factors"
    )
    horizon: int
    notes: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.result is None


class IdentityRow(BaseModel):
    n: int
    lhs: int = Field(description="pal(n) + pal(n+1)")
    rhs: int = Field(description="p(n+1) - p(n) + 2")
    converged: bool


class RichnessReport(BaseModel):
    """Per-prefix palindrome counts and the palindrome/complexity identity."""

    rich: bool
    prefix_length: int
    palindrome_counts: list[int] = Field(
        description="Distinct palindromes (with the empty word) in each prefix of length 0..N"
    )
    first_defect: int | None = Field(
        default=None, description="Shortest prefix length with fewer than length+1 palindromes"
    )
    identity: list[IdentityRow] = Field(default_factory=list)

    @property
    def identity_holds(self) -> bool:
        return all(row.lhs == row.rhs for row in self.identity if row.converged)
