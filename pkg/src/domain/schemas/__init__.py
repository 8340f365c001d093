"""Value types and pydantic records shared across wordca."""

from .complexity import (
    BalanceReport,
    ComplexityTable,
    GuardedCount,
    ModuloRecurrenceReport,
    RichnessReport,
    SpecialFactorReport,
)
from .generator import ASturmianParams, DirectiveSequence, GeneratorSpec
from .rule import LocalRule, RuleProfile
from .verdict import ImageConfig, N0Estimate, Verdict, VerdictRow, VerdictStatus
from .word import BINARY, Alphabet, FactorSet, OccurrenceSet, ParikhVector, Word

__all__ = [
    "Alphabet",
    "BINARY",
    "Word",
    "ParikhVector",
    "OccurrenceSet",
    "FactorSet",
    "DirectiveSequence",
    "GeneratorSpec",
    "ASturmianParams",
    "LocalRule",
    "RuleProfile",
    "GuardedCount",
    "ComplexityTable",
    "SpecialFactorReport",
    "BalanceReport",
    "ModuloRecurrenceReport",
    "RichnessReport",
    "ImageConfig",
    "N0Estimate",
    "Verdict",
    "VerdictRow",
    "VerdictStatus",
]
