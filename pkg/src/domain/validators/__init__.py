"""Theorem checks for wordca: each one returns a Verdict."""

from src.domain.validators.image_complexity import (
    check_balance2,
    check_ca,
    check_cc,
    check_cp,
    check_return_words,
    check_unique_antecedent,
    check_window_complexity,
)
from src.domain.validators.n0 import ImageContext, as_context, check_n0, estimate_n0, prepare_image
from src.domain.validators.stability import (
    check_fixed_point,
    check_special_identity,
    check_special_provenance,
    check_stability_richness,
)
from src.domain.validators.sturmian import check_sturmian_characterizations
from src.domain.validators.transfer import (
    check_balance_equivalence,
    check_mod_preservation,
    check_periodicity,
    check_transfer,
)

__all__ = [
    "ImageContext",
    "as_context",
    "prepare_image",
    "estimate_n0",
    "check_n0",
    "check_cc",
    "check_cp",
    "check_ca",
    "check_balance2",
    "check_return_words",
    "check_window_complexity",
    "check_unique_antecedent",
    "check_sturmian_characterizations",
    "check_transfer",
    "check_mod_preservation",
    "check_periodicity",
    "check_balance_equivalence",
    "check_stability_richness",
    "check_special_provenance",
    "check_special_identity",
    "check_fixed_point",
]
