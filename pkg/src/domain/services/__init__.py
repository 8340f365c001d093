"""Word operations and prefix generators."""

from .generators import (
    EPSILON_PRESETS,
    PrefixSource,
    a_sturmian,
    build_source,
    champernowne,
    characteristic_sturmian,
    fibonacci,
    periodic,
)
from .words import (
    exchange,
    factor_set,
    is_palindrome,
    max_power,
    max_run,
    occurrences,
    parikh_vector,
    reflect,
    smallest_period,
)

__all__ = [
    "reflect",
    "is_palindrome",
    "parikh_vector",
    "factor_set",
    "occurrences",
    "max_run",
    "max_power",
    "exchange",
    "smallest_period",
    "PrefixSource",
    "EPSILON_PRESETS",
    "build_source",
    "fibonacci",
    "characteristic_sturmian",
    "a_sturmian",
    "champernowne",
    "periodic",
]
