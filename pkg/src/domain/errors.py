"""Exception hierarchy for wordca.

Every error raised on bad input derives from WordcaError, which is itself a
ValueError so callers that only care about "invalid input" can catch that.

Core principle: a theorem that does not hold is a result, not an error.
Checks return a Verdict; exceptions are reserved for inputs that cannot be
evaluated at all.
"""


class WordcaError(ValueError):
    """Base class for all wordca input errors."""


class AlphabetError(WordcaError):
    """A letter lies outside the declared alphabet, or the alphabet is malformed."""


class BoundaryError(WordcaError):
    """The host prefix is too short for the requested factor length."""


class InsufficientDataError(WordcaError):
    """Too few occurrences or runs in the prefix to compute the requested quantity."""


class DirectiveExhaustedError(WordcaError):
    """A finite directive sequence cannot certify a prefix of the requested length."""

    def __init__(self, message: str, extra_coefficients: int):
        super().__init__(message)
        self.extra_coefficients = extra_coefficients


class RuleError(WordcaError):
    """A local rule cannot be constructed from the given parameters."""


class RuleFileError(RuleError):
    """A rule file is malformed or not total."""

    def __init__(self, message: str, missing_windows: list[str] | None = None):
        super().__init__(message)
        self.missing_windows = missing_windows or []


class UnknownTheoremError(WordcaError):
    """The requested theorem id is not registered."""

    def __init__(self, theorem_id: str, valid_ids: list[str]):
        super().__init__(
            f"Unknown theorem id '{theorem_id}'. Valid ids: {', '.join(valid_ids)}"
        )
        self.theorem_id = theorem_id
        self.valid_ids = valid_ids
