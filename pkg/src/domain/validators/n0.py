"""n0 estimation and the shared setup of the checks on F(v).

v = a^l0 b a^(l+e1) b a^(l+e2) b ... and F = run_length_rule(l). The image
F(v) is a b^(l+1) per e_i = 1 block and b^(l+1) per e_i = 0 block, so its
b-runs between a's lie in {n0-l-1, n0} with n0 = k0 (l+1).

Core principle: the two readings of k0 (largest power of a^l b in v, longest
b-run of F(v)) are computed independently; any disagreement fails loudly.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from src.domain.errors import InsufficientDataError
from src.domain.rules.automaton import apply, run_length_rule
from src.domain.schemas.complexity import ComplexityTable
from src.domain.schemas.generator import ASturmianParams
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.verdict import (
    ImageConfig,
    N0Estimate,
    Verdict,
    VerdictRow,
    decide,
)
from src.domain.schemas.word import Word
from src.domain.services.generators import ASturmianSource, build_source
from src.domain.services.words import max_power, max_run
from src.pipeline.analyzers import complexity_table
from src.pipeline.factor_index import FactorIndex

logger = logging.getLogger(__name__)


def _count_b_runs(image: Word) -> int:
    runs = 0
    previous = None
    for letter in image.letters:
        if letter == 1 and previous != 1:
            runs += 1
        previous = letter
    return runs


def estimate_n0(v: Word, l: int) -> N0Estimate:
    """Compute k0 on ``v`` and cross-check n0 against the longest b-run of F(v).

    Raises:
        InsufficientDataError: if the image holds fewer than 3 maximal b-runs.
    """
    rule = run_length_rule(l)
    image = apply(rule, v)
    if _count_b_runs(image) < 3:
        raise InsufficientDataError(
            f"Image of a {len(v)}-letter prefix holds fewer than 3 b-runs; lengthen the prefix"
        )
    block = Word.from_text("a" * l + "b", v.alphabet)
    k0 = max_power(v, block)
    n0 = k0 * (l + 1)
    b_run = max_run(image, "b")
    if b_run != n0:
        logger.warning(f"n0 mismatch for l={l}: k0*(l+1)={n0}, longest image b-run={b_run}")
    return N0Estimate(n0=n0, k0=k0, l=l, b_run=b_run, method_agreement=b_run == n0)


@dataclass(frozen=True)
class ImageContext:
    """Source prefix v, its image F(v) and the n0 estimate for one ImageConfig."""

    config: ImageConfig
    rule: LocalRule
    v: Word
    image: Word
    estimate: N0Estimate

    @property
    def l(self) -> int:
        return self.config.l

    @property
    def n0(self) -> int:
        return self.estimate.n0

    @property
    def n_max(self) -> int:
        return self.config.n_max or 3 * self.estimate.n0

    @cached_property
    def image_table(self) -> ComplexityTable:
        """Complexity of F(v) for 1 <= n <= n_max."""
        return complexity_table(self.image, 1, self.n_max)

    @cached_property
    def source_index(self) -> FactorIndex:
        """Factor and palindrome counts of v up to n_max + l."""
        return FactorIndex.build(self.v.letters, self.n_max + self.l)

    def describe(self) -> dict:
        described = self.config.describe()
        described.update(n_max=self.n_max, n0=self.n0, k0=self.estimate.k0)
        return described


def prepare_image(config: ImageConfig) -> ImageContext:
    """Generate v and F(v) (of length ``config.prefix_length``) and estimate n0."""
    params = ASturmianParams(
        l0=config.l if config.l0 is None else config.l0,
        l=config.l,
        epsilon=build_source(config.epsilon),
    )
    rule = run_length_rule(config.l)
    v = ASturmianSource(params).prefix(config.prefix_length + rule.radius - 1)
    image = apply(rule, v)
    estimate = estimate_n0(v, config.l)
    logger.info(f"Prepared F(v) for {config.describe()}: n0={estimate.n0}, k0={estimate.k0}")
    return ImageContext(config=config, rule=rule, v=v, image=image, estimate=estimate)


def as_context(config: ImageConfig | ImageContext) -> ImageContext:
    """Accept a prepared context or build one from its config."""
    if isinstance(config, ImageContext):
        return config
    return prepare_image(config)


def check_n0(config: ImageConfig | ImageContext) -> Verdict:
    """n0 from the max-power scan of v equals the longest b-run of F(v)."""
    context = as_context(config)
    estimate = context.estimate
    rows = [
        VerdictRow(quantity="n0", expected=estimate.n0, observed=estimate.b_run),
        VerdictRow(quantity="n0 % (l+1)", expected=0, observed=estimate.n0 % (context.l + 1)),
    ]
    return Verdict(
        theorem_id="n0",
        title="n0 = k0(l+1) equals the longest b-run of F(v)",
        config=context.describe(),
        rows=rows,
        status=decide(rows),
        notes=[f"k0={estimate.k0}"],
    )
