"""Theorem registry and suite runner.

Each registered id expands to one or more checks. Checks are independent jobs
over immutable inputs: they may run on a thread pool, and the report keeps
registry order regardless of completion order.

Core principle: a check that cannot be evaluated on the available prefix
becomes an INCONCLUSIVE verdict; it never aborts the rest of the suite.
"""

import logging
import threading
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.domain.errors import InsufficientDataError, UnknownTheoremError
from src.domain.rules.automaton import (
    apply,
    exchange_rule,
    invariant_rule,
    random_rule,
    run_length_rule,
)
from src.domain.schemas.generator import GeneratorSpec
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.verdict import (
    ImageConfig,
    Verdict,
    VerdictStatus,
    aggregate_status,
)
from src.domain.schemas.word import Alphabet, Word
from src.domain.services.generators import (
    PrefixSource,
    build_source,
    champernowne,
    default_alphabet,
    periodic,
)
from src.domain.validators import (
    ImageContext,
    check_balance2,
    check_balance_equivalence,
    check_ca,
    check_cc,
    check_cp,
    check_fixed_point,
    check_mod_preservation,
    check_n0,
    check_periodicity,
    check_return_words,
    check_special_identity,
    check_special_provenance,
    check_stability_richness,
    check_sturmian_characterizations,
    check_transfer,
    check_unique_antecedent,
    check_window_complexity,
    prepare_image,
)
from src.domain.validators.transfer import host_for

logger = logging.getLogger(__name__)


class SuiteConfig(BaseModel):
    """Inputs shared by every check of one suite run."""

    model_config = ConfigDict(frozen=True)

    image: ImageConfig = Field(default_factory=ImageConfig, description="F(v) configuration")
    source: GeneratorSpec = Field(
        default=GeneratorSpec(kind="fibonacci"), description="Source u for the general checks"
    )
    rule: Any = Field(
        default=None, description="LocalRule for the general checks; built-in scenarios if unset"
    )
    periodic_seed: str = Field(default="ab", description="Seed for the periodicity check")
    prefix_length: int = Field(default=100_000, ge=1, description="Prefix for the Sturmian check")
    general_prefix_length: int = Field(
        default=10_000, ge=1, description="Prefix for the rule-transfer checks"
    )
    n_max: int = Field(default=100, ge=1, description="Largest n in the general checks")
    random_seed: int = Field(default=20240601, description="Seed of the random rule tables")
    random_rule_count: int = Field(default=20, ge=0)
    coverage_horizon: int = Field(default=50, ge=1)
    jobs: int = Field(default=1, ge=1)


class SuiteReport(BaseModel):
    """Verdicts of one suite run, in registry order, with the aggregated status."""

    theorem_ids: list[str]
    status: VerdictStatus
    verdicts: list[Verdict]

    @property
    def exit_code(self) -> int:
        """0 all pass, 1 any failure, 3 any inconclusive."""
        if self.status == VerdictStatus.FAIL:
            return 1
        if self.status == VerdictStatus.INCONCLUSIVE:
            return 3
        return 0


Check = Callable[[], Verdict]


@dataclass
class SuiteRun:
    """Resolved inputs of one run; the F(v) context is prepared once and shared."""

    config: SuiteConfig
    source: PrefixSource = field(init=False)
    _context: ImageContext | None = field(default=None, init=False)
    _context_error: InsufficientDataError | None = field(default=None, init=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False)

    def __post_init__(self) -> None:
        self.source = build_source(self.config.source)

    def _prepare(self) -> None:
        try:
            context = prepare_image(self.config.image)
            # cached tables are filled while the lock is held
            _ = context.image_table
            _ = context.source_index
            self._context = context
        except InsufficientDataError as exc:
            logger.warning(f"Cannot prepare F(v) for {self.config.image.describe()}: {exc}")
            self._context_error = exc

    @property
    def context(self) -> ImageContext:
        """The shared F(v) context.

        Raises:
            InsufficientDataError: if the prefix is too short to estimate n0.
        """
        with self._lock:
            if self._context is None and self._context_error is None:
                self._prepare()
        if self._context_error is not None:
            raise self._context_error
        assert self._context is not None
        return self._context

    def general_rules(self, *defaults: LocalRule) -> tuple[LocalRule, ...]:
        return (self.config.rule,) if self.config.rule is not None else defaults


def _image(check: Callable[[ImageContext], Verdict]) -> Callable[[SuiteRun], list[Check]]:
    return lambda run: [lambda: check(run.context)]


def _stur(run: SuiteRun) -> list[Check]:
    return [
        lambda: check_sturmian_characterizations(
            run.source, run.config.prefix_length, run.config.n_max
        )
    ]


def _transfer(run: SuiteRun) -> list[Check]:
    config = run.config
    if config.rule is not None:
        return [
            lambda: check_transfer(
                config.rule, run.source, config.n_max, config.general_prefix_length
            )
        ]
    random_rules = [
        random_rule(2, config.random_seed + i) for i in range(config.random_rule_count)
    ]
    return [
        lambda: check_transfer(
            run.context.rule,
            run.context.v,
            n_max=run.context.n_max,
            prefix_length=len(run.context.v) - run.context.rule.radius + 1,
            equality_from=run.context.n0 + 1,
        ),
        lambda: check_transfer(
            random_rules, run.source, config.n_max, config.general_prefix_length
        ),
        lambda: check_transfer(
            invariant_rule(1),
            run.source,
            config.n_max,
            config.general_prefix_length,
            equality_from=1,
        ),
    ]


def _mod(run: SuiteRun) -> list[Check]:
    config = run.config
    horizon = config.coverage_horizon
    if config.rule is not None:
        return [lambda: check_mod_preservation(config.rule, run.source, horizon=horizon)]
    scenarios = (
        (run_length_rule(1), GeneratorSpec(kind="fibonacci"), 10),
        (invariant_rule(1), GeneratorSpec(kind="periodic", seed="ab"), 10),
        (invariant_rule(2), GeneratorSpec(kind="champernowne"), 10),
    )
    return [
        lambda rule=rule, spec=spec, n_max=n_max: check_mod_preservation(
            rule, build_source(spec), n_max=n_max, horizon=horizon
        )
        for rule, spec, n_max in scenarios
    ]


def _periodicity(run: SuiteRun) -> list[Check]:
    config = run.config
    alphabet = Alphabet.of(default_alphabet(config.periodic_seed))
    seed = Word.from_text(config.periodic_seed, alphabet)
    if config.rule is not None:
        return [lambda: check_periodicity(config.rule, seed)]
    l = config.image.l
    scenarios = (
        (run_length_rule(l), seed),
        (run_length_rule(l), Word.from_text("a")),
        (invariant_rule(2), Word.from_text("aab")),
    )
    return [lambda rule=rule, s=s: check_periodicity(rule, s) for rule, s in scenarios]


def _rule_scenarios(check: Callable[..., Verdict]) -> Callable[[SuiteRun], list[Check]]:
    def expand(run: SuiteRun) -> list[Check]:
        rules = run.general_rules(
            invariant_rule(2), exchange_rule(2), run_length_rule(run.config.image.l)
        )
        prefix = run.config.general_prefix_length
        return [lambda rule=rule: check(rule, run.source, prefix_length=prefix) for rule in rules]

    return expand


def _fixed_point(run: SuiteRun) -> list[Check]:
    return [lambda: check_fixed_point(run.source, 2, run.config.general_prefix_length)]


def _special_identity(run: SuiteRun) -> list[Check]:
    config = run.config
    n_max = min(config.n_max, 100)
    prefix = config.general_prefix_length
    rule = config.rule or run_length_rule(config.image.l)
    alphabet = Alphabet.of(default_alphabet(config.periodic_seed))
    seed = Word.from_text(config.periodic_seed, alphabet)

    def general() -> Verdict:
        sources = {
            "u": run.source,
            "fibonacci": build_source("fibonacci01"),
            "sturmian01": build_source("sturmian01"),
            "champernowne": champernowne(prefix),
            "periodic": periodic(seed, prefix),
            "F(u)": apply(rule, host_for(rule, run.source, prefix + rule.radius - 1)),
        }
        return check_special_identity(sources, n_max, prefix)

    def of_image() -> Verdict:
        context = run.context
        return check_special_identity({"v": context.v, "F(v)": context.image}, n_max, prefix)

    return [general, of_image]


REGISTRY: dict[str, Callable[[SuiteRun], list[Check]]] = {
    "stur": _stur,
    "n0": _image(check_n0),
    "cc": _image(check_cc),
    "cp": _image(check_cp),
    "ca": _image(check_ca),
    "balance2": _image(check_balance2),
    "transfer": _transfer,
    "mod": _mod,
    "periodicity": _periodicity,
    "stability": _image(check_stability_richness),
    "special": _rule_scenarios(check_special_provenance),
    "fixed-point": _fixed_point,
    "return-words": _image(check_return_words),
    "window": _image(check_window_complexity),
    "antecedent": _image(check_unique_antecedent),
    "balance-equiv": _rule_scenarios(check_balance_equivalence),
    "special-identity": _special_identity,
}


def theorem_ids() -> list[str]:
    """Registered ids in registry order, followed by 'all'."""
    return [*REGISTRY, "all"]


def resolve_ids(requested: list[str] | str) -> list[str]:
    """Expand 'all' and validate every id.

    Raises:
        UnknownTheoremError: on the first id that is not registered.
    """
    if isinstance(requested, str):
        requested = [requested]
    resolved: list[str] = []
    for theorem_id in requested:
        if theorem_id == "all":
            candidates = list(REGISTRY)
        elif theorem_id in REGISTRY:
            candidates = [theorem_id]
        else:
            raise UnknownTheoremError(theorem_id, theorem_ids())
        resolved.extend(c for c in candidates if c not in resolved)
    return resolved


def _guarded(theorem_id: str, check: Check) -> Verdict:
    try:
        return check()
    except InsufficientDataError as exc:
        logger.warning(f"{theorem_id}: {exc}")
        return Verdict(theorem_id=theorem_id, status=VerdictStatus.INCONCLUSIVE, notes=[str(exc)])


def run_suite(requested: list[str] | str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run the requested theorem checks and aggregate their verdicts."""
    config = config or SuiteConfig()
    ids = resolve_ids(requested)
    run = SuiteRun(config)

    jobs = [(theorem_id, check) for theorem_id in ids for check in REGISTRY[theorem_id](run)]
    logger.info(f"Running {len(jobs)} check(s) for {', '.join(ids)} on {config.jobs} worker(s)")
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        verdicts = list(pool.map(lambda job: _guarded(*job), jobs))

    status = aggregate_status(verdicts)
    logger.info(f"Suite finished: {status.value} ({len(verdicts)} verdict(s))")
    return SuiteReport(theorem_ids=ids, status=status, verdicts=verdicts)
