"""What a sliding-block rule carries over from a source u to its image F(u).

- complexity: p_F(u)(n) <= p_u(n+r-1), with equality iff F is injective on
  the length-(n+r-1) factors of u
- modulo-recurrence: F(u) is modulo-recurrent iff u is
- periodicity: F(u) is periodic with a period dividing that of u
- balance: for first-letter-determined rules, F(u) is balanced iff u is

Core principle: comparisons that are exact on any finite prefix are always
converged; counts that only approximate the infinite word carry the N, N//2 guard.
"""

import logging
from collections.abc import Sequence

from src.domain.rules.automaton import apply, profile
from src.domain.rules.language import injective_on_language
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.verdict import Verdict, VerdictRow, VerdictStatus, decide
from src.domain.schemas.word import Word
from src.domain.services.generators import PrefixSource, describe_source, take
from src.domain.services.words import relabel, smallest_period
from src.pipeline.analyzers import factor_complexity, window_complexity
from src.pipeline.factor_index import FactorIndex
from src.pipeline.structure import (
    DEFAULT_COVERAGE_HORIZON,
    balance_coefficient,
    modulo_recurrence_check,
)

logger = logging.getLogger(__name__)


def host_for(rule: LocalRule, source: PrefixSource | Word, n: int) -> Word:
    """Length-n prefix of ``source`` over the rule's input alphabet.

    Words over a different alphabet of the same size are relabelled letter by
    letter (0/1 read as a/b).
    """
    u = take(source, n)
    if u.alphabet == rule.input_alphabet:
        return u
    if set(u.alphabet.letters) <= set(rule.input_alphabet.letters):
        return u.over(rule.input_alphabet)
    logger.debug(f"Relabelling {u.alphabet} onto {rule.input_alphabet} for {rule.name}")
    return relabel(u, rule.input_alphabet)


def check_transfer(
    rules: LocalRule | Sequence[LocalRule],
    source: PrefixSource | Word,
    n_max: int = 100,
    prefix_length: int = 10_000,
    equality_from: int | None = None,
    injectivity_max_n: int = 10,
) -> Verdict:
    """p_F(u)(n) <= p_u(n+r-1) for each rule.

    Args:
        equality_from: assert p_F(u)(n) = p_u(n+r-1) for n >= this length.
        injectivity_max_n: lengths up to which equality is cross-checked
            against injectivity on the factor language.
    """
    if isinstance(rules, LocalRule):
        rules = [rules]
    rows: list[VerdictRow] = []
    for rule in rules:
        r = rule.radius
        u = host_for(rule, source, prefix_length + r - 1)
        image = apply(rule, u)
        source_index = FactorIndex.build(u.letters, n_max + r - 1)
        image_index = FactorIndex.build(image.letters, n_max)
        for n in range(1, n_max + 1):
            p_u, p_f = source_index.factors[n + r - 1], image_index.factors[n]
            converged = (
                p_u == source_index.factors_half[n + r - 1]
                and p_f == image_index.factors_half[n]
            )
            rows.append(
                VerdictRow(
                    n=n,
                    quantity=f"p_F(n) <= p_u(n+{r - 1}) [{rule.name}]",
                    expected=p_u,
                    observed=p_f,
                    relation="<=",
                    converged=converged,
                )
            )
            if equality_from is not None and n >= equality_from:
                rows.append(
                    VerdictRow(
                        n=n,
                        quantity=f"p_F(n) = p_u(n+{r - 1}) [{rule.name}]",
                        expected=p_u,
                        observed=p_f,
                        converged=converged,
                    )
                )
            if n <= injectivity_max_n:
                # both sides are counted on the same finite factor language
                rows.append(
                    VerdictRow(
                        n=n,
                        quantity=f"equality iff injective [{rule.name}]",
                        expected=injective_on_language(rule, u, n),
                        observed=p_f == p_u,
                    )
                )
    status = decide(rows)
    if status == VerdictStatus.FAIL:
        logger.warning(f"Transfer law failed on {describe_source(source)}")
    return Verdict(
        theorem_id="transfer",
        title="Complexity of F(u) is bounded by that of u",
        config={
            "source": describe_source(source),
            "rules": [rule.name for rule in rules],
            "prefix_length": prefix_length,
            "n_max": n_max,
            "equality_from": equality_from,
        },
        rows=rows,
        status=status,
    )


def check_mod_preservation(
    rule: LocalRule,
    source: PrefixSource | Word,
    n_max: int = 10,
    prefix_length: int = 20_000,
    horizon: int = DEFAULT_COVERAGE_HORIZON,
) -> Verdict:
    """Modulo-recurrence of u and F(u) agree at each length; pf = p where it holds."""
    u = host_for(rule, source, prefix_length + rule.radius - 1)
    image = apply(rule, u)
    rows: list[VerdictRow] = []
    undecided: list[int] = []
    for n in range(1, n_max + 1):
        of_source = modulo_recurrence_check(u, n, horizon)
        of_image = modulo_recurrence_check(image, n, horizon)
        if of_source.inconclusive or of_image.inconclusive:
            undecided.append(n)
        rows.append(
            VerdictRow(
                n=n,
                quantity="modulo-recurrent",
                expected=of_source.result,
                observed=of_image.result,
                converged=not (of_source.inconclusive or of_image.inconclusive),
            )
        )
        for label, word, report in (("u", u, of_source), ("F(u)", image, of_image)):
            if report.result is not True:
                continue
            p = factor_complexity(word, n)
            pf = window_complexity(word, n)
            rows.append(
                VerdictRow(
                    n=n,
                    quantity=f"pf = p on {label}",
                    expected=p.value,
                    observed=pf.value,
                    converged=p.converged and pf.converged,
                )
            )
    notes = []
    if undecided:
        notes.append(f"inconclusive horizons excluded at n={undecided}")
    return Verdict(
        theorem_id="mod",
        title="F(u) is modulo-recurrent iff u is",
        config={
            "source": describe_source(source),
            "rule": rule.name,
            "prefix_length": prefix_length,
            "n_max": n_max,
            "horizon": horizon,
        },
        rows=rows,
        status=decide(rows),
        notes=notes,
    )


def check_periodicity(rule: LocalRule, seed: Word, prefix_length: int = 1000) -> Verdict:
    """The image of seed^omega is periodic with a period dividing |seed|."""
    if len(seed) < 1:
        raise ValueError("Periodic seed must be non-empty")
    if prefix_length < 1:
        raise ValueError(f"Prefix length must be >= 1, got {prefix_length}")
    seed = host_for(rule, seed, len(seed))
    repeats = -(-(prefix_length + rule.radius - 1) // len(seed))
    u = Word(seed.alphabet, seed.letters * repeats)
    image = apply(rule, u)
    source_period = smallest_period(u)
    image_period = smallest_period(image)

    rows = [
        VerdictRow(
            quantity="image period divides |seed|",
            expected=len(seed),
            observed=image_period,
            relation="divides",
        ),
    ]
    if profile(rule).invariant:
        rows.append(
            VerdictRow(
                quantity="period (invariant rule)", expected=source_period, observed=image_period
            )
        )
    shared = "share" if source_period == image_period else "do not share"
    return Verdict(
        theorem_id="periodicity",
        title="F(u) is periodic when u is",
        config={"rule": rule.name, "seed": seed.text, "prefix_length": len(image)},
        rows=rows,
        status=decide(rows),
        notes=[f"source period {source_period}, image period {image_period}: they {shared} it"],
    )


def check_balance_equivalence(
    rule: LocalRule,
    source: PrefixSource | Word,
    n_max: int = 100,
    prefix_length: int = 20_000,
) -> Verdict:
    """For first-letter-determined rules, F(u) is 1-balanced iff u is."""
    config = {"source": describe_source(source), "rule": rule.name, "n_max": n_max}
    if not profile(rule).first_letter_determined:
        logger.warning(f"{rule.name} is not first-letter determined; balance check skipped")
        return Verdict(
            theorem_id="balance-equiv",
            title="F(u) is balanced iff u is",
            config=config,
            status=VerdictStatus.SKIPPED,
            notes=[f"{rule.name} is not first-letter determined"],
        )
    u = host_for(rule, source, prefix_length + rule.radius - 1)
    image = apply(rule, u)
    of_source = balance_coefficient(u, n_max)
    of_image = balance_coefficient(image, n_max)
    half_source = balance_coefficient(u.prefix(len(u) // 2), n_max)
    half_image = balance_coefficient(image.prefix(len(image) // 2), n_max)
    converged = of_source.alpha == half_source.alpha and of_image.alpha == half_image.alpha

    rows = [
        VerdictRow(
            quantity="balanced",
            expected=of_source.alpha <= 1,
            observed=of_image.alpha <= 1,
            converged=converged,
        ),
    ]
    return Verdict(
        theorem_id="balance-equiv",
        title="F(u) is balanced iff u is",
        config=config,
        rows=rows,
        status=decide(rows),
        notes=[f"alpha(u)={of_source.alpha}, alpha(F(u))={of_image.alpha}"],
    )
