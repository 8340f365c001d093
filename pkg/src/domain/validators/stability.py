"""Reflection, richness and special-factor properties carried by a rule.

Core principle: properties of F(u) are read off the image prefix itself, while
the corresponding property of u is read off the source prefix that produced
it, so every row compares two independent brute-force scans.
"""

import logging
from collections.abc import Mapping

from src.domain.errors import AlphabetError
from src.domain.rules.automaton import apply, exchange_rule, invariant_rule, profile
from src.domain.rules.language import antecedent_map, exchange_commutes
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.verdict import ImageConfig, Verdict, VerdictRow, VerdictStatus, decide
from src.domain.schemas.word import BINARY, Word
from src.domain.services.generators import PrefixSource, describe_source, take
from src.domain.services.words import exchange, relabel
from src.domain.validators.n0 import ImageContext, as_context
from src.domain.validators.transfer import host_for
from src.pipeline.analyzers import reflection_closed
from src.pipeline.factor_index import FactorIndex
from src.pipeline.structure import richness_check, special_factors

logger = logging.getLogger(__name__)


def check_stability_richness(config: ImageConfig | ImageContext) -> Verdict:
    """F(v) is reflection-closed and rich, with pal_F(n) = pal_v(n+l) where F is injective."""
    context = as_context(config)
    rule, l = context.rule, context.l
    rows = [VerdictRow(quantity="rule stable", expected=True, observed=profile(rule).stable)]

    table = context.image_table
    index = context.source_index
    for row in table.rows():
        rows.append(
            VerdictRow(
                n=row.n,
                quantity="reflection-closed",
                expected=True,
                observed=reflection_closed(context.image, row.n),
                converged=row.p_converged,
            )
        )
        groups = antecedent_map(rule, context.v, row.n)
        if all(len(sources) == 1 for sources in groups.values()):
            span = row.n + l
            rows.append(
                VerdictRow(
                    n=row.n,
                    quantity=f"pal_F(n) = pal_v(n+{l})",
                    expected=index.palindromes[span],
                    observed=row.pal,
                    converged=row.pal_converged
                    and index.palindromes[span] == index.palindromes_half[span],
                )
            )

    image_richness = richness_check(context.image.prefix(context.config.richness_prefix))
    source_richness = richness_check(context.v.prefix(context.config.richness_prefix))
    rows.append(VerdictRow(quantity="F(v) rich", expected=True, observed=image_richness.rich))
    rows.append(VerdictRow(quantity="v rich", expected=True, observed=source_richness.rich))
    rows.extend(
        VerdictRow(
            n=identity.n,
            quantity="pal(n)+pal(n+1) = p(n+1)-p(n)+2",
            expected=identity.rhs,
            observed=identity.lhs,
            converged=identity.converged,
        )
        for identity in image_richness.identity
    )

    notes = []
    if image_richness.first_defect is not None:
        notes.append(f"F(v) prefix of length {image_richness.first_defect} is not rich")
    return Verdict(
        theorem_id="stability",
        title="Reflection stability and richness of F(v)",
        config=context.describe(),
        rows=rows,
        status=decide(rows),
        notes=notes,
    )


def check_special_provenance(
    rule: LocalRule,
    source: PrefixSource | Word,
    n_max: int = 20,
    prefix_length: int = 20_000,
) -> Verdict:
    """Right, left and bispecial factors of F(u) come from factors of u of the same kind.

    Under a first-letter-determined rule a length-n image factor is the
    letterwise image of the first n letters of each of its antecedents.
    """
    config = {"source": describe_source(source), "rule": rule.name, "n_max": n_max}
    if not profile(rule).first_letter_determined:
        logger.warning(f"{rule.name} is not first-letter determined; provenance check skipped")
        return Verdict(
            theorem_id="special",
            title="Special factors of F(u) come from special factors of u",
            config=config,
            status=VerdictStatus.SKIPPED,
            notes=[f"{rule.name} is not first-letter determined"],
        )

    u = host_for(rule, source, prefix_length + rule.radius - 1)
    image = apply(rule, u)
    rows: list[VerdictRow] = []
    for n in range(1, n_max + 1):
        groups = antecedent_map(rule, u, n)
        of_image = special_factors(image, n)
        of_source = special_factors(u, n)
        origins = {
            rule.output_alphabet.decode(key): {rule.input_alphabet.decode(s[:n]) for s in sources}
            for key, sources in groups.items()
        }
        converged = of_image.converged and of_source.converged
        for kind, found, pool in (
            (
                "right",
                [e.factor for e in of_image.right_special],
                {e.factor for e in of_source.right_special},
            ),
            (
                "left",
                [e.factor for e in of_image.left_special],
                {e.factor for e in of_source.left_special},
            ),
            ("bispecial", of_image.bispecial, set(of_source.bispecial)),
        ):
            orphans = [f for f in found if not origins.get(f, set()) & pool]
            rows.append(
                VerdictRow(
                    n=n,
                    quantity=f"{kind}-special factors without a {kind}-special origin",
                    expected=[],
                    observed=orphans,
                    converged=converged,
                )
            )
    return Verdict(
        theorem_id="special",
        title="Special factors of F(u) come from special factors of u",
        config=config,
        rows=rows,
        status=decide(rows),
    )


def check_fixed_point(
    source: PrefixSource | Word, r: int = 2, prefix_length: int = 10_000, n_max: int = 50
) -> Verdict:
    """H(u) is u truncated by r-1 letters, G = E o H, and both commute with E.

    Binary sources over another alphabet are relabelled onto {a,b}.
    """
    u = take(source, prefix_length)
    if u.alphabet.size != 2:
        raise AlphabetError(f"Fixed-point check needs a binary source, got {u.alphabet}")
    u = relabel(u, BINARY)
    h, g = invariant_rule(r), exchange_rule(r)
    truncated = u.prefix(len(u) - r + 1)
    g_image = apply(g, u)

    identities = (
        ("H(u) = u truncated", apply(h, u) == truncated),
        ("G(u) = E(H(u))", g_image == exchange(truncated)),
        ("H commutes with E", exchange_commutes(h, u)),
        ("G commutes with E", exchange_commutes(g, u)),
    )
    rows = [
        VerdictRow(quantity=quantity, expected=True, observed=holds)
        for quantity, holds in identities
    ]
    source_index = FactorIndex.build(truncated.letters, n_max)
    image_index = FactorIndex.build(g_image.letters, n_max)
    for n in range(1, n_max + 1):
        rows.append(
            VerdictRow(
                n=n,
                quantity="p_G(u)(n) = p_u(n)",
                expected=source_index.factors[n],
                observed=image_index.factors[n],
                converged=image_index.factors[n] == image_index.factors_half[n],
            )
        )
    return Verdict(
        theorem_id="fixed-point",
        title="Invariant rule fixes u and the exchange rule maps it to E(u)",
        config={"source": describe_source(source), "r": r, "prefix_length": len(u)},
        rows=rows,
        status=decide(rows),
    )


def check_special_identity(
    sources: Mapping[str, PrefixSource | Word], n_max: int = 100, prefix_length: int = 10_000
) -> Verdict:
    """p(n+1) - p(n) equals the summed right excess of length-n factors on every source.

    The identity is exact on any finite prefix, so its rows are always decided.
    """
    rows: list[VerdictRow] = []
    for label, source in sources.items():
        u = take(source, prefix_length)
        top = min(n_max, len(u) - 1)
        for n in range(0, top + 1):
            report = special_factors(u, n)
            rows.append(
                VerdictRow(
                    n=n,
                    quantity=f"p(n+1)-p(n) = right excess [{label}]",
                    expected=report.right_excess,
                    observed=report.p_next - report.p_n,
                )
            )
        logger.debug(f"Special-factor identity evaluated on {label} up to n={top}")
    return Verdict(
        theorem_id="special-identity",
        title="First difference of p equals the right-special excess",
        config={
            "sources": {label: describe_source(s) for label, s in sources.items()},
            "n_max": n_max,
            "prefix_length": prefix_length,
        },
        rows=rows,
        status=decide(rows),
    )
