"""Sturmian characterizations checked together on one prefix.

A Sturmian word satisfies p(n) = n+1, rho_ab(n) = 2, pal(n) = 1 or 2 by parity
of n, and is 1-balanced and aperiodic. All five are evaluated on the same
prefix so a generator bug cannot pass one and slip through another.
"""

import logging

from src.domain.schemas.verdict import Verdict, VerdictRow, VerdictStatus, decide
from src.domain.schemas.word import Word
from src.domain.services.generators import PrefixSource, describe_source, take
from src.pipeline.analyzers import complexity_table
from src.pipeline.structure import balance_coefficient

logger = logging.getLogger(__name__)


def check_sturmian_characterizations(
    source: PrefixSource | Word, prefix_length: int = 100_000, n_max: int = 200
) -> Verdict:
    """Complexity, abelian, palindromic, balance and aperiodicity laws of a Sturmian word."""
    u = take(source, prefix_length)
    table = complexity_table(u, 1, n_max)
    balance = balance_coefficient(u, n_max)

    rows: list[VerdictRow] = []
    for row in table.rows():
        laws = (
            ("p", row.n + 1, row.p, row.p_converged),
            ("rho_ab", 2, row.rho_ab, row.rho_converged),
            ("pal", 1 if row.n % 2 == 0 else 2, row.pal, row.pal_converged),
        )
        rows.extend(
            VerdictRow(
                n=row.n,
                quantity=quantity,
                expected=expected,
                observed=observed,
                converged=converged,
            )
            for quantity, expected, observed, converged in laws
        )
    rows.append(VerdictRow(quantity="alpha", expected=1, observed=balance.alpha))

    converged_p = [p for p, ok in zip(table.p, table.p_converged, strict=True) if ok]
    increasing = all(b > a for a, b in zip(converged_p, converged_p[1:], strict=False))
    rows.append(VerdictRow(quantity="p strictly increasing", expected=True, observed=increasing))

    status = decide(rows)
    notes = []
    if balance.witness is not None and balance.alpha > 1:
        w = balance.witness
        notes.append(f"imbalance witness at n={w.n}: {w.heavy} vs {w.light}")
    if status == VerdictStatus.FAIL:
        logger.info(f"{describe_source(source)} fails the Sturmian characterizations")
    return Verdict(
        theorem_id="stur",
        title="Equivalent characterizations of Sturmian words",
        config={"source": describe_source(source), "prefix_length": len(u), "n_max": n_max},
        rows=rows,
        status=status,
        notes=notes,
    )
