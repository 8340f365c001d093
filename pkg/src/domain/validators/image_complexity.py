"""Closed formulas for the complexities of F(v), checked against brute force.

All formulas are piecewise in n with breakpoints n0-l and n0:
- p(n): n+1 up to n0-l, then 2n-n0+l+1 up to n0, then n+l+1.
- pal(n): parity-split, see expected_cp.
- rho_ab(n): 2 up to n0-l, 3 up to n0, then 2 or 3.

Core principle: only converged lengths decide; unconverged rows stay in the
verdict for the record.
"""

import logging

from src.domain.errors import InsufficientDataError
from src.domain.rules.language import antecedent_map
from src.domain.schemas.verdict import ImageConfig, Verdict, VerdictRow, VerdictStatus, decide
from src.domain.schemas.word import Word
from src.domain.services.words import occurrences
from src.domain.validators.n0 import ImageContext, as_context
from src.pipeline.analyzers import palindromic_inventory, parikh_set
from src.pipeline.structure import balance_coefficient, return_words

logger = logging.getLogger(__name__)


def expected_cc(n: int, n0: int, l: int) -> int:
    """Factor complexity of F(v)."""
    if n <= n0 - l:
        return n + 1
    if n <= n0:
        return 2 * n - n0 + l + 1
    return n + l + 1


def expected_cp(n: int, n0: int, l: int) -> int:
    """Palindromic complexity of F(v)."""
    if n <= n0 - l:
        return 1 if n % 2 == 0 else 2
    if n <= n0:
        if n0 % 2 == 1:
            return 2
        if l % 2 == 1:
            return 2
        return 1 if n % 2 == 0 else 3
    return 1 if (n + l) % 2 == 0 else 2


def expected_ca(n: int, n0: int, l: int) -> int | list[int]:
    """Abelian complexity of F(v); beyond n0 only membership in {2, 3} is predicted."""
    if n <= n0 - l:
        return 2
    if n <= n0:
        return 3
    return [2, 3]


def expected_palindromes(n: int, n0: int, l: int) -> list[str]:
    """Palindromic factors of F(v) of length n <= n0, sorted (a < b)."""
    found = ["b" * n]
    if n % 2 == 1:
        half = (n - 1) // 2
        found.append("b" * half + "a" + "b" * half)
    if n >= n0 - l + 1 and (n - (n0 - l + 1)) % 2 == 0:
        j = (n - n0 + l - 1) // 2
        found.append("b" * j + "a" + "b" * (n0 - l - 1) + "a" + "b" * j)
    return sorted(found)


def expected_parikh(n: int, n0: int, l: int) -> list[list[int]]:
    """Parikh vectors (|w|_a, |w|_b) of length-n factors for n <= n0."""
    top = 1 if n <= n0 - l else 2
    return [[k, n - k] for k in range(top + 1)]


def _unconverged_note(rows: list[VerdictRow]) -> list[str]:
    skipped = sorted({row.n for row in rows if not row.converged and row.n is not None})
    if not skipped:
        return []
    return [f"unconverged lengths excluded: {skipped}"]


def _verdict(
    theorem_id: str, title: str, context: ImageContext, rows: list[VerdictRow], notes: list[str]
) -> Verdict:
    status = decide(rows)
    if status == VerdictStatus.FAIL:
        logger.warning(f"{theorem_id} failed for {context.describe()}")
    return Verdict(
        theorem_id=theorem_id,
        title=title,
        config=context.describe(),
        rows=rows,
        status=status,
        notes=notes + _unconverged_note(rows),
    )


def check_cc(config: ImageConfig | ImageContext) -> Verdict:
    """Factor complexity of F(v) against the three-piece formula, with boundary continuity."""
    context = as_context(config)
    n0, l = context.n0, context.l
    rows = [
        VerdictRow(
            n=row.n,
            quantity="p",
            expected=expected_cc(row.n, n0, l),
            observed=row.p,
            converged=row.p_converged,
        )
        for row in context.image_table.rows()
    ]
    # the neighbouring branches agree at each breakpoint
    if n0 - l >= 1:
        b = n0 - l
        rows.append(
            VerdictRow(n=b, quantity="continuity", expected=b + 1, observed=2 * b - n0 + l + 1)
        )
    rows.append(
        VerdictRow(n=n0, quantity="continuity", expected=2 * n0 - n0 + l + 1, observed=n0 + l + 1)
    )

    notes = []
    table = context.image_table
    slopes = {
        table.p[i + 1] - table.p[i]
        for i in range(len(table.lengths) - 1)
        if table.lengths[i] > n0 and table.p_converged[i] and table.p_converged[i + 1]
    }
    if slopes:
        notes.append(f"p(n+1)-p(n) for n > n0: {sorted(slopes)}")
    return _verdict("cc", "Factor complexity of F(v)", context, rows, notes)


def check_cp(config: ImageConfig | ImageContext) -> Verdict:
    """Palindromic complexity of F(v), plus the explicit palindrome inventories up to n0."""
    context = as_context(config)
    n0, l = context.n0, context.l
    rows = []
    for row in context.image_table.rows():
        rows.append(
            VerdictRow(
                n=row.n,
                quantity="pal",
                expected=expected_cp(row.n, n0, l),
                observed=row.pal,
                converged=row.pal_converged,
            )
        )
        if row.n <= n0:
            rows.append(
                VerdictRow(
                    n=row.n,
                    quantity="Pal_n",
                    expected=expected_palindromes(row.n, n0, l),
                    observed=palindromic_inventory(context.image, row.n).texts,
                    converged=row.pal_converged,
                )
            )
    notes = [
        "sub-case (n0 odd, l odd) is vacuous: n0 = k0(l+1) is even whenever l is odd",
        f"middle range uses the n0 {'even' if n0 % 2 == 0 else 'odd'}, "
        f"l {'even' if l % 2 == 0 else 'odd'} branch",
    ]
    return _verdict("cp", "Palindromic complexity of F(v)", context, rows, notes)


def check_ca(config: ImageConfig | ImageContext) -> Verdict:
    """Abelian complexity of F(v), its Parikh sets up to n0, and its variation beyond n0.

    Past n0 the abelian complexity never settles; every run of 2*n0 consecutive
    converged lengths must show both values.
    """
    context = as_context(config)
    n0, l = context.n0, context.l
    rows = []
    for row in context.image_table.rows():
        expected = expected_ca(row.n, n0, l)
        rows.append(
            VerdictRow(
                n=row.n,
                quantity="rho_ab",
                expected=expected,
                observed=row.rho_ab,
                relation="in" if isinstance(expected, list) else "==",
                converged=row.rho_converged,
            )
        )
        if row.n <= n0:
            rows.append(
                VerdictRow(
                    n=row.n,
                    quantity="parikh",
                    expected=expected_parikh(row.n, n0, l),
                    observed=[list(p.counts) for p in parikh_set(context.image, row.n)],
                    converged=row.rho_converged,
                )
            )

    table = context.image_table
    beyond = [
        (n, rho)
        for n, rho, ok in zip(table.lengths, table.rho_ab, table.rho_converged, strict=True)
        if n > n0 and ok
    ]
    span = 2 * n0
    runs: list[list[tuple[int, int]]] = []
    for n, rho in beyond:
        if runs and runs[-1][-1][0] == n - 1 and len(runs[-1]) < span:
            runs[-1].append((n, rho))
        else:
            runs.append([(n, rho)])
    for run in runs:
        if len(run) < span:
            continue
        rows.append(
            VerdictRow(
                n=run[-1][0],
                quantity=f"rho_ab not constant over {run[0][0]}..{run[-1][0]}",
                expected=True,
                observed=len({rho for _, rho in run}) > 1,
            )
        )
    notes = []
    if beyond:
        values = [rho for _, rho in beyond]
        shape = "not constant" if len(set(values)) > 1 else "constant"
        notes.append(
            f"rho_ab over n0 < n <= {context.n_max}: {values} ({shape}); "
            f"asserted on each run of {span} consecutive converged lengths"
        )
    return _verdict("ca", "Abelian complexity of F(v)", context, rows, notes)


def check_balance2(config: ImageConfig | ImageContext) -> Verdict:
    """F(v) is exactly 2-balanced, v is 1-balanced, and rho_ab <= alpha + 1."""
    context = as_context(config)
    n0, l = context.n0, context.l
    image_report = balance_coefficient(context.image, context.n_max)
    source_report = balance_coefficient(context.v, context.n_max)
    heavy_b = Word.from_text("b" * (n0 - l + 1))
    two_a = Word.from_text("a" + "b" * (n0 - l - 1) + "a")

    rows = [
        VerdictRow(quantity="alpha(F(v))", expected=2, observed=image_report.alpha),
        VerdictRow(quantity="alpha(v)", expected=1, observed=source_report.alpha),
        VerdictRow(
            quantity=f"occurs {heavy_b.text}",
            expected=True,
            observed=len(occurrences(context.image, heavy_b)) > 0,
        ),
        VerdictRow(
            quantity=f"occurs {two_a.text}",
            expected=True,
            observed=len(occurrences(context.image, two_a)) > 0,
        ),
    ]
    for row in context.image_table.rows():
        rows.append(
            VerdictRow(
                n=row.n,
                quantity="rho_ab <= alpha+1",
                expected=image_report.alpha + 1,
                observed=row.rho_ab,
                relation="<=",
                converged=row.rho_converged,
            )
        )
    notes = []
    if image_report.witness is not None:
        w = image_report.witness
        notes.append(f"witness at n={w.n}: {w.heavy} vs {w.light} (letter {w.letter})")
    return _verdict("balance2", "F(v) is 2-balanced", context, rows, notes)


def check_return_words(config: ImageConfig | ImageContext) -> Verdict:
    """Return words of a in F(v) are a b^(n0-l-1), a b^n0; those of b are b, ba."""
    context = as_context(config)
    n0, l = context.n0, context.l
    try:
        of_a = [w.text for w in return_words(context.image, Word.from_text("a"))]
        of_b = [w.text for w in return_words(context.image, Word.from_text("b"))]
    except InsufficientDataError as exc:
        return Verdict(
            theorem_id="return-words",
            config=context.describe(),
            status=VerdictStatus.INCONCLUSIVE,
            notes=[str(exc)],
        )
    expected_a = sorted({"a" + "b" * (n0 - l - 1), "a" + "b" * n0}, key=lambda w: (len(w), w))
    rows = [
        VerdictRow(quantity="return words of a", expected=expected_a, observed=of_a),
        VerdictRow(quantity="return words of b", expected=["b", "ba"], observed=of_b),
    ]
    return _verdict("return-words", "Return words in F(v)", context, rows, [])


def check_window_complexity(config: ImageConfig | ImageContext) -> Verdict:
    """Window complexity of F(v) equals its factor complexity (F(v) is modulo-recurrent)."""
    context = as_context(config)
    rows = [
        VerdictRow(
            n=row.n,
            quantity="pf",
            expected=row.p,
            observed=row.pf,
            converged=row.p_converged and row.pf_converged,
        )
        for row in context.image_table.rows()
        if row.pf is not None
    ]
    return _verdict("window", "Window complexity of F(v)", context, rows, [])


def check_unique_antecedent(config: ImageConfig | ImageContext) -> Verdict:
    """Beyond n0 every factor of F(v) has one antecedent, palindromes a palindromic one."""
    context = as_context(config)
    rows = []
    for n in range(context.n0 + 1, context.n_max + 1):
        groups = antecedent_map(context.rule, context.v, n)
        injective = all(len(sources) == 1 for sources in groups.values())
        palindromic = all(
            any(s == s[::-1] for s in sources) for image, sources in groups.items()
            if image == image[::-1]
        )
        rows.append(
            VerdictRow(n=n, quantity="single antecedent", expected=True, observed=injective)
        )
        rows.append(
            VerdictRow(n=n, quantity="palindromic antecedent", expected=True, observed=palindromic)
        )
    return _verdict("antecedent", "Antecedents of long factors of F(v)", context, rows, [])
