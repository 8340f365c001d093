"""Structural diagnostics: balance, special factors, modulo-recurrence, richness, return words."""

import logging
from collections import defaultdict

import numpy as np

from src.domain.errors import InsufficientDataError
from src.domain.schemas.complexity import (
    BalanceReport,
    BalanceWitness,
    ExtensionCount,
    IdentityRow,
    ModuloRecurrenceReport,
    ResidueCoverage,
    RichnessReport,
    SpecialFactorReport,
)
from src.domain.schemas.word import Word
from src.domain.services.words import occurrences, windows
from src.pipeline.factor_index import FactorIndex

logger = logging.getLogger(__name__)

# Windows per residue class scanned before a missing residue counts as a refutation
DEFAULT_COVERAGE_HORIZON = 50


def balance_coefficient(host: Word, max_n: int) -> BalanceReport:
    """Largest | |v|_x - |w|_x | over equal-length factors v, w with |v| <= max_n.

    Binary words only need the first letter scanned; the counts of the other
    letter are complementary.
    """
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    if max_n > len(host):
        logger.warning(f"Balance scan capped at prefix length {len(host)} (requested {max_n})")
        max_n = len(host)

    codes = np.frombuffer(host.letters, dtype=np.uint8)
    scanned = [0] if host.alphabet.size == 2 else range(host.alphabet.size)
    alpha = 0
    witness: BalanceWitness | None = None
    for x in scanned:
        prefix = np.concatenate(([0], np.cumsum(codes == x)))
        for n in range(1, max_n + 1):
            counts = prefix[n:] - prefix[: len(codes) - n + 1]
            heavy, light = int(np.argmax(counts)), int(np.argmin(counts))
            gap = int(counts[heavy] - counts[light])
            if gap > alpha:
                alpha = gap
                witness = BalanceWitness(
                    n=n,
                    letter=host.alphabet.letters[x],
                    heavy=host.slice(heavy, heavy + n).text,
                    light=host.slice(light, light + n).text,
                )
    return BalanceReport(alpha=alpha, max_n=max_n, witness=witness)


def special_factors(host: Word, n: int) -> SpecialFactorReport:
    """Right, left and bispecial factors of length n, with extension counts.

    The right excess sums (right degree - 1) over all length-n factors, counting
    degree 0 for a factor that only occurs as a suffix of the prefix, so
    p(n+1) - p(n) equals it exactly on any finite word.
    """
    if n < 0:
        raise ValueError(f"Factor length must be non-negative, got {n}")
    if n + 1 > len(host):
        logger.warning(f"Special factors of length {n} need a prefix longer than {len(host)}")

    Extensions = dict[bytes, set[int]]

    def scan(letters: bytes) -> tuple[set[bytes], Extensions, Extensions, int]:
        right: Extensions = defaultdict(set)
        left: Extensions = defaultdict(set)
        extended = windows(letters, n + 1)
        for w in extended:
            right[w[:-1]].add(w[-1])
            left[w[1:]].add(w[0])
        return windows(letters, n), right, left, len(extended)

    factors, right, left, p_next = scan(host.letters)
    half_factors, _, _, half_next = scan(host.letters[: len(host) // 2])
    text = host.alphabet.decode

    right_special = [
        ExtensionCount(factor=text(f), degree=len(right[f]))
        for f in sorted(factors)
        if len(right.get(f, ())) > 1
    ]
    left_special = [
        ExtensionCount(factor=text(f), degree=len(left[f]))
        for f in sorted(factors)
        if len(left.get(f, ())) > 1
    ]
    right_names = {e.factor for e in right_special}
    return SpecialFactorReport(
        n=n,
        right_special=right_special,
        left_special=left_special,
        bispecial=[e.factor for e in left_special if e.factor in right_names],
        p_n=len(factors),
        p_next=p_next,
        right_excess=sum(len(right.get(f, ())) - 1 for f in factors),
        converged=n + 1 <= len(host) // 2
        and len(half_factors) == len(factors)
        and half_next == p_next,
    )


def modulo_recurrence_check(
    host: Word, n: int, horizon: int = DEFAULT_COVERAGE_HORIZON
) -> ModuloRecurrenceReport:
    """Check that every length-n factor starts at every residue class mod n.

    A residue never hit counts as a refutation only for factors that occur at
    least ``horizon * n`` times in the prefix, i.e. ``horizon`` occurrences per
    residue class on average. A rarer factor that misses a residue leaves the
    result inconclusive (None).
    """
    if n < 1:
        raise ValueError(f"Factor length must be >= 1, got {n}")
    letters = host.letters
    last_start = len(letters) - n

    first: dict[bytes, int] = {}
    counts: dict[bytes, int] = defaultdict(int)
    hits: dict[bytes, set[int]] = defaultdict(set)
    for i in range(last_start + 1):
        w = letters[i : i + n]
        first.setdefault(w, i)
        counts[w] += 1
        hits[w].add(i % n)

    coverage: list[ResidueCoverage] = []
    refuted: list[tuple[str, int]] = []
    undecided = 0
    for w in sorted(first):
        coverage.append(
            ResidueCoverage(
                factor=host.alphabet.decode(w),
                first_position=first[w],
                occurrences=counts[w],
                residues=sorted(hits[w]),
            )
        )
        missing = set(range(n)) - hits[w]
        if not missing:
            continue
        if counts[w] >= horizon * n:
            refuted.extend((host.alphabet.decode(w), residue) for residue in sorted(missing))
        else:
            undecided += 1

    notes = ""
    if refuted:
        result: bool | None = False
    elif undecided:
        result = None
        notes = f"{undecided} factor(s) miss a residue with fewer than {horizon}*n occurrences"
        logger.warning(f"Modulo-recurrence at n={n} inconclusive on N={len(letters)}: {notes}")
    else:
        result = True
        if len(letters) < horizon * n:
            notes = f"prefix shorter than {horizon}*n; all residues were nevertheless hit"

    aligned = {letters[k : k + n] for k in range(0, last_start + 1, n)}
    return ModuloRecurrenceReport(
        n=n,
        result=result,
        coverage=coverage,
        refuted=refuted,
        window_factors_equal_language=aligned == set(first),
        horizon=horizon,
        notes=notes,
    )


def richness_check(host: Word, identity_max_n: int | None = None) -> RichnessReport:
    """Count distinct palindromes of every prefix and evaluate pal(n)+pal(n+1) = p(n+1)-p(n)+2.

    A word is rich when each prefix of length m holds exactly m+1 palindromes,
    the empty word included.
    """
    n_max = identity_max_n if identity_max_n is not None else max(1, len(host) // 100)
    index = FactorIndex.build(host.letters, n_max + 1)

    counts = [1]
    for new in index.new_palindrome:
        counts.append(counts[-1] + int(new))
    first_defect = next((m for m, c in enumerate(counts) if c != m + 1), None)

    identity = []
    for n in range(1, n_max + 1):
        converged = all(
            index.factors[k] == index.factors_half[k]
            and index.palindromes[k] == index.palindromes_half[k]
            for k in (n, n + 1)
        )
        identity.append(
            IdentityRow(
                n=n,
                lhs=index.palindromes[n] + index.palindromes[n + 1],
                rhs=index.factors[n + 1] - index.factors[n] + 2,
                converged=converged and n + 1 <= len(host) // 2,
            )
        )
    return RichnessReport(
        rich=first_defect is None,
        prefix_length=len(host),
        palindrome_counts=counts,
        first_defect=first_defect,
        identity=identity,
    )


def return_words(host: Word, factor: Word) -> tuple[Word, ...]:
    """Distinct first-return words of ``factor``: host[i:j] for consecutive occurrences i < j.

    Raises:
        InsufficientDataError: if ``factor`` occurs fewer than twice.
    """
    positions = occurrences(host, factor).positions
    if len(positions) < 2:
        raise InsufficientDataError(
            f"'{factor.text}' occurs {len(positions)} time(s); return words need at least 2"
        )
    found = {host.letters[i:j] for i, j in zip(positions, positions[1:], strict=False)}
    return tuple(Word(host.alphabet, w) for w in sorted(found, key=lambda w: (len(w), w)))
