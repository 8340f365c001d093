"""Complexity functions on finite prefixes.

Single-length functions count window sets directly; complexity_table uses the
online FactorIndex for every length at once. Both report each count on the
prefix and on its first half so truncation is visible.
"""

import logging
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.domain.errors import BoundaryError
from src.domain.schemas.complexity import ComplexityTable, GuardedCount
from src.domain.schemas.word import FactorSet, ParikhVector, Word
from src.domain.services.words import windows
from src.pipeline.factor_index import FactorIndex

logger = logging.getLogger(__name__)


def _halves(host: Word) -> tuple[bytes, bytes]:
    return host.letters, host.letters[: len(host) // 2]


def _guarded(
    n: int, letters: bytes, half: bytes, count: Callable[[bytes], int]
) -> GuardedCount:
    if n > len(letters):
        logger.warning(f"Length {n} exceeds prefix length {len(letters)}; count is 0")
        return GuardedCount(n=n, value=0, half_value=None)
    return GuardedCount(n=n, value=count(letters), half_value=count(half))


def factor_complexity(host: Word, n: int) -> GuardedCount:
    """p(n): number of distinct length-n factors."""
    letters, half = _halves(host)
    return _guarded(n, letters, half, lambda s: len(windows(s, n)))


def palindromic_complexity(host: Word, n: int) -> GuardedCount:
    """Number of distinct palindromic length-n factors."""
    letters, half = _halves(host)
    return _guarded(
        n, letters, half, lambda s: sum(1 for w in windows(s, n) if w == w[::-1])
    )


def _parikh_prefix(letters: bytes, q: int) -> np.ndarray:
    """Cumulative letter counts: row i holds the Parikh vector of letters[:i]."""
    codes = np.frombuffer(letters, dtype=np.uint8)
    onehot = np.zeros((len(codes) + 1, q), dtype=np.int64)
    onehot[1:][np.arange(len(codes)), codes] = 1
    return np.cumsum(onehot, axis=0)


def _parikh_rows(prefix: np.ndarray, n: int) -> np.ndarray:
    """Parikh vectors of all length-n windows, one row per window."""
    return prefix[n:] - prefix[: len(prefix) - n]


def _abelian_from_prefix(prefix: np.ndarray, n: int) -> int:
    if n > len(prefix) - 1:
        return 0
    if n == 0:
        return 1
    q = prefix.shape[1]
    if q == 2:
        # consecutive windows differ by at most one letter, so the counts form an interval
        counts = prefix[n:, 0] - prefix[: len(prefix) - n, 0]
        return int(counts.max() - counts.min() + 1)
    rows = _parikh_rows(prefix, n)
    if (n + 1) ** q < 2**62:
        keys = rows @ ((n + 1) ** np.arange(q, dtype=np.int64))
        return len(np.unique(keys))
    return len(np.unique(rows, axis=0))


def _abelian_count(letters: bytes, n: int, q: int) -> int:
    if n > len(letters):
        return 0
    return _abelian_from_prefix(_parikh_prefix(letters, q), n)


def abelian_complexity(host: Word, n: int) -> GuardedCount:
    """Number of distinct Parikh vectors among length-n factors."""
    letters, half = _halves(host)
    q = host.alphabet.size
    return _guarded(n, letters, half, lambda s: _abelian_count(s, n, q))


def parikh_set(host: Word, n: int) -> list[ParikhVector]:
    """Distinct Parikh vectors of length-n factors, in lexicographic order."""
    if n > len(host):
        return []
    prefix = _parikh_prefix(host.letters, host.alphabet.size)
    rows = np.unique(_parikh_rows(prefix, n), axis=0)
    return [ParikhVector(tuple(int(c) for c in row)) for row in rows]


def _aligned_blocks(letters: bytes, n: int) -> set[bytes]:
    return {letters[k : k + n] for k in range(0, len(letters) - n + 1, n)}


def window_complexity(host: Word, n: int) -> GuardedCount:
    """Number of distinct aligned blocks host[kn : kn+n], windows anchored at position 0.

    Raises:
        BoundaryError: if the prefix holds fewer than two complete windows.
    """
    if n < 1:
        raise ValueError(f"Window length must be >= 1, got {n}")
    if len(host) < 2 * n:
        raise BoundaryError(
            f"Prefix of length {len(host)} holds fewer than 2 windows of length {n}"
        )
    letters, half = _halves(host)
    half_value = len(_aligned_blocks(half, n)) if len(half) >= 2 * n else None
    return GuardedCount(n=n, value=len(_aligned_blocks(letters, n)), half_value=half_value)


def palindromic_inventory(host: Word, n: int) -> FactorSet:
    """The palindromic length-n factors themselves, sorted."""
    if n > len(host):
        return FactorSet(n=n, factors=(), truncated=True)
    found = sorted(w for w in windows(host.letters, n) if w == w[::-1])
    return FactorSet(n=n, factors=tuple(Word(host.alphabet, w) for w in found))


def reflection_closed(host: Word, n: int) -> bool:
    """True iff the length-n factor set is closed under reflection."""
    blocks = windows(host.letters, n)
    return all(w[::-1] in blocks for w in blocks)


def analysis_horizon(prefix_length: int, requested: int, ratio: int) -> int:
    """Largest n_max the analyzer guard admits: min(requested, N // ratio)."""
    return min(requested, prefix_length // ratio)


def complexity_table(host: Word, n_min: int, n_max: int, jobs: int = 1) -> ComplexityTable:
    """Factor, window, palindromic and abelian complexity for n_min <= n <= n_max.

    Each count carries its own convergence flag (agreement on N and N//2); the
    row flag ``converged`` is their conjunction over the counts that are defined.
    """
    if n_min < 0 or n_max < n_min:
        raise ValueError(f"Invalid length range [{n_min}, {n_max}]")
    letters, half = _halves(host)
    index = FactorIndex.build(letters, n_max)
    prefix = _parikh_prefix(letters, host.alphabet.size)
    half_prefix = prefix[: len(half) + 1]
    lengths = list(range(n_min, n_max + 1))

    def per_length(n: int) -> tuple[int | None, bool, int, bool]:
        if n == 0:
            return None, True, 1, True
        pf = len(_aligned_blocks(letters, n)) if len(letters) >= 2 * n else None
        pf_half = len(_aligned_blocks(half, n)) if len(half) >= 2 * n else None
        rho = _abelian_from_prefix(prefix, n)
        rho_half = _abelian_from_prefix(half_prefix, n)
        return pf, pf_half is not None and pf == pf_half, rho, rho == rho_half

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(per_length, lengths))

    table = ComplexityTable(host_length=len(host))
    for n, (pf, pf_ok, rho, rho_ok) in zip(lengths, results, strict=True):
        in_half = n <= len(half)
        p_ok = in_half and index.factors[n] == index.factors_half[n]
        pal_ok = in_half and index.palindromes[n] == index.palindromes_half[n]
        rho_ok = in_half and rho_ok
        pf_ok = pf is not None and pf_ok
        table.lengths.append(n)
        table.p.append(index.factors[n])
        table.pf.append(pf)
        table.pal.append(index.palindromes[n])
        table.rho_ab.append(rho)
        table.p_converged.append(p_ok)
        table.pf_converged.append(pf_ok)
        table.pal_converged.append(pal_ok)
        table.rho_converged.append(rho_ok)
        table.converged.append(p_ok and pal_ok and rho_ok and (pf is None or pf_ok))

    unconverged = [n for n, ok in zip(lengths, table.converged, strict=True) if not ok]
    if unconverged:
        logger.warning(
            f"{len(unconverged)} of {len(lengths)} lengths unconverged on N={len(host)} "
            f"(first: n={unconverged[0]})"
        )
    return table
