"""Sliding application of local rules and the rule catalogue.

F(w) is f applied to every length-r window of w, so |F(w)| = max(0, |w| - r + 1).
Windows are encoded as base-q integers in one vectorised pass.
"""

import logging

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from src.domain.errors import RuleError
from src.domain.schemas.rule import LocalRule, RuleProfile
from src.domain.schemas.word import BINARY, Alphabet, Word

logger = logging.getLogger(__name__)


def apply(rule: LocalRule, w: Word) -> Word:
    """Apply the cellular automaton defined by ``rule`` to ``w``.

    Raises:
        AlphabetError: if ``w`` uses a letter outside the rule's input alphabet.
    """
    w = w.over(rule.input_alphabet)
    r = rule.radius
    if len(w) < r:
        logger.debug(f"Input of length {len(w)} shorter than radius {r}; image is empty")
        return Word.empty(rule.output_alphabet)

    letters = np.frombuffer(w.letters, dtype=np.uint8).astype(np.int64)
    weights = rule.q ** np.arange(r - 1, -1, -1, dtype=np.int64)
    codes = sliding_window_view(letters, r) @ weights
    table = np.asarray(rule.table, dtype=np.uint8)
    return Word(rule.output_alphabet, table[codes].tobytes())


def run_length_rule(l: int) -> LocalRule:
    """Radius l+1 rule over {a,b}: a^(l+1) -> a, every other window -> b."""
    if l < 1:
        raise RuleError(f"l: must be >= 1, got {l}")
    radius = l + 1
    table = [1] * (2**radius)
    table[0] = 0
    return LocalRule(BINARY, BINARY, radius, tuple(table), name=f"runlength(l={l})")


def invariant_rule(r: int) -> LocalRule:
    """H(xy) = x: returns the first letter of each window."""
    if r < 1:
        raise RuleError(f"radius: must be >= 1, got {r}")
    table = tuple(code >> (r - 1) for code in range(2**r))
    return LocalRule(BINARY, BINARY, r, table, name=f"invariant(r={r})")


def exchange_rule(r: int) -> LocalRule:
    """G(xy) = E(x): the exchanged first letter of each window."""
    if r < 1:
        raise RuleError(f"radius: must be >= 1, got {r}")
    table = tuple(1 - (code >> (r - 1)) for code in range(2**r))
    return LocalRule(BINARY, BINARY, r, table, name=f"exchange(r={r})")


def random_rule(radius: int, seed: int, alphabet: Alphabet = BINARY) -> LocalRule:
    """Uniformly random total table over ``alphabet``, reproducible from ``seed``."""
    if radius < 1:
        raise RuleError(f"radius: must be >= 1, got {radius}")
    rng = np.random.default_rng(seed)
    table = rng.integers(0, alphabet.size, size=alphabet.size**radius)
    return LocalRule(
        alphabet,
        alphabet,
        radius,
        tuple(int(x) for x in table),
        name=f"random(r={radius},seed={seed})",
    )


NAMED_RULES = ("runlength", "invariant", "exchange", "random")


def build_rule(name: str, *, l: int = 1, radius: int = 2, seed: int = 0) -> LocalRule:
    """Look up a rule by CLI name."""
    if name == "runlength":
        return run_length_rule(l)
    if name == "invariant":
        return invariant_rule(radius)
    if name == "exchange":
        return exchange_rule(radius)
    if name == "random":
        return random_rule(radius, seed)
    raise RuleError(f"rule: unknown rule '{name}'. Valid rules: {', '.join(NAMED_RULES)}")


def profile(rule: LocalRule) -> RuleProfile:
    """Scan the whole table for the invariant, stable, first-letter and surjective predicates."""
    outputs = rule.output_alphabet.letters
    inputs = rule.input_alphabet.letters

    invariant = True
    stable = True
    by_first_letter: dict[int, set[int]] = {}
    for window in rule.windows():
        out = rule.table[rule.code(window)]
        if outputs[out] != inputs[window[0]]:
            invariant = False
        if rule.table[rule.code(window[::-1])] != out:
            stable = False
        by_first_letter.setdefault(window[0], set()).add(out)

    # outputs must be constant per first letter and distinct across first letters
    constant = all(len(outs) == 1 for outs in by_first_letter.values())
    distinct = len({next(iter(outs)) for outs in by_first_letter.values()}) == len(by_first_letter)
    result = RuleProfile(
        invariant=invariant,
        stable=stable,
        first_letter_determined=constant and distinct,
        surjective=set(rule.table) == set(range(rule.output_alphabet.size)),
    )
    logger.debug(f"Profile of {rule.name}: {result.model_dump()}")
    return result
