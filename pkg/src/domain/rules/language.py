"""How a local rule acts on the factor language of a host word.

The image of the length-(n+r-1) factors of u under F is exactly the set of
length-n factors of F(u); injectivity is taken on that factor language, since
no map A^r -> A is globally injective for q >= 2, r >= 2.
"""

import logging
from collections import defaultdict

from src.domain.errors import AlphabetError, BoundaryError
from src.domain.rules.automaton import apply
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.word import FactorSet, Word
from src.domain.services.words import exchange, windows

logger = logging.getLogger(__name__)


def _require_length(rule: LocalRule, host: Word, n: int) -> int:
    if n < 1:
        raise ValueError(f"Image factor length must be >= 1, got {n}")
    span = n + rule.radius - 1
    if len(host) < span:
        raise BoundaryError(
            f"Host of length {len(host)} is too short for image length {n} "
            f"under radius {rule.radius} (needs {span})"
        )
    return span


def antecedent_map(rule: LocalRule, host: Word, n: int) -> dict[bytes, list[bytes]]:
    """Group the length-(n+r-1) factors of ``host`` by their image under ``rule``.

    Keys are packed image factors; values are the packed antecedents, sorted.

    Raises:
        BoundaryError: if ``host`` is shorter than n+r-1.
    """
    span = _require_length(rule, host, n)
    host = host.over(rule.input_alphabet)
    # F(host)[i : i+n] is the image of host[i : i+span]
    image = apply(rule, host).letters
    found: dict[bytes, set[bytes]] = defaultdict(set)
    for i in range(len(host) - span + 1):
        found[image[i : i + n]].add(host.letters[i : i + span])
    return {key: sorted(sources) for key, sources in found.items()}


def language_image(rule: LocalRule, host: Word, n: int) -> FactorSet:
    """Images of every length-(n+r-1) factor of ``host``, each factor mapped on its own."""
    span = _require_length(rule, host, n)
    host = host.over(rule.input_alphabet)
    images = {
        apply(rule, Word(rule.input_alphabet, factor)).letters
        for factor in windows(host.letters, span)
    }
    return FactorSet(
        n=n, factors=tuple(Word(rule.output_alphabet, image) for image in sorted(images))
    )


def injective_on_language(rule: LocalRule, host: Word, n: int) -> bool:
    """True iff distinct length-(n+r-1) factors of ``host`` have distinct images."""
    groups = antecedent_map(rule, host, n)
    collisions = [image for image, sources in groups.items() if len(sources) > 1]
    if collisions:
        logger.debug(f"{rule.name} collides on {len(collisions)} image factor(s) of length {n}")
    return not collisions


def antecedents(rule: LocalRule, host: Word, image_factor: Word) -> FactorSet:
    """All factors of ``host`` of length |image_factor|+r-1 mapping onto ``image_factor``."""
    n = len(image_factor)
    groups = antecedent_map(rule, host, n)
    try:
        target = image_factor.over(rule.output_alphabet).letters
    except AlphabetError:
        return FactorSet(n=n + rule.radius - 1, factors=())
    sources = groups.get(target, [])
    return FactorSet(
        n=n + rule.radius - 1,
        factors=tuple(Word(rule.input_alphabet, s) for s in sources),
    )


def exchange_commutes(rule: LocalRule, host: Word) -> bool:
    """True iff F(E(host)) = E(F(host)) letter for letter.

    Raises:
        AlphabetError: if the rule's alphabets are not binary.
    """
    if rule.input_alphabet.size != 2 or rule.output_alphabet.size != 2:
        raise AlphabetError(f"{rule.name}: exchange commutation needs binary alphabets")
    host = host.over(rule.input_alphabet)
    return apply(rule, exchange(host)) == exchange(apply(rule, host))
