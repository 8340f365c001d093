"""Prefix sources for the infinite words under study.

Every source is deterministic and prefix-coherent: ``prefix(n)`` is always the
first n letters of ``prefix(m)`` for m >= n. Sources cache the longest prefix
produced so far; the cache is guarded by a lock so concurrent readers observe
the same result as a serialized run.
"""

from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from itertools import count
from typing import TYPE_CHECKING, Any

from src.domain.errors import DirectiveExhaustedError, WordcaError
from src.domain.schemas.generator import ASturmianParams, DirectiveSequence, GeneratorSpec
from src.domain.schemas.word import BINARY, Alphabet, Word

if TYPE_CHECKING:
    from src.domain.schemas.rule import LocalRule

logger = logging.getLogger(__name__)


class PrefixSource(ABC):
    """Lazily extensible prefixes of one infinite word."""

    def __init__(self, id: str, alphabet: Alphabet, parameters: dict[str, Any] | None = None):
        self.id = id
        self.alphabet = alphabet
        self.parameters = parameters or {}
        self._cache = b""
        self._lock = threading.Lock()

    def prefix(self, n: int) -> Word:
        """Return the length-``n`` prefix."""
        if n < 0:
            raise ValueError(f"Prefix length must be non-negative, got {n}")
        with self._lock:
            if len(self._cache) < n:
                letters = self._generate(n)
                if len(letters) < n:
                    raise WordcaError(f"{self.id} produced {len(letters)} letters, need {n}")
                self._cache = letters
            cached = self._cache
        return Word(self.alphabet, cached[:n])

    @abstractmethod
    def _generate(self, n: int) -> bytes:
        """Produce at least ``n`` packed letters, starting from the beginning."""

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.id})"


class FibonacciSource(PrefixSource):
    """Fixed point of a -> ab, b -> a, obtained by iterating the substitution."""

    def __init__(self, letters: str = "ab"):
        super().__init__(
            id="fibonacci" if letters == "ab" else f"fibonacci[{letters}]",
            alphabet=Alphabet.of(letters),
        )

    def _generate(self, n: int) -> bytes:
        word = b"\x00"
        while len(word) < n:
            # 0 -> 0 2, 1 -> 0, then the placeholder 2 -> 1
            word = word.replace(b"\x00", b"\x00\x02").replace(b"\x01", b"\x00")
            word = word.replace(b"\x02", b"\x01")
        return word


class CharacteristicSturmianSource(PrefixSource):
    """Characteristic Sturmian word of a directive sequence.

    Built from the standard words s_{-1} = b, s_0 = a, s_k = s_{k-1}^{d_k} s_{k-2};
    each s_k is a prefix of the limit, which has slope [0; 1+d_1, d_2, ...].
    """

    def __init__(self, directive: DirectiveSequence, letters: str = "ab"):
        super().__init__(
            id=f"sturmian{directive.label()}",
            alphabet=Alphabet.of(letters),
            parameters={"directive": directive.coefficients, "period": directive.period},
        )
        self.directive = directive

    def _generate(self, n: int) -> bytes:
        previous, current = b"\x01", b"\x00"
        stream = self.directive.stream()
        while len(current) < n:
            d = next(stream, None)
            if d is None:
                extra = _missing_coefficients(len(previous), len(current), n)
                raise DirectiveExhaustedError(
                    f"Directive {self.directive.label()} certifies only {len(current)} letters; "
                    f"extend it by at least {extra} coefficient(s) to reach {n}",
                    extra_coefficients=extra,
                )
            previous, current = current, current * d + previous
        return current


def _missing_coefficients(previous: int, current: int, n: int) -> int:
    """Smallest number of further coefficients (each >= 1) that reach length n."""
    extra = 0
    while current < n:
        previous, current = current, current + previous
        extra += 1
    return extra


class ASturmianSource(PrefixSource):
    """Normal form a^l0 b a^(l+e1) b a^(l+e2) b ... with e_i read from a 0/1 source."""

    def __init__(self, params: ASturmianParams):
        super().__init__(
            id=f"asturmian(l0={params.l0},l={params.l},eps={params.epsilon.id})",
            alphabet=BINARY,
            parameters={"l0": params.l0, "l": params.l, "epsilon": params.epsilon.id},
        )
        self.params = params

    def _generate(self, n: int) -> bytes:
        l0, l = self.params.l0, self.params.l
        epsilon: PrefixSource = self.params.epsilon
        # every block after the first has at least l+1 letters
        blocks_needed = n // (l + 1) + 1
        values = epsilon.prefix(blocks_needed)
        block = {0: b"\x00" * l + b"\x01", 1: b"\x00" * (l + 1) + b"\x01"}
        parts = [b"\x00" * l0 + b"\x01"]
        for symbol in values:
            parts.append(block[int(symbol)])
        return b"".join(parts)


class ChampernowneSource(PrefixSource):
    """Binary Champernowne word 0 1 10 11 100 ... (binary numerals concatenated)."""

    def __init__(self, letters: str = "01"):
        super().__init__(id="champernowne", alphabet=Alphabet.of(letters))

    def _generate(self, n: int) -> bytes:
        parts: list[str] = []
        total = 0
        for k in count():
            digits = format(k, "b")
            parts.append(digits)
            total += len(digits)
            if total >= n:
                break
        return bytes(int(d) for d in "".join(parts))


class PeriodicSource(PrefixSource):
    """Purely periodic word seed^omega."""

    def __init__(self, seed: Word):
        if len(seed) < 1:
            raise WordcaError("Periodic seed must be non-empty")
        super().__init__(id=f"periodic({seed.text})", alphabet=seed.alphabet)
        self.seed = seed

    def _generate(self, n: int) -> bytes:
        repeats = -(-n // len(self.seed))
        return self.seed.letters * repeats


class ImageSource(PrefixSource):
    """Image F(u) of a source under a local rule; prefix(n) needs n+r-1 source letters."""

    def __init__(self, rule: LocalRule, source: PrefixSource):
        super().__init__(
            id=f"{rule.name}({source.id})",
            alphabet=rule.output_alphabet,
            parameters={"rule": rule.name, "source": source.id},
        )
        self.rule = rule
        self.source = source

    def _generate(self, n: int) -> bytes:
        from src.domain.rules.automaton import apply

        return apply(self.rule, self.source.prefix(n + self.rule.radius - 1)).letters


_FIBONACCI = FibonacciSource()
_CHAMPERNOWNE = ChampernowneSource()


def fibonacci(n: int) -> Word:
    """Length-n prefix of the Fibonacci word over {a,b}."""
    return _FIBONACCI.prefix(n)


def characteristic_sturmian(d: DirectiveSequence, n: int, letters: str = "ab") -> Word:
    """Length-n prefix of the characteristic Sturmian word with directive ``d``.

    Raises:
        DirectiveExhaustedError: if ``d`` is finite and too short for ``n`` letters.
    """
    return CharacteristicSturmianSource(d, letters).prefix(n)


def a_sturmian(p: ASturmianParams, n: int) -> Word:
    """Length-n prefix of the a-Sturmian normal form described by ``p``."""
    return ASturmianSource(p).prefix(n)


def champernowne(n: int) -> Word:
    """Length-n prefix of the binary Champernowne word."""
    return _CHAMPERNOWNE.prefix(n)


def periodic(seed: Word, n: int) -> Word:
    """Length-n prefix of seed repeated forever."""
    return PeriodicSource(seed).prefix(n)


EPSILON_PRESETS: dict[str, GeneratorSpec] = {
    "fibonacci01": GeneratorSpec(kind="fibonacci", letters="01"),
    "fibonacci10": GeneratorSpec(kind="fibonacci", letters="10"),
    "sturmian01": GeneratorSpec(kind="sturmian", letters="01", directive=(2,), period=(1,)),
    "ones": GeneratorSpec(kind="periodic", seed="1", alphabet="01"),
}


def resolve_spec(spec: str | GeneratorSpec) -> GeneratorSpec:
    """Turn a preset name into its spec; specs pass through."""
    if isinstance(spec, GeneratorSpec):
        return spec
    if spec in EPSILON_PRESETS:
        return EPSILON_PRESETS[spec]
    raise WordcaError(
        f"Unknown generator preset '{spec}'. Valid presets: {', '.join(sorted(EPSILON_PRESETS))}"
    )


def build_source(spec: str | GeneratorSpec) -> PrefixSource:
    """Construct the prefix source described by ``spec``.

    Raises:
        WordcaError: on unknown presets or missing kind-specific fields.
    """
    spec = resolve_spec(spec)
    logger.debug(f"Building source {spec.label}")

    if spec.kind == "fibonacci":
        return FibonacciSource(spec.letters or "ab")
    if spec.kind == "sturmian":
        directive = DirectiveSequence(coefficients=spec.directive, period=spec.period)
        return CharacteristicSturmianSource(directive, spec.letters or "ab")
    if spec.kind == "champernowne":
        return ChampernowneSource(spec.letters or "01")
    if spec.kind == "periodic":
        if not spec.seed:
            raise WordcaError("seed: periodic words need a non-empty seed")
        alphabet = Alphabet.of(spec.alphabet or default_alphabet(spec.seed))
        return PeriodicSource(Word.from_text(spec.seed, alphabet))
    # asturmian
    params = ASturmianParams(
        l0=spec.l if spec.l0 is None else spec.l0,
        l=spec.l,
        epsilon=build_source(spec.epsilon),
    )
    return ASturmianSource(params)


def default_alphabet(seed: str) -> str:
    if set(seed) <= {"a", "b"}:
        return "ab"
    if set(seed) <= {"0", "1"}:
        return "01"
    return "".join(sorted(set(seed)))


def take(source: PrefixSource | Word, n: int) -> Word:
    """Length-n prefix of a source, or of an already generated word.

    A word shorter than ``n`` is returned whole, with a warning.
    """
    if isinstance(source, PrefixSource):
        return source.prefix(n)
    if len(source) < n:
        logger.warning(f"Requested {n} letters from a word of length {len(source)}")
    return source.prefix(n)


def describe_source(source: PrefixSource | Word) -> str:
    if isinstance(source, PrefixSource):
        return source.id
    return f"word(len={len(source)})"
