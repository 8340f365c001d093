"""Tests for prefix generators."""

import pytest
from pydantic import ValidationError

from src.domain.errors import DirectiveExhaustedError, WordcaError
from src.domain.rules.automaton import apply, run_length_rule
from src.domain.schemas.generator import ASturmianParams, DirectiveSequence, GeneratorSpec
from src.domain.schemas.word import Word
from src.domain.services.generators import (
    ASturmianSource,
    ChampernowneSource,
    CharacteristicSturmianSource,
    FibonacciSource,
    ImageSource,
    a_sturmian,
    build_source,
    champernowne,
    characteristic_sturmian,
    fibonacci,
    periodic,
    resolve_spec,
    take,
)
from src.pipeline.analyzers import factor_complexity
from src.pipeline.structure import balance_coefficient


class TestFibonacci:
    """Fixed point of a -> ab, b -> a."""

    def test_first_letters(self):
        """The classic prefix."""
        assert fibonacci(8).text == "abaababa"

    def test_prefix_coherent(self):
        """Shorter prefixes are prefixes of longer ones."""
        source = FibonacciSource()
        long = source.prefix(500).text
        assert source.prefix(37).text == long[:37]

    def test_relabelled_letters(self):
        """Over 0/1 the heavy letter a becomes 0."""
        assert build_source("fibonacci01").prefix(13).text == "0100101001001"
        assert build_source("fibonacci10").prefix(5).text == "10110"


class TestCharacteristicSturmian:
    """Standard-word construction from directive sequences."""

    def test_all_ones_directive_gives_fibonacci(self):
        """Directive (1, 1, 1, ...) is the Fibonacci word."""
        directive = DirectiveSequence(coefficients=(1,), period=(1,))
        assert characteristic_sturmian(directive, 300) == fibonacci(300)

    def test_second_slope(self):
        """Directive (2, 1, 1, ...) starts with s_3 = aabaaab."""
        directive = DirectiveSequence(coefficients=(2,), period=(1,))
        assert characteristic_sturmian(directive, 7).text == "aabaaab"

    def test_finite_directive_exhausted(self):
        """A finite directive reports how many more coefficients are needed."""
        directive = DirectiveSequence(coefficients=(1, 1))
        with pytest.raises(DirectiveExhaustedError) as exc_info:
            characteristic_sturmian(directive, 5)
        assert exc_info.value.extra_coefficients == 1

    def test_finite_directive_stream_ends(self):
        """Without a period the stream stops after the leading coefficients."""
        assert list(DirectiveSequence(coefficients=(2, 3)).stream()) == [2, 3]
        assert DirectiveSequence(coefficients=(2, 3)).label() == "(2,3)"

    def test_zero_coefficient_rejected(self):
        """Coefficients must be positive."""
        with pytest.raises(ValidationError):
            DirectiveSequence(coefficients=(0,))


class TestASturmian:
    """Normal form a^l0 b a^(l+e1) b ..."""

    def test_template_unroll(self):
        """l0=1, l=1, epsilon = 0 1 0 0 1 ... gives ab ab aab ab ab aab."""
        params = ASturmianParams(l0=1, l=1, epsilon=build_source("fibonacci01"))
        assert a_sturmian(params, 13).text == "ababaabababaa"

    def test_leading_run_bounded(self):
        """l0 may not exceed l+1."""
        with pytest.raises(ValidationError):
            ASturmianParams(l0=3, l=1, epsilon=build_source("fibonacci01"))

    def test_epsilon_must_be_binary_digits(self):
        """epsilon has to be a 0/1 source."""
        with pytest.raises(ValidationError):
            ASturmianParams(l0=1, l=1, epsilon=FibonacciSource())

    def test_zero_leading_run(self):
        """l0 = 0 starts the word with b."""
        params = ASturmianParams(l0=0, l=2, epsilon=build_source("ones"))
        assert ASturmianSource(params).prefix(9).text == "baaabaaab"


class TestOtherSources:
    """Champernowne, periodic and image sources."""

    def test_champernowne(self):
        """Binary numerals 0 1 10 11 100 101 concatenated."""
        assert champernowne(10).text == "0110111001"

    def test_periodic(self):
        """seed^omega truncated."""
        assert periodic(Word.from_text("ab"), 5).text == "ababa"

    def test_periodic_empty_seed(self):
        """An empty seed cannot generate anything."""
        with pytest.raises(WordcaError):
            periodic(Word.empty(), 3)

    def test_image_source_matches_apply(self):
        """ImageSource.prefix(n) is F applied to n+r-1 source letters."""
        rule = run_length_rule(1)
        source = ImageSource(rule, FibonacciSource())
        assert source.prefix(40) == apply(rule, fibonacci(41))

    def test_take_from_word(self):
        """take accepts plain words too."""
        assert take(Word.from_text("abab"), 2).text == "ab"


class TestSpecs:
    """GeneratorSpec presets and the source factory."""

    def test_unknown_preset(self):
        """Unknown preset names list the valid ones."""
        with pytest.raises(WordcaError, match="fibonacci01"):
            resolve_spec("nope")

    def test_periodic_needs_seed(self):
        """The error names the missing field."""
        with pytest.raises(WordcaError, match="seed"):
            build_source(GeneratorSpec(kind="periodic"))

    def test_nested_asturmian_spec(self):
        """An a-Sturmian spec builds its epsilon source recursively."""
        spec = GeneratorSpec(kind="asturmian", l0=1, l=1, epsilon="fibonacci01")
        assert build_source(spec).prefix(7).text == "ababaab"


SOURCES = {
    "fibonacci": lambda: FibonacciSource(),
    "sturmian01": lambda: build_source("sturmian01"),
    "sturmian-3-1-2": lambda: CharacteristicSturmianSource(
        DirectiveSequence(coefficients=(3, 1), period=(2,))
    ),
    "asturmian": lambda: build_source(
        GeneratorSpec(kind="asturmian", l0=1, l=2, epsilon="sturmian01")
    ),
    "champernowne": lambda: ChampernowneSource(),
    "periodic": lambda: build_source(GeneratorSpec(kind="periodic", seed="aab")),
    "image": lambda: ImageSource(run_length_rule(2), FibonacciSource()),
}


class TestPrefixCoherence:
    """prefix(m) is a prefix of prefix(n) for m <= n, whatever was generated first."""

    @pytest.mark.parametrize("name", list(SOURCES))
    def test_short_then_long(self, name):
        """Extending the cache keeps the letters already handed out."""
        source = SOURCES[name]()
        short = [source.prefix(m) for m in (1, 17, 1000, 33_333)]
        long = source.prefix(100_000)
        assert len(long) == 100_000
        for word in short:
            assert long.prefix(len(word)) == word

    @pytest.mark.parametrize("name", list(SOURCES))
    def test_independent_sources_agree(self, name):
        """A fresh source asked for a short prefix agrees with a long one."""
        long = SOURCES[name]().prefix(100_000)
        assert SOURCES[name]().prefix(4321) == long.prefix(4321)


class TestSturmianInvariants:
    """Properties every characteristic or a-Sturmian prefix must have."""

    def test_all_ones_directive_on_long_prefix(self):
        """Directive (1, 1, 1, ...) and the Fibonacci substitution agree on 10^5 letters."""
        directive = DirectiveSequence(coefficients=(1,), period=(1,))
        assert characteristic_sturmian(directive, 100_000) == fibonacci(100_000)

    @pytest.mark.parametrize(
        "directive",
        [
            DirectiveSequence(coefficients=(1,), period=(1,)),
            DirectiveSequence(coefficients=(2,), period=(1,)),
            DirectiveSequence(coefficients=(3, 1), period=(2,)),
            DirectiveSequence(coefficients=(1,), period=(4, 1)),
        ],
    )
    def test_characteristic_words_are_balanced(self, directive):
        """Every characteristic word is 1-balanced."""
        word = characteristic_sturmian(directive, 10_000)
        assert balance_coefficient(word, 500).alpha == 1

    def test_periodic_epsilon_bounds_complexity(self):
        """epsilon = 1^omega gives a^l0 b (a^(l+1) b)^omega, eventually periodic."""
        params = ASturmianParams(l0=1, l=2, epsilon=build_source("ones"))
        word = a_sturmian(params, 5000)
        counts = [factor_complexity(word, n).value for n in range(1, 51)]
        assert max(counts) <= (params.l + 2) + (params.l0 + 1)
        assert counts[-1] == counts[-10]
