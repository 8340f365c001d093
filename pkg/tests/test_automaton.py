"""Tests for local rules, their application, and their action on factor languages."""

import random

import pytest

from src.domain.errors import AlphabetError, BoundaryError, RuleError
from src.domain.rules.automaton import (
    apply,
    build_rule,
    exchange_rule,
    invariant_rule,
    profile,
    random_rule,
    run_length_rule,
)
from src.domain.rules.language import (
    antecedent_map,
    antecedents,
    exchange_commutes,
    injective_on_language,
    language_image,
)
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.word import BINARY, Alphabet, Word
from src.domain.services.words import factor_set, reflect


def w(text: str) -> Word:
    return Word.from_text(text)


class TestApply:
    """Sliding application F(w)."""

    def test_run_length_rule(self):
        """aabaa -> aa,ab,ba,aa -> abba."""
        assert apply(run_length_rule(1), w("aabaa")).text == "abba"

    def test_image_length(self):
        """|F(w)| = |w| - r + 1."""
        assert len(apply(run_length_rule(3), w("a" * 10))) == 7

    def test_short_input_gives_empty_image(self):
        """Inputs shorter than the radius map to the empty word."""
        assert len(apply(run_length_rule(2), w("aa"))) == 0

    def test_invariant_and_exchange(self):
        """H keeps the first letter of each window, G exchanges it."""
        assert apply(invariant_rule(2), w("abaab")).text == "abaa"
        assert apply(exchange_rule(2), w("abaab")).text == "babb"

    def test_foreign_letter(self):
        """Applying a binary rule to a ternary word fails."""
        with pytest.raises(AlphabetError):
            apply(run_length_rule(1), Word.from_text("abc", Alphabet.of("abc")))

    def test_lookup(self):
        """Single-window lookup agrees with the table."""
        rule = run_length_rule(1)
        assert rule.lookup(w("aa")) == "a"
        assert rule.lookup(w("ba")) == "b"


class TestRuleCatalogue:
    """Rule construction."""

    def test_table_size_checked(self):
        """A radius-2 binary rule needs 4 entries."""
        with pytest.raises(RuleError, match="needs 4 entries"):
            LocalRule(BINARY, BINARY, 2, (0, 1, 1))

    def test_random_rule_reproducible(self):
        """Same seed, same table."""
        assert random_rule(2, 7).table == random_rule(2, 7).table
        assert len(random_rule(3, 7).table) == 8

    def test_build_rule_unknown(self):
        """Unknown names list the valid ones."""
        with pytest.raises(RuleError, match="runlength"):
            build_rule("nope")

    def test_run_length_needs_positive_l(self):
        """l = 0 is rejected."""
        with pytest.raises(RuleError):
            run_length_rule(0)


class TestProfile:
    """Rule predicates."""

    def test_run_length_profile(self):
        """The run-length rule is stable and surjective, but not first-letter determined."""
        result = profile(run_length_rule(1))
        assert result.stable
        assert result.surjective
        assert not result.invariant
        assert not result.first_letter_determined

    def test_invariant_profile(self):
        """H(xy) = x is invariant and first-letter determined, not stable for r=2."""
        result = profile(invariant_rule(2))
        assert result.invariant
        assert result.first_letter_determined
        assert not result.stable

    def test_exchange_profile(self):
        """G is first-letter determined but not invariant."""
        result = profile(exchange_rule(2))
        assert result.first_letter_determined
        assert not result.invariant

    def test_radius_one_invariant_is_stable(self):
        """With r=1 every window is a palindrome."""
        assert profile(invariant_rule(1)).stable


class TestLanguage:
    """Images, antecedents and injectivity on the factor language."""

    def test_language_image_is_image_language(self, fib):
        """Images of the length-(n+r-1) factors are the length-n factors of F(u)."""
        rule = run_length_rule(1)
        for n in (1, 3, 6):
            expected = factor_set(apply(rule, fib), n).texts
            assert language_image(rule, fib, n).texts == expected

    def test_antecedents(self):
        """Both ab and ba map onto b."""
        found = antecedents(run_length_rule(1), w("aabaa"), w("b"))
        assert found.texts == ["ab", "ba"]

    def test_antecedent_map_groups(self):
        """Keys are image factors, values the sorted antecedents."""
        groups = antecedent_map(run_length_rule(1), w("aabaa"), 1)
        assert groups[b"\x00"] == [b"\x00\x00"]
        assert groups[b"\x01"] == [b"\x00\x01", b"\x01\x00"]

    def test_host_too_short(self):
        """Image length n needs n+r-1 host letters."""
        with pytest.raises(BoundaryError):
            antecedent_map(run_length_rule(2), w("aab"), 2)

    def test_identity_is_injective(self, fib):
        """The radius-1 projection never merges factors."""
        assert injective_on_language(invariant_rule(1), fib, 5)

    def test_run_length_merges_short_factors(self, fib):
        """ab and ba both map to b."""
        assert not injective_on_language(run_length_rule(1), fib, 1)

    def test_exchange_commutes_for_invariant_rules(self, fib):
        """F(E(u)) = E(F(u)) for H and G."""
        assert exchange_commutes(invariant_rule(2), fib)
        assert exchange_commutes(exchange_rule(3), fib)

    def test_run_length_does_not_commute(self, fib):
        """E(u) contains bb, which Fibonacci never does."""
        assert not exchange_commutes(run_length_rule(1), fib)

    def test_exchange_commutes_needs_binary(self):
        """Ternary rules have no exchange."""
        ternary = Alphabet.of("abc")
        with pytest.raises(AlphabetError):
            exchange_commutes(random_rule(1, 0, ternary), Word.from_text("abc", ternary))


class TestRandomRules:
    """Laws that hold for every rule on every finite word, on seeded random samples."""

    def test_length_and_image_language(self):
        """|F(w)| = |w| - r + 1, and factors of F(w) are images of factors of w."""
        rng = random.Random(11)
        for trial in range(25):
            rule = random_rule(rng.randint(1, 4), trial)
            word = w("".join(rng.choice("ab") for _ in range(rng.randint(10, 60))))
            image = apply(rule, word)
            assert len(image) == len(word) - rule.radius + 1
            n = rng.randint(1, 5)
            assert language_image(rule, word, n).texts == factor_set(image, n).texts

    def test_bound_and_injectivity(self):
        """p_F(w)(n) <= p_w(n+r-1), with equality exactly when F is injective there."""
        rng = random.Random(12)
        for trial in range(25):
            rule = random_rule(rng.randint(1, 3), 100 + trial)
            word = w("".join(rng.choice("ab") for _ in range(50)))
            n = rng.randint(1, 4)
            p_image = len(language_image(rule, word, n))
            p_word = len(factor_set(word, n + rule.radius - 1))
            assert p_image <= p_word
            assert (p_image == p_word) == injective_on_language(rule, word, n)


class TestActionLaws:
    """Identities of F on individual words."""

    @pytest.mark.parametrize(
        "rule",
        [run_length_rule(1), run_length_rule(2), run_length_rule(3), invariant_rule(1)],
        ids=lambda rule: rule.name,
    )
    def test_stable_rules_commute_with_reflection(self, rule, fib):
        """F(reflect(w)) = reflect(F(w)) for factors w of the host."""
        assert profile(rule).stable
        rng = random.Random(21)
        for _ in range(100):
            start = rng.randrange(0, len(fib) - 80)
            factor = fib.slice(start, start + rng.randint(rule.radius, 80))
            assert apply(rule, reflect(factor)) == reflect(apply(rule, factor))

    @pytest.mark.parametrize("r", [1, 2, 3, 5])
    def test_invariant_rules_truncate(self, r, fib):
        """An invariant rule returns w without its last r-1 letters."""
        rng = random.Random(22)
        for _ in range(100):
            start = rng.randrange(0, len(fib) - 80)
            factor = fib.slice(start, start + rng.randint(r, 80))
            assert apply(invariant_rule(r), factor) == factor.prefix(len(factor) - r + 1)
