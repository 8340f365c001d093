"""Tests for the rule-transfer, stability and fixed-point checks."""

import pytest

from src.domain.errors import AlphabetError
from src.domain.rules.automaton import exchange_rule, invariant_rule, random_rule, run_length_rule
from src.domain.schemas.verdict import VerdictStatus
from src.domain.schemas.word import Alphabet, Word
from src.domain.services.generators import (
    FibonacciSource,
    build_source,
    champernowne,
    fibonacci,
    periodic,
)
from src.domain.validators import (
    check_balance_equivalence,
    check_fixed_point,
    check_mod_preservation,
    check_periodicity,
    check_special_identity,
    check_special_provenance,
    check_stability_richness,
    check_sturmian_characterizations,
    check_transfer,
)
from src.domain.validators.transfer import host_for

PASS = VerdictStatus.PASS


def w(text: str) -> Word:
    return Word.from_text(text)


class TestSturmianCharacterizations:
    """All Sturmian laws on one prefix."""

    def test_fibonacci_passes(self):
        """p = n+1, rho_ab = 2, pal by parity, 1-balanced, increasing p."""
        verdict = check_sturmian_characterizations(FibonacciSource(), 5000, 30)
        assert verdict.status == PASS
        assert verdict.config["source"] == FibonacciSource().id

    def test_other_slope_passes(self):
        """A characteristic word with another directive is Sturmian too."""
        source = build_source("sturmian01")
        assert check_sturmian_characterizations(source, 5000, 30).status == PASS

    def test_laws_ignore_window_convergence(self):
        """Few aligned blocks at large n leave p, pal and rho_ab rows decided."""
        verdict = check_sturmian_characterizations(FibonacciSource(), 20_000, 100)
        assert verdict.status == PASS
        for quantity in ("p", "pal", "rho_ab"):
            rows = [row for row in verdict.rows if row.quantity == quantity]
            assert len(rows) == 100
            assert all(row.converged for row in rows)

    def test_periodic_fails(self):
        """(ab)^omega has p(n) = 2."""
        verdict = check_sturmian_characterizations(periodic(w("ab"), 2000), 2000, 10)
        assert verdict.status == VerdictStatus.FAIL
        assert any(row.quantity == "p" for row in verdict.failures)

    def test_champernowne_fails(self):
        """Champernowne is unbalanced with full complexity."""
        verdict = check_sturmian_characterizations(champernowne(4000), 4000, 8)
        assert verdict.status == VerdictStatus.FAIL
        assert any("imbalance" in note for note in verdict.notes)


class TestTransfer:
    """p_F(u)(n) <= p_u(n+r-1) and its equality case."""

    def test_run_length_on_fibonacci(self):
        """The bound holds and equality tracks injectivity."""
        verdict = check_transfer(run_length_rule(1), FibonacciSource(), 20, 5000)
        assert verdict.status == PASS

    def test_equality_beyond_n0(self, image_l1):
        """Long factors of F(v) have unique antecedents, so the bound is attained."""
        verdict = check_transfer(
            image_l1.rule, image_l1.v, n_max=12, prefix_length=20_000, equality_from=5
        )
        assert verdict.status == PASS

    def test_random_rules(self):
        """Arbitrary radius-2 rules respect the bound."""
        rules = [random_rule(2, seed) for seed in range(5)]
        verdict = check_transfer(rules, FibonacciSource(), 15, 3000)
        assert verdict.status == PASS
        assert len(verdict.config["rules"]) == 5

    def test_identity_attains_bound(self):
        """The radius-1 projection is injective, so equality holds from n = 1."""
        verdict = check_transfer(invariant_rule(1), FibonacciSource(), 15, 3000, equality_from=1)
        assert verdict.status == PASS

    def test_host_for_relabels(self):
        """A 0/1 source is read as a/b by binary rules."""
        host = host_for(run_length_rule(1), build_source("fibonacci01"), 5)
        assert host.text == "abaab"


class TestModuloRecurrence:
    """u and F(u) are modulo-recurrent together."""

    def test_fibonacci_under_run_length(self):
        """Both sides are modulo-recurrent."""
        verdict = check_mod_preservation(run_length_rule(1), FibonacciSource(), 5, 5000)
        assert verdict.status == PASS

    def test_periodic_under_identity(self):
        """Both sides fail at n = 2 and agree."""
        verdict = check_mod_preservation(invariant_rule(1), periodic(w("ab"), 5000), 4, 5000)
        assert verdict.status == PASS
        n2 = next(row for row in verdict.rows if row.n == 2 and row.quantity == "modulo-recurrent")
        assert n2.expected is False and n2.observed is False

    def test_short_prefix_noted(self):
        """Horizons too short to decide are excluded and listed."""
        verdict = check_mod_preservation(invariant_rule(1), periodic(w("ab"), 20), 2, 20)
        assert any("inconclusive" in note for note in verdict.notes)

    def test_champernowne_up_to_ten(self):
        """Rare factors of Champernowne leave rows undecided instead of failing them."""
        verdict = check_mod_preservation(invariant_rule(2), champernowne(25_000), 10, 20_000)
        assert verdict.status == PASS
        assert not any(
            row.expected is False or row.observed is False
            for row in verdict.rows
            if row.quantity == "modulo-recurrent"
        )


class TestPeriodicity:
    """Images of periodic words."""

    def test_period_divides_seed(self):
        """runlength(1) on (aab)^omega gives (abb)^omega."""
        verdict = check_periodicity(run_length_rule(1), w("aab"))
        assert verdict.status == PASS
        assert verdict.rows[0].observed == 3

    def test_period_can_shrink(self):
        """runlength(1) on (ab)^omega is constant b."""
        verdict = check_periodicity(run_length_rule(1), w("ab"))
        assert verdict.status == PASS
        assert "do not share" in verdict.notes[0]

    def test_invariant_rule_keeps_period(self):
        """H preserves the smallest period."""
        verdict = check_periodicity(invariant_rule(2), w("aab"))
        assert verdict.status == PASS
        assert len(verdict.rows) == 2

    def test_empty_seed(self):
        """No seed, no periodic word."""
        with pytest.raises(ValueError):
            check_periodicity(run_length_rule(1), Word.empty())

    @pytest.mark.parametrize("prefix_length", [0, -5])
    def test_prefix_length_must_be_positive(self, prefix_length):
        """An empty prefix has no period to compare."""
        with pytest.raises(ValueError, match="Prefix length"):
            check_periodicity(run_length_rule(1), w("aab"), prefix_length)


class TestStability:
    """Reflection closure and richness of F(v)."""

    def test_image_is_rich(self, image_l1):
        """F(v) is reflection-closed and rich."""
        verdict = check_stability_richness(image_l1)
        assert verdict.status == PASS, verdict.failures

    def test_palindrome_transfer_rows(self, image_l1):
        """Beyond n0 every factor has one antecedent, so pal rows appear."""
        verdict = check_stability_richness(image_l1)
        assert any(row.quantity.startswith("pal_F(n)") for row in verdict.rows)


class TestSpecialProvenance:
    """Special factors of F(u) come from special factors of u."""

    def test_invariant_rule(self):
        """H on Fibonacci."""
        verdict = check_special_provenance(invariant_rule(2), FibonacciSource(), 8, 5000)
        assert verdict.status == PASS

    def test_exchange_rule(self):
        """G on a characteristic word."""
        verdict = check_special_provenance(exchange_rule(3), build_source("sturmian01"), 8, 5000)
        assert verdict.status == PASS

    def test_run_length_skipped(self):
        """The run-length rule is not first-letter determined."""
        verdict = check_special_provenance(run_length_rule(1), FibonacciSource())
        assert verdict.status == VerdictStatus.SKIPPED


class TestSpecialIdentity:
    """p(n+1) - p(n) against the right-special excess."""

    def test_every_source_passes(self, image_l1):
        """Sturmian, Champernowne, periodic and image prefixes all satisfy the identity."""
        sources = {
            "fibonacci": FibonacciSource(),
            "champernowne": champernowne(4000),
            "periodic": periodic(w("aab"), 4000),
            "F(v)": image_l1.image,
        }
        verdict = check_special_identity(sources, n_max=20, prefix_length=4000)
        assert verdict.status == PASS
        assert verdict.theorem_id == "special-identity"
        assert len(verdict.rows) == 4 * 21
        assert all(row.converged for row in verdict.rows)

    def test_rows_name_their_source(self):
        """Each row carries the label of the word it was evaluated on."""
        verdict = check_special_identity({"u": fibonacci(500)}, n_max=3, prefix_length=500)
        assert [row.quantity for row in verdict.rows] == ["p(n+1)-p(n) = right excess [u]"] * 4
        assert [row.observed for row in verdict.rows] == [1, 1, 1, 1]

    def test_short_word_caps_lengths(self):
        """Lengths stop one short of the prefix."""
        verdict = check_special_identity({"u": w("abaab")}, n_max=10, prefix_length=5)
        assert [row.n for row in verdict.rows] == [0, 1, 2, 3, 4]
        assert verdict.status == PASS


class TestFixedPoint:
    """H fixes u, G maps u to E(u)."""

    def test_fibonacci(self):
        """All identities and p_G(u) = p_u."""
        assert check_fixed_point(FibonacciSource(), 2, 3000, 20).status == PASS

    def test_binary_digits_relabelled(self):
        """A 0/1 word is read over a/b."""
        assert check_fixed_point(champernowne(3000), 3, 3000, 8).status == PASS

    def test_ternary_rejected(self):
        """E needs two letters."""
        with pytest.raises(AlphabetError):
            check_fixed_point(Word.from_text("abcabc", Alphabet.of("abc")))


class TestBalanceEquivalence:
    """F(u) balanced iff u balanced, for first-letter-determined F."""

    def test_both_balanced(self):
        """G on Fibonacci keeps alpha = 1."""
        verdict = check_balance_equivalence(exchange_rule(2), FibonacciSource(), 30, 4000)
        assert verdict.status == PASS

    def test_both_unbalanced(self):
        """(aabb)^omega and its identity image are both 2-unbalanced."""
        verdict = check_balance_equivalence(invariant_rule(1), periodic(w("aabb"), 4000), 10, 4000)
        assert verdict.status == PASS
        assert verdict.rows[0].expected is False

    def test_run_length_skipped(self):
        """Not first-letter determined."""
        verdict = check_balance_equivalence(run_length_rule(1), FibonacciSource())
        assert verdict.status == VerdictStatus.SKIPPED
