"""Tests for the rule-file format."""

import pytest

from src.domain.errors import RuleFileError
from src.domain.rules.automaton import run_length_rule
from src.domain.rules.rule_file import format_rule, load_rule_file, parse_rule_text
from src.domain.schemas.word import BINARY, Alphabet

RUN_LENGTH_TEXT = """\
# runlength(l=1)
aa a
ab b   # trailing comment
ba b

bb b
"""


class TestParseRuleText:
    """Parsing and totality checks."""

    def test_total_rule(self):
        """All four windows of a radius-2 binary rule parse to the run-length table."""
        rule = parse_rule_text(RUN_LENGTH_TEXT, BINARY)
        assert rule.radius == 2
        assert rule.table == run_length_rule(1).table

    def test_missing_windows_listed(self):
        """A partial table names every missing window."""
        with pytest.raises(RuleFileError) as exc_info:
            parse_rule_text("aa a\nbb b\n", BINARY)
        assert exc_info.value.missing_windows == ["ab", "ba"]

    def test_conflicting_entries(self):
        """The same window with two outputs is rejected."""
        with pytest.raises(RuleFileError, match="conflicting"):
            parse_rule_text("aa a\naa b\nab a\nba a\nbb a\n", BINARY)

    def test_repeated_identical_entry_allowed(self):
        """Repeating an entry with the same output is harmless."""
        rule = parse_rule_text(RUN_LENGTH_TEXT + "aa a\n", BINARY)
        assert rule.table == run_length_rule(1).table

    def test_mixed_window_lengths(self):
        """All windows share one length."""
        with pytest.raises(RuleFileError, match="length"):
            parse_rule_text("aa a\naba b\n", BINARY)

    def test_malformed_line(self):
        """Lines need exactly a window and one letter."""
        with pytest.raises(RuleFileError, match="line 1"):
            parse_rule_text("aa\n", BINARY)

    def test_foreign_letter(self):
        """Windows must use the declared alphabet."""
        with pytest.raises(RuleFileError, match="line 1"):
            parse_rule_text("ac a\n", BINARY)

    def test_empty_file(self):
        """A file with only comments has no rule."""
        with pytest.raises(RuleFileError, match="no entries"):
            parse_rule_text("# nothing\n", BINARY)

    def test_output_alphabet(self):
        """Outputs may come from a different alphabet."""
        rule = parse_rule_text("a 0\nb 1\n", BINARY, Alphabet.of("01"))
        assert rule.output_alphabet.letters == ("0", "1")


class TestRuleFiles:
    """Reading and writing rule files."""

    def test_load_from_disk(self, tmp_path):
        """The rule is named after the file."""
        path = tmp_path / "runlength.txt"
        path.write_text(RUN_LENGTH_TEXT, encoding="utf-8")
        rule = load_rule_file(path, BINARY)
        assert rule.name == "runlength"
        assert rule.table == run_length_rule(1).table

    def test_missing_file(self, tmp_path):
        """Unreadable files are a rule-file error."""
        with pytest.raises(RuleFileError, match="cannot read"):
            load_rule_file(tmp_path / "absent.txt", BINARY)

    def test_format_then_parse(self):
        """format_rule writes a file parse_rule_text reads back to the same table."""
        rule = run_length_rule(2)
        assert parse_rule_text(format_rule(rule), BINARY).table == rule.table
