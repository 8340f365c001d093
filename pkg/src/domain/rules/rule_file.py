"""Rule file format.

One entry per line, ``<window> <output-letter>``, in any order; ``#`` starts a
comment and blank lines are ignored. Every one of the q^r windows must appear.

    # runlength(l=1)
    aa a
    ab b
    ba b
    bb b
"""

import logging
from pathlib import Path

from src.domain.errors import AlphabetError, RuleFileError
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.word import Alphabet

logger = logging.getLogger(__name__)


def parse_rule_text(
    text: str,
    alphabet: Alphabet,
    output_alphabet: Alphabet | None = None,
    name: str = "rule-file",
) -> LocalRule:
    """Parse rule-file text into a total LocalRule.

    Raises:
        RuleFileError: on malformed lines, conflicting entries, mixed window
            lengths, or missing windows (listed in ``missing_windows``).
    """
    output_alphabet = output_alphabet or alphabet
    entries: dict[bytes, int] = {}
    radius: int | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or len(parts[1]) != 1:
            raise RuleFileError(f"line {lineno}: expected '<window> <output-letter>', got '{raw}'")
        window_text, output_text = parts

        if radius is None:
            radius = len(window_text)
        elif len(window_text) != radius:
            raise RuleFileError(
                f"line {lineno}: window '{window_text}' has length {len(window_text)}, "
                f"earlier windows have length {radius}"
            )
        try:
            window = alphabet.encode(window_text)
            output = output_alphabet.index(output_text)
        except AlphabetError as exc:
            raise RuleFileError(f"line {lineno}: {exc}") from exc

        if window in entries and entries[window] != output:
            raise RuleFileError(f"line {lineno}: conflicting output for window '{window_text}'")
        entries[window] = output

    if radius is None:
        raise RuleFileError("Rule file has no entries")

    # Build a throwaway rule only to enumerate windows in table order
    order = LocalRule(alphabet, alphabet, radius, (0,) * alphabet.size**radius)
    missing = [alphabet.decode(w) for w in order.windows() if w not in entries]
    if missing:
        raise RuleFileError(
            f"Rule file is not total: {len(missing)} window(s) missing: {', '.join(missing)}",
            missing_windows=missing,
        )
    table = tuple(entries[w] for w in order.windows())
    return LocalRule(alphabet, output_alphabet, radius, table, name=name)


def load_rule_file(
    path: Path | str, alphabet: Alphabet, output_alphabet: Alphabet | None = None
) -> LocalRule:
    """Read and validate a rule file from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise RuleFileError(f"rule-file: cannot read {path}: {exc}") from exc
    rule = parse_rule_text(text, alphabet, output_alphabet, name=path.stem)
    logger.info(f"Loaded rule {rule.name} (radius {rule.radius}) from {path}")
    return rule


def format_rule(rule: LocalRule) -> str:
    """Render ``rule`` in rule-file format, windows in table order."""
    lines = [f"# {rule.name}"]
    for window in rule.windows():
        output = rule.output_alphabet.letters[rule.table[rule.code(window)]]
        lines.append(f"{rule.input_alphabet.decode(window)} {output}")
    return "\n".join(lines) + "\n"
