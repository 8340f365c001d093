"""Command-line front end: generate words, apply rules, tabulate complexities, run theorems.

Usage:
    wordca gen --word fibonacci --len 8
    wordca apply --rule runlength --l 1 --word-text aabaa
    wordca analyze --word fibonacci --len 100000 --n-max 100 --format csv
    wordca verify --theorem cc --l 1 --eps fibonacci01 --len 100000

Payload goes to stdout (or --output); diagnostics go to stderr.

Exit codes: 0 success, 1 a theorem failed, 2 bad input, 3 analyzer guard
violated or a theorem was inconclusive.
"""

import argparse
import logging
import sys
from typing import Any

from pydantic import ValidationError

from src.config import Settings, get_settings
from src.domain.errors import RuleFileError, WordcaError
from src.domain.rules.automaton import NAMED_RULES, apply, build_rule
from src.domain.rules.rule_file import load_rule_file
from src.domain.schemas.generator import GeneratorSpec
from src.domain.schemas.rule import LocalRule
from src.domain.schemas.verdict import ImageConfig
from src.domain.schemas.word import BINARY, Alphabet, Word
from src.domain.services.generators import build_source, default_alphabet
from src.domain.validators.transfer import host_for
from src.pipeline.analyzers import analysis_horizon, complexity_table
from src.pipeline.file_storage import render_table, save_output, to_json
from src.pipeline.suite import SuiteConfig, run_suite, theorem_ids

logger = logging.getLogger("wordca")

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_GUARD = 3

WORD_KINDS = ("fibonacci", "sturmian", "asturmian", "champernowne", "periodic")


class GuardViolation(Exception):
    """The prefix is too short for the requested n_max and --force was not given."""


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers, got '{text}'"
        ) from None


def create_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    common.add_argument("--output", default=None, help="Write the payload to this file")
    common.add_argument("--jobs", type=int, default=None, help="Worker threads")

    word = argparse.ArgumentParser(add_help=False)
    word.add_argument("--word", choices=WORD_KINDS, default="fibonacci", help="Generator")
    word.add_argument("--len", type=int, default=None, dest="length", help="Prefix length")
    word.add_argument("--seed", default=None, help="Seed word for --word periodic")
    word.add_argument("--directive", type=_int_list, default=None, help="e.g. 2,1,3")
    word.add_argument("--period", type=_int_list, default=None, help="Repeating directive tail")
    word.add_argument("--letters", default=None, help="Letter pair, e.g. ab or 01")
    word.add_argument("--l0", type=int, default=None, help="Leading a-run (a-Sturmian)")
    word.add_argument("--l", type=int, default=1, dest="l", help="Base a-run (a-Sturmian)")
    word.add_argument("--eps", default="fibonacci01", help="epsilon preset (a-Sturmian)")
    word.add_argument("--word-text", default=None, help="Use this literal word instead")
    word.add_argument("--alphabet", default=None, help="Alphabet of --word-text or --seed")

    rule = argparse.ArgumentParser(add_help=False)
    rule.add_argument("--rule", choices=NAMED_RULES, default=None, help="Named rule")
    rule.add_argument("--rule-file", default=None, help="Rule table file")
    rule.add_argument("--radius", type=int, default=2, help="Radius of invariant/exchange/random")
    rule.add_argument("--rule-seed", type=int, default=None, help="Seed of --rule random")

    parser = argparse.ArgumentParser(prog="wordca", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("gen", parents=[common, word], help="Print a word prefix")
    commands.add_parser("apply", parents=[common, word, rule], help="Apply a local rule")

    analyze = commands.add_parser("analyze", parents=[common, word], help="Complexity table")
    analyze.add_argument("--n-min", type=int, default=1)
    analyze.add_argument("--n-max", type=int, default=None)
    analyze.add_argument("--format", choices=("csv", "json"), default="csv")
    analyze.add_argument("--force", action="store_true", help="Skip the prefix-length guard")

    verify = commands.add_parser("verify", parents=[common, word, rule], help="Run theorems")
    verify.add_argument("--theorem", action="append", default=None, help="Theorem id or 'all'")
    verify.add_argument("--list", action="store_true", help="List theorem ids and exit")
    verify.add_argument("--n-max", type=int, default=None)
    verify.add_argument("--force", action="store_true", help="Skip the prefix-length guard")
    return parser


def _generator_spec(args: argparse.Namespace) -> GeneratorSpec:
    fields: dict[str, Any] = {
        "kind": args.word,
        "letters": args.letters,
        "alphabet": args.alphabet,
        "seed": args.seed,
        "l0": args.l0,
        "l": args.l,
        "epsilon": args.eps,
    }
    if args.directive is not None:
        fields["directive"] = args.directive
        fields["period"] = args.period or ()
    elif args.period is not None:
        fields["period"] = args.period
    return GeneratorSpec(**fields)


def _host(args: argparse.Namespace, settings: Settings) -> Word:
    if args.word_text is not None:
        alphabet = Alphabet.of(args.alphabet or default_alphabet(args.word_text))
        return Word.from_text(args.word_text, alphabet)
    length = args.length if args.length is not None else settings.prefix_length
    return build_source(_generator_spec(args)).prefix(length)


def _rule(args: argparse.Namespace, settings: Settings, alphabet: Alphabet) -> LocalRule:
    if args.rule_file is not None:
        return load_rule_file(args.rule_file, alphabet)
    if args.rule is None:
        raise WordcaError("rule: give --rule or --rule-file")
    seed = args.rule_seed if args.rule_seed is not None else settings.random_seed
    return build_rule(args.rule, l=args.l, radius=args.radius, seed=seed)


def _guard(prefix_length: int, n_max: int, settings: Settings, force: bool) -> None:
    allowed = analysis_horizon(prefix_length, n_max, settings.analysis_ratio)
    if allowed >= n_max:
        return
    message = (
        f"prefix_length {prefix_length} < {settings.analysis_ratio} * n_max ({n_max}); "
        f"lengthen --len, lower --n-max to {max(allowed, 0)}, or pass --force"
    )
    if not force:
        raise GuardViolation(message)
    logger.warning(f"Guard overridden: {message}")


def _emit(content: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(content)
        return
    path, digest, size = save_output(output, content)
    print(f"{path} sha256={digest} bytes={size}", file=sys.stderr)


def cmd_gen(args: argparse.Namespace, settings: Settings) -> int:
    _emit(_host(args, settings).text + "\n", args.output)
    return EXIT_OK


def cmd_apply(args: argparse.Namespace, settings: Settings) -> int:
    word = _host(args, settings)
    rule = _rule(args, settings, word.alphabet)
    if len(word) < rule.radius:
        logger.warning(f"Input of length {len(word)} is shorter than radius {rule.radius}")
    image = apply(rule, host_for(rule, word, len(word)))
    logger.info(f"{rule.name}: |image| = {len(image)} = {len(word)} - {rule.radius} + 1")
    _emit(image.text + "\n", args.output)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    host = _host(args, settings)
    n_max = args.n_max if args.n_max is not None else settings.n_max
    _guard(len(host), n_max, settings, args.force)
    table = complexity_table(host, args.n_min, n_max, jobs=args.jobs or settings.jobs)
    _emit(render_table(table, args.format), args.output)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    if args.list:
        _emit("\n".join(theorem_ids()) + "\n", args.output)
        return EXIT_OK
    prefix_length = args.length if args.length is not None else settings.prefix_length
    n_max = args.n_max if args.n_max is not None else settings.n_max
    _guard(prefix_length, n_max, settings, args.force)

    rule = None
    if args.rule is not None or args.rule_file is not None:
        rule = _rule(args, settings, Alphabet.of(args.alphabet) if args.alphabet else BINARY)
    general_source = (
        _generator_spec(args) if args.word != "asturmian" else GeneratorSpec(kind="fibonacci")
    )
    config = SuiteConfig(
        image=ImageConfig(
            l=args.l,
            l0=args.l0,
            epsilon=args.eps,
            prefix_length=prefix_length,
            n_max=args.n_max,
            richness_prefix=settings.richness_prefix,
        ),
        source=general_source,
        rule=rule,
        periodic_seed=args.seed or "ab",
        prefix_length=prefix_length,
        general_prefix_length=min(prefix_length, 10_000),
        n_max=n_max,
        random_seed=settings.random_seed,
        random_rule_count=settings.random_rule_count,
        coverage_horizon=settings.coverage_horizon,
        jobs=args.jobs or settings.jobs,
    )
    report = run_suite(args.theorem or ["all"], config)
    _emit(to_json(report), args.output)
    for verdict in report.verdicts:
        logger.info(f"{verdict.theorem_id}: {verdict.status.value} {verdict.title}")
    return report.exit_code


COMMANDS = {"gen": cmd_gen, "apply": cmd_apply, "analyze": cmd_analyze, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    settings = get_settings()
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args, settings)
    except GuardViolation as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except RuleFileError as exc:
        print(f"Error: {exc}", file=sys.stderr)
        for window in exc.missing_windows:
            print(f"  missing window: {window}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (WordcaError, ValidationError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
