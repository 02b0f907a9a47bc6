"""Command-line front end: ``dblcat check``, ``dblcat lift`` and ``dblcat replay``.

Exit status is 0 when every selected check passes, 1 on an axiom failure,
2 on a usage or configuration error and 3 on a parse or semantic error.
"""

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import ConfigError, ParseError, SemanticError
from .mondbl import LEVELS
from .suite import CHECKS, DEFAULT_CHECKS, INSTANCES, SuiteConfig, emit_report, replay_report, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_PARSE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors already; route them through ConfigError."""

    def error(self, message):
        raise ConfigError(message)


def _check_list(text):
    return tuple(c.strip() for c in text.split(",") if c.strip())


def _add_run_options(p, default_checks):
    where = p.add_mutually_exclusive_group()
    where.add_argument("--instance", choices=[i for i in INSTANCES if i != "file"], default="span")
    where.add_argument("--file", help="a .dcat presentation")
    p.add_argument("--size", type=int, default=2, help="size bound for rule-backed instances")
    p.add_argument("--level", choices=LEVELS, default=None)
    p.add_argument("--checks", type=_check_list, default=default_checks,
                   help=f"comma-separated subset of {','.join(CHECKS)} or 'all'")
    p.add_argument("--fixtures", action="append", default=[],
                   help="fixture file or shipped fixture name (repeatable)")
    p.add_argument("--quantale", default=None, help="Bool, Chain3, or a quantale in --file")
    p.add_argument("--out", choices=("text", "json"), default="text")
    p.add_argument("--output", type=Path, default=None, help="write the report here")
    p.add_argument("--max-witnesses", type=int, default=3)


def build_parser():
    parser = _Parser(prog="dblcat", description="Check double-categorical structure on finite instances.")
    parser.add_argument("--version", action="version", version=f"dblcat {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_run_options(sub.add_parser("check", help="run a check suite"), DEFAULT_CHECKS)
    _add_run_options(sub.add_parser("lift", help="lift the monoidal structure and verify fixtures"),
                     ("lift", "fixtures"))
    rp = sub.add_parser("replay", help="re-run every witness recorded in a json report")
    rp.add_argument("report", type=Path)
    return parser


def config_from_args(args):
    fixtures = tuple(f for group in args.fixtures for f in group.split(",") if f)
    return SuiteConfig(instance="file" if args.file else args.instance, size=args.size,
                       level=args.level, checks=args.checks, file=args.file,
                       fixtures=fixtures, quantale=args.quantale)


def _write(data, output):
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        output.write_bytes(data)


def _replay(path):
    try:
        obj = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read report {path}: {exc}") from None
    code = EXIT_PASS
    for check, w, still_fails in replay_report(obj):
        verdict = "reproduced" if still_fails else "NOT reproduced"
        print(f"{check}: {w['family']} {w['key']}: {verdict}")
        if not still_fails:
            code = EXIT_FAIL
    return code


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command == "replay":
            return _replay(args.report)
        report = run_suite(config_from_args(args), max_witnesses=args.max_witnesses)
        _write(emit_report(report, args.out), args.output)
        return report.exit_code
    except ConfigError as exc:
        print(f"dblcat: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, SemanticError) as exc:
        print(f"dblcat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
