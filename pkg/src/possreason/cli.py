"""Command-line front end.

Exit codes: 0 ok, 1 usage, 2 parse, 3 schedule, 4 resource, 5 oracle mismatch.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .crosscheck import cross_check
from .dsl import BUILTINS, builtin, format_kb, load_kb
from .errors import DomainError, ParseError, ResourceError, ScheduleError
from .engine import infer, query
from .kb import KnowledgeBase
from .report import render_machine, render_text, schedule_lines
from .scheduler import build_schedule

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_SCHEDULE, EXIT_RESOURCE, EXIT_ORACLE = range(6)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    input: str
    is_builtin: bool = False
    queries: Optional[list[str]] = None  # None: KB's own queries; ["all"]: every variable
    trace: bool = False
    oracle_check: bool = False
    threshold: Optional[float] = None
    max_cells: Optional[int] = None
    format: str = "text"

    def __post_init__(self):
        if self.threshold is not None and not 0.5 < self.threshold <= 1.0:
            raise UsageError(f"threshold {self.threshold} outside (0.5, 1]")
        if self.max_cells is not None and self.max_cells < 1:
            raise UsageError("--max-cells must be at least 1")
        if self.format not in ("text", "machine"):
            raise UsageError(f"unknown format {self.format!r}")


def load(config: RunConfig) -> KnowledgeBase:
    if config.is_builtin:
        try:
            kb = builtin(config.input)
        except DomainError as e:
            raise UsageError(str(e)) from None
    else:
        try:
            kb = load_kb(config.input)
        except OSError as e:
            raise UsageError(f"cannot read {config.input}: {e.strerror}") from None
    options = kb.options
    if config.max_cells is not None:
        options = dataclasses.replace(options, max_cells=config.max_cells)
    if config.threshold is not None:
        options = dataclasses.replace(options, threshold=config.threshold)
    if config.oracle_check:
        options = dataclasses.replace(options, oracle_check=True)
    if options != kb.options:
        kb = dataclasses.replace(kb, options=options)
    return kb


def run(config: RunConfig, out=None) -> int:
    """Run inference for ``config``, print the report, and return the exit status."""
    out = out if out is not None else sys.stdout
    kb = load(config)
    state = infer(kb)
    threshold = kb.options.threshold
    if config.queries is None:
        targets = [(q.variable, q.set) for q in kb.queries] or [(v, None) for v in kb.variables]
    elif config.queries == ["all"]:
        targets = [(v, None) for v in kb.variables]
    else:
        try:
            targets = [(kb.variable(name), None) for name in config.queries]
        except DomainError as e:
            raise UsageError(str(e)) from None
    verdicts = [query(state, v, s, threshold) for v, s in targets]
    checks = cross_check(kb, state) if kb.options.oracle_check else None
    source = f"builtin:{config.input}" if config.is_builtin else config.input
    if config.format == "machine":
        out.write(render_machine(source, state, verdicts, trace=config.trace, checks=checks))
    else:
        out.write(render_text(state, verdicts, trace=config.trace, checks=checks))
    if checks and any(c.status == "mismatch" for c in checks):
        return EXIT_ORACLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="possreason", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("file", nargs="?", help="knowledge-base file")
        p.add_argument("--builtin", choices=BUILTINS, help="use a bundled knowledge base")

    p_run = sub.add_parser("run", help="run inference and answer queries")
    add_input(p_run)
    p_run.add_argument("--query", help="comma-separated variable names, or 'all'")
    p_run.add_argument("--trace", action="store_true", help="print the layer-by-layer trace")
    p_run.add_argument("--oracle-check", action="store_true",
                       help="cross-check unconditional-default steps through the power set")
    p_run.add_argument("--threshold", type=float, help="verdict threshold in (0.5, 1]")
    p_run.add_argument("--max-cells", type=int, help="joint-space cell limit")
    p_run.add_argument("--format", choices=("text", "machine"), default="text")

    p_show = sub.add_parser("show", help="print the parsed knowledge base and its schedule")
    add_input(p_show)
    return parser


def _input(args) -> tuple[str, bool]:
    if (args.file is None) == (args.builtin is None):
        raise UsageError("give exactly one of FILE or --builtin NAME")
    return (args.builtin, True) if args.builtin else (args.file, False)


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        name, is_builtin = _input(args)
        if args.command == "show":
            kb = load(RunConfig(name, is_builtin))
            out.write(format_kb(kb))
            out.write("\n".join(schedule_lines(build_schedule(kb))) + "\n")
            return EXIT_OK
        queries = None
        if args.query:
            queries = [q.strip() for q in args.query.split(",") if q.strip()]
        config = RunConfig(
            input=name,
            is_builtin=is_builtin,
            queries=queries,
            trace=args.trace,
            oracle_check=args.oracle_check,
            threshold=args.threshold,
            max_cells=args.max_cells,
            format=args.format,
        )
        return run(config, out)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ScheduleError as e:
        print(f"schedule error: {e}", file=sys.stderr)
        return EXIT_SCHEDULE
    except ResourceError as e:
        print(f"resource error: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
