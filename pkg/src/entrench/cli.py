"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 logic/engine error,
4 budget exhaustion.  Errors print as ``<Category>: <message>`` on stderr
so scripts can dispatch on the category without parsing prose.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .engine import (
    Placement,
    RevisionOutcome,
    Session,
    commit,
    contract_extract,
    extraction_outcome,
    integrate,
    is_reason_for,
    revise,
    undo,
    what_if,
)
from .errors import EngineError, FormulaSyntaxError
from .examples import all_examples, get_example, run_example
from .formula import Formula, ensure_closed, parse, print_formula
from .prover import ProofBudget
from .ranking import Ranking, to_ordinal
from .storage import dumps_ordinal, dumps_ranking, load_ranking, save_ranking
from .strategies import Strategy, StrategyConfig


class _UsageExit(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"UsageError: {message}", file=sys.stderr)
        raise _UsageExit()


def _add_strategy_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=[s.value for s in Strategy],
                   default="maxi")
    p.add_argument("--subsumption", action="store_true",
                   help="remove beliefs subsumed by the incoming one first")
    p.add_argument("--recovery", action="store_true",
                   help="replace removed beliefs b with b|a")
    p.add_argument("--half-life", type=Fraction, default=None, metavar="F",
                   help="nuclear decay factor in (0,1)")
    p.add_argument("--seed", type=int, default=0,
                   help="random seed for quick adjustment")
    p.add_argument("--budget-depth", type=int, default=12)
    p.add_argument("--budget-clauses", type=int, default=50_000)
    p.add_argument("--budget-time", type=float, default=5.0, metavar="SECONDS")


def _add_io_flags(p: argparse.ArgumentParser, many_in: bool = False) -> None:
    if many_in:
        p.add_argument("--in", dest="infiles", action="append", required=True,
                       metavar="FILE", help="ranking file (repeatable)")
    else:
        p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--out", dest="outfile", metavar="FILE",
                   help="write the resulting ranking here")
    p.add_argument("--format", choices=["degrees", "ordinal"],
                   default="degrees", help="how to display rankings")


def _build_parser() -> _Parser:
    ap = _Parser(prog="entrench",
                 description="Belief revision and theory extraction on "
                             "partial entrenchment rankings.",
                 epilog="Formulae beginning with '-' (negation) must follow "
                        "a '--' separator: entrench revise --in base.rk -- "
                        "-p 0.7")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    p.add_argument("formula")
    p.add_argument("--trim", action="store_true",
                   help="strip whitespace before parsing")
    p.add_argument("--auto-close", action="store_true",
                   help="universally close free variables")

    p = sub.add_parser("degree", help="entailment degree of a formula in a ranking")
    p.add_argument("formula")
    _add_io_flags(p)
    _add_strategy_flags(p)
    p.add_argument("--trim", action="store_true")
    p.add_argument("--auto-close", action="store_true")

    p = sub.add_parser("extract", help="recover a consistent ranking")
    _add_io_flags(p)
    _add_strategy_flags(p)
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("revise", help="revise a ranking by a new belief")
    p.add_argument("formula")
    p.add_argument("degree", nargs="?", default=None,
                   help="degree in (0,1); omitted means placement default")
    _add_io_flags(p)
    _add_strategy_flags(p)
    p.add_argument("--placement", choices=["top", "bottom"], default="bottom")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--trim", action="store_true")
    p.add_argument("--auto-close", action="store_true")

    p = sub.add_parser("integrate", help="fuse several rankings into one")
    _add_io_flags(p, many_in=True)
    _add_strategy_flags(p)
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("reason", help="is a a reason for b?")
    p.add_argument("a")
    p.add_argument("b")
    _add_io_flags(p)
    _add_strategy_flags(p)
    p.add_argument("--placement", choices=["top", "bottom"], default="bottom")
    p.add_argument("--trim", action="store_true")
    p.add_argument("--auto-close", action="store_true")

    p = sub.add_parser("examples", help="bundled example library")
    exsub = p.add_subparsers(dest="examples_command", required=True)
    exsub.add_parser("list")
    pr = exsub.add_parser("run")
    pr.add_argument("name")
    pr.add_argument("--strategy", choices=[s.value for s in Strategy],
                    default=None, help="run one strategy instead of all six")

    p = sub.add_parser("repl", help="interactive session")
    p.add_argument("--in", dest="infile", default=None, metavar="FILE")
    _add_strategy_flags(p)
    p.add_argument("--placement", choices=["top", "bottom"], default="bottom")

    p = sub.add_parser("serve", help="run the HTTP JSON service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return ap


def _config(args) -> StrategyConfig:
    return StrategyConfig(
        strategy=Strategy(args.strategy),
        subsumption_removal=args.subsumption,
        recovery=args.recovery,
        half_life=args.half_life,
        random_seed=args.seed,
        budget=ProofBudget(args.budget_depth, args.budget_clauses,
                           args.budget_time),
    )


def _read_formula(args, attr="formula") -> Formula:
    f = parse(getattr(args, attr), trim=getattr(args, "trim", False))
    return ensure_closed(f, auto_close=getattr(args, "auto_close", False))


def _render_ranking(r: Ranking, fmt: str) -> str:
    if fmt == "ordinal":
        return dumps_ordinal(to_ordinal(r))
    return dumps_ranking(r)


def _emit_result(after: Ranking, args) -> None:
    if args.outfile:
        save_ranking(after, args.outfile)
    else:
        sys.stdout.write(_render_ranking(after, args.format))


def _emit_outcome(out: RevisionOutcome, args) -> None:
    for f, d in out.removed:
        print(f"removed: {print_formula(f)} (was {d})")
    for f, d in out.recovered:
        print(f"recovered: {print_formula(f)} at {d}")
    if out.decay_applied is not None:
        print(f"decay: {out.decay_applied}")
    if getattr(args, "trace", False):
        print(json.dumps(out.trace.to_dict(), indent=2))
    _emit_result(out.after, args)


def _parse_degree(text: str | None) -> Fraction | None:
    if text is None:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormulaSyntaxError(f"bad degree {text!r}") from None


# --- subcommands ---------------------------------------------------------------

def _cmd_parse(args) -> int:
    print(print_formula(_read_formula(args)))
    return 0


def _cmd_degree(args) -> int:
    from .ranking import degree
    r = load_ranking(args.infile)
    d = degree(r, _read_formula(args), _config(args).budget)
    print(d)
    return 0


def _cmd_extract(args) -> int:
    r = load_ranking(args.infile)
    after, trace = contract_extract(r, _config(args))
    if args.trace:
        print(json.dumps(trace.to_dict(), indent=2))
    _emit_result(after, args)
    return 0


def _cmd_revise(args) -> int:
    r = load_ranking(args.infile)
    out = revise(r, _read_formula(args), _parse_degree(args.degree),
                 _config(args), Placement(args.placement))
    _emit_outcome(out, args)
    return 0


def _cmd_integrate(args) -> int:
    rankings = [load_ranking(path) for path in args.infiles]
    after, trace = integrate(rankings, _config(args))
    if args.trace:
        print(json.dumps(trace.to_dict(), indent=2))
    _emit_result(after, args)
    return 0


def _cmd_reason(args) -> int:
    r = load_ranking(args.infile)
    verdict = is_reason_for(r, _read_formula(args, "a"),
                            _read_formula(args, "b"),
                            _config(args), Placement(args.placement))
    print(verdict.value)
    return 0


def _cmd_examples(args) -> int:
    if args.examples_command == "list":
        for e in all_examples():
            print(f"{e.name:15s} {e.category:18s} {e.description}")
        return 0
    entry = get_example(args.name)
    strategy = Strategy(args.strategy) if args.strategy else None
    results = run_example(args.name, strategy)
    print(f"# {entry.name}: revise by {entry.incoming} at {entry.degree}")
    for name, out in results.items():
        kept = ",".join(sorted(print_formula(f) for f in out.after.formulas()))
        print(f"{name:9s} -> {kept}")
    distinct = len({frozenset(print_formula(f) for f in o.after.formulas())
                    for o in results.values()})
    if strategy is None:
        print(f"# {distinct} distinct outcomes across {len(results)} strategies")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


# --- repl ------------------------------------------------------------------------

_REPL_HELP = """\
commands:
  show [degrees|ordinal]     print the current ranking
  parse FORMULA              parse and echo the canonical form
  degree FORMULA             entailment degree in the current ranking
  revise FORMULA [DEGREE]    revise and commit
  whatif FORMULA [DEGREE]    revise without committing
  extract                    run theory extraction and commit
  integrate FILE             fuse a ranking file into the session
  reason A B                 is A a reason for B?
  undo                       roll back the last committed operation
  trace                      show the last operation's trace
  save FILE / load FILE      ranking file persistence
  set strategy NAME          standard|maxi|hybrid|global|linear|quick
  set recovery on|off        toggle recovery
  set subsumption on|off     toggle subsumption removal
  set half-life F|off        nuclear decay factor
  set placement top|bottom   default placement for unranked beliefs
  set seed N                 quick adjustment seed
  help / quit
"""


def _repl(args) -> int:
    from dataclasses import replace as _replace

    ranking = load_ranking(args.infile) if args.infile else Ranking()
    session = Session.create(ranking, _config(args),
                             Placement(args.placement))
    last: RevisionOutcome | None = None
    print("entrench repl; 'help' lists commands")
    while True:
        try:
            line = input(f"[{len(session.current)} beliefs] > ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            continue
        words = line.split()
        cmd, rest = words[0], words[1:]
        try:
            if cmd in ("quit", "exit"):
                return 0
            elif cmd == "help":
                print(_REPL_HELP, end="")
            elif cmd == "show":
                fmt = rest[0] if rest else "degrees"
                sys.stdout.write(_render_ranking(session.current, fmt))
            elif cmd == "parse":
                print(print_formula(parse(rest[0])))
            elif cmd == "degree":
                from .ranking import degree as _degree
                print(_degree(session.current, parse(rest[0]),
                              session.config.budget))
            elif cmd in ("revise", "whatif"):
                f = parse(rest[0])
                d = _parse_degree(rest[1]) if len(rest) > 1 else None
                out = what_if(session, f, d)
                last = out
                for g, e in out.removed:
                    print(f"removed: {print_formula(g)} (was {e})")
                for g, e in out.recovered:
                    print(f"recovered: {print_formula(g)} at {e}")
                if cmd == "revise":
                    session = commit(session, out)
                else:
                    sys.stdout.write(_render_ranking(out.after, "degrees"))
            elif cmd == "extract":
                out = extraction_outcome(session.current, session.config)
                last = out
                session = commit(session, out)
                for g, e in out.removed:
                    print(f"removed: {print_formula(g)} (was {e})")
            elif cmd == "integrate":
                other = load_ranking(rest[0])
                from .engine import integration_outcome
                out = integration_outcome([session.current, other],
                                          session.config,
                                          before=session.current)
                last = out
                session = commit(session, out)
            elif cmd == "reason":
                print(is_reason_for(session.current, parse(rest[0]),
                                    parse(rest[1]), session.config,
                                    session.placement).value)
            elif cmd == "undo":
                session = undo(session)
                print("rolled back")
            elif cmd == "trace":
                if last is None:
                    print("no operation yet")
                else:
                    print(last.trace.render())
            elif cmd == "save":
                save_ranking(session.current, rest[0])
            elif cmd == "load":
                session = Session.create(load_ranking(rest[0]),
                                         session.config, session.placement)
            elif cmd == "set":
                session = _replace(
                    session, config=_set_option(session.config, rest))
                if rest[0] == "placement":
                    session = _replace(session,
                                       placement=Placement(rest[1]))
            else:
                print(f"unknown command {cmd!r}; try 'help'")
        except EngineError as exc:
            print(f"{exc.category}: {exc.message}")
        except (IndexError, KeyError):
            print("bad arguments; try 'help'")
    return 0


def _set_option(cfg: StrategyConfig, rest: list[str]) -> StrategyConfig:
    from dataclasses import replace as _replace

    key, value = rest[0], rest[1]
    if key == "strategy":
        return _replace(cfg, strategy=Strategy(value))
    if key == "recovery":
        return _replace(cfg, recovery=value == "on")
    if key == "subsumption":
        return _replace(cfg, subsumption_removal=value == "on")
    if key == "half-life":
        hl = None if value == "off" else Fraction(value)
        return _replace(cfg, half_life=hl)
    if key == "seed":
        return _replace(cfg, random_seed=int(value))
    if key == "placement":
        return cfg
    raise KeyError(key)


_COMMANDS = {
    "parse": _cmd_parse,
    "degree": _cmd_degree,
    "extract": _cmd_extract,
    "revise": _cmd_revise,
    "integrate": _cmd_integrate,
    "reason": _cmd_reason,
    "examples": _cmd_examples,
    "repl": _repl,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except _UsageExit:
        return 1
    try:
        return _COMMANDS[args.command](args)
    except EngineError as exc:
        print(f"{exc.category}: {exc.message}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"FileError: {exc}", file=sys.stderr)
        return 1
    except KeyError as exc:
        print(f"UsageError: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
