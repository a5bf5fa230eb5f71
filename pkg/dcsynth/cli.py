import os
import sys
import json
import argparse
import wandb
import bittensor as bt

from typing import Dict, List, Optional, Sequence

from dcsynth.abstraction.build import build_abstraction
from dcsynth.abstraction.dot import abstraction_to_dot
from dcsynth.abstraction.heuristic import backpropagate
from dcsynth.base.config import check_config
from dcsynth.base.engine import BaseEngine, EngineRun, Verdict
from dcsynth.base.errors import CapExceededError, DcsError
from dcsynth.bench.run import ENGINES, TlConfig, run_bench, small_scale_grid
from dcsynth.engine.directed import DirectedEngine
from dcsynth.fsp import load_problem
from dcsynth.lts.aut import read_aut, write_aut
from dcsynth.lts.compose import explore
from dcsynth.lts.dot import lts_to_dot
from dcsynth.lts.lts import CompositeState, ControlProblem
from dcsynth.oracle.solve import MonolithicEngine
from dcsynth.oracle.verify import verify_controller

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(DcsError):
    code = "E-USAGE"


class InputError(DcsError):
    code = "E-IO"


def configure_logging():
    """DCS_LOG picks the verbosity: off (default), info or debug."""
    level = os.environ.get("DCS_LOG", "off").lower()
    if level == "debug":
        bt.logging(debug=True)
    elif level == "info":
        bt.logging(debug=False)
    else:
        off = getattr(bt.logging, "off", None)
        if off is not None:
            off()


def _params(values: Sequence[str]) -> Dict[str, int]:
    bindings = {}
    for value in values:
        name, sep, number = value.partition("=")
        if not sep or not name:
            raise UsageError(f"--param expects NAME=VALUE, got {value!r}")
        try:
            bindings[name.strip()] = int(number)
        except ValueError:
            raise UsageError(f"--param {name}: {number!r} is not an integer")
    return bindings


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")


def _write(text: str, path: Optional[str]):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}")


def _load(args) -> ControlProblem:
    return load_problem(_read(args.file), _params(args.param))


def _engine_args(args) -> List[str]:
    """Translate the short CLI caps onto the dotted engine config keys."""
    translated = []
    if getattr(args, "max_expansions", None) is not None:
        translated += ["--engine.max_expansions", str(args.max_expansions)]
    if getattr(args, "timeout_s", None) is not None:
        translated += ["--engine.timeout_s", str(args.timeout_s)]
    if getattr(args, "max_states", None) is not None:
        translated += ["--compose.max_states", str(args.max_states)]
    return translated


def _emit_stats(stats: dict, path: Optional[str]):
    line = json.dumps(stats, sort_keys=True)
    print(line, file=sys.stderr)
    if path is not None:
        _write(line + "\n", path)


def _render_run(run: EngineRun, fmt: str) -> str:
    controller = run.controller
    if fmt == "json":
        document = {"verdict": run.verdict.value, "stats": run.stats.to_dict()}
        if controller is not None:
            document["states"] = list(controller.lts.states)
            document["initial"] = controller.lts.initial
            document["transitions"] = controller.trace_labels()
        return json.dumps(document, sort_keys=True) + "\n"
    if controller is None:
        return ""
    return controller.to_dot() if fmt == "dot" else controller.to_aut()


def _solve(engine_cls, args) -> int:
    problem = _load(args)
    engine = engine_cls(config=BaseEngine.config(_engine_args(args)))
    try:
        run = engine.solve(problem)
    except CapExceededError as e:
        _emit_stats(e.stats, args.stats)
        raise
    _emit_stats(dict(run.stats.to_dict(), **run.extra), args.stats)
    if run.verdict != Verdict.CONTROLLER:
        print(f"verdict: {run.verdict.value}", file=sys.stderr)
        if args.format == "json":
            _write(_render_run(run, args.format), args.output)
        return EXIT_FAILURE
    _write(_render_run(run, args.format), args.output)
    return EXIT_OK


def cmd_synth(args) -> int:
    return _solve(DirectedEngine, args)


def cmd_oracle(args) -> int:
    return _solve(MonolithicEngine, args)


def cmd_verify(args) -> int:
    problem = _load(args)
    controller = read_aut(_read(args.controller), name="Controller")
    report = verify_controller(problem, controller)
    for violation in report.violations:
        print(f"violation {violation}", file=sys.stderr)
    verdict = "accepted" if report.accepted else "rejected"
    _write(f"{verdict} ({report.states} closed-loop states)\n", args.output)
    return EXIT_OK if report.accepted else EXIT_FAILURE


def cmd_compose(args) -> int:
    problem = _load(args)
    max_states = args.max_states if args.max_states is not None else BaseEngine.config().compose.max_states
    product = explore(problem, max_states=max_states)
    _write(lts_to_dot(product.lts) if args.format == "dot" else write_aut(product.lts), args.output)
    return EXIT_OK


def _composite_state(problem: ControlProblem, spec: str) -> CompositeState:
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != len(problem.components):
        raise UsageError(f"--at names {len(parts)} states, the composition has {len(problem.components)} components")
    cs = []
    for component, part in zip(problem.components, parts):
        if part in component.states:
            cs.append(component.states.index(part))
        elif part.isdigit() and int(part) < len(component):
            cs.append(int(part))
        else:
            raise UsageError(f"{component.name} has no state {part!r}")
    return tuple(cs)


def cmd_graph(args) -> int:
    problem = _load(args)
    cs = _composite_state(problem, args.at) if args.at else problem.initial
    result = build_abstraction(problem, cs)
    distances = backpropagate(result, problem.reach, problem.avoid)
    _write(abstraction_to_dot(problem, result, distances), args.output)
    return EXIT_OK


def _bench_configs(args) -> List[TlConfig]:
    engines = ENGINES if args.engine == "both" else (args.engine,)
    caps = {"timeout_s": args.timeout_s} if args.timeout_s is not None else {}
    if not args.instance:
        return [config for engine in engines for config in small_scale_grid(engine, **caps)]
    configs = []
    for instance in args.instance:
        try:
            m, w, c = (int(v) for v in instance.split(","))
        except ValueError:
            raise UsageError(f"--instance expects M,W,C, got {instance!r}")
        configs += [TlConfig(m, w, c, engine=engine, **caps) for engine in engines]
    return configs


def cmd_bench(args) -> int:
    config = BaseEngine.config(
        (["--bench.workers", str(args.workers)] if args.workers is not None else [])
        + (["--bench.csv", args.csv] if args.csv is not None else [])
        + (["--wandb.on"] if args.wandb_on else [])
    )
    check_config(BaseEngine, config)
    try:
        configs = _bench_configs(args)
    except ValueError as e:
        raise UsageError(str(e))
    if config.wandb.on:
        wandb.init(
            project=config.wandb.project_name,
            entity=config.wandb.entity,
            config=config,
            dir=config.engine.full_path,
        )
    rows = run_bench(configs, csv_path=config.bench.csv, workers=config.bench.workers, wandb_on=config.wandb.on)
    if config.bench.csv is None:
        for row in rows:
            print(",".join(str(v) for v in row.to_csv().values()))
    return EXIT_FAILURE if any(row.failed for row in rows) else EXIT_OK


def _add_problem_args(parser: argparse.ArgumentParser):
    parser.add_argument("file", help="FSP model with its control problem directives.")
    parser.add_argument(
        "--param", action="append", default=[], metavar="K=V", help="Override or supply a constant."
    )
    parser.add_argument("-o", "--output", default=None, help="Write the result here instead of stdout.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcsynth", description="Directed controller synthesis.")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    for name, func, help in (
        ("synth", cmd_synth, "Synthesize a controller with the directed engine."),
        ("oracle", cmd_oracle, "Solve the game on the explicit product."),
    ):
        sub = commands.add_parser(name, help=help)
        _add_problem_args(sub)
        sub.add_argument("--format", choices=("aut", "dot", "json"), default="aut")
        sub.add_argument("--max-expansions", type=int, default=None)
        sub.add_argument("--max-states", type=int, default=None)
        sub.add_argument("--timeout-s", type=float, default=None)
        sub.add_argument("--stats", default=None, metavar="FILE", help="Also write the stats line here.")
        sub.set_defaults(func=func)

    sub = commands.add_parser("verify", help="Check a controller (.aut) against the problem.")
    _add_problem_args(sub)
    sub.add_argument("controller", help="Controller automaton in .aut format.")
    sub.set_defaults(func=cmd_verify)

    sub = commands.add_parser("compose", help="Explicit reachable product.")
    _add_problem_args(sub)
    sub.add_argument("--format", choices=("aut", "dot"), default="aut")
    sub.add_argument("--max-states", type=int, default=None)
    sub.set_defaults(func=cmd_compose)

    sub = commands.add_parser("graph", help="Abstracting path graph rooted at a composite state, as DOT.")
    _add_problem_args(sub)
    sub.add_argument("--at", default=None, metavar="s0,s1,...", help="Root state, one name per component.")
    sub.set_defaults(func=cmd_graph)

    sub = commands.add_parser("bench", help="Run transfer line instances and report CSV rows.")
    sub.add_argument("--instance", action="append", default=[], metavar="M,W,C")
    sub.add_argument("--engine", choices=ENGINES + ("both",), default="dcs")
    sub.add_argument("--timeout-s", type=float, default=None)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--csv", default=None, metavar="FILE")
    sub.add_argument("--wandb.on", dest="wandb_on", action="store_true", help="Log every row to wandb.")
    sub.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceededError as e:
        print(f"dcsynth: {e}", file=sys.stderr)
        return EXIT_CAP
    except DcsError as e:
        print(f"dcsynth: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"dcsynth: E-USAGE: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
