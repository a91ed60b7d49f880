"""Command-line surface.

Subcommands::

    parapac check --kind KIND --k K --input FILE
    parapac learn --scenario FILE --epsilon E --delta D --trials T
                  [--seed S] [--jobs J] --out CSV
    parapac reduce {hs-to-kcnf | hs-to-fvs} --input FILE --out FILE
    parapac kernelize --input FILE --out FILE --trace FILE

Exit codes: 0 consistent / success, 1 inconsistent, 2 input error.  When
``--seed`` is omitted the PARAPAC_SEED environment variable is used, then 0.

Experiment CSVs are byte-deterministic for a fixed seed, independent of
``--jobs``: trials run on derived substreams and rows are emitted in trial
order.  The wall_time_ms column is therefore left empty in the file; measured
times are reported in the JSON summary on stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .booleans import lambda_backdoor
from .consistency import (
    ConsistencyInstance,
    fvs_consistency,
    hdeletion_consistency,
    kclause_cnf_consistency,
    kcnf_consistency,
    kdnf_consistency,
    kterm_dnf_consistency,
    kterm_dnf_kernelize,
    solve_instance,
)
from .errors import GuardError, InputError, RealizabilityError
from .formats import parse_instance, trace_to_dict, write_instance
from .graphs import VertexSet
from .metalearn import LearnerConfig, pac_learn_via_consistency
from .oracle import (
    DeletionHypothesis,
    HiddenScenario,
    RandomSource,
    draw,
    exact_error,
)
from .reductions import HittingSetInstance, hitting_set_to_fvs, hitting_set_to_kcnf

EXIT_CONSISTENT = 0
EXIT_INCONSISTENT = 1
EXIT_ERROR = 2

CSV_HEADER = "trial,seed,samples_used,wall_time_ms,exact_err,success"


@dataclass(frozen=True)
class ExperimentSpec:
    """One batch of seeded learning trials against a hidden scenario."""

    scenario: HiddenScenario
    epsilon: float
    delta: float
    trials: int
    seed: int
    out_path: str
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise InputError(f"trials must be >= 1, got {self.trials}")
        if self.jobs < 1:
            raise InputError(f"jobs must be >= 1, got {self.jobs}")


@dataclass(frozen=True)
class ResultRow:
    """Outcome of a single trial; wall_time_ms is measured but excluded from
    the CSV so identical seeds produce identical files."""

    trial: int
    seed: int
    samples_used: int
    wall_time_ms: float
    exact_err: float | None
    success: bool


def _checker_for(scenario: HiddenScenario):
    kind = scenario.kind
    if kind == "kcnf":
        return kcnf_consistency
    if kind == "kdnf":
        return kdnf_consistency
    if kind == "kterm_dnf":
        return kterm_dnf_consistency
    if kind == "kclause_cnf":
        return kclause_cnf_consistency
    if kind == "hdeletion":
        family = scenario.hypothesis.family
        return lambda samples, k: hdeletion_consistency(samples, k, family)
    return fvs_consistency


def _run_trial(args: tuple[HiddenScenario, int, int, float, float]) -> ResultRow:
    scenario, trial, seed, epsilon, delta = args
    rng = RandomSource(seed).substream(trial)
    cfg = LearnerConfig(
        n=scenario.n, epsilon=epsilon, delta=delta, params=scenario.params, seed=seed
    )
    try:
        record = pac_learn_via_consistency(
            cfg, lambda: draw(scenario, rng), _checker_for(scenario), scenario.kind
        )
    except RealizabilityError:
        return ResultRow(trial, seed, 0, 0.0, None, False)
    hypothesis = record.hypothesis
    if isinstance(hypothesis, VertexSet):
        hypothesis = DeletionHypothesis(hypothesis, scenario.hypothesis.family)
    err = exact_error(hypothesis, scenario)
    return ResultRow(
        trial=trial,
        seed=seed,
        samples_used=record.samples_used,
        wall_time_ms=record.wall_time * 1000.0,
        exact_err=err,
        success=err <= epsilon,
    )


def run_experiment(spec: ExperimentSpec) -> tuple[list[ResultRow], dict]:
    """Run all trials, write the CSV, and return (rows, summary)."""
    tasks = [
        (spec.scenario, trial, spec.seed, spec.epsilon, spec.delta)
        for trial in range(spec.trials)
    ]
    if spec.jobs == 1:
        rows = [_run_trial(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            rows = list(pool.map(_run_trial, tasks))

    lines = [CSV_HEADER]
    for row in rows:
        err = "" if row.exact_err is None else repr(row.exact_err)
        lines.append(
            f"{row.trial},{row.seed},{row.samples_used},,{err},{int(row.success)}"
        )
    with open(spec.out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")

    summary = {
        "trials": spec.trials,
        "success_fraction": sum(r.success for r in rows) / len(rows),
        "mean_samples_used": sum(r.samples_used for r in rows) / len(rows),
        "mean_wall_time_ms": sum(r.wall_time_ms for r in rows) / len(rows),
    }
    return rows, summary


def _cmd_check(args: argparse.Namespace) -> int:
    inst = parse_instance(args.input)
    if not isinstance(inst, ConsistencyInstance):
        raise InputError(f"{args.input} is not a consistency instance")
    if inst.kind != args.kind:
        raise InputError(
            f"--kind {args.kind} does not match the file's kind={inst.kind}"
        )
    if inst.k != args.k:
        raise InputError(f"--k {args.k} does not match the file's k={inst.k}")
    outcome = solve_instance(inst)
    if not outcome.consistent:
        print("inconsistent")
        return EXIT_INCONSISTENT
    print(outcome.hypothesis)
    return EXIT_CONSISTENT


def _cmd_learn(args: argparse.Namespace) -> int:
    scenario = parse_instance(args.scenario)
    if not isinstance(scenario, HiddenScenario):
        raise InputError(f"{args.scenario} is not a scenario file")
    spec = ExperimentSpec(
        scenario=scenario,
        epsilon=args.epsilon,
        delta=args.delta,
        trials=args.trials,
        seed=_seed_value(args.seed),
        out_path=args.out,
        jobs=args.jobs if args.jobs is not None else (os.cpu_count() or 1),
    )
    _, summary = run_experiment(spec)
    print(json.dumps(summary, sort_keys=True))
    return EXIT_CONSISTENT


def _cmd_reduce(args: argparse.Namespace) -> int:
    inst = parse_instance(args.input)
    if not isinstance(inst, HittingSetInstance):
        raise InputError(f"{args.input} is not a hitting-set instance")
    reduced = (
        hitting_set_to_kcnf(inst) if args.gadget == "hs-to-kcnf" else hitting_set_to_fvs(inst)
    )
    write_instance(reduced, args.out)
    print(f"wrote {args.out}")
    return EXIT_CONSISTENT


def _cmd_kernelize(args: argparse.Namespace) -> int:
    inst = parse_instance(args.input)
    if not isinstance(inst, ConsistencyInstance) or inst.kind != "kterm_dnf":
        raise InputError("kernelize expects a boolean instance of kind kterm_dnf")
    _, backdoor = lambda_backdoor(inst.samples, pivot=1)
    reduced, trace = kterm_dnf_kernelize(inst.samples, inst.k, backdoor)
    write_instance(
        ConsistencyInstance(kind=inst.kind, samples=reduced, k=inst.k), args.out
    )
    with open(args.trace, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(trace_to_dict(trace), fh, indent=2)
        fh.write("\n")
    print(f"wrote {args.out} and {args.trace}")
    return EXIT_CONSISTENT


def _seed_value(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("PARAPAC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"PARAPAC_SEED must be an integer, got {env!r}") from exc
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parapac",
        description="Consistency checking, PAC-learning experiments, and "
        "hardness gadgets for parameterized concept classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="solve a consistency instance")
    check.add_argument("--kind", required=True,
                       choices=["kcnf", "kdnf", "kterm_dnf", "kclause_cnf",
                                "hdeletion", "fvs"])
    check.add_argument("--k", required=True, type=int)
    check.add_argument("--input", required=True)
    check.set_defaults(func=_cmd_check)

    learn = sub.add_parser("learn", help="run seeded PAC-learning trials")
    learn.add_argument("--scenario", required=True)
    learn.add_argument("--epsilon", required=True, type=float)
    learn.add_argument("--delta", required=True, type=float)
    learn.add_argument("--trials", required=True, type=int)
    learn.add_argument("--seed", type=int, default=None)
    learn.add_argument("--jobs", type=int, default=None)
    learn.add_argument("--out", required=True)
    learn.set_defaults(func=_cmd_learn)

    reduce_cmd = sub.add_parser("reduce", help="apply a hitting-set gadget")
    reduce_cmd.add_argument("gadget", choices=["hs-to-kcnf", "hs-to-fvs"])
    reduce_cmd.add_argument("--input", required=True)
    reduce_cmd.add_argument("--out", required=True)
    reduce_cmd.set_defaults(func=_cmd_reduce)

    kern = sub.add_parser("kernelize", help="shrink a k-term-DNF instance")
    kern.add_argument("--input", required=True)
    kern.add_argument("--out", required=True)
    kern.add_argument("--trace", required=True)
    kern.set_defaults(func=_cmd_kernelize)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GuardError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
