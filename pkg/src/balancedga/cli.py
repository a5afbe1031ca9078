"""Experiment runner and result analysis.

    balancedga run --problem balnl --n 6 --crossover op,cb,moo --runs 50 --out bal6.csv
    balancedga compare op.csv moo.csv
    balancedga summary bal6.csv

Settings can also come from a ``key=value`` file passed with ``--config``;
command-line flags win over file values.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from ._rng import derive_seed
from .engine import GAConfig, Problem, RunResult, run_ga
from .operators import ALL_KINDS, CrossoverKind
from .stats import SampleSummary, TestReport, mann_whitney, summarize

CSV_HEADER = ["problem", "operator", "run", "seed", "best_fitness", "evals_to_best",
              "success", "best_genotype"]
THREADS_ENV = "BALANCEDGA_THREADS"

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    problem: Problem
    crossovers: tuple[CrossoverKind, ...]
    runs: int = 50
    population_size: int = 50
    tournament_size: int = 3
    mutation_prob: float | None = None
    max_evaluations: int = 500_000
    master_seed: int = 0
    out: str = "results.csv"
    threads: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ConfigError("runs: must be >= 1")
        if not self.crossovers:
            raise ConfigError("crossover: at least one operator is required")
        if self.threads < 1:
            raise ConfigError("threads: must be >= 1")

    def configs(self) -> list[tuple[CrossoverKind, int, GAConfig]]:
        """Every (operator, run index, config) cell in output order."""
        cells = []
        for kind in self.crossovers:
            kind_index = ALL_KINDS.index(kind)
            for run in range(self.runs):
                seed = derive_seed(self.master_seed, kind_index, run)
                cfg = GAConfig(self.problem, kind, self.population_size, self.tournament_size,
                               self.mutation_prob, self.max_evaluations, seed)
                cells.append((kind, run, cfg))
        return cells


def _format_fitness(value) -> str:
    return str(value) if isinstance(value, int) else repr(float(value))


def result_row(problem: Problem, kind: CrossoverKind, run: int, r: RunResult) -> list[str]:
    return [problem.code, kind.code, str(run), str(r.run_seed), _format_fitness(r.best_fitness),
            str(r.evaluations_to_best), str(int(r.success)), r.best_genotype]


def run_experiment(spec: ExperimentSpec) -> Path:
    """Run every cell of ``spec`` and write the result CSV.

    Rows come out grouped by operator, then by run index, whatever the number
    of worker processes.
    """
    cells = spec.configs()
    configs = [cfg for _, _, cfg in cells]
    out = Path(spec.out)
    with out.open("w", newline="") as fh:
        if spec.threads > 1 and len(configs) > 1:
            with ProcessPoolExecutor(max_workers=spec.threads) as pool:
                results = list(pool.map(run_ga, configs))
        else:
            results = [run_ga(cfg) for cfg in configs]
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for (kind, run, _), r in zip(cells, results):
            writer.writerow(result_row(spec.problem, kind, run, r))
    return out


def read_results(path: str | Path, operator: str | None = None) -> list[dict]:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        missing = [c for c in CSV_HEADER if c not in (reader.fieldnames or [])]
        if missing:
            raise ConfigError(f"{path}: missing column(s) {', '.join(missing)}")
        rows = [r for r in reader if operator is None or r["operator"] == operator]
    if not rows:
        raise ConfigError(f"{path}: no result rows")
    return rows


def compare_stats(csv_a: str | Path, csv_b: str | Path, operator_a: str | None = None,
                  operator_b: str | None = None) -> tuple[TestReport, SampleSummary, SampleSummary]:
    a = [float(r["best_fitness"]) for r in read_results(csv_a, operator_a)]
    b = [float(r["best_fitness"]) for r in read_results(csv_b, operator_b)]
    return mann_whitney(a, b), summarize(a), summarize(b)


def summary_table(rows: Sequence[dict]) -> list[tuple[str, SampleSummary, float]]:
    by_op: dict[str, list[dict]] = {}
    for r in rows:
        by_op.setdefault(r["operator"], []).append(r)
    table = []
    for op, rs in by_op.items():
        s = summarize(float(r["best_fitness"]) for r in rs)
        rate = 100.0 * sum(int(r["success"]) for r in rs) / len(rs)
        table.append((op, s, rate))
    return table


# -- argument handling -----------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_RUN_KEYS = {
    "problem": str, "n": int, "oa-cols": int, "oa-strength": int, "crossover": str,
    "pop-size": int, "tournament": int, "evals": int, "mutation-prob": float, "runs": int,
    "seed": int, "out": str, "threads": int,
}


def read_config_file(path: str | Path) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("_", "-")
        if key not in _RUN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key.replace("-", "_")] = _RUN_KEYS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{key}: bad value {value!r}") from exc
    return values


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError(f"{THREADS_ENV}: not an integer: {env!r}") from None
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="balancedga", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run R independent GA runs per crossover operator")
    run.add_argument("--config", help="key=value file; flags override its values")
    run.add_argument("--problem", choices=["balnl", "bent", "oa"])
    run.add_argument("--n", type=int, help="number of variables (OA rows = 2^n)")
    run.add_argument("--oa-cols", type=int, help="OA columns k")
    run.add_argument("--oa-strength", type=int, help="OA strength t")
    run.add_argument("--crossover", help="comma list of op, cb, zl, moo; '-s' suffix = shuffled")
    run.add_argument("--pop-size", type=int)
    run.add_argument("--tournament", type=int)
    run.add_argument("--evals", type=int)
    run.add_argument("--mutation-prob", type=float, help="default 0.7 (balnl, bent) / 0.2 (oa)")
    run.add_argument("--runs", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.add_argument("--threads", type=int, help=f"worker processes (default ${THREADS_ENV} or CPU count)")

    cmp_ = sub.add_parser("compare", help="Mann-Whitney-Wilcoxon test between two result files")
    cmp_.add_argument("csv_a")
    cmp_.add_argument("csv_b")
    cmp_.add_argument("--operator-a", help="only use rows of this operator from csv_a")
    cmp_.add_argument("--operator-b", help="only use rows of this operator from csv_b")
    cmp_.add_argument("--alpha", type=float, default=0.01)

    summ = sub.add_parser("summary", help="per-operator five-number summary and success rate")
    summ.add_argument("csv")
    return parser


_RUN_DEFAULTS = {
    "problem": None, "n": None, "oa_cols": None, "oa_strength": None, "crossover": "op,cb,zl,moo",
    "pop_size": 50, "tournament": 3, "evals": 500_000, "mutation_prob": None, "runs": 50,
    "seed": 0, "out": "results.csv", "threads": None,
}


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    values = dict(_RUN_DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in _RUN_DEFAULTS:
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)

    if values["problem"] is None:
        raise ConfigError("problem: required (balnl, bent or oa)")
    if values["n"] is None:
        raise ConfigError("n: required")
    try:
        if values["problem"] == "oa":
            if values["oa_cols"] is None or values["oa_strength"] is None:
                raise ConfigError("oa-cols/oa-strength: required for problem oa")
            problem = Problem.bin_oa(1 << values["n"], values["oa_cols"], values["oa_strength"])
        else:
            problem = Problem(values["problem"], values["n"])
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"problem: {exc}") from exc
    try:
        kinds = tuple(CrossoverKind.parse(c) for c in values["crossover"].split(",") if c.strip())
    except ValueError as exc:
        raise ConfigError(f"crossover: {exc}") from exc
    threads = values["threads"] if values["threads"] is not None else _default_threads()
    spec = ExperimentSpec(problem, kinds, values["runs"], values["pop_size"],
                          values["tournament"], values["mutation_prob"], values["evals"],
                          values["seed"], values["out"], threads)
    try:
        GAConfig(problem, kinds[0], spec.population_size, spec.tournament_size,
                 spec.mutation_prob, spec.max_evaluations)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return spec


def _print_summary(label: str, s: SampleSummary) -> None:
    print(f"{label:>10}  n={s.count:<4d} min={s.min:g} q1={s.first_quartile:g} "
          f"median={s.median:g} q3={s.third_quartile:g} max={s.max:g}")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            spec = spec_from_args(args)
            path = run_experiment(spec)
            print(f"wrote {len(spec.crossovers) * spec.runs} runs to {path}")
        elif args.command == "compare":
            report, sa, sb = compare_stats(args.csv_a, args.csv_b, args.operator_a,
                                           args.operator_b)
            report = replace(report, significant=report.p_value < args.alpha)
            _print_summary("A", sa)
            _print_summary("B", sb)
            verdict = "significant" if report.significant else "not significant"
            print(f"U={report.u_statistic:g} p={report.p_value:.4g} ({report.method}) "
                  f"{verdict} at alpha={args.alpha:g}")
            print("operator_a,operator_b,u,p,significant")
            print(report.csv_line(args.operator_a or Path(args.csv_a).stem,
                                  args.operator_b or Path(args.csv_b).stem))
        else:
            print("operator,count,min,q1,median,q3,max,success_rate")
            for op, s, rate in summary_table(read_results(args.csv)):
                print(f"{op},{s.count},{s.min:g},{s.first_quartile:g},{s.median:g},"
                      f"{s.third_quartile:g},{s.max:g},{rate:g}")
    except ConfigError as exc:
        print(f"balancedga: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"balancedga: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
