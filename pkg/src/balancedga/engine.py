"""Steady-state GA with tournament selection and elitist random replacement.

One child is bred per iteration. It replaces a random individual (never the
current population best) only when its fitness is strictly better than both
parents'. The run stops once the evaluation budget is spent.

:func:`run_ga` executes the whole loop in the compiled core when it is
available; :class:`SteadyStateGA` is the pure-Python implementation, built on
the public operator and fitness functions and consuming the random stream in
exactly the same order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from . import _backend
from ._rng import RandomStream
from .boolfn import bent_weight, fit_balanced_nl, fit_bent, from_hex, to_hex
from .encodings import random_balanced_bits
from .oa import OAParameters, fit_oa
from .operators import CrossoverKind, bit_flip_bits, cross_bits, swap_mutation_bits

BAL_NL = "balnl"
BENT = "bent"
BIN_OA = "oa"

# best known nonlinearity of balanced functions; 116 for n=8 is not known to be optimal
_BAL_NL_TARGETS = {1: 0, 2: 0, 3: 2, 4: 4, 5: 12, 6: 26, 7: 56, 8: 116}


@dataclass(frozen=True)
class Problem:
    kind: str
    n: int
    cols: int = 1
    strength: int = 0

    def __post_init__(self):
        if self.kind not in (BAL_NL, BENT, BIN_OA):
            raise ValueError(f"unknown problem {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == BENT:
            bent_weight(self.n)
        if self.kind == BIN_OA:
            OAParameters(self.length, self.cols, self.strength, self.length >> self.strength)
        elif self.cols != 1:
            raise ValueError("Boolean-function problems have a single column")

    @classmethod
    def bal_nl(cls, n: int) -> "Problem":
        return cls(BAL_NL, n)

    @classmethod
    def bent(cls, n: int) -> "Problem":
        return cls(BENT, n)

    @classmethod
    def bin_oa(cls, N: int, k: int, t: int, lam: int | None = None) -> "Problem":
        if N < 2 or N & (N - 1):
            raise ValueError(f"OA rows must be a power of two, got {N}")
        if lam is not None and lam != N >> t:
            raise ValueError(f"index must be N / 2^t = {N >> t}")
        return cls(BIN_OA, N.bit_length() - 1, k, t)

    @classmethod
    def parse(cls, code: str) -> "Problem":
        """Inverse of :attr:`code`: ``balnl-6``, ``bent-8``, ``oa-16-8-2-4``."""
        parts = code.strip().lower().split("-")
        try:
            if parts[0] in (BAL_NL, BENT) and len(parts) == 2:
                return cls(parts[0], int(parts[1]))
            if parts[0] == BIN_OA and len(parts) in (4, 5):
                return cls.bin_oa(*(int(p) for p in parts[1:]))
        except ValueError as exc:
            raise ValueError(f"bad problem code {code!r}: {exc}") from exc
        raise ValueError(f"bad problem code {code!r}")

    @property
    def code(self) -> str:
        if self.kind == BIN_OA:
            return f"oa-{self.length}-{self.cols}-{self.strength}-{self.lam}"
        return f"{self.kind}-{self.n}"

    @property
    def length(self) -> int:
        return 1 << self.n

    @property
    def lam(self) -> int:
        return self.length >> self.strength

    @property
    def weight(self) -> int:
        """Prescribed Hamming weight of every column."""
        if self.kind == BENT:
            return bent_weight(self.n)
        return self.length // 2

    @property
    def maximize(self) -> bool:
        return self.kind != BIN_OA

    @property
    def oa_params(self) -> OAParameters:
        return OAParameters(self.length, self.cols, self.strength, self.lam)

    @property
    def default_mutation_prob(self) -> float:
        return 0.2 if self.kind == BIN_OA else 0.7

    @property
    def target(self) -> float:
        """Fitness at which a run counts as successful."""
        if self.kind == BIN_OA:
            return 0.0
        if self.kind == BENT:
            return bent_weight(self.n)
        if self.n in _BAL_NL_TARGETS:
            return _BAL_NL_TARGETS[self.n]
        if self.n % 2 == 0:
            return (1 << (self.n - 1)) - (1 << (self.n // 2 - 1)) - 2
        return (1 << (self.n - 1)) - (1 << ((self.n - 1) // 2))

    def evaluate(self, columns: Sequence[Sequence[int]], penalized: bool):
        if self.kind == BAL_NL:
            return fit_balanced_nl(columns[0], penalized)
        if self.kind == BENT:
            return fit_bent(columns[0], penalized)
        return fit_oa(columns, self.oa_params, penalized)

    def better(self, a, b) -> bool:
        return a > b if self.maximize else a < b

    def successful(self, fitness) -> bool:
        if self.maximize:
            return fitness >= self.target
        return fitness == 0.0

    def subsets(self) -> list[tuple[int, ...]]:
        return list(combinations(range(self.cols), self.strength))


@dataclass(frozen=True)
class GAConfig:
    problem: Problem
    crossover: CrossoverKind
    population_size: int = 50
    tournament_size: int = 3
    mutation_prob: float | None = None
    max_evaluations: int = 500_000
    seed: int = 0

    def __post_init__(self):
        if isinstance(self.crossover, str):
            object.__setattr__(self, "crossover", CrossoverKind.parse(self.crossover))
        if self.mutation_prob is None:
            object.__setattr__(self, "mutation_prob", self.problem.default_mutation_prob)
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be >= 2")
        if self.population_size < self.tournament_size:
            raise ValueError("population_size must be >= tournament_size")
        if self.max_evaluations < 0:
            raise ValueError("max_evaluations must be >= 0")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")

    @property
    def penalized(self) -> bool:
        return not self.crossover.balanced


@dataclass(frozen=True)
class RunResult:
    best_fitness: float
    best_genotype: str
    evaluations_to_best: int
    success: bool
    run_seed: int
    evaluations: int = 0

    def columns(self, problem: Problem) -> list[list[int]]:
        return [from_hex(h, problem.length) for h in self.best_genotype.split(":")]


def genotype_hex(columns: Sequence[Sequence[int]]) -> str:
    return ":".join(to_hex(c) for c in columns)


@dataclass
class Individual:
    columns: list[list[int]]
    fitness: float = field(default=0.0)


def random_individual(config: GAConfig, rng) -> Individual:
    p = config.problem
    if config.crossover.balanced:
        cols = [random_balanced_bits(p.length, p.weight, rng) for _ in range(p.cols)]
    else:
        cols = [[rng.coin() for _ in range(p.length)] for _ in range(p.cols)]
    return Individual(cols, p.evaluate(cols, config.penalized))


def init_population(config: GAConfig, rng) -> list[Individual]:
    return [random_individual(config, rng) for _ in range(config.population_size)]


def tournament_select(population: Sequence[Individual], tournament_size: int, rng,
                      maximize: bool = True) -> tuple[Individual, Individual]:
    """Best two of ``tournament_size`` individuals sampled without replacement.

    The sample comes out in random order and the sort is stable, so ties are
    broken uniformly.
    """
    idx = list(range(len(population)))
    for i in range(tournament_size):
        j = i + rng.below(len(idx) - i)
        idx[i], idx[j] = idx[j], idx[i]
    cand = sorted(idx[:tournament_size], key=lambda i: population[i].fitness,
                  reverse=maximize)
    return population[cand[0]], population[cand[1]]


def best_index(population: Sequence[Individual], maximize: bool = True) -> int:
    best = 0
    for i in range(1, len(population)):
        f, b = population[i].fitness, population[best].fitness
        if (f > b) if maximize else (f < b):
            best = i
    return best


def breed(p1: Individual, p2: Individual, config: GAConfig, rng) -> Individual:
    """Crossover then mutation, column by column; returns the evaluated child."""
    kind = config.crossover
    cols = [cross_bits(kind, a, b, rng) for a, b in zip(p1.columns, p2.columns)]
    mutate = swap_mutation_bits if kind.balanced else bit_flip_bits
    cols = [mutate(c, config.mutation_prob, rng) for c in cols]
    return Individual(cols, config.problem.evaluate(cols, config.penalized))


def steady_state_step(population: list[Individual], config: GAConfig, rng) -> Individual:
    """One iteration (one fitness evaluation); ``population`` is updated in place."""
    prob = config.problem
    p1, p2 = tournament_select(population, config.tournament_size, rng, prob.maximize)
    child = breed(p1, p2, config, rng)
    if prob.better(child.fitness, p1.fitness) and prob.better(child.fitness, p2.fitness):
        elite = best_index(population, prob.maximize)
        j = rng.below(len(population) - 1)
        if j >= elite:
            j += 1
        population[j] = child
    return child


class SteadyStateGA:
    """Pure-Python run of one configuration, step by step."""

    def __init__(self, config: GAConfig, rng: RandomStream | None = None):
        self.config = config
        self.rng = rng if rng is not None else RandomStream(config.seed)
        self.population: list[Individual] = []
        self.evaluations = 0
        self.best: Individual | None = None
        self.evaluations_to_best = 0
        for _ in range(config.population_size):
            ind = random_individual(config, self.rng)
            self._observe(ind)
            self.population.append(ind)

    def _observe(self, ind: Individual) -> None:
        self.evaluations += 1
        if self.best is None or self.config.problem.better(ind.fitness, self.best.fitness):
            self.best = ind
            self.evaluations_to_best = self.evaluations

    def step(self) -> Individual:
        child = steady_state_step(self.population, self.config, self.rng)
        self._observe(child)
        return child

    def run(self) -> RunResult:
        while self.evaluations < self.config.max_evaluations:
            self.step()
        return self.result()

    def result(self) -> RunResult:
        prob = self.config.problem
        fit = self.best.fitness
        return RunResult(
            best_fitness=fit if prob.kind == BIN_OA else int(fit),
            best_genotype=genotype_hex(self.best.columns),
            evaluations_to_best=self.evaluations_to_best,
            success=prob.successful(fit),
            run_seed=self.config.seed,
            evaluations=self.evaluations,
        )


def _run_compiled(config: GAConfig) -> RunResult:
    prob = config.problem
    subsets = prob.subsets()
    subsets = np.array(subsets, dtype=np.int32).reshape(len(subsets), prob.strength)
    fit, best, to_best, evals = _backend.core.run_ga(
        prob.kind,
        prob.n,
        prob.cols,
        prob.weight,
        prob.lam,
        subsets,
        config.crossover.tag,
        config.crossover.shuffled,
        config.penalized,
        config.population_size,
        config.tournament_size,
        config.mutation_prob,
        config.max_evaluations,
        np.random.PCG64(config.seed),
    )
    return RunResult(
        best_fitness=fit if prob.kind == BIN_OA else int(fit),
        best_genotype=genotype_hex(best.tolist()),
        evaluations_to_best=int(to_best),
        success=prob.successful(fit),
        run_seed=config.seed,
        evaluations=int(evals),
    )


def run_ga(config: GAConfig, backend: str | None = None) -> RunResult:
    """Run one GA to the evaluation budget; deterministic in ``config.seed``.

    ``backend`` is ``"compiled"``, ``"python"`` or None for the import-time
    default.
    """
    backend = backend or _backend.BACKEND
    if backend == "compiled":
        if _backend.core is None:
            raise RuntimeError("compiled core is not available")
        return _run_compiled(config)
    if backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return SteadyStateGA(config).run()
