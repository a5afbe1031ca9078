"""Weight-preserving crossover operators and a steady-state GA for
fixed-weight Boolean functions and binary orthogonal arrays."""

from ._backend import BACKEND
from ._rng import RandomStream, derive_seed
from .engine import GAConfig, Problem, RunResult, run_ga
from .operators import CrossoverKind

__all__ = [
    "BACKEND",
    "CrossoverKind",
    "GAConfig",
    "Problem",
    "RandomStream",
    "RunResult",
    "derive_seed",
    "run_ga",
]

__version__ = "0.1.0"
