"""Binary orthogonal arrays: verification and the deviation-based fitness."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Sequence


class OAError(ValueError):
    pass


@dataclass(frozen=True)
class OAParameters:
    N: int
    k: int
    t: int
    lam: int

    def __post_init__(self):
        if not 0 <= self.t <= self.k:
            raise OAError(f"strength {self.t} outside [0, {self.k}]")
        if self.N % (1 << self.t) or self.lam != self.N >> self.t:
            raise OAError(f"index must equal N / 2^t = {self.N / (1 << self.t)}")

    @classmethod
    def of(cls, N: int, k: int, t: int) -> "OAParameters":
        return cls(N, k, t, N >> t)


def _columns(A) -> list[Sequence[int]]:
    cols = [list(c) for c in A]
    if cols and any(len(c) != len(cols[0]) for c in cols):
        raise OAError("columns have different lengths")
    return cols


def _check(cols, params: OAParameters) -> None:
    if len(cols) != params.k or any(len(c) != params.N for c in cols):
        raise OAError(f"matrix is not {params.N}x{params.k}")


def tuple_counts(cols: Sequence[Sequence[int]], subset: Sequence[int]) -> list[int]:
    """Occurrences of each t-tuple in the submatrix; first column is the top bit."""
    t = len(subset)
    counts = [0] * (1 << t)
    for row in range(len(cols[0])):
        idx = 0
        for c in subset:
            idx = (idx << 1) | cols[c][row]
        counts[idx] += 1
    return counts


def euclidean_deviation(A, subset: Sequence[int], lam: int) -> float:
    """Root-sum-square distance of the submatrix's tuple counts from ``lam``.

    ``A`` is a sequence of columns; ``subset`` holds 0-based column indices.
    """
    cols = _columns(A)
    if len(set(subset)) != len(subset) or any(not 0 <= c < len(cols) for c in subset):
        raise OAError(f"invalid column subset {tuple(subset)}")
    return math.sqrt(sum((lam - c) ** 2 for c in tuple_counts(cols, subset)))


def unbalancedness(A) -> int:
    return sum(abs(len(c) // 2 - sum(c)) for c in _columns(A))


def fit_oa(A, params: OAParameters, penalized: bool) -> float:
    """Sum of Euclidean deviations over all strength-sized column subsets.

    Zero exactly when ``A`` is an OA; subsets are visited in lexicographic
    order so the floating-point sum is reproducible.
    """
    cols = _columns(A)
    _check(cols, params)
    total = 0.0
    for subset in combinations(range(params.k), params.t):
        total += math.sqrt(sum((params.lam - c) ** 2 for c in tuple_counts(cols, subset)))
    if penalized:
        total += unbalancedness(cols)
    return total


def is_orthogonal_array(A, params: OAParameters) -> bool:
    """Direct check: every t-column submatrix holds every t-tuple ``lam`` times."""
    cols = _columns(A)
    _check(cols, params)
    for subset in combinations(range(params.k), params.t):
        rows = [tuple(cols[c][r] for c in subset) for r in range(params.N)]
        for tup in _all_tuples(params.t):
            if rows.count(tup) != params.lam:
                return False
    return True


def _all_tuples(t: int):
    for v in range(1 << t):
        yield tuple((v >> (t - 1 - i)) & 1 for i in range(t))


def rows_to_columns(rows: Sequence[str]) -> list[list[int]]:
    return [[int(r[j]) for r in rows] for j in range(len(rows[0]))]


def columns_to_rows(cols: Sequence[Sequence[int]]) -> list[str]:
    return ["".join(str(c[i]) for c in cols) for i in range(len(cols[0]))]


def load_fixture(path: str | Path) -> tuple[OAParameters, list[list[int]]]:
    """Read an OA file: header ``N k t lambda``, then one '0'/'1' row per line."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not lines:
        raise OAError(f"{path}: empty file")
    try:
        N, k, t, lam = (int(v) for v in lines[0].split())
    except ValueError as exc:
        raise OAError(f"{path}: bad header {lines[0]!r}") from exc
    params = OAParameters(N, k, t, lam)
    rows = lines[1:]
    if len(rows) != N or any(len(r) != k or set(r) - {"0", "1"} for r in rows):
        raise OAError(f"{path}: expected {N} rows of {k} binary digits")
    return params, rows_to_columns(rows)


def write_fixture(path: str | Path, params: OAParameters, cols: Sequence[Sequence[int]]) -> None:
    body = "\n".join(columns_to_rows(cols))
    Path(path).write_text(f"{params.N} {params.k} {params.t} {params.lam}\n{body}\n")
