"""Array data model and the exact coverage engine.

A t-set Q of columns is *covered* when every one of the v^t tuples occurs as a
row of the restriction A_Q.  Restricted rows are encoded as mixed-radix
integers ``sum(A[r, Q[j]] * v**j)`` and marked in a boolean occupancy table.

Subsets are enumerated in lexicographic order in fixed-size blocks.  Blocks
may be evaluated on a thread pool; results are always reduced in block order,
so counts and witnesses never depend on the thread count.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AlphabetGrowError,
    BudgetExceededError,
    StrengthTooLargeError,
)

OCCUPANCY_LIMIT = 2**28
WORK_BUDGET = 10**8
WITNESS_CAP = 16
_BLOCK_CELLS = 2**21


@dataclass(frozen=True, eq=False)
class ArrayMatrix:
    """An N x k array over the alphabet {0, ..., v-1}; immutable."""

    data: np.ndarray
    v: int

    def __post_init__(self):
        data = np.array(self.data, dtype=np.int64, copy=True)
        if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError(f"array must be a non-empty 2-D grid, got shape {data.shape}")
        if self.v < 2:
            raise ValueError(f"alphabet size must be >= 2, got {self.v}")
        if data.min() < 0 or data.max() >= self.v:
            raise ValueError(f"entries must lie in [0, {self.v})")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def n_rows(self) -> int:
        return self.data.shape[0]

    @property
    def n_cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArrayMatrix):
            return NotImplemented
        return self.v == other.v and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.v, self.data.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"ArrayMatrix(N={self.n_rows}, k={self.n_cols}, v={self.v})"

    def restrict(self, cols: Sequence[int]) -> "ArrayMatrix":
        return ArrayMatrix(self.data[:, list(cols)], self.v)

    def vstack(self, *others: "ArrayMatrix") -> "ArrayMatrix":
        return ArrayMatrix(np.vstack([self.data] + [o.data for o in others]), self.v)


@dataclass(frozen=True)
class ColumnSet:
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("a column set needs at least one column")
        if any(b <= a for a, b in zip(idx, idx[1:])) or idx[0] < 0:
            raise ValueError(f"column indices must be strictly increasing and >= 0: {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def t(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)


@dataclass
class CoverageReport:
    n: int
    k: int
    v: int
    t: int
    total: int
    covered: int
    ratio: float
    exact: bool
    stderr: float = 0.0
    uncovered_witnesses: list[ColumnSet] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "v": self.v,
            "t": self.t,
            "covered": self.covered,
            "total": self.total,
            "ratio": self.ratio,
            "exact": self.exact,
            "stderr": self.stderr,
            "uncovered": [list(w.indices) for w in self.uncovered_witnesses],
        }


@dataclass(frozen=True)
class OaCheckResult:
    is_oa: bool
    lam: int | None = None


def _as_columnset(q) -> ColumnSet:
    return q if isinstance(q, ColumnSet) else ColumnSet(tuple(q))


def _check_strength(a: ArrayMatrix, t: int, limit: int = OCCUPANCY_LIMIT) -> int:
    if t < 1:
        raise ValueError("strength must be >= 1")
    if t > a.n_cols:
        raise ValueError(f"strength {t} exceeds the number of columns {a.n_cols}")
    size = a.v**t
    if size > limit:
        raise StrengthTooLargeError(f"v^t = {size} exceeds the occupancy limit {limit}")
    return size


def _codes(data: np.ndarray, cols: Sequence[int], v: int) -> np.ndarray:
    code = np.zeros(data.shape[0], dtype=np.int64)
    for j, c in enumerate(cols):
        code += data[:, c] * v**j
    return code


def covers(a: ArrayMatrix, q, limit: int = OCCUPANCY_LIMIT) -> bool:
    """True iff every tuple of [v]^t occurs in the rows of ``a`` restricted to ``q``."""
    q = _as_columnset(q)
    if q.indices[-1] >= a.n_cols:
        raise ValueError(f"column {q.indices[-1]} out of range for k={a.n_cols}")
    size = _check_strength(a, q.t, limit)
    if a.n_rows < size:
        return False
    seen = np.zeros(size, dtype=bool)
    distinct = 0
    chunk = max(size, 4096)
    for start in range(0, a.n_rows, chunk):
        codes = _codes(a.data[start:start + chunk], q.indices, a.v)
        fresh = np.unique(codes[~seen[codes]])
        seen[fresh] = True
        distinct += fresh.size
        if distinct == size:
            return True
    return False


# -- block enumeration -------------------------------------------------------

def _combination_blocks(k: int, t: int, block: int) -> Iterator[np.ndarray]:
    combos = itertools.combinations(range(k), t)
    while True:
        flat = np.fromiter(itertools.chain.from_iterable(itertools.islice(combos, block)),
                           dtype=np.int64)
        if flat.size == 0:
            return
        yield flat.reshape(-1, t)


def covered_mask(data: np.ndarray, v: int, subsets: np.ndarray) -> np.ndarray:
    """Boolean mask over rows of ``subsets`` (B x t column indices): covered or not."""
    b, t = subsets.shape
    size = v**t
    n = data.shape[0]
    if n < size:
        return np.zeros(b, dtype=bool)
    codes = np.zeros((b, n), dtype=np.int64)
    for j in range(t):
        codes += data[:, subsets[:, j]].T * v**j
    occ = np.zeros((b, size), dtype=bool)
    occ[np.repeat(np.arange(b), n), codes.ravel()] = True
    return occ.all(axis=1)


def _block_size(n: int, size: int) -> int:
    return max(1, _BLOCK_CELLS // max(n, size))


def _map_blocks(fn: Callable[[np.ndarray], object], blocks: Iterable[np.ndarray],
                threads: int) -> Iterator[object]:
    """Apply ``fn`` to blocks, yielding results in block order."""
    if threads <= 1:
        for blk in blocks:
            yield fn(blk)
        return
    window = 2 * threads
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = []
        for blk in blocks:
            pending.append(pool.submit(fn, blk))
            if len(pending) >= window:
                yield pending.pop(0).result()
        for fut in pending:
            yield fut.result()


def _check_budget(a: ArrayMatrix, t: int, budget: int) -> int:
    total = math.comb(a.n_cols, t)
    if total * a.n_rows > budget:
        raise BudgetExceededError(
            f"C({a.n_cols},{t}) x {a.n_rows} rows = {total * a.n_rows} work units "
            f"exceeds the budget {budget}; use coverage_sampled")
    return total


def coverage_report(a: ArrayMatrix, t: int, *, witness_cap: int | None = WITNESS_CAP,
                    budget: int = WORK_BUDGET, threads: int = 1) -> CoverageReport:
    """Exact cov_t(A) by enumerating every t-subset in lexicographic order.

    ``witness_cap=None`` collects every uncovered set.
    """
    size = _check_strength(a, t)
    total = _check_budget(a, t, budget)
    blk = _block_size(a.n_rows, size)

    def work(subsets):
        mask = covered_mask(a.data, a.v, subsets)
        return int(mask.sum()), subsets[~mask]

    covered = 0
    witnesses: list[ColumnSet] = []
    for n_cov, missing in _map_blocks(work, _combination_blocks(a.n_cols, t, blk), threads):
        covered += n_cov
        room = len(missing) if witness_cap is None else witness_cap - len(witnesses)
        witnesses.extend(ColumnSet(tuple(row)) for row in missing[:max(room, 0)])
    return CoverageReport(n=a.n_rows, k=a.n_cols, v=a.v, t=t, total=total, covered=covered,
                          ratio=covered / total, exact=True, stderr=0.0,
                          uncovered_witnesses=witnesses)


def verify_covering(a: ArrayMatrix, t: int, *, budget: int = WORK_BUDGET,
                    threads: int = 1) -> tuple[bool, ColumnSet | None]:
    """Return (True, None) for a covering array, else (False, first uncovered set)."""
    size = _check_strength(a, t)
    first = ColumnSet(tuple(range(t)))
    if a.n_rows < size:
        return False, first
    _check_budget(a, t, budget)
    blk = _block_size(a.n_rows, size)

    def work(subsets):
        mask = covered_mask(a.data, a.v, subsets)
        bad = np.flatnonzero(~mask)
        return subsets[bad[0]] if bad.size else None

    for miss in _map_blocks(work, _combination_blocks(a.n_cols, t, blk), threads):
        if miss is not None:
            return False, ColumnSet(tuple(miss))
    return True, None


def coverage_sampled(a: ArrayMatrix, t: int, samples: int, seed: int) -> CoverageReport:
    """Estimate the covered fraction from ``samples`` uniform random t-subsets."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    size = _check_strength(a, t)
    rng = np.random.Generator(np.random.PCG64(seed))
    k = a.n_cols
    hits = 0
    batch = max(1, min(samples, _BLOCK_CELLS // max(k, a.n_rows, size)))
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        subsets = np.sort(np.argsort(rng.random((b, k)), axis=1)[:, :t], axis=1)
        hits += int(covered_mask(a.data, a.v, subsets).sum())
        done += b
    ratio = hits / samples
    stderr = math.sqrt(ratio * (1 - ratio) / samples)
    total = math.comb(k, t)
    return CoverageReport(n=a.n_rows, k=k, v=a.v, t=t, total=total,
                          covered=round(ratio * total), ratio=ratio, exact=False,
                          stderr=stderr)


def verify_oa(a: ArrayMatrix, t: int, *, budget: int = WORK_BUDGET) -> OaCheckResult:
    """Check whether every t-subarray contains each tuple exactly N / v^t times."""
    size = _check_strength(a, t)
    if a.n_rows % size:
        return OaCheckResult(False)
    lam = a.n_rows // size
    _check_budget(a, t, budget)
    for subsets in _combination_blocks(a.n_cols, t, _block_size(a.n_rows, size)):
        for cols in subsets:
            counts = np.bincount(_codes(a.data, cols, a.v), minlength=size)
            if counts.min() != lam or counts.max() != lam:
                return OaCheckResult(False)
    return OaCheckResult(True, lam)


def project_alphabet(a: ArrayMatrix, v_target: int) -> ArrayMatrix:
    """Map symbol s to min(s, v_target - 1); never uncovers a covered set."""
    if v_target > a.v:
        raise AlphabetGrowError(f"cannot project v={a.v} up to {v_target}")
    if v_target < 2:
        raise ValueError("target alphabet must have at least 2 symbols")
    return ArrayMatrix(np.minimum(a.data, v_target - 1), v_target)
