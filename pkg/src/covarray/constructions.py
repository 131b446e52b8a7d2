"""Array constructions: random, block, the linear-algebraic A_opt and blow-ups."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np

from .arrays import ArrayMatrix
from .errors import OrderTooLargeError, TooManyVectorsError
from .field import FieldElement, FieldSpec, ff_dot, ff_inv, ff_mul, ff_sub
from .rng import generator

MAX_ROWS = 2**20
MAX_POINTS = 2**16


@dataclass(frozen=True)
class ProjectivePoint:
    """Canonical representative of a 1-dimensional subspace of F_q^t.

    The first nonzero coordinate is 1.
    """

    coords: tuple[FieldElement, ...]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(c.index for c in self.coords)

    def __repr__(self) -> str:
        return f"ProjectivePoint{self.indices}"


@dataclass(frozen=True)
class BlowupPlan:
    base_cols: int
    assignment: tuple[int, ...]
    mode: str
    seed: int | None = None

    def part_sizes(self) -> list[int]:
        return np.bincount(self.assignment, minlength=self.base_cols).tolist()


def n_points(q: int, t: int) -> int:
    return (q**t - 1) // (q - 1)


def projective_points(spec: FieldSpec, t: int) -> list[ProjectivePoint]:
    if t < 1:
        raise ValueError("t must be >= 1")
    count = n_points(spec.q, t)
    if count > MAX_POINTS:
        raise OrderTooLargeError(f"{count} projective points exceed the limit {MAX_POINTS}")
    elems = spec.elements()
    points = []
    for idx in itertools.product(range(spec.q), repeat=t):
        lead = next((i for i in idx if i != 0), None)
        if lead == 1:
            points.append(ProjectivePoint(tuple(elems[i] for i in idx)))
    assert len(points) == count
    return points


def _rank(rows: list[list[FieldElement]], spec: FieldSpec) -> int:
    rows = [list(r) for r in rows]
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col].index != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ff_inv(rows[rank][col], spec)
        rows[rank] = [ff_mul(inv, x, spec) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col].index != 0:
                f = rows[r][col]
                rows[r] = [ff_sub(x, ff_mul(f, y, spec), spec) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def linearly_independent(points: Sequence[ProjectivePoint], spec: FieldSpec) -> bool:
    if not points:
        raise ValueError("need at least one vector")
    t = len(points[0].coords)
    if len(points) > t:
        raise TooManyVectorsError(f"{len(points)} vectors in a {t}-dimensional space are always dependent")
    return _rank([list(p.coords) for p in points], spec) == len(points)


def build_a_opt(spec: FieldSpec, t: int) -> ArrayMatrix:
    """The q^t x (q^t - 1)/(q - 1) array with entry (y, i) = y . z_i.

    Rows run over F_q^t in lexicographic order of index vectors, columns over
    :func:`projective_points`.
    """
    q = spec.q
    if q**t > MAX_ROWS:
        raise OrderTooLargeError(f"q^t = {q**t} exceeds the row limit {MAX_ROWS}")
    points = projective_points(spec, t)
    ys = np.array(list(itertools.product(range(q), repeat=t)), dtype=np.int64)
    zs = np.array([p.indices for p in points], dtype=np.int64)
    try:
        add, mul, _ = spec.tables
    except OrderTooLargeError:
        elems = spec.elements()
        data = [[ff_dot([elems[i] for i in y], p.coords, spec).index for p in points] for y in ys]
        return ArrayMatrix(np.array(data), q)
    data = np.zeros((len(ys), len(zs)), dtype=np.int64)
    for j in range(t):
        data = add[data, mul[ys[:, j][:, None], zs[:, j][None, :]]]
    return ArrayMatrix(data, q)


def cov_a_opt_exact(spec: FieldSpec, t: int) -> int:
    """Number of linearly independent t-sets of projective points, in exact integers."""
    q = spec.q
    if q**t > MAX_ROWS:
        raise OrderTooLargeError(f"q^t = {q**t} exceeds the row limit {MAX_ROWS}")
    num = 1
    for i in range(t):
        num *= q**t - q**i
    den = math.factorial(t) * (q - 1) ** t
    assert num % den == 0
    return num // den


def build_block(v: int, t: int, k: int) -> ArrayMatrix:
    """All v^t rows constant on t contiguous near-equal column blocks."""
    if v < 2 or not 1 <= t <= k:
        raise ValueError("need v >= 2 and 1 <= t <= k")
    sizes = [k // t + (1 if i < k % t else 0) for i in range(t)]
    block_of = np.repeat(np.arange(t), sizes)
    values = np.array(list(itertools.product(range(v), repeat=t)), dtype=np.int64)
    return ArrayMatrix(values[:, block_of], v)


def build_random(v: int, n: int, k: int, seed: int) -> ArrayMatrix:
    if v < 2 or n < 1 or k < 1:
        raise ValueError("need v >= 2, n >= 1, k >= 1")
    return ArrayMatrix(generator(seed).integers(v, size=(n, k)), v)


def balanced_assignment(base_cols: int, k: int) -> tuple[int, ...]:
    sizes = [k // base_cols + (1 if i < k % base_cols else 0) for i in range(base_cols)]
    return tuple(np.repeat(np.arange(base_cols), sizes).tolist())


def apply_assignment(base: ArrayMatrix, assignment: Sequence[int]) -> ArrayMatrix:
    return ArrayMatrix(base.data[:, np.asarray(assignment, dtype=np.int64)], base.v)


def blow_up(base: ArrayMatrix, k: int, mode: Literal["balanced", "random"] = "balanced",
            seed: int | None = None) -> tuple[ArrayMatrix, BlowupPlan]:
    """Widen ``base`` to k columns, column j copying base column assignment[j].

    ``balanced`` uses contiguous near-equal parts; ``random`` draws each
    source column uniformly and independently from ``seed``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    big_k = base.n_cols
    if mode == "balanced":
        assignment = balanced_assignment(big_k, k)
        seed = None
    elif mode == "random":
        if seed is None:
            raise ValueError("random blow-up needs a seed")
        assignment = tuple(generator(seed).integers(big_k, size=k).tolist())
    else:
        raise ValueError(f"unknown blow-up mode {mode!r}")
    plan = BlowupPlan(big_k, assignment, mode, seed)
    return apply_assignment(base, assignment), plan


def block_coverage(k: int, t: int) -> int:
    """cov_t of :func:`build_block`: the product of the block sizes."""
    sizes = [k // t + (1 if i < k % t else 0) for i in range(t)]
    return math.prod(sizes)


def random_cover_probability(v: int, t: int) -> Fraction:
    """Probability that a uniform v^t x t array covers its t columns."""
    n = v**t
    return Fraction(math.factorial(n), n**n)
