"""Explicit hypergraph H_{t,v} at tiny scale and its Lagrangian.

Vertices of H_{t,v} are the vectors of [v]^(v^t), indexed lexicographically
(first coordinate most significant).  t vertices form an edge when the
v^t x t matrix with those vectors as columns contains every tuple of [v]^t as
a row.  For a v^t-row array whose columns are distributed over vertices with
weights x, cov_t = k^t * w(x, H), which is what makes these Lagrangians upper
bounds on coverage.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .arrays import ArrayMatrix, covered_mask, verify_oa
from .errors import (
    EmptySupportError,
    IllegalWeightingError,
    InstanceTooLargeError,
    IsolatedVertexError,
    KLessThanTError,
)
from .rng import generator

VERTEX_LIMIT = 2**16
WORK_LIMIT = 10**8
SUPPORT_THRESHOLD = 1e-8


@dataclass(frozen=True, eq=False)
class LagrangianInstance:
    t: int
    v: int
    vertices: np.ndarray  # (n_vertices, v^t) symbol vectors
    edges: np.ndarray     # (n_edges, t) sorted vertex indices, lexicographic

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_edges(self) -> int:
        return self.edges.shape[0]

    def vertex_index(self, vector: Sequence[int]) -> int:
        vec = [int(s) for s in vector]
        if len(vec) != self.vertices.shape[1] or not all(0 <= s < self.v for s in vec):
            raise ValueError(f"{vector!r} is not a vertex of H_({self.t},{self.v})")
        idx = 0
        for s in vec:
            idx = idx * self.v + s
        return idx

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.n_vertices)


def build_h(t: int, v: int, vertex_limit: int = VERTEX_LIMIT,
            work_limit: int = WORK_LIMIT) -> LagrangianInstance:
    """Enumerate H_{t,v}.

    The work estimate is C(#vertices, t) * v^t, the cost of testing every
    t-set naively, even though only balanced vectors (each symbol exactly
    v^(t-1) times) are actually tested: no other vector lies in an edge.
    """
    if t < 1 or v < 2:
        raise ValueError("need t >= 1 and v >= 2")
    n = v**t
    n_vertices = v**n
    if n_vertices > vertex_limit:
        raise InstanceTooLargeError(f"H_({t},{v}) has {n_vertices} vertices (limit {vertex_limit})")
    work = math.comb(n_vertices, t) * n
    if work > work_limit:
        raise InstanceTooLargeError(f"H_({t},{v}) edge enumeration needs {work} units (limit {work_limit})")

    vertices = np.array(list(itertools.product(range(v), repeat=n)), dtype=np.int64)
    counts = np.stack([(vertices == s).sum(axis=1) for s in range(v)], axis=1)
    balanced = np.flatnonzero((counts == n // v).all(axis=1))

    edges = np.zeros((0, t), dtype=np.int64)
    if balanced.size >= t:
        columns = vertices[balanced].T
        combos = np.array(list(itertools.combinations(range(balanced.size), t)), dtype=np.int64)
        parts = []
        step = max(1, 2**20 // n)
        for lo in range(0, len(combos), step):
            blk = combos[lo:lo + step]
            parts.append(blk[covered_mask(columns, v, blk)])
        edges = balanced[np.concatenate(parts)]
    vertices.setflags(write=False)
    edges.setflags(write=False)
    return LagrangianInstance(t, v, vertices, edges)


def check_weighting(inst: LagrangianInstance, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (inst.n_vertices,):
        raise IllegalWeightingError(f"weighting has shape {x.shape}, expected ({inst.n_vertices},)")
    if (x < 0).any() or abs(math.fsum(x) - 1) > 1e-12:
        raise IllegalWeightingError("weights must be non-negative and sum to 1")
    return x


def weight_poly(inst: LagrangianInstance, x) -> float:
    """w(x, H) = sum over edges of the product of vertex weights."""
    x = check_weighting(inst, x)
    if inst.n_edges == 0:
        return 0.0
    return math.fsum(np.prod(x[inst.edges], axis=1))


def _value(edges: np.ndarray, x: np.ndarray) -> float:
    return float(np.prod(x[edges], axis=1).sum()) if len(edges) else 0.0


def weight_gradient(inst: LagrangianInstance, x) -> np.ndarray:
    """Exact gradient of w(x, H) in the ambient space R^n (no simplex constraint)."""
    x = np.asarray(x, dtype=float)
    return _gradient(inst.edges, x)


def _gradient(edges: np.ndarray, x: np.ndarray) -> np.ndarray:
    g = np.zeros_like(x)
    if len(edges) == 0:
        return g
    vals = x[edges]
    t = edges.shape[1]
    for j in range(t):
        others = np.prod(np.delete(vals, j, axis=1), axis=1) if t > 1 else np.ones(len(edges))
        np.add.at(g, edges[:, j], others)
    return g


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(y)[::-1]
    css = np.cumsum(u) - 1
    ind = np.arange(1, len(y) + 1)
    rho = ind[u - css / ind > 0][-1]
    return np.maximum(y - css[rho - 1] / rho, 0)


def _ascend(f, grad, x: np.ndarray, iters: int, tol: float = 1e-15) -> tuple[np.ndarray, float]:
    """Projected gradient ascent with step halving; accepts only strict improvements."""
    val = f(x)
    step = 1.0
    for _ in range(iters):
        g = grad(x)
        while step > 1e-14:
            y = project_simplex(x + step * g)
            fy = f(y)
            if fy > val:
                break
            step /= 2
        else:
            break
        gain = fy - val
        x, val = y, fy
        step *= 2
        if gain < tol:
            break
    return x, val


def optimize_lagrangian(inst: LagrangianInstance, restarts: int = 100, iters: int = 1000,
                        seed: int = 0) -> tuple[np.ndarray, float]:
    """Multi-restart projected ascent from Dirichlet starts; best weighting and its value.

    Ties keep the earliest restart.
    """
    n = inst.n_vertices
    edges = inst.edges
    best_x, best = np.full(n, 1 / n), -1.0
    for i in range(restarts):
        x0 = generator(seed, i).dirichlet(np.ones(n))
        x, _ = _ascend(lambda z: _value(edges, z), lambda z: _gradient(edges, z), x0, iters)
        x = x / x.sum()
        val = weight_poly(inst, x)
        if val > best:
            best_x, best = x, val
    return best_x, best


def support_oa_check(inst: LagrangianInstance, x, threshold: float = SUPPORT_THRESHOLD) -> bool:
    """Do the vertices carrying weight form the columns of a strength-2 orthogonal array
    with at most (v^t - 1)/(v - 1) columns?"""
    x = check_weighting(inst, x)
    support = np.flatnonzero(x > threshold)
    if support.size == 0:
        raise EmptySupportError("no vertex carries weight above the threshold")
    size_ok = support.size <= (inst.v**inst.t - 1) // (inst.v - 1)
    if support.size < 2:
        return False
    columns = ArrayMatrix(inst.vertices[support].T, inst.v)
    return size_ok and verify_oa(columns, 2).is_oa


def _f(x: np.ndarray, t: int) -> float:
    return float(np.sum(x * (1 - x) ** (t - 1)))


def _f_grad(x: np.ndarray, t: int) -> np.ndarray:
    return (1 - x) ** (t - 1) - (t - 1) * x * (1 - x) ** (t - 2)


def maxima_closed_form(K: int, t: int) -> float:
    """Maximum of sum x_i (1 - x_i)^(t-1) over the K-simplex."""
    if t < 2 or K < t:
        raise KLessThanTError(f"need K >= t >= 2, got K={K}, t={t}")
    return (1 - 1 / K) ** (t - 1)


def maxima_bruteforce(K: int, t: int, resolution: int = 200, seed: int = 0) -> float:
    """Numerical maximum: uniform-on-j-coordinates points plus ``resolution`` ascent restarts."""
    if t < 2 or K < t:
        raise KLessThanTError(f"need K >= t >= 2, got K={K}, t={t}")
    best = 0.0
    for j in range(1, K + 1):
        x = np.zeros(K)
        x[:j] = 1 / j
        best = max(best, _f(x, t))
    for i in range(resolution):
        x0 = generator(seed, i).dirichlet(np.ones(K))
        _, val = _ascend(lambda z: _f(z, t), lambda z: _f_grad(z, t), x0, 2000)
        best = max(best, val)
    return best


def link_degree_check(inst: LagrangianInstance, vertex) -> int:
    """Degree of ``vertex`` (index or symbol vector), i.e. the edge count of its link."""
    idx = vertex if isinstance(vertex, (int, np.integer)) else inst.vertex_index(vertex)
    degree = int(np.count_nonzero((inst.edges == idx).any(axis=1)))
    if degree == 0:
        raise IsolatedVertexError(f"vertex {idx} lies in no edge")
    return degree


def tensor_edge_count(n_edges: int, t: int, v: int) -> int:
    """Edges of the v-fold tensor power of a t-uniform hypergraph with n_edges edges."""
    return n_edges**v * math.factorial(t) ** (v - 1)
