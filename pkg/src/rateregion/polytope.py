"""Rate regions as H-polytopes in the nonnegative orthant.

Every region handled here contains the origin (all right-hand sides are
nonnegative), so each linear program starts from a feasible slack basis.
Unions of regions over sampled distributions are compared through support
functions on a fixed direction set rather than by building convex hulls.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._kernels import LP_OPTIMAL, LP_UNBOUNDED, lp_max

__all__ = [
    "HPolytope",
    "RegionEstimate",
    "LPError",
    "UnboundedError",
    "remove_redundant",
    "support_function",
    "default_directions",
    "region_equal",
    "union_support",
    "slice_2d",
    "slice_csv",
]

REDUNDANCY_TOL = 1e-9


class LPError(RuntimeError):
    pass


class UnboundedError(LPError):
    pass


@dataclass(frozen=True, eq=False)
class HPolytope:
    """``{R >= 0 : A @ R <= b}``; ``labels`` name the coordinates."""

    A: np.ndarray
    b: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=np.float64))
        b = np.asarray(self.b, dtype=np.float64).ravel()
        if A.shape[0] != b.size:
            raise ValueError("A and b disagree on the number of half-spaces")
        if b.size and np.any(b < -1e-12):
            raise ValueError("right-hand sides must be nonnegative")
        A.setflags(write=False)
        b = np.maximum(b, 0.0)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if self.labels and len(self.labels) != A.shape[1]:
            raise ValueError("one label per coordinate")

    @classmethod
    def from_halfspaces(cls, rows: Sequence[tuple[Sequence[float], float]], dim: int,
                        labels: tuple = ()) -> "HPolytope":
        if rows:
            A = np.array([r for r, _ in rows], dtype=np.float64).reshape(len(rows), dim)
            b = np.array([v for _, v in rows], dtype=np.float64)
        else:
            A, b = np.zeros((0, dim)), np.zeros(0)
        return cls(A, b, labels)

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    @property
    def halfspaces(self) -> list[tuple[np.ndarray, float]]:
        return [(self.A[i], float(self.b[i])) for i in range(self.b.size)]

    def __len__(self) -> int:
        return self.b.size

    def contains(self, R, tol: float = 1e-9) -> bool:
        R = np.asarray(R, dtype=np.float64)
        return bool(np.all(R >= -tol) and np.all(self.A @ R <= self.b + tol))


def support_function(P: HPolytope, d) -> float:
    """``max d.R`` over ``P``."""
    d = np.asarray(d, dtype=np.float64)
    if d.shape != (P.dim,):
        raise ValueError(f"direction has length {d.size}, polytope dim {P.dim}")
    status, value, _ = lp_max(d, P.A, P.b)
    if status == LP_UNBOUNDED:
        raise UnboundedError("support function unbounded in this direction")
    if status != LP_OPTIMAL:
        raise LPError("simplex iteration limit reached")
    return value


def _argmax(P_A, P_b, d):
    status, value, x = lp_max(d, P_A, P_b)
    if status == LP_UNBOUNDED:
        raise UnboundedError("support function unbounded in this direction")
    if status != LP_OPTIMAL:
        raise LPError("simplex iteration limit reached")
    return value, x


def remove_redundant(P: HPolytope, tol: float = REDUNDANCY_TOL) -> HPolytope:
    """Drop half-spaces implied by the others, scanning in order.

    Row ``i`` is redundant when maximising its left-hand side over the rows
    still kept (the orthant included) cannot exceed ``b[i] + tol``.
    """
    keep = list(range(len(P)))
    for i in range(len(P)):
        others = [j for j in keep if j != i]
        status, value, _ = lp_max(P.A[i], P.A[others], P.b[others])
        if status == LP_UNBOUNDED:
            continue
        if status != LP_OPTIMAL:
            raise LPError(f"redundancy LP failed for constraint {i}")
        if value <= P.b[i] + tol:
            keep.remove(i)
    return HPolytope(P.A[keep], P.b[keep], P.labels)


def default_directions(dim: int, n_random: int = 64, seed: int = 42) -> np.ndarray:
    """All nonzero 0/1 vectors, then ``n_random`` seeded unit vectors."""
    corners = [v for v in itertools.product((0.0, 1.0), repeat=dim) if any(v)]
    corners.sort(key=lambda v: (sum(v), tuple(-x for x in v)))
    rng = np.random.default_rng(seed)
    rand = rng.standard_normal((n_random, dim))
    rand /= np.linalg.norm(rand, axis=1, keepdims=True)
    return np.vstack([np.array(corners, dtype=np.float64).reshape(-1, dim), rand])


def region_equal(P, Q, directions=None, tol: float = 1e-9):
    """Compare two regions (polytopes or :class:`RegionEstimate`) through
    their support functions.

    Returns ``(equal, max_deviation, worst_direction)``.
    """
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if directions is None:
        directions = default_directions(P.dim)
    directions = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    if directions.shape[0] == 0:
        raise ValueError("no directions")
    worst, worst_d = -1.0, directions[0]
    for d in directions:
        dev = abs(_support(P, d) - _support(Q, d))
        if dev > worst:
            worst, worst_d = dev, d
    return worst <= tol, worst, worst_d


def _support(region, d) -> float:
    if isinstance(region, RegionEstimate):
        return union_support(region, d)
    return support_function(region, d)


@dataclass(eq=False)
class RegionEstimate:
    """Union of per-distribution polytopes, queried through its support
    function (the support function of the convex hull of the union)."""

    polytopes: list
    seed: Optional[int] = None
    support_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.polytopes = list(self.polytopes)
        if not self.polytopes:
            raise ValueError("empty region estimate")
        dims = {p.dim for p in self.polytopes}
        if len(dims) != 1:
            raise ValueError(f"member polytopes disagree on dimension: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.polytopes[0].dim

    @property
    def labels(self) -> tuple:
        return self.polytopes[0].labels

    def add(self, P: HPolytope) -> "RegionEstimate":
        return RegionEstimate(self.polytopes + [P], self.seed)


def union_support(estimate: RegionEstimate, d) -> float:
    d = np.asarray(d, dtype=np.float64)
    key = d.tobytes()
    hit = estimate.support_cache.get(key)
    if hit is None:
        hit = max(support_function(P, d) for P in estimate.polytopes)
        estimate.support_cache[key] = hit
    return hit


def _theta_grid(grid: int) -> np.ndarray:
    if grid < 1:
        raise ValueError("grid needs at least one angle")
    if grid == 1:
        return np.zeros(1)
    return np.linspace(0.0, 90.0, grid)


def slice_2d(estimate: RegionEstimate, axis_a: int, axis_b: int, grid: int = 91,
             eps: float = 1e-7) -> list[tuple[float, float, float]]:
    """Boundary of the union restricted to the ``(axis_a, axis_b)`` plane.

    For each angle ``theta`` (degrees, 0..90) the direction
    ``(cos theta, sin theta)`` is maximised with every other rate held at 0.
    When the optimum is an edge, the point of the edge closest to the ray at
    angle ``theta`` is reported, which keeps the trace symmetric under an
    axis swap.
    """
    if axis_a == axis_b:
        raise ValueError("slice axes must differ")
    for ax in (axis_a, axis_b):
        if not 0 <= ax < estimate.dim:
            raise ValueError(f"axis {ax} outside 0..{estimate.dim - 1}")
    cols = [axis_a, axis_b]
    planes = [(P.A[:, cols], P.b) for P in estimate.polytopes]
    out = []
    for theta in _theta_grid(grid):
        t = math.radians(theta)
        d = np.array([math.cos(t), math.sin(t)])
        vals = [_argmax(A, b, d)[0] for A, b in planes]
        best = int(np.argmax(vals))
        v = vals[best]
        A, b = planes[best]
        _, p = _argmax(A, b, d + eps * np.array([1.0, -1.0]))
        _, q = _argmax(A, b, d + eps * np.array([-1.0, 1.0]))
        edge = q - p
        n2 = float(edge @ edge)
        if n2 <= 1e-24:
            point = p
        else:
            s = min(1.0, max(0.0, float((v * d - p) @ edge) / n2))
            point = p + s * edge
        point = np.maximum(point, 0.0)
        out.append((float(theta), float(point[0]), float(point[1])))
    return out


def slice_csv(rows) -> str:
    lines = ["theta,R_a,R_b"]
    lines += [f"{t:.6f},{a:.6f},{b:.6f}" for t, a, b in rows]
    return "\n".join(lines) + "\n"
