"""Empirical convergence of computed zeros to a predicted limit set."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .limitset import LimitSet, Window, limit_set
from .poly_core import ExpSumFamily, ncoeff_eval, poly_eval
from .rootfind import family_roots

# Engineering thresholds; no convergence rates are available to derive them.
TREND_MAX = 0.7
CONVERSE_MAX = 0.05
COVERAGE_MAX = 0.25
MAX_DIST_AT_40 = 0.1


@dataclass
class ConvergenceReport:
    family: str
    per_n: list[tuple[int, float, float]]
    coverage: list[tuple[complex, float]] = field(default_factory=list)
    trend: float = 1.0

    @property
    def final_max_dist(self) -> float:
        return self.per_n[-1][1]

    @property
    def worst_coverage(self) -> float:
        return max((d for _, d in self.coverage), default=0.0)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "per_n": [{"n": n, "max_dist": mx, "mean_dist": mn} for n, mx, mn in self.per_n],
            "trend": self.trend,
            "worst_coverage": self.worst_coverage,
            "coverage_points": len(self.coverage),
        }


def distance_to_polyline(points: np.ndarray, line: np.ndarray) -> np.ndarray:
    """Exact point-to-polyline distance for every entry of ``points``."""
    points = np.asarray(points, dtype=np.complex128)
    if len(line) == 1:
        return np.abs(points - line[0])
    a, b = line[:-1], line[1:]
    ab = b - a
    len2 = np.abs(ab) ** 2
    rel = points[:, None] - a[None, :]
    with np.errstate(invalid="ignore", divide="ignore"):
        t = np.where(len2 > 0, (rel * np.conj(ab)).real / len2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(rel - t * ab).min(axis=1)


def distance_to_limit_set(points, L: LimitSet) -> np.ndarray:
    points = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    best = np.full(points.shape, np.inf)
    pts = L.point_set()
    if len(pts):
        best = np.minimum(best, np.abs(points[:, None] - pts[None, :]).min(axis=1))
    for c in L.curves:
        best = np.minimum(best, distance_to_polyline(points, c.points))
    return best


def _covering_window(L: LimitSet | None, roots: np.ndarray) -> Window:
    base = L.window if L is not None and L.window is not None else Window()
    W = base.expanded_to(roots)
    if W is base:
        return base
    # keep the cell size of the original grid
    scale = max((W.re_max - W.re_min) / (base.re_max - base.re_min),
                (W.im_max - W.im_min) / (base.im_max - base.im_min))
    return Window(W.re_min, W.re_max, W.im_min, W.im_max, math.ceil(base.grid * scale))


def convergence_report(F: ExpSumFamily, n_from: int, n_to: int, L: LimitSet | None = None,
                       tol: float = 1e-10) -> ConvergenceReport:
    """Distances from zeros of P_n to ``L``, for ``n_from..n_to``.

    If some zero falls outside the window ``L`` was computed on (or ``L`` is
    not given) the limit set is recomputed on an enlarged window.
    """
    rootsets = family_roots(F, n_from, n_to, tol)
    everything = np.concatenate([rs.roots for rs in rootsets])
    W = _covering_window(L, everything)
    if L is None or L.window is None or W != L.window:
        L = limit_set(F, W)
    per_n = []
    for rs in rootsets:
        d = distance_to_limit_set(rs.roots, L)
        per_n.append((rs.n, float(d.max()), float(d.mean())))
    last = rootsets[-1].roots
    coverage = []
    cp = L.curve_points()
    if len(cp) and len(last):
        near = np.abs(cp[:, None] - last[None, :]).min(axis=1)
        coverage = [(complex(z), float(d)) for z, d in zip(cp, near)]
    first = per_n[0][1]
    trend = 1.0 if n_from == n_to or first == 0 else per_n[-1][1] / first
    return ConvergenceReport(F.name, per_n, coverage, trend)


def converse_residual(F: ExpSumFamily, z: complex, n: int) -> float:
    """Violation of the modulus balance that every zero of a two-term P_n satisfies.

    ``| |a_1(N;z)|^(1/N) |l_1(z)| - |a_2(N;z)|^(1/N) |l_2(z)| |`` with
    ``N = n + index_offset``.
    """
    if len(F.terms) != 2:
        raise ValueError("the balance condition is defined for two-term families only")
    N = F.effective_index(n)
    if N < 1:
        raise ValueError("effective index must be at least 1")
    sides = []
    for t in F.terms:
        a = abs(ncoeff_eval(t.alpha, N, z))
        sides.append(a ** (1.0 / N) * abs(poly_eval(t.lam, z)))
    return abs(sides[0] - sides[1])
