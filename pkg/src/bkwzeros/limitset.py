"""Predicted limits of zeros of an exponential-sum family.

Three kinds of limit points are produced:

* isolated points, where the leading n-coefficient of a strictly dominant
  term vanishes;
* equimodular curves, where two terms share the largest modulus and at
  least one of their leading n-coefficients is nonzero;
* persistent zeros, common zeros of every large P_n that the two rules
  above do not already account for.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .poly_core import ComplexPoly, ExpSumFamily, poly_eval
from .recurrence import MinimalityReport, minimality_check
from .rootfind import all_roots, family_roots

DOMINANCE_MARGIN = 1e-9
# Candidate isolated points are polynomial roots, possibly multiple, so they
# carry ~sqrt(eps) positional error; strict dominance must beat that.
ISOLATED_MARGIN = 1e-6
VANISHING_MODULUS = 1e-9
PROBE_RADIUS = 1e-3
PROBE_POINTS = 8


@dataclass(frozen=True)
class Window:
    re_min: float = -3.0
    re_max: float = 3.0
    im_min: float = -3.0
    im_max: float = 3.0
    grid: int = 512

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("window bounds must be increasing")
        if self.grid < 16:
            raise ValueError("grid must be at least 16")

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z)
        return ((z.real >= self.re_min) & (z.real <= self.re_max)
                & (z.imag >= self.im_min) & (z.imag <= self.im_max))

    @property
    def cell_diagonal(self) -> float:
        return float(np.hypot((self.re_max - self.re_min) / self.grid,
                              (self.im_max - self.im_min) / self.grid))

    def expanded_to(self, points: np.ndarray, pad: float = 0.25) -> "Window":
        """Smallest enlargement (plus padding) containing ``points``."""
        pts = np.asarray(points)
        if pts.size == 0 or self.contains(pts).all():
            return self
        return Window(min(self.re_min, pts.real.min() - pad), max(self.re_max, pts.real.max() + pad),
                      min(self.im_min, pts.imag.min() - pad), max(self.im_max, pts.imag.max() + pad),
                      self.grid)


@dataclass(frozen=True)
class Curve:
    pair: tuple[int, int]
    points: np.ndarray

    @property
    def closed(self) -> bool:
        return len(self.points) > 2 and self.points[0] == self.points[-1]


@dataclass
class LimitSet:
    isolated: list[tuple[complex, int]] = field(default_factory=list)
    persistent: list[complex] = field(default_factory=list)
    curves: list[Curve] = field(default_factory=list)
    window: Window | None = None

    def curve_points(self) -> np.ndarray:
        if not self.curves:
            return np.zeros(0, dtype=np.complex128)
        return np.concatenate([c.points for c in self.curves])

    def point_set(self) -> np.ndarray:
        """Isolated and persistent points, deduplicated."""
        pts = [z for z, _ in self.isolated] + list(self.persistent)
        return _dedupe(np.array(pts, dtype=np.complex128), 1e-9)

    def to_dict(self) -> dict:
        return {
            "isolated": [{"point": [z.real, z.imag], "term": i} for z, i in self.isolated],
            "persistent": [[z.real, z.imag] for z in self.persistent],
            "curves": [
                {"pair": list(c.pair), "points": [[float(z.real), float(z.imag)] for z in c.points]}
                for c in self.curves
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LimitSet":
        return cls(
            isolated=[(complex(*e["point"]), int(e["term"])) for e in d.get("isolated", [])],
            persistent=[complex(*p) for p in d.get("persistent", [])],
            curves=[
                Curve(tuple(c["pair"]), np.array([complex(*p) for p in c["points"]], dtype=np.complex128))
                for c in d.get("curves", [])
            ],
        )


@dataclass
class NondegeneracyReport:
    degenerate_pairs: list[tuple[int, int]]
    minimality: MinimalityReport

    @property
    def passed(self) -> bool:
        return not self.degenerate_pairs and self.minimality.passed


def _dedupe(z: np.ndarray, tol: float) -> np.ndarray:
    out: list[complex] = []
    for w in z:
        if all(abs(w - u) > tol for u in out):
            out.append(complex(w))
    return np.array(out, dtype=np.complex128)


def moduli(F: ExpSumFamily, z) -> np.ndarray:
    """``|lambda_i(z)|`` stacked along the first axis."""
    return np.stack([np.abs(poly_eval(lam, z)) for lam in F.lambdas])


def dominant_index(F: ExpSumFamily, z: complex, tie_tol: float = DOMINANCE_MARGIN):
    """Index of the strictly dominant term at ``z``, or a tuple of tied indices.

    Term ``k`` is strictly dominant when ``|lambda_k(z)|`` exceeds every
    other modulus by the relative margin ``tie_tol``. Otherwise every index
    whose modulus is within that margin of the maximum is returned.
    """
    m = moduli(F, z)
    top = m.max()
    close = np.flatnonzero(m >= top * (1 - tie_tol))
    if len(close) == 1:
        return int(close[0])
    return tuple(int(k) for k in close)


def _dominates(F: ExpSumFamily, i: int, z: complex) -> bool:
    if moduli(F, z).max() < VANISHING_MODULUS:
        probes = z + PROBE_RADIUS * np.exp(2j * np.pi * (np.arange(PROBE_POINTS) + 0.5) / PROBE_POINTS)
        return all(dominant_index(F, w, ISOLATED_MARGIN) == i for w in probes)
    return dominant_index(F, z, ISOLATED_MARGIN) == i


def isolated_limit_points(F: ExpSumFamily, W: Window | None = None) -> list[tuple[complex, int]]:
    """Zeros of a dominant term's leading n-coefficient, inside ``W``."""
    W = W or Window()
    out: list[tuple[complex, int]] = []
    for i, t in enumerate(F.terms):
        lead = t.alpha.leading
        if lead.is_zero():
            raise ValueError(f"term {i} has a zero leading coefficient")
        if lead.degree() < 1:
            continue
        roots = _dedupe(all_roots(lead).roots, 1e-9)
        for z in roots[W.contains(roots)]:
            if _dominates(F, i, complex(z)):
                out.append((complex(z), i))
    out.sort(key=lambda e: (e[0].real, e[0].imag))
    return out


def persistent_zeros(F: ExpSumFamily, probe_indices=(17, 18, 19),
                     match_tol: float = 1e-7, exclude_equimodular: bool = True) -> list[complex]:
    """Points that are zeros of P_n for every probe index.

    Common zeros lying on an equimodular locus with nonzero modulus are
    already limits through the curve rule, so by default they are dropped.
    """
    probe_indices = list(probe_indices)
    if len(probe_indices) < 2:
        raise ValueError("need at least two probe indices")
    rootsets = [family_roots(F, n, n)[0].roots for n in probe_indices]
    common = []
    for z in rootsets[0]:
        if all(np.min(np.abs(r - z)) < match_tol for r in rootsets[1:]):
            common.append(z)
    common = _dedupe(np.array(common, dtype=np.complex128), match_tol)
    out = []
    for z in common:
        if exclude_equimodular:
            m = moduli(F, z)
            if isinstance(dominant_index(F, z, 1e-6), tuple) and m.max() > VANISHING_MODULUS:
                continue
        out.append(complex(z))
    out.sort(key=lambda z: (z.real, z.imag))
    return out


# -- equimodular curves -----------------------------------------------------

def _log_moduli(lams: list[ComplexPoly], z: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.stack([np.log(np.abs(poly_eval(lam, z))) for lam in lams])


def _refine_crossings(li: ComplexPoly, lj: ComplexPoly, a: np.ndarray, b: np.ndarray,
                      ga: np.ndarray, iterations: int = 60) -> np.ndarray:
    """Bisect each segment ``[a, b]`` to the sign change of log|li| - log|lj|."""
    sa = ga >= 0
    for _ in range(iterations):
        m = 0.5 * (a + b)
        with np.errstate(divide="ignore", invalid="ignore"):
            gm = np.log(np.abs(poly_eval(li, m))) - np.log(np.abs(poly_eval(lj, m)))
        left = (gm >= 0) == sa
        a = np.where(left, m, a)
        b = np.where(left, b, m)
        if np.all(np.abs(b - a) <= 4 * np.finfo(float).eps * np.maximum(np.abs(a), 1.0)):
            break
    return 0.5 * (a + b)


def _pair_points(pts: list[tuple[int, complex]]) -> list[tuple[int, int]]:
    """Pair the crossing points of one cell (2 or 4 of them) into segments."""
    if len(pts) == 2:
        return [(pts[0][0], pts[1][0])]
    if len(pts) == 4:
        (a, za), (b, zb), (c, zc), (d, zd) = pts
        options = [
            ((a, b), (c, d), abs(za - zb) + abs(zc - zd)),
            ((a, c), (b, d), abs(za - zc) + abs(zb - zd)),
            ((a, d), (b, c), abs(za - zd) + abs(zb - zc)),
        ]
        s1, s2, _ = min(options, key=lambda o: o[2])
        return [s1, s2]
    return []


def _chain(nodes: dict[int, complex], links: list[tuple[int, int]]) -> list[np.ndarray]:
    adj: dict[int, list[int]] = {k: [] for k in nodes}
    for u, v in links:
        adj[u].append(v)
        adj[v].append(u)
    seen: set[int] = set()
    lines = []

    def walk(start: int) -> list[int]:
        path = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [w for w in adj[cur] if w != prev and w not in seen]
            if not nxt:
                if len(path) > 2 and start in adj[cur] and prev is not None:
                    path.append(start)
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)

    for k in sorted(nodes, key=lambda k: (len(adj[k]) != 1, k)):
        if k not in seen:
            lines.append(np.array([nodes[i] for i in walk(k)], dtype=np.complex128))
    return lines


def equimodular_curves(F: ExpSumFamily, W: Window | None = None) -> list[Curve]:
    """Polylines on which two terms tie for the largest modulus.

    For each pair of terms the zero set of ``log|l_i| - log|l_j|`` is found
    by corner-sign analysis on the grid; every crossing edge is bisected to
    double precision. A refined point is kept when (a) no other term exceeds
    the pair's modulus by more than the dominance margin, (b) the moduli are
    positive, and (c) a leading n-coefficient of the pair is nonzero there.
    Kept crossings are chained through the cells they share.
    """
    W = W or Window()
    G = W.grid
    re = np.linspace(W.re_min, W.re_max, G + 1)
    im = np.linspace(W.im_min, W.im_max, G + 1)
    Z = re[None, :] + 1j * im[:, None]
    lams = F.lambdas
    L = _log_moduli(lams, Z)
    leads = [t.alpha.leading for t in F.terms]
    n_h = (G + 1) * G
    curves: list[Curve] = []

    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            with np.errstate(invalid="ignore"):
                g = L[i] - L[j]
            ok = np.isfinite(g)
            pos = g >= 0
            h_cross = ok[:, :-1] & ok[:, 1:] & (pos[:, :-1] != pos[:, 1:])
            v_cross = ok[:-1, :] & ok[1:, :] & (pos[:-1, :] != pos[1:, :])
            hr, hc = np.nonzero(h_cross)
            vr, vc = np.nonzero(v_cross)
            if hr.size + vr.size == 0:
                continue
            ids = np.concatenate([hr * G + hc, n_h + vr * (G + 1) + vc])
            a = np.concatenate([Z[hr, hc], Z[vr, vc]])
            b = np.concatenate([Z[hr, hc + 1], Z[vr + 1, vc]])
            ga = np.concatenate([g[hr, hc], g[vr, vc]])
            zs = _refine_crossings(lams[i], lams[j], a, b, ga)
            keep = _curve_filter(F, i, j, leads, zs)
            point_of = dict(zip(ids.tolist(), zs))
            kept = {int(e) for e, k in zip(ids, keep) if k}

            cells: dict[tuple[int, int], list[tuple[int, complex]]] = {}
            for e, z in zip(ids.tolist(), zs):
                if e < n_h:
                    r, c = divmod(e, G)
                    owners = [(r - 1, c), (r, c)]
                else:
                    r, c = divmod(e - n_h, G + 1)
                    owners = [(r, c - 1), (r, c)]
                for cell in owners:
                    if 0 <= cell[0] < G and 0 <= cell[1] < G:
                        cells.setdefault(cell, []).append((e, z))
            links = []
            for pts in cells.values():
                pts.sort()
                for u, v in _pair_points(pts):
                    if u in kept and v in kept:
                        links.append((u, v))
            for line in _chain({e: point_of[e] for e in kept}, links):
                curves.append(Curve((i, j), line))
    return curves


def _curve_filter(F: ExpSumFamily, i: int, j: int, leads: list[ComplexPoly],
                  z: np.ndarray) -> np.ndarray:
    m = moduli(F, z)
    top = np.maximum(m[i], m[j])
    with np.errstate(divide="ignore", invalid="ignore"):
        balanced = np.abs(np.log(m[i]) - np.log(m[j])) < 1e-8
    positive = np.minimum(m[i], m[j]) > 0
    others = np.delete(m, [i, j], axis=0)
    dominant = np.all(others <= top * (1 + DOMINANCE_MARGIN), axis=0) if len(others) else np.ones_like(top, bool)
    lead_ok = np.zeros(z.shape, dtype=bool)
    for k in (i, j):
        p = leads[k]
        scale = p.max_abs() * np.maximum(1.0, np.abs(z)) ** max(p.degree(), 0)
        lead_ok |= np.abs(poly_eval(p, z)) > 1e-9 * scale
    return balanced & positive & dominant & lead_ok


# -- assembly ----------------------------------------------------------------

def nondegeneracy_check(F: ExpSumFamily, sample_count: int = 32, W: Window | None = None,
                        seed: int = 0) -> NondegeneracyReport:
    """Flag term pairs whose modulus ratio is constant (``l_i = w * l_j``, ``|w| = 1``
    or any constant ``|w|``), and re-run the minimality check."""
    if sample_count < 8:
        raise ValueError("sample_count must be at least 8")
    W = W or Window()
    rng = np.random.default_rng(seed)
    lams = F.lambdas
    degenerate = []
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            ratios: list[float] = []
            while len(ratios) < sample_count:
                z = complex(rng.uniform(W.re_min, W.re_max), rng.uniform(W.im_min, W.im_max))
                lj = abs(poly_eval(lams[j], z))
                if lj < 1e-12:
                    continue
                ratios.append(abs(poly_eval(lams[i], z)) / lj)
            r = np.array(ratios)
            if np.std(r, ddof=1) < 1e-9 * np.mean(r):
                degenerate.append((i, j))
    return NondegeneracyReport(degenerate, minimality_check(F))


def limit_set(F: ExpSumFamily, W: Window | None = None, check: bool = True) -> LimitSet:
    W = W or Window()
    if check:
        rep = nondegeneracy_check(F, W=W)
        if not rep.passed:
            raise ValueError(f"family {F.name!r} is degenerate: {rep}")
    persistent = [z for z in persistent_zeros(F) if W.contains(z)]
    return LimitSet(isolated_limit_points(F, W), persistent, equimodular_curves(F, W), W)
