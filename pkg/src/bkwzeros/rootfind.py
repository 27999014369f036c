"""All complex zeros of a polynomial, and argument-principle zero counts."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .poly_core import ComplexPoly, ExpSumFamily, expand_at_index, poly_eval

Evaluator = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]

DEFAULT_TOL = 1e-10
MAX_ITER = 200


class RootFindingError(RuntimeError):
    def __init__(self, message: str, worst_residual: float = float("nan"), n: int | None = None):
        super().__init__(message)
        self.worst_residual = worst_residual
        self.n = n


class ContourError(ValueError):
    """A zero of the polynomial lies on (or numerically at) the contour."""


@dataclass(frozen=True)
class RootSet:
    n: int
    roots: np.ndarray
    residuals: np.ndarray

    def __len__(self) -> int:
        return len(self.roots)


def relative_residuals(p: ComplexPoly, z: np.ndarray) -> np.ndarray:
    """``|p(z)| / max(max|coeff|, sum_j |c_j| |z|^j)``.

    Inside the unit disk this is the plain coefficient-relative residual;
    outside it becomes the normwise backward error, which is the most that
    double-precision evaluation can deliver there.
    """
    z = np.asarray(z, dtype=np.complex128)
    scale = np.maximum(p.max_abs(), poly_eval(ComplexPoly(np.abs(p.coeffs)), np.abs(z)).real)
    return np.abs(poly_eval(p, z)) / scale


def _fujiwara_bound(c: np.ndarray) -> float:
    d = len(c) - 1
    ratios = np.abs(c[:-1] / c[-1])
    k = d - np.arange(d)
    vals = ratios ** (1.0 / k)
    vals[0] = (ratios[0] / 2) ** (1.0 / d)
    return 2.0 * float(vals.max())


def cauchy_bound(c: np.ndarray) -> float:
    """Unique positive root of ``|c_d| r^d - sum_{j<d} |c_j| r^j``.

    Every zero of the polynomial has modulus at most this value. Found by
    geometric bisection inside ``[F/2, F]`` where F is the Fujiwara bound.
    """
    d = len(c) - 1
    ratios = np.abs(c[:-1] / c[-1])
    powers = np.arange(d) - d
    hi = _fujiwara_bound(c)
    lo = hi / 2
    with np.errstate(over="ignore"):
        for _ in range(60):
            mid = np.sqrt(lo * hi)
            if np.sum(ratios * mid ** powers.astype(float)) > 1.0:
                lo = mid
            else:
                hi = mid
    return float(hi)


def _horner_with_derivative(c: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for a in c[-2::-1]:
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _horner_evaluator(c: np.ndarray) -> Evaluator:
    abs_c = np.abs(c[::-1])
    noise_factor = 8 * len(c) * np.finfo(float).eps

    def evaluate(z):
        p, dp = _horner_with_derivative(c, z)
        r = np.abs(z)
        acc = np.zeros_like(r)
        for a in abs_c:
            acc = acc * r + a
        return p, dp, noise_factor * acc

    return evaluate


def _aberth(evaluate: Evaluator, d: int, k0: int, radius: float,
            max_iter: int) -> tuple[np.ndarray, bool]:
    """Aberth-Ehrlich iteration for the ``d`` nonzero roots of ``P / z**k0``."""
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    active = np.ones(d, dtype=bool)
    eye = np.eye(d, dtype=bool)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            return z, True
        za = z[idx]
        p, dp, noise = evaluate(za)
        diff = za[:, None] - z[None, :]
        diff[eye[idx]] = 1.0
        s = (1.0 / diff).sum(axis=1) - 1.0  # drop the masked self term
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = p / (dp - k0 * p / za) if k0 else p / dp
            w = ratio / (1.0 - ratio * s)
        exact = p == 0
        w[exact | ~np.isfinite(w)] = 0.0
        z[idx] = za - w
        done = exact | (np.abs(w) <= 4 * eps * np.abs(za)) | (np.abs(p) <= noise)
        active[idx[done]] = False
    return z, not active.any()


def _newton_polish(evaluate: Evaluator, z: np.ndarray) -> np.ndarray:
    p, dp, _ = evaluate(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        z1 = z - p / dp
    ok = np.isfinite(z1)
    p1, _, _ = evaluate(np.where(ok, z1, z))
    better = ok & (np.abs(p1) < np.abs(p))
    return np.where(better, z1, z)


def all_roots(p: ComplexPoly, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER,
              evaluator: Evaluator | None = None) -> RootSet:
    """All ``degree(p)`` zeros with multiplicity.

    Roots at the origin are deflated exactly from trailing zero
    coefficients. The rest come from an Aberth-Ehrlich iteration started on
    a circle whose radius is the Cauchy root bound, followed by one Newton
    polish step per root.

    ``evaluator``, when given, maps an array ``z`` to ``(p(z), p'(z),
    noise)`` for the same polynomial in a better-conditioned form than its
    expanded coefficients; it then drives the iteration and the polish.
    Residuals are always measured on ``p`` itself.

    Raises
    ------
    ValueError
        If ``p`` is zero or constant.
    RootFindingError
        If the iteration does not converge or a residual exceeds ``tol``.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root set")
    if p.degree() < 1:
        raise ValueError("constant polynomial has no roots")
    c = p.coeffs
    k = int(np.flatnonzero(c)[0])
    q = c[k:]
    zeros = np.zeros(k, dtype=np.complex128)
    if len(q) == 1:
        roots = zeros
    elif len(q) == 2 and evaluator is None:
        roots = np.concatenate([zeros, [-q[0] / q[1]]])
    else:
        if evaluator is None:
            evaluate, k0 = _horner_evaluator(q / q[-1]), 0
        else:
            evaluate, k0 = evaluator, k
        z, converged = _aberth(evaluate, len(q) - 1, k0, cauchy_bound(q), max_iter)
        z = _newton_polish(evaluate, z)
        if not converged:
            res = relative_residuals(p, z)
            raise RootFindingError(
                f"Aberth iteration did not converge in {max_iter} steps "
                f"(worst residual {res.max():.3g})", float(res.max()))
        roots = np.concatenate([zeros, z])
    res = relative_residuals(p, roots)
    worst = float(res.max()) if len(res) else 0.0
    if worst >= tol:
        raise RootFindingError(f"residual {worst:.3g} exceeds tolerance {tol:g}", worst)
    return RootSet(p.degree(), roots, res)


def family_evaluator(F: ExpSumFamily, n: int) -> Evaluator:
    """Pointwise ``(P_n, P_n', noise)`` from the unexpanded term form."""
    N = F.effective_index(n)
    parts = []
    for t in F.terms:
        a = t.alpha.at_index(N)
        parts.append((a, a.derivative(), t.lam, t.lam.derivative()))
    deg = max(len(a.coeffs) + N * len(lam.coeffs) for a, _, lam, _ in parts)
    noise_factor = 8 * deg * np.finfo(float).eps

    def evaluate(z):
        z = np.asarray(z, dtype=np.complex128)
        val = np.zeros_like(z)
        der = np.zeros_like(z)
        mag = np.zeros(z.shape)
        for a, da, lam, dlam in parts:
            av, lv = poly_eval(a, z), poly_eval(lam, z)
            lpow = lv ** N
            val = val + av * lpow
            d = poly_eval(da, z) * lpow
            if N:
                d = d + av * N * lv ** (N - 1) * poly_eval(dlam, z)
            der = der + d
            mag = mag + np.abs(av) * np.abs(lv) ** N
        return val, der, noise_factor * mag

    return evaluate


def sort_roots(roots: np.ndarray) -> np.ndarray:
    return roots[np.lexsort((roots.imag, roots.real))]


def _threads() -> int:
    try:
        n = int(os.environ.get("BKW_THREADS", "0"))
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def family_roots(F: ExpSumFamily, n_from: int, n_to: int, tol: float = DEFAULT_TOL) -> list[RootSet]:
    """One sorted RootSet per index in ``n_from..n_to`` inclusive."""
    if n_from > n_to:
        raise ValueError(f"empty index range {n_from}..{n_to}")

    def solve(n: int) -> RootSet:
        p = expand_at_index(F, n)
        try:
            rs = all_roots(p, tol, evaluator=family_evaluator(F, n))
        except RootFindingError as exc:
            raise RootFindingError(f"n={n}: {exc}", exc.worst_residual, n) from exc
        order = np.lexsort((rs.roots.imag, rs.roots.real))
        return RootSet(n, rs.roots[order], rs.residuals[order])

    ns = range(n_from, n_to + 1)
    workers = min(_threads(), len(ns))
    if workers <= 1:
        return [solve(n) for n in ns]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(solve, ns))


def winding_count(p: ComplexPoly, center: complex, radius: float,
                  max_samples: int = 1 << 20) -> int:
    """Number of zeros of ``p`` strictly inside the circle ``|z - center| = radius``.

    The argument of ``p`` is tracked along the circle; sampling is refined
    until every consecutive argument increment is below pi/2 in magnitude.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if radius <= 0:
        raise ValueError("radius must be positive")
    floor = 1e-10 * p.max_abs()

    def values(t):
        w = poly_eval(p, center + radius * np.exp(2j * np.pi * t))
        if np.any(np.abs(w) < floor):
            raise ContourError("root on contour")
        return w

    t = np.arange(max(64, 8 * (p.degree() + 1))) / max(64, 8 * (p.degree() + 1))
    w = values(t)
    while True:
        dtheta = np.angle(np.roll(w, -1) / w)
        bad = np.flatnonzero(np.abs(dtheta) >= np.pi / 2)
        if bad.size == 0:
            break
        if len(t) + bad.size > max_samples:
            raise ContourError("contour refinement exhausted; a root is too close to the contour")
        t_next = np.append(t[1:], 1.0)
        tm = 0.5 * (t[bad] + t_next[bad])
        t = np.concatenate([t, tm])
        w = np.concatenate([w, values(tm)])
        order = np.argsort(t)
        t, w = t[order], w[order]
    return int(round(dtheta.sum() / (2 * np.pi)))
