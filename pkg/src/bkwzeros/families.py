"""Built-in exponential-sum families with closed-form evaluators.

Each constructor returns a :class:`FamilySpec` pairing the term form (the
authoritative definition, consumed by the limit-set code) with an
independent closed-form evaluator used only as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .poly_core import (
    ComplexPoly,
    ExpSumFamily,
    ExpTerm,
    NCoeffPoly,
    eval_family,
    load_family,
)

X = ComplexPoly([0, 1])
ONE = ComplexPoly([1])


def _nc(*coeffs) -> NCoeffPoly:
    """NCoeffPoly from x-coefficient lists, lowest n-power first."""
    return NCoeffPoly(tuple(c if isinstance(c, ComplexPoly) else ComplexPoly(c) for c in coeffs))


@dataclass(frozen=True)
class FamilySpec:
    family: ExpSumFamily
    direct_eval: Callable[[int, np.ndarray], np.ndarray]
    citation: str


@dataclass(frozen=True)
class ConsistencyReport:
    name: str
    max_rel_deviation: float
    worst_n: int
    worst_z: complex
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_rel_deviation < self.tol


def make_f() -> FamilySpec:
    fam = ExpSumFamily("f", (
        ExpTerm(_nc([-2, 1]), X),
        ExpTerm(_nc([0, 0, 1], [], [1]), ONE),
    ))

    def direct(n, z):
        return z ** (n + 1) - 2 * z ** n + z ** 2 + n ** 2

    return FamilySpec(fam, direct, "f_n(x) = x^(n+1) - 2x^n + x^2 + n^2")


def make_g() -> FamilySpec:
    fam = ExpSumFamily("g", (
        ExpTerm(_nc([-2, 1]), X),
        ExpTerm(_nc([1], [0, 5], [0, 0, 1]), ONE),
    ))

    def direct(n, z):
        return z ** (n + 1) - 2 * z ** n + n ** 2 * z ** 2 + 5 * n * z + 1

    return FamilySpec(fam, direct, "g_n(x) = x^(n+1) - 2x^n + n^2 x^2 + 5nx + 1")


def make_steele_cycle() -> FamilySpec:
    fam = ExpSumFamily("steele_cycle", (
        ExpTerm(_nc([1]), X),
        ExpTerm(_nc([-1], [1, -1]), ONE),
    ))

    def direct(n, t):
        return t ** n - n * t + (n - 1)

    return FamilySpec(fam, direct, "S(C_n; t) = t^n - nt + (n-1)")


def make_independence() -> FamilySpec:
    fam = ExpSumFamily("independence", (
        ExpTerm(_nc([], [1]), ComplexPoly([1, 1])),
        ExpTerm(_nc([1], [-1]), ONE),
    ))

    def direct(n, z):
        return n * (1 + z) ** n - (n - 1)

    return FamilySpec(fam, direct, "i(K_{n,...,n}, x) = n(1+x)^n - (n-1)")


def _screl_direct(n, p):
    return 2 * p ** n - p ** (2 * n) + n * (1 - p) ** 2 * p ** (2 * n - 2)


_SCREL_CITATION = "screl(C_n<->, p) = 2p^n - p^(2n) + n(1-p)^2 p^(2n-2), N = n - 1"


def make_screl() -> FamilySpec:
    """Strongly connected reliability of the bidirected cycle.

    With N = n - 1 the closed form splits as
    2p * p^N + (N(1-p)^2 + 1 - 2p) * (p^2)^N.
    """
    fam = ExpSumFamily("screl", (
        ExpTerm(_nc([0, 2]), X),
        ExpTerm(_nc([1, -2], [1, -2, 1]), ComplexPoly([0, 0, 1])),
    ), index_offset=-1)
    return FamilySpec(fam, _screl_direct, _SCREL_CITATION)


def make_screl_alternative() -> FamilySpec:
    """Alternative split 2p^2 * p^N + (N(1-p)^2 + (1-p)^2) * (p^2)^N.

    It does not reproduce the closed form (the first alpha carries an extra
    factor p and the -p^(2n) term is missing); kept as a negative control
    for the consistency check.
    """
    one_minus_sq = [1, -2, 1]
    fam = ExpSumFamily("screl_alternative", (
        ExpTerm(_nc([0, 0, 2]), X),
        ExpTerm(_nc(one_minus_sq, one_minus_sq), ComplexPoly([0, 0, 1])),
    ), index_offset=-1)
    return FamilySpec(fam, _screl_direct, _SCREL_CITATION)


def _domination_direct(n, x):
    return (((1 + x) ** n - 1 - n * x) ** 2 + 2 * x ** n
            + 2 * n * x ** 2 * ((1 + x) ** (n - 1) - 1) + n * x ** 2)


_DOMINATION_CITATION = (
    "B_n(x) = ((1+x)^n - 1 - nx)^2 + 2x^n + 2nx^2((1+x)^(n-1) - 1) + nx^2, N = n - 1"
)


def make_domination() -> FamilySpec:
    """Domination polynomials of bipartite cocktail-party graphs.

    The alphas are identified in N = n - 1 from the closed form; a
    commonly transcribed four-term table does not reproduce it (see
    :func:`make_domination_alternative`).
    """
    one_plus_x = ComplexPoly([1, 1])
    fam = ExpSumFamily("domination", (
        ExpTerm(_nc([1, 2, 1]), one_plus_x ** 2),
        ExpTerm(_nc([-2, -4], [0, -2]), one_plus_x),
        ExpTerm(_nc([0, 2]), X),
        ExpTerm(_nc([1, 2], [0, 2, 1], [0, 0, 1]), ONE),
    ), index_offset=-1)
    return FamilySpec(fam, _domination_direct, _DOMINATION_CITATION)


def make_domination_alternative() -> FamilySpec:
    """Four-term table with alpha_2 = (2x^2-2x-2)N + 2x^2-4x-4 and
    alpha_4 = x^2 N + 3x^2 N + 3x^2.

    Kept only so its mismatch against the closed form stays checkable.
    """
    one_plus_x = ComplexPoly([1, 1])
    fam = ExpSumFamily("domination_alternative", (
        ExpTerm(_nc([1, 2, 1]), one_plus_x ** 2),
        ExpTerm(_nc([-4, -4, 2], [-2, -2, 2]), one_plus_x),
        ExpTerm(_nc([0, 2]), X),
        ExpTerm(_nc([0, 0, 3], [0, 0, 4]), ONE),
    ), index_offset=-1)
    return FamilySpec(fam, _domination_direct, _DOMINATION_CITATION)


BUILTIN = {
    "f": make_f,
    "g": make_g,
    "steele_cycle": make_steele_cycle,
    "independence": make_independence,
    "screl": make_screl,
    "domination": make_domination,
}

# (family, first n, last n) for the standard overlay plots.
FIGURE_CONFIGS = [
    ("f", 2, 30),
    ("g", 2, 30),
    ("independence", 2, 40),
    ("screl", 3, 40),
    ("domination", 2, 30),
]


def get_spec(name: str) -> FamilySpec:
    try:
        return BUILTIN[name]()
    except KeyError:
        raise KeyError(f"unknown family {name!r}; choose from {sorted(BUILTIN)}") from None


def resolve_family(name_or_path: str) -> ExpSumFamily:
    """A built-in family by name, otherwise a family JSON file."""
    if name_or_path in BUILTIN:
        return BUILTIN[name_or_path]().family
    path = Path(name_or_path)
    if path.is_file():
        return load_family(path)
    raise KeyError(f"unknown family {name_or_path!r}; choose from {sorted(BUILTIN)} or pass a JSON file")


def consistency_check(spec: FamilySpec, n_range=range(2, 9), sample_count: int = 20,
                      tol: float = 1e-9, seed: int = 0) -> ConsistencyReport:
    """Compare the term form with the closed form at random points.

    Deviation is ``|term - direct| / max(|term|, |direct|, 1)``.
    """
    rng = np.random.default_rng(seed)
    r = 1.5 * np.sqrt(rng.random(sample_count))
    z = r * np.exp(2j * np.pi * rng.random(sample_count))
    worst = (0.0, n_range[0], 0j)
    for n in n_range:
        a = np.asarray(eval_family(spec.family, n, z))
        b = np.asarray(spec.direct_eval(n, z), dtype=np.complex128)
        dev = np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), 1.0)
        k = int(np.argmax(dev))
        if dev[k] > worst[0]:
            worst = (float(dev[k]), n, complex(z[k]))
    return ConsistencyReport(spec.family.name, worst[0], worst[1], worst[2], tol)
