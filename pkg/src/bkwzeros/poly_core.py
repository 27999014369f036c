"""Univariate complex polynomials and exponential-sum polynomial families.

A family is a sequence

    P_n(x) = sum_i alpha_i(N; x) * lambda_i(x)**N,    N = n + index_offset,

where each ``lambda_i`` is a polynomial in ``x`` and each ``alpha_i`` is a
polynomial in the index ``N`` whose coefficients are polynomials in ``x``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_NORMALIZE_TOL = 1e-12


class ComplexPoly:
    """Dense polynomial with complex128 coefficients, lowest degree first.

    ``coeffs[j]`` multiplies ``x**j``. Exact trailing zeros are stripped on
    construction, so the zero polynomial has an empty coefficient array.
    Instances are treated as immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray = ()):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        nz = np.flatnonzero(c)
        c = c[: nz[-1] + 1] if nz.size else c[:0]
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @classmethod
    def monomial(cls, degree: int, coeff: complex = 1.0) -> "ComplexPoly":
        c = np.zeros(degree + 1, dtype=np.complex128)
        c[degree] = coeff
        return cls(c)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return len(self._c) == 0

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._c))) if len(self._c) else 0.0

    def normalize(self, tol: float = DEFAULT_NORMALIZE_TOL) -> "ComplexPoly":
        """Drop trailing coefficients with modulus <= tol * max modulus."""
        if self.is_zero():
            return self
        mag = np.abs(self._c)
        keep = np.flatnonzero(mag > tol * mag.max())
        return ComplexPoly(self._c[: keep[-1] + 1])

    def __call__(self, z):
        return poly_eval(self, z)

    def __add__(self, other: "ComplexPoly") -> "ComplexPoly":
        return poly_add(self, _as_poly(other))

    __radd__ = __add__

    def __neg__(self) -> "ComplexPoly":
        return ComplexPoly(-self._c)

    def __sub__(self, other: "ComplexPoly") -> "ComplexPoly":
        return poly_add(self, -_as_poly(other))

    def __rsub__(self, other) -> "ComplexPoly":
        return poly_add(_as_poly(other), -self)

    def __mul__(self, other) -> "ComplexPoly":
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ComplexPoly":
        return poly_pow(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self._c, other._c)

    def __hash__(self) -> int:
        return hash(self._c.tobytes())

    def __repr__(self) -> str:
        return f"ComplexPoly({_fmt_coeffs(self._c)})"

    def derivative(self) -> "ComplexPoly":
        return poly_derivative(self)


def _fmt_coeffs(c: np.ndarray) -> str:
    parts = []
    for v in c:
        parts.append(repr(float(v.real)) if v.imag == 0 else repr(complex(v)))
    return "[" + ", ".join(parts) + "]"


def _as_poly(p) -> ComplexPoly:
    if isinstance(p, ComplexPoly):
        return p
    return ComplexPoly([p])


def _trim_cancelled(values: np.ndarray, scale: np.ndarray,
                    tol: float = DEFAULT_NORMALIZE_TOL) -> ComplexPoly:
    # Trailing entries that are pure cancellation noise relative to the
    # magnitudes that were summed at that position are dropped.
    keep = np.flatnonzero(np.abs(values) > tol * scale)
    if keep.size == 0:
        return ComplexPoly()
    return ComplexPoly(values[: keep[-1] + 1])


def poly_add(a: ComplexPoly, b: ComplexPoly) -> ComplexPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    out = np.zeros(n, dtype=np.complex128)
    scale = np.zeros(n)
    out[: len(a.coeffs)] += a.coeffs
    out[: len(b.coeffs)] += b.coeffs
    scale[: len(a.coeffs)] += np.abs(a.coeffs)
    scale[: len(b.coeffs)] += np.abs(b.coeffs)
    return _trim_cancelled(out, scale)


def poly_sum(polys: Iterable[ComplexPoly]) -> ComplexPoly:
    """Sum of many polynomials with a single cancellation-aware trim."""
    polys = list(polys)
    if not polys:
        return ComplexPoly()
    n = max(len(p.coeffs) for p in polys)
    out = np.zeros(n, dtype=np.complex128)
    scale = np.zeros(n)
    for p in polys:
        out[: len(p.coeffs)] += p.coeffs
        scale[: len(p.coeffs)] += np.abs(p.coeffs)
    return _trim_cancelled(out, scale)


def poly_mul(a: ComplexPoly, b: ComplexPoly) -> ComplexPoly:
    if a.is_zero() or b.is_zero():
        return ComplexPoly()
    return ComplexPoly(np.convolve(a.coeffs, b.coeffs))


def poly_pow(p: ComplexPoly, k: int) -> ComplexPoly:
    """``p**k`` by repeated squaring; ``p**0`` is 1 even for the zero polynomial."""
    if k < 0:
        raise ValueError("negative exponent")
    result = ComplexPoly([1.0])
    base = p
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def poly_eval(p: ComplexPoly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for c in p.coeffs[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def poly_derivative(p: ComplexPoly) -> ComplexPoly:
    if p.degree() < 1:
        return ComplexPoly()
    return ComplexPoly(p.coeffs[1:] * np.arange(1, len(p.coeffs)))


@dataclass(frozen=True)
class NCoeffPoly:
    """Polynomial in the index n with polynomial-in-x coefficients.

    ``n_coeffs[j]`` multiplies ``n**j``. Canonical instances have a nonzero
    leading entry; :meth:`canonical` trims zero leading entries.
    """

    n_coeffs: tuple[ComplexPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "n_coeffs", tuple(_as_poly(p) for p in self.n_coeffs))

    @classmethod
    def constant(cls, p: ComplexPoly) -> "NCoeffPoly":
        return cls((p,))

    def canonical(self) -> "NCoeffPoly":
        c = list(self.n_coeffs)
        while c and c[-1].is_zero():
            c.pop()
        return NCoeffPoly(tuple(c))

    def degree_n(self) -> int:
        return len(self.n_coeffs) - 1

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.n_coeffs)

    @property
    def leading(self) -> ComplexPoly:
        """Coefficient of the highest power of n (zero poly if empty)."""
        return self.n_coeffs[-1] if self.n_coeffs else ComplexPoly()

    def at_index(self, n: int) -> ComplexPoly:
        """The x-polynomial obtained by fixing the index."""
        return poly_sum(p * float(n) ** j for j, p in enumerate(self.n_coeffs))

    def __call__(self, n: int, z):
        return ncoeff_eval(self, n, z)

    def __add__(self, other: "NCoeffPoly") -> "NCoeffPoly":
        a, b = list(self.n_coeffs), list(other.n_coeffs)
        m = max(len(a), len(b))
        a += [ComplexPoly()] * (m - len(a))
        b += [ComplexPoly()] * (m - len(b))
        return NCoeffPoly(tuple(p + q for p, q in zip(a, b)))


def ncoeff_eval(a: NCoeffPoly, n: int, z):
    if n < 0:
        raise ValueError("index must be nonnegative")
    z = np.asarray(z, dtype=np.complex128)
    acc = np.zeros_like(z)
    for p in a.n_coeffs[::-1]:
        acc = acc * n + poly_eval(p, z)
    return acc[()] if acc.ndim == 0 else acc


@dataclass(frozen=True)
class ExpTerm:
    alpha: NCoeffPoly
    lam: ComplexPoly

    def __post_init__(self):
        if self.lam.is_zero():
            raise ValueError("lambda must be a nonzero polynomial")


@dataclass(frozen=True)
class ExpSumFamily:
    """Ordered exponential-sum terms evaluated at ``N = n + index_offset``.

    Terms sharing an identical lambda are merged and every alpha is put in
    canonical form unless the family is built with :meth:`raw`.
    """

    name: str
    terms: tuple[ExpTerm, ...]
    index_offset: int = 0
    merged: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a family needs at least one term")
        if self.merged:
            terms = _merge_terms(terms)
        object.__setattr__(self, "terms", terms)

    @classmethod
    def raw(cls, name: str, terms: Sequence[ExpTerm], index_offset: int = 0) -> "ExpSumFamily":
        """Build without merging or trimming (for validating unchecked input)."""
        return cls(name, tuple(terms), index_offset, merged=False)

    @property
    def lambdas(self) -> list[ComplexPoly]:
        return [t.lam for t in self.terms]

    @property
    def alphas(self) -> list[NCoeffPoly]:
        return [t.alpha for t in self.terms]

    def effective_index(self, n: int) -> int:
        return n + self.index_offset

    def __len__(self) -> int:
        return len(self.terms)


def _merge_terms(terms: Sequence[ExpTerm]) -> tuple[ExpTerm, ...]:
    out: list[ExpTerm] = []
    for t in terms:
        for k, u in enumerate(out):
            if u.lam == t.lam:
                out[k] = ExpTerm(u.alpha + t.alpha, u.lam)
                break
        else:
            out.append(t)
    merged = [ExpTerm(t.alpha.canonical(), t.lam) for t in out]
    merged = [t for t in merged if not t.alpha.is_zero()]
    if not merged:
        raise ValueError("all terms cancel")
    return tuple(merged)


def expand_at_index(F: ExpSumFamily, n: int) -> ComplexPoly:
    """Dense expansion of P_n."""
    N = F.effective_index(n)
    if N < 0:
        raise ValueError(f"effective index {N} is negative (n={n}, offset={F.index_offset})")
    parts = [poly_mul(t.alpha.at_index(N), poly_pow(t.lam, N)) for t in F.terms]
    return poly_sum(parts)


def eval_family(F: ExpSumFamily, n: int, z):
    """Pointwise value of P_n(z) without expansion."""
    N = F.effective_index(n)
    if N < 0:
        raise ValueError("negative effective index")
    z = np.asarray(z, dtype=np.complex128)
    total = sum(ncoeff_eval(t.alpha, N, z) * poly_eval(t.lam, z) ** N for t in F.terms)
    return total


# -- JSON -------------------------------------------------------------------

def _pairs(p: ComplexPoly) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in p.coeffs]


def _unpairs(pairs) -> ComplexPoly:
    return ComplexPoly([complex(re, im) for re, im in pairs])


def family_to_dict(F: ExpSumFamily) -> dict:
    return {
        "name": F.name,
        "index_offset": F.index_offset,
        "terms": [
            {"alpha": [_pairs(p) for p in t.alpha.n_coeffs], "lambda": _pairs(t.lam)}
            for t in F.terms
        ],
    }


def family_from_dict(d: dict) -> ExpSumFamily:
    try:
        terms = [
            ExpTerm(NCoeffPoly(tuple(_unpairs(p) for p in t["alpha"])), _unpairs(t["lambda"]))
            for t in d["terms"]
        ]
        return ExpSumFamily(str(d.get("name", "family")), tuple(terms), int(d.get("index_offset", 0)))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed family JSON: {exc}") from exc


def load_family(path: str | Path) -> ExpSumFamily:
    return family_from_dict(json.loads(Path(path).read_text()))


def dump_family(F: ExpSumFamily, path: str | Path) -> None:
    Path(path).write_text(json.dumps(family_to_dict(F), indent=2))
