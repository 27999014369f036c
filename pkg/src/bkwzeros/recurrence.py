"""Fixed-order linear recurrences with polynomial coefficients.

Convention: ``P_{n+k} = -sum_{i=1..k} f_i(x) P_{n+k-i}``, so the
characteristic polynomial is ``y**k + f_1 y**(k-1) + ... + f_k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly_core import ComplexPoly, ExpSumFamily, expand_at_index, poly_mul, poly_sum


@dataclass(frozen=True)
class Recurrence:
    f: tuple[ComplexPoly, ...]
    initials: tuple[ComplexPoly, ...]

    def __post_init__(self):
        if not self.f:
            raise ValueError("order must be at least 1")
        if len(self.initials) != len(self.f):
            raise ValueError("need exactly k initial values")
        if self.f[-1].is_zero():
            raise ValueError("f_k is zero; a lower-order recurrence exists")

    @property
    def order(self) -> int:
        return len(self.f)


@dataclass
class MinimalityReport:
    duplicate_lambdas: list[tuple[int, int]] = field(default_factory=list)
    zero_leading: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.duplicate_lambdas and not self.zero_leading


def _ymul(a: list[ComplexPoly], b: list[ComplexPoly]) -> list[ComplexPoly]:
    """Product of polynomials in y whose coefficients are ComplexPoly."""
    out: list[list[ComplexPoly]] = [[] for _ in range(len(a) + len(b) - 1)]
    for i, p in enumerate(a):
        for j, q in enumerate(b):
            out[i + j].append(poly_mul(p, q))
    return [poly_sum(ps) for ps in out]


def characteristic_poly(F: ExpSumFamily) -> list[ComplexPoly]:
    """Coefficients in y (ascending) of prod_i (y - lambda_i)^(deg_n alpha_i + 1)."""
    char = [ComplexPoly([1.0])]
    for t in F.terms:
        factor = [-t.lam, ComplexPoly([1.0])]
        for _ in range(t.alpha.degree_n() + 1):
            char = _ymul(char, factor)
    return char


def to_recurrence(F: ExpSumFamily) -> Recurrence:
    char = characteristic_poly(F)
    k = len(char) - 1
    f = tuple(char[k - i] for i in range(1, k + 1))
    initials = tuple(expand_at_index(F, n) for n in range(1, k + 1))
    return Recurrence(f, initials)


def generate_sequence(R: Recurrence, n_max: int) -> list[ComplexPoly]:
    """P_1 .. P_{n_max}."""
    k = R.order
    if n_max < k:
        raise ValueError(f"n_max={n_max} is smaller than the order {k}")
    seq = list(R.initials)
    while len(seq) < n_max:
        seq.append(-poly_sum(poly_mul(R.f[i - 1], seq[-i]) for i in range(1, k + 1)))
    return seq


def minimality_check(F: ExpSumFamily) -> MinimalityReport:
    rep = MinimalityReport()
    lams = F.lambdas
    for i in range(len(lams)):
        for j in range(i + 1, len(lams)):
            if lams[i] == lams[j]:
                rep.duplicate_lambdas.append((i, j))
    for i, t in enumerate(F.terms):
        if t.alpha.leading.is_zero():
            rep.zero_leading.append(i)
    return rep
