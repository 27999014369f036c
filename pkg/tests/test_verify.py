import numpy as np
import pytest

from bkwzeros.families import BUILTIN
from bkwzeros.limitset import Curve, LimitSet, Window, limit_set
from bkwzeros.poly_core import ComplexPoly, ExpSumFamily, ExpTerm, NCoeffPoly
from bkwzeros.rootfind import family_roots
from bkwzeros.verify import (
    CONVERSE_MAX,
    COVERAGE_MAX,
    TREND_MAX,
    convergence_report,
    converse_residual,
    distance_to_limit_set,
    distance_to_polyline,
)

TWO_TERM = sorted(k for k in BUILTIN if len(BUILTIN[k]().family.terms) == 2)


def fam(name):
    return BUILTIN[name]().family


def test_polyline_distance():
    line = np.array([0, 1, 1 + 1j])
    d = distance_to_polyline(np.array([0.5 + 0.5j, 2 + 0.5j, -1]), line)
    assert np.allclose(d, [0.5, 1, 1])
    assert distance_to_polyline(np.array([3 + 4j]), np.array([0j]))[0] == 5


def test_limit_set_distance_uses_points_and_curves():
    L = LimitSet(isolated=[(2 + 0j, 0)], curves=[Curve((0, 1), np.array([0, 1j]))])
    assert np.allclose(distance_to_limit_set([2.1, 0.5j, -1], L), [0.1, 0, 1])


def test_independence_distance_matches_explicit_formula():
    rep = convergence_report(fam("independence"), 40, 40)
    assert abs(rep.final_max_dist - abs((39 / 40) ** (1 / 40) - 1)) < 1e-5
    assert len(rep.per_n) == 1 and rep.trend == 1.0


def test_steele_trend_below_one():
    assert convergence_report(fam("steele_cycle"), 3, 40).trend < 1


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_trend(name):
    assert convergence_report(fam(name), 10, 40).trend < TREND_MAX


@pytest.mark.parametrize("name", ["independence", "steele_cycle"])
def test_coverage(name):
    assert convergence_report(fam(name), 10, 40).worst_coverage < COVERAGE_MAX


@pytest.mark.parametrize("name", TWO_TERM)
def test_converse_at_roots(name):
    # red for g: its zeros of P_40 sit <1e-27 from zeros of alpha_2, closer
    # than any double-precision point, so |alpha_2|^(1/40) cannot be resolved
    F = fam(name)
    rs = family_roots(F, 40, 40)[0]
    worst = max(converse_residual(F, z, 40) for z in rs.roots)
    assert worst < CONVERSE_MAX, worst


def test_converse_examples():
    F = fam("steele_cycle")
    assert converse_residual(F, 1.5, 40) > 0.2
    one = NCoeffPoly.constant(ComplexPoly([1]))
    lam = ComplexPoly([0.3, 1])
    sym = ExpSumFamily.raw("sym", [ExpTerm(one, lam), ExpTerm(one, lam)])
    assert converse_residual(sym, 0.7 + 0.2j, 1) == 0


def test_converse_rejects_bad_input():
    with pytest.raises(ValueError):
        converse_residual(fam("domination"), 0.5, 10)
    with pytest.raises(ValueError):
        converse_residual(fam("screl"), 0.5, 1)


def test_window_is_enlarged_when_roots_escape():
    L = limit_set(fam("f"), Window(-1.5, 1.5, -1.5, 1.5, 128))
    rep = convergence_report(fam("f"), 10, 12, L)
    # the root near 2 must be measured against the isolated point, not the circle
    assert rep.final_max_dist < 0.5


def test_report_dict():
    d = convergence_report(fam("independence"), 5, 7).to_dict()
    assert [e["n"] for e in d["per_n"]] == [5, 6, 7]
    assert set(d) >= {"family", "trend", "worst_coverage"}
