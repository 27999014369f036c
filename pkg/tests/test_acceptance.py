"""Acceptance criteria 1-10, one test (and one PASS/FAIL line) each."""

import json
import time
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from bkwzeros.cli import main
from bkwzeros.families import BUILTIN, FIGURE_CONFIGS
from bkwzeros.graphpoly import (
    Multigraph,
    complete_graph,
    cycle_graph,
    mean_mst_length,
    path_graph,
    steele,
    theta_graph,
    tutte,
    tutte_oracle,
)
from bkwzeros.limitset import Window, isolated_limit_points, limit_set, persistent_zeros
from bkwzeros.poly_core import ComplexPoly, expand_at_index
from bkwzeros.recurrence import generate_sequence, to_recurrence
from bkwzeros.rootfind import family_roots, winding_count
from bkwzeros.verify import CONVERSE_MAX, TREND_MAX, convergence_report, converse_residual

from conftest import rel_coeff_error

SVG_NS = "{http://www.w3.org/2000/svg}"


@pytest.fixture
def verdict(capsys):
    def report(label: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        assert ok, detail
    return report


def fam(name):
    return BUILTIN[name]().family


def test_criterion_01_steele_cycles(verdict):
    start = time.perf_counter()
    bad = []
    for n in range(3, 9):
        expect = [Fraction(0)] * (n + 1)
        expect[0], expect[1], expect[n] = Fraction(n - 1), Fraction(-n), Fraction(1)
        if steele(cycle_graph(n)).coeffs != tuple(expect):
            bad.append(n)
    elapsed = time.perf_counter() - start
    verdict("1 Steele pipeline exactness", not bad and elapsed < 10,
            f"mismatches {bad}, {elapsed:.2f}s")


def test_criterion_02_tutte_oracle(verdict):
    trees = [path_graph(m) for m in range(1, 7)] + [
        Multigraph(5, ((0, 1), (0, 2), (0, 3), (3, 4))),
        Multigraph(7, ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6))),
    ]
    corpus = ([cycle_graph(n) for n in range(3, 7)] + [complete_graph(4)] + trees
              + [theta_graph(1, 2, 3), theta_graph(2, 2, 2),
                 Multigraph(3, ((0, 1), (0, 1), (1, 2), (2, 0), (1, 1)))])
    start = time.perf_counter()
    bad = [G for G in corpus if tutte(G) != tutte_oracle(G)]
    elapsed = time.perf_counter() - start
    verdict("2 Tutte oracle equivalence", not bad and elapsed < 30,
            f"{len(corpus)} graphs, {len(bad)} mismatches, {elapsed:.2f}s")


def test_criterion_03_recurrence_round_trip(verdict, capsys):
    worst = 0.0
    for name in BUILTIN:
        F = fam(name)
        for n, p in enumerate(generate_sequence(to_recurrence(F), 25), start=1):
            worst = max(worst, rel_coeff_error(p, expand_at_index(F, n)))
    code = main(["recur", "--family", "steele_cycle"])
    out = json.loads(capsys.readouterr().out)
    # displayed form: P_n = (t+2)P_{n-1} - (2t+1)P_{n-2} + t P_{n-3}
    displayed = [[[-2, 0], [-1, 0]], [[1, 0], [2, 0]], [[0, 0], [-1, 0]]]
    ok = worst < 1e-9 and code == 0 and out["order"] == 3 and out["f"] == displayed
    verdict("3 Recurrence round-trip", ok, f"worst relative error {worst:.2e}, recur f={out['f']}")


def test_criterion_04_explicit_roots(verdict):
    worst = 0.0
    F = fam("independence")
    for n in (4, 10, 40):
        roots = family_roots(F, n, n)[0].roots
        expect = list(-1 + ((n - 1) / n) ** (1 / n) * np.exp(2j * np.pi * np.arange(n) / n))
        for z in roots:
            k = int(np.argmin([abs(z - w) for w in expect]))
            worst = max(worst, abs(z - expect.pop(k)))
    verdict("4 Explicit-root check", worst < 1e-8, f"max error {worst:.2e}")


def test_criterion_05_point_limits(verdict):
    def same(found, expected):
        found = sorted(found, key=lambda z: (z.real, z.imag))
        return len(found) == len(expected) and all(abs(a - b) < 1e-6 for a, b in zip(found, sorted(expected)))

    checks = {
        "f isolated {2}": same([z for z, _ in isolated_limit_points(fam("f"))], [2]),
        "g isolated {0,2}": same([z for z, _ in isolated_limit_points(fam("g"))], [0, 2]),
        "screl persistent {0}": same(persistent_zeros(fam("screl")), [0]),
        "steele none": same(list(limit_set(fam("steele_cycle")).point_set()), []),
        "independence none": same(list(limit_set(fam("independence")).point_set()), []),
    }
    verdict("5 Isolated/persistent points", all(checks.values()),
            ", ".join(f"{k}={'ok' if v else 'wrong'}" for k, v in checks.items()))


def test_criterion_06_curve_residuals(verdict):
    def circle(z):
        return np.abs(np.abs(z) - 1)

    def shifted(z):
        return np.abs(np.abs(1 + z) - 1)

    def domination(z):
        return np.minimum.reduce([shifted(z), circle(z), np.abs(np.abs(1 + z) ** 2 - np.abs(z))])

    loci = {"steele_cycle": circle, "f": circle, "g": circle, "screl": circle,
            "independence": shifted, "domination": domination}
    parts, ok = [], True
    for name, locus in loci.items():
        start = time.perf_counter()
        pts = limit_set(fam(name), Window(-3, 3, -3, 3, 512)).curve_points()
        elapsed = time.perf_counter() - start
        worst = float(locus(pts).max()) if len(pts) else np.inf
        ok &= worst < 1e-3 and elapsed < 60
        parts.append(f"{name} {worst:.1e} ({elapsed:.2f}s)")
    verdict("6 Curve residuals", ok, ", ".join(parts))


def test_criterion_07_convergence(verdict):
    # Red for f, g, steele_cycle, screl and domination: their zeros of P_40 are
    # ~log(n)/n from the limit curves, so the 0.1 bound is not reachable at n = 40.
    parts, ok = [], True
    for name in BUILTIN:
        rep = convergence_report(fam(name), 10, 40)
        d = rep.final_max_dist
        good = d < 0.1 and rep.trend < TREND_MAX
        if name == "independence":
            good &= d < 1e-3
        ok &= good
        parts.append(f"{name} max_dist={d:.4f} trend={rep.trend:.3f} {'ok' if good else 'FAIL'}")
    verdict("7 Convergence", ok, "; ".join(parts))


def test_criterion_07_note_converse_residual(verdict):
    # Red for g: see the note in test_verify.test_converse_at_roots.
    parts, ok = [], True
    for name in BUILTIN:
        F = fam(name)
        if len(F.terms) != 2:
            continue
        roots = family_roots(F, 40, 40)[0].roots
        worst = max(converse_residual(F, z, 40) for z in roots)
        ok &= worst < CONVERSE_MAX
        parts.append(f"{name} {worst:.2e}")
    verdict("7 (note) Converse residual at roots of P_40", ok, ", ".join(parts))


def test_criterion_08_winding(verdict):
    rng = np.random.default_rng(2024)
    wrong = 0
    for _ in range(100):
        d = int(rng.integers(1, 21))
        c = rng.uniform(-1, 1, d + 1) + 1j * rng.uniform(-1, 1, d + 1)
        p = ComplexPoly(c)
        radius = 1 + np.max(np.abs(c[:-1] / c[-1]))
        wrong += winding_count(p, 0, radius) != d
    near_two = winding_count(expand_at_index(fam("f"), 30), 2, 0.3)
    verdict("8 Winding-number certifier", wrong == 0 and near_two >= 1,
            f"{wrong}/100 miscounts, f_30 near 2 -> {near_two}")


def test_criterion_09_mst_means(verdict):
    checks = [mean_mst_length(path_graph(1)) == Fraction(1, 2),
              mean_mst_length(cycle_graph(3)) == Fraction(3, 4)]
    for m in range(1, 6):
        checks.append(mean_mst_length(path_graph(m)) == Fraction(m, 2))
        checks.append(mean_mst_length(Multigraph(m + 1, tuple((0, k) for k in range(1, m + 1)))) == Fraction(m, 2))
    verdict("9 MST means", all(checks), f"{sum(checks)}/{len(checks)} exact")


def test_criterion_10_figures(verdict, tmp_path, capsys):
    parts, ok = [], True
    for name, lo, hi in FIGURE_CONFIGS:
        out = tmp_path / f"{name}.svg"
        code = main(["plot", "--family", name, "--n", f"{lo}..{hi}", "-o", str(out)])
        capsys.readouterr()
        good = code == 0
        if good:
            groups = ET.parse(out).getroot().findall(f".//{SVG_NS}g[@class='zeros']")
            counts = {int(g.get("data-n")): int(g.get("data-count")) for g in groups}
            F = fam(name)
            good = sorted(counts) == list(range(lo, hi + 1)) and all(
                counts[n] == expand_at_index(F, n).degree() for n in counts)
        ok &= good
        parts.append(f"{name} {lo}..{hi} {'ok' if good else 'FAIL'}")
    verdict("10 Figure reproduction", ok, ", ".join(parts))
