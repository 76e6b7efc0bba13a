"""Acceptance gate: one test per criterion, each with its time budget.

Every test prints a single ``criterion N: PASS|FAIL`` line; the lines are
also repeated in the terminal summary (see conftest.py).
"""

import time
from contextlib import contextmanager

import pytest

from orthinv import report
from orthinv.checks import (
    check_bproduct_relation,
    check_bproduct_span,
    check_certify,
    check_f_construct,
    check_gh_identity,
    check_image,
    check_invariance_of,
    check_lemma_audit,
    check_multiplicity_s,
    check_multiplicity_xy,
    check_pf_squared_det,
    check_pfaffian_checkerboard,
    check_pfaffian_doubled,
    check_pfaffian_family,
    check_shuffle_family,
    check_vanishing,
)
from orthinv.constructions import FamilySpec, construct
from orthinv.polynomial import parse, serialize
from orthinv.ring import GF2, ZZ

RESULTS: list[str] = []


@contextmanager
def criterion(number: int, title: str, budget: float):
    """Run the body, enforce the wall-clock budget, and record a result line."""
    failures: list[str] = []
    start = time.perf_counter()
    try:
        yield failures
    except Exception as exc:
        failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    if elapsed >= budget:
        failures.append(f"took {elapsed:.1f}s, budget {budget:.0f}s")
    status = "FAIL" if failures else "PASS"
    line = f"criterion {number:2d}: {status}  {title}  ({elapsed:.2f}s / {budget:.0f}s)"
    RESULTS.append(line)
    print(line)
    for f in failures:
        print(f"    {f}")
    if failures:
        pytest.fail("; ".join(failures), pytrace=False)


def expect(failures, label, result):
    if not result.ok:
        failures.append(f"{label}: expected {result.expected}, observed {result.observed}")


def test_criterion_01_pfaffian_family():
    with criterion(1, "Pfaffian family divides exactly and matches its closed form", 60) as failures:
        for n, m in report.G_GRID:
            expect(failures, f"g {n}x{m}", check_pfaffian_family(n, m))


def test_criterion_02_shuffle_family():
    with criterion(2, "shuffle-sum family divides exactly and matches its closed form", 120) as failures:
        for n, m in report.H_GRID:
            expect(failures, f"h {n}x{m}", check_shuffle_family(n, m))


def test_criterion_03_g_equals_h():
    with criterion(3, "g = h for even n <= m", 10) as failures:
        for n, m in report.F_GRID:
            expect(failures, f"{n}x{m}", check_gh_identity(n, m))


def test_criterion_04_f_construction():
    with criterion(4, "half-difference family divides and has the expected support", 30) as failures:
        expect(failures, "f 4x4", check_f_construct(4, 4, terms=16))
        expect(failures, "f 4x6", check_f_construct(4, 6))


def test_criterion_05_invariance():
    with criterion(5, "symbolic invariance over char 2 and char 0", 120) as failures:
        cases = [("g", "tilde-g", n, m, "O") for n, m in report.G_GRID]
        cases += [("h", "tilde-h", n, m, "SO") for n, m in report.H_GRID]
        cases += [("f", "tilde-f", n, m, "SO") for n, m in report.F_GRID]
        for mod2, integer, n, m, group in cases:
            expect(failures, f"{mod2} {n}x{m}", check_invariance_of(mod2, n, m, group, "two"))
            expect(failures, f"{integer} {n}x{m}", check_invariance_of(integer, n, m, group, "zero"))
        expect(failures, "tilde-h 3x3 reflection",
               check_invariance_of("tilde-h", 3, 3, "O", "zero", expect={"reflection-x1y1": "anti-invariant"}))


def test_criterion_06_pfaffian_identities():
    with criterion(6, "Pfaffian identities", 10) as failures:
        for mu in (1, 2, 3):
            expect(failures, f"checkerboard mu={mu}", check_pfaffian_checkerboard(mu))
            expect(failures, f"doubled mu={mu}", check_pfaffian_doubled(mu))
        for size in (2, 4, 6):
            for seed in range(3):
                expect(failures, f"Pf^2=det size={size} seed={seed}", check_pf_squared_det(size, seed))


def test_criterion_07_multiplicities():
    with criterion(7, "multiplicity in x,y and in s", 30) as failures:
        for family, n, m in [("h", 3, 3), ("g", 3, 4), ("h", 3, 5), ("h", 5, 5)]:
            expect(failures, f"xy {family} {n}x{m}", check_multiplicity_xy(family, n, m))
        for n, m in [(2, 4), (2, 6), (4, 6)]:
            expect(failures, f"s g {n}x{m}", check_multiplicity_s(n, m))


def test_criterion_08_lemma_audits():
    with criterion(8, "multiplicity lower bounds on every invariant basis element", 300) as failures:
        cases = [(3, m, "SO") for m in range(1, 6)]
        cases += [(2, m, "O") for m in range(1, 9)]
        cases += [(4, m, "O") for m in range(1, 7)]
        for n, m, group in cases:
            expect(failures, f"audit n={n} m={m}", check_lemma_audit(n, m, group))


def test_criterion_09_certificates():
    with criterion(9, "indecomposability certificates", 600) as failures:
        for family, n, m in report.CERTIFY_GRID:
            dim = 2 if (family, n, m) == ("g", 2, 4) else None
            expect(failures, f"{family} {n}x{m}", check_certify(family, n, m, dim_decomposable=dim))
        expect(failures, "three-term relation", check_bproduct_relation(2, 4))


def test_criterion_10_vanishing_and_spans():
    with criterion(10, "vanishing spaces and bilinear-product spans", 120) as failures:
        for n, m in [(4, 3), (2, 3), (2, 1), (3, 1), (4, 1), (5, 1)]:
            expect(failures, f"vanish n={n} m={m}", check_vanishing(n, m, "SO"))
        for n, m in [(4, 2), (4, 4), (5, 2), (5, 4)]:
            expect(failures, f"span n={n} m={m}", check_bproduct_span(n, m))


def test_criterion_11_substitution_image():
    with criterion(11, "top-pair substitution sends f to g", 10) as failures:
        for n, m in report.F_GRID:
            expect(failures, f"f {n}x{m}", check_image(n, m))


def _grid_polynomials():
    names = [("g", n, m) for n, m in report.G_GRID]
    names += [("h", n, m) for n, m in report.H_GRID]
    names += [("f", n, m) for n, m in report.F_GRID]
    for base, n, m in names:
        for name in (base, f"tilde-{base}"):
            spec = FamilySpec.from_name(name, n, m)
            yield str(spec), construct(spec), GF2 if spec.lift == "mod2" else ZZ


def test_criterion_12_serialization():
    with criterion(12, "text round trip and manifest determinism", 30) as failures:
        for label, p, ring in _grid_polynomials():
            text = serialize(p)
            back = parse(text, ring)
            if back != p or serialize(back) != text:
                failures.append(f"round trip differs for {label}")
        grid = report.default_grid()
        first = report.body_text(report.run_grid(grid))
        second = report.body_text(report.run_grid(grid))
        if first != second:
            failures.append("manifest bodies differ between two runs")
