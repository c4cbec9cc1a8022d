"""Acceptance criteria, one test each, at full stated scale and tolerance.

Each test prints a single PASS/FAIL line. Run directly for a summary:

    python3 tests/test_acceptance.py
"""

import math
import random
import sys
import time
from fractions import Fraction
from math import comb
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from reference_values import (  # noqa: E402
    HONEYCOMB_TABLE,
    HONEYCOMB_TOTALS,
    HONEYCOMB_TRACES,
    SQUARE_TABLE,
    SQUARE_TOTALS,
    SQUARE_TRACES,
    combined_column,
    cosine_value,
)
from walkarea import combinatorics as cb  # noqa: E402
from walkarea import spectral as sp  # noqa: E402
from walkarea.core import FluxRational, fibonacci, next_prime  # noqa: E402
from walkarea.oracle import LatticeKind, enumerate_closed_walks, max_area_bound  # noqa: E402
from walkarea.partition import (  # noqa: E402
    cluster_coefficients,
    zn_diluted,
    zn_honeycomb_recursive,
    zn_square_nested,
    zn_square_recursive,
)

SQ, HX = LatticeKind.SQUARE, LatticeKind.HONEYCOMB


def report(number, title, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}" + (f"  [{detail}]" if detail else ""))
    assert ok, f"criterion {number} failed: {detail}"


def test_criterion_1_honeycomb_table():
    start = time.perf_counter()
    bad = []
    for steps, column in HONEYCOMB_TABLE.items():
        dist = cb.area_counts_honeycomb(steps)
        if combined_column(dist) != column or dist.total != HONEYCOMB_TOTALS[steps]:
            bad.append(steps)
    elapsed = time.perf_counter() - start
    report(1, "honeycomb table, steps 2-14", not bad and elapsed < 5, f"{elapsed:.2f}s, mismatched {bad}")


def test_criterion_2_square_table():
    start = time.perf_counter()
    bad = []
    for steps, column in SQUARE_TABLE.items():
        dist = cb.area_counts_square(steps)
        if combined_column(dist) != column or dist.total != SQUARE_TOTALS[steps]:
            bad.append(steps)
    elapsed = time.perf_counter() - start
    report(2, "square table, steps 2-10", not bad and elapsed < 5, f"{elapsed:.2f}s, mismatched {bad}")


def test_criterion_3_three_way_equivalence():
    start = time.perf_counter()
    bad = []
    for lattice, top, formula in [(HX, 14, cb.area_counts_honeycomb), (SQ, 10, cb.area_counts_square)]:
        for steps in range(2, top + 1, 2):
            walks = enumerate_closed_walks(lattice, steps)
            if not (walks == formula(steps) == sp.reconstruct_area_distribution(lattice, steps)):
                bad.append((lattice.value, steps))
    elapsed = time.perf_counter() - start
    report(3, "oracle = formula = spectral", not bad and elapsed < 120, f"{elapsed:.2f}s, mismatched {bad}")


def test_criterion_4_trace_expressions():
    q = 13
    worst = 0.0
    for lattice, table, steps_of in [
        (HX, HONEYCOMB_TRACES, lambda power: 2 * power),
        (SQ, SQUARE_TRACES, lambda power: power),
    ]:
        for power, (pref, coeffs) in table.items():
            for p in range(1, 7):
                numeric = sp.lattice_trace(lattice, FluxRational(p, q), steps_of(power), sp.QuasiMomenta(0.37, 1.91))
                expected = cosine_value(pref, coeffs, p, q)
                worst = max(worst, abs(numeric - expected) / abs(expected))
    count = len(HONEYCOMB_TRACES) + len(SQUARE_TRACES)
    report(4, f"{count} trace expressions at q=13, p=1..6", worst < 1e-9 and count == 12, f"max rel err {worst:.1e}")


def test_criterion_5_honeycomb_algebra():
    rng = random.Random(20240601)
    worst_alg = worst_det = 0.0
    for _ in range(20):
        q = rng.randint(1, 15)
        p = rng.choice([p for p in range(q) if math.gcd(p, q) == 1])
        flux = FluxRational(p, q)
        k = sp.QuasiMomenta(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))
        worst_alg = max(worst_alg, *sp.honeycomb_defects(flux, k).values())
        big = sp.secular_coefficients(sp.honeycomb_hamiltonian(flux, k))
        spread = np.zeros_like(big)
        spread[::2] = sp.secular_coefficients(sp.honeycomb_reduced(flux, k))
        worst_det = max(worst_det, float(np.max(np.abs(big - spread)) / np.max(np.abs(spread))))
    report(5, "U^2=V^2=W^2=1, (UVW)^2=Q and secular halving", worst_alg < 1e-12 and worst_det < 1e-8,
           f"algebra {worst_alg:.1e}, determinant {worst_det:.1e}")


def test_criterion_6_exclusion_equivalences():
    ok_sq = all(
        zn_square_recursive(q, "levels")[n] == zn_square_nested(q, n, "levels")
        for q in range(1, 11)
        for n in range(q // 2 + 1)
    )
    ok_hx = all(zn_honeycomb_recursive(q, "levels") == zn_diluted(q, "levels") for q in range(1, 9))
    worst = 0.0
    for n in range(1, 7):
        q = next_prime(2 * n)
        sign = 1 if n % 2 else -1
        for lattice, series, factor in [
            (SQ, zn_square_recursive(q), 2 * n),
            (HX, zn_honeycomb_recursive(q), n),
        ]:
            b = cluster_coefficients(series, n)[n]
            for p in range(1, q):
                flux = FluxRational(p, q)
                predicted = sign * factor * b.at_flux(flux).real
                numeric = q * sp.lattice_trace(lattice, flux, 2 * n)
                worst = max(worst, abs(predicted - numeric) / max(1.0, abs(numeric)))
    report(6, "exclusion-statistics equivalences and trace bridge", ok_sq and ok_hx and worst < 1e-9,
           f"square {ok_sq}, honeycomb {ok_hx}, bridge rel err {worst:.1e}")


def test_criterion_7_sum_rules():
    failures = []
    for n in range(1, 13):
        if len(cb.honeycomb_compositions(n)) != fibonacci(n + 2):
            failures.append(f"F(n+2) n={n}")
    for n in range(1, 9):
        table = cb.coefficient_table_honeycomb(n)
        for sub in range(n + 1):
            part = sum((c for comp, c in table.entries.items() if comp.total == sub), Fraction(0))
            if n * part != comb(n, sub) ** 2:
                failures.append(f"C(n,n')^2 n={n} n'={sub}")
        if cb.coefficient_table_square(n).total() != Fraction(comb(2 * n, n), 2 * n):
            failures.append(f"sum c n={n}")
    for n in range(1, 11):
        single = sum(cb.cn_coeff(n, comp) for comp in cb.honeycomb_compositions(n) if len(comp) <= 1)
        if n * single != fibonacci(2 * n + 1) + fibonacci(2 * n - 1) - 1:
            failures.append(f"single-part Fibonacci n={n}")
        if cb.area_counts_square(2 * n).total != comb(2 * n, n) ** 2:
            failures.append(f"square total n={n}")
        if cb.area_counts_honeycomb(2 * n).total != sum(comb(n, k) ** 2 * comb(2 * k, k) for k in range(n + 1)):
            failures.append(f"honeycomb total n={n}")
    report(7, "sum rules and Fibonacci identities", not failures, ", ".join(failures[:5]))


def test_criterion_8_area_bound():
    bad = []
    for lattice, top in [(HX, 14), (SQ, 10)]:
        for steps in range(2, top + 1, 2):
            n = steps // 2
            bound = (n * n + 3) // 12 if lattice is HX else (n // 2) * math.ceil(n / 2)
            observed = enumerate_closed_walks(lattice, steps).max_area
            if observed != bound or bound != max_area_bound(lattice, steps):
                bad.append((lattice.value, steps, observed, bound))
    report(8, "maximal area bound", not bad, f"mismatched {bad}")


if __name__ == "__main__":
    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
