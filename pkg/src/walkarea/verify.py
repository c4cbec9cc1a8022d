"""Cross-method verification used by ``walkarea verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import combinatorics, oracle, partition, spectral
from .core import FluxRational, cyclotomic_reduce, next_prime
from .oracle import LatticeKind

# default oracle budgets (steps)
ORACLE_BUDGET = {LatticeKind.SQUARE: 12, LatticeKind.HONEYCOMB: 16}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    skipped: bool = False

    def line(self) -> str:
        status = "SKIP" if self.skipped else ("PASS" if self.passed else "FAIL")
        return f"[{status}] {self.name}" + (f"  ({self.detail})" if self.detail else "")


def formula_counts(lattice: LatticeKind | str, steps: int):
    lattice = LatticeKind.parse(lattice)
    if lattice is LatticeKind.SQUARE:
        return combinatorics.area_counts_square(steps)
    return combinatorics.area_counts_honeycomb(steps)


def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed check, not an aborted run
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def _equivalence_checks(
    lattice: LatticeKind, max_steps: int, budget: int
) -> Iterable[CheckResult]:
    for steps in range(2, max_steps + 1, 2):
        formula = formula_counts(lattice, steps)
        recon = spectral.reconstruct_area_distribution(lattice, steps)
        yield _check(
            f"{lattice.value} steps={steps}: formula = spectral",
            lambda: (formula == recon, f"total {formula.total}"),
        )
        if steps > budget:
            yield CheckResult(
                f"{lattice.value} steps={steps}: oracle = formula", True,
                f"oracle budget {budget} exceeded", skipped=True,
            )
            continue
        walks = oracle.enumerate_closed_walks(lattice, steps)
        yield _check(
            f"{lattice.value} steps={steps}: oracle = formula",
            lambda: (walks == formula, f"max |A| {walks.max_area}"),
        )
        yield _check(
            f"{lattice.value} steps={steps}: area bound",
            lambda: (
                walks.max_area == oracle.max_area_bound(lattice, steps) and walks.is_symmetric(),
                f"max |A| {walks.max_area}",
            ),
        )


def _trace_bridge(lattice: LatticeKind, n: int) -> tuple[bool, str]:
    steps = 2 * n
    q = next_prime(steps)
    if lattice is LatticeKind.SQUARE:
        series = partition.zn_square_recursive(q)
        factor = 2 * n
    else:
        series = partition.zn_honeycomb_recursive(q)
        factor = n
    b = partition.cluster_coefficients(series, n)[n]
    sign = 1 if n % 2 else -1
    predicted = b * (sign * factor) / q
    exact = cyclotomic_reduce(predicted, q) == cyclotomic_reduce(
        formula_counts(lattice, steps).as_laurent(), q
    )
    worst = 0.0
    for p in range(1, q):
        flux = FluxRational(p, q)
        numeric = spectral.lattice_trace(lattice, flux, steps)
        worst = max(worst, abs(predicted.at_flux(flux) - numeric) / max(1.0, abs(numeric)))
    return exact and worst < spectral.TRACE_TOL, f"q={q}, rel err {worst:.1e}"


def _algebra(seed: int = 0, samples: int = 20) -> tuple[bool, str]:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        q = rng.randint(1, 15)
        p = rng.choice([p for p in range(q) if np.gcd(p, q) == 1] or [0])
        k = spectral.QuasiMomenta(rng.uniform(0, 2 * np.pi), rng.uniform(0, 2 * np.pi))
        flux = FluxRational(p, q)
        worst = max(worst, *spectral.honeycomb_defects(flux, k).values(),
                    *spectral.torus_defects(flux, k).values())
    return worst < spectral.ALGEBRA_TOL, f"max defect {worst:.1e}"


def run_verification(
    max_steps: int,
    lattices: Iterable[LatticeKind | str] = (LatticeKind.SQUARE, LatticeKind.HONEYCOMB),
    budget_override: int | None = None,
) -> list[CheckResult]:
    """Run every equivalence and identity up to `max_steps`; returns per-check results."""
    if max_steps < 2:
        raise ValueError("max_steps must be >= 2")
    max_steps -= max_steps % 2
    results: list[CheckResult] = []
    kinds = [LatticeKind.parse(x) for x in lattices]
    for lattice in kinds:
        budget = ORACLE_BUDGET[lattice] if budget_override is None else budget_override
        results.extend(_equivalence_checks(lattice, max_steps, budget))
        for n in range(1, max_steps // 2 + 1):
            results.append(_check(f"{lattice.value} trace bridge n={n}",
                                  lambda n=n, lattice=lattice: _trace_bridge(lattice, n)))
    for n in range(1, max_steps // 2 + 1):
        for rule in combinatorics.sum_rules(n):
            if any(k.value in rule.name for k in kinds) or "c_n" in rule.name:
                results.append(CheckResult(rule.name, rule.passed, f"{rule.lhs} vs {rule.rhs}"))
    if LatticeKind.SQUARE in kinds:
        for q in range(1, 11):
            results.append(_check(
                f"square Z(n): recursion = nested sum [q={q}]",
                lambda q=q: (all(
                    partition.zn_square_recursive(q, "levels")[n]
                    == partition.zn_square_nested(q, n, "levels")
                    for n in range(q // 2 + 1)
                ), ""),
            ))
    if LatticeKind.HONEYCOMB in kinds:
        for q in range(1, 9):
            results.append(_check(
                f"honeycomb Z(n): recursion = diluted exclusion [q={q}]",
                lambda q=q: (partition.zn_honeycomb_recursive(q, "levels")
                             == partition.zn_diluted(q, "levels"), ""),
            ))
        results.append(_check("honeycomb algebra relations", _algebra))
    return results


def first_failure(results: list[CheckResult]) -> CheckResult | None:
    return next((r for r in results if not r.passed and not r.skipped), None)
