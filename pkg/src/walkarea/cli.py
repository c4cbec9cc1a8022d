"""Command-line front end: ``walkarea count | verify | trace``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import oracle, spectral
from .core import AreaDistribution, FluxRational, UmklappRegime
from .oracle import LatticeKind
from .verify import ORACLE_BUDGET, first_failure, formula_counts, run_verification

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# common prefactor of the trace expansions (coordination number)
TRACE_PREFACTOR = {LatticeKind.SQUARE: 4, LatticeKind.HONEYCOMB: 3}


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    lattice: str
    steps: int
    method: str
    counts: dict[int, int] = field(default_factory=dict)
    total: int = 0
    runtime_ms: int = 0

    def __post_init__(self):
        if sum(self.counts.values()) != self.total:
            raise ValueError("counts do not add up to total")

    @classmethod
    def from_distribution(cls, dist: AreaDistribution, lattice: str, method: str, runtime_ms: int):
        return cls(lattice, dist.steps, method, dict(dist.counts), dist.total, runtime_ms)

    def to_json(self) -> str:
        return json.dumps({
            "lattice": self.lattice,
            "steps": self.steps,
            "method": self.method,
            "counts": {str(a): str(c) for a, c in sorted(self.counts.items())},
            "total": str(self.total),
            "runtime_ms": self.runtime_ms,
        })

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        raw = json.loads(text)
        return cls(
            raw["lattice"], int(raw["steps"]), raw["method"],
            {int(a): int(c) for a, c in raw["counts"].items()},
            int(raw["total"]), int(raw.get("runtime_ms", 0)),
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["area", "count"])
        for area, count in sorted(self.counts.items()):
            writer.writerow([area, count])
        return buf.getvalue()

    def to_pretty(self, combined: bool = False) -> str:
        head = f"{self.lattice} walks, {self.steps} steps ({self.method}, {self.runtime_ms} ms)"
        if combined:
            rows = AreaDistribution(self.steps, self.counts).combined()
            body = [f"  {'0' if a == 0 else f'+-{a}':>5}  {c}" for a, c in sorted(rows.items())]
        else:
            body = [f"  {a:>5}  {c}" for a, c in sorted(self.counts.items())]
        return "\n".join([head, *body, f"  total  {self.total}"])


def count_distribution(lattice: LatticeKind, steps: int, method: str, budget: int | None):
    if method == "formula":
        return formula_counts(lattice, steps)
    if method == "oracle":
        limit = ORACLE_BUDGET[lattice] if budget is None else budget
        if steps > limit:
            raise UsageError(
                f"oracle budget is {limit} steps for {lattice.value}; use --budget-override"
            )
        return oracle.enumerate_closed_walks(lattice, steps)
    if method == "spectral":
        return spectral.reconstruct_area_distribution(lattice, steps)
    raise UsageError(f"unknown method {method}")


def cmd_count(args) -> int:
    lattice = LatticeKind.parse(args.lattice)
    if args.steps < 2 or args.steps % 2:
        raise UsageError("steps must be even and >= 2")
    start = time.perf_counter()
    dist = count_distribution(lattice, args.steps, args.method, args.budget_override)
    elapsed = int(round(1000 * (time.perf_counter() - start)))
    record = OutputRecord.from_distribution(dist, lattice.value, args.method, elapsed)
    if args.format == "json":
        print(record.to_json())
    elif args.format == "csv":
        print(record.to_csv(), end="")
    else:
        print(record.to_pretty(args.combined))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_steps < 2:
        raise UsageError("--max-steps must be >= 2")
    lattices = [args.lattice] if args.lattice else ["square", "honeycomb"]
    results = run_verification(args.max_steps, lattices, args.budget_override)
    for result in results:
        print(result.line())
    failed = first_failure(results)
    if failed is not None:
        print(f"FAILED: first failing check: {failed.name}", file=sys.stderr)
        return EXIT_FAIL
    print(f"all {sum(not r.skipped for r in results)} checks passed")
    return EXIT_OK


def _cos_term(area: int, p: int, q: int) -> str:
    num, den = 2 * area * p, q
    g = math.gcd(num, den)
    num, den = num // g, den // g
    arg = ("" if num == 1 else str(num)) + "π" + ("" if den == 1 else f"/{den}")
    return f"cos({arg})"


def trace_expansion(lattice: LatticeKind, dist: AreaDistribution, p: int, q: int) -> str:
    """Cosine expansion C(0) + sum_A (C(A) + C(-A)) cos(2 pi A p/q), with the
    coordination number pulled out when it divides every coefficient."""
    rows = dist.combined()
    factor = TRACE_PREFACTOR[lattice]
    if any(c % factor for c in rows.values()):
        factor = 1
    terms = []
    for area, c in sorted(rows.items()):
        c //= factor
        terms.append(str(c) if area == 0 else f"{c}{_cos_term(area, p, q)}")
    inner = "+".join(terms)
    return inner if factor == 1 else f"{factor}({inner})"


def cmd_trace(args) -> int:
    lattice = LatticeKind.parse(args.lattice)
    if args.power < 1:
        raise UsageError("--power must be positive")
    try:
        flux = FluxRational(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    steps = 2 * args.power
    try:
        value = spectral.lattice_trace(lattice, flux, steps)
    except UmklappRegime as exc:
        raise UsageError(f"umklapp regime refused: {exc}") from None
    print(f"(1/q) tr = {value:.12f}")
    dist = spectral.reconstruct_area_distribution(lattice, steps)
    expansion = trace_expansion(lattice, dist, flux.p, flux.q)
    exact = sum(c * math.cos(2 * math.pi * a * flux.p / flux.q) for a, c in dist.combined().items())
    print(f"       = {expansion}")
    if abs(exact - value) > spectral.TRACE_TOL * max(1.0, abs(value)):
        print(f"expansion disagrees with trace: {exact} vs {value}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse already exits 2; keep it explicit
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="walkarea", description="Closed lattice walks counted by algebraic area.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    lattices = [k.value for k in LatticeKind]

    count = sub.add_parser("count", help="area distribution of closed walks")
    count.add_argument("--lattice", choices=lattices, required=True)
    count.add_argument("--steps", type=int, required=True)
    count.add_argument("--method", choices=["formula", "oracle", "spectral"], default="formula")
    count.add_argument("--format", choices=["pretty", "json", "csv"], default="pretty")
    count.add_argument("--paper-style", dest="combined", action="store_true",
                       help="combine +A and -A rows as in the published tables")
    count.add_argument("--budget-override", type=int, default=None,
                       help="largest step count the oracle will attempt")
    count.set_defaults(func=cmd_count)

    verify = sub.add_parser("verify", help="cross-check all routes and identities")
    verify.add_argument("--max-steps", type=int, required=True)
    verify.add_argument("--lattice", choices=lattices, default=None)
    verify.add_argument("--budget-override", type=int, default=None)
    verify.set_defaults(func=cmd_verify)

    trace = sub.add_parser("trace", help="normalized trace at flux p/q and its cosine expansion")
    trace.add_argument("--lattice", choices=lattices, required=True)
    trace.add_argument("--q", type=int, required=True)
    trace.add_argument("--p", type=int, required=True)
    trace.add_argument("--power", type=int, required=True,
                       help="n, for walks of 2n steps")
    trace.set_defaults(func=cmd_trace)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"walkarea: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
