"""Wall-clock comparison of the enumeration, spectral and closed-form routes."""

import argparse
import time
from dataclasses import dataclass

from walkarea import combinatorics, oracle, spectral
from walkarea.oracle import LatticeKind


@dataclass
class BenchConfig:
    lattice: str = "honeycomb"
    max_steps: int = 20
    oracle_max: int = 18


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lattice", choices=[k.value for k in LatticeKind], default=BenchConfig.lattice)
    parser.add_argument("--max-steps", type=int, default=BenchConfig.max_steps)
    parser.add_argument("--oracle-max", type=int, default=BenchConfig.oracle_max)
    args = parser.parse_args()
    cfg = BenchConfig(args.lattice, args.max_steps, args.oracle_max)
    lattice = LatticeKind.parse(cfg.lattice)
    formula = combinatorics.area_counts_square if lattice is LatticeKind.SQUARE else combinatorics.area_counts_honeycomb

    print(f"{'steps':>5} {'formula s':>10} {'spectral s':>11} {'oracle s':>10}  agree")
    for steps in range(2, cfg.max_steps + 1, 2):
        ref, t_formula = timed(formula, steps)
        recon, t_spec = timed(spectral.reconstruct_area_distribution, lattice, steps)
        agree = recon == ref
        t_oracle = float("nan")
        if steps <= cfg.oracle_max:
            walks, t_oracle = timed(oracle.enumerate_closed_walks, lattice, steps)
            agree = agree and walks == ref
        print(f"{steps:>5} {t_formula:>10.4f} {t_spec:>11.4f} {t_oracle:>10.4f}  {agree}")


if __name__ == "__main__":
    main()
