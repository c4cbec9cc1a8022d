"""Print the combined +-A area tables for both lattices, cross-checked by every route."""

import argparse
from dataclasses import dataclass

from walkarea import combinatorics, oracle, spectral
from walkarea.oracle import LatticeKind


@dataclass
class TableConfig:
    honeycomb_max: int = 14
    square_max: int = 10
    check_oracle: bool = True


def build_table(lattice: LatticeKind, max_steps: int, check_oracle: bool) -> dict[int, dict[int, int]]:
    formula = combinatorics.area_counts_honeycomb if lattice is LatticeKind.HONEYCOMB else combinatorics.area_counts_square
    columns = {}
    for steps in range(2, max_steps + 1, 2):
        dist = formula(steps)
        if dist != spectral.reconstruct_area_distribution(lattice, steps):
            raise SystemExit(f"spectral route disagrees at {lattice.value} steps={steps}")
        if check_oracle and dist != oracle.enumerate_closed_walks(lattice, steps):
            raise SystemExit(f"oracle disagrees at {lattice.value} steps={steps}")
        columns[steps] = dist.combined()
    return columns


def render(lattice: LatticeKind, columns: dict[int, dict[int, int]]) -> str:
    steps = sorted(columns)
    top = max(max(col) for col in columns.values())
    width = max(len(str(v)) for col in columns.values() for v in col.values()) + 2
    lines = [f"{lattice.value}", "      A" + "".join(f"{s:>{width}}" for s in steps)]
    for a in range(top + 1):
        label = "0" if a == 0 else f"+-{a}"
        cells = "".join(f"{columns[s].get(a, ''):>{width}}" for s in steps)
        lines.append(f"{label:>7}{cells}")
    totals = "".join(f"{sum(columns[s].values()):>{width}}" for s in steps)
    lines.append(f"{'total':>7}{totals}")
    return "\n".join(lines)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--honeycomb-max", type=int, default=TableConfig.honeycomb_max)
    parser.add_argument("--square-max", type=int, default=TableConfig.square_max)
    parser.add_argument("--skip-oracle", action="store_true")
    args = parser.parse_args()
    cfg = TableConfig(args.honeycomb_max, args.square_max, not args.skip_oracle)
    for lattice, top in [(LatticeKind.HONEYCOMB, cfg.honeycomb_max), (LatticeKind.SQUARE, cfg.square_max)]:
        print(render(lattice, build_table(lattice, top, cfg.check_oracle)))
        print()


if __name__ == "__main__":
    main()
