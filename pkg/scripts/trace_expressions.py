"""Normalized traces at flux p/q next to their exact cosine expansions."""

import argparse
import math
from dataclasses import dataclass

from walkarea import spectral
from walkarea.cli import trace_expansion
from walkarea.core import FluxRational
from walkarea.oracle import LatticeKind


@dataclass
class TraceConfig:
    q: int = 13
    honeycomb_powers: int = 7
    square_powers: int = 5


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=TraceConfig.q)
    parser.add_argument("--honeycomb-powers", type=int, default=TraceConfig.honeycomb_powers)
    parser.add_argument("--square-powers", type=int, default=TraceConfig.square_powers,
                        help="largest n, for square walks of 2n steps")
    args = parser.parse_args()
    cfg = TraceConfig(args.q, args.honeycomb_powers, args.square_powers)

    for lattice, top in [(LatticeKind.HONEYCOMB, cfg.honeycomb_powers), (LatticeKind.SQUARE, cfg.square_powers)]:
        print(f"{lattice.value}, q = {cfg.q}")
        for n in range(1, top + 1):
            steps = 2 * n
            dist = spectral.reconstruct_area_distribution(lattice, steps)
            print(f"  steps {steps:>2}: {trace_expansion(lattice, dist, 1, cfg.q)}")
            for p in range(1, cfg.q // 2 + 1):
                flux = FluxRational(p, cfg.q)
                value = spectral.lattice_trace(lattice, flux, steps)
                exact = sum(c * math.cos(2 * math.pi * a * p / cfg.q) for a, c in dist.combined().items())
                print(f"    p={p:>2}  trace {value:>18.10f}  rel err {abs(value - exact) / abs(exact):.1e}")


if __name__ == "__main__":
    main()
