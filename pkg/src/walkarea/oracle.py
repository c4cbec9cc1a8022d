"""Brute-force ground truth: closed walks enumerated with exact signed area.

The honeycomb lattice is drawn as a brick wall on Z^2. Every vertex keeps
its horizontal neighbours (x +- 1, y) and has one vertical bond, up when
x + y is even (sublattice A) and down when it is odd (sublattice B). Each
hexagon becomes a 2 x 1 brick, so a cell has doubled shoelace area 4 while
a square cell has 2.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .core import (
    AreaDistribution,
    NonIntegralArea,
    NotClosed,
    check_steps,
    worker_count,
)


class LatticeKind(enum.Enum):
    SQUARE = "square"
    HONEYCOMB = "honeycomb"

    @classmethod
    def parse(cls, value: LatticeKind | str) -> LatticeKind:
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


MOVES = {"E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1)}

# doubled shoelace area of one unit cell in the integer embedding
CELL_DOUBLE_AREA = {LatticeKind.SQUARE: 2, LatticeKind.HONEYCOMB: 4}


def _neighbours(lattice: LatticeKind, x: int, y: int) -> tuple[tuple[int, int], ...]:
    if lattice is LatticeKind.SQUARE:
        return ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))
    dy = 1 if (x + y) % 2 == 0 else -1
    return ((x + 1, y), (x - 1, y), (x, y + dy))


def walk_area(
    lattice: LatticeKind | str,
    steps: Sequence[str],
    start: tuple[int, int] = (0, 0),
) -> int:
    """Algebraic area (in cells) of a closed walk given as compass moves.

    On the honeycomb only the vertical move allowed by the current
    vertex parity is legal: N from even x + y, S from odd.
    """
    lattice = LatticeKind.parse(lattice)
    x, y = start
    twice = 0
    for move in steps:
        try:
            dx, dy = MOVES[move.upper()]
        except KeyError:
            raise ValueError(f"unknown move {move!r}") from None
        nx, ny = x + dx, y + dy
        if (nx, ny) not in _neighbours(lattice, x, y):
            raise ValueError(f"move {move} is not a bond at {(x, y)} on {lattice.value}")
        twice += x * ny - nx * y
        x, y = nx, ny
    if (x, y) != tuple(start):
        raise NotClosed(f"walk ends at {(x, y)}, started at {tuple(start)}")
    cell = CELL_DOUBLE_AREA[lattice]
    if twice % cell:
        raise NonIntegralArea(f"doubled area {twice} not a multiple of {cell}")
    return twice // cell


def _run_dp(
    lattice: LatticeKind,
    total_steps: int,
    state: tuple[int, int, int],
    taken: int,
    origin: tuple[int, int],
) -> dict[int, int]:
    """Propagate one seed state to the end; returns doubled area -> count."""
    ox, oy = origin
    layer: dict[tuple[int, int, int], int] = {state: 1}
    for step in range(taken, total_steps):
        remaining = total_steps - step - 1
        nxt: dict[tuple[int, int, int], int] = defaultdict(int)
        for (x, y, twice), count in layer.items():
            for nx, ny in _neighbours(lattice, x, y):
                # every bond moves one unit along an axis, so the Manhattan
                # distance bounds the steps needed to return
                if abs(nx - ox) + abs(ny - oy) > remaining:
                    continue
                nxt[(nx, ny, twice + x * ny - nx * y)] += count
        layer = nxt
    out: dict[int, int] = defaultdict(int)
    for (x, y, twice), count in layer.items():
        if (x, y) == origin:
            out[twice] += count
    return out


def enumerate_closed_walks(
    lattice: LatticeKind | str,
    steps: int,
    *,
    sublattice: str = "A",
    workers: int | None = None,
) -> AreaDistribution:
    """Count every closed walk of `steps` steps from a fixed origin, by area.

    Dynamic programming over (position, doubled area) states; work can be
    split over first-step branches with ``workers`` processes (default from
    ``WALKS_THREADS``). Honeycomb walks start on sublattice ``"A"`` (even
    parity) or ``"B"``.
    """
    lattice = LatticeKind.parse(lattice)
    check_steps(steps)
    if sublattice not in ("A", "B"):
        raise ValueError("sublattice must be 'A' or 'B'")
    origin = (0, 0) if sublattice == "A" or lattice is LatticeKind.SQUARE else (1, 0)
    ox, oy = origin
    seeds = [
        (nx, ny, ox * ny - nx * oy) for nx, ny in _neighbours(lattice, ox, oy)
    ]
    workers = worker_count() if workers is None else max(1, workers)
    if workers > 1 and len(seeds) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(seeds))) as pool:
            parts = list(
                pool.map(
                    _run_dp,
                    [lattice] * len(seeds),
                    [steps] * len(seeds),
                    seeds,
                    [1] * len(seeds),
                    [origin] * len(seeds),
                )
            )
    else:
        parts = [_run_dp(lattice, steps, seed, 1, origin) for seed in seeds]

    cell = CELL_DOUBLE_AREA[lattice]
    counts: dict[int, int] = defaultdict(int)
    for part in parts:  # seed order is fixed, so the merge is deterministic
        for twice, count in part.items():
            if twice % cell:
                raise NonIntegralArea(f"doubled area {twice} not a multiple of {cell}")
            counts[twice // cell] += count
    return AreaDistribution(steps, counts)


def max_area_observed(lattice: LatticeKind | str, steps: int) -> int:
    return enumerate_closed_walks(lattice, steps).max_area


def max_area_bound(lattice: LatticeKind | str, steps: int) -> int:
    """Largest |A| reachable in `steps` steps (square: floor*ceil of n/2,
    honeycomb: floor((n^2 + 3)/12), with steps = 2n)."""
    lattice = LatticeKind.parse(lattice)
    n = check_steps(steps)
    if lattice is LatticeKind.SQUARE:
        return (n // 2) * ((n + 1) // 2)
    return (n * n + 3) // 12
