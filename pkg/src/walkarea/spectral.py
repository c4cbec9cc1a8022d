"""Matrix route: clock/shift representations, Hofstadter-type Hamiltonians and
area distributions reconstructed from traces at roots of unity.

For matrix powers below q the normalized trace is free of Casimir (umklapp)
terms and equals sum_A C(A) Q^A exactly, so reconstruction only ever samples
q larger than the power and never integrates over quasimomenta.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import (
    AreaDistribution,
    FluxRational,
    NonHermitianInput,
    ResidualTooLarge,
    UmklappRegime,
    check_steps,
    next_prime,
    worker_count,
)
from .oracle import LatticeKind, max_area_bound

ALGEBRA_TOL = 1e-12
TRACE_TOL = 1e-9
RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class QuasiMomenta:
    kx: float = 0.0
    ky: float = 0.0


def clock_shift(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> tuple[np.ndarray, np.ndarray]:
    """q x q clock u = e^{i ky} diag(Q, Q^2, ..., Q^q) and shift v = e^{i kx} P.

    P has ones on the superdiagonal and in the bottom-left corner, so that
    v u = Q u v.
    """
    q = flux.q
    j = np.arange(1, q + 1)
    u = np.diag(np.exp(1j * k.ky) * np.exp(2j * np.pi * flux.p * j / q))
    v = np.exp(1j * k.kx) * np.roll(np.eye(q, dtype=complex), 1, axis=1)
    return u, v


def hofstadter(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> np.ndarray:
    u, v = clock_shift(flux, k)
    h = u + u.conj().T + v + v.conj().T
    _require_hermitian(h)
    return h


def honeycomb_operators(
    flux: FluxRational, k: QuasiMomenta = QuasiMomenta()
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """2q-dimensional U, V, W with U^2 = V^2 = W^2 = 1 and (UVW)^2 = Q."""
    u, v = clock_shift(flux, k)
    uinv, vinv = u.conj().T, v.conj().T
    half = flux.half_phase

    def offdiag(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
        z = np.zeros_like(top)
        return np.block([[z, top], [bottom, z]])

    U = offdiag(u, uinv)
    V = offdiag(v, vinv)
    W = offdiag(half * v @ uinv, np.conj(half) * u @ vinv)
    return U, V, W


def honeycomb_hamiltonian(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> np.ndarray:
    U, V, W = honeycomb_operators(flux, k)
    return U + V + W


def honeycomb_hopping_block(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> np.ndarray:
    """A = u + v + Q^{1/2} v u^{-1}, the upper-right block of H_2q."""
    u, v = clock_shift(flux, k)
    return u + v + flux.half_phase * v @ u.conj().T


def honeycomb_reduced(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> np.ndarray:
    """H_q = A A^dagger; its spectrum is the squared honeycomb spectrum."""
    a = honeycomb_hopping_block(flux, k)
    h = a @ a.conj().T
    _require_hermitian(h)
    return h


def tridiagonal_momenta(flux: FluxRational, kx: float = 0.0) -> QuasiMomenta:
    """Quasimomenta with e^{-i ky} = -Q^{1/2}, which kill the corner of A."""
    return QuasiMomenta(kx, math.pi - math.pi * flux.p / flux.q)


# -- algebra checks -----------------------------------------------------------------

def _max_dev(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


def torus_defects(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> dict[str, float]:
    """Max-entry deviations of v u = Q u v and of the Casimir identities."""
    u, v = clock_shift(flux, k)
    q, eye = flux.q, np.eye(flux.q)
    return {
        "vu=Quv": _max_dev(v @ u, flux.phase * u @ v),
        "u^q": _max_dev(np.linalg.matrix_power(u, q), np.exp(1j * q * k.ky) * eye),
        "v^q": _max_dev(np.linalg.matrix_power(v, q), np.exp(1j * q * k.kx) * eye),
    }


def honeycomb_defects(flux: FluxRational, k: QuasiMomenta = QuasiMomenta()) -> dict[str, float]:
    U, V, W = honeycomb_operators(flux, k)
    eye = np.eye(2 * flux.q)
    uvw = U @ V @ W
    return {
        "U^2=1": _max_dev(U @ U, eye),
        "V^2=1": _max_dev(V @ V, eye),
        "W^2=1": _max_dev(W @ W, eye),
        "(UVW)^2=Q": _max_dev(uvw @ uvw, flux.phase * eye),
    }


def secular_coefficients(m: np.ndarray) -> np.ndarray:
    """Coefficients of det(1 - z M), constant term first."""
    return np.poly(m)


def _require_hermitian(h: np.ndarray) -> None:
    scale = max(1.0, float(np.max(np.abs(h))))
    if _max_dev(h, h.conj().T) > ALGEBRA_TOL * scale:
        raise NonHermitianInput("matrix is not Hermitian")


# -- traces --------------------------------------------------------------------------

def trace_power(h: np.ndarray, n: int, normalizer: int) -> float:
    """(1/normalizer) tr(H^n) by repeated multiplication."""
    if n < 1:
        raise ValueError("power must be positive")
    _require_hermitian(h)
    acc = h.copy()
    for _ in range(n - 1):
        acc = acc @ h
    raw = complex(np.trace(acc))
    if abs(raw.imag) > TRACE_TOL * max(1.0, abs(raw.real)):
        raise ArithmeticError(f"trace has imaginary part {raw.imag}")
    return raw.real / normalizer


def matrix_power_for(lattice: LatticeKind | str, steps: int) -> int:
    """Power of the lattice matrix whose trace counts walks of `steps` steps."""
    lattice = LatticeKind.parse(lattice)
    n = check_steps(steps)
    return steps if lattice is LatticeKind.SQUARE else n


def lattice_trace(
    lattice: LatticeKind | str,
    flux: FluxRational,
    steps: int,
    k: QuasiMomenta = QuasiMomenta(),
) -> float:
    """Numerical sum_A C_steps(A) Q^A from the q x q matrix of the lattice."""
    lattice = LatticeKind.parse(lattice)
    power = matrix_power_for(lattice, steps)
    if power >= flux.q:
        raise UmklappRegime(f"matrix power {power} >= q = {flux.q}")
    if lattice is LatticeKind.SQUARE:
        return trace_power(hofstadter(flux, k), power, flux.q)
    return trace_power(honeycomb_reduced(flux, k), power, flux.q)


def reconstruction_prime(lattice: LatticeKind | str, steps: int) -> int:
    """Smallest prime above both the matrix power and 2 A_max + 1."""
    power = matrix_power_for(lattice, steps)
    return next_prime(max(power, 2 * max_area_bound(lattice, steps) + 1))


def reconstruct_area_distribution(
    lattice: LatticeKind | str,
    steps: int,
    *,
    q: int | None = None,
    workers: int | None = None,
) -> AreaDistribution:
    """Invert sum_A C(A) Q^A = (1/q) tr(M^power) over the fluxes p/q, p = 1..(q-1)/2.

    Uses C(A) = C(-A): the traces are C(0) + sum_{A>0} (C(A) + C(-A)) cos(2 pi A p/q),
    a cosine system solved by least squares and rounded.
    """
    lattice = LatticeKind.parse(lattice)
    amax = max_area_bound(lattice, steps)
    q = reconstruction_prime(lattice, steps) if q is None else q
    ps = list(range(1, q // 2 + 1))
    if len(ps) < amax + 1:
        raise ValueError(f"q = {q} gives too few fluxes for |A| <= {amax}")
    workers = worker_count() if workers is None else max(1, workers)

    def sample(p: int) -> float:
        return lattice_trace(lattice, FluxRational(p, q), steps)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            traces = np.array(list(pool.map(sample, ps)))
    else:
        traces = np.array([sample(p) for p in ps])

    areas = np.arange(amax + 1)
    system = np.cos(2 * np.pi * np.outer(ps, areas) / q)
    solution, *_ = np.linalg.lstsq(system, traces, rcond=None)
    rounded = np.rint(solution)
    scale = max(1.0, float(np.max(np.abs(traces))))
    residual = float(np.max(np.abs(system @ rounded - traces))) / scale
    if residual > RESIDUAL_TOL or float(np.max(np.abs(solution - rounded))) > 0.25:
        raise ResidualTooLarge(f"reconstruction residual {residual:.3g} at q = {q}")

    counts: dict[int, int] = {}
    for a, value in zip(areas, rounded):
        value = int(value)
        if value < 0:
            raise ResidualTooLarge(f"negative count {value} at |A| = {a}")
        if a == 0:
            counts[0] = value
        else:
            if value % 2:
                raise ResidualTooLarge(f"odd combined count {value} at |A| = {a}")
            counts[int(a)] = counts[-int(a)] = value // 2
    return AreaDistribution(steps, counts)
