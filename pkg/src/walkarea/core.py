"""Exact arithmetic substrate shared by every counting route.

Counts are Python ints, rational coefficients are :class:`fractions.Fraction`,
and anything carrying a power of the flux phase ``Q`` lives in a
:class:`LaurentPoly`.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping


class OddLength(ValueError):
    """Closed walks need an even number of steps."""


class NotClosed(ValueError):
    pass


class NonIntegralArea(ArithmeticError):
    pass


class ZeroComposition(ValueError):
    pass


class ConstraintViolated(ValueError):
    pass


class NonHermitianInput(ValueError):
    pass


class ResidualTooLarge(ArithmeticError):
    pass


class UmklappRegime(ValueError):
    """Trace power large enough for Casimir-dependent wrap-around terms."""


def worker_count(default: int = 1) -> int:
    """Worker cap from ``WALKS_THREADS`` (falls back to `default`)."""
    raw = os.environ.get("WALKS_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def check_steps(steps: int) -> int:
    if not isinstance(steps, int) or steps < 2:
        raise ValueError(f"steps must be an integer >= 2, got {steps!r}")
    if steps % 2:
        raise OddLength(f"no closed walks of odd length {steps}")
    return steps // 2


@dataclass(frozen=True)
class FluxRational:
    """Reduced flux p/q per cell; the phase is Q = exp(2 pi i p/q)."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("q must be positive")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"p/q = {self.p}/{self.q} is not reduced")

    @property
    def phase(self) -> complex:
        return cmath.exp(2j * math.pi * self.p / self.q)

    @property
    def half_phase(self) -> complex:
        # principal branch of Q^(1/2)
        return cmath.exp(1j * math.pi * self.p / self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


Number = int | Fraction


def _clean(coeffs: Mapping[int, Number]) -> dict[int, Number]:
    out: dict[int, Number] = {}
    for e, c in coeffs.items():
        if c:
            if isinstance(c, Fraction) and c.denominator == 1:
                c = c.numerator
            out[int(e)] = c
    return out


class LaurentPoly:
    """Finite Laurent polynomial in Q with exact (int or Fraction) coefficients.

    Zero coefficients are never stored, so ``==`` is structural equality.
    Instances are treated as immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None) -> None:
        self._c = _clean(coeffs or {})
        self._hash: int | None = None

    @classmethod
    def monomial(cls, exponent: int, coeff: Number = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def constant(cls, value: Number) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def _coerce(cls, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Rational)):
            return cls({0: other})
        return NotImplemented

    # -- container protocol -------------------------------------------------
    def __getitem__(self, exponent: int) -> Number:
        return self._c.get(exponent, 0)

    def items(self) -> Iterator[tuple[int, Number]]:
        return iter(sorted(self._c.items()))

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def min_exponent(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_exponent(self) -> int:
        return max(self._c) if self._c else 0

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    # -- ring operations ----------------------------------------------------
    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._c.items()})

    def __sub__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (int, Rational)) and not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, Number] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other: int | Fraction) -> LaurentPoly:
        if not isinstance(other, (int, Rational)):
            return NotImplemented
        return LaurentPoly({e: Fraction(c) / other for e, c in self._c.items()})

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._c.items()
            return LaurentPoly({e * k: (Fraction(1) / c) ** (-k)})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- evaluation ---------------------------------------------------------
    def substitute_inverse(self) -> LaurentPoly:
        """Q -> 1/Q."""
        return LaurentPoly({-e: c for e, c in self._c.items()})

    def evaluate(self, z: complex) -> complex:
        return sum(complex(c) * z**e for e, c in self._c.items())

    def at_flux(self, flux: FluxRational) -> complex:
        return sum(
            float(c) * cmath.exp(2j * math.pi * e * flux.p / flux.q)
            for e, c in self._c.items()
        )

    def __repr__(self) -> str:
        if not self._c:
            return "LaurentPoly(0)"
        terms = []
        for e, c in self.items():
            terms.append(f"{c}" if e == 0 else f"{c}*Q^{e}")
        return "LaurentPoly(" + " + ".join(terms) + ")"


def laurent_reduce_mod_q(poly: LaurentPoly, q: int) -> LaurentPoly:
    """Fold exponents into [0, q) using Q^q = 1."""
    if q < 1:
        raise ValueError("q must be positive")
    out: dict[int, Number] = {}
    for e, c in poly.items():
        r = e % q
        out[r] = out.get(r, 0) + c
    return LaurentPoly(out)


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, list(cyclotomic(d)))
    return tuple(num)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        coef = num[i + len(den) - 1] // den[-1]
        out[i] = coef
        for j, d in enumerate(den):
            num[i + j] -= coef * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def cyclotomic_reduce(poly: LaurentPoly, q: int) -> LaurentPoly:
    """Canonical form of `poly` at a primitive q-th root of unity.

    Two Laurent polynomials take the same value at every Q = exp(2 pi i p/q)
    with gcd(p, q) = 1 exactly when their reductions agree. The result has
    exponents in [0, phi(q)).
    """
    folded = laurent_reduce_mod_q(poly, q)
    phi = cyclotomic(q)
    deg = len(phi) - 1
    work: dict[int, Number] = dict(folded.items())
    for e in range(q - 1, deg - 1, -1):
        c = work.pop(e, 0)
        if not c:
            continue
        # x^e = x^(e-deg) * (x^deg - Phi(x)) since Phi is monic
        shift = e - deg
        for i, a in enumerate(phi[:-1]):
            if a:
                work[shift + i] = work.get(shift + i, 0) - c * a
    return LaurentPoly(work)


def spectral_function(k: int) -> LaurentPoly:
    """s_k = (1 - Q^k)(1 - Q^-k) = 2 - Q^k - Q^-k."""
    if k == 0:
        return LaurentPoly()
    return LaurentPoly({0: 2, k: -1, -k: -1})


@dataclass(frozen=True)
class Composition:
    """Ordered positive parts; the empty tuple is the distinguished ZERO."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(x) for x in self.parts))
        if any(x < 1 for x in self.parts):
            raise ValueError(f"composition parts must be positive: {self.parts}")

    @property
    def is_zero(self) -> bool:
        return not self.parts

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "(0)" if self.is_zero else "(" + ",".join(map(str, self.parts)) + ")"


ZERO = Composition(())


@dataclass(frozen=True)
class AreaDistribution:
    """Closed-walk counts of a given length binned by algebraic area."""

    steps: int
    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        check_steps(self.steps)
        clean = {}
        for a, c in sorted(self.counts.items()):
            c = int(c)
            if c < 0:
                raise ValueError(f"negative count {c} at area {a}")
            if c:
                clean[int(a)] = c
        object.__setattr__(self, "counts", clean)

    @classmethod
    def from_laurent(cls, steps: int, poly: LaurentPoly) -> AreaDistribution:
        counts = {}
        for a, c in poly.items():
            if isinstance(c, Fraction):
                raise ValueError(f"non-integral count {c} at area {a}")
            counts[a] = c
        return cls(steps, counts)

    def __getitem__(self, area: int) -> int:
        return self.counts.get(area, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_area(self) -> int:
        return max((abs(a) for a in self.counts), default=0)

    def is_symmetric(self) -> bool:
        return all(self[-a] == c for a, c in self.counts.items())

    def combined(self) -> dict[int, int]:
        """Table convention: row 0 holds C(0), row A > 0 holds C(A) + C(-A)."""
        out: dict[int, int] = {}
        for a, c in self.counts.items():
            out[abs(a)] = out.get(abs(a), 0) + c
        return dict(sorted(out.items()))

    def as_laurent(self) -> LaurentPoly:
        return LaurentPoly(self.counts)


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1 (and F_0 = 0)."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def iter_primes_above(n: int) -> Iterable[int]:
    k = n + 1
    while True:
        if k > 1 and all(k % d for d in range(2, math.isqrt(k) + 1)):
            yield k
        k += 1


def next_prime(n: int) -> int:
    """Smallest prime strictly greater than n."""
    return next(iter(iter_primes_above(n)))
