"""Secular-determinant coefficients Z(n) and cluster coefficients b(n).

Everything is exact. Two coefficient rings are supported:

* ``ring="laurent"`` (default): each level weight is the Laurent polynomial
  s_k = 2 - Q^k - Q^-k, so Z(n) lives in Z[Q, 1/Q].
* ``ring="levels"``: each s_k is an independent indeterminate (a
  :class:`LevelPoly`). Identities checked here hold for arbitrary level
  weights, which is strictly stronger, and setting s_q = 0 is a plain
  substitution.

The square-lattice determinant d_q = d_{q-1} - z^2 s_{q-1} d_{q-2} is the grand
partition function of g = 2 exclusion on levels s_1..s_{q-1} with fugacity
-z^2; the honeycomb one is g = 2 exclusion on the diluted levels
1, s_1, 1, s_2, ..., 1, s_q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterator, Mapping, Sequence, Union

from .core import LaurentPoly, spectral_function

Monomial = tuple[tuple[int, int], ...]  # sorted (level index, exponent) pairs


class LevelPoly:
    """Polynomial in commuting indeterminates s_1, s_2, ... with exact coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Monomial, int | Fraction] | None = None) -> None:
        out = {}
        for mono, c in (coeffs or {}).items():
            if c:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                out[mono] = c
        self._c = out

    @classmethod
    def var(cls, k: int, power: int = 1) -> LevelPoly:
        if power == 0:
            return cls({(): 1})
        return cls({((k, power),): 1})

    @classmethod
    def const(cls, value) -> LevelPoly:
        return cls({(): value})

    @staticmethod
    def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
        if not a:
            return b
        if not b:
            return a
        d = dict(a)
        for k, e in b:
            d[k] = d.get(k, 0) + e
        return tuple(sorted(d.items()))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, LevelPoly):
            return other
        if isinstance(other, (int, Rational)):
            return cls({(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._c)
        for m, c in other._c.items():
            out[m] = out.get(m, 0) + c
        return LevelPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LevelPoly({m: -c for m, c in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return LevelPoly({m: c * other for m, c in self._c.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, int | Fraction] = {}
        for m1, c1 in self._c.items():
            for m2, c2 in other._c.items():
                m = self._mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return LevelPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return LevelPoly({m: Fraction(c) / other for m, c in self._c.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def items(self) -> Iterator[tuple[Monomial, int | Fraction]]:
        return iter(sorted(self._c.items()))

    def coefficient(self, mono: Monomial | Mapping[int, int]) -> int | Fraction:
        if isinstance(mono, Mapping):
            mono = tuple(sorted((k, e) for k, e in mono.items() if e))
        return self._c.get(tuple(mono), 0)

    def indices(self) -> set[int]:
        return {k for m in self._c for k, _ in m}

    def set_zero(self, k: int) -> LevelPoly:
        """Substitute s_k = 0."""
        return LevelPoly({m: c for m, c in self._c.items() if all(i != k for i, _ in m)})

    def to_laurent(self) -> LaurentPoly:
        """Substitute s_k = 2 - Q^k - Q^-k."""
        cache: dict[tuple[int, int], LaurentPoly] = {}
        total = LaurentPoly()
        for mono, c in self._c.items():
            term = LaurentPoly.constant(c)
            for k, e in mono:
                if (k, e) not in cache:
                    cache[(k, e)] = spectral_function(k) ** e
                term = term * cache[(k, e)]
            total = total + term
        return total

    def __repr__(self):
        if not self._c:
            return "LevelPoly(0)"
        parts = []
        for mono, c in self.items():
            factors = "*".join(f"s{k}" + (f"^{e}" if e > 1 else "") for k, e in mono)
            parts.append(f"{c}" if not mono else (f"{c}*{factors}" if c != 1 else factors))
        return "LevelPoly(" + " + ".join(parts) + ")"


Ring = Union[LaurentPoly, LevelPoly]


def level(k: int, ring: str = "laurent") -> Ring:
    """The one-body weight s_k in the requested ring."""
    if ring == "laurent":
        return spectral_function(k)
    if ring == "levels":
        return LevelPoly.var(k)
    raise ValueError(f"unknown ring {ring!r}")


def _one(ring: str) -> Ring:
    return LaurentPoly.constant(1) if ring == "laurent" else LevelPoly.const(1)


def _zero(ring: str) -> Ring:
    return LaurentPoly() if ring == "laurent" else LevelPoly()


@dataclass(frozen=True)
class SpectralSequence:
    """Level weights; ``diluted`` interleaves unit levels: 1, s_1, 1, s_2, ..."""

    entries: tuple
    kind: str = "undiluted"

    @classmethod
    def undiluted(cls, q: int, ring: str = "laurent") -> SpectralSequence:
        return cls(tuple(level(k, ring) for k in range(1, q + 1)), "undiluted")

    @classmethod
    def diluted(cls, q: int, ring: str = "laurent") -> SpectralSequence:
        entries = []
        for k in range(1, q + 1):
            entries.append(_one(ring))
            entries.append(level(k, ring))
        return cls(tuple(entries), "diluted")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int):
        """1-based access, matching the level labels."""
        return self.entries[i - 1]


@dataclass(frozen=True)
class PartitionSeries:
    """Z(0), Z(1), ... of one secular determinant; Z(0) = 1."""

    terms: tuple
    lattice: str
    q: int
    ring: str = "laurent"

    def __getitem__(self, n: int):
        if 0 <= n < len(self.terms):
            return self.terms[n]
        return _zero(self.ring)

    def __len__(self) -> int:
        return len(self.terms)

    def map(self, fn: Callable) -> PartitionSeries:
        return PartitionSeries(tuple(fn(t) for t in self.terms), self.lattice, self.q, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PartitionSeries):
            return NotImplemented
        n = max(len(self), len(other))
        return all(self[i] == other[i] for i in range(n))


def _trim(terms: list) -> tuple:
    while len(terms) > 1 and not terms[-1]:
        terms.pop()
    return tuple(terms)


def exclusion_partition(levels: Sequence, ring: str = "laurent") -> tuple:
    """Grand partition coefficients of g = 2 exclusion on the given levels.

    Entry n is the sum over n-subsets of levels, no two adjacent, of the
    product of their weights.
    """
    prev2: list = [_one(ring)]  # Z for levels[:i-2]
    prev1: list = [_one(ring)]  # Z for levels[:i-1]
    for w in levels:
        cur = list(prev1) + [_zero(ring)] * (len(prev2) + 1 - len(prev1))
        for n, z in enumerate(prev2):
            cur[n + 1] = cur[n + 1] + w * z
        prev2, prev1 = prev1, cur
    return _trim(prev1)


def zn_square_recursive(q: int, ring: str = "laurent") -> PartitionSeries:
    """Z(n), n = 0..floor(q/2), from d_j = d_{j-1} - z^2 s_{j-1} d_{j-2}, d_0 = d_1 = 1.

    In coefficients: Z_j(n) = Z_{j-1}(n) + s_{j-1} Z_{j-2}(n-1).
    """
    if q < 1:
        raise ValueError("q must be positive")
    table: list[list] = [[_one(ring)], [_one(ring)]]
    for j in range(2, q + 1):
        s = level(j - 1, ring)
        a, b = table[j - 1], table[j - 2]
        size = max(len(a), len(b) + 1)
        row = []
        for n in range(size):
            term = a[n] if n < len(a) else _zero(ring)
            if 1 <= n <= len(b):
                term = term + s * b[n - 1]
            row.append(term)
        table.append(row)
    return PartitionSeries(_trim(table[q]), "square", q, ring)


def zn_square_nested(q: int, n: int, ring: str = "laurent") -> Ring:
    """Z(n) as the explicit nested sum

        sum_{k1=1}^{q-2n+1} sum_{k2=1}^{k1} ... sum_{kn=1}^{k_{n-1}}
            s_{k1+2n-2} s_{k2+2n-4} ... s_{kn}.
    """
    if n < 0 or n > q // 2:
        raise ValueError(f"n must lie in 0..{q // 2}")
    if n == 0:
        return _one(ring)

    def nest(i: int, upper: int) -> Ring:
        # i-th summation variable (1-based) carries offset 2(n - i)
        total = _zero(ring)
        for k in range(1, upper + 1):
            s = level(k + 2 * (n - i), ring)
            total = total + (s if i == n else s * nest(i + 1, k))
        return total

    return nest(1, q - 2 * n + 1)


def zn_honeycomb_recursive(q: int, ring: str = "laurent") -> PartitionSeries:
    """Z(n), n = 0..q, from d_j = (1 - (1 + s_j) z^2) d_{j-1} - z^4 s_{j-1} d_{j-2}.

    With d_0 = 1 and d_j = 0 for j < 0 this is, per coefficient,
    Z_j(n) = Z_{j-1}(n) + (1 + s_j) Z_{j-1}(n-1) - s_{j-1} Z_{j-2}(n-2).
    """
    if q < 1:
        raise ValueError("q must be positive")
    zero, one = _zero(ring), _one(ring)
    table: dict[int, list] = {-1: [], 0: [one]}
    for j in range(1, q + 1):
        a, b = table[j - 1], table[j - 2]
        diag = one + level(j, ring)
        sub = level(j - 1, ring) if j >= 2 else zero
        row = []
        for n in range(j + 1):
            term = a[n] if n < len(a) else zero
            if 1 <= n <= len(a):
                term = term + diag * a[n - 1]
            if 2 <= n <= len(b) + 1:
                term = term - sub * b[n - 2]
            row.append(term)
        table[j] = row
    return PartitionSeries(_trim(table[q]), "honeycomb", q, ring)


def zn_diluted(q: int, ring: str = "laurent") -> PartitionSeries:
    """Honeycomb Z(n) as g = 2 exclusion on the diluted levels 1, s_1, ..., 1, s_q."""
    if q < 1:
        raise ValueError("q must be positive")
    seq = SpectralSequence.diluted(q, ring)
    return PartitionSeries(exclusion_partition(seq.entries, ring), "honeycomb", q, ring)


def zn_honeycomb_by_rules(q: int, n: int, ring: str = "laurent") -> Ring:
    """Honeycomb Z(n) rebuilt from factor-pattern rules alone.

    Z(n) is a signed sum of index-increasing products of factors
    P_k = 1 + s_k and S_k = s_k with (#P) + 2 (#S) = n and sign (-1)^(#S).
    The factor immediately above an S sits at least 2 indices higher, the
    one above a P at least 1 higher. A top P may reach index q, a top S
    only q - 1.
    """
    if n == 0:
        return _one(ring)
    total = _zero(ring)

    def patterns(weight: int) -> Iterator[tuple[str, ...]]:
        if weight == 0:
            yield ()
            return
        for tail in patterns(weight - 1):
            yield ("P",) + tail
        if weight >= 2:
            for tail in patterns(weight - 2):
                yield ("S",) + tail

    one = _one(ring)

    def place(pattern: tuple[str, ...], pos: int, low: int) -> Ring:
        # pattern is listed bottom-up; `low` is the smallest admissible index
        kind = pattern[pos]
        top = pos == len(pattern) - 1
        hi = q if kind == "P" else q - 1
        gap = 1 if kind == "P" else 2
        acc = _zero(ring)
        for k in range(low, hi + 1):
            factor = one + level(k, ring) if kind == "P" else level(k, ring)
            if top:
                acc = acc + factor
            else:
                rest = place(pattern, pos + 1, k + gap)
                if rest:
                    acc = acc + factor * rest
        return acc

    for pattern in patterns(n):
        sign = -1 if pattern.count("S") % 2 else 1
        total = total + place(pattern, 0, 1) * sign
    return total


def cluster_coefficients(series: PartitionSeries, nmax: int) -> list:
    """Coefficients of log(sum_n Z(n) z^n) up to z^nmax.

    Returned list ``b`` has ``b[0] == 0`` (log Z(0) = 0) and ``b[n]`` = b(n).
    Uses n Z(n) = sum_{k=1}^{n} k b(k) Z(n-k).
    """
    if nmax < 1:
        raise ValueError("nmax must be positive")
    if series[0] != 1:
        raise ValueError("series must start with Z(0) = 1")
    b = [_zero(series.ring)]
    for n in range(1, nmax + 1):
        acc = series[n] * n
        for k in range(1, n):
            zk = series[n - k]
            if zk:
                acc = acc - b[k] * zk * k
        b.append(acc / n)
    return b
