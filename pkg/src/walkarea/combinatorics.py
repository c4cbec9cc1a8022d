"""Closed-form route: compositions, c / c_n coefficients and binomial kernels.

Index convention: part l_1 sits on the lowest level s_k of a window, l_j on
the highest, s_{k+j-1}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterator

from .core import (
    ZERO,
    AreaDistribution,
    Composition,
    ConstraintViolated,
    FluxRational,
    LaurentPoly,
    ZeroComposition,
    binomial,
    check_steps,
    fibonacci,
    laurent_reduce_mod_q,
)
from .partition import LevelPoly, level


# -- compositions --------------------------------------------------------------

def compositions(n: int, max_parts: int | None = None) -> list[Composition]:
    """All compositions of n (n = 0 gives just ZERO), optionally capped in length."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return [ZERO]
    out = []
    # each of the n-1 gaps is either a cut or not
    for cuts in product((False, True), repeat=n - 1):
        parts, run = [], 1
        for cut in cuts:
            if cut:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        if max_parts is None or len(parts) <= max_parts:
            out.append(Composition(tuple(parts)))
    out.sort(key=lambda c: (len(c), c.parts[::-1]))
    return out


def honeycomb_part_limit(n: int, sub: int) -> int:
    """Largest part count allowed for compositions of `sub` in the length-2n sum."""
    return min(sub, n - sub + 1)


def honeycomb_compositions(n: int) -> list[Composition]:
    """ZERO plus compositions of n' = 1..n with at most min(n', n - n' + 1) parts."""
    out = [ZERO]
    for sub in range(1, n + 1):
        out.extend(compositions(sub, honeycomb_part_limit(n, sub)))
    return out


# -- coefficients ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _c_cached(parts: tuple[int, ...]) -> Fraction:
    if len(parts) == 1:
        return Fraction(1, parts[0])
    value = Fraction(1)
    for i, (a, b) in enumerate(zip(parts, parts[1:])):
        if i:
            value *= a
        value *= Fraction(binomial(a + b, a), a + b)
    return value


def c_coeff(parts: Composition | tuple[int, ...]) -> Fraction:
    """Square-lattice weight of a composition.

    c(l1..lj) = prod_i C(l_i + l_{i+1}, l_i)/(l_i + l_{i+1}) * prod_{1<i<j} l_i,
    and c(l) = 1/l for a single part.
    """
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    if comp.is_zero:
        raise ZeroComposition("the square-lattice sum has no n' = 0 term")
    return _c_cached(comp.parts)


def _m_sums(parts: tuple[int, ...]) -> Iterator[tuple[int, int]]:
    """Yield (weight, sum of m_i) over the nested m-sums of the c_n formula."""
    ranges = [range(min(a, b) + 1) for a, b in zip(parts, parts[1:])]
    for ms in product(*ranges):
        w = 1
        for m, a, b in zip(ms, parts, parts[1:]):
            w *= m * binomial(a, m) * binomial(b, m)
            if not w:
                break
        if w:
            yield w, sum(ms)


@lru_cache(maxsize=None)
def _cn_cached(n: int, parts: tuple[int, ...], with_binomial: bool) -> Fraction:
    if not parts:
        return Fraction(1, n)
    big = sum(parts)
    denom = 1
    for x in parts:
        denom *= x
    total = 0
    for w, msum in _m_sums(parts):
        total += w * (binomial(n + big - msum - 1, 2 * big - 1) if with_binomial else 1)
    if len(parts) == 1:
        total = binomial(n + big - 1, 2 * big - 1) if with_binomial else 1
    return Fraction(total, denom)


def cn_coeff(n: int, parts: Composition | tuple[int, ...]) -> Fraction:
    """Honeycomb weight c_n of a composition of some n' <= n.

    c_n(0) = 1/n and, in general,
    c_n(l) = 1/(l1..lj) sum_{m_i <= min(l_i, l_{i+1})} prod m_i C(l_i, m_i) C(l_{i+1}, m_i)
             * C(n + sum l - sum m - 1, 2 sum l - 1).
    """
    if n < 1:
        raise ValueError("n must be positive")
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    if not comp.is_zero:
        sub = comp.total
        if sub > n or len(comp) > honeycomb_part_limit(n, sub):
            raise ConstraintViolated(
                f"{comp} has {len(comp)} parts; n={n} allows {max(0, honeycomb_part_limit(n, sub))}"
            )
    return _cn_cached(n, comp.parts, True)


def cn_coeff_limit(parts: Composition | tuple[int, ...]) -> Fraction:
    """c_n with its n-dependent binomial replaced by 1."""
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    if comp.is_zero:
        raise ZeroComposition("no limit form for the zero composition")
    return _cn_cached(1, comp.parts, False)


@dataclass(frozen=True)
class CoefficientTable:
    lattice: str
    n: int
    entries: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, comp: Composition) -> Fraction:
        return self.entries[comp]

    def total(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))


def coefficient_table_square(n: int) -> CoefficientTable:
    return CoefficientTable("square", n, {c: c_coeff(c) for c in compositions(n)})


def coefficient_table_honeycomb(n: int) -> CoefficientTable:
    return CoefficientTable(
        "honeycomb", n, {c: cn_coeff(n, c) for c in honeycomb_compositions(n)}
    )


# -- kernels ---------------------------------------------------------------------

def _kernel_states(parts: tuple[int, ...]) -> dict[tuple[int, int], int]:
    """(sum of a_i, sum of (i-1) a_i) -> prod C(2 l_i, l_i + a_i) over |a_i| <= l_i."""
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for i, l in enumerate(parts):
        weights = [(a, binomial(2 * l, l + a)) for a in range(-l, l + 1)]
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (tot, area), c in states.items():
            for a, w in weights:
                nxt[(tot + a, area + i * a)] += c * w
        states = nxt
    return states


@lru_cache(maxsize=None)
def _area_kernel(parts: tuple[int, ...]) -> LaurentPoly:
    if not parts:
        return LaurentPoly.constant(1)
    return LaurentPoly(
        {area: c for (tot, area), c in _kernel_states(parts).items() if tot == 0}
    )


def area_kernel(parts: Composition | tuple[int, ...]) -> LaurentPoly:
    """Area-resolved value of (1/q) sum_k s_{k+j-1}^{l_j} ... s_k^{l_1} for q large.

    Coefficient of Q^A is the sum over a_1..a_j with sum a_i = 0 and
    sum (i-1) a_i = A of prod C(2 l_i, l_i + a_i); ZERO gives 1.
    """
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    return _area_kernel(comp.parts)


def _trig_sum_closed_form(parts: tuple[int, ...], q: int) -> LaurentPoly:
    # expanding each s^l = sum_a (-1)^a C(2l, l+a) Q^{ka}, the k-average keeps
    # q | sum a_i; windows through s_q vanish, so the truncated k-range equals
    # a full period
    if not parts:
        return LaurentPoly.constant(1)
    out: dict[int, int] = defaultdict(int)
    for (tot, area), c in _kernel_states(parts).items():
        if tot % q == 0:
            out[area] += -c if tot % 2 else c
    return laurent_reduce_mod_q(LaurentPoly(out), q)


def trig_sum_square(parts: Composition | tuple[int, ...], flux: FluxRational) -> LaurentPoly:
    """(1/q) sum_{k=1}^{q-j} s_{k+j-1}^{l_j} ... s_k^{l_1}, closed form, exponents mod q.

    Valid at any primitive q-th root Q; compare representatives with
    :func:`walkarea.core.cyclotomic_reduce`.
    """
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    if comp.is_zero:
        raise ZeroComposition("use the honeycomb convention for n' = 0")
    return _trig_sum_closed_form(comp.parts, flux.q)


def split_diluted(parts: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Parts landing on s-levels for windows that start on a unit level vs an s-level."""
    return parts[1::2], parts[0::2]


def trig_sum_honeycomb_diluted(
    parts: Composition | tuple[int, ...], flux: FluxRational
) -> LaurentPoly:
    """(1/q) sum_{k=1}^{2q-j+1} S_{k+j-1}^{l_j} ... S_k^{l_1} on 1, s_1, 1, s_2, ...

    A window starting on a unit level puts l_2, l_4, ... on consecutive
    s-levels; one starting on s puts l_1, l_3, ... there. Each half is an
    undiluted sum, the empty one contributing 1.
    """
    comp = parts if isinstance(parts, Composition) else Composition(tuple(parts))
    if comp.is_zero:
        raise ZeroComposition("diluted sums need at least one part")
    odd_start, even_start = split_diluted(comp.parts)
    return _trig_sum_closed_form(odd_start, flux.q) + _trig_sum_closed_form(
        even_start, flux.q
    )


# -- area counts -----------------------------------------------------------------

def area_counts_square(steps: int) -> AreaDistribution:
    """C_{2n}(A) = 2n sum_{compositions of n} c(l) K_l(A)."""
    n = check_steps(steps)
    total = LaurentPoly()
    for comp in compositions(n):
        total = total + area_kernel(comp) * c_coeff(comp)
    return AreaDistribution.from_laurent(steps, total * (2 * n))


def area_counts_honeycomb(steps: int) -> AreaDistribution:
    """C_{2n}(A) = n sum c_n(l) K_l(A) over ZERO and the constrained compositions."""
    n = check_steps(steps)
    total = LaurentPoly()
    for comp in honeycomb_compositions(n):
        total = total + area_kernel(comp) * cn_coeff(n, comp)
    return AreaDistribution.from_laurent(steps, total * n)


def area_counts_honeycomb_diluted(steps: int) -> AreaDistribution:
    """Honeycomb counts from square-lattice weights c on the diluted spectrum."""
    n = check_steps(steps)
    total = LaurentPoly()
    for comp in compositions(n):
        odd_start, even_start = split_diluted(comp.parts)
        total = total + (_area_kernel(odd_start) + _area_kernel(even_start)) * c_coeff(comp)
    return AreaDistribution.from_laurent(steps, total * n)


# -- cluster coefficients from the tables -------------------------------------

def window_sum(parts: tuple[int, ...], first: int, last: int, ring: str = "laurent"):
    """sum_{k=first}^{last} s_{k+j-1}^{l_j} ... s_k^{l_1} in the given ring."""
    acc = LevelPoly() if ring == "levels" else LaurentPoly()
    for k in range(first, last + 1):
        term = LevelPoly.const(1) if ring == "levels" else LaurentPoly.constant(1)
        for i, l in enumerate(parts):
            if ring == "levels":
                term = term * LevelPoly.var(k + i, l)
            else:
                term = term * level(k + i) ** l
        acc = acc + term
    return acc


def cluster_coefficient_square(n: int, q: int, ring: str = "laurent"):
    """b(n) = (-1)^(n+1) sum_l c(l) sum_{k=1}^{q-j} s_{k+j-1}^{l_j} ... s_k^{l_1}."""
    sign = 1 if n % 2 else -1
    acc = LevelPoly() if ring == "levels" else LaurentPoly()
    for comp in compositions(n):
        acc = acc + window_sum(comp.parts, 1, q - len(comp), ring) * c_coeff(comp)
    return acc * sign


def cluster_coefficient_honeycomb(n: int, q: int, ring: str = "laurent"):
    """Honeycomb b(n) assembled from c_n; the ZERO window sum is q."""
    sign = 1 if n % 2 else -1
    acc = LevelPoly() if ring == "levels" else LaurentPoly()
    for comp in honeycomb_compositions(n):
        if comp.is_zero:
            acc = acc + cn_coeff(n, comp) * q
        else:
            acc = acc + window_sum(comp.parts, 1, q - len(comp), ring) * cn_coeff(n, comp)
    return acc * sign


# -- sum rules --------------------------------------------------------------------

@dataclass(frozen=True)
class SumRule:
    name: str
    lhs: Fraction | int
    rhs: Fraction | int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


def sum_rules(n: int) -> list[SumRule]:
    """Evaluate every exact identity on the coefficient tables at this n."""
    if n < 1:
        raise ValueError("n must be positive")
    rules: list[SumRule] = []
    sq = coefficient_table_square(n)
    rules.append(SumRule(f"square: sum c = C(2n,n)/(2n) [n={n}]",
                         sq.total(), Fraction(binomial(2 * n, n), 2 * n)))
    rules.append(SumRule(
        f"square: 2n sum c C(2|l|,|l|) = C(2n,n)^2 [n={n}]",
        2 * n * sum(c * binomial(2 * n, n) for c in sq.entries.values()),
        binomial(2 * n, n) ** 2,
    ))
    hx = coefficient_table_honeycomb(n)
    rules.append(SumRule(f"honeycomb: #compositions = F(n+2) [n={n}]", len(hx), fibonacci(n + 2)))
    for sub in range(n + 1):
        part = sum((c for comp, c in hx.entries.items() if comp.total == sub), Fraction(0))
        rules.append(SumRule(f"honeycomb: n sum c_n = C(n,n')^2 [n={n}, n'={sub}]",
                             n * part, binomial(n, sub) ** 2))
    single = sum((c for comp, c in hx.entries.items() if len(comp) <= 1), Fraction(0))
    rules.append(SumRule(f"honeycomb: n sum_l c_n(l) = F(2n+1)+F(2n-1)-1 [n={n}]",
                         n * single, fibonacci(2 * n + 1) + fibonacci(2 * n - 1) - 1))
    rules.append(SumRule(f"honeycomb: n sum c_n = C(2n,n) [n={n}]",
                         n * hx.total(), binomial(2 * n, n)))
    rules.append(SumRule(
        f"honeycomb: n sum c_n C(2|l|,|l|) = sum C(n,n')^2 C(2n',n') [n={n}]",
        n * sum(c * binomial(2 * comp.total, comp.total) for comp, c in hx.entries.items()),
        sum(binomial(n, k) ** 2 * binomial(2 * k, k) for k in range(n + 1)),
    ))
    mismatched = sum(
        1
        for sub in range(1, n + 1)
        for comp in compositions(sub)
        if cn_coeff_limit(comp) != c_coeff(comp)
    )
    rules.append(SumRule(f"c_n without its binomial equals c [n'<={n}]", mismatched, 0))
    return rules
