import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkarea.core import (
    AreaDistribution,
    Composition,
    FluxRational,
    LaurentPoly,
    OddLength,
    ZERO,
    binomial,
    check_steps,
    cyclotomic,
    cyclotomic_reduce,
    fibonacci,
    laurent_reduce_mod_q,
    next_prime,
    spectral_function,
    worker_count,
)

coeffs = st.one_of(st.integers(-50, 50), st.fractions(max_denominator=12).map(lambda f: f.limit_denominator(12)))
polys = st.dictionaries(st.integers(-8, 8), coeffs, max_size=6).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()
    assert a * 1 == a


@settings(max_examples=50)
@given(polys, polys, st.integers(1, 12))
def test_reduction_is_a_homomorphism(a, b, q):
    red = lambda x: laurent_reduce_mod_q(x, q)  # noqa: E731
    assert red(a + b) == red(red(a) + red(b))
    assert red(a * b) == red(red(a) * red(b))


@settings(max_examples=50)
@given(polys, st.integers(2, 12), st.data())
def test_cyclotomic_reduction_preserves_values(a, q, data):
    p = data.draw(st.sampled_from([p for p in range(1, q) if math.gcd(p, q) == 1]))
    flux = FluxRational(p, q)
    assert abs(cyclotomic_reduce(a, q).at_flux(flux) - a.at_flux(flux)) < 1e-8 * (1 + sum(abs(c) for _, c in a.items()))


def test_reduce_examples():
    q3 = LaurentPoly({5: 1, -1: 1})
    assert laurent_reduce_mod_q(q3, 3) == LaurentPoly({2: 2})
    assert laurent_reduce_mod_q(LaurentPoly({3: 1, 0: -1}), 3) == 0


def test_sum_of_spectral_functions_at_primitive_roots():
    total = sum((spectral_function(k) for k in range(1, 6)), LaurentPoly())
    assert cyclotomic_reduce(total, 5) == 10
    # plain folding keeps the vanishing geometric sum Q + ... + Q^4 + 1 - 1
    assert laurent_reduce_mod_q(total, 5) != 10


def test_exact_rational_coefficients():
    half = LaurentPoly.monomial(1) / 2
    assert half[1] == Fraction(1, 2)
    assert (half * 2)[1] == 1
    assert isinstance((half + half)[1], (int, Fraction))


def test_negative_powers():
    x = LaurentPoly.monomial(2, 3)
    assert x ** -2 == LaurentPoly({-4: Fraction(1, 9)})
    assert x ** 0 == 1
    with pytest.raises(ValueError):
        LaurentPoly({0: 1, 1: 1}) ** -1


@pytest.mark.parametrize("n,k,expected", [(4, 2, 6), (2, 3, 0), (20, 10, 184756), (5, -1, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(4) == (1, 0, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert len(cyclotomic(12)) - 1 == 4


def test_flux_validation_and_phase():
    flux = FluxRational(1, 4)
    assert cmath.isclose(flux.phase, 1j)
    assert cmath.isclose(flux.half_phase ** 2, flux.phase)
    with pytest.raises(ValueError):
        FluxRational(2, 4)


def test_check_steps():
    assert check_steps(6) == 3
    with pytest.raises(OddLength):
        check_steps(3)
    with pytest.raises(ValueError):
        check_steps(0)


def test_composition_and_distribution():
    assert ZERO.is_zero and ZERO.total == 0
    assert Composition((1, 2)).total == 3
    dist = AreaDistribution(4, {0: 28, 1: 4, -1: 4, 2: 0})
    assert dist.total == 36 and dist.max_area == 1 and dist.is_symmetric()
    assert dist.combined() == {0: 28, 1: 8}
    assert AreaDistribution.from_laurent(4, dist.as_laurent()) == dist


def test_helpers(monkeypatch):
    assert [fibonacci(i) for i in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    assert next_prime(7) == 11 and next_prime(10) == 11
    monkeypatch.setenv("WALKS_THREADS", "3")
    assert worker_count() == 3
