import math
import random
from fractions import Fraction

import mpmath
import pytest

from fricke_orbits.trig_field import (
    CosSum,
    RationalAngle,
    compare,
    cos_value,
    cyclotomic_poly,
    float_of,
    from_rational,
    is_zero,
    match_dictionary,
    to_cyclotomic,
)


# ---------------------------------------------------------------------------
# independent zero-test oracle: the trace form.
# Tr(zeta_n^k) = mu(d) * phi(n) / phi(d) with d = n / gcd(n, k), and for a real
# element a, Tr(a^2) = sum of squares of the real conjugates, so it vanishes
# iff a does.  This shares no code with the cyclotomic reduction under test.
# ---------------------------------------------------------------------------


def _totient(n):
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


def _mobius(n):
    out, p, m = 1, 2, n
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            out = -out
        p += 1
    if m > 1:
        out = -out
    return out


def _trace_zeta(n, k):
    d = n // math.gcd(k % n, n)
    return Fraction(_mobius(d) * _totient(n), _totient(d))


def is_zero_trace_oracle(a):
    if not a.terms:
        return True
    level = 1
    for (_, den), _ in a.terms:
        level = level * den // math.gcd(level, den)
    n = 2 * level
    vec = {}
    for (num, den), c in a.terms:
        k = num * (level // den)
        vec[k % n] = vec.get(k % n, Fraction(0)) + c
        vec[(n - k) % n] = vec.get((n - k) % n, Fraction(0)) + c
    total = Fraction(0)
    for i, ci in vec.items():
        for j, cj in vec.items():
            total += ci * cj * _trace_zeta(n, i + j)
    return total == 0


# ---------------------------------------------------------------------------
# construction and folding
# ---------------------------------------------------------------------------


def test_angle_folding():
    assert RationalAngle.make(4, 3) == RationalAngle.make(2, 3)
    assert RationalAngle.make(-1, 3) == RationalAngle.make(1, 3)
    assert RationalAngle.make(7, 3) == RationalAngle.make(1, 3)
    assert RationalAngle.make(0, 5) == RationalAngle(0, 1)
    assert (cos_value(4, 3) - cos_value(2, 3)).is_zero()


def test_constants():
    assert cos_value(0, 1) == from_rational(2)
    assert cos_value(1, 1) == from_rational(-2)
    assert cos_value(1, 3) == from_rational(1)  # 2cos(pi/3) = 1
    assert cos_value(1, 2).is_zero()  # 2cos(pi/2) = 0
    assert cos_value(1, 2).terms == ()  # the zero term is not stored


def test_float_values():
    assert float_of(cos_value(1, 3)) == pytest.approx(1.0, abs=1e-12)
    assert float_of(cos_value(1, 5)) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-12)
    assert float_of(from_rational(2)) == 2.0


# ---------------------------------------------------------------------------
# is_zero against classical identities and the independent oracle
# ---------------------------------------------------------------------------


def test_golden_ratio_identity():
    a = cos_value(1, 5) - cos_value(2, 5) - 1
    assert a.is_zero()
    assert is_zero_trace_oracle(a)
    assert abs(a.mp_value(50)) < mpmath.mpf(10) ** -45


def test_heptagon_identity():
    a = cos_value(1, 7) + cos_value(3, 7) + cos_value(5, 7) - 1
    assert a.is_zero()
    assert is_zero_trace_oracle(a)


def test_product_identity():
    # 2cos(pi/5) * 2cos(2pi/5) = 2cos(3pi/5) + 2cos(pi/5) = 1
    a = cos_value(1, 5) * cos_value(2, 5)
    assert a == from_rational(1)


def test_nonzero_values():
    for a in [cos_value(1, 7), cos_value(1, 5) - cos_value(2, 5),
              cos_value(1, 9) + cos_value(2, 9)]:
        assert not a.is_zero()
        assert not is_zero_trace_oracle(a)


def test_is_zero_matches_trace_oracle_randomized():
    rng = random.Random(20260814)
    dens = [1, 2, 3, 4, 5, 6, 8, 10, 12]
    zero_templates = [
        cos_value(1, 5) - cos_value(2, 5) - 1,
        cos_value(1, 3) - 1,
        cos_value(2, 3) + 1,
        cos_value(1, 6) * cos_value(1, 6) - 3,
    ]
    for _ in range(300):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            den = rng.choice(dens)
            num = rng.randint(0, den)
            key = (num, den)
            terms[key] = terms.get(key, 0) + Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        a = CosSum(terms)
        if rng.random() < 0.3:
            a = a - a  # force an exact zero with a messy representation
        elif rng.random() < 0.3:
            q1 = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
            a = zero_templates[rng.randrange(len(zero_templates))] * q1
        assert a.is_zero() == is_zero_trace_oracle(a)


# ---------------------------------------------------------------------------
# ring laws (randomized, exact)
# ---------------------------------------------------------------------------


def _random_cossum(rng):
    dens = [1, 2, 3, 4, 5, 6, 10, 12]
    terms = {}
    for _ in range(rng.randint(0, 3)):
        den = rng.choice(dens)
        terms[(rng.randint(0, den), den)] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return CosSum(terms)


def test_ring_laws():
    rng = random.Random(7)
    for _ in range(120):
        a, b, c = (_random_cossum(rng) for _ in range(3))
        assert (a + b - (b + a)).is_zero()
        assert (a * b - b * a).is_zero()
        assert ((a + b) + c - (a + (b + c))).is_zero()
        assert ((a * b) * c - (a * (b * c))).is_zero()
        assert (a * (b + c) - (a * b + a * c)).is_zero()
        assert (a + (-a)).is_zero()
        assert (a * 1 - a).is_zero()
        assert (a ** 3 - a * a * a).is_zero()


def test_division_roundtrip():
    rng = random.Random(11)
    count = 0
    while count < 40:
        a = _random_cossum(rng)
        if a.is_zero():
            continue
        count += 1
        assert (a * a.inverse() - 1).is_zero()
        b = _random_cossum(rng) + 1
        if b.is_zero():
            continue
        assert ((a / b) * b - a).is_zero()
    with pytest.raises(ZeroDivisionError):
        CosSum().inverse()
    assert (cos_value(1, 5) / 2 * 2 - cos_value(1, 5)).is_zero()


# ---------------------------------------------------------------------------
# backend details
# ---------------------------------------------------------------------------


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)
    assert cyclotomic_poly(105)[7] == -2 and len(cyclotomic_poly(105)) == 49


def test_normal_form_of_zero():
    a = cos_value(1, 5) - cos_value(2, 5) - 1
    el = to_cyclotomic(a)
    assert all(c == 0 for c in el.coeffs)
    b = cos_value(1, 7) - cos_value(2, 7)
    el2 = to_cyclotomic(b)
    assert any(c != 0 for c in el2.coeffs)
    assert el2.level == 7 and len(el2.coeffs) == 6  # deg Phi_14


def test_float_matches_mpmath():
    rng = random.Random(3)
    for _ in range(50):
        a = _random_cossum(rng)
        assert float_of(a) == pytest.approx(float(a.mp_value(50)), abs=1e-12)


def test_match_dictionary():
    values = sorted(2 * math.cos(math.pi * n / 5) for n in range(1, 5))
    idx = match_dictionary(values[2] + 3e-9, values, eps=1e-8)
    assert idx == 2
    assert match_dictionary(1.93, values, eps=1e-8) is None
    assert match_dictionary(-2.0 + 1e-12, values, eps=1e-8) is None


def test_total_order():
    assert compare(cos_value(1, 5), cos_value(2, 5)) == 1
    assert compare(cos_value(2, 5), cos_value(1, 5)) == -1
    assert compare(cos_value(1, 5) - cos_value(2, 5), from_rational(1)) == 0
    # floats tie within 1e-10 but the values differ: exact sign must decide
    tiny = Fraction(1, 10 ** 12)
    a = cos_value(1, 5)
    assert compare(a, a + tiny) == -1
    assert compare(a + tiny, a) == 1
