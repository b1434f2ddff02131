"""Exact arithmetic in the ring generated over Q by values 2cos(pi*r), r rational.

Every quantity the orbit machinery touches (trace coordinates, surface
parameters, dictionary entries) lives in this ring.  A value is stored as a
finite Q-linear combination of terms 2cos(pi*num/den); the product rule
2cosA*2cosB = 2cos(A+B) + 2cos(A-B) keeps the ring closed.

The term basis is NOT linearly independent (2cos(pi/5) - 2cos(2pi/5) = 1), so
structural comparison is meaningless.  Equality is decided by is_zero, which
embeds the value into Z[zeta] for a primitive 2L-th root of unity (L = lcm of
the denominators) and reduces the exponent vector modulo the 2L-th cyclotomic
polynomial; the normal form there is unique.

Doubles are used as a fast path only: every decision that matters is either
confirmed exactly or separated by a proven gap.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import mpmath

Rational = Union[int, Fraction]

# Floats closer than this are compared exactly before ordering decisions.
ORDER_TIE_EPS = 1e-10


def _fold(fr: Fraction) -> Fraction:
    """Fold an angle (in units of pi) into [0, 1] using the symmetries
    cos(pi*(a+2)) = cos(pi*a) and cos(-pi*a) = cos(pi*a)."""
    fr = fr % 2
    if fr > 1:
        fr = 2 - fr
    return fr


@dataclass(frozen=True, slots=True)
class RationalAngle:
    """Canonical angle num/den in units of pi, folded into [0, 1].

    (0, 1) and (1, 1) encode the constants 2cos(0) = 2 and 2cos(pi) = -2.
    """

    num: int
    den: int

    @staticmethod
    def make(num: Rational, den: int = 1) -> "RationalAngle":
        fr = _fold(Fraction(num, den))
        return RationalAngle(fr.numerator, fr.denominator)

    @property
    def frac(self) -> Fraction:
        return Fraction(self.num, self.den)

    def cos_float(self) -> float:
        return 2.0 * math.cos(math.pi * self.num / self.den)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"{self.num}/{self.den}*pi"


def _normalize_terms(raw: Mapping) -> Tuple[Tuple[Tuple[int, int], Fraction], ...]:
    acc: Dict[Tuple[int, int], Fraction] = {}
    for key, coeff in raw.items():
        c = Fraction(coeff)
        if c == 0:
            continue
        if isinstance(key, RationalAngle):
            ang = key
        elif isinstance(key, tuple):
            ang = RationalAngle.make(key[0], key[1])
        else:
            ang = RationalAngle.make(key)
        pair = (ang.num, ang.den)
        if pair == (1, 2):
            continue  # 2cos(pi/2) = 0 exactly; keep the representation slim
        acc[pair] = acc.get(pair, Fraction(0)) + c
    items = tuple(sorted((k, v) for k, v in acc.items() if v != 0))
    return items


class CosSum:
    """Immutable element of the cosine ring: sum of coeff * 2cos(pi*num/den).

    Not hashable on purpose: equal values can have different term dictionaries,
    so callers dedup through float buckets plus exact confirmation.
    """

    __slots__ = ("terms", "_float")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, raw: Mapping = ()):  # raw: {(num, den) | RationalAngle: coeff}
        terms = _normalize_terms(dict(raw) if raw else {})
        object.__setattr__(self, "terms", terms)
        f = 0.0
        for (num, den), c in terms:
            f += float(c) * 2.0 * math.cos(math.pi * num / den)
        object.__setattr__(self, "_float", f)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CosSum is immutable")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def rational(q: Rational) -> "CosSum":
        return CosSum({(0, 1): Fraction(q) / 2})

    @staticmethod
    def zero() -> "CosSum":
        return CosSum()

    # -- ring structure -------------------------------------------------------

    def _coerce(self, other) -> Optional["CosSum"]:
        if isinstance(other, CosSum):
            return other
        if isinstance(other, (int, Fraction)):
            return CosSum.rational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for k, c in o.terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return CosSum(acc)

    __radd__ = __add__

    def __neg__(self):
        return CosSum({k: -c for k, c in self.terms})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return CosSum({k: v * c for k, v in self.terms})
        if not isinstance(other, CosSum):
            return NotImplemented
        acc: Dict[Tuple[int, int], Fraction] = {}
        for (n1, d1), c1 in self.terms:
            a1 = Fraction(n1, d1)
            for (n2, d2), c2 in other.terms:
                a2 = Fraction(n2, d2)
                c = c1 * c2
                for ang in (a1 + a2, a1 - a2):
                    fr = _fold(ang)
                    key = (fr.numerator, fr.denominator)
                    acc[key] = acc.get(key, Fraction(0)) + c
        return CosSum(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = CosSum.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                raise ZeroDivisionError("CosSum division by zero")
            return CosSum({k: v / c for k, v in self.terms})
        if not isinstance(other, CosSum):
            return NotImplemented
        q = other.as_rational()
        if q is not None:
            return self / q
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- predicates and conversions -------------------------------------------

    def as_rational(self) -> Optional[Fraction]:
        """Fraction value if the stored representation is visibly rational."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (num, den), c = self.terms[0]
            if den == 1:
                return 2 * c if num == 0 else -2 * c
        return None

    def is_zero(self) -> bool:
        if not self.terms:
            return True
        # Cheap float separation.  A true zero evaluates to at most ~1e-13
        # times the coefficient mass, far below this scale-aware threshold.
        scale = sum(abs(float(c)) for _, c in self.terms)
        if abs(self._float) > 1e-9 * max(1.0, 2.0 * scale):
            return False
        return all(c == 0 for c in to_cyclotomic(self).coeffs)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.terms == o.terms:
            return True
        return (self - o).is_zero()

    def __float__(self) -> float:
        return self._float

    def float_value(self) -> float:
        return self._float

    def mp_value(self, dps: int = 50):
        """High-precision evaluation (mpmath real)."""
        with mpmath.workdps(dps):
            total = mpmath.mpf(0)
            for (num, den), c in self.terms:
                total += mpmath.mpf(c.numerator) / c.denominator * 2 * mpmath.cos(
                    mpmath.pi * num / den
                )
            return total

    def inverse(self) -> "CosSum":
        """Exact multiplicative inverse (the ring is a field on nonzero values)."""
        el = to_cyclotomic(self)
        if all(c == 0 for c in el.coeffs):
            raise ZeroDivisionError("CosSum division by zero")
        phi = [Fraction(c) for c in cyclotomic_poly(2 * el.level)]
        inv = _poly_inverse_mod(list(el.coeffs), phi)
        return _symmetrize(inv, el.level)

    def reduced(self) -> "CosSum":
        """Canonical representative via the cyclotomic normal form.

        Iterated arithmetic can pile up many cancelling terms with large
        coefficients; their float evaluation then drifts.  Reducing the
        power-basis embedding modulo the cyclotomic polynomial collapses
        the representation back to few small terms.
        """
        el = to_cyclotomic(self)
        return _symmetrize(el.coeffs, el.level)

    def __repr__(self) -> str:
        return f"CosSum({format_cos_sum(self)})"


# -- cyclotomic normal form ----------------------------------------------------


@dataclass(frozen=True, slots=True)
class CyclotomicElement:
    """Normal form: rational vector in the power basis of a primitive 2L-th
    root of unity, reduced modulo the 2L-th cyclotomic polynomial."""

    level: int  # L; the root of unity has order 2L
    coeffs: Tuple[Fraction, ...]  # length = deg Phi_{2L}


def _divisors(n: int) -> Iterable[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _poly_divmod_int(num: Sequence[int], den: Sequence[int]) -> Tuple[list, list]:
    """Long division of integer polynomials, den monic.  Coefficients ascending."""
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [], num
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Coefficients (ascending, monic, integer) of the n-th cyclotomic polynomial,
    obtained by dividing x^n - 1 by all lower-order cyclotomic factors."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_poly(d)))
            assert not rem
    return tuple(poly)


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def to_cyclotomic(a: CosSum) -> CyclotomicElement:
    """Embed at level L = lcm of denominators and reduce mod Phi_{2L}."""
    if not a.terms:
        return CyclotomicElement(1, (Fraction(0),))
    level = 1
    for (_, den), _ in a.terms:
        level = _lcm(level, den)
    n = 2 * level
    vec = [Fraction(0)] * n
    for (num, den), c in a.terms:
        k = num * (level // den)
        vec[k % n] += c
        vec[(n - k) % n] += c
    common = 1
    for c in vec:
        common = _lcm(common, c.denominator)
    ivec = [int(c * common) for c in vec]
    phi = list(cyclotomic_poly(n))
    _, rem = _poly_divmod_int(ivec, phi)
    deg = len(phi) - 1
    rem += [0] * (deg - len(rem))
    return CyclotomicElement(level, tuple(Fraction(r, common) for r in rem))


def _symmetrize(coeffs: Sequence[Fraction], level: int) -> CosSum:
    """Rebuild a CosSum from a power-basis vector known to represent a real value:
    sum c_k zeta^k = sum (c_k/2) * 2cos(pi*k/level)."""
    acc: Dict[Tuple[int, int], Fraction] = {}
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        fr = _fold(Fraction(k, level))
        key = (fr.numerator, fr.denominator)
        acc[key] = acc.get(key, Fraction(0)) + c / 2
    return CosSum(acc)


def _poly_mul_mod(a, b, phi):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _poly_rem_frac(out, phi)


def _poly_rem_frac(num, phi):
    num = list(num)
    dn = len(phi) - 1
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * phi[j]
    del num[dn:]
    while num and num[-1] == 0:
        num.pop()
    return num


def _poly_inverse_mod(a, phi):
    """Extended Euclid in Q[x]: inverse of a modulo phi (phi irreducible)."""
    r0, r1 = [Fraction(c) for c in phi], _poly_rem_frac(a, phi)
    s0, s1 = [], [Fraction(1)]
    while r1:
        if len(r1) == 1:  # unit reached
            c = r1[0]
            return [x / c for x in s1]
        q, r = _poly_divmod_frac(r0, r1)
        r0, r1 = r1, r
        qs = _poly_mul_plain(q, s1)
        new_s = _poly_sub(s0, qs)
        s0, s1 = s1, new_s
    raise ZeroDivisionError("not invertible modulo the cyclotomic polynomial")


def _poly_divmod_frac(num, den):
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    quot = [Fraction(0)] * max(len(num) - dn, 0)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _poly_mul_plain(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    while out and out[-1] == 0:
        out.pop()
    return out


# -- module-level operations (the public vocabulary) ---------------------------


def cos_value(r, den: int = None) -> CosSum:
    """The ring element 2cos(pi*r)."""
    if isinstance(r, RationalAngle):
        ang = r
    elif den is not None:
        ang = RationalAngle.make(r, den)
    else:
        ang = RationalAngle.make(Fraction(r))
    return CosSum({ang: Fraction(1)})


def from_rational(q: Rational) -> CosSum:
    return CosSum.rational(q)


def add(a: CosSum, b: CosSum) -> CosSum:
    return a + b


def neg(a: CosSum) -> CosSum:
    return -a


def mul(a: CosSum, b: CosSum) -> CosSum:
    return a * b


def is_zero(a: CosSum) -> bool:
    return a.is_zero()


def float_of(a: CosSum) -> float:
    return a.float_value()


def match_dictionary(v: float, floats: Sequence[float], eps: float = 1e-8) -> Optional[int]:
    """Index of the unique entry within eps of v in an ascending float list."""
    i = bisect.bisect_left(floats, v)
    best = None
    for j in (i - 1, i):
        if 0 <= j < len(floats) and abs(floats[j] - v) <= eps:
            if best is not None:
                raise ValueError("dictionary entries closer than 2*eps")
            best = j
    return best


def compare(a: CosSum, b: CosSum) -> int:
    """Total order: float first, exact sign on ties.  Returns -1/0/1."""
    d = a - b
    fd = d.float_value()
    if abs(fd) > ORDER_TIE_EPS:
        return -1 if fd < 0 else 1
    if d.is_zero():
        return 0
    for dps in (60, 120, 240):
        v = d.mp_value(dps)
        if abs(v) > mpmath.mpf(10) ** (-(dps - 10)):
            return -1 if v < 0 else 1
    raise ArithmeticError("could not separate values at 240 digits")


def compare_tuples(a: Sequence[CosSum], b: Sequence[CosSum]) -> int:
    for x, y in zip(a, b):
        c = compare(x, y)
        if c:
            return c
    return (len(a) > len(b)) - (len(a) < len(b))


def format_cos_sum(a: CosSum) -> str:
    """Canonical human-readable form, e.g. '2cos(pi*1/5)-2cos(pi*2/5)+3/2'."""
    if not a.terms:
        return "0"
    parts = []
    for (num, den), c in a.terms:
        if (num, den) == (0, 1):
            val = 2 * c
            parts.append((f"{val}", val >= 0))
        elif (num, den) == (1, 1):
            val = -2 * c
            parts.append((f"{val}", val >= 0))
        else:
            if c == 1:
                body = f"2cos(pi*{num}/{den})"
            elif c == -1:
                body = f"-2cos(pi*{num}/{den})"
            else:
                body = f"{c}*2cos(pi*{num}/{den})"
            parts.append((body, not body.startswith("-")))
    out = ""
    for text, positive in parts:
        if out and positive:
            out += "+" + text
        else:
            out += text
    return out
