"""Rational vanishing sums of cosines, sum_j cos(2*pi*phi_j) = 0, for n <= 6.

A tuple is irreducible when no proper nonempty subset also sums to zero.
Tuples are considered up to permutations, per-coordinate phi -> 1-phi, and the
simultaneous change phi_j -> 1/2-phi_j; the canonical representative folds
every coordinate into [0, 1/2], sorts, and takes the lexicographic minimum of
the tuple and its folded simultaneous image.

Up to this equivalence the irreducible tuples fall into four infinite
one-parameter families (pairs II_phi; triples III_phi; five- and six-term
progressions V_phi, VI_phi built on fifths) plus finitely many sporadic
tuples: one triple III_1, four quadruples IV, seven 5-tuples (V_1, V_2, V_3)
and thirteen 6-tuples (VI_1 .. VI_5).

The companion problem sum_j exp(2*pi*i*phi_j) = 0 is handled up to
permutations and a common rational shift; its irreducible solutions are the
full p-th root patterns for p = 2, 3, 5 and one 6-term family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import mpmath

from .trig_field import CosSum, cos_value, from_rational

Phi = Tuple[Fraction, ...]

FAMILY_TAGS = ("II_phi", "III_phi", "III_1", "IV", "V_1", "V_2", "V_3",
               "V_phi", "VI_1", "VI_2", "VI_3", "VI_4", "VI_5", "VI_phi",
               "other")


class BudgetExceeded(RuntimeError):
    """Enumeration visited more candidates than the configured limit."""


@dataclass(frozen=True)
class PhiTuple:
    phis: Phi
    irreducible: bool
    family: str

    @property
    def n(self) -> int:
        return len(self.phis)


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def fold_half(q) -> Fraction:
    """Reduce an angle to [0, 1/2] using cos(2*pi*q) = cos(2*pi*(1-q))."""
    q = _frac(q) % 1
    return q if 2 * q <= 1 else 1 - q


def canonicalize(t: Iterable) -> Phi:
    folded = tuple(sorted(fold_half(q) for q in t))
    flipped = tuple(sorted(fold_half(Fraction(1, 2) - q) for q in folded))
    return min(folded, flipped)


def cos2pi_sum(t: Iterable) -> CosSum:
    """Exact value of sum_j cos(2*pi*phi_j) in the cosine ring."""
    acc = from_rational(0)
    for q in t:
        q = _frac(q) % 1
        acc = acc + cos_value(2 * q.numerator, q.denominator) * Fraction(1, 2)
    return acc


def _certainly_nonzero(v: CosSum, fast_tol: float = 1e-7) -> bool:
    """Sound nonzero certificate: cheap float bound, then 60-digit bound.

    Both evaluation errors are far below the thresholds for sums of at most
    a few dozen bounded terms, so True is trustworthy; False means "decide
    exactly".
    """
    if abs(v.float_value()) > fast_tol:
        return True
    return abs(v.mp_value(60)) > mpmath.mpf("1e-40")


def is_vanishing(t: Iterable) -> bool:
    t = [_frac(q) for q in t]
    s = cos2pi_sum(t)
    if _certainly_nonzero(s):
        return False
    return s.is_zero()


def is_irreducible(t: Iterable) -> bool:
    """No proper nonempty subset vanishes (the tuple itself must vanish)."""
    t = [_frac(q) for q in t]
    n = len(t)
    vals = [math.cos(2 * math.pi * float(q)) for q in t]
    # a subset vanishes iff its complement does, so half the masks suffice
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size > n // 2 or (2 * size == n and not mask & 1):
            continue
        if size == n:
            continue
        fsum = sum(vals[i] for i in range(n) if mask >> i & 1)
        if abs(fsum) > 1e-7:
            continue
        sub = [t[i] for i in range(n) if mask >> i & 1]
        s = cos2pi_sum(sub)
        if not _certainly_nonzero(s) and s.is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# family membership
# ---------------------------------------------------------------------------

def _f(a, b) -> Fraction:
    return Fraction(a, b)


_SPORADIC: Dict[str, List[Tuple[Fraction, ...]]] = {
    "III_1": [(_f(1, 10), _f(3, 10), _f(1, 3))],
    "IV": [
        (_f(0, 1), _f(1, 5), _f(1, 3), _f(2, 5)),
        (_f(1, 30), _f(1, 6), _f(11, 30), _f(2, 5)),
        (_f(1, 15), _f(4, 15), _f(3, 10), _f(1, 3)),
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(1, 6)),
    ],
    "V_1": [
        (_f(0, 1), _f(1, 30), _f(1, 3), _f(11, 30), _f(2, 5)),
        (_f(0, 1), _f(1, 5), _f(7, 30), _f(1, 3), _f(13, 30)),
    ],
    "V_2": [
        (_f(L, 7) + _f(1, 6), _f(L, 7) - _f(1, 6), _f(2 * L, 7),
         _f(3 * L, 7), _f(1, 6))
        for L in (1, 2, 3)
    ],
    "V_3": [
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(0, 1), _f(1, 3)),
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(1, 10), _f(3, 10)),
    ],
    "VI_1": [(_f(1, 11), _f(2, 11), _f(3, 11), _f(4, 11), _f(5, 11),
              _f(1, 6))],
    "VI_2": [
        (_f(L, 7) + _f(1, 6), _f(L, 7) - _f(1, 6), _f(2 * L, 7),
         _f(3 * L, 7), _f(0, 1), _f(1, 3))
        for L in (1, 2, 3)
    ],
    "VI_3": [
        (_f(L, 7) + _f(1, 6), _f(L, 7) - _f(1, 6), _f(2 * L, 7),
         _f(3 * L, 7), _f(1, 10), _f(3, 10))
        for L in (1, 2, 3)
    ],
    "VI_4": [
        (_f(L, 7) + _f(1, 6), _f(L, 7) - _f(1, 6), _f(2 * L, 7) + _f(1, 6),
         _f(2 * L, 7) - _f(1, 6), _f(3 * L, 7), _f(1, 6))
        for L in (1, 2, 3)
    ],
    "VI_5": [
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(0, 1), _f(1, 5), _f(2, 5)),
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(1, 15), _f(4, 15), _f(3, 10)),
        (_f(1, 7), _f(2, 7), _f(3, 7), _f(1, 10), _f(2, 15), _f(7, 15)),
    ],
}

_SPORADIC_CANONICAL: Dict[str, Set[Phi]] = {
    tag: {canonicalize(t) for t in rows} for tag, rows in _SPORADIC.items()
}

_SHIFT_OFFSETS: Dict[str, Tuple[Fraction, ...]] = {
    "III_phi": (_f(0, 1), _f(1, 3), _f(-1, 3)),
    "V_phi": (_f(0, 1), _f(1, 5), _f(2, 5), _f(3, 5), _f(4, 5)),
    "VI_phi": (_f(1, 6), _f(-1, 6), _f(1, 5), _f(2, 5), _f(3, 5), _f(4, 5)),
}


def _matches_shift_family(t: Phi, offsets: Tuple[Fraction, ...]) -> bool:
    half = Fraction(1, 2)
    for ti in set(t):
        for o in set(offsets):
            for phi in (ti - o, 1 - ti - o, half - ti - o, half + ti - o):
                if canonicalize(phi + off for off in offsets) == t:
                    return True
    return False


def family_tag(t: Iterable) -> str:
    """Classify a canonical irreducible vanishing tuple."""
    t = canonicalize(t)
    n = len(t)
    if n == 2:
        return "II_phi" if t[0] + t[1] == Fraction(1, 2) else "other"
    if n == 3:
        if t in _SPORADIC_CANONICAL["III_1"]:
            return "III_1"
        if _matches_shift_family(t, _SHIFT_OFFSETS["III_phi"]):
            return "III_phi"
        return "other"
    if n == 4:
        return "IV" if t in _SPORADIC_CANONICAL["IV"] else "other"
    if n == 5:
        for tag in ("V_1", "V_2", "V_3"):
            if t in _SPORADIC_CANONICAL[tag]:
                return tag
        if _matches_shift_family(t, _SHIFT_OFFSETS["V_phi"]):
            return "V_phi"
        return "other"
    if n == 6:
        for tag in ("VI_1", "VI_2", "VI_3", "VI_4", "VI_5"):
            if t in _SPORADIC_CANONICAL[tag]:
                return tag
        if _matches_shift_family(t, _SHIFT_OFFSETS["VI_phi"]):
            return "VI_phi"
        return "other"
    return "other"


def classify(t: Iterable) -> PhiTuple:
    c = canonicalize(t)
    if not is_vanishing(c):
        return PhiTuple(c, False, "other")
    irr = is_irreducible(c)
    return PhiTuple(c, irr, family_tag(c) if irr else "other")


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

DIVISORS_OF_60 = (1, 2, 3, 4, 5, 6, 10, 12, 15, 20, 30, 60)
DIVISORS_OF_30 = (1, 2, 3, 5, 6, 10, 15, 30)

DenSpec = Union[int, Iterable[int]]


def _allowed_dens(den_bound: DenSpec) -> List[int]:
    if isinstance(den_bound, int):
        return list(range(1, den_bound + 1))
    return sorted(set(int(d) for d in den_bound))


def build_values(den_bound: DenSpec, upper=Fraction(1, 2)) -> List[Fraction]:
    """All reduced fractions in [0, upper] with an allowed denominator."""
    dens = set(_allowed_dens(den_bound))
    out = {Fraction(0)} if 1 in dens else set()
    for d in dens:
        for a in range(1, d + 1):
            q = Fraction(a, d)
            if q <= upper and q.denominator in dens:
                out.add(q)
    return sorted(out)


_TOL = 1e-9


def enumerate_vanishing(n: int, den_bound: DenSpec,
                        budget: int = 50_000_000) -> List[PhiTuple]:
    """All canonical irreducible vanishing n-tuples over the given
    denominators, in deterministic (sorted) order.

    Candidates come from a pruned search over sorted tuples with float
    partial sums; every survivor is confirmed exactly.
    """
    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6")
    vals = build_values(den_bound)
    m = len(vals)
    cosv = [math.cos(2 * math.pi * float(q)) for q in vals]  # descending
    nodes = 0
    found: Dict[Phi, PhiTuple] = {}

    def confirm(idx: Sequence[int]) -> None:
        t = [vals[i] for i in idx]
        # reducibility first: its subset checks stay at small denominator
        # levels, while a full-sum exact check on a reducible mixed-
        # denominator tuple could be needlessly expensive
        if not is_irreducible(t):
            return
        s = cos2pi_sum(t)
        if _certainly_nonzero(s) or not s.is_zero():
            return
        c = canonicalize(t)
        if c not in found:
            found[c] = PhiTuple(c, True, family_tag(c))

    def last_level(start: int, fsum: float, prefix: List[int]) -> None:
        target = -fsum
        # cosv is descending; find the window within tolerance
        lo, hi = start, m
        while lo < hi:  # first index with cosv < target + TOL ... scan window
            mid = (lo + hi) // 2
            if cosv[mid] > target + _TOL:
                lo = mid + 1
            else:
                hi = mid
        i = lo
        while i < m and cosv[i] >= target - _TOL:
            confirm(prefix + [i])
            i += 1

    def two_level(start: int, fsum: float, prefix: List[int]) -> None:
        nonlocal nodes
        lo, hi = start, m - 1
        while lo <= hi:
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"more than {budget} candidates")
            t = fsum + cosv[lo] + cosv[hi]
            if t > _TOL:
                lo += 1
            elif t < -_TOL:
                hi -= 1
            else:
                # collect the whole tolerance plateau below hi for this lo
                j = hi
                while j >= lo and abs(fsum + cosv[lo] + cosv[j]) <= _TOL:
                    confirm(prefix + [lo, j])
                    j -= 1
                lo += 1

    def rec(start: int, depth: int, fsum: float, prefix: List[int]) -> None:
        nonlocal nodes
        remaining = n - depth
        if remaining == 1:
            last_level(start, fsum, prefix)
            return
        if remaining == 2:
            two_level(start, fsum, prefix)
            return
        # the smallest admissible cosine: all remaining values are <= cosv[i],
        # so feasibility needs fsum + remaining*cosv[i] >= -TOL eventually and
        # fsum + cosv[i] - (remaining-1) <= TOL
        lo, hi = start, m
        while lo < hi:
            mid = (lo + hi) // 2
            if fsum + cosv[mid] - (remaining - 1) > _TOL:
                lo = mid + 1
            else:
                hi = mid
        for i in range(lo, m):
            c = cosv[i]
            if fsum + c + (remaining - 1) * c < -_TOL:
                break
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"more than {budget} candidates")
            prefix.append(i)
            rec(i, depth + 1, fsum + c, prefix)
            prefix.pop()

    rec(0, 0, 0.0, [])
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# vanishing sums of roots of unity
# ---------------------------------------------------------------------------

def canonicalize_unity(t: Iterable) -> Phi:
    """Lexicographically minimal rotation: subtract one element from all,
    reduce mod 1 and sort; minimize over the choice of element."""
    base = [(_frac(q)) % 1 for q in t]
    best: Optional[Phi] = None
    for ref in set(base):
        cand = tuple(sorted((q - ref) % 1 for q in base))
        if best is None or cand < best:
            best = cand
    return best


def unity_sum(t: Iterable) -> Tuple[CosSum, CosSum]:
    """Exact (real, imaginary) parts of sum_j exp(2*pi*i*phi_j)."""
    re = cos2pi_sum(t)
    # sin(2*pi*q) = cos(2*pi*(1/4 - q))
    im = cos2pi_sum(Fraction(1, 4) - _frac(q) for q in t)
    return re, im


def is_vanishing_unity(t: Iterable) -> bool:
    re, im = unity_sum(t)
    for part in (re, im):
        if _certainly_nonzero(part):
            return False
    return re.is_zero() and im.is_zero()


def _unity_irreducible(t: Sequence[Fraction]) -> bool:
    n = len(t)
    vec = [(math.cos(2 * math.pi * float(q)), math.sin(2 * math.pi * float(q)))
           for q in t]
    for mask in range(1, 1 << n):
        size = bin(mask).count("1")
        if size > n // 2 or (2 * size == n and not mask & 1) or size == n:
            continue
        sx = sum(vec[i][0] for i in range(n) if mask >> i & 1)
        sy = sum(vec[i][1] for i in range(n) if mask >> i & 1)
        if sx * sx + sy * sy > 1e-14:
            continue
        sub = [t[i] for i in range(n) if mask >> i & 1]
        if is_vanishing_unity(sub):
            return False
    return True


def enumerate_unity_sums(n: int, den_bound: DenSpec,
                         budget: int = 50_000_000) -> List[Phi]:
    """Canonical irreducible vanishing sums of n roots of unity.

    Rotation lets the first coordinate be 0; the rest are enumerated in
    sorted order over [0, 1) with vector-norm pruning.
    """
    if not 2 <= n <= 6:
        raise ValueError("n must be between 2 and 6")
    vals = build_values(den_bound, upper=Fraction(1))
    vals = [q for q in vals if q < 1]
    m = len(vals)
    cosv = [math.cos(2 * math.pi * float(q)) for q in vals]
    sinv = [math.sin(2 * math.pi * float(q)) for q in vals]
    angle_of = {q: i for i, q in enumerate(vals)}
    nodes = 0
    found: Set[Phi] = set()

    def confirm(phis: Sequence[Fraction]) -> None:
        t = [Fraction(0)] + list(phis)
        if not _unity_irreducible(t):
            return
        if not is_vanishing_unity(t):
            return
        found.add(canonicalize_unity(t))

    def rec(start: int, depth: int, sx: float, sy: float,
            prefix: List[Fraction]) -> None:
        nonlocal nodes
        remaining = n - 1 - depth
        norm = math.hypot(sx, sy)
        if norm > remaining + _TOL:
            return
        if remaining == 0:
            if norm <= _TOL:
                confirm(prefix)
            return
        if remaining == 1:
            if abs(norm - 1) > _TOL:
                return
            theta = math.atan2(-sy, -sx) / (2 * math.pi) % 1
            cand = Fraction(theta).limit_denominator(
                max(q.denominator for q in vals))
            i = angle_of.get(cand % 1)
            if i is not None and i >= start:
                nodes += 1
                confirm(prefix + [vals[i]])
            return
        for i in range(start, m):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"more than {budget} candidates")
            prefix.append(vals[i])
            rec(i, depth + 1, sx + cosv[i], sy + sinv[i], prefix)
            prefix.pop()

    rec(0, 0, 1.0, 0.0, [])  # the fixed first root contributes (1, 0)
    return sorted(found)


def phi_tuple_json(pt: PhiTuple) -> Dict[str, object]:
    return {
        "n": pt.n,
        "phis": [f"{q.numerator}/{q.denominator}" for q in pt.phis],
        "family": pt.family,
    }
