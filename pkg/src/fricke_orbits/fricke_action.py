"""The induced action of the three involutions on trace coordinates (X, Y, Z).

Each generator changes exactly one coordinate:

    x: X -> wX - X - Y*Z,   y: Y -> wY - Y - Z*X,   z: Z -> wZ - Z - X*Y,

where (wX, wY, wZ) are fixed surface parameters.  Orbits live on the cubic
surface X*Y*Z + X^2 + Y^2 + Z^2 - wX*X - wY*Y - wZ*Z + w4 = 4, and two
parameter triples related by coordinate permutations combined with even sign
flips (a K4 x S3 family of 24 transforms, w4 untouched) give equivalent orbit
structures.

The module also handles 2-colored suborbits: the subgraph generated by two of
the three involutions.  A finite one is either a simple cycle of 2N points or
a line of N points with a self-loop at each end, where N is the period of the
two-step recursion on the moving coordinate pair; for N > 1 the frozen
coordinate must equal 2cos(pi*n/N) with gcd(n, N) = 1.
"""

from __future__ import annotations

import itertools
import math

import mpmath

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .trig_field import CosSum, compare_tuples, cos_value, from_rational

Point3 = Tuple[CosSum, CosSum, CosSum]


class Omega(NamedTuple):
    wx: CosSum
    wy: CosSum
    wz: CosSum
    w4: CosSum


def _conv(v) -> CosSum:
    return v if isinstance(v, CosSum) else from_rational(v)


def make_point(x, y, z) -> Point3:
    return (_conv(x), _conv(y), _conv(z))


def make_omega(wx, wy, wz, w4) -> Omega:
    return Omega(_conv(wx), _conv(wy), _conv(wz), _conv(w4))


# colors are indexed 0=x, 1=y, 2=z throughout
COLORS = "xyz"


def _tame(v: CosSum) -> CosSum:
    # iterated moves multiply coordinates, so representations can swell
    # until their float evaluation drifts; collapse the big ones
    if len(v.terms) > 6 or any(
        abs(c.numerator) > 1024 or c.denominator > 1024 for _, c in v.terms
    ):
        return v.reduced()
    return v


def apply(g: str, p: Point3, w: Omega) -> Point3:
    X, Y, Z = p
    if g == "x":
        return (_tame(w.wx - X - Y * Z), Y, Z)
    if g == "y":
        return (X, _tame(w.wy - Y - Z * X), Z)
    if g == "z":
        return (X, Y, _tame(w.wz - Z - X * Y))
    raise ValueError(f"unknown generator {g!r}")


def fricke_residual(p: Point3, w: Omega) -> CosSum:
    X, Y, Z = p
    return (X * Y * Z + X * X + Y * Y + Z * Z
            - w.wx * X - w.wy * Y - w.wz * Z + w.w4 - 4)


def omega4_of(p: Point3, wx: CosSum, wy: CosSum, wz: CosSum) -> CosSum:
    """The unique w4 putting p on the surface with parameters (wx, wy, wz)."""
    X, Y, Z = p
    return (from_rational(4) - X * Y * Z - X * X - Y * Y - Z * Z
            + wx * X + wy * Y + wz * Z)


def points_equal(p: Point3, q: Point3) -> bool:
    return all((a - b).is_zero() for a, b in zip(p, q))


class PointSet:
    """Set of exact points with near-constant membership tests.

    Points are bucketed by a quantized float key; the +-1 neighbor buckets are
    probed too, so equal values with different term representations (whose
    floats differ in the last bits) still collide, and every candidate match
    is confirmed exactly.
    """

    _SCALE = float(1 << 20)

    def __init__(self) -> None:
        self._buckets: Dict[Tuple[int, int, int], List[int]] = {}
        self.points: List[Point3] = []

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def _qkey(cls, p: Point3) -> Tuple[int, int, int]:
        return tuple(int(math.floor(c.float_value() * cls._SCALE)) for c in p)

    def find(self, p: Point3) -> Optional[int]:
        kx, ky, kz = self._qkey(p)
        for dx, dy, dz in itertools.product((0, -1, 1), repeat=3):
            for idx in self._buckets.get((kx + dx, ky + dy, kz + dz), ()):
                if points_equal(p, self.points[idx]):
                    return idx
        return None

    def add(self, p: Point3) -> int:
        idx = len(self.points)
        self.points.append(p)
        self._buckets.setdefault(self._qkey(p), []).append(idx)
        return idx


# ---------------------------------------------------------------------------
# parameter equivalences: 6 permutations x 4 even sign patterns
# ---------------------------------------------------------------------------

_PERMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))

Equivalence = Tuple[Tuple[int, int, int], Tuple[int, int, int]]


def all_equivalences() -> Tuple[Equivalence, ...]:
    return tuple((perm, signs) for perm in _PERMS for signs in _SIGNS)


def equiv_transform(t: Equivalence, p: Point3, w: Omega) -> Tuple[Point3, Omega]:
    """Apply one of the 24 symmetries to a point and its parameters; w4 is
    invariant."""
    perm, signs = t
    new_p = tuple(p[perm[i]] * signs[i] for i in range(3))
    ws = (w.wx, w.wy, w.wz)
    new_w = tuple(ws[perm[i]] * signs[i] for i in range(3))
    return new_p, Omega(new_w[0], new_w[1], new_w[2], w.w4)


def _point_cmp(a, b) -> int:
    return compare_tuples(a, b)


def canonical_key(points: Sequence[Point3], w: Omega) -> Tuple[CosSum, ...]:
    """Lexicographically minimal image over the 24 equivalences of
    (w4, w triple, sorted point list).

    Two complete orbits are equivalent iff their keys compare equal under the
    exact total order.
    """
    best: Optional[Tuple[CosSum, ...]] = None
    ws = (w.wx, w.wy, w.wz)
    for perm, signs in all_equivalences():
        tw = [ws[perm[i]] * signs[i] for i in range(3)]
        tp = [tuple(p[perm[i]] * signs[i] for i in range(3)) for p in points]
        tp.sort(key=cmp_to_key(_point_cmp))
        flat: List[CosSum] = [w.w4] + tw
        for p in tp:
            flat.extend(p)
        cand = tuple(flat)
        if best is None or compare_tuples(cand, best) < 0:
            best = cand
    return best


def keys_equal(a: Sequence[CosSum], b: Sequence[CosSum]) -> bool:
    return len(a) == len(b) and compare_tuples(a, b) == 0


# ---------------------------------------------------------------------------
# 2-colored suborbits
# ---------------------------------------------------------------------------

PERIOD_CAP = 10082  # no finite suborbit of an in-range orbit is longer

_PAIRS = {"yz": (1, 2, 0), "xz": (0, 2, 1), "xy": (0, 1, 2)}


@dataclass(frozen=True)
class Suborbit:
    pair: str                 # the two moving colors, e.g. "yz"
    shape: str                # "cycle" or "line"
    points: Tuple[Point3, ...]
    length: int               # N: recursion period; cycle has 2N points, line N
    common: CosSum            # the frozen coordinate
    n_common: Optional[int]   # frozen = 2cos(pi*n_common/length) when length > 1


class Diverges(RuntimeError):
    """The suborbit (or orbit) is infinite or exceeds the search range."""


def cosine_angle(v: CosSum, max_den: int = PERIOD_CAP) -> Optional[Fraction]:
    """Return n/N in (0, 1) with v = 2cos(pi*n/N), or None.

    Candidate fractions come from the float arccos; each is screened at 60
    decimal digits and then confirmed exactly, so limited precision can only
    yield a None for a denominator far beyond any finite suborbit in range.
    """
    fv = v.float_value()
    if abs(fv) >= 2 - 1e-6:
        if (v - from_rational(2)).is_zero() or (v + from_rational(2)).is_zero():
            return None
    if abs(fv) >= 2:
        return None
    approx = math.acos(max(-1.0, min(1.0, fv / 2))) / math.pi
    seen = set()
    mpv = None
    for den in (max_den, 5040, 144, 24):
        if den > max_den:
            continue
        q = Fraction(approx).limit_denominator(den)
        if q in seen or not 0 < q < 1:
            continue
        seen.add(q)
        # cheap high-precision screen keeps wrong large-denominator
        # candidates away from the exact cyclotomic check
        if mpv is None:
            mpv = v.mp_value(60)
        with mpmath.workdps(60):
            cand = 2 * mpmath.cos(mpmath.pi * q.numerator / q.denominator)
            if abs(mpv - cand) > mpmath.mpf(10) ** -50:
                continue
        if (v - cos_value(q.numerator, q.denominator)).is_zero():
            return q
    return None


def _walk(p: Point3, w: Omega, colors: Tuple[str, str], cap: int) -> List[Point3]:
    """All points reachable from p using the two given colors."""
    ps = PointSet()
    ps.add(p)
    frontier = [p]
    while frontier:
        nxt = []
        for q in frontier:
            for c in colors:
                img = apply(c, q, w)
                if ps.find(img) is None:
                    if len(ps) >= cap:
                        raise Diverges(f"suborbit exceeded {cap} points")
                    ps.add(img)
                    nxt.append(img)
        frontier = nxt
    return ps.points


def suborbit(p: Point3, w: Omega, pair: str = "yz") -> Suborbit:
    i1, i2, ifix = _PAIRS[pair]
    c1, c2 = COLORS[i1], COLORS[i2]
    common = p[ifix]

    q1 = apply(c1, p, w)
    q2 = apply(c2, p, w)
    if points_equal(q1, p) and points_equal(q2, p):
        # a point fixed by both colors; no constraint on the frozen coordinate
        return Suborbit(pair, "line", (p,), 1, common, None)

    frac = cosine_angle(common)
    if frac is None:
        raise Diverges(
            f"{pair}-suborbit is infinite: frozen coordinate is not of the "
            "form 2cos(pi*n/N) in range")
    n, length = frac.numerator, frac.denominator
    pts = _walk(p, w, (c1, c2), cap=2 * length + 2)

    loops = []  # (point index, color) of self-loops
    for idx, q in enumerate(pts):
        for c in (c1, c2):
            if points_equal(apply(c, q, w), q):
                loops.append((idx, c))

    if not loops:
        shape = "cycle"
        assert len(pts) == 2 * length, (len(pts), length)
        ordered = _order_walk(pts, w, pts[0], c1, c2)
    else:
        shape = "line"
        assert len(loops) == 2 and len(pts) == length, (loops, len(pts), length)
        start_idx, start_loop_color = min(loops)
        start_color = c2 if start_loop_color == c1 else c1
        ordered = _order_walk(pts, w, pts[start_idx], start_color,
                              start_loop_color)
    return Suborbit(pair, shape, ordered, length, common, n)


def _order_walk(pts, w, start, first_color, second_color):
    """List the suborbit points in alternating-walk order, each once."""
    ordered = [start]
    cur = start
    col, other = first_color, second_color
    guard = 0
    while len(ordered) < len(pts):
        guard += 1
        assert guard <= 4 * len(pts) + 4
        img = apply(col, cur, w)
        if points_equal(img, cur):  # bounced off a line end
            col, other = other, col
            continue
        if not any(points_equal(img, q) for q in ordered):
            ordered.append(img)
        cur = img
        col, other = other, col
    return tuple(ordered)


def double_step(vals: Tuple[CosSum, CosSum], fixed: CosSum,
                w1: CosSum, w2: CosSum) -> Tuple[CosSum, CosSum]:
    """One period step of the moving pair: first color then second."""
    a, b = vals
    a2 = w1 - a - fixed * b
    b2 = w2 - b - fixed * a2
    return a2, b2


def closed_form(fixed: CosSum, w1: CosSum, w2: CosSum,
                a0: CosSum, b0: CosSum, k: int) -> Tuple[CosSum, CosSum]:
    """Exact k-th iterate of double_step from (a0, b0).

    Generic branch (fixed != +-2): the step is a rotation by an angle lam
    with fixed = 2cos(lam/2), and the ratios sin(m*lam/2)/sin(lam/2) are
    Chebyshev polynomials in the frozen coordinate, so everything stays in
    the ring.  Degenerate branch (fixed = +-2): the iterate is polynomial
    in k.
    """
    f = fixed
    two = from_rational(2)
    if (f - two).is_zero() or (f + two).is_zero():
        sign = 1 if (f - two).is_zero() else -1
        wp_a = (w1 + sign * w2) * Fraction(1, 8)
        wm_a = w1 - sign * w2
        wp_b = (w2 + sign * w1) * Fraction(1, 8)
        wm_b = w2 - sign * w1
        part_a = wp_a - wm_a * Fraction(k, 2) + wm_a * (k * k)
        part_b = wp_b + wm_b * Fraction(k, 2) + wm_b * (k * k)
        alpha = a0 - wp_a
        beta = b0 - wp_b
        ak = alpha * (1 - 2 * k) + beta * (-sign * 2 * k) + part_a
        bk = alpha * (sign * 2 * k) + beta * (1 + 2 * k) + part_b
        return ak, bk

    denom = from_rational(4) - f * f
    ca = (w1 * 2 - f * w2) / denom
    cb = (w2 * 2 - f * w1) / denom
    alpha = a0 - ca
    beta = b0 - cb

    # s(m) = sin(m*lam/2)/sin(lam/2) as a Chebyshev polynomial in f
    cheb = {0: from_rational(0), 1: from_rational(1)}

    def s(m: int) -> CosSum:
        neg = m < 0
        m = abs(m)
        if m not in cheb:
            for j in range(max(cheb) + 1, m + 1):
                cheb[j] = f * cheb[j - 1] - cheb[j - 2]
        return -cheb[m] if neg else cheb[m]

    ak = s(1 - 2 * k) * alpha - s(2 * k) * beta + ca
    bk = s(2 * k) * alpha + s(1 + 2 * k) * beta + cb
    return ak, bk


def suborbit_parity_checks(sub: Suborbit, w: Omega) -> bool:
    """Exact parity identities tying together the moving coordinate sequences.

    With p+- = (w1 +- w2)/(2 +- fixed):
      N even, n odd:  a_k + a_{k+N/2} = p+ + p-,  b_k + b_{k+N/2} = p+ - p-
      N odd,  n even: a_k + b_{k+(N-1)/2} = p+
      N odd,  n odd:  a_k - b_{k+(N-1)/2} = p-
    """
    N, n = sub.length, sub.n_common
    if N <= 1:
        return True
    i1, i2, _ = _PAIRS[sub.pair]
    ws = (w.wx, w.wy, w.wz)
    w1, w2 = ws[i1], ws[i2]
    f = sub.common
    start = sub.points[0]
    seq = [(start[i1], start[i2])]
    for _ in range(2 * N):
        seq.append(double_step(seq[-1], f, w1, w2))

    two = from_rational(2)
    p_plus = (w1 + w2) / (two + f)
    p_minus = (w1 - w2) / (two - f)
    for k in range(N):
        ak, bk = seq[k]
        if N % 2 == 0:
            a2, b2 = seq[k + N // 2]
            if not (ak + a2 - p_plus - p_minus).is_zero():
                return False
            if not (bk + b2 - p_plus + p_minus).is_zero():
                return False
        elif n % 2 == 0:
            if not (ak + seq[k + (N - 1) // 2][1] - p_plus).is_zero():
                return False
        else:
            if not (ak - seq[k + (N - 1) // 2][1] - p_minus).is_zero():
                return False
    return True
