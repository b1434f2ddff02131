"""Exhaustive enumeration of finite orbits with bounded coordinate values.

A finite orbit that is neither a one-parameter family member nor of
Cayley type contains a good generating configuration: a point fixed by
at most one of the three coordinate involutions, together with its three
images, at least two of them also good.  Coordinates of good points in
such orbits take values in small explicit dictionaries of 2*cos(pi*n/N)
with bounded N.  Enumerating, up to the 24 parameter symmetries, every
way to choose the configuration coordinates from the dictionaries splits
into four arenas (by which coordinate values coincide and whether one
image is doubly fixed), giving roughly 1.2e8 seeds in total.

Each seed is closed by repeatedly resolving missing neighbors until the
graph closes, a value outside every admissible extension appears, or a
size cap proves divergence.  The hot scan runs in floating point
(_kernels); every surviving seed is then re-derived and closed again in
exact arithmetic, deduplicated up to the 24 symmetries, and verified
point by point on the surface before being reported.
"""

from __future__ import annotations

import math
import os
import time
from bisect import bisect_left
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels
from .fricke_action import (
    Omega,
    Point3,
    PointSet,
    all_equivalences,
    apply,
    canonical_key,
    equiv_transform,
    fricke_residual,
    keys_equal,
    make_omega,
    omega4_of,
    points_equal,
)
from .trig_field import (
    CosSum,
    compare_tuples,
    cos_value,
    from_rational,
    match_dictionary,
)

__all__ = [
    "CapError",
    "DictEntry",
    "Dictionaries",
    "GenConfig",
    "OrbitRecord",
    "SearchResult",
    "build_dictionaries",
    "cayley_orbit",
    "class_counter",
    "classify_special",
    "close_orbit",
    "decode_config",
    "enumerate_class",
    "full_search",
    "get_dictionaries",
    "get_search_tables",
    "golden_match",
    "verify_record",
]

EPS = 1e-8

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# dictionaries of admissible good-coordinate values


@dataclass(frozen=True)
class DictEntry:
    """One admissible coordinate value 2*cos(pi*angle)."""

    angle: Fraction
    value: CosSum
    fval: float


@dataclass(frozen=True)
class Dictionaries:
    """The four nested value dictionaries.

    s1 applies when the two defining parameters of a two-color suborbit
    have distinct squares, s2 when they are equal and nonzero, s3 when
    both vanish but the orbit parameters do not all vanish, and s4 is
    the union used whenever the case is not known in advance.
    """

    s1: Tuple[DictEntry, ...]
    s2: Tuple[DictEntry, ...]
    s3: Tuple[DictEntry, ...]
    s4: Tuple[DictEntry, ...]
    min_gap: float

    def floats(self, which: str) -> List[float]:
        return [e.fval for e in getattr(self, which)]


def _entries(angles) -> Tuple[DictEntry, ...]:
    ents = [DictEntry(a, cos_value(a), 2.0 * math.cos(math.pi * a)) for a in sorted(set(angles))]
    ents.sort(key=lambda e: e.fval)
    return tuple(ents)


def build_dictionaries() -> Dictionaries:
    def coprime(limit) -> List[Fraction]:
        return [
            Fraction(n, N)
            for N in range(2, limit + 1)
            for n in range(1, N)
            if math.gcd(n, N) == 1
        ]

    a1 = coprime(10)
    extra = [
        Fraction(n, N)
        for N in (11, 15, 21)
        for n in range(1, N, 2)
        if math.gcd(n, N) == 1
    ]
    a2 = a1 + extra
    a3 = coprime(15)
    a4 = a3 + [Fraction(n, 21) for n in range(1, 21) if math.gcd(n, 21) == 1]

    s1, s2, s3, s4 = _entries(a1), _entries(a2), _entries(a3), _entries(a4)
    if (len(s1), len(s2), len(s3), len(s4)) != (31, 46, 71, 83):
        raise AssertionError("dictionary cardinalities changed")
    gaps = [b.fval - a.fval for a, b in zip(s4, s4[1:])]
    min_gap = min(gaps)
    if min_gap <= 1e-3:
        raise AssertionError("dictionary values too close for float matching")
    return Dictionaries(s1, s2, s3, s4, min_gap)


_DICTS: Optional[Dictionaries] = None


def get_dictionaries() -> Dictionaries:
    global _DICTS
    if _DICTS is None:
        _DICTS = build_dictionaries()
    return _DICTS


# ---------------------------------------------------------------------------
# configuration arenas


@dataclass(frozen=True)
class SearchTables:
    """Exact index tables plus their float mirror used by the kernels."""

    dicts: Dictionaries
    kernel: _kernels.ScanTables
    tri1: Tuple[Tuple[int, int, int], ...]
    pair2: Tuple[Tuple[int, int], ...]
    pair3: Tuple[Tuple[int, int], ...]
    tri4: Tuple[Tuple[int, int, int], ...]


def _sorted_triples(positions: Sequence[int]) -> List[Tuple[int, int, int]]:
    out = []
    m = len(positions)
    for i in range(m):
        for j in range(i, m):
            for k in range(j, m):
                out.append((positions[i], positions[j], positions[k]))
    return out


def build_search_tables(d: Optional[Dictionaries] = None) -> SearchTables:
    d = d or get_dictionaries()
    s1, s4 = d.s1, d.s4
    s1f = np.array([e.fval for e in s1])
    s4f = np.array([e.fval for e in s4])

    # class 1: the seed point ranges over sorted nonnegative triples and,
    # mirrored, sorted nonpositive ones; primes range over all of s1
    nn1 = [i for i, e in enumerate(s1) if e.angle <= _HALF]
    np1 = [i for i, e in enumerate(s1) if e.angle >= _HALF][::-1]
    zero1 = nn1[0]
    assert len(nn1) == 16 and np1[0] == zero1
    tri1 = _sorted_triples(nn1) + _sorted_triples(np1)
    assert len(tri1) == 1632
    # the all-zero seed appears in both branches; process it once
    skip1 = 816 * 31 ** 3 + zero1 * (961 + 31 + 1)

    # class 2: one image is doubly fixed; seed has 0 <= Y <= Z, Z > 0
    pos4 = [i for i, e in enumerate(s4) if e.angle < _HALF]
    zero4 = next(i for i, e in enumerate(s4) if e.angle == _HALF)
    assert len(pos4) == 41
    pair2 = []
    for rank, iz in enumerate(pos4):
        for iy in [zero4] + pos4[: rank + 1]:
            pair2.append((iy, iz))
    assert len(pair2) == 902

    # class 3: two parameters coincide; seed has |Y| <= Z with Z, Y in s1
    pair3 = []
    for iz in nn1:
        az = s1[iz].angle
        for iy in range(31):
            ay = s1[iy].angle
            if min(ay, 1 - ay) >= az:
                pair3.append((iy, iz))
    assert len(pair3) == 256

    # class 4: all three parameters coincide; sorted seed triples over s4
    tri4 = _sorted_triples(list(range(83)))
    assert len(tri4) == math.comb(85, 3)

    kt = _kernels.ScanTables(
        s1=s1f,
        s4=s4f,
        c1x=np.array([s1f[t[0]] for t in tri1]),
        c1y=np.array([s1f[t[1]] for t in tri1]),
        c1z=np.array([s1f[t[2]] for t in tri1]),
        skip1=skip1,
        p2y=np.array([s4f[p[0]] for p in pair2]),
        p2z=np.array([s4f[p[1]] for p in pair2]),
        p3y=np.array([s1f[p[0]] for p in pair3]),
        p3z=np.array([s1f[p[1]] for p in pair3]),
        c4x=np.array([s4f[t[0]] for t in tri4]),
        c4y=np.array([s4f[t[1]] for t in tri4]),
        c4z=np.array([s4f[t[2]] for t in tri4]),
    )
    return SearchTables(d, kt, tuple(tri1), tuple(pair2), tuple(pair3), tuple(tri4))


_TABLES: Optional[SearchTables] = None


def get_search_tables() -> SearchTables:
    global _TABLES
    if _TABLES is None:
        _TABLES = build_search_tables()
    return _TABLES


def class_counter(cls: int) -> int:
    """Number of configurations the scan of one arena processes."""

    if cls == 1:
        return 1632 * 31 ** 3 - 1
    if cls == 2:
        return 902 * 83 * 83
    if cls == 3:
        return 256 * 31 * 83 * 83
    if cls == 4:
        return math.comb(85, 3) * 83
    raise ValueError("class must be 1..4")


@dataclass(frozen=True)
class GenConfig:
    """One decoded configuration: seed point, parameters, image values."""

    cls: int
    index: int
    point: Point3
    omega: Omega
    primes: Tuple[CosSum, CosSum, CosSum]


def decode_config(cls: int, index: int, t: Optional[SearchTables] = None) -> GenConfig:
    t = t or get_search_tables()
    s1, s4 = t.dicts.s1, t.dicts.s4
    if cls == 1:
        ti, r = divmod(index, 31 ** 3)
        a, r2 = divmod(r, 961)
        b, c = divmod(r2, 31)
        ix, iy, iz = t.tri1[ti]
        X, Y, Z = s1[ix].value, s1[iy].value, s1[iz].value
        Xp, Yp, Zp = s1[a].value, s1[b].value, s1[c].value
        wx = X + Xp + Y * Z
        wy = Y + Yp + X * Z
        wz = Z + Zp + X * Y
    elif cls == 2:
        ti, r = divmod(index, 6889)
        iX, iYp = divmod(r, 83)
        iy, iz = t.pair2[ti]
        Y, Z = s4[iy].value, s4[iz].value
        X, Yp = s4[iX].value, s4[iYp].value
        Xp = X + (Yp - Y) / Z
        Zp = Z - Y * (Y - Yp) / Z
        wx = X + Xp + Y * Z
        wy = Y + Yp + X * Z
        wz = Z + Zp + X * Y
    elif cls == 3:
        ti, r = divmod(index, 213559)
        iYp, r2 = divmod(r, 6889)
        iX, iXp = divmod(r2, 83)
        iy, iz = t.pair3[ti]
        Y, Z = s1[iy].value, s1[iz].value
        X, Xp, Yp = s4[iX].value, s4[iXp].value, s1[iYp].value
        wx = X + Xp + Y * Z
        wy = Y + Yp + X * Z
        wz = wy
        Zp = wz - Z - X * Y
    elif cls == 4:
        ti, iXp = divmod(index, 83)
        ix, iy, iz = t.tri4[ti]
        X, Y, Z = s4[ix].value, s4[iy].value, s4[iz].value
        Xp = s4[iXp].value
        wx = X + Xp + Y * Z
        wy = wx
        wz = wx
        Yp = wy - Y - X * Z
        Zp = wz - Z - X * Y
    else:
        raise ValueError("class must be 1..4")
    point = (X, Y, Z)
    w4 = omega4_of(point, wx, wy, wz)
    return GenConfig(cls, index, point, Omega(wx, wy, wz, w4), (Xp, Yp, Zp))


def enumerate_class(
    cls: int, start: int = 0, stop: Optional[int] = None
) -> Iterator[GenConfig]:
    """Decoded configurations of one arena, in scan order."""

    t = get_search_tables()
    size = _kernels.class_size(cls, t.kernel)
    if stop is None or stop > size:
        stop = size
    for idx in range(start, stop):
        if cls == 1 and idx == t.kernel.skip1:
            continue
        yield decode_config(cls, idx, t)


# ---------------------------------------------------------------------------
# exact closure


class CapError(RuntimeError):
    """The closure exceeded its size cap without resolving."""


@dataclass
class OrbitRecord:
    """A closed finite orbit: exact points, per-color neighbors, parameters."""

    points: Tuple[Point3, ...]
    neighbors: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]
    omega: Omega
    source: Tuple[int, int] = (0, -1)

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def canonical(self) -> Tuple[CosSum, ...]:
        return canonical_key(self.points, self.omega)

    def self_loops(self, i: int) -> int:
        return sum(1 for c in range(3) if self.neighbors[c][i] == i)

    def bad_indices(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.size) if self.self_loops(i) >= 2)


def close_orbit(
    point: Point3,
    omega: Omega,
    cap: int = _kernels.CAP,
    source: Tuple[int, int] = (0, -1),
    restrict_to_dictionary: bool = True,
) -> Optional[OrbitRecord]:
    """Close the orbit of a point exactly; None when it cannot be finite.

    With restrict_to_dictionary (the search semantics), a new point is
    accepted only when its changed coordinate lies in the largest value
    dictionary or the point is doubly fixed, and identically vanishing
    parameters are rejected up front since they belong to the Cayley
    family (see cayley_orbit).  Without it any new point is accepted and
    the caller guarantees finiteness; the cap still guards divergence.
    """

    ws = (omega.wx, omega.wy, omega.wz)
    if restrict_to_dictionary:
        if all(c.is_zero() for c in ws) and omega.w4.is_zero():
            return None
        d = get_dictionaries()
        s4vals = d.s4
        s4f = d.floats("s4")
    ps = PointSet()
    ps.add(tuple(point))
    nbr: List[List[int]] = [[-1], [-1], [-1]]
    i = 0
    while i < len(ps.points):
        p = ps.points[i]
        for c, g in enumerate("xyz"):
            if nbr[c][i] >= 0:
                continue
            q = apply(g, p, omega)
            j = ps.find(q)
            if j is not None:
                if nbr[c][j] != -1:
                    return None
                nbr[c][i] = j
                nbr[c][j] = i
                continue
            if len(ps.points) >= cap:
                raise CapError(f"closure exceeded {cap} points from source {source}")
            v = q[c]
            accept_good = True
            if restrict_to_dictionary:
                k = match_dictionary(v.float_value(), s4f, EPS)
                accept_good = k is not None and (v - s4vals[k].value).is_zero()
            if accept_good:
                idx = ps.add(q)
                for cc in range(3):
                    nbr[cc].append(-1)
                nbr[c][idx] = i
                nbr[c][i] = idx
            else:
                o1 = 1 if c == 0 else 0
                o2 = 1 if c == 2 else 2
                r1 = q[o1] * 2 + v * q[o2] - ws[o1]
                r2 = q[o2] * 2 + v * q[o1] - ws[o2]
                if r1.is_zero() and r2.is_zero():
                    idx = ps.add(q)
                    for cc in range(3):
                        nbr[cc].append(-1)
                    nbr[c][idx] = i
                    nbr[c][i] = idx
                    nbr[o1][idx] = idx
                    nbr[o2][idx] = idx
                else:
                    return None
        i += 1
    return OrbitRecord(
        tuple(ps.points), tuple(tuple(col) for col in nbr), omega, source
    )


def verify_record(rec: OrbitRecord) -> bool:
    """Exact re-check: involution tables, surface membership, every edge."""

    n = rec.size
    for c in range(3):
        col = rec.neighbors[c]
        if len(col) != n:
            raise ValueError("neighbor table size mismatch")
        for i in range(n):
            j = col[i]
            if not (0 <= j < n) or col[j] != i:
                raise ValueError("neighbor table is not an involution")
    for i, p in enumerate(rec.points):
        if not fricke_residual(p, rec.omega).is_zero():
            raise ValueError(f"point {i} is off the surface")
        for c, g in enumerate("xyz"):
            q = apply(g, p, rec.omega)
            if not points_equal(q, rec.points[rec.neighbors[c][i]]):
                raise ValueError(f"edge {g} at point {i} mismatches the table")
    return True


# ---------------------------------------------------------------------------
# degenerate families


_SIZE_TAG = {1: "I", 2: "II", 3: "III", 4: "IV"}


def classify_special(rec: OrbitRecord) -> Optional[Tuple[str, Dict[str, CosSum]]]:
    """Tag orbits of size <= 4: they always belong to a parametric family.

    Size 1: a triple fixed point.  Size 2: one connecting color, the
    shared coordinates vanish.  Size 3: a center linked to two leaves by
    different colors, one common coordinate.  Size 4: a center linked to
    three doubly-fixed leaves, all three parameters equal.  Larger
    records are never family members and get None.
    """

    n = rec.size
    if n > 4:
        return None
    nb = rec.neighbors
    ws = (rec.omega.wx, rec.omega.wy, rec.omega.wz)
    degree = [sum(1 for c in range(3) if nb[c][i] != i) for i in range(n)]
    if n == 1:
        if degree != [0]:
            raise ValueError("1-point record with a dangling edge")
        x, y, z = rec.points[0]
        return "I", {"x": x, "y": y, "z": z}
    if n == 2:
        links = [c for c in range(3) if nb[c][0] == 1]
        if len(links) != 1 or degree != [1, 1]:
            raise ValueError("2-point record is not a single edge")
        c = links[0]
        o1 = 1 if c == 0 else 0
        o2 = 1 if c == 2 else 2
        if not (rec.points[0][o1].is_zero() and rec.points[0][o2].is_zero()):
            raise ValueError("2-point record with nonzero shared coordinates")
        if not (ws[o1].is_zero() and ws[o2].is_zero()):
            raise ValueError("2-point record with nonzero side parameters")
        return "II", {"a": rec.points[0][c], "b": rec.points[1][c]}
    if n == 3:
        centers = [i for i in range(n) if degree[i] == 2]
        if len(centers) != 1 or sorted(degree) != [1, 1, 2]:
            raise ValueError("3-point record is not a 2-leaf star")
        i0 = centers[0]
        links = [c for c in range(3) if nb[c][i0] != i0]
        val = ws[links[0]]
        if not (val - ws[links[1]]).is_zero():
            raise ValueError("3-point record with unequal leaf parameters")
        return "III", {"omega": val}
    centers = [i for i in range(n) if degree[i] == 3]
    if len(centers) != 1 or sorted(degree) != [1, 1, 1, 3]:
        raise ValueError("4-point record is not a 3-leaf star")
    if not ((ws[0] - ws[1]).is_zero() and (ws[0] - ws[2]).is_zero()):
        raise ValueError("4-point record with unequal parameters")
    return "IV", {"omega": ws[0]}


def cayley_orbit(ry, rz) -> OrbitRecord:
    """Finite orbit for identically vanishing parameters.

    With Y = 2cos(pi*ry) and Z = 2cos(pi*rz) the surface equation at
    w = 0 factors through X = -2cos(pi*(ry +- rz)), so the orbit of
    (-2cos(pi*(ry+rz)), Y, Z) stays inside values 2cos(pi*k/D) for the
    common denominator D and must close.
    """

    ry = Fraction(ry)
    rz = Fraction(rz)
    seed = (cos_value(ry + rz) * -1, cos_value(ry), cos_value(rz))
    w = make_omega(0, 0, 0, 0)
    if not fricke_residual(seed, w).is_zero():
        raise AssertionError("degenerate surface identity failed")
    den = math.lcm(ry.denominator, rz.denominator)
    rec = close_orbit(
        seed, w, cap=4 * den * den + 16, restrict_to_dictionary=False
    )
    if rec is None:
        raise AssertionError("degenerate orbit failed to close")
    return rec


# ---------------------------------------------------------------------------
# full search


@dataclass
class SearchResult:
    records: List[OrbitRecord]
    family_hits: Dict[str, int]
    processed: Dict[int, int]
    cayley_skips: int
    cap_hits: int
    survivors: int
    candidates: int
    junk: int
    backend: str
    threads: int
    eps: float
    elapsed: float


def _float_orbit_key(pc: np.ndarray, ws, w4: float) -> tuple:
    # quantize to a 1e-6 grid; a boundary miss only costs a duplicate
    # exact closure, never a wrong table
    grid = np.rint(pc * 1e6).astype(np.int64)
    wsi = [int(round(v * 1e6)) for v in ws]
    w4i = int(round(w4 * 1e6))
    best = None
    for perm, signs in all_equivalences():
        tw = (wsi[perm[0]] * signs[0], wsi[perm[1]] * signs[1], wsi[perm[2]] * signs[2])
        arr = np.stack([grid[perm[i]] * signs[i] for i in range(3)])
        order = np.lexsort((arr[2], arr[1], arr[0]))
        key = (w4i,) + tw + tuple(arr[:, order].T.reshape(-1).tolist())
        if best is None or key < best:
            best = key
    return best


def _record_cmp(a: OrbitRecord, b: OrbitRecord) -> int:
    if a.size != b.size:
        return -1 if a.size < b.size else 1
    return compare_tuples(a.canonical, b.canonical)


def full_search(
    threads: Optional[int] = None,
    eps: float = EPS,
    exact_verify: bool = True,
    backend: Optional[str] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> SearchResult:
    """Scan all four arenas and return the verified exceptional orbits.

    The result list is sorted by (size, canonical key) and is identical
    for every thread count and backend: work is split into fixed chunks
    merged in index order, and all decisions downstream of the float
    scan are exact.
    """

    t0 = time.perf_counter()
    tables = get_search_tables()
    kt = tables.kernel
    if backend is None:
        backend = _kernels.backend_name()
    if threads is None:
        env = os.environ.get("FRICKE_THREADS", "").strip()
        threads = int(env) if env else (os.cpu_count() or 1)
    threads = max(1, int(threads))
    if 2 * eps >= tables.dicts.min_gap:
        raise ValueError("eps must stay below half the dictionary gap")

    tasks = []
    for cls in (1, 2, 3, 4):
        size = _kernels.class_size(cls, kt)
        for start in range(0, size, _kernels.CHUNK):
            tasks.append((cls, start, min(size, start + _kernels.CHUNK)))
    total = sum(b - a for _, a, b in tasks)

    if backend == "numba":
        for cls in (1, 2, 3, 4):  # compile outside the pool
            _kernels.scan_chunk(cls, 0, 0, kt, eps, backend)

    def run(task):
        cls, a, b = task
        return _kernels.scan_chunk(cls, a, b, kt, eps, backend)

    survivors: List[Tuple[int, int, int]] = []
    processed = {1: 0, 2: 0, 3: 0, 4: 0}
    ncay = 0
    ncap = 0
    done = 0
    with ThreadPoolExecutor(max_workers=threads) as ex:
        for task, res in zip(tasks, ex.map(run, tasks)):
            idxs, sizes, nproc, cay, cap = res
            processed[task[0]] += nproc
            ncay += cay
            ncap += cap
            survivors.extend(
                (task[0], int(i), int(s)) for i, s in zip(idxs, sizes)
            )
            done += task[2] - task[1]
            if progress is not None:
                progress(done, total)

    # records of size <= 4 always belong to a parametric family; bucket
    # them by size and run the exact pipeline only on the rest
    fam: Counter = Counter()
    seen = set()
    cand: List[Tuple[int, int, int]] = []
    for cls, idx, fsz in survivors:
        if fsz <= 4:
            fam[_SIZE_TAG[fsz]] += 1
            continue
        X, Y, Z, wx, wy, wz, w4 = _kernels.decode_float(cls, idx, kt)
        res, pc, _ = _kernels.close_float(
            X, Y, Z, wx, wy, wz, kt.s4, eps, want_points=True
        )
        if res != fsz:
            raise RuntimeError("float closure is not reproducible")
        key = _float_orbit_key(pc, (wx, wy, wz), w4)
        if key in seen:
            continue
        seen.add(key)
        cand.append((cls, idx, fsz))

    records: List[OrbitRecord] = []
    junk = 0
    for cls, idx, fsz in cand:
        g = decode_config(cls, idx, tables)
        try:
            rec = close_orbit(
                g.point,
                g.omega,
                cap=min(_kernels.CAP, 2 * fsz + 8),
                source=(cls, idx),
            )
        except CapError:
            ncap += 1
            continue
        if rec is None:
            junk += 1
            continue
        if rec.size <= 4:
            tag, _ = classify_special(rec)
            fam[tag] += 1
            continue
        if any(keys_equal(rec.canonical, r.canonical) for r in records):
            continue
        records.append(rec)

    if exact_verify:
        for rec in records:
            verify_record(rec)
    records.sort(key=cmp_to_key(_record_cmp))
    return SearchResult(
        records=records,
        family_hits=dict(fam),
        processed=processed,
        cayley_skips=ncay,
        cap_hits=ncap,
        survivors=len(survivors),
        candidates=len(cand),
        junk=junk,
        backend=backend,
        threads=threads,
        eps=eps,
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# matching against the bundled reference table


def _matches_row(rec: OrbitRecord, row) -> bool:
    if rec.size != row.size:
        return False
    if not (rec.omega.w4 - row.omega4).is_zero():
        return False
    gw = Omega(row.omega[0], row.omega[1], row.omega[2], row.omega4)
    rep = row.rep_point
    rws = (rec.omega.wx, rec.omega.wy, rec.omega.wz)
    for t in all_equivalences():
        tp, tw = equiv_transform(t, rep, gw)
        if all((a - b).is_zero() for a, b in zip((tw.wx, tw.wy, tw.wz), rws)):
            if any(points_equal(tp, p) for p in rec.points):
                return True
    return False


def golden_match(records: Sequence[OrbitRecord], complete: bool = True) -> List[int]:
    """1-based reference row index for each record.

    Each record must match exactly one row (same size, parameters equal
    up to the 24 symmetries, transformed representative contained in the
    record); with complete=True the assignment must be a bijection.
    """

    from .golden import GOLDEN_ROWS

    out: List[int] = []
    used = set()
    for rec in records:
        hits = [row.idx for row in GOLDEN_ROWS if _matches_row(rec, row)]
        if len(hits) != 1:
            raise ValueError(
                f"orbit of size {rec.size} matched reference rows {hits}"
            )
        if hits[0] in used:
            raise ValueError(f"reference row {hits[0]} matched twice")
        used.add(hits[0])
        out.append(hits[0])
    if complete and len(used) != len(GOLDEN_ROWS):
        missing = sorted(set(r.idx for r in GOLDEN_ROWS) - used)
        raise ValueError(f"reference rows not found: {missing}")
    return out
