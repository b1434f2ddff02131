"""Colored involution graphs of closed orbits.

A closed orbit induces a pseudograph on its points: each generator in
{x, y, z} is an involution, so per color every vertex either carries a
self-loop (fixed point) or is matched with exactly one partner.  This
module rebuilds that matching structure from an orbit record, checks the
structural invariants the construction guarantees, decides whether the
even-word subgroup still acts transitively, and renders deterministic
DOT text with angle-triple vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .fricke_action import (
    Point3,
    PointSet,
    apply,
    cosine_angle,
    from_rational,
)
from .orbit_search import OrbitRecord

COLOR_NAMES = ("x", "y", "z")

# DOT rendering constants: one fixed color per generator.
DOT_COLORS = {"x": "red", "y": "green", "z": "blue"}

Matching = Tuple[int, ...]


@dataclass(frozen=True)
class ColoredGraph:
    """Vertex count plus one involutive matching-with-fixed-points per color.

    matchings[c][i] is the partner of vertex i under generator c; a value
    of i itself is a self-loop.  One partner per vertex per color means a
    same-color multi-edge cannot even be represented.
    """

    size: int
    matchings: Tuple[Matching, Matching, Matching]

    def loops(self, c: int) -> Tuple[int, ...]:
        m = self.matchings[c]
        return tuple(i for i in range(self.size) if m[i] == i)

    def color_edges(self, c: int) -> List[Tuple[int, int]]:
        """Edges of one color as (i, j) with i <= j; self-loops included."""
        m = self.matchings[c]
        return [(i, m[i]) for i in range(self.size) if m[i] >= i]

    def self_loop_counts(self) -> Dict[str, int]:
        return {name: len(self.loops(c)) for c, name in enumerate(COLOR_NAMES)}


def build_graph(rec: OrbitRecord) -> ColoredGraph:
    """Rebuild the colored graph of a closed record by reapplying the action.

    Vertex i gets a color-c edge to j iff generator c maps point i to
    point j (a self-loop when fixed).  The result must agree with the
    neighbor bookkeeping stored during closure; any disagreement means
    the record is corrupt.
    """

    ps = PointSet()
    for p in rec.points:
        ps.add(tuple(p))
    matchings: List[Matching] = []
    for c, g in enumerate(COLOR_NAMES):
        m: List[int] = []
        for i, p in enumerate(rec.points):
            j = ps.find(apply(g, p, rec.omega))
            if j is None:
                raise ValueError(f"record not closed: image of {i} under {g} missing")
            m.append(j)
        if tuple(m) != rec.neighbors[c]:
            raise ValueError(f"neighbor table for {g} disagrees with the action")
        matchings.append(tuple(m))
    g_out = ColoredGraph(size=rec.size, matchings=tuple(matchings))
    for c in range(3):
        _assert_involution(g_out, c)
    return g_out


def _assert_involution(g: ColoredGraph, c: int) -> None:
    m = g.matchings[c]
    for i in range(g.size):
        if not 0 <= m[i] < g.size or m[m[i]] != i:
            raise ValueError(f"color {COLOR_NAMES[c]} relation is not an involution")


def _components(size: int, edges: Sequence[Tuple[int, int]]) -> List[int]:
    """Union-find component labels (smallest member as representative)."""

    parent = list(range(size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    return [find(i) for i in range(size)]


def is_connected(g: ColoredGraph) -> bool:
    edges = [e for c in range(3) for e in g.color_edges(c)]
    return len(set(_components(g.size, edges))) <= 1


def lambda_orbit_count(g: ColoredGraph) -> int:
    """1 when the even-word subgroup is still transitive, else 2.

    Even words preserve the parity of word length, so the orbit splits
    into two parity classes exactly when the graph is bipartite; any
    self-loop is an odd closed walk and forces a single class.  Requires
    a connected graph (true for every orbit graph).
    """

    if not is_connected(g):
        raise ValueError("lambda_orbit_count needs a connected graph")
    side = [0] * g.size
    side[0] = 1
    queue = [0]
    while queue:
        i = queue.pop()
        for c in range(3):
            j = g.matchings[c][i]
            if j == i:
                return 1
            if side[j] == 0:
                side[j] = -side[i]
                queue.append(j)
            elif side[j] == side[i]:
                return 1
    return 2


def bad_points(g: ColoredGraph) -> Tuple[int, ...]:
    """Vertices fixed by at least two of the three generators."""

    out = []
    for i in range(g.size):
        if sum(1 for c in range(3) if g.matchings[c][i] == i) >= 2:
            out.append(i)
    return tuple(out)


def check_invariants(g: ColoredGraph) -> None:
    """Raise ValueError unless g has every structural property of orbit graphs.

    Checked: each color is an involution; the graph is connected; no two
    vertices are joined in more than one color; per color the non-loop
    edge count is (vertices - self-loops)/2; and no simple cycle contains
    exactly one edge of a given color.  The last reduces to a component
    test: a cycle whose only c-edge is (u, v) is that edge plus a path of
    other-colored edges, so u and v must sit in different components of
    the two-color subgraph.
    """

    for c in range(3):
        _assert_involution(g, c)
    if not is_connected(g):
        raise ValueError("orbit graph must be connected")
    seen_pairs: Dict[Tuple[int, int], str] = {}
    for c, name in enumerate(COLOR_NAMES):
        loops = len(g.loops(c))
        nonloop = [(i, j) for i, j in g.color_edges(c) if i != j]
        if (g.size - loops) % 2 != 0 or len(nonloop) != (g.size - loops) // 2:
            raise ValueError(f"color {name} edge count does not match matching")
        for e in nonloop:
            if e in seen_pairs:
                raise ValueError(f"vertices {e} joined in both {seen_pairs[e]} and {name}")
            seen_pairs[e] = name
        others = [
            e
            for c2 in range(3)
            if c2 != c
            for e in g.color_edges(c2)
            if e[0] != e[1]
        ]
        labels = _components(g.size, others)
        for i, j in nonloop:
            if labels[i] == labels[j]:
                raise ValueError(
                    f"simple cycle with exactly one {name} edge through {(i, j)}"
                )


def cycle_count(g: ColoredGraph) -> int:
    """Independent simple cycles of length >= 2 (self-loops not counted)."""

    edges = [e for c in range(3) for e in g.color_edges(c) if e[0] != e[1]]
    ncomp = len(set(_components(g.size, edges)))
    return len(edges) - g.size + ncomp


def graph_stats(g: ColoredGraph) -> Dict[str, object]:
    """JSON-ready statistics block for one orbit graph."""

    return {
        "selfLoops": g.self_loop_counts(),
        "badPoints": len(bad_points(g)),
        "lambdaOrbits": lambda_orbit_count(g),
        "cycles": cycle_count(g),
    }


def angle_label(v) -> str:
    """Label a coordinate by its angle n/N with v = 2cos(pi*n/N).

    Endpoints map to "0" and "1"; values outside the cosine dictionary
    fall back to a short decimal so every vertex still gets a label.
    """

    if (v - from_rational(2)).is_zero():
        return "0"
    if (v + from_rational(2)).is_zero():
        return "1"
    fr = cosine_angle(v)
    if fr is not None:
        return f"{fr.numerator}/{fr.denominator}"
    return format(v.float_value(), ".6g")


def point_labels(points: Sequence[Point3]) -> Tuple[str, ...]:
    return tuple(
        "(" + ", ".join(angle_label(c) for c in p) + ")" for p in points
    )


def export_dot(g: ColoredGraph, labels: Optional[Sequence[str]] = None) -> str:
    """Deterministic DOT text; x edges red, y green, z blue; loops rendered."""

    if labels is not None and len(labels) != g.size:
        raise ValueError("one label per vertex required")
    lines = ["graph orbit {", "  node [shape=circle];"]
    for i in range(g.size):
        if labels is None:
            lines.append(f"  {i};")
        else:
            text = labels[i].replace('"', '\\"')
            lines.append(f'  {i} [label="{text}"];')
    for c, name in enumerate(COLOR_NAMES):
        for i, j in g.color_edges(c):
            lines.append(f"  {i} -- {j} [color={DOT_COLORS[name]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
