"""Finite geometric graphs: box-restricted unit-distance graphs, Cayley
graphs on half dual lattices, and the hexagon pattern graph.

Vertices are stored as scaled integer tuples (one global denominator per
graph) and adjacency as per-vertex bitmasks, so every distance test is pure
integer arithmetic.  A vectorized integer edge scan (numpy) is used for the
quadratic pair scans; the naive scan is kept as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .constructions import GaugeNorm, HexagonPattern, polytope_an, polytope_cube, polytope_dn
from .geometry import (
    Vec,
    an_half_dual_scale,
    dn_half_dual_scale,
    enumerate_an_half_dual_scaled,
    enumerate_dn_half_dual_scaled,
    from_scaled,
    lcm_denominator,
    to_scaled,
)


@dataclass(frozen=True)
class UnitDistanceRule:
    gauge: GaugeNorm
    name: str = "unit-distance"


@dataclass(frozen=True)
class CayleyRule:
    generators: tuple  # scaled integer tuples
    name: str = "cayley"


@dataclass(frozen=True)
class HexPatternRule:
    pattern: HexagonPattern
    name: str = "hex-pattern"


@dataclass(frozen=True)
class LineRule:
    name: str


class GeometricGraph:
    """Finite vertex list + bitset adjacency + the rule that generated edges.

    ``points`` are scaled integers sorted lexicographically; ``scale`` is the
    common denominator; ``box_radius`` and ``step_extent`` carry the margin
    metadata (a vertex has its full k-step neighborhood present whenever all
    its coordinates are within box_radius - k*step_extent).
    """

    def __init__(
        self,
        scale: int,
        points: Sequence[tuple],
        adj: Sequence[int],
        rule,
        box_radius: Optional[Fraction] = None,
        step_extent: Optional[Fraction] = None,
        tags: Optional[Sequence[str]] = None,
    ):
        self.scale = scale
        self.points = list(points)
        self.adj = list(adj)
        self.rule = rule
        self.box_radius = box_radius
        self.step_extent = step_extent
        self.tags = list(tags) if tags is not None else None
        self.index = {p: i for i, p in enumerate(self.points)}

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def margin(self) -> Optional[Fraction]:
        """Box inset consumed per edge step; a vertex whose coordinates stay
        within box_radius - k*margin has its full k-neighborhood present."""
        return self.step_extent

    def coords(self, i: int) -> Vec:
        return from_scaled(self.points[i], self.scale)

    def degree(self, i: int) -> int:
        return self.adj[i].bit_count()

    def neighbors(self, i: int) -> list:
        return _bits(self.adj[i])

    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(self.n)) // 2

    def edges(self):
        for i in range(self.n):
            for j in _bits(self.adj[i]):
                if j > i:
                    yield i, j

    def find_scaled(self, t: tuple) -> Optional[int]:
        return self.index.get(t)

    def find(self, v: Vec) -> Optional[int]:
        try:
            return self.index.get(to_scaled(v, self.scale))
        except ValueError:
            return None

    def interior_bound_scaled(self, k: int) -> Fraction:
        if self.box_radius is None or self.step_extent is None:
            raise ValueError("graph carries no box metadata")
        return (self.box_radius - k * self.step_extent) * self.scale

    def is_interior(self, i: int, k: int = 1) -> bool:
        bound = self.interior_bound_scaled(k)
        return all(abs(c) <= bound for c in self.points[i])

    def interior_indices(self, k: int = 1) -> list:
        bound = self.interior_bound_scaled(k)
        return [i for i, p in enumerate(self.points) if all(abs(c) <= bound for c in p)]

    def class_mask(self, tag: str) -> int:
        if self.tags is None:
            raise ValueError("graph carries no class tags")
        m = 0
        for i, t in enumerate(self.tags):
            if t == tag:
                m |= 1 << i
        return m


def _bits(mask: int) -> list:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return out


# ---------------------------------------------------------------------------
# Edge scans


def _edges_naive(points: Sequence[tuple], rows, thresholds) -> list:
    """Quadratic scan with pure integer arithmetic (oracle path)."""
    n = len(points)
    adj = [0] * n
    for i in range(n):
        pi = points[i]
        for j in range(i + 1, n):
            d = tuple(a - b for a, b in zip(pi, points[j]))
            ok_le = True
            any_eq = False
            for a, t in zip(rows, thresholds):
                v = sum(ai * di for ai, di in zip(a, d))
                if v > t:
                    ok_le = False
                    break
                if v == t:
                    any_eq = True
            if ok_le and any_eq:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _edges_fast(points: Sequence[tuple], rows, thresholds) -> list:
    """Vectorized integer scan; exact as long as int64 cannot overflow."""
    n = len(points)
    if n == 0:
        return []
    P = np.array(points, dtype=np.int64)
    A = np.array(rows, dtype=np.int64)
    T = np.array(thresholds, dtype=np.int64)
    # overflow guard: |A @ d| <= max|A| * dim * 2*max|P|
    bound = int(np.abs(A).max()) * P.shape[1] * 2 * int(np.abs(P).max() or 1)
    if bound >= 2**62:
        return _edges_naive(points, rows, thresholds)
    hits = np.zeros((n, n), dtype=bool)
    V = P @ A.T  # A @ (p_i - p_j) = V[i] - V[j]
    for i in range(n - 1):
        vals = V[i + 1 :] - V[i]
        hits[i, i + 1 :] = (vals <= T).all(axis=1) & (vals == T).any(axis=1)
    hits |= hits.T
    return [
        int.from_bytes(np.packbits(hits[i], bitorder="little").tobytes(), "little")
        for i in range(n)
    ]


def build_unit_distance_graph(
    points: Iterable[Vec],
    gauge: GaugeNorm,
    box_radius: Optional[Fraction] = None,
    step_extent: Optional[Fraction] = None,
    naive: bool = False,
) -> GeometricGraph:
    """Graph on the given points with edges at gauge distance exactly 1.

    ``step_extent`` should be the per-coordinate extent of the unit ball
    (max |v_i| over the cell's vertices) when margin metadata is needed.
    """
    pts = sorted(set(Vec(p) for p in points))
    scale = lcm_denominator(pts)
    scaled = [to_scaled(p, scale) for p in pts]
    rows, thresholds = gauge.integer_system(scale)
    scan = _edges_naive if naive else _edges_fast
    adj = scan(scaled, rows, thresholds)
    return GeometricGraph(
        scale,
        scaled,
        adj,
        UnitDistanceRule(gauge),
        box_radius=box_radius,
        step_extent=step_extent,
    )


def build_cayley_graph(
    scale: int,
    points: Sequence[tuple],
    generators: Sequence[tuple],
    box_radius: Fraction,
    rule_name: str = "cayley",
) -> GeometricGraph:
    """Cayley graph on scaled integer points: i ~ j iff p_i - p_j is a generator.

    The generator set must be closed under negation.
    """
    gens = sorted(set(generators))
    for g in gens:
        if tuple(-c for c in g) not in gens:
            raise ValueError("generator set not symmetric")
    pts = sorted(set(points))
    index = {p: i for i, p in enumerate(pts)}
    adj = [0] * len(pts)
    for i, p in enumerate(pts):
        for g in gens:
            q = tuple(a + b for a, b in zip(p, g))
            j = index.get(q)
            if j is not None and j != i:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    ext = max(Fraction(abs(c), scale) for g in gens for c in g)
    return GeometricGraph(
        scale,
        pts,
        adj,
        CayleyRule(tuple(gens), rule_name),
        box_radius=Fraction(box_radius),
        step_extent=ext,
    )


# ---------------------------------------------------------------------------
# Family-level constructions


def an_generators_scaled(n: int) -> list:
    """Scaled coordinates of (1/2)V_P for the A_n cell (scale 2(n+1))."""
    from itertools import product as _product

    out = []
    m = n + 1
    for u in _product((0, 1), repeat=m):
        w = sum(u)
        if 0 < w < m:
            out.append(tuple(m * ui - w for ui in u))
    return sorted(out)


def dn_generators_scaled(n: int) -> list:
    """Scaled coordinates of (1/2)V_P for the D_n cell (scale 4)."""
    from itertools import product as _product

    out = []
    for i in range(n):
        for s in (2, -2):
            g = [0] * n
            g[i] = s
            out.append(tuple(g))
    out.extend(_product((1, -1), repeat=n))
    return sorted(out)


def an_cayley_graph(n: int, radius) -> GeometricGraph:
    radius = Fraction(radius)
    scale = an_half_dual_scale(n)
    pts = enumerate_an_half_dual_scaled(n, radius)
    return build_cayley_graph(scale, pts, an_generators_scaled(n), radius, "an-cayley")


def dn_cayley_graph(n: int, radius) -> GeometricGraph:
    radius = Fraction(radius)
    scale = dn_half_dual_scale(n)
    pts = enumerate_dn_half_dual_scaled(n, radius)
    return build_cayley_graph(scale, pts, dn_generators_scaled(n), radius, "dn-cayley")


def an_unit_distance_graph(n: int, radius) -> GeometricGraph:
    """Box-restricted subgraph of the unit-distance graph on (1/2)A_n^#."""
    radius = Fraction(radius)
    data = polytope_an(n)
    scale = an_half_dual_scale(n)
    pts = [from_scaled(p, scale) for p in enumerate_an_half_dual_scaled(n, radius)]
    return build_unit_distance_graph(
        pts, data.gauge, box_radius=radius, step_extent=data.vertex_extent()
    )


def dn_unit_distance_graph(n: int, radius) -> GeometricGraph:
    radius = Fraction(radius)
    data = polytope_dn(n)
    scale = dn_half_dual_scale(n)
    pts = [from_scaled(p, scale) for p in enumerate_dn_half_dual_scaled(n, radius)]
    return build_unit_distance_graph(
        pts, data.gauge, box_radius=radius, step_extent=data.vertex_extent()
    )


def cube_graph(n: int) -> GeometricGraph:
    """The 0/1 cube under the sup norm; complete by construction."""
    from itertools import product as _product

    data = polytope_cube(n)
    pts = [Vec(t) for t in _product((0, 1), repeat=n)]
    return build_unit_distance_graph(pts, data.gauge, box_radius=None, step_extent=None)


def hex_step_extent(pattern: HexagonPattern) -> Fraction:
    """Max per-coordinate displacement along one pattern-graph edge."""
    disp = list(pattern.s)
    for i in range(6):
        disp.append(pattern.s[(i + 1) % 6] - pattern.s[i])
    return max(d.max_abs() for d in disp)


def hex_pattern_graph(pattern: HexagonPattern, radius) -> GeometricGraph:
    """The auxiliary graph of the planar pipeline, with class tags.

    Vertices: ((1/2)L + {0, v0, v1}) within the box.  Edges (a, a+s_i) and
    (a+s_i, a+s_{i+1}) for every a in (1/2)L of an expanded box, so that the
    result is exactly the induced subgraph of the infinite pattern graph.
    """
    radius = Fraction(radius)
    scale = pattern.scale()
    b0h, b1h = pattern.a_generators()
    s_scaled = [to_scaled(si, scale) for si in pattern.s]
    step_ext = hex_step_extent(pattern)

    pts, tags = _hex_vertices(pattern, radius)
    index = {p: i for i, p in enumerate(pts)}
    adj = [0] * len(pts)

    def add_edge(t1, t2):
        i, j = index.get(t1), index.get(t2)
        if i is not None and j is not None and i != j:
            adj[i] |= 1 << j
            adj[j] |= 1 << i

    for a in _coset_in_box(b0h, b1h, Vec([0, 0]), radius + step_ext):
        ta = to_scaled(a, scale)
        for i in range(6):
            t1 = tuple(x + y for x, y in zip(ta, s_scaled[i]))
            t2 = tuple(x + y for x, y in zip(ta, s_scaled[(i + 1) % 6]))
            add_edge(ta, t1)
            add_edge(t1, t2)

    return GeometricGraph(
        scale,
        pts,
        adj,
        HexPatternRule(pattern),
        box_radius=radius,
        step_extent=step_ext,
        tags=[tags[p] for p in pts],
    )


def _hex_vertices(pattern: HexagonPattern, radius: Fraction):
    """Scaled vertex tuples of ((1/2)L + {0, v0, v1}) in the box, sorted,
    with their class tags."""
    scale = pattern.scale()
    b0h, b1h = pattern.a_generators()
    offsets = (Vec([0, 0]),) + pattern.class_b_offsets()
    tags = {}
    for off, tg in zip(offsets, ("A", "B", "B")):
        for p in _coset_in_box(b0h, b1h, off, radius):
            tags[to_scaled(p, scale)] = tg
    return sorted(tags), tags


def hex_unit_distance_graph(pattern: HexagonPattern, radius) -> GeometricGraph:
    """Box subgraph of the unit-distance graph on the pattern's vertex set."""
    radius = Fraction(radius)
    scale = pattern.scale()
    pts, tags = _hex_vertices(pattern, radius)
    # the unit-distance builder picks its own (possibly smaller) scale, so
    # key the class tags by exact coordinates
    tag_by_vec = {from_scaled(p, scale): t for p, t in tags.items()}
    ext = max(v.max_abs() for v in pattern.v)
    g = build_unit_distance_graph(tag_by_vec, pattern.gauge, box_radius=radius, step_extent=ext)
    g.tags = [tag_by_vec[g.coords(i)] for i in range(g.n)]
    return g


def _coset_in_box(b0: Vec, b1: Vec, offset: Vec, radius: Fraction) -> list:
    """Points offset + c0*b0 + c1*b1 with both coordinates in [-radius, radius]."""
    det = b0[0] * b1[1] - b0[1] * b1[0]
    r0 = (radius + offset.max_abs()) * (abs(b1[0]) + abs(b1[1])) / abs(det)
    r1 = (radius + offset.max_abs()) * (abs(b0[0]) + abs(b0[1])) / abs(det)
    out = []
    for c0 in range(-math.floor(r0), math.floor(r0) + 1):
        for c1 in range(-math.floor(r1), math.floor(r1) + 1):
            p = offset + b0 * c0 + b1 * c1
            if p.max_abs() <= radius:
                out.append(p)
    return out


# ---------------------------------------------------------------------------
# Distance-2 machinery and Property D


def two_step_candidates(g: GeometricGraph, u: int) -> int:
    """Bitmask of vertices at graph distance exactly 2 from u."""
    reach = 0
    for v in g.neighbors(u):
        reach |= g.adj[v]
    reach &= ~g.adj[u]
    reach &= ~(1 << u)
    return reach


def graph_distance_2_pairs(g: GeometricGraph, interior_k: int = 2):
    """All unordered pairs at graph distance 2 with at least one interior
    endpoint, with their common neighbor sets; deterministic order."""
    interior = set(g.interior_indices(interior_k))
    for u in sorted(interior):
        for w in _bits(two_step_candidates(g, u)):
            if w in interior and w < u:
                continue
            common = _bits(g.adj[u] & g.adj[w])
            yield u, w, common


@dataclass
class PropertyDViolation:
    u: Vec
    w: Vec
    graph_distance: int
    gauge_value: Fraction


@dataclass
class PropertyDReport:
    mode: str
    checked_pairs: int
    interior_vertices: int
    violations: list

    @property
    def holds(self) -> bool:
        return not self.violations


def check_property_d(g: GeometricGraph, gauge: GaugeNorm, mode: str = "strong") -> PropertyDReport:
    """Distance-2 pairs must be at gauge distance exactly 1.

    strong: every pair at graph distance 2 (at least one endpoint interior).
    weak: only pairs sharing a common neighbor tagged B.
    Violations are data, not errors.
    """
    if mode not in ("strong", "weak"):
        raise ValueError(f"unknown mode {mode!r}")
    is_unit = gauge.unit_checker(g.scale)
    b_mask = g.class_mask("B") if mode == "weak" else None
    interior = set(g.interior_indices(2))
    checked = 0
    violations = []
    for u in sorted(interior):
        if mode == "strong":
            cand = two_step_candidates(g, u)
        else:
            reach = 0
            for z in _bits(g.adj[u] & b_mask):
                reach |= g.adj[z]
            cand = reach & ~g.adj[u] & ~(1 << u)
        pu = g.points[u]
        for w in _bits(cand):
            if w in interior and w < u:
                continue
            checked += 1
            d = tuple(a - b for a, b in zip(pu, g.points[w]))
            if not is_unit(d):
                violations.append(
                    PropertyDViolation(g.coords(u), g.coords(w), 2, gauge.value_scaled(d, g.scale))
                )
    violations.sort(key=lambda v: (v.u, v.w))
    return PropertyDReport(mode, checked, len(interior), violations)


# ---------------------------------------------------------------------------
# Export


def write_edge_list(g: GeometricGraph, fh) -> None:
    """Plain-text edge list: one edge per line, two vertices separated by a
    space, coordinates as exact fractions p/q joined by commas."""

    def fmt(i):
        return ",".join(f"{c.numerator}/{c.denominator}" for c in g.coords(i))

    for i, j in g.edges():
        fh.write(f"{fmt(i)} {fmt(j)}\n")
