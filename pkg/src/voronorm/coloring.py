"""Coset colorings of space with 2^n colors, properness verification, and
exact chromatic-number computations for finite witnesses.

The coloring assigns x to the coset of (1/2)L / L whose half-open translated
cell contains x; ties between nearest cell centers are broken
lexicographically, which turns the open-ball construction into a total
function without breaking properness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .constructions import (
    GaugeNorm,
    HexagonPattern,
    gauge_an,
    gauge_dn,
    gauge_sup,
    project_to_hyperplane,
)
from .geometry import (
    AnLattice,
    DnLattice,
    Lattice,
    Vec,
    ZnLattice,
    closest_lattice_points,
    zero_vec,
)
from .graphs import GeometricGraph, _bits


@dataclass(frozen=True)
class CosetColoring:
    """The 2^n-coloring by cosets of (1/2)Lambda / Lambda.

    ``lattice`` is the tiling lattice Lambda whose Voronoi cell is the unit
    ball of ``gauge``; ``basis`` spans Lambda and provides the coset
    coordinates."""

    family: str
    dim: int
    lattice: Lattice
    basis: tuple
    gauge: GaugeNorm
    pattern: Optional[HexagonPattern] = None

    @property
    def color_count(self) -> int:
        return 2**self.dim


def coset_coloring(family: str, n: int = 0, pattern: Optional[HexagonPattern] = None) -> CosetColoring:
    family = family.lower()
    if family == "an":
        lat = AnLattice(n)
        return CosetColoring("an", n, lat, tuple(lat.generators()), gauge_an(n))
    if family == "dn":
        lat = DnLattice(n)
        return CosetColoring("dn", n, lat, tuple(lat.generators()), gauge_dn(n))
    if family == "cube":
        # the cube is the cell of 2Z^n
        lat = ZnLattice(n)
        basis = tuple(g * 2 for g in lat.generators())
        return CosetColoring("cube", n, lat, basis, gauge_sup(n))
    if family == "hexagon":
        if pattern is None:
            raise ValueError("hexagon coloring needs a pattern")
        lat = pattern.lattice
        return CosetColoring("hexagon", 2, lat, tuple(lat.generators()), pattern.gauge, pattern)
    raise ValueError(f"unknown family {family!r}")


def _closest_in_tiling_lattice(coloring: CosetColoring, y: Vec) -> list:
    """All points of Lambda closest to y (Lambda = tiling lattice)."""
    if coloring.family == "cube":
        # Lambda = 2Z^n: scale down, decode in Z^n, scale back
        return [p * 2 for p in closest_lattice_points(coloring.lattice, y / 2)]
    return closest_lattice_points(coloring.lattice, y)


def nearest_half_cell_center(coloring: CosetColoring, x: Vec) -> Vec:
    """The (1/2)Lambda point whose half-open cell contains x.

    x lies in lambda + (1/2)P iff 2*lambda is among the Lambda points
    closest to 2x; the lexicographically smallest closest point makes the
    assignment total and deterministic."""
    cands = _closest_in_tiling_lattice(coloring, x * 2)
    return min(cands) / 2


def _coords_in_basis(basis, target: Vec) -> list:
    """Exact coordinates of target in the given basis (consistent,
    full-column-rank system; raises on inconsistency)."""
    m = target.dim
    k = len(basis)
    rows = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    # Gaussian elimination with exact fractions
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pivval = rows[r][c]
        rows[r] = [a / pivval for a in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) != k:
        raise ValueError("basis is not full rank")
    for i in range(r, m):
        if rows[i][k] != 0:
            raise ValueError("target not in the span of the basis")
    sol = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        sol[c] = rows[i][k]
    return sol


def coset_index(coloring: CosetColoring, lam: Vec) -> int:
    """Index of the coset of (1/2)Lambda / Lambda containing lam."""
    coords = _coords_in_basis(coloring.basis, lam * 2)
    bits = []
    for c in coords:
        if c.denominator != 1:
            raise ValueError(f"{lam} is not in (1/2)Lambda")
        bits.append(c.numerator % 2)
    return sum(b << i for i, b in enumerate(bits))


def color(coloring: CosetColoring, x: Vec) -> int:
    """Total coloring function: coset index of the nearest half-cell center."""
    return coset_index(coloring, nearest_half_cell_center(coloring, x))


# ---------------------------------------------------------------------------
# Properness verification


@dataclass
class ColoringViolation:
    x: Vec
    y: Vec
    color: int


@dataclass
class ColoringReport:
    family: str
    dim: int
    color_count: int
    sampled_pairs: int
    catalog_pairs: int
    violations: list

    @property
    def holds(self) -> bool:
        return not self.violations


def _random_fraction(rng: random.Random, span: int = 3) -> Fraction:
    den = rng.choice((2, 3, 4, 5, 7, 8, 9, 12, 16))
    return Fraction(rng.randint(-span * den, span * den), den)


def _random_point(coloring: CosetColoring, rng: random.Random) -> Vec:
    m = coloring.lattice.ambient_dim if coloring.family != "cube" else coloring.dim
    v = Vec([_random_fraction(rng) for _ in range(m)])
    if coloring.family == "an":
        return project_to_hyperplane(v)
    return v


def _random_boundary_vector(coloring: CosetColoring, rng: random.Random) -> Vec:
    while True:
        d = _random_point(coloring, rng)
        if any(c != 0 for c in d):
            return d / coloring.gauge.value(d)


def boundary_catalog(coloring: CosetColoring) -> list:
    """Deterministic points at gauge exactly 1: cell vertices, facet centers
    and gauge-1 midpoints between them."""
    verts: list
    if coloring.family == "an":
        from .constructions import vertices_an

        verts = vertices_an(coloring.dim)
        m = coloring.dim + 1
        roots = []
        for i in range(m):
            for j in range(m):
                if i != j:
                    r = [0] * m
                    r[i] = 1
                    r[j] = -1
                    roots.append(Vec(r) / 2)
        centers = roots
    elif coloring.family == "dn":
        from .constructions import vertices_dn
        from itertools import combinations, product

        n = coloring.dim
        verts = vertices_dn(n)
        centers = []
        for i, j in combinations(range(n), 2):
            for si, sj in product((1, -1), repeat=2):
                r = [0] * n
                r[i], r[j] = si, sj
                centers.append(Vec(r) / 2)
    elif coloring.family == "cube":
        from .constructions import vertices_cube
        from .geometry import basis_vec

        n = coloring.dim
        verts = vertices_cube(n)
        centers = [basis_vec(n, i) * s for i in range(n) for s in (1, -1)]
    else:
        verts = list(coloring.pattern.v)
        centers = [f / 2 for f in coloring.pattern.face]
    out = list(verts) + list(centers)
    for c in centers:
        for v in verts:
            mid = (c + v) / 2
            if coloring.gauge.value(mid) == 1:
                out.append(mid)
    return sorted(set(out))


def verify_coloring(coloring: CosetColoring, samples: int, seed: int) -> ColoringReport:
    """Sampled and cataloged properness checks: two points at gauge distance
    exactly 1 must receive different colors.  Expected violation count: 0."""
    rng = random.Random(seed)
    violations = []
    for _ in range(samples):
        x = _random_point(coloring, rng)
        b = _random_boundary_vector(coloring, rng)
        assert coloring.gauge.value(b) == 1
        cx, cy = color(coloring, x), color(coloring, x + b)
        if cx == cy:
            violations.append(ColoringViolation(x, x + b, cx))
    catalog = boundary_catalog(coloring)
    base_points = [zero_vec(catalog[0].dim)]
    base_points += [b / 2 for b in catalog[:6]]
    cat_pairs = 0
    for x in base_points:
        for b in catalog:
            cat_pairs += 1
            cx, cy = color(coloring, x), color(coloring, x + b)
            if cx == cy:
                violations.append(ColoringViolation(x, x + b, cx))
    return ColoringReport(
        family=coloring.family,
        dim=coloring.dim,
        color_count=coloring.color_count,
        sampled_pairs=samples,
        catalog_pairs=cat_pairs,
        violations=violations,
    )


# ---------------------------------------------------------------------------
# Exact chromatic numbers


def _greedy_clique(adj, verts: list) -> list:
    best: list = []
    for start in verts:
        clique = [start]
        cand = adj[start]
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _feasible_k_coloring(adj, verts: list, k: int, budget: list, seed_clique=None):
    """DSATUR-ordered backtracking; returns a coloring dict or None.

    budget is a single-element node counter; raises TimeoutError on
    exhaustion."""
    colors: dict = {}
    if seed_clique:
        if len(seed_clique) > k:
            return None
        for c, v in enumerate(seed_clique):
            colors[v] = c
    order_pool = [v for v in verts if v not in colors]

    def choose():
        best_v, best_key = None, None
        for v in order_pool:
            if v in colors:
                continue
            used = {colors[u] for u in _bits(adj[v]) if u in colors}
            key = (-len(used), -adj[v].bit_count(), v)
            if best_key is None or key < best_key:
                best_v, best_key = v, key
        return best_v

    def backtrack() -> bool:
        budget[0] -= 1
        if budget[0] < 0:
            raise TimeoutError("coloring budget exhausted")
        v = choose()
        if v is None:
            return True
        used = {colors[u] for u in _bits(adj[v]) if u in colors}
        tried_fresh = False
        for c in range(k):
            if c in used:
                continue
            if c not in colors.values():
                if tried_fresh:
                    break  # fresh colors are interchangeable
                tried_fresh = True
            colors[v] = c
            if backtrack():
                return True
            del colors[v]
        return False

    return dict(colors) if backtrack() else None


def chromatic_number(
    g: GeometricGraph, indices: Optional[Iterable[int]] = None, node_budget: int = 2_000_000
):
    """Exact chromatic number of the induced subgraph, with a coloring."""
    verts = sorted(indices) if indices is not None else list(range(g.n))
    vset = set(verts)
    local = {v: g.adj[v] for v in verts}
    mask = 0
    for v in verts:
        mask |= 1 << v
    adj = {v: local[v] & mask for v in verts}
    if not verts:
        return 0, {}
    clique = _greedy_clique(adj, verts)
    k = len(clique)
    while True:
        budget = [node_budget]
        coloring = _feasible_k_coloring(adj, verts, k, budget, seed_clique=clique)
        if coloring is not None:
            return k, coloring
        k += 1


def verify_chromatic_number(g: GeometricGraph, indices: Iterable[int], k: int, node_budget: int = 4_000_000) -> bool:
    """Independent re-check: (k-1)-coloring infeasible, k-coloring feasible,
    via plain lexicographic backtracking (no DSATUR, no seed clique)."""
    verts = sorted(indices)
    mask = 0
    for v in verts:
        mask |= 1 << v
    adj = {v: g.adj[v] & mask for v in verts}

    def feasible(kk: int) -> bool:
        budget = [node_budget]

        def rec(i: int, assign: dict) -> bool:
            budget[0] -= 1
            if budget[0] < 0:
                raise TimeoutError("verification budget exhausted")
            if i == len(verts):
                return True
            v = verts[i]
            used = {assign[u] for u in _bits(adj[v]) if u in assign}
            cap = min(kk, max(assign.values(), default=-1) + 2)
            for c in range(cap):
                if c in used:
                    continue
                assign[v] = c
                if rec(i + 1, assign):
                    return True
                del assign[v]
            return False

        return rec(0, {})

    if k > 1 and feasible(k - 1):
        return False
    return feasible(k)


def proper_coloring_check(g: GeometricGraph, assignment: dict) -> bool:
    for v, c in assignment.items():
        for u in _bits(g.adj[v]):
            if u in assignment and assignment[u] == c:
                return False
    return True


@dataclass
class WitnessResult:
    found: bool
    k: int
    vertex_indices: list = field(default_factory=list)
    vertex_count: int = 0
    verified: bool = False


def chromatic_witness_search(
    g: GeometricGraph,
    gauge: GaugeNorm,
    k: int,
    node_budget: int = 2_000_000,
    shrink: bool = True,
) -> WitnessResult:
    """Search for an induced subgraph with chromatic number exactly k by
    growing gauge-radius balls around the origin, then greedily shrinking.

    Returns found=False when no ball within the graph's box reaches k."""
    if k == 1:
        return WitnessResult(True, 1, [0], 1, True)
    radii = []
    r = Fraction(1)
    top = g.box_radius if g.box_radius is not None else Fraction(3)
    while r <= 2 * top:
        radii.append(r)
        r += Fraction(1, 2)
    values = {}
    for i in range(g.n):
        values[i] = gauge.value_scaled(g.points[i], g.scale)
    for r in radii:
        ball = [i for i in range(g.n) if values[i] <= r]
        if len(ball) < k:
            continue
        try:
            chi, _ = chromatic_number(g, ball, node_budget)
        except TimeoutError:
            return WitnessResult(False, k)
        if chi < k:
            continue
        if chi > k:
            return WitnessResult(False, k)
        witness = list(ball)
        if shrink:
            for v in sorted(witness, reverse=True):
                trial = [u for u in witness if u != v]
                if not trial:
                    continue
                try:
                    chi2, _ = chromatic_number(g, trial, node_budget)
                except TimeoutError:
                    continue
                if chi2 == k:
                    witness = trial
        verified = verify_chromatic_number(g, witness, k)
        return WitnessResult(True, k, witness, len(witness), verified)
    return WitnessResult(False, k)


# ---------------------------------------------------------------------------
# Chromatic report


@dataclass
class ChromaticReport:
    family: str
    dim: int
    upper: int
    lower: int
    bound_used: Fraction

    @property
    def conclusion(self) -> str:
        return "tight" if self.upper == self.lower else "gap"


def chromatic_report(family: str, n: int = 0, pattern: Optional[HexagonPattern] = None) -> ChromaticReport:
    """upper = 2^n from the coset coloring; lower = ceil(1/alpha-bar bound)
    from the density certificate."""
    from .density import verify_an_bound, verify_dn_bound, verify_hexagon_bound
    from .independence import cube_certificate

    family = family.lower()
    if family == "an":
        cert = verify_an_bound(n)
        bound = cert.assembled_bound
        dim = n
    elif family == "dn":
        cert = verify_dn_bound(n)
        bound = cert.assembled_bound
        dim = n
    elif family == "hexagon":
        cert = verify_hexagon_bound(pattern)
        bound = cert.assembled_bound
        dim = 2
    elif family == "cube":
        cc = cube_certificate(n)
        bound = cc.ratio
        dim = n
    else:
        raise ValueError(f"unknown family {family!r}")
    recip = 1 / bound
    lower = -(-recip.numerator // recip.denominator)
    return ChromaticReport(family, dim, 2**dim, lower, bound)
