"""Voronoi polytope data for each lattice family.

Gauge (polytope-norm) evaluators as explicit functional lists, vertex sets,
dual-lattice generators, and the hexagon vertex/edge pattern used by the
planar pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from .geometry import (
    AnLattice,
    DegenerateCell,
    DnLattice,
    Lattice,
    PlanarLattice,
    ReducedPlanarBasis,
    UnsupportedFamily,
    Vec,
    ZnLattice,
    basis_vec,
    lcm_denominator,
)


class InputOffHyperplane(ValueError):
    """An A_n gauge was evaluated off the zero-sum hyperplane."""


@dataclass(frozen=True)
class GaugeNorm:
    """Polytope norm as a finite max of affine functionals.

    value(x) = max over (a, c) of <a, x> / c.  The functional set is closed
    under negation, so the evaluator is centrally symmetric and positively
    homogeneous by construction.  ``kind`` selects a closed-form fast path
    for the unit test on scaled integers; the functional list remains the
    definition and the closed forms are cross-checked against it in tests.
    """

    functionals: tuple
    require_zero_sum: bool = False
    closed_form: Optional[Callable[[Vec], Fraction]] = None
    kind: str = "generic"

    def _check_domain(self, x: Vec) -> None:
        if self.require_zero_sum and x.sum() != 0:
            raise InputOffHyperplane(f"sum {x.sum()} != 0")

    def value(self, x: Vec) -> Fraction:
        self._check_domain(x)
        return max(a.dot(x) / c for a, c in self.functionals)

    def value_scaled(self, y, scale: int) -> Fraction:
        """value of the point y/scale, with y given in scaled integers."""
        if self.require_zero_sum and sum(y) != 0:
            raise InputOffHyperplane(f"sum {sum(y)} != 0")
        return max(
            sum(ai * yi for ai, yi in zip(a, y)) / (c * scale)
            for a, c in self.functionals
        )

    def integer_system(self, scale: int) -> tuple:
        """Rows (A, T) of integers such that value(y/scale) <= 1 iff
        A@y <= T componentwise, with equality attained iff value == 1."""
        rows = []
        thresholds = []
        for a, c in self.functionals:
            k = lcm_denominator([a])
            k = math.lcm(k, (c * scale).denominator)
            rows.append(tuple(int(ai * k) for ai in a))
            t = c * scale * k
            assert t.denominator == 1
            thresholds.append(int(t))
        return rows, thresholds

    def unit_checker(self, scale: int) -> Callable:
        """Predicate: is the scaled-integer displacement at gauge exactly 1.

        max_j x_j - min_i x_i equals the pairwise-difference max, and
        max_{i<j}(|x_i|+|x_j|) equals the sum of the two largest absolute
        values, so the closed forms below agree with the functional lists.
        """
        if self.kind == "an":
            return lambda d: max(d) - min(d) == scale
        if self.kind == "dn":

            def check_dn(d):
                m1 = m2 = 0
                for c in d:
                    a = -c if c < 0 else c
                    if a > m1:
                        m1, m2 = a, m1
                    elif a > m2:
                        m2 = a
                return m1 + m2 == scale

            return check_dn
        if self.kind == "sup":
            return lambda d: max(-min(d), max(d)) == scale
        rows, thr = self.integer_system(scale)

        def check(d):
            any_eq = False
            for a, t in zip(rows, thr):
                v = sum(ai * di for ai, di in zip(a, d))
                if v > t:
                    return False
                if v == t:
                    any_eq = True
            return any_eq

        return check


def _pairs(m: int):
    for i in range(m):
        for j in range(m):
            if i != j:
                yield i, j


def gauge_an(n: int) -> GaugeNorm:
    """Gauge of the A_n Voronoi cell: max_j x_j - min_i x_i on the hyperplane."""
    if n < 2:
        raise ValueError("n >= 2 required")
    m = n + 1
    funcs = []
    for i, j in _pairs(m):
        a = [0] * m
        a[j] = 1
        a[i] = -1
        funcs.append((Vec(a), Fraction(1)))

    def closed(x: Vec) -> Fraction:
        return max(x) - min(x)

    return GaugeNorm(tuple(funcs), require_zero_sum=True, closed_form=closed, kind="an")


def gauge_dn(n: int) -> GaugeNorm:
    """Gauge of the D_n Voronoi cell: max_{i != j} |x_i| + |x_j|."""
    if n < 4:
        raise ValueError("n >= 4 required")
    funcs = []
    for i in range(n):
        for j in range(i + 1, n):
            for si, sj in product((1, -1), repeat=2):
                a = [0] * n
                a[i] = si
                a[j] = sj
                funcs.append((Vec(a), Fraction(1)))

    def closed(x: Vec) -> Fraction:
        m = sorted((abs(a) for a in x), reverse=True)
        return m[0] + m[1]

    return GaugeNorm(tuple(funcs), closed_form=closed, kind="dn")


def gauge_sup(n: int) -> GaugeNorm:
    """Sup norm: gauge of the cube with vertices (+-1, ..., +-1)."""
    if n < 1:
        raise ValueError("n >= 1 required")
    funcs = []
    for i in range(n):
        for s in (1, -1):
            a = [0] * n
            a[i] = s
            funcs.append((Vec(a), Fraction(1)))

    def closed(x: Vec) -> Fraction:
        return x.max_abs()

    return GaugeNorm(tuple(funcs), closed_form=closed, kind="sup")


def gauge_planar(basis: ReducedPlanarBasis) -> GaugeNorm:
    """Gauge of the hexagonal Voronoi cell: max over the six face vectors v
    of 2<x, v>/<v, v>."""
    funcs = tuple((v, v.norm2() / 2) for v in basis.face_vectors())
    return GaugeNorm(funcs, kind="planar")


# ---------------------------------------------------------------------------
# Vertex sets


def project_to_hyperplane(u: Vec) -> Vec:
    """Orthogonal projection onto the zero-sum hyperplane of R^m."""
    shift = u.sum() / u.dim
    return Vec(a - shift for a in u)


def vertices_an(n: int) -> list:
    """The 2^(n+1) - 2 vertices of the A_n cell: projections of the
    nonconstant 0/1 vectors."""
    m = n + 1
    out = []
    for u in product((0, 1), repeat=m):
        if any(u) and not all(u):
            out.append(project_to_hyperplane(Vec(u)))
    return sorted(out)


def vertices_dn(n: int) -> list:
    """The 2n type-1 plus 2^n type-2 vertices of the D_n cell."""
    out = []
    for i in range(n):
        for s in (1, -1):
            a = [0] * n
            a[i] = s
            out.append(Vec(a))
    half = Fraction(1, 2)
    for signs in product((half, -half), repeat=n):
        out.append(Vec(signs))
    return sorted(out)


def vertices_cube(n: int) -> list:
    return sorted(Vec(s) for s in product((1, -1), repeat=n))


def dual_generators(lattice: Lattice) -> list:
    """Generators of the dual lattice (A_n and D_n families only)."""
    if isinstance(lattice, AnLattice):
        m = lattice.ambient_dim
        return [project_to_hyperplane(basis_vec(m, i)) for i in range(m)]
    if isinstance(lattice, DnLattice):
        n = lattice.n
        gens = list(lattice.generators())
        gens.append(Vec([Fraction(1, 2)] * n))
        gens.append(basis_vec(n, n - 1))
        return gens
    raise UnsupportedFamily(f"dual generators not defined for {lattice.family}")


# ---------------------------------------------------------------------------
# Polytope data


@dataclass(frozen=True)
class PolytopeData:
    """A lattice Voronoi cell: tiling lattice, gauge, vertices, and the
    generators of the lattice on which the graphs live (half dual)."""

    family: str
    lattice: Lattice
    gauge: GaugeNorm
    vertices: tuple
    generators_half_dual: tuple

    def vertex_extent(self) -> Fraction:
        """Max per-coordinate extent of the cell (attained at a vertex)."""
        return max(v.max_abs() for v in self.vertices)

    def check_vertices_on_boundary(self) -> None:
        for v in self.vertices:
            if self.gauge.value(v) != 1:
                raise AssertionError(f"vertex {v} has gauge {self.gauge.value(v)}")


def polytope_an(n: int) -> PolytopeData:
    lat = AnLattice(n)
    data = PolytopeData(
        family="an",
        lattice=lat,
        gauge=gauge_an(n),
        vertices=tuple(vertices_an(n)),
        generators_half_dual=tuple(g / 2 for g in dual_generators(lat)),
    )
    data.check_vertices_on_boundary()
    return data


def polytope_dn(n: int) -> PolytopeData:
    lat = DnLattice(n)
    data = PolytopeData(
        family="dn",
        lattice=lat,
        gauge=gauge_dn(n),
        vertices=tuple(vertices_dn(n)),
        generators_half_dual=tuple(g / 2 for g in dual_generators(lat)),
    )
    data.check_vertices_on_boundary()
    return data


def polytope_cube(n: int) -> PolytopeData:
    # the cube is the Voronoi cell of 2Z^n; the coloring lattice (1/2)*2Z^n
    # is Z^n itself
    data = PolytopeData(
        family="cube",
        lattice=ZnLattice(n),
        gauge=gauge_sup(n),
        vertices=tuple(vertices_cube(n)),
        generators_half_dual=tuple(basis_vec(n, i) for i in range(n)),
    )
    data.check_vertices_on_boundary()
    return data


# ---------------------------------------------------------------------------
# Hexagon pattern


@dataclass(frozen=True)
class HexagonPattern:
    """The labeled hexagon data of the planar pipeline.

    face: six face vectors in cyclic order with face[i+3] = -face[i];
    v: six cell vertices with face[i] = v[i] + v[i+1] (indices mod 6);
    s: the six interior points s[i] = (v[i-1] + v[i+1]) / 2.
    """

    basis: ReducedPlanarBasis
    face: tuple
    v: tuple
    s: tuple
    gauge: GaugeNorm

    @property
    def lattice(self) -> PlanarLattice:
        return self.basis.lattice()

    def a_generators(self) -> list:
        """Generators of the class-A lattice (1/2)L."""
        return [self.basis.b0 / 2, self.basis.b1 / 2]

    def class_b_offsets(self) -> tuple:
        """Coset representatives of the class-B translates: v0 and v1."""
        return self.v[0], self.v[1]

    def scale(self) -> int:
        """Denominator clearing factor for all pattern points."""
        return 2 * lcm_denominator(
            list(self.v) + list(self.s) + [self.basis.b0, self.basis.b1]
        )

    def _validate(self) -> None:
        L = self.lattice
        for i in range(6):
            if self.face[i] != self.v[i] + self.v[(i + 1) % 6]:
                raise AssertionError(f"face[{i}] != v[{i}] + v[{i+1}]")
            if self.s[i] != (self.v[(i - 1) % 6] + self.v[(i + 1) % 6]) / 2:
                raise AssertionError(f"s[{i}] mislabeled")
            if not L.contains(self.v[(i + 2) % 6] - self.v[i]):
                raise AssertionError(f"v[{i+2}] - v[{i}] not in L")
            if self.gauge.value(self.v[i]) != 1:
                raise AssertionError(f"vertex {i} not on the boundary")
            if self.gauge.value(self.s[i]) >= 1:
                raise AssertionError(f"s[{i}] not interior")
        w0, w1 = self.class_b_offsets()
        half = PlanarLattice(self.basis.b0 / 2, self.basis.b1 / 2)
        if half.contains(w0) or half.contains(w1) or half.contains(w0 - w1):
            raise AssertionError("class-B cosets not disjoint from (1/2)L")


def _solve2(a: Vec, ca: Fraction, b: Vec, cb: Fraction) -> Vec:
    det = a[0] * b[1] - a[1] * b[0]
    if det == 0:
        raise DegenerateCell("parallel bisectors")
    x = (ca * b[1] - cb * a[1]) / det
    y = (a[0] * cb - b[0] * ca) / det
    return Vec([x, y])


def hexagon_pattern(basis: ReducedPlanarBasis) -> HexagonPattern:
    """Label vertices and interior points of the hexagonal cell.

    The faces in cyclic angular order are (b0, b1, b2, -b0, -b1, -b2) when
    det(b0, b1) > 0 and (b0, -b2, -b1, ...) otherwise; the vertex v[i] is the
    intersection of the bisectors of face[i-1] and face[i], which makes
    face[i] = v[i] + v[i+1] hold exactly.
    """
    b0, b1, b2 = basis.b0, basis.b1, basis.b2
    det = b0[0] * b1[1] - b0[1] * b1[0]
    half_turn = (b0, b1, b2) if det > 0 else (b0, -b2, -b1)
    face = half_turn + tuple(-f for f in half_turn)
    v = tuple(
        _solve2(face[(i - 1) % 6], face[(i - 1) % 6].norm2() / 2, face[i], face[i].norm2() / 2)
        for i in range(6)
    )
    s = tuple((v[(i - 1) % 6] + v[(i + 1) % 6]) / 2 for i in range(6))
    pattern = HexagonPattern(basis=basis, face=face, v=v, s=s, gauge=gauge_planar(basis))
    pattern._validate()
    return pattern
