"""Exact rational lattice geometry.

Vectors with Fraction components, the lattice families Z^n / A_n / D_n /
planar, Lagrange-Gauss reduction of planar bases, closest-point search and
box enumeration.  Everything is exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[int, Fraction, str]


class DegenerateCell(ValueError):
    """The planar basis does not define a strictly hexagonal cell."""


class DimensionMismatch(ValueError):
    """Vector dimension does not match the lattice's ambient dimension."""


class UnsupportedFamily(ValueError):
    """Operation not defined for this lattice family."""


class Vec(tuple):
    """Immutable vector with Fraction components.

    Inherits tuple hashing, equality and lexicographic order; arithmetic
    operators are redefined componentwise (``+`` is vector addition, not
    concatenation).
    """

    __slots__ = ()

    def __new__(cls, comps: Iterable[RatLike]) -> "Vec":
        return tuple.__new__(cls, tuple(Fraction(c) for c in comps))

    @property
    def dim(self) -> int:
        return len(self)

    def _check(self, other: Sequence) -> None:
        if len(self) != len(other):
            raise DimensionMismatch(f"dim {len(self)} vs {len(other)}")

    def __add__(self, other):
        self._check(other)
        return Vec(a + b for a, b in zip(self, other))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        self._check(other)
        return Vec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vec(-a for a in self)

    def __mul__(self, k):
        return Vec(a * Fraction(k) for a in self)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Vec(a / Fraction(k) for a in self)

    def dot(self, other) -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self, other)), Fraction(0))

    def norm2(self) -> Fraction:
        return self.dot(self)

    def sum(self) -> Fraction:
        return sum(self, Fraction(0))

    def max_abs(self) -> Fraction:
        return max(abs(a) for a in self)

    def __repr__(self):
        return "Vec(" + ", ".join(str(a) for a in self) + ")"


def zero_vec(dim: int) -> Vec:
    return Vec([0] * dim)


def basis_vec(dim: int, i: int) -> Vec:
    return Vec([1 if j == i else 0 for j in range(dim)])


def lcm_denominator(vectors: Iterable[Vec]) -> int:
    """Least common multiple of all component denominators."""
    d = 1
    for v in vectors:
        for a in v:
            d = math.lcm(d, a.denominator)
    return d


def to_scaled(v: Vec, scale: int) -> tuple:
    """Integer coordinates of ``scale * v``; raises if not integral."""
    out = []
    for a in v:
        s = a * scale
        if s.denominator != 1:
            raise ValueError(f"{v} not integral at scale {scale}")
        out.append(s.numerator)
    return tuple(out)


def from_scaled(t: Sequence[int], scale: int) -> Vec:
    return Vec(Fraction(c, scale) for c in t)


def _round_half_up(x: Fraction) -> int:
    # nearest integer, half-ties toward +inf; used only to seed searches
    return math.floor(x + Fraction(1, 2))


def _int_range(radius: Fraction) -> range:
    b = math.floor(radius)
    return range(-b, b + 1)


def _ints_within(target: Fraction, budget: Fraction) -> list:
    """All integers z with (z - target)^2 <= budget, nearest first."""
    if budget < 0:
        return []
    out = []
    c0 = _round_half_up(target)
    z = c0
    while (Fraction(z) - target) ** 2 <= budget:
        out.append(z)
        z += 1
    z = c0 - 1
    while (Fraction(z) - target) ** 2 <= budget:
        out.append(z)
        z -= 1
    return out


def _closest_integer_points(y: Vec, sum_zero: bool = False, even_sum: bool = False) -> list:
    """All integer tuples z minimizing |z - y|^2, optionally constrained to
    zero sum or even sum.  Pure integer arithmetic: with d the common
    denominator of y, cost terms are (z_i*d - w_i)^2 for w = d*y."""
    m = y.dim
    d = 1
    for c in y:
        d = math.lcm(d, c.denominator)
    w = [int(c * d) for c in y]
    best = [sum(v * v for v in w)]  # cost of z = 0, always feasible here
    hits: list = []
    last = m - 1

    def leaf(partial: int, prefix: tuple, z: int) -> None:
        cost = partial + (z * d - w[last]) ** 2
        if cost > best[0]:
            return
        if cost < best[0]:
            best[0] = cost
            hits.clear()
        hits.append(prefix + (z,))

    def dfs(i: int, partial: int, prefix: tuple, psum: int) -> None:
        if i == last:
            if sum_zero:
                leaf(partial, prefix, -psum)
                return
            c0 = (2 * w[i] + d) // (2 * d)
            step = 1
            if even_sum:
                par = psum % 2
                if c0 % 2 != par:
                    c0_up, c0_down = c0 + 1, c0 - 1
                else:
                    c0_up, c0_down = c0, c0 - 2
                step = 2
            else:
                c0_up, c0_down = c0, c0 - 1
            z = c0_up
            while (z * d - w[i]) ** 2 <= best[0] - partial:
                leaf(partial, prefix, z)
                z += step
            z = c0_down
            while (z * d - w[i]) ** 2 <= best[0] - partial:
                leaf(partial, prefix, z)
                z -= step
            return
        c0 = (2 * w[i] + d) // (2 * d)
        z = c0
        while True:
            cost = (z * d - w[i]) ** 2
            if partial + cost > best[0]:
                break
            dfs(i + 1, partial + cost, prefix + (z,), psum + z)
            z += 1
        z = c0 - 1
        while True:
            cost = (z * d - w[i]) ** 2
            if partial + cost > best[0]:
                break
            dfs(i + 1, partial + cost, prefix + (z,), psum + z)
            z -= 1

    dfs(0, 0, (), 0)
    return hits


# ---------------------------------------------------------------------------
# Lattice families


@dataclass(frozen=True)
class ZnLattice:
    n: int
    family = "zn"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n >= 1 required")

    @property
    def ambient_dim(self) -> int:
        return self.n

    def _check_dim(self, v: Vec) -> None:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"expected dim {self.ambient_dim}, got {v.dim}")

    def contains(self, v: Vec) -> bool:
        self._check_dim(v)
        return all(a.denominator == 1 for a in v)

    def generators(self) -> list:
        return [basis_vec(self.n, i) for i in range(self.n)]

    def enumerate_box(self, radius: Fraction) -> list:
        rng = _int_range(Fraction(radius))
        return sorted(Vec(c) for c in product(rng, repeat=self.n))

    def nearby_point(self, x: Vec) -> Vec:
        return Vec([_round_half_up(a) for a in x])

    def closest_points(self, x: Vec) -> list:
        self._check_dim(x)
        per_coord = []
        for a in x:
            lo = math.floor(a)
            if a - lo == Fraction(1, 2):
                per_coord.append((lo, lo + 1))
            elif a - lo < Fraction(1, 2):
                per_coord.append((lo,))
            else:
                per_coord.append((lo + 1,))
        return sorted(Vec(c) for c in product(*per_coord))


@dataclass(frozen=True)
class AnLattice:
    """A_n: integer vectors of R^{n+1} with zero coordinate sum."""

    n: int
    family = "an"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n >= 2 required")

    @property
    def ambient_dim(self) -> int:
        return self.n + 1

    def _check_dim(self, v: Vec) -> None:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"expected dim {self.ambient_dim}, got {v.dim}")

    def contains(self, v: Vec) -> bool:
        self._check_dim(v)
        return all(a.denominator == 1 for a in v) and v.sum() == 0

    def generators(self) -> list:
        m = self.ambient_dim
        return [
            Vec([1 if j == i else (-1 if j == i + 1 else 0) for j in range(m)])
            for i in range(self.n)
        ]

    def enumerate_box(self, radius: Fraction) -> list:
        rng = _int_range(Fraction(radius))
        lo, hi = rng[0], rng[-1]
        out = []
        for head in product(rng, repeat=self.n):
            last = -sum(head)
            if lo <= last <= hi:
                out.append(Vec(head + (last,)))
        return sorted(out)

    def nearby_point(self, x: Vec) -> Vec:
        # integral rounding repaired to zero sum; adjusts the coordinates
        # where the unit step costs least
        r = [_round_half_up(a) for a in x]
        d = sum(r)
        if d != 0:
            step = -1 if d > 0 else 1
            order = sorted(
                range(len(r)), key=lambda i: (Fraction(step) * (Fraction(r[i]) - x[i]), i)
            )
            for i in order[: abs(d)]:
                r[i] += step
        return Vec(r)

    def closest_points(self, x: Vec) -> list:
        self._check_dim(x)
        if x.sum() != 0:
            raise DimensionMismatch("point off the zero-sum hyperplane")
        t = self.nearby_point(x)
        hits = _closest_integer_points(x - t, sum_zero=True)
        return sorted(Vec(h) + t for h in hits)


@dataclass(frozen=True)
class DnLattice:
    """D_n: integer vectors with even coordinate sum."""

    n: int
    family = "dn"

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("n >= 3 required")

    @property
    def ambient_dim(self) -> int:
        return self.n

    def _check_dim(self, v: Vec) -> None:
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"expected dim {self.ambient_dim}, got {v.dim}")

    def contains(self, v: Vec) -> bool:
        self._check_dim(v)
        if not all(a.denominator == 1 for a in v):
            return False
        return v.sum() % 2 == 0

    def generators(self) -> list:
        n = self.n
        gens = [Vec([1, 1] + [0] * (n - 2))]
        for i in range(n - 1):
            gens.append(
                Vec([1 if j == i else (-1 if j == i + 1 else 0) for j in range(n)])
            )
        return gens

    def enumerate_box(self, radius: Fraction) -> list:
        rng = _int_range(Fraction(radius))
        out = []
        for head in product(rng, repeat=self.n - 1):
            par = sum(head) % 2
            for last in rng:
                if last % 2 == par:
                    out.append(Vec(head + (last,)))
        return sorted(out)

    def nearby_point(self, x: Vec) -> Vec:
        r = [_round_half_up(a) for a in x]
        if sum(r) % 2 != 0:
            # flip the rounding of the coordinate where it costs least
            best = None
            for i, a in enumerate(x):
                f = a - r[i]
                for step in (1, -1):
                    extra = (f - step) ** 2 - f * f
                    if best is None or (extra, i, step) < best:
                        best = (extra, i, step)
            _, i, step = best
            r[i] += step
        return Vec(r)

    def closest_points(self, x: Vec) -> list:
        self._check_dim(x)
        t = self.nearby_point(x)
        hits = _closest_integer_points(x - t, even_sum=True)
        return sorted(Vec(h) + t for h in hits)


@dataclass(frozen=True)
class PlanarLattice:
    """Rank-2 lattice in R^2 spanned by b0, b1."""

    b0: Vec
    b1: Vec
    family = "planar"

    def __post_init__(self):
        if self.b0.dim != 2 or self.b1.dim != 2:
            raise DimensionMismatch("planar basis vectors must have dim 2")
        if self.det() == 0:
            raise DegenerateCell("planar basis is linearly dependent")

    @property
    def ambient_dim(self) -> int:
        return 2

    def det(self) -> Fraction:
        return self.b0[0] * self.b1[1] - self.b0[1] * self.b1[0]

    def coefficients(self, x: Vec) -> tuple:
        """Exact (c0, c1) with x = c0*b0 + c1*b1."""
        d = self.det()
        c0 = (x[0] * self.b1[1] - x[1] * self.b1[0]) / d
        c1 = (self.b0[0] * x[1] - self.b0[1] * x[0]) / d
        return c0, c1

    def contains(self, v: Vec) -> bool:
        if v.dim != 2:
            raise DimensionMismatch("expected dim 2")
        c0, c1 = self.coefficients(v)
        return c0.denominator == 1 and c1.denominator == 1

    def generators(self) -> list:
        return [self.b0, self.b1]

    def from_coefficients(self, c0, c1) -> Vec:
        return self.b0 * c0 + self.b1 * c1

    def enumerate_box(self, radius: Fraction) -> list:
        radius = Fraction(radius)
        d = abs(self.det())
        # coefficient bounds via Cramer's rule on the box constraints
        bound0 = math.floor(radius * (abs(self.b1[0]) + abs(self.b1[1])) / d)
        bound1 = math.floor(radius * (abs(self.b0[0]) + abs(self.b0[1])) / d)
        out = []
        for c0 in range(-bound0, bound0 + 1):
            for c1 in range(-bound1, bound1 + 1):
                v = self.from_coefficients(c0, c1)
                if v.max_abs() <= radius:
                    out.append(v)
        return sorted(out)

    def nearby_point(self, x: Vec) -> Vec:
        c0, c1 = self.coefficients(x)
        return self.from_coefficients(_round_half_up(c0), _round_half_up(c1))

    def closest_points(self, x: Vec) -> list:
        if x.dim != 2:
            raise DimensionMismatch("expected dim 2")
        g00 = self.b0.norm2()
        g01 = self.b0.dot(self.b1)
        g11 = self.b1.norm2()
        detg = g00 * g11 - g01 * g01
        c0, c1 = self.coefficients(x)
        best = [(x - self.nearby_point(x)).norm2()]
        hits: list = []
        # cost(a0, a1) = g11*(a1 - a1_min)^2 + d0^2 * detg/g11  (completed square)
        for a0 in _ints_within(c0, best[0] * g11 / detg):
            d0 = Fraction(a0) - c0
            floor_cost = d0 * d0 * detg / g11
            if floor_cost > best[0]:
                continue
            a1_min = c1 - d0 * g01 / g11
            for a1 in _ints_within(a1_min, (best[0] - floor_cost) / g11):
                cost = floor_cost + g11 * (Fraction(a1) - a1_min) ** 2
                if cost > best[0]:
                    continue
                if cost < best[0]:
                    best[0] = cost
                    hits.clear()
                hits.append(self.from_coefficients(a0, a1))
        return sorted(hits)


Lattice = Union[ZnLattice, AnLattice, DnLattice, PlanarLattice]


def make_lattice(family: str, n: int = 0, basis: tuple = ()) -> Lattice:
    family = family.lower()
    if family == "zn":
        return ZnLattice(n)
    if family == "an":
        return AnLattice(n)
    if family == "dn":
        return DnLattice(n)
    if family == "planar":
        b0, b1 = basis
        return PlanarLattice(Vec(b0), Vec(b1))
    raise UnsupportedFamily(family)


# ---------------------------------------------------------------------------
# Module-level operations


def closest_lattice_points(lattice: Lattice, x: Vec) -> list:
    """All lattice points at minimal Euclidean distance from x, sorted.

    Ties are returned in full; callers needing a single representative must
    apply their own deterministic tie-break.
    """
    return lattice.closest_points(Vec(x))


def enumerate_in_box(lattice: Lattice, radius: RatLike) -> list:
    """All lattice points with every coordinate in [-radius, radius], sorted."""
    radius = Fraction(radius)
    if radius <= 0:
        raise ValueError("radius must be positive")
    return lattice.enumerate_box(radius)


def in_voronoi_cell(lattice: Lattice, x: Vec) -> bool:
    """Whether x is at least as close to 0 as to every other lattice point."""
    return zero_vec(x.dim) in lattice.closest_points(x)


# ---------------------------------------------------------------------------
# Planar basis reduction


@dataclass(frozen=True)
class ReducedPlanarBasis:
    """Gauss-reduced, sign-normalized basis of a strictly hexagonal lattice.

    Invariants: |b0|^2 <= |b1|^2 and 0 < 2<b0,b1> < |b0|^2; b2 = b1 - b0.
    The vectors +-b0, +-b1, +-b2 support the six faces of the Voronoi cell.
    """

    b0: Vec
    b1: Vec
    b2: Vec

    def lattice(self) -> PlanarLattice:
        return PlanarLattice(self.b0, self.b1)

    def face_vectors(self) -> list:
        """The six face vectors in angular order: b0, b1, b2, -b0, -b1, -b2."""
        return [self.b0, self.b1, self.b2, -self.b0, -self.b1, -self.b2]


def reduce_planar_basis(b0: Vec, b1: Vec) -> ReducedPlanarBasis:
    """Lagrange-Gauss reduction with the strict hexagonality check.

    Raises DegenerateCell when the reduced basis is orthogonal (rectangular
    cell, handled by the cube pipeline) or when 2<b0,b1> = |b0|^2 (ambiguous
    boundary case, rejected instead of perturbed).
    """
    u, v = Vec(b0), Vec(b1)
    if u.dim != 2 or v.dim != 2:
        raise DimensionMismatch("planar basis vectors must have dim 2")
    if u[0] * v[1] - u[1] * v[0] == 0:
        raise DegenerateCell("input vectors are linearly dependent")
    if u.norm2() > v.norm2():
        u, v = v, u
    while True:
        mu = u.dot(v) / u.norm2()
        m = _round_half_up(mu) if mu >= 0 else -_round_half_up(-mu)
        v = v - u * m
        if u.norm2() <= v.norm2():
            break
        u, v = v, u
    if u.dot(v) < 0:
        v = -v
    two_ip = 2 * u.dot(v)
    if two_ip == 0:
        raise DegenerateCell("rectangular cell: use the cube pipeline instead")
    if two_ip == u.norm2():
        raise DegenerateCell("boundary case 2<b0,b1> = |b0|^2 rejected")
    return ReducedPlanarBasis(u, v, v - u)


# ---------------------------------------------------------------------------
# Scaled integer enumeration of the graph vertex lattices (half dual lattices)


def an_half_dual_scale(n: int) -> int:
    """Denominator clearing factor for (1/2) A_n^#."""
    return 2 * (n + 1)


def enumerate_an_half_dual_scaled(n: int, radius: RatLike) -> list:
    """Scaled-integer points of (1/2)A_n^# with all coordinates in [-radius, radius].

    At scale 2(n+1) these are exactly the integer tuples with zero sum whose
    components are all congruent modulo n+1.
    """
    radius = Fraction(radius)
    s = an_half_dual_scale(n)
    m = n + 1
    bound = math.floor(radius * s)
    out = []
    for r in range(m):
        lo = -bound + ((r + bound) % m)
        vals = list(range(lo, bound + 1, m))
        if not vals:
            continue
        for head in product(vals, repeat=n):
            last = -sum(head)
            if -bound <= last <= bound:
                out.append(head + (last,))
    out.sort()
    return out


def dn_half_dual_scale(n: int) -> int:
    """Denominator clearing factor for (1/2) D_n^#."""
    return 4


def enumerate_dn_half_dual_scaled(n: int, radius: RatLike) -> list:
    """Scaled-integer points of (1/2)D_n^# in the box: all-even or all-odd tuples."""
    radius = Fraction(radius)
    bound = math.floor(radius * 4)
    evens = list(range(-bound + (bound % 2), bound + 1, 2))
    odd_lo = -bound if bound % 2 == 1 else -bound + 1
    odds = list(range(odd_lo, bound + 1, 2))
    out = list(product(evens, repeat=n))
    out.extend(product(odds, repeat=n))
    out.sort()
    return out
