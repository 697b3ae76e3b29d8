import random
from fractions import Fraction as F
from itertools import product

import pytest

from voronorm.geometry import (
    AnLattice,
    DegenerateCell,
    DimensionMismatch,
    DnLattice,
    PlanarLattice,
    Vec,
    ZnLattice,
    closest_lattice_points,
    enumerate_an_half_dual_scaled,
    enumerate_dn_half_dual_scaled,
    enumerate_in_box,
    in_voronoi_cell,
    reduce_planar_basis,
    zero_vec,
)


# ---------------------------------------------------------------------------
# planar basis reduction


def test_reduce_example():
    b = reduce_planar_basis(Vec([3, 0]), Vec([1, 3]))
    assert (b.b0, b.b1, b.b2) == (Vec([3, 0]), Vec([1, 3]), Vec([-2, 3]))
    ip2 = 2 * b.b0.dot(b.b1)
    assert 0 < ip2 < b.b0.norm2() <= b.b1.norm2()


def test_reduce_unimodular_input_same_output():
    # (4,3) = (1,3) + (3,0): same lattice, same reduced basis
    a = reduce_planar_basis(Vec([3, 0]), Vec([4, 3]))
    b = reduce_planar_basis(Vec([3, 0]), Vec([1, 3]))
    assert (a.b0, a.b1, a.b2) == (b.b0, b.b1, b.b2)


def test_reduce_rejects_rectangular():
    with pytest.raises(DegenerateCell):
        reduce_planar_basis(Vec([1, 0]), Vec([0, 1]))


def test_reduce_rejects_boundary_case():
    # 2<b0,b1> = |b0|^2
    with pytest.raises(DegenerateCell):
        reduce_planar_basis(Vec([2, 0]), Vec([1, 2]))


def test_reduce_rejects_dependent():
    with pytest.raises(DegenerateCell):
        reduce_planar_basis(Vec([2, 1]), Vec([4, 2]))


def test_reduce_fractional_basis():
    scaled = reduce_planar_basis(Vec([3, 0]), Vec([1, 3]))
    b = reduce_planar_basis(Vec([F(3, 2), 0]), Vec([F(1, 2), F(3, 2)]))
    assert (b.b0, b.b1, b.b2) == (scaled.b0 / 2, scaled.b1 / 2, scaled.b2 / 2)


def _integer_coords(lattice, v):
    c0, c1 = lattice.coefficients(v)
    return c0.denominator == 1 and c1.denominator == 1


def test_reduce_spans_same_lattice():
    rnd = random.Random(3)
    for _ in range(25):
        b0 = Vec([rnd.randint(-5, 5), rnd.randint(-5, 5)])
        b1 = Vec([rnd.randint(-5, 5), rnd.randint(-5, 5)])
        if b0[0] * b1[1] - b0[1] * b1[0] == 0:
            continue
        try:
            red = reduce_planar_basis(b0, b1)
        except DegenerateCell:
            continue
        before = PlanarLattice(b0, b1)
        after = red.lattice()
        for v in (b0, b1):
            assert _integer_coords(after, v)
        for v in (red.b0, red.b1):
            assert _integer_coords(before, v)


def test_reduce_matches_exhaustive_shortest_basis():
    # oracle: shortest vector, then the shortest vector independent of it
    b = reduce_planar_basis(Vec([3, 0]), Vec([1, 3]))
    lat = b.lattice()
    pts = [p for p in enumerate_in_box(lat, 12) if p != zero_vec(2)]
    shortest = min(p.norm2() for p in pts)
    assert b.b0.norm2() == shortest
    second = min(
        p.norm2()
        for p in pts
        if p[0] * b.b0[1] - p[1] * b.b0[0] != 0
    )
    assert b.b1.norm2() == second


def test_face_vectors_are_voronoi_relevant():
    """Each +-b0, +-b1, +-b2 supports a facet: its midpoint is in the cell
    and equality holds only against 0 and the vector itself."""
    b = reduce_planar_basis(Vec([3, 0]), Vec([1, 3]))
    lat = b.lattice()
    ball = [p for p in enumerate_in_box(lat, 13)]
    for v in b.face_vectors():
        m = v / 2
        d0 = m.norm2()
        for w in ball:
            dw = (m - w).norm2()
            assert dw >= d0 - (0 if w in (zero_vec(2), v) else F(0))
            if w not in (zero_vec(2), v):
                assert dw > d0, (v, w)


# ---------------------------------------------------------------------------
# closest lattice points


def test_closest_zn_examples():
    assert closest_lattice_points(ZnLattice(2), Vec([F(1, 4), F(1, 4)])) == [zero_vec(2)]
    assert closest_lattice_points(ZnLattice(1), Vec([F(1, 2)])) == [Vec([0]), Vec([1])]


def test_closest_dn_tie_set():
    got = closest_lattice_points(DnLattice(4), Vec([1, 0, 0, 0]))
    want = sorted(
        Vec(t)
        for t in [
            (0, 0, 0, 0),
            (1, 1, 0, 0),
            (1, -1, 0, 0),
            (1, 0, 1, 0),
            (1, 0, -1, 0),
            (1, 0, 0, 1),
            (1, 0, 0, -1),
            (2, 0, 0, 0),
        ]
    )
    assert got == want


def test_closest_points_all_same_distance():
    rnd = random.Random(11)
    lattices = [ZnLattice(3), DnLattice(4), AnLattice(3)]
    for lat in lattices:
        for _ in range(20):
            m = lat.ambient_dim
            x = Vec([F(rnd.randint(-40, 40), rnd.choice([3, 4, 6, 8])) for _ in range(m)])
            if lat.family == "an":
                s = x.sum() / m
                x = Vec([a - s for a in x])
            pts = closest_lattice_points(lat, x)
            assert pts == sorted(pts)
            d = (x - pts[0]).norm2()
            assert all((x - p).norm2() == d for p in pts)
            assert all(lat.contains(p) for p in pts)


def test_closest_an_off_hyperplane_raises():
    with pytest.raises(DimensionMismatch):
        closest_lattice_points(AnLattice(2), Vec([1, 0, 0]))


def test_closest_planar_brute_force():
    lat = PlanarLattice(Vec([3, 0]), Vec([1, 3]))
    rnd = random.Random(5)
    allpts = [lat.from_coefficients(a, b) for a in range(-8, 9) for b in range(-8, 9)]
    for _ in range(30):
        x = Vec([F(rnd.randint(-60, 60), 7), F(rnd.randint(-60, 60), 9)])
        got = closest_lattice_points(lat, x)
        dmin = min((x - p).norm2() for p in allpts)
        want = sorted(p for p in allpts if (x - p).norm2() == dmin)
        assert got == want


# ---------------------------------------------------------------------------
# box enumeration


def test_box_zn():
    assert len(enumerate_in_box(ZnLattice(2), 1)) == 9


def test_box_an2():
    pts = enumerate_in_box(AnLattice(2), 1)
    assert len(pts) == 7
    assert zero_vec(3) in pts
    from itertools import permutations

    for p in set(permutations((1, -1, 0))):
        assert Vec(p) in pts


def test_box_dn4_matches_exhaustive_scan():
    # oracle: exhaustive scan of {-1,0,1}^4 with even coordinate sum
    want = sorted(Vec(t) for t in product((-1, 0, 1), repeat=4) if sum(t) % 2 == 0)
    got = enumerate_in_box(DnLattice(4), 1)
    assert got == want
    assert len(got) == 41  # frozen from the oracle above
    assert zero_vec(4) in got
    # ... and contains the 24 permutations of (+-1, +-1, 0, 0)
    two_nonzero = [p for p in got if sum(1 for c in p if c != 0) == 2]
    assert len(two_nonzero) == 24


def test_box_monotone_inclusion():
    for lat in (ZnLattice(2), AnLattice(2), DnLattice(4)):
        small = set(enumerate_in_box(lat, 1))
        large = set(enumerate_in_box(lat, 2))
        assert small <= large


def test_box_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        enumerate_in_box(ZnLattice(2), 0)


# ---------------------------------------------------------------------------
# half dual lattices (graph vertex sets)


def test_an_half_dual_characterization():
    n = 2
    pts = enumerate_an_half_dual_scaled(n, 1)
    assert pts == sorted(set(pts))
    for y in pts:
        assert sum(y) == 0
        assert len({c % (n + 1) for c in y}) == 1
        assert all(abs(c) <= 2 * (n + 1) for c in y)
    # contains the halved dual basis vectors (n+1)e_i - ones
    assert (2, -1, -1) in pts
    # and the lattice A_n itself, scaled
    assert (6, -6, 0) in pts


def test_dn_half_dual_characterization():
    pts = enumerate_dn_half_dual_scaled(4, 1)
    for y in pts:
        parities = {c % 2 for c in y}
        assert len(parities) == 1
        assert all(abs(c) <= 4 for c in y)
    assert (1, 1, 1, 1) in pts  # (1/2,...,1/2)/2 scaled by 4
    assert (2, 0, 0, 0) in pts  # (1/2,0,0,0) scaled by 4


def test_voronoi_membership_helper():
    lat = ZnLattice(2)
    assert in_voronoi_cell(lat, Vec([F(1, 2), F(1, 2)]))
    assert not in_voronoi_cell(lat, Vec([F(3, 4), 0]))
