import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from voronorm.constructions import gauge_an, hexagon_pattern
from voronorm.density import (
    ChainClique,
    CrossCheckMismatch,
    HEX_EXPECTED_DELTAS,
    MarginViolation,
    NotAvoiding,
    an_brute_neighborhood_counts,
    an_neighborhood_size_formula,
    closed_neighborhood,
    decompose_avoiding_set,
    dn_brute_neighborhood_counts,
    dn_cmax_points_scaled,
    enumerate_chain_cliques,
    verify_an_bound,
    verify_dn_bound,
    verify_hexagon_bound,
)
from voronorm.geometry import Vec, reduce_planar_basis, zero_vec
from voronorm.graphs import an_cayley_graph, an_generators_scaled, dn_generators_scaled, hex_pattern_graph
from voronorm.independence import max_independent_set


# ---------------------------------------------------------------------------
# closed neighborhoods on graphs


def _an2_graph():
    return an_cayley_graph(2, F(3, 2))


def test_closed_neighborhood_singleton():
    g = _an2_graph()
    i0 = g.find(zero_vec(3))
    assert len(closed_neighborhood(g, [i0])) == 7


def test_closed_neighborhood_pair():
    g = _an2_graph()
    c = ChainClique(2, (1,))
    idx = [g.find(p) for p in c.points()]
    assert None not in idx
    assert len(closed_neighborhood(g, idx)) == 10


def test_closed_neighborhood_triple():
    g = _an2_graph()
    c = ChainClique(2, (1, 2))
    idx = [g.find(p) for p in c.points()]
    assert len(closed_neighborhood(g, idx)) == 12


def test_closed_neighborhood_empty():
    g = _an2_graph()
    assert closed_neighborhood(g, []) == []


def test_closed_neighborhood_margin_violation():
    g = _an2_graph()
    boundary = max(range(g.n), key=lambda i: max(abs(c) for c in g.points[i]))
    with pytest.raises(MarginViolation):
        closed_neighborhood(g, [boundary])


# ---------------------------------------------------------------------------
# chain cliques


def test_enumerate_chain_cliques_counts():
    assert len(enumerate_chain_cliques(2)) == 4
    assert len(enumerate_chain_cliques(3)) == 8
    weights = [c.weights for c in enumerate_chain_cliques(2)]
    assert weights == [(), (1,), (1, 2), (2,)]


def test_chain_cliques_are_cliques_in_cayley_graph():
    gens = set(an_generators_scaled(3))
    for clique in enumerate_chain_cliques(3):
        pts = clique.points_scaled()
        for a, b in combinations(pts, 2):
            assert tuple(x - y for x, y in zip(a, b)) in gens


def test_formula_examples():
    assert an_neighborhood_size_formula(2, (1, 2)) == 12
    assert an_neighborhood_size_formula(2, (1,)) == 10
    assert an_neighborhood_size_formula(2, (2,)) == 10
    assert an_neighborhood_size_formula(2, ()) == 7
    assert an_neighborhood_size_formula(3, (1, 2, 3)) == 32


@pytest.mark.parametrize("n", [2, 3, 4])
def test_formula_matches_brute_force(n):
    brute = an_brute_neighborhood_counts(n)
    for clique in enumerate_chain_cliques(n):
        assert brute[clique.weights] == an_neighborhood_size_formula(n, clique.weights)


def _union_count(points, gens):
    pts = set()
    zero = tuple([0] * len(points[0]))
    for c in points:
        for g in list(gens) + [zero]:
            pts.add(tuple(a + b for a, b in zip(c, g)))
    return len(pts)


@pytest.mark.parametrize("n", [2, 3])
def test_brute_force_matches_union_materialization(n):
    # second independent oracle: materialize C + (S u {0}) and count
    gens = set(an_generators_scaled(n))
    brute = an_brute_neighborhood_counts(n)
    for clique in enumerate_chain_cliques(n):
        assert brute[clique.weights] == _union_count(clique.points_scaled(), gens)


def test_neighborhood_lower_bound_invariant():
    # |N[C]| >= (s+1) 2^n with equality exactly for the full chain
    for n in (2, 3, 4, 5):
        for clique in enumerate_chain_cliques(n):
            s = len(clique.weights)
            nb = an_neighborhood_size_formula(n, clique.weights)
            assert nb >= (s + 1) * 2**n
            is_full = clique.weights == tuple(range(1, n + 1))
            assert (nb == (s + 1) * 2**n) == is_full


def test_density_invariant_under_coordinate_permutation():
    # canonical-form enumeration loses nothing: permuted cliques have the
    # same neighborhood size (union-materialization oracle)
    rnd = random.Random(9)
    n = 3
    gens = set(an_generators_scaled(n))
    for clique in enumerate_chain_cliques(n):
        base = _union_count(clique.points_scaled(), gens)
        for _ in range(5):
            perm = list(range(n + 1))
            rnd.shuffle(perm)
            pts = [tuple(p[i] for i in perm) for p in clique.points_scaled()]
            gperm = {tuple(g[i] for i in perm) for g in gens}
            assert gperm == gens  # generator set is permutation invariant
            assert _union_count(pts, gens) == base


def test_verify_an_bound_regular_hexagon_values():
    cert = verify_an_bound(2)
    assert cert.matches_expected
    assert {e.density for e in cert.entries} == {F(1, 7), F(1, 5), F(1, 4)}
    assert cert.maximizers == ["{0,1,2}"]


@pytest.mark.parametrize("n", [3, 4])
def test_verify_an_bound_small(n):
    cert = verify_an_bound(n)
    assert cert.assembled_bound == F(1, 2**n)
    assert cert.maximizers == ["{0," + ",".join(map(str, range(1, n + 1))) + "}"]


def test_verify_an_bound_cross_check_beyond_default_range():
    # the box-scan oracle is cheap enough to exercise past its default cap
    cert = verify_an_bound(7, cross_check=True)
    assert cert.matches_expected


def test_verify_an_cross_check_detects_corruption(monkeypatch):
    import voronorm.density as density

    good = an_brute_neighborhood_counts(2)
    bad = dict(good)
    bad[(1,)] += 1
    monkeypatch.setattr(density, "an_brute_neighborhood_counts", lambda n: bad)
    with pytest.raises(CrossCheckMismatch):
        density.verify_an_bound(2, cross_check=True)


# ---------------------------------------------------------------------------
# D_n


def test_dn_brute_counts_n4():
    brute = dn_brute_neighborhood_counts(4)
    assert brute[()] == 25
    assert brute[(0,)] == brute[(1,)] == brute[(2,)] == 40
    assert brute[(0, 1)] == brute[(0, 2)] == brute[(1, 2)] == 51
    assert brute[(0, 1, 2)] == 60


def test_dn_brute_matches_union_materialization():
    for n in (4, 5):
        gens = set(dn_generators_scaled(n))
        brute = dn_brute_neighborhood_counts(n)
        targets = dn_cmax_points_scaled(n)
        for extra in brute:
            pts = [targets[0]] + [targets[i + 1] for i in extra]
            assert brute[extra] == _union_count(pts, gens)


def test_verify_dn_bound_headline_and_mismatch():
    cert = verify_dn_bound(4)
    assert cert.assembled_bound == F(1, 15)
    assert cert.matches_expected
    assert cert.maximizers == ["{0,v1/2,v2/2,v3/2}"]
    mism = cert.mismatched_entries()
    # the singleton reference value 1/(1+2^n+n) disagrees with the exact
    # count 1+2^n+2n; every other case value matches
    assert [e.label for e in mism] == ["{0}"]
    assert mism[0].density == F(1, 25)
    assert mism[0].expected_density == F(1, 21)


def test_dn_cmax_is_clique():
    gens = set(dn_generators_scaled(4))
    pts = dn_cmax_points_scaled(4)
    for a, b in combinations(pts, 2):
        assert tuple(x - y for x, y in zip(a, b)) in gens


# ---------------------------------------------------------------------------
# hexagon certificate


@pytest.mark.parametrize(
    "raw", [((3, 0), (1, 3)), ((4, 0), (1, 4)), ((5, 0), (2, 5)), ((3, 0), (1, -3))]
)
def test_verify_hexagon_bound(raw):
    pat = hexagon_pattern(reduce_planar_basis(Vec(raw[0]), Vec(raw[1])))
    cert = verify_hexagon_bound(pat)
    assert cert.assembled_bound == F(1, 4)
    assert cert.max_density == F(3, 8)
    assert {e.label: e.density for e in cert.entries} == HEX_EXPECTED_DELTAS
    assert all(e.matches for e in cert.entries)


def test_classify_rejects_foreign_shapes():
    from voronorm.density import UnknownComponentType, _classify_component
    from voronorm.graphs import hex_pattern_graph

    pat = hexagon_pattern(reduce_planar_basis(Vec([3, 0]), Vec([1, 3])))
    g = hex_pattern_graph(pat, 6)
    a_verts = [i for i in range(g.n) if g.tags[i] == "A"][:2]
    with pytest.raises(UnknownComponentType):
        _classify_component(g, pat, a_verts)  # an A-A pair is outside the taxonomy


def test_component_search_matches_brute_force_enumeration():
    """Oracle for the connected-avoiding-subset search: enumerate all
    subsets of deep-interior vertices of size <= 3 directly."""
    from itertools import combinations as combos

    from voronorm.density import _classify_component, _connected_avoiding_subsets
    from voronorm.graphs import hex_pattern_graph, hex_step_extent

    pat = hexagon_pattern(reduce_planar_basis(Vec([3, 0]), Vec([1, 3])))
    g = hex_pattern_graph(pat, 7 * hex_step_extent(pat))
    is_unit = pat.gauge.unit_checker(g.scale)
    bound2 = g.interior_bound_scaled(2)
    deep = [i for i in range(g.n) if all(abs(c) <= bound2 for c in g.points[i])]

    def avoiding(sub):
        return not any(
            is_unit(tuple(a - b for a, b in zip(g.points[i], g.points[j])))
            for i, j in combos(sub, 2)
        )

    def connected(sub):
        if len(sub) == 1:
            return True
        seen = {sub[0]}
        frontier = [sub[0]]
        inside = set(sub)
        while frontier:
            nxt = []
            for v in frontier:
                for u in g.neighbors(v):
                    if u in inside and u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        return seen == inside

    brute = {}
    for size in (1, 2, 3):
        for sub in combos(deep, size):
            if connected(list(sub)) and avoiding(sub):
                kind = _classify_component(g, pat, list(sub))
                brute.setdefault(kind, 0)
                brute[kind] += 1
    assert set(brute) == set(HEX_EXPECTED_DELTAS)
    # the canonical search finds the same type set around its base vertices
    base = g.find(Vec([0, 0]))
    found = set()
    for sub in _connected_avoiding_subsets(g, pat.gauge, base, 3):
        found.add(_classify_component(g, pat, list(sub)))
    assert found <= set(HEX_EXPECTED_DELTAS)
    assert {"A", "AB", "ABB", "BAB"} <= found  # every type containing an A vertex


# ---------------------------------------------------------------------------
# avoiding-set decomposition


def test_decompose_singleton():
    g = _an2_graph()
    dec = decompose_avoiding_set(g, gauge_an(2), [g.find(zero_vec(3))])
    assert len(dec.components) == 1
    assert dec.all_cliques
    assert dec.neighborhoods_disjoint


def test_decompose_rejects_distance_one_pair():
    from voronorm.graphs import graph_distance_2_pairs

    g = _an2_graph()
    gauge = gauge_an(2)
    i0 = g.find(zero_vec(3))
    # a vertex at graph distance 2 from 0 sits at gauge distance exactly 1
    two = [
        w
        for u, w, _ in graph_distance_2_pairs(g)
        if u == i0 and g.is_interior(w, 2)
    ]
    assert two
    with pytest.raises(NotAvoiding):
        decompose_avoiding_set(g, gauge, [i0, two[0]])


def test_decompose_mis_witness_into_disjoint_cliques():
    from voronorm.graphs import an_unit_distance_graph

    gu = an_unit_distance_graph(2, F(3, 2))
    res = max_independent_set(gu)
    gc = an_cayley_graph(2, F(3, 2))
    members = [gc.find(gu.coords(i)) for i in res.witness]
    members = [m for m in members if m is not None and gc.is_interior(m, 2)]
    dec = decompose_avoiding_set(gc, gauge_an(2), members)
    assert dec.all_cliques
    assert dec.neighborhoods_disjoint


def test_decompose_hexagon_class_b_neighborhoods():
    pat = hexagon_pattern(reduce_planar_basis(Vec([3, 0]), Vec([1, 3])))
    g = hex_pattern_graph(pat, 6)
    i0 = g.find(zero_vec(2))
    is0 = g.find(pat.s[0])
    is3 = g.find(pat.s[3])
    dec = decompose_avoiding_set(g, pat.gauge, [i0, is0, is3], neighborhood_kind="class-B")
    assert len(dec.components) == 1  # the BAB component
    assert dec.neighborhoods_disjoint
