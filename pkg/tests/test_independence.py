import random
from fractions import Fraction as F

import pytest

from voronorm.graphs import GeometricGraph, LineRule, an_unit_distance_graph, cube_graph
from voronorm.independence import (
    an_tiling_witness,
    counterexample_density_gap,
    counterexample_graph,
    cube_certificate,
    is_independent_set,
    max_independent_set,
    ratio_sequence_an,
    ratio_sequence_cube,
    reference_independent_set_size,
)


def _graph_from_edges(n, edges):
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return GeometricGraph(1, [(i,) for i in range(n)], adj, LineRule("test"))


def _alpha_brute(n, edges):
    adj = [0] * n
    for a, b in edges:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    best = 0
    for mask in range(1 << n):
        m, ok = mask, True
        while m:
            b = m & -m
            v = b.bit_length() - 1
            m ^= b
            if adj[v] & mask:
                ok = False
                break
        if ok:
            best = max(best, mask.bit_count())
    return best


def test_solver_against_brute_force():
    rnd = random.Random(42)
    for _ in range(40):
        n = rnd.randint(1, 12)
        p = rnd.choice([0.15, 0.3, 0.6])
        edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rnd.random() < p]
        g = _graph_from_edges(n, edges)
        res = max_independent_set(g)
        assert res.proven
        assert res.alpha == _alpha_brute(n, edges)
        assert is_independent_set(g, res.witness)
        assert len(res.witness) == res.alpha


@pytest.mark.parametrize("n", [2, 3, 4])
def test_complete_cube_graph_alpha_one(n):
    res = max_independent_set(cube_graph(n))
    assert res.alpha == 1 and res.proven
    assert res.ratio == F(1, 2**n)


def test_edgeless_graph():
    g = _graph_from_edges(7, [])
    res = max_independent_set(g)
    assert res.alpha == 7


def test_solver_deterministic():
    g = an_unit_distance_graph(2, F(3, 2))
    r1 = max_independent_set(g)
    r2 = max_independent_set(g)
    assert (r1.alpha, r1.witness, r1.nodes) == (r2.alpha, r2.witness, r2.nodes)


def test_timed_out_state():
    g = an_unit_distance_graph(2, F(2))
    res = max_independent_set(g, node_budget=50)
    assert not res.proven
    assert res.alpha <= res.upper_bound
    assert is_independent_set(g, res.witness)
    # the witness is a genuine independent set, so its ratio is a valid
    # lower bound even without optimality
    assert res.ratio >= F(1, 4)


def test_cube_certificate():
    for n in (2, 3, 6):
        cert = cube_certificate(n)
        assert cert.complete
        assert cert.alpha == 1
        assert cert.matches_expected


def test_ratio_sequences():
    seq = ratio_sequence_an(2, [F(1), F(5, 4), F(3, 2)])
    assert all(e.proven for e in seq.entries)
    assert all(e.ratio >= F(1, 4) for e in seq.entries)
    assert seq.entries[-1].ratio <= seq.entries[0].ratio
    cube = ratio_sequence_cube(3)
    assert cube.entries[0].ratio == F(1, 8)


def test_an_tiling_witness_is_independent():
    for r in (F(3, 2), F(2)):
        g = an_unit_distance_graph(2, r)
        w = an_tiling_witness(g, 2)
        assert w
        assert is_independent_set(g, w)


# ---------------------------------------------------------------------------
# the infinite-degree counterexample


def test_counterexample_edges_n4():
    g = counterexample_graph(4)
    edges = sorted((g.points[i][0], g.points[j][0]) for i, j in g.edges())
    assert edges == [(-1, 3), (-1, 4)]


def test_counterexample_alpha_n4():
    res = max_independent_set(counterexample_graph(4))
    assert res.alpha == 8
    assert res.ratio == F(8, 9)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 12])
def test_counterexample_alpha_matches_reference(n):
    res = max_independent_set(counterexample_graph(n))
    assert res.proven
    # the reference independent set is in fact optimal at these sizes
    assert res.alpha == reference_independent_set_size(n)


def test_counterexample_constrained_runs():
    rep = counterexample_density_gap(4)
    assert rep.alpha == 8
    for run in rep.constrained:
        assert run.max_positive <= 2 * run.k
        assert run.within_cap
    rep20 = counterexample_density_gap(20, ks=[1, 5, 10])
    assert rep20.ratio < F(8, 9)
    assert rep20.ratio > F(3, 4)


def test_counterexample_rejects_bad_n():
    with pytest.raises(ValueError):
        counterexample_graph(0)
