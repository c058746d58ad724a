import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from dsrg.canon import are_isomorphic, automorphism_group, canonical_form, canonize, certificate, certificate_graph
from dsrg.construct2 import build_d1
from dsrg.designs import projective_plane_family
from dsrg.graphs import Digraph, directed_cycle, kneser_graph, transpose
from dsrg.perms import recognize_group

from conftest import random_digraph, random_perm


def to_nx(g: Digraph) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_aut_order(g: Digraph) -> int:
    return sum(1 for p in itertools.permutations(range(g.n)) if g.relabel(p) == g)


def test_directed_three_cycle():
    g = directed_cycle(3)
    certs = {certificate(g.relabel(p)) for p in itertools.permutations(range(3))}
    assert len(certs) == 1
    assert automorphism_group(g).order() == 3


@pytest.mark.parametrize("n", [4, 5, 7, 9])
def test_directed_cycle_aut(n):
    assert automorphism_group(directed_cycle(n)).order() == n


def test_fixture_invariance(fixtures):
    rng = random.Random(11)
    for name, g in fixtures.items():
        c = certificate(g)
        for _ in range(100):
            assert certificate(g.relabel(random_perm(g.n, rng))) == c, name


def test_fixture_aut_orders(fixtures):
    expected = {"N1": 12, "N2": 8, "N3": 4, "N4": 4, "N5": 12, "N6": 24, "N7": 2,
                "T1": 8, "T2": 4, "T3": 2, "T4": 20, "T5": 2, "T6": 2, "T7": 10, "J8": 2, "J9": 1}
    for name, order in expected.items():
        aut = automorphism_group(fixtures[name])
        assert aut.order() == order, name
        for a in aut.generators:
            assert fixtures[name].relabel(a) == fixtures[name]
    assert recognize_group(automorphism_group(fixtures["N6"])) == "S4"
    assert recognize_group(automorphism_group(fixtures["T4"])) == "C5⋊C4"


def test_sixteen_distinct_fixture_certificates(fixtures):
    graphs = [fixtures[f"T{i}"] for i in range(1, 8)]
    graphs += [transpose(fixtures[f"T{i}"]) for i in range(1, 7)]
    graphs += [fixtures["J8"], transpose(fixtures["J8"]), fixtures["J9"]]
    assert len({certificate(g) for g in graphs}) == 16
    assert certificate(transpose(fixtures["T7"])) == certificate(fixtures["T7"])
    assert certificate(transpose(fixtures["J9"])) == certificate(fixtures["J9"])


def test_are_isomorphic_examples(fixtures):
    t7 = fixtures["T7"]
    ok, w = are_isomorphic(t7, transpose(t7))
    assert ok and t7.relabel(w) == transpose(t7)
    assert are_isomorphic(fixtures["T4"], fixtures["J9"]) == (False, None)
    ok, w = are_isomorphic(t7, t7)
    assert ok and t7.relabel(w) == t7


@given(st.integers(1, 6), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_brute_force_automorphisms(n, p, seed):
    g = random_digraph(n, p, random.Random(seed))
    relabelings = {g.relabel(q) for q in itertools.permutations(range(n))}
    aut = brute_aut_order(g)
    assert automorphism_group(g).order() == aut
    assert aut * len(relabelings) == len(list(itertools.permutations(range(n))))
    assert len({certificate(h) for h in relabelings}) == 1


@given(st.integers(2, 30), st.floats(0.05, 0.95), st.integers(0, 10**6))
def test_relabeling_invariance_and_witness(n, p, seed):
    rng = random.Random(seed)
    g = random_digraph(n, p, rng)
    h = g.relabel(random_perm(n, rng))
    ok, w = are_isomorphic(g, h)
    assert ok and g.relabel(w) == h
    res = canonize(g)
    assert g.relabel(res.labeling) == certificate_graph(res.certificate)


@given(st.integers(3, 8), st.floats(0.2, 0.8), st.booleans(), st.integers(0, 10**6))
def test_isomorphism_agrees_with_networkx(n, p, relabeled, seed):
    rng = random.Random(seed)
    g = random_digraph(n, p, rng)
    h = g.relabel(random_perm(n, rng)) if relabeled else random_digraph(n, p, rng)
    assert are_isomorphic(g, h)[0] == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_regular_graphs_with_large_groups():
    assert automorphism_group(kneser_graph(5, 2)).order() == 120
    g = build_d1(projective_plane_family(3))
    assert automorphism_group(g).order() == 5616


def test_colors_restrict_automorphisms():
    g = directed_cycle(4)
    assert automorphism_group(g, colors=[0, 0, 0, 1]).order() == 1
    p = [1, 2, 3, 0]
    moved = [0] * 4
    for v, c in enumerate([0, 0, 0, 1]):
        moved[p[v]] = c
    assert canonical_form(g, colors=[0, 0, 0, 1])[0] == canonical_form(g.relabel(p), colors=moved)[0]


def test_n5_self_transpose_confirmed_by_networkx(fixtures):
    g = fixtures["N5"]
    ok, w = are_isomorphic(g, transpose(g))
    assert ok and g.relabel(w) == transpose(g)
    assert nx.is_isomorphic(to_nx(g), to_nx(transpose(g)))
    others = [f"N{i}" for i in range(1, 8) if i != 5]
    assert not any(nx.is_isomorphic(to_nx(fixtures[n]), to_nx(transpose(fixtures[n]))) for n in others)
