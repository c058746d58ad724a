import itertools
import random

import pytest
from hypothesis import given, strategies as st

from dsrg.canon import are_isomorphic, automorphism_group
from dsrg.formats import data_path
from dsrg.graphs import complement, johnson_graph, kneser_graph, symmetrize, transpose, verify_srg
from dsrg.perms import PermGroup, symmetric_group
from dsrg.schemes import (
    SchemeAxiomError,
    SchemeError,
    feasible_fusions,
    fuse,
    graph_from_classes,
    load_relation_matrix,
    orbital_scheme,
    relation_decomposition,
    scheme_from_matrix,
    schemes_isomorphic,
)


def brute_orbitals(group: PermGroup):
    elems = list(group.elements())
    n = group.degree
    seen, out = set(), []
    for x in range(n):
        for y in range(n):
            if (x, y) in seen:
                continue
            orb = {(g[x], g[y]) for g in elems}
            seen |= orb
            out.append(orb)
    return out


def brute_intersections(mat):
    n = len(mat)
    c = max(max(r) for r in mat)
    table = {}
    for x, y in itertools.product(range(n), repeat=2):
        k = mat[x][y]
        for i, j in itertools.product(range(c + 1), repeat=2):
            val = sum(1 for z in range(n) if mat[x][z] == i and mat[z][y] == j)
            assert table.setdefault((k, i, j), val) == val
    return table


@pytest.fixture(scope="module")
def t4_scheme(fixtures):
    return orbital_scheme(automorphism_group(fixtures["T4"]))


@pytest.fixture(scope="module")
def reference_scheme():
    return scheme_from_matrix(load_relation_matrix(data_path("scheme_T4.txt")))


def test_cyclic_group_gives_cyclotomic_scheme():
    s = orbital_scheme(PermGroup(5, [(1, 2, 3, 4, 0)]))
    assert s.c == 4 and s.valencies() == [1, 1, 1, 1, 1]
    assert s.is_commutative() and not s.is_symmetric()
    orbitals = brute_orbitals(PermGroup(5, [(1, 2, 3, 4, 0)]))
    assert sorted(len(o) for o in orbitals) == [5] * 5
    for o in orbitals:
        assert len({s.relation_matrix[x][y] for x, y in o}) == 1
    table = brute_intersections(s.relation_matrix)
    for (k, i, j), val in table.items():
        assert s.intersection_numbers[k][i][j] == val


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_symmetric_group_gives_trivial_scheme(n):
    s = orbital_scheme(symmetric_group(n))
    assert s.c == 1 and s.valencies() == [1, n - 1]


def test_intransitive_group_rejected():
    with pytest.raises(SchemeError, match="orbit"):
        orbital_scheme(PermGroup(4, [(1, 0, 2, 3)]))


@given(st.integers(3, 9), st.integers(0, 10**6))
def test_orbital_schemes_match_brute_force(n, seed):
    rng = random.Random(seed)
    extra = list(range(n))
    rng.shuffle(extra)
    group = PermGroup(n, [tuple(list(range(1, n)) + [0]), tuple(extra)])
    if group.order() > 5000:
        group = PermGroup(n, [tuple(list(range(1, n)) + [0])])
    s = orbital_scheme(group)
    orbitals = brute_orbitals(group)
    assert len(orbitals) == s.c + 1
    for o in orbitals:
        assert len({s.relation_matrix[x][y] for x, y in o}) == 1
    table = brute_intersections(s.relation_matrix)
    assert all(s.intersection_numbers[k][i][j] == v for (k, i, j), v in table.items())


def test_t4_scheme_shape(t4_scheme, reference_scheme):
    assert t4_scheme.c == 5
    assert t4_scheme.valencies() == [1, 1, 2, 2, 2, 2]
    assert not t4_scheme.is_commutative()
    assert t4_scheme.noncommuting_triple() is not None
    assert schemes_isomorphic(t4_scheme, reference_scheme) is not None


def test_decompositions_in_reference_labels(fixtures, t4_scheme, reference_scheme):
    # relabel T4 into the reference vertex order so class labels agree
    g = fixtures["T4"]
    f, _ = schemes_isomorphic(reference_scheme, t4_scheme)
    inv = [0] * g.n
    for x, y in enumerate(f):
        inv[y] = x
    h = g.relabel(inv)
    assert relation_decomposition(reference_scheme, h) == {1, 3}
    assert relation_decomposition(reference_scheme, transpose(h)) == {3, 4}
    assert relation_decomposition(reference_scheme, symmetrize(h)) == {1, 3, 4}
    assert relation_decomposition(reference_scheme, complement(symmetrize(h))) == {2, 5}


@given(st.sampled_from(["N1", "N6", "T1", "T4", "T7", "J9"]))
def test_symmetrize_decomposition_is_union(fixtures, name):
    g = fixtures[name]
    aut = automorphism_group(g)
    if not aut.is_transitive():
        return
    s = orbital_scheme(aut)
    a, b, c = (relation_decomposition(s, x) for x in (g, transpose(g), symmetrize(g)))
    assert isinstance(a, frozenset) and c == a | b


def test_johnson_fusion(t4_scheme, reference_scheme):
    res = fuse(reference_scheme, [[1, 3, 4], [2, 5]])
    assert res.ok and res.scheme.is_symmetric()
    first = graph_from_classes(res.scheme, [1])
    assert verify_srg(first) == (10, 6, 3, 4)
    assert are_isomorphic(first, johnson_graph(5, 2))[0]
    assert are_isomorphic(graph_from_classes(res.scheme, [2]), kneser_graph(5, 2))[0]
    reference = scheme_from_matrix(load_relation_matrix(data_path("scheme_T4_fusion.txt")))
    assert schemes_isomorphic(reference, res.scheme) is not None


def test_fusion_counts(t4_scheme):
    fusions = feasible_fusions(t4_scheme)
    assert sum(1 for f in fusions if len(f.grouping) == 3) == 2
    assert all(f.scheme.c == len(f.grouping) for f in fusions)
    assert fuse(t4_scheme, [[1, 2, 3, 4, 5]]).scheme.c == 1


def test_fusion_failure_has_witness(t4_scheme):
    from dsrg.schemes import _set_partitions

    failures = [fuse(t4_scheme, g) for g in _set_partitions([1, 2, 3, 4, 5])]
    failures = [r for r in failures if not r.ok]
    assert failures
    for res in failures:
        w = res.witness
        label = {k: idx for idx, grp in enumerate(res.grouping, start=1) for k in grp}
        label[0] = 0
        mat = [[label[x] for x in row] for row in t4_scheme.relation_matrix]
        if w["kind"] == "intersection":
            i, j, _ = w["triple"]
            x, y = w["pair"]
            assert sum(1 for z in range(10) if mat[x][z] == i and mat[z][y] == j) == w["value"] != w["expected"]
        else:
            k = w["class"]
            assert len({mat[y][x] for x in range(10) for y in range(10) if mat[x][y] == k}) > 1


def test_bad_grouping_rejected(t4_scheme):
    with pytest.raises(SchemeError):
        fuse(t4_scheme, [[1, 2], [3]])


def test_axiom_failure_detected():
    # relation 1 is a path 0-1-2-3: end points and inner points have different valency
    mat = [[0, 1, 2, 2], [1, 0, 1, 2], [2, 1, 0, 1], [2, 2, 1, 0]]
    with pytest.raises(SchemeAxiomError) as exc:
        scheme_from_matrix(mat)
    assert exc.value.witness["kind"] == "intersection"
    square = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]
    assert scheme_from_matrix(square).valencies() == [1, 2, 1]


def test_two_class_fusions_fall_into_three_types(t4_scheme):
    two = [f.scheme for f in feasible_fusions(t4_scheme) if f.scheme.c == 2]
    assert len(two) == 4 and all(s.is_symmetric() for s in two)
    types = []
    for s in two:
        if not any(schemes_isomorphic(s, t) for t in types):
            types.append(s)
    assert len(types) == 3
    assert sorted(sorted(t.valencies()) for t in types) == [[1, 1, 8], [1, 3, 6], [1, 4, 5]]
