import random

import pytest
from hypothesis import given, strategies as st

from dsrg.construct2 import (
    C2Spec,
    ConstructionError,
    blow_up,
    build,
    build_d1,
    build_d2,
    expected_params_c2,
)
from dsrg.designs import PointwiseFamily, chunked_pointwise_family, projective_plane_family
from dsrg.graphs import Digraph, complement, verify_dsrg

from test_designs import admissible

SMALL = [p for p in admissible() if p[0] * p[1] <= 200]


def test_examples():
    fam = chunked_pointwise_family(5, 2, 2, 1)
    assert verify_dsrg(build_d1(fam)) == (10, 4, 2, 1, 2)
    assert verify_dsrg(build_d2(fam)) == (10, 5, 3, 2, 3)
    assert verify_dsrg(build_d1(chunked_pointwise_family(7, 3, 2, 1))) == (21, 6, 2, 1, 2)
    assert verify_dsrg(build_d2(chunked_pointwise_family(13, 3, 4, 1))) == (39, 14, 6, 5, 5)
    assert verify_dsrg(build_d1(chunked_pointwise_family(4, 3, 2, 2))) == (12, 6, 4, 2, 4)
    assert expected_params_c2(7, 2, 3, 1) == (14, 6, 3, 2, 3)


def test_projective_plane_order_two():
    fam = projective_plane_family(2)
    assert verify_dsrg(build_d1(fam)) == (21, 6, 2, 1, 2)
    assert verify_dsrg(build_d2(fam)) == (21, 8, 4, 3, 3)


def test_small_blow_ups():
    fam = chunked_pointwise_family(3, 2, 1, 1)
    assert verify_dsrg(blow_up(build_d1(fam), "d1", 2)) == (12, 4, 2, 0, 2)
    assert verify_dsrg(blow_up(build_d2(fam), "d2", 2)) == (12, 7, 5, 4, 4)


def test_blow_up_identity():
    g = build_d1(chunked_pointwise_family(5, 2, 2, 1))
    assert blow_up(g, "d1", 1).rows == g.rows


def test_blow_up_needs_labels():
    with pytest.raises(ConstructionError):
        blow_up(Digraph(3, (2, 4, 1)), "d1", 2)


def test_blow_up_refuses_t_ne_mu():
    g = build_d2(chunked_pointwise_family(13, 3, 4, 1))  # t = 6, mu = 5
    with pytest.raises(ConstructionError, match="t == mu"):
        blow_up(g, "d1", 2)


def test_invalid_family_rejected():
    fam = PointwiseFamily(3, (((1,), (1,)), ((0,), (2,)), ((0,), (1,))))
    with pytest.raises(ConstructionError):
        build_d1(fam)


def test_complement_of_twelve_vertex_graph():
    p = verify_dsrg(complement(build_d1(chunked_pointwise_family(4, 3, 2, 2))))
    assert p.k == 5 and p == (12, 5, 3, 2, 2)


def random_family(n, s, l, d, rng):
    """Chunked family with each point's neighbours shuffled before chunking (d = 1 only keeps validity)."""
    if d != 1:
        return chunked_pointwise_family(n, s, l, d)
    fams = []
    for g in range(n):
        others = [p for p in range(n) if p != g]
        rng.shuffle(others)
        fams.append(tuple(tuple(others[i * l:(i + 1) * l]) for i in range(s)))
    return PointwiseFamily(n, tuple(fams))


@given(st.sampled_from(SMALL), st.sampled_from([1, 2, 3]), st.integers(0, 10**6))
def test_theorem_formulas(params, m, seed):
    n, s, l, d = params
    fam = random_family(n, s, l, d, random.Random(seed))
    g1 = build_d1(fam)
    p1 = verify_dsrg(g1)
    assert p1 == expected_params_c2(n, s, l, d, "d1")
    assert p1.t == p1.mu
    assert verify_dsrg(build_d2(fam)) == expected_params_c2(n, s, l, d, "d2")
    if m > 1 and n * s * m <= 300:
        assert verify_dsrg(build(C2Spec(fam, "d1", m))) == expected_params_c2(n, s, l, d, "d1", m)
        assert verify_dsrg(build(C2Spec(fam, "d2", m))) == expected_params_c2(n, s, l, d, "d2", m)


@given(st.sampled_from(SMALL))
def test_out_neighbourhood_depends_on_point(params):
    n, s, l, d = params
    fam = chunked_pointwise_family(n, s, l, d)
    g1, g2 = build_d1(fam), build_d2(fam)
    by_point = {}
    for idx, lab in enumerate(g1.labels):
        by_point.setdefault(lab[0], []).append(idx)
    assert sorted(len(v) for v in by_point.values()) == [s] * n
    for idxs in by_point.values():
        assert len({g1.rows[i] for i in idxs}) == 1
        mask = sum(1 << i for i in idxs)
        assert len({g2.rows[i] & ~mask for i in idxs}) == 1
