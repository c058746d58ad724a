import json
import random

import pytest

from dsrg.canon import certificate
from dsrg.classify import (
    classify_family,
    isomorphic_to_any,
    orbits_under_point_relabeling,
    sample_classes,
)
from dsrg.construct2 import build_d1
from dsrg.designs import ParameterError, chunked_pointwise_family, enumerate_pointwise_partitions
from dsrg.graphs import transpose

from conftest import random_perm


@pytest.fixture(scope="module")
def families_n5():
    return list(enumerate_pointwise_partitions(5, 2, 2))


def test_relabelings_form_one_class(fixtures):
    rng = random.Random(3)
    g = fixtures["N3"]
    report = classify_family([g.relabel(random_perm(12, rng)) for _ in range(5)])
    assert len(report.classes) == 1 and report.classes[0].size == 5
    assert report.classes[0].aut_order == 4


def test_report_invariants(fixtures):
    graphs = [fixtures["T1"], fixtures["T2"], fixtures["T1"], transpose(fixtures["T7"]), fixtures["T7"]]
    report = classify_family(graphs)
    assert sum(report.sizes()) == len(graphs) == report.total
    assert report.sizes() == [2, 1, 2]
    assert len({c.certificate for c in report.classes}) == len(report.classes)
    assert [c.self_transpose for c in report.classes] == [False, False, True]
    assert report.transpose_closure == 5
    json.dumps(report.to_json())


def test_parallel_classification_matches_serial(fixtures):
    graphs = [fixtures[f"T{i}"] for i in range(1, 8)] * 2
    assert classify_family(graphs, jobs=2).to_json() == classify_family(graphs).to_json()


def test_orbits_of_the_243_families(families_n5):
    orbits = orbits_under_point_relabeling(families_n5, 5)
    assert sum(o.orbit_size for o in orbits) == 243
    assert sorted(o.orbit_size for o in orbits) == sorted([15, 30, 60, 6, 60, 60, 12])
    for o in orbits:
        assert o.orbit_size * o.stabilizer.order() == 120
        assert len(o.members) == o.orbit_size


def test_same_orbit_gives_isomorphic_graphs(families_n5):
    orbits = orbits_under_point_relabeling(families_n5, 5)
    for o in orbits:
        certs = {certificate(build_d1(families_n5[i])) for i in o.members}
        assert len(certs) == 1


def test_symmetric_family_has_full_stabilizer():
    fam = chunked_pointwise_family(3, 2, 1, 1)
    (orbit,) = orbits_under_point_relabeling([fam], 3)
    assert orbit.orbit_size == 1 and orbit.stabilizer.order() == 6


def test_refuses_large_degree():
    with pytest.raises(ParameterError, match="sampling"):
        orbits_under_point_relabeling([], 9)


def test_sampling_is_deterministic_and_independent_of_jobs():
    a = sample_classes(7, 2, 3, 300, seed=5, chunk=100)
    b = sample_classes(7, 2, 3, 300, seed=5, jobs=2, chunk=100)
    assert a.certificates == b.certificates
    assert a.params == (14, 6, 3, 2, 3)
    assert 0 < a.distinct <= 300


def test_isomorphic_to_any(fixtures):
    others = [fixtures["T1"], fixtures["T2"], fixtures["T4"]]
    rng = random.Random(1)
    assert isomorphic_to_any(fixtures["T4"].relabel(random_perm(10, rng)), others) == 2
    assert isomorphic_to_any(fixtures["J9"], others) is None
