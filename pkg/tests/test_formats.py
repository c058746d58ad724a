import io
import json
import random

import pytest
from hypothesis import given, strategies as st

from dsrg.canon import certificate
from dsrg.construct2 import build_d1
from dsrg.designs import chunked_pointwise_family
from dsrg.formats import (
    FIXTURE_NAMES,
    FormatError,
    digraph_from_json,
    digraph_to_json,
    dumps_digraph01,
    iter_digraph01,
    load_fixture,
    loads_digraph01,
    parse_graphs,
    read_graph,
    write_graph,
    write_stream,
)
from dsrg.graphs import verify_dsrg

from conftest import random_digraph


@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 10**6))
def test_digraph01_round_trip_is_bit_exact(n, p, seed):
    g = random_digraph(n, p, random.Random(seed))
    text = dumps_digraph01(g)
    assert loads_digraph01(text) == g
    assert dumps_digraph01(loads_digraph01(text)) == text
    assert digraph_from_json(digraph_to_json(g)) == g


@pytest.mark.parametrize("fmt", ["digraph01", "json"])
def test_file_round_trip_keeps_params_certificate_and_labels(tmp_path, fmt):
    g = build_d1(chunked_pointwise_family(5, 2, 2, 1))
    path = tmp_path / f"g.{'txt' if fmt == 'digraph01' else 'json'}"
    write_graph(g, path, fmt)
    h = read_graph(path)
    assert h == g and h.labels == g.labels
    assert verify_dsrg(h) == verify_dsrg(g)
    assert certificate(h) == certificate(g)


def test_streams():
    graphs = [load_fixture("T1"), load_fixture("N1"), load_fixture("J9")]
    for fmt in ("digraph01", "json"):
        buf = io.StringIO()
        assert write_stream(graphs, buf, fmt) == 3
        assert [g.rows for g in parse_graphs(buf.getvalue())] == [g.rows for g in graphs]
    as_list = json.dumps([digraph_to_json(g) for g in graphs])
    assert len(list(parse_graphs(as_list))) == 3
    assert len(list(iter_digraph01("# comment\n\n2\n01\n10\n"))) == 1


@pytest.mark.parametrize("text", ["3\n010\n001\n", "2\n012\n10\n", "x\n", "2\n0a\n10\n"])
def test_malformed_input(text):
    with pytest.raises(FormatError):
        loads_digraph01(text)


def test_fixtures_load_and_verify():
    assert len(FIXTURE_NAMES) == 16
    for name in FIXTURE_NAMES:
        g = load_fixture(name)
        expected = (12, 6, 4, 2, 4) if name.startswith("N") else (10, 4, 2, 1, 2)
        assert verify_dsrg(g) == expected, name
    assert load_fixture("T4").labels[0][0] in range(5)
    with pytest.raises(KeyError):
        load_fixture("N8")
