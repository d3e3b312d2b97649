import json

import pytest

from treeshift import (INF, SparseVector, VertexAddr, dyadic, menthe, nadic, spine_tree,
                       staircase, table_tree)
from treeshift import weights as W
from treeshift.errors import InvalidArgument
from treeshift.io import (load_tree, load_weights, parse_complex, parse_exponents, parse_vector,
                          save_tree, save_weights, weights_from_dict)

PROBES = [VertexAddr(0, (1,)), VertexAddr(0, (2, 1)), VertexAddr(0, (1, 1, 1))]


@pytest.mark.parametrize("x,z", [([1, 2], 1 + 2j), (3, 3), ("1+2i", 1 + 2j), (0.5, 0.5)])
def test_parse_complex(x, z):
    assert parse_complex(x) == z


def test_parse_complex_rejects_triples():
    with pytest.raises(InvalidArgument):
        parse_complex([1, 2, 3])


@pytest.mark.parametrize("spec", [dyadic(), nadic(INF), menthe(), staircase(), spine_tree(),
                                  table_tree({VertexAddr(0, (2,)): 3}, 2)])
def test_tree_file_roundtrip(spec, tmp_path):
    path = tmp_path / "t.json"
    save_tree(spec, path)
    assert load_tree(path) == spec


@pytest.mark.parametrize("make", [
    lambda s: W.make_rolewicz(2 - 1j),
    lambda s: W.make_table({VertexAddr(0, (1,)): 0.5j}, 2),
    lambda s: W.make_symmetric({1: 3, 2: 0.5}, 1.5),
    lambda s: W.make_dyadic_counterexample(3.0),
    lambda s: W.make_menthe_geometric(beta_ratio=2.0),
    lambda s: W.make_fertile_no_algebra(s, 2.0),
])
def test_weight_file_roundtrip(make, tmp_path):
    spec = dyadic()
    w = make(spec)
    save_tree(spec, tmp_path / "tree.json")
    save_weights(w, tmp_path / "w.json", "tree.json")
    w2, spec2 = load_weights(tmp_path / "w.json")
    assert spec2 == spec
    for v in PROBES:
        assert w2.value(v) == pytest.approx(w.value(v), rel=1e-15)
    assert w2.to_dict() == w.to_dict()


def test_bilateral_weight_file_inline_tree(tmp_path):
    spec = spine_tree()
    w = W.make_bilateral_rolewicz(spec, 2, -1, 1, {-1: 0.5, 0: 1j, 1: 3})
    save_weights(w, tmp_path / "w.json", spec)
    w2, spec2 = load_weights(tmp_path / "w.json")
    for v in (VertexAddr(2), VertexAddr(1), VertexAddr(0, (1,)), VertexAddr(0, (1, 1))):
        assert w2.value(v) == w.value(v)


def test_weights_need_a_tree(tmp_path):
    path = tmp_path / "w.json"
    save_weights(W.make_rolewicz(2), path)
    with pytest.raises(InvalidArgument):
        load_weights(path)
    w, spec = load_weights(path, dyadic())
    assert spec == dyadic()


def test_unknown_builtin():
    with pytest.raises(InvalidArgument):
        weights_from_dict({"builtin": "nope"}, dyadic())


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(InvalidArgument):
        load_tree(path)


def test_parse_vector_literal_and_file(tmp_path):
    f = parse_vector('[["1.2", 1, 0], ["^1", 0, -2]]')
    assert f == SparseVector({"1.2": 1, "^1": -2j})
    path = tmp_path / "v.json"
    path.write_text(json.dumps(f.to_triples()))
    assert parse_vector(str(path)) == f
    with pytest.raises(InvalidArgument):
        parse_vector("1.2")
    with pytest.raises(InvalidArgument):
        parse_vector('[["1..2", 1, 0]]')


def test_parse_exponents():
    assert parse_exponents("1,2, 3") == [1, 2, 3]
    assert parse_exponents("[[1,0],[0,1]]") == [[1, 0], [0, 1]]
