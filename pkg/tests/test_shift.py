import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_descendants, brute_shift, random_tree, random_vector, random_weights
from treeshift import ROOT, SparseVector, VertexAddr, apply, dyadic, orbit_norms, spine_tree
from treeshift import weights as W
from treeshift.errors import InvalidArgument

seeds = st.integers(0, 2 ** 32 - 1)


def _setup(seed):
    rng = np.random.default_rng(seed)
    spec = random_tree(rng, depth=5)
    w = random_weights(rng, spec, 5)
    verts = [v for d in range(6) for v in brute_descendants(spec, ROOT, d)]
    return rng, spec, w, verts


def _close(a, b, tol=1e-12):
    return all(abs(a[v] - b[v]) <= tol * max(1.0, abs(b[v])) for v in a.support | b.support)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 5))
def test_apply_matches_definition(seed, n):
    rng, spec, w, verts = _setup(seed)
    f = random_vector(rng, verts, 6)
    assert _close(apply(w, spec, f, n), brute_shift(w, spec, f, n, 5))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 3), st.integers(0, 3))
def test_semigroup(seed, m, n):
    rng, spec, w, verts = _setup(seed)
    f = random_vector(rng, verts, 6)
    assert _close(apply(w, spec, f, m + n), apply(w, spec, apply(w, spec, f, n), m))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(0, 5))
def test_linearity(seed, n):
    rng, spec, w, verts = _setup(seed)
    f, g = random_vector(rng, verts, 5), random_vector(rng, verts, 5)
    c = complex(rng.normal(), rng.normal())
    assert _close(apply(w, spec, f * c + g, n), apply(w, spec, f, n) * c + apply(w, spec, g, n))


def test_shift_kills_above_root():
    w, spec = W.make_rolewicz(2), dyadic()
    f = SparseVector({"1.2": 1})
    assert apply(w, spec, f, 2) == SparseVector({ROOT: 4})
    assert not apply(w, spec, f, 3)


def test_unrooted_shift_moves_along_spine():
    spec = spine_tree()
    w = W.make_bilateral_rolewicz(spec, 2, 0, 0, {0: 1})
    f = SparseVector({ROOT: 1})
    # weights on the path ^3 -> ^2 -> ^1 -> r sit at generations -2, -1, 0
    assert apply(w, spec, f, 3) == SparseVector({VertexAddr(3): 0.25})
    g = SparseVector({"2.1": 1j})
    assert apply(w, spec, g, 3) == SparseVector({VertexAddr(1): 1j * 2 * 2 * 1})


def test_orbit_norms():
    w, spec = W.make_rolewicz(0.5), dyadic()
    f = SparseVector({"1.1": 1})
    got = orbit_norms(w, spec, f, SparseVector(), "l2", 3)
    assert [n for n, _ in got] == [0, 1, 2, 3]
    assert [x for _, x in got] == pytest.approx([1, 0.5, 0.25, 0])
    with pytest.raises(InvalidArgument):
        orbit_norms(w, spec, f, f, "l2", -1)
    with pytest.raises(InvalidArgument):
        apply(w, spec, f, -1)
