import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from treeshift import C0, L1, SparseVector, SpaceTag, VertexAddr, cw_product, lp, norm, power
from treeshift.errors import InvalidArgument
from treeshift.vectors import principal_power

# keep the numpy oracle away from underflow; scaling has its own test below
finite = st.floats(-1e3, 1e3, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-100)
cplx = st.builds(complex, finite, finite)
addrs = st.builds(VertexAddr, st.just(0), st.lists(st.integers(1, 3), max_size=3).map(tuple))
vectors = st.dictionaries(addrs, cplx, max_size=8).map(SparseVector)


@pytest.mark.parametrize("text,tag", [
    ("l1", L1), ("c0", C0), ("l2", lp(2)), ("ℓ^3", lp(3)), ("l1.5", lp(1.5)),
])
def test_space_parse(text, tag):
    assert SpaceTag.parse(text) == tag


def test_space_conjugates():
    assert L1.conjugate == math.inf
    assert C0.conjugate == 1
    assert lp(3).conjugate == pytest.approx(1.5)
    assert str(lp(2)) == "l2" and str(lp(2.5)) == "l2.5"
    for bad in ("l0.5", "lx", "c1"):
        with pytest.raises(InvalidArgument):
            SpaceTag.parse(bad)


@given(vectors)
def test_norms_against_numpy(f):
    a = np.array([z for _, z in f.items()], dtype=complex)
    if a.size == 0:
        a = np.zeros(1)
    assert norm(f, "l1") == pytest.approx(np.sum(np.abs(a)), rel=1e-12, abs=1e-300)
    assert norm(f, "l2") == pytest.approx(np.sqrt(np.sum(np.abs(a) ** 2)), rel=1e-12, abs=1e-300)
    assert norm(f, "c0") == pytest.approx(np.max(np.abs(a)), rel=1e-12, abs=1e-300)


def test_norm_handles_huge_and_tiny_entries():
    f = SparseVector({"1": 1e200, "2": 1e200})
    assert norm(f, "l2") == pytest.approx(math.sqrt(2) * 1e200)
    g = SparseVector({"1": 1e-200, "2": 1e-200})
    assert norm(g, "l3") == pytest.approx(2 ** (1 / 3) * 1e-200)


@given(vectors, vectors)
def test_product_is_coordinatewise(f, g):
    h = cw_product(f, g)
    assert h.support <= f.support & g.support
    for v in f.support | g.support:
        assert h[v] == pytest.approx(f[v] * g[v], rel=1e-12, abs=1e-300)
    assert cw_product(f, g) == cw_product(g, f)


@given(vectors, vectors)
def test_sum_and_difference(f, g):
    s, d = f + g, f - g
    for v in f.support | g.support:
        assert s[v] == f[v] + g[v]
        assert d[v] == f[v] - g[v]


@given(cplx, st.floats(0.05, 4))
def test_principal_power(z, s):
    assume(abs(z) > 1e-6)
    w = principal_power(z, s)
    assert abs(w) == pytest.approx(abs(z) ** s, rel=1e-12)
    # Arg in (-pi, pi]: a zero imaginary part (of either sign) sits on +pi
    arg = math.atan2(z.imag + 0.0, z.real)
    assert cmath.isclose(w, cmath.exp(s * complex(math.log(abs(z)), arg)), rel_tol=1e-9)


@given(cplx, st.integers(1, 5))
def test_power_inverts_root(z, m):
    assume(abs(z) > 1e-6)
    r = principal_power(z, 1 / m)
    assert cmath.isclose(r ** m, z, rel_tol=1e-9)


def test_power_vector_and_negative_zero_imag():
    f = SparseVector({"1": complex(-4, -0.0)})
    # Arg must be +pi here, not -pi
    assert power(f, 0.5)["1"] == pytest.approx(2j)


def test_triples_roundtrip():
    f = SparseVector({"1.2": 1 + 2j, "^1": -3})
    assert SparseVector.from_triples(f.to_triples()) == f
    # sorted by address: ascent first, then path
    assert f.to_triples() == [["1.2", 1.0, 2.0], ["^1", -3.0, 0.0]]


def test_zero_entries_are_dropped():
    f = SparseVector({"1": 0, "2": 1})
    assert len(f) == 1 and f["1"] == 0
    assert not SparseVector()


def test_scalar_scaling_and_division():
    f = SparseVector({"1": 2})
    assert (f * 3)["1"] == 6 and (f / 2)["1"] == 1
    assert (-f)["1"] == -2
