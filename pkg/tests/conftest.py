"""Shared oracles and the acceptance summary printed at the end of a run.

The oracles here deliberately avoid the library's enumeration and path
product code: children come from ``spec.arity`` plus ``VertexAddr.child``, and
weights along a path are multiplied one edge at a time.
"""

import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from treeshift import ROOT, SparseVector, VertexAddr, table_tree  # noqa: E402
from treeshift.weights import make_table  # noqa: E402


# -- brute-force oracles (rooted trees, finite arities) ---------------------------------

def brute_descendants(spec, v, n):
    """Chi^n(v) by plain recursion on the arity rule."""
    if n == 0:
        return [v]
    out = []
    for i in range(1, int(spec.arity(v)) + 1):
        out += brute_descendants(spec, v.child(i), n - 1)
    return out


def brute_path_product(w, v, u):
    """lambda(v -> u) as an edge-by-edge product on a rooted address."""
    assert u.path[:len(v.path)] == v.path
    prod = 1 + 0j
    for k in range(len(v.path) + 1, len(u.path) + 1):
        prod *= w.value(VertexAddr(0, u.path[:k]))
    return prod


def brute_shift(w, spec, f, n, max_depth):
    """(B^n f)(v) = sum over Chi^n(v) of lambda(v -> u) f(u), for every v up to max_depth."""
    out = {}
    for d in range(0, max_depth + 1):
        for v in brute_descendants(spec, ROOT, d):
            s = sum((brute_path_product(w, v, u) * f[u] for u in brute_descendants(spec, v, n)),
                    0j)
            if s != 0:
                out[v] = s
    return SparseVector(out)


def random_tree(rng, depth=6, max_children=3):
    """Random table tree: arities 1..max_children down to ``depth``, 1 below."""
    table = {}
    frontier = [ROOT]
    for _ in range(depth):
        nxt = []
        for v in frontier:
            k = int(rng.integers(1, max_children + 1))
            if k != 1:
                table[v] = k
            nxt += [v.child(i) for i in range(1, k + 1)]
        frontier = nxt
    return table_tree(table, 1)


def random_weights(rng, spec, depth):
    table = {}
    for d in range(1, depth + 1):
        for v in brute_descendants(spec, ROOT, d):
            r = float(np.exp(rng.uniform(-1, 1)))
            table[v] = r * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return make_table(table, complex(rng.uniform(0.5, 2)))


def random_vector(rng, vertices, k):
    idx = rng.choice(len(vertices), size=min(k, len(vertices)), replace=False)
    return SparseVector({vertices[i]: complex(rng.normal(), rng.normal()) for i in idx})


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# -- acceptance summary -----------------------------------------------------------------

ACCEPTANCE = {
    "test_criterion_01_keylemma_optimizer": "1  key-lemma optimizer vs simplex grid",
    "test_criterion_02_shift_identity": "2  shift identity vs definitional sum",
    "test_criterion_03_rolewicz_thresholds": "3  Rolewicz thresholds",
    "test_criterion_04_dyadic_counterexample": "4  dyadic counterexample bounds",
    "test_criterion_05_rooted_witness": "5  rooted witness exactness",
    "test_criterion_06_c0_right_inverse": "6  c0 right inverse",
    "test_criterion_07_unrooted_cancellation": "7  unrooted cancellation",
    "test_criterion_08_fertility": "8  fertility",
    "test_criterion_09_theta_bijection": "9  theta bijection",
    "test_criterion_10_determinism": "10 gallery determinism",
}

_outcomes = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1].split("[")[0]
    if name not in ACCEPTANCE:
        return
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(name, "passed")
        _outcomes[name] = "failed" if "failed" in (prev, report.outcome) else report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for name, label in ACCEPTANCE.items():
        if name in _outcomes:
            verdict = "PASS" if _outcomes[name] == "passed" else _outcomes[name].upper()
            terminalreporter.write_line(f"criterion {label:<42s} {verdict}")
