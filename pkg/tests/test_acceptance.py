"""The ten acceptance criteria, at their stated tolerances.

Each test is one criterion; conftest prints a pass/fail line per criterion at
the end of the run.
"""

import itertools
import math
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import (brute_descendants, brute_path_product, brute_shift, random_tree,
                      random_vector, random_weights)
from treeshift import (INF, ROOT, VertexAddr, apply, dyadic, find_fertile, generation,
                       menthe, menthe_vertex, nadic, spine_tree, staircase)
from treeshift import criteria as C
from treeshift import gallery
from treeshift import weights as W
from treeshift.cli import main as cli_main
from treeshift.witnesses import (build_rooted, build_unrooted_power, keylemma_optimal,
                                 right_inverse, solve_exponents)

INPUTS = Path(__file__).resolve().parents[1] / "demos" / "inputs"


# -- 1 ----------------------------------------------------------------------------------

def _simplex_grid(d, steps=100):
    """All points of the simplex with coordinates in (1/steps) Z."""
    pts = [c for c in itertools.product(range(steps + 1), repeat=d - 1) if sum(c) <= steps]
    a = np.array(pts, dtype=float).reshape(len(pts), d - 1)
    return np.hstack([a, steps - a.sum(axis=1, keepdims=True)]) / steps


def test_criterion_01_keylemma_optimizer():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    grids = {d: _simplex_grid(d) for d in range(1, 5)}
    for _ in range(200):
        d = int(rng.integers(1, 5))
        mods = 10 ** rng.uniform(-3, 3, size=d)
        mu = mods * np.exp(1j * rng.uniform(0, 2 * np.pi, size=d))
        x, value = keylemma_optimal(mu)
        expected = 1 / sum(1 / m for m in mods)
        assert abs(value - expected) <= 1e-12 * expected
        assert abs(x.sum() - 1) < 1e-12 and np.all(x >= 0)
        assert np.max(x * mods) == pytest.approx(value, rel=1e-12)
        grid_sup = (grids[d] * mods).max(axis=1)
        assert value <= grid_sup.min() * (1 + 1e-12)
    assert time.perf_counter() - t0 < 10


# -- 2 ----------------------------------------------------------------------------------

def test_criterion_02_shift_identity():
    rng = np.random.default_rng(2)
    for _ in range(100):
        spec = random_tree(rng, depth=6, max_children=3)
        w = random_weights(rng, spec, 6)
        verts = [v for d in range(7) for v in brute_descendants(spec, ROOT, d)]
        f = random_vector(rng, verts, int(rng.integers(1, 8)))
        n = int(rng.integers(0, 7))
        fast = apply(w, spec, f, n)
        slow = brute_shift(w, spec, f, n, max_depth=6)
        for v in fast.support | slow.support:
            assert abs(fast[v] - slow[v]) <= 1e-12 * max(1.0, abs(slow[v]))


# -- 3 ----------------------------------------------------------------------------------

@pytest.mark.parametrize("N", [2, 3])
def test_criterion_03_rolewicz_thresholds(N):
    p = 2.0
    pstar = p / (p - 1)
    spec = nadic(N)
    thr = N ** (-1 / pstar)
    for factor, grows in ((0.95, False), (1.05, True)):
        w = W.make_rolewicz(thr * factor)
        vals = np.array([C.crit_sum(w, spec, ROOT, n, pstar).value for n in range(1, 31)])
        steps = np.diff(vals)
        assert np.all(steps > 0) if grows else np.all(steps < 0)
        rep = C.assemble_verdict("rooted-hc", w, spec, horizon=30, space="l2")
        assert rep.verdict.affirmative == grows
    for lam, grows in ((0.95, False), (1.05, True)):
        w = W.make_rolewicz(lam)
        vals = np.array([C.crit_sup(w, spec, ROOT, n).value for n in range(1, 31)])
        steps = np.diff(vals)
        assert np.all(steps > 0) if grows else np.all(steps < 0)
        rep = C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=30, space="l2")
        assert rep.verdict.affirmative == grows
    # the sup threshold is 1, not N^{-1/p*}: just above the sum threshold the
    # sup criterion still fails
    w = W.make_rolewicz(thr * 1.05)
    assert not C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=30).verdict.affirmative


# -- 4 ----------------------------------------------------------------------------------

def test_criterion_04_dyadic_counterexample():
    t0 = time.perf_counter()
    p = 2.0
    pstar = p / (p - 1)
    spec = dyadic()
    w = W.make_dyadic_counterexample(p)
    a = w.alpha
    # (a)
    rep = W.operator_norm(w, spec, "l2")
    assert rep.exact
    assert rep.value <= (1 + 0.5 ** (a * pstar)) ** (1 / pstar)
    # (b)
    for n in range(1, 13):
        assert C.crit_sum(w, spec, ROOT, n, pstar).value >= 2 ** (n * (1 - a * pstar))
    # (c)
    probes = C.default_probes(spec)
    assert max(C.crit_sup(w, spec, v, n).value for v in probes for n in range(1, 13)) <= 1
    # (d)
    q = w.m0 / p
    running = max(C.crit_sum(w, spec, v, n, q).value for v in probes for n in range(1, 13))
    k = np.arange(1, 10 ** 6 + 1, dtype=float)
    assert running <= float(np.sum(k ** (-a * w.m0 / p))) + 1e-3
    assert time.perf_counter() - t0 < 60


# -- 5 ----------------------------------------------------------------------------------

def _random_P(rng):
    d = int(rng.integers(1, 3))
    k = int(rng.integers(1, 5))
    if d == 1:
        return [int(x) for x in rng.choice(np.arange(1, 10), k, replace=False)]
    pool = [a for a in itertools.product(range(5), repeat=2) if any(a)]
    return [list(pool[i]) for i in rng.choice(len(pool), k, replace=False)]


def test_criterion_05_rooted_witness():
    rng = np.random.default_rng(5)
    w, spec = W.make_rolewicz(2), dyadic()
    verts = [v for d in range(5) for v in generation(spec, d).vertices]
    fast_cases = 0
    for _ in range(40):
        P = _random_P(rng)
        sol = solve_exponents(P)
        d = len(sol.s)
        fs = [random_vector(rng, verts, 3) for _ in range(d)]
        g = random_vector(rng, verts, int(rng.integers(1, 6)))
        gnorm = g.norm("l2")
        n_min = max(v.depth for v in set(g.support).union(*(f.support for f in fs))) + 1
        reps = {}
        for n in range(n_min, 21):
            reps[n] = build_rooted("l2", w, spec, fs, g, P, n)
            assert reps[n].hit_error <= 1e-10 * (1 + gnorm)
        r10, r20 = reps[10], reps[20]
        # a single bump entry has modulus |g(a)|^s 2^{-n s}: over ten steps the
        # approach norms shrink by exactly 2^{-10 s_j}
        for j, (a, b) in enumerate(zip(r10.approach_norms, r20.approach_norms)):
            assert b <= a * 2 ** (-10 * sol.s[j]) * (1 + 1e-9)
        # the tenfold decrease holds whenever every s_j >= log2(10)/10
        if min(sol.s) >= math.log2(10) / 10:
            fast_cases += 1
            for a, b in zip(r10.approach_norms, r20.approach_norms):
                assert b <= a / 10
            for key, a in r10.collapse_norms.items():
                assert r20.collapse_norms[key] <= a / 10
    assert fast_cases >= 20


# -- 6 ----------------------------------------------------------------------------------

def test_criterion_06_c0_right_inverse():
    rng = np.random.default_rng(6)
    families = [
        (dyadic(), W.make_rolewicz(2)),
        (dyadic(), W.make_dyadic_counterexample(2.0)),
        (nadic(3), W.make_rolewicz(0.7 - 0.4j)),
        (nadic(3), W.make_fertile_no_algebra(nadic(3), 2.0)),
        (staircase(), W.make_rolewicz(1.5)),
        (menthe(), W.make_menthe_geometric(beta_ratio=2.0)),
    ]
    for _ in range(50):
        spec, w = families[int(rng.integers(len(families)))]
        n = int(rng.integers(1, 9))
        depth = int(rng.integers(0, 4))
        if spec.tag == "menthe":
            # the root has infinitely many children; probe inside the rays
            a = menthe_vertex(int(rng.integers(1, 6)), depth + 1)
        else:
            gen = generation(spec, depth).vertices
            a = gen[int(rng.integers(len(gen)))]
        R, value, truncated = right_inverse(w, spec, a, n)
        assert not truncated
        image = apply(w, spec, R, n)
        assert image.support <= {a}
        assert abs(image[a] - 1) <= 1e-12
        lams = [brute_path_product(w, a, u) for u in brute_descendants(spec, a, n)]
        S = math.fsum(abs(z) for z in lams)
        # every entry x_u / lambda(a -> u) with x_u = |lambda(a -> u)| / S has modulus 1/S
        assert abs(R.sup() - 1 / S) <= 1e-10 / S
        assert abs(value - keylemma_optimal([1 / z for z in lams])[1]) <= 1e-10 * value
        assert len(R) == len(lams)


# -- 7 ----------------------------------------------------------------------------------

def test_criterion_07_unrooted_cancellation(tmp_path):
    spec = spine_tree()
    w = W.make_bilateral_rolewicz(spec, 2, 0, 0, {0: 1})
    rng = np.random.default_rng(7)
    pool = ([VertexAddr(k) for k in range(1, 5)]
            + [v for d in range(0, 4) for v in generation(spec, d).vertices])
    saw_f2 = False
    for m in (2, 3):
        for _ in range(10):
            f = random_vector(rng, pool, 4)
            g = random_vector(rng, pool, 2)
            F = f.support | g.support
            gens = [v.generation for v in F]
            n_min = max(gens) - min(gens) + 1
            fmax = f.sup()
            top = max(gens)
            # a left product over n edges has at most max(top, 0) + 1 factors of 2,
            # the rest are 1/2: |lambda| <= 2^{-n + 2 max(top, 0) + 2}
            c = 2 * max(top, 0) + 2 + math.log2(len(F))
            for n in sorted({n_min, 10, 20, 30}):
                if n < n_min:
                    continue
                rep = build_unrooted_power("l2", w, spec, f, g, m, n)
                saw_f2 |= bool(rep.classes["F2"])
                for _, err, _ in rep.cancellation:
                    assert err <= 1e-10
                assert rep.residual_terms <= fmax ** m * 2 ** (-n + c)
                if n == 30:
                    assert rep.residual_terms < 1e-3
    assert saw_f2
    for m in (2, 3):
        code = cli_main(["witness", str(INPUTS / "bilateral.json"),
                         str(INPUTS / "bilateral-rolewicz-2.json"), "--mode", "unrooted-power",
                         "--m", str(m), "--n", "60", "--f", '[["1", 0.5, 0], ["^2", 0.7, 0]]',
                         "--g", '[["1.2", 1, 0], ["^1", -0.4, 0]]', "--out", str(tmp_path)])
        assert code == 0


# -- 8 ----------------------------------------------------------------------------------

def test_criterion_08_fertility():
    for N in (2, 3, 4, INF):
        v = find_fertile(nadic(N))
        assert v.status == "fertile" and v.vertex == ROOT
    assert find_fertile(staircase()).status == "none"
    for N in (2, 3, INF):
        spec = nadic(N)
        w = W.make_fertile_no_algebra(spec, 2.0)
        hc = C.assemble_verdict("rooted-hc", w, spec, horizon=20)
        assert hc.verdict.affirmative
        assert all(b > a for a, b in zip(hc.minima, hc.minima[1:]))
        probes = C.default_probes(spec)
        assert max(C.crit_sup(w, spec, v, n).value for v in probes for n in range(1, 21)) <= 1
        alg = C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=20)
        assert alg.verdict.kind == "stalled-below"


# -- 9 ----------------------------------------------------------------------------------

def test_criterion_09_theta_bijection():
    for n in range(1, 13):
        words = list(itertools.product((1, 2), repeat=n))   # lexicographic order
        assert [W.theta(wd) for wd in words] == list(range(1, 2 ** n + 1))


# -- 10 ---------------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(gallery.PIPELINES))
def test_criterion_10_determinism(name, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        assert cli_main(["gallery", name, "--out", str(d)]) == 0
        outs.append((d / f"gallery-{name}.json").read_bytes())
    assert outs[0] == outs[1]
