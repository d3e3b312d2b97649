"""End-to-end runs of the worked examples: construct, check norms, evaluate
criteria and build witnesses where applicable.

Each pipeline returns a JSON-able dict of rounded numbers and booleans.  The
expected dicts live in ``data/gallery`` and are rewritten only on request.
"""

from __future__ import annotations

import itertools
import json
import math
from pathlib import Path
from typing import Callable, Dict

import numpy as np

from . import criteria as C
from . import weights as W
from . import witnesses as X
from .trees import (INF, ROOT, VertexAddr, children_n, count_descendants, dyadic,
                    find_fertile, generation, menthe, nadic, spine_tree, staircase,
                    staircase_vertex)
from .vectors import SparseVector, SpaceTag, norm

DATA = Path(__file__).parent / "data" / "gallery"


def _r(x):
    """Round to 10 significant digits so reports are stable across platforms."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if x is None:
        return None
    x = float(x)
    if not math.isfinite(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.10g}")


def _verdict(report: C.CriterionReport) -> dict:
    v = report.verdict
    out = {"kind": v.kind}
    if v.kind == "diverges-up-to-horizon":
        out["last_n"] = v.witness[-1]
        out["last_min"] = _r(report.minima[v.witness[-1] - 1])
    elif v.kind == "stalled-below":
        out["bound"] = _r(v.bound)
    return out


def _norms(w, spec, spaces=("l1", "l2", "c0")) -> dict:
    out = {}
    for s in spaces:
        exact = W.operator_norm(w, spec, s)
        brute = W.operator_norm(_Plain(w), spec, s, budget=2_000)
        out[s] = {"value": _r(exact.value), "exact": exact.exact,
                  "budgeted": _r(brute.value)}
    return out


class _Plain(W.WeightFamily):
    """Same values, no closed forms: forces the enumeration paths."""

    def __init__(self, w):
        self.w = w

    def value(self, v):
        return self.w.value(v)

    def tail_sum(self, spec, v, q):
        return self.w.tail_sum(spec, v, q)


def _monotone(vals):
    d = np.diff(vals)
    return {"increasing": bool(np.all(d > 0)), "decreasing": bool(np.all(d < 0))}


# -- pipelines ------------------------------------------------------------------------

def rolewicz_threshold() -> dict:
    out = {}
    p = 2.0
    pstar = p / (p - 1)
    for N in (2, 3):
        spec = nadic(N)
        thr = N ** (-1 / pstar)
        for side, factor in (("below", 0.95), ("above", 1.05)):
            w = W.make_rolewicz(thr * factor)
            sums = [C.crit_sum(w, spec, ROOT, n, pstar).value for n in range(1, 31)]
            verdict = C.assemble_verdict("rooted-hc", w, spec, horizon=30, space=SpaceTag("lp", p))
            out[f"N{N}-sum-{side}"] = {"lambda": _r(thr * factor), **_monotone(sums),
                                       "n30": _r(sums[-1]), "verdict": _verdict(verdict)}
        for side, lam in (("below", 0.95), ("above", 1.05)):
            w = W.make_rolewicz(lam)
            sups = [C.crit_sup(w, spec, ROOT, n).value for n in range(1, 31)]
            verdict = C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=30)
            out[f"N{N}-sup-{side}"] = {"lambda": lam, **_monotone(sups),
                                       "n30": _r(sups[-1]), "verdict": _verdict(verdict)}
    w, spec = W.make_rolewicz(2), dyadic()
    out["norms-dyadic-2"] = _norms(w, spec)
    rep = X.build_rooted("l2", w, spec, [SparseVector()], SparseVector.basis(ROOT), [1, 2], 20)
    out["witness-dyadic-2"] = {"n": 20, "hit_error": _r(rep.hit_error),
                               "collapse": _r(rep.collapse_norms[(2,)]),
                               "approach": _r(rep.approach_norms[0])}
    return out


def dyadic_counterexample() -> dict:
    p = 2.0
    w = W.make_dyadic_counterexample(p)
    spec = dyadic()
    pstar = p / (p - 1)
    a = w.alpha
    out = {"m0": w.m0, "alpha": _r(a), "norms": _norms(w, spec)}
    out["norm-bound-holds"] = bool(W.operator_norm(w, spec, "l2").value
                                   <= (1 + 0.5 ** (a * pstar)) ** (1 / pstar) + 1e-12)
    out["theta-bijection-n<=12"] = all(
        [W.theta(i) for i in itertools.product((1, 2), repeat=n)] == list(range(1, 2 ** n + 1))
        for n in range(1, 13))
    sums = [C.crit_sum(w, spec, ROOT, n, pstar).value for n in range(1, 13)]
    out["root-sum"] = [_r(s) for s in sums]
    out["root-sum-above-bound"] = all(s >= 2 ** (n * (1 - a * pstar)) - 1e-12
                                      for n, s in enumerate(sums, start=1))
    probes = C.default_probes(spec)
    sup = max(C.crit_sup(w, spec, v, n).value for v in probes for n in range(1, 13))
    out["max-sup"] = _r(sup)
    q = w.m0 / p
    running = max(C.crit_sum(w, spec, v, n, q).value for v in probes for n in range(1, 13))
    k = np.arange(1, 10 ** 6 + 1, dtype=float)
    bound = float(np.sum(k ** (-a * w.m0 / p)))
    out["power-sum"] = {"q": q, "running_sup": _r(running), "bound": _r(bound),
                        "holds": bool(running <= bound + 1e-3)}
    out["hc-verdict"] = _verdict(C.assemble_verdict("rooted-hc", w, spec, horizon=100))
    out["algebra-verdict"] = _verdict(C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=40))
    return out


def menthe_example() -> dict:
    spec = menthe()
    out = {}
    cases = {"beta-geometric": W.make_menthe_geometric(beta_ratio=2.0),
             "beta-constant": W.make_menthe_geometric()}
    for name, w in cases.items():
        hc = C.assemble_verdict("rooted-hc", w, spec, horizon=40)
        alg = C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=40)
        out[name] = {"params": w.params, "norm_l2": _r(W.operator_norm(w, spec, "l2").value),
                     "hc": _verdict(hc), "algebra": _verdict(alg),
                     "agree": hc.verdict.affirmative == alg.verdict.affirmative}
    w = cases["beta-geometric"]
    rep = X.build_rooted("l2", w, spec, [SparseVector()], SparseVector.basis(ROOT), [1, 2], 20,
                         budget=500)
    out["witness"] = {"n": 20, "hit_error": _r(rep.hit_error),
                      "collapse": _r(rep.collapse_norms[(2,)]),
                      "target": str(rep.targets[0][1])}
    return out


def fertile_no_algebra() -> dict:
    out = {}
    for N in (2, 3, 4, INF):
        spec = nadic(N)
        w = W.make_fertile_no_algebra(spec, 2.0)
        key = "inf" if N == INF else str(N)
        sups = max(C.crit_sup(w, spec, v, n).value for v in C.default_probes(spec)
                   for n in range(1, 21))
        out[f"N={key}"] = {
            "fertile": str(find_fertile(spec)),
            "norm_l2": _r(W.operator_norm(w, spec, "l2").value),
            "norm_l2_budgeted": _r(W.operator_norm(_Plain(w), spec, "l2", budget=2_000).value),
            "hc": _verdict(C.assemble_verdict("rooted-hc", w, spec, horizon=20)),
            "algebra": _verdict(C.assemble_verdict("rooted-algebra-iv", w, spec, horizon=20)),
            "max-sup": _r(sups),
        }
    spec = nadic(4)
    w = W.make_fertile_no_algebra(spec, 2.0)
    out["4-adic-child-weights"] = [_r(abs(w.value(c))) for c in spec.iter_children(ROOT)]
    return out


def bilateral_rolewicz() -> dict:
    spec = spine_tree()
    w = W.make_bilateral_rolewicz(spec, 2, 0, 0, {0: 1})
    out = {"norms": _norms(w, spec)}
    for th, space in (("unrooted-v", "l2"), ("symmetric", "l2"), ("free-left-end", "l2"),
                      ("unrooted-c0", "c0")):
        out[th] = _verdict(C.assemble_verdict(th, w, spec, horizon=20, space=space))
    out["left-products"] = [_r(abs(C.crit_left(w, spec, VertexAddr(0, ()), n)))
                            for n in (1, 5, 10, 20)]
    f = SparseVector({VertexAddr(0, (1,)): 0.5, VertexAddr(2): 0.7,
                      VertexAddr(0, (2, 1)): 0.3j, VertexAddr(0, (1,) * 6): -0.4})
    g = SparseVector({VertexAddr(0, (1, 2)): 1.0, VertexAddr(1): -0.4})
    for m in (2, 3):
        rep = X.build_unrooted_power("l2", w, spec, f, g, m, 60)
        out[f"power-m{m}"] = {
            "n": 60, "F2": [str(v) for v in rep.classes["F2"]],
            "hit_error": _r(rep.hit_error), "residual": _r(rep.residual_terms),
            "approach": _r(rep.approach_norms[0]),
            "max_cancellation_error": _r(max((e for _, e, _ in rep.cancellation), default=0.0)),
            "ok": rep.ok(norm(g, "l2")),
        }
    # at small n, high-generation vertices still have large left products and
    # need the sibling correction
    f2 = SparseVector({VertexAddr(0, (1,) * 8): 0.5 + 0.2j, VertexAddr(0, (2,) + (1,) * 7): -0.3,
                       VertexAddr(0, (1,) * 7): 0.4j, VertexAddr(1): 0.6})
    g2 = SparseVector({VertexAddr(0, (1, 2)): 1.0})
    for m in (2, 3):
        rep = X.build_unrooted_power("l2", w, spec, f2, g2, m, 10)
        out[f"cancellation-m{m}"] = {
            "n": 10, "F2": [str(v) for v in rep.classes["F2"]],
            "max_relative_error": _r(max(e / max(1.0, s) for _, e, s in rep.cancellation)),
            "below_1e-10": all(e <= 1e-10 * max(1.0, s) for _, e, s in rep.cancellation),
        }
    rep = X.build_unrooted_algebra("l2", w, spec, [SparseVector.basis(VertexAddr(0, ()))],
                                   g, [1, 3], 20)
    out["algebra-witness"] = {"n": 20, "residual": _r(rep.residual_terms),
                              "hit_error": _r(rep.hit_error),
                              "collapse": _r(rep.collapse_norms[(3,)])}
    return out


def no_fertile_staircase() -> dict:
    spec = staircase()
    out = {"verdict": str(find_fertile(spec)), "dyadic": str(find_fertile(dyadic()))}
    counts = {}
    agree = True
    for k in range(0, 4):
        v = staircase_vertex(k)
        row = []
        for n in range(0, 7):
            c, _ = count_descendants(spec, v, n)
            agree &= c == len(children_n(spec, v, n).vertices)
            row.append(c)
        counts[f"r{k}"] = row
    out["descendant-counts"] = counts
    out["counts-match-enumeration"] = bool(agree)
    out["generation-sizes"] = [len(generation(spec, n).vertices) for n in range(0, 8)]
    ray = VertexAddr(0, (1, 1))
    out["ray-counts"] = [count_descendants(spec, ray, n)[0] for n in range(0, 5)]
    return out


PIPELINES: Dict[str, Callable[[], dict]] = {
    "rolewicz-threshold": rolewicz_threshold,
    "dyadic-counterexample": dyadic_counterexample,
    "menthe": menthe_example,
    "fertile-no-algebra": fertile_no_algebra,
    "bilateral-rolewicz": bilateral_rolewicz,
    "no-fertile-staircase": no_fertile_staircase,
}


def run(name: str) -> dict:
    if name not in PIPELINES:
        raise KeyError(name)
    return {"gallery": name, "summary": PIPELINES[name]()}


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def expected_path(name: str) -> Path:
    return DATA / f"{name}.json"


def load_expected(name: str):
    path = expected_path(name)
    if not path.exists():
        return None
    return json.loads(path.read_text())


def compare(report: dict, expected: dict, prefix="") -> list:
    """Paths where ``report`` differs from ``expected``."""
    diffs = []
    if isinstance(expected, dict) and isinstance(report, dict):
        for k in sorted(set(expected) | set(report)):
            if k not in report or k not in expected:
                diffs.append(f"{prefix}{k}: missing on one side")
            else:
                diffs += compare(report[k], expected[k], f"{prefix}{k}.")
    elif report != expected:
        diffs.append(f"{prefix.rstrip('.')}: got {report!r}, expected {expected!r}")
    return diffs
