"""Criterion sequences for hypercyclicity and hypercyclic algebras, and verdicts.

Every quantity is a function of a vertex ``v`` and an iterate ``n``:

``crit_sup``    sup over Chi^n(v) of |lambda(v -> u)|
``crit_sum``    sum over Chi^n(v) of |lambda(v -> u)|^q
``crit_left``   lambda(Par^n(v) -> v)                      (unrooted)
``crit_ratio``  max(1/|left|, sup or sum over the n-th descendants of
                Par^n(v) of |lambda(Par^n(v) -> u)| / |left|)  (unrooted)

A theorem combines some of them into one number per cell; the theorem's
condition asks for a single sequence n_k along which every vertex's number
tends to infinity.  Over a finite horizon that can only be observed, so
verdicts are three-valued: a closed-form certificate, growth past a threshold
along a record subsequence, or a stall.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from itertools import islice
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidArgument, Unsupported
from .trees import TreeSpec, VertexAddr, _iter_generation, _parent
from .vectors import SpaceTag
from .weights import WeightFamily, iter_weighted_descendants

DEFAULT_THRESHOLD = 1e3
DEFAULT_HORIZON = 40
DEFAULT_BUDGET = 10_000
PROBE_CAP = 64


@dataclass(frozen=True)
class Quantity:
    value: float
    truncated: bool = False
    closed_form: bool = False

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class RatioQuantity:
    value: float            # max(left_inverse, ratio)
    ratio: float
    left_inverse: float
    truncated: bool = False


def _scan(w, spec, v, n, budget):
    """|lambda(v -> u)| over Chi^n(v), at most ``budget`` of them, plus a truncation flag."""
    it = iter_weighted_descendants(w, spec, v, n)
    mods = [abs(p) for _, p in islice(it, budget)]
    truncated = len(mods) == budget and next(it, None) is not None
    return mods, truncated


def _check_n(n):
    if n < 1:
        raise InvalidArgument(f"n must be >= 1, got {n}")


def crit_sup(w: WeightFamily, spec: TreeSpec, v: VertexAddr, n: int,
             budget: int = DEFAULT_BUDGET) -> Quantity:
    _check_n(n)
    v = spec.check(v)
    c = w.sup_closed_form(spec, v, n)
    if c is not None:
        return Quantity(float(c), False, True)
    mods, truncated = _scan(w, spec, v, n, budget)
    return Quantity(max(mods), truncated)


def crit_sum(w: WeightFamily, spec: TreeSpec, v: VertexAddr, n: int, q: float,
             budget: int = DEFAULT_BUDGET) -> Quantity:
    _check_n(n)
    if not q > 0:
        raise InvalidArgument("q must be positive")
    v = spec.check(v)
    c = w.sum_closed_form(spec, v, n, q)
    if c is not None:
        return Quantity(float(c), False, True)
    mods, truncated = _scan(w, spec, v, n, budget)
    return Quantity(math.fsum(m ** q for m in mods), truncated)


def crit_left(w: WeightFamily, spec: TreeSpec, v: VertexAddr, n: int) -> complex:
    """``lambda(Par^n(v) -> v)``; 1 for n = 0."""
    if spec.rooted:
        raise Unsupported("backward path products need an unrooted tree")
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    v = spec.check(v)
    if n == 0:
        return 1 + 0j
    return w.path_product(spec, _parent(spec, v, n), v, n)


def crit_ratio(w: WeightFamily, spec: TreeSpec, v: VertexAddr, n: int,
               mode: str = "sup", budget: int = DEFAULT_BUDGET) -> RatioQuantity:
    if spec.rooted:
        raise Unsupported("the ratio criterion needs an unrooted tree")
    _check_n(n)
    left = abs(crit_left(w, spec, v, n))
    a = _parent(spec, spec.check(v), n)
    if mode == "sup":
        top = crit_sup(w, spec, a, n, budget)
    elif mode == "sum":
        top = crit_sum(w, spec, a, n, 1.0, budget)
    else:
        raise InvalidArgument(f"mode must be 'sup' or 'sum', got {mode!r}")
    ratio = top.value / left
    return RatioQuantity(max(1 / left, ratio), ratio, 1 / left, top.truncated)


# -- theorems ---------------------------------------------------------------------

THEOREMS = ("rooted-hc", "rooted-algebra-iv", "unrooted-v", "unrooted-c0",
            "symmetric", "free-left-end")

LABELS = {
    "rooted-hc": "hypercyclicity (characterization)",
    "rooted-algebra-iv": "hypercyclic algebra (characterization)",
    "unrooted-v": "necessary conditions for a hypercyclic algebra",
    "unrooted-c0": "hypercyclicity on c0 (characterization)",
    "symmetric": "hypercyclic algebra, symmetric weights (characterization)",
    "free-left-end": "hypercyclic algebra, free left end (characterization)",
}


def _parts(theorem: str, space: SpaceTag) -> Tuple[Tuple[str, float], ...]:
    """The sequences a theorem requires, as (kind, exponent) pairs.

    ``sup``/``sum`` must tend to infinity; ``left`` stands for
    1/|lambda(Par^n(v) -> v)| and ``ratio``/``ratio-sum`` for the max in
    crit_ratio, all of which must tend to infinity too.
    """
    growth = ("sum", 1.0) if space.kind == "c0" else ("sup", 1.0)
    if theorem == "rooted-hc":
        if space.kind == "l1":
            return (("sup", 1.0),)
        return (("sum", space.conjugate),)
    if theorem == "rooted-algebra-iv":
        # on c0 hypercyclicity already yields an algebra
        return (growth,)
    if theorem == "unrooted-v":
        if space.kind == "c0":
            raise InvalidArgument("unrooted-v is stated on l^p; use unrooted-c0 for c0")
        return (("sup", 1.0), ("ratio", 1.0))
    if theorem == "unrooted-c0":
        return (("sum", 1.0), ("ratio-sum", 1.0))
    if theorem in ("symmetric", "free-left-end"):
        return (growth, ("left", 1.0))
    raise InvalidArgument(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")


def check_theorem(theorem: str, w: WeightFamily, spec: TreeSpec, space) -> SpaceTag:
    space = SpaceTag.parse(space)
    _parts(theorem, space)
    rooted_only = theorem.startswith("rooted")
    if rooted_only and not spec.rooted:
        raise InvalidArgument(f"{theorem} applies to rooted trees")
    if not rooted_only and spec.rooted:
        raise InvalidArgument(f"{theorem} applies to unrooted trees")
    if theorem == "unrooted-c0" and space.kind != "c0":
        raise InvalidArgument("unrooted-c0 needs the space c0")
    if theorem == "symmetric" and not w.symmetric:
        raise InvalidArgument("the symmetric criterion needs a symmetric weight")
    if theorem == "free-left-end" and not spec.free_left_end:
        raise InvalidArgument("the tree has no free left end")
    return space


def cell(theorem: str, w, spec, v, n, space, budget=DEFAULT_BUDGET) -> Quantity:
    """The theorem's quantity at (v, n): the min of its required sequences."""
    vals, truncated, closed = [], False, True
    for kind, q in _parts(theorem, space):
        if kind == "sup":
            r = crit_sup(w, spec, v, n, budget)
        elif kind == "sum":
            r = crit_sum(w, spec, v, n, q, budget)
        elif kind == "left":
            r = Quantity(1 / abs(crit_left(w, spec, v, n)), False, True)
        else:
            rq = crit_ratio(w, spec, v, n, "sup" if kind == "ratio" else "sum", budget)
            r = Quantity(rq.value, rq.truncated, False)
        vals.append(r.value)
        truncated |= r.truncated
        closed &= r.closed_form
    return Quantity(min(vals), truncated, closed)


def certificate(theorem: str, w, spec, space) -> Optional[str]:
    """Closed-form reason for divergence at every vertex, if the family has one."""
    reasons = []
    for kind, q in _parts(theorem, space):
        if kind in ("ratio", "ratio-sum"):
            kind = "left"   # 1/|left| -> inf already forces the max to infinity
        r = w.certify(spec, kind, q)
        if r is None:
            return None
        reasons.append(r)
    return "; ".join(dict.fromkeys(reasons))


# -- verdicts -----------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    kind: str                       # exact-divergence | diverges-up-to-horizon | stalled-below
    witness: Tuple[int, ...] = ()
    bound: Optional[float] = None
    certificate: Optional[str] = None

    @property
    def affirmative(self) -> bool:
        return self.kind != "stalled-below"

    def __str__(self):
        if self.kind == "exact-divergence":
            return f"ExactDivergence({self.certificate})"
        if self.kind == "diverges-up-to-horizon":
            return f"DivergesUpToHorizon(n_k = {list(self.witness)})"
        return f"StalledBelow({self.bound:.6g})"


@dataclass
class CriterionReport:
    theorem: str
    space: SpaceTag
    vertices: List[VertexAddr]
    horizon: int
    threshold: float
    table: Dict[Tuple[VertexAddr, int], float]
    minima: List[float]                 # minima[n-1] = min over vertices at n
    verdict: Verdict
    truncated: bool = False
    label: str = ""
    weight_tag: str = ""
    tree_tag: str = ""

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "label": self.label,
            "space": str(self.space),
            "tree": self.tree_tag,
            "weight": self.weight_tag,
            "horizon": self.horizon,
            "threshold": self.threshold,
            "vertices": [str(v) for v in self.vertices],
            "truncated": self.truncated,
            "minima": [_num(x) for x in self.minima],
            "verdict": {"kind": self.verdict.kind, "text": str(self.verdict),
                        "witness": list(self.verdict.witness),
                        "bound": _num(self.verdict.bound),
                        "certificate": self.verdict.certificate},
            "table": [[str(v), n, _num(x)] for (v, n), x in self._rows()],
        }

    def _rows(self):
        order = {v: i for i, v in enumerate(self.vertices)}
        return sorted(self.table.items(), key=lambda kv: (order[kv[0][0]], kv[0][1]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        """Short human-readable summary: header, verdict, per-n minima."""
        lines = [f"theorem   {self.theorem} ({self.label})",
                 f"space     {self.space}",
                 f"tree      {self.tree_tag}",
                 f"weights   {self.weight_tag}",
                 f"probes    {len(self.vertices)} vertices, horizon {self.horizon}, "
                 f"threshold {self.threshold:g}",
                 f"verdict   {self.verdict}"]
        if self.truncated:
            lines.append("note      some child sets were truncated; values are lower bounds")
        lines.append("")
        lines.append("n     min over probes")
        lines += [f"{n:<5d} {x:.6g}" for n, x in enumerate(self.minima, start=1)]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["vertex", "n", "value"])
        for (v, n), x in self._rows():
            out.writerow([str(v), n, repr(float(x))])
        return buf.getvalue()


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def default_probes(spec: TreeSpec, radius: int = 3, cap: int = PROBE_CAP) -> List[VertexAddr]:
    """Vertices of generations |g| <= radius, spread so no generation hogs the cap."""
    gens = [0]
    for k in range(1, radius + 1):
        gens += [k] if spec.rooted else [k, -k]
    per = max(1, cap // len(gens))
    out = []
    for g in gens:
        out += list(islice(_iter_generation(spec, g), per))
    return out[:cap]


def record_chain(minima: Sequence[float]) -> List[int]:
    """Greedy strictly increasing subsequence of minima, as 1-based iterates."""
    chain, last = [], -math.inf
    for n, m in enumerate(minima, start=1):
        if m > last:
            chain.append(n)
            last = m
    return chain


def assemble_verdict(theorem: str, w: WeightFamily, spec: TreeSpec,
                     probes: Optional[Sequence[VertexAddr]] = None,
                     horizon: int = DEFAULT_HORIZON,
                     threshold: float = DEFAULT_THRESHOLD,
                     space="l2", budget: int = DEFAULT_BUDGET) -> CriterionReport:
    if horizon < 1:
        raise InvalidArgument("horizon must be >= 1")
    space = check_theorem(theorem, w, spec, space)
    probes = default_probes(spec) if probes is None else [spec.check(VertexAddr.parse(v))
                                                          for v in probes]
    if not probes:
        raise InvalidArgument("no probe vertices")
    table, truncated = {}, False
    minima = []
    for n in range(1, horizon + 1):
        row = []
        for v in probes:
            q = cell(theorem, w, spec, v, n, space, budget)
            table[(v, n)] = q.value
            truncated |= q.truncated
            row.append(q.value)
        minima.append(min(row))

    cert = certificate(theorem, w, spec, space)
    if cert is not None:
        verdict = Verdict("exact-divergence", tuple(range(1, horizon + 1)), None, cert)
    else:
        chain = record_chain(minima)
        if minima[chain[-1] - 1] > threshold:
            verdict = Verdict("diverges-up-to-horizon", tuple(chain))
        else:
            verdict = Verdict("stalled-below", (), max(minima))
    return CriterionReport(theorem, space, list(probes), horizon, threshold, table,
                           minima, verdict, truncated, LABELS[theorem], w.tag,
                           spec.tag)
