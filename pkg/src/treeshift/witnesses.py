"""Explicit perturbations realising one transitivity step of the algebra criteria.

Given base vectors ``f_1..f_d`` and a target ``g``, the builders return
``h_j`` close to ``f_j`` with ``B^n h^beta = g`` (up to a vanishing residual
on unrooted trees) while every other monomial ``B^n h^alpha`` is small.  The
exponent vector ``s`` comes from :func:`solve_exponents`; the bumps sit on
descendants ``n`` levels below the target's support.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass, field
from itertools import islice
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateExponents, InvalidArgument, NeedsLargerN, Unsupported
from .shift import apply
from .trees import TreeSpec, VertexAddr, _parent
from .vectors import SparseVector, SpaceTag, norm, principal_power
from .weights import iter_weighted_descendants

RATIOS = (1.0, 1 / 2, 1 / 3, 2.0, 3.0)
RANDOM_TRIES = 1000
UNIQUE_MARGIN = 1e-9


# -- exponents ------------------------------------------------------------------------

@dataclass(frozen=True)
class ExponentSolution:
    s: Tuple[float, ...]
    beta: Tuple[int, ...]
    values: Dict[Tuple[int, ...], float]

    @property
    def margin(self) -> float:
        others = [v for a, v in self.values.items() if a != self.beta]
        return min(others) - 1.0 if others else math.inf

    def L(self, alpha) -> float:
        return float(np.dot(alpha, self.s))


def _normalize_P(P) -> List[Tuple[int, ...]]:
    out = []
    for a in P:
        a = (a,) if isinstance(a, numbers.Real) else tuple(a)
        if any(int(x) != x or x < 0 for x in a):
            raise InvalidArgument(f"exponents must be nonnegative integers, got {a}")
        out.append(tuple(int(x) for x in a))
    if not out:
        raise InvalidArgument("P must be nonempty")
    if len({len(a) for a in out}) != 1:
        raise InvalidArgument("all elements of P must have the same length")
    if any(not any(a) for a in out):
        raise InvalidArgument("P must not contain the zero tuple")
    return out


def _unique_argmin(P, t):
    L = np.array(P, dtype=float) @ t
    order = np.argsort(L, kind="stable")
    if len(P) > 1 and L[order[1]] - L[order[0]] <= UNIQUE_MARGIN * L[order[0]]:
        return None
    return int(order[0]), L


def solve_exponents(P) -> ExponentSolution:
    """Find s > 0 and beta in P with L_beta(s) = 1 < L_alpha(s) for alpha != beta."""
    P = _normalize_P(P)
    if len(set(P)) != len(P):
        raise DegenerateExponents("P contains repeated elements")
    d = len(P[0])
    candidates = [np.array([r ** j for j in range(d)]) for r in RATIOS]
    rng = np.random.default_rng(0)
    candidates += [rng.uniform(0.05, 1.0, size=d) for _ in range(RANDOM_TRIES)]
    for t in candidates:
        hit = _unique_argmin(P, t)
        if hit is None:
            continue
        i, L = hit
        s = t / L[i]
        values = {a: float(np.dot(a, s)) for a in P}
        values[P[i]] = 1.0
        return ExponentSolution(tuple(float(x) for x in s), P[i], values)
    raise DegenerateExponents(f"no direction with a unique minimiser over {P}")


# -- the l^1 key identity --------------------------------------------------------------

def keylemma_optimal(mu) -> Tuple[np.ndarray, float]:
    """Minimise sup_j x_j |mu_j| over the simplex; returns (x, value).

    The minimiser spreads mass inversely to |mu_j|, making all products equal
    to ``1 / sum_j 1/|mu_j|``.
    """
    a = np.abs(np.asarray(mu, dtype=complex))
    if a.size == 0:
        raise InvalidArgument("mu must be nonempty")
    if np.any(a == 0):
        raise InvalidArgument("mu entries must be nonzero")
    inv = 1.0 / a
    S = math.fsum(inv)
    return inv / S, 1.0 / S


def _descendants(w, spec, v, n, budget):
    it = iter_weighted_descendants(w, spec, v, n)
    items = list(islice(it, budget))
    truncated = len(items) == budget and next(it, None) is not None
    return items, truncated


def right_inverse(w, spec: TreeSpec, a: VertexAddr, n: int, budget: int = 10_000,
                  exclude=frozenset()) -> Tuple[SparseVector, float, bool]:
    """``R`` supported on Chi^n(a) with ``B^n R = e_a`` and minimal sup norm.

    Returns ``(R, value, truncated)`` where ``value = ||R||_inf``, the
    key-lemma optimum over the enumerated descendants.
    """
    items, truncated = _descendants(w, spec, a, n, budget)
    items = [(u, p) for u, p in items if u not in exclude]
    if not items:
        raise NeedsLargerN(f"no admissible descendants of {a} at depth {n}", n + 1)
    x, value = keylemma_optimal([1 / p for _, p in items])
    R = SparseVector({u: xu / p for (u, p), xu in zip(items, x)})
    return R, value, truncated


# -- reports ----------------------------------------------------------------------------

@dataclass
class WitnessReport:
    mode: str
    space: SpaceTag
    n: int
    h: List[SparseVector]
    approach_norms: List[float]
    hit_error: float
    collapse_norms: Dict[Tuple[int, ...], float] = field(default_factory=dict)
    residual_terms: Optional[float] = None
    exponents: Optional[ExponentSolution] = None
    targets: List[Tuple[VertexAddr, VertexAddr]] = field(default_factory=list)
    classes: Dict[str, List[VertexAddr]] = field(default_factory=dict)
    cancellation: List[Tuple[VertexAddr, float, float]] = field(default_factory=list)
    truncated: bool = False

    def ok(self, g_norm: float, eps: float = 1e-3) -> bool:
        """Exact hit and everything else below ``eps``."""
        small = list(self.approach_norms) + list(self.collapse_norms.values())
        if self.residual_terms is not None:
            small.append(self.residual_terms)
            hit_ok = self.hit_error <= self.residual_terms + 1e-9 * (1 + g_norm)
        else:
            hit_ok = self.hit_error <= 1e-9 * (1 + g_norm)
        return hit_ok and all(x < eps for x in small)

    def to_dict(self) -> dict:
        d = {
            "mode": self.mode,
            "space": str(self.space),
            "n": self.n,
            "h": [v.to_triples() for v in self.h],
            "approach_norms": self.approach_norms,
            "hit_error": self.hit_error,
            "collapse_norms": [[list(a), x] for a, x in sorted(self.collapse_norms.items())],
            "residual_terms": self.residual_terms,
            "targets": [[str(a), str(u)] for a, u in self.targets],
            "classes": {k: [str(v) for v in vs] for k, vs in self.classes.items()},
            "cancellation": [[str(a), e, s] for a, e, s in self.cancellation],
            "truncated": self.truncated,
        }
        if self.exponents is not None:
            d["exponents"] = {"s": list(self.exponents.s), "beta": list(self.exponents.beta)}
        return d


# -- helpers ------------------------------------------------------------------------------

def _gen_span(vertices) -> Tuple[int, int]:
    gens = [v.generation for v in vertices]
    return min(gens), max(gens)


def _best_target(w, spec, a, n, budget, exclude=frozenset()):
    """argmax of |lambda(a -> u)| over Chi^n(a) minus ``exclude`` (first in order)."""
    u = w.best_descendant(spec, a, n)
    if u is not None and u not in exclude:
        return u, w.path_product(spec, a, u, n), False
    items, truncated = _descendants(w, spec, a, n, budget)
    best = None
    for u, p in items:
        if u in exclude:
            continue
        if best is None or abs(p) > abs(best[1]):
            best = (u, p)
    if best is None:
        return None, None, truncated
    return best[0], best[1], truncated


def _as_vectors(fs) -> List[SparseVector]:
    if isinstance(fs, SparseVector):
        return [fs]
    return list(fs)


def _monomial(vs: Sequence[SparseVector], alpha) -> SparseVector:
    out = None
    for v, k in zip(vs, alpha):
        if k == 0:
            continue
        term = principal_power_vec(v, k)
        out = term if out is None else out * term
    return out if out is not None else SparseVector()


def principal_power_vec(v: SparseVector, k: float) -> SparseVector:
    return SparseVector({u: principal_power(z, k) for u, z in v.items()})


def _bumps(space, w, spec, g, n, budget):
    """Per target vertex a: (a, vector R_a with B^n R_a = e_a, truncation)."""
    out, truncated = [], False
    for a, _ in g.items():
        if space.kind == "c0":
            R, _, tr = right_inverse(w, spec, a, n, budget)
        else:
            u, lam, tr = _best_target(w, spec, a, n, budget)
            R = SparseVector({u: 1 / lam})
        truncated |= tr
        out.append((a, R))
    return out, truncated


def _collapse(w, spec, h, sol, space, n):
    return {alpha: norm(apply(w, spec, _monomial(h, alpha), n), space)
            for alpha in sol.values if alpha != sol.beta}


# -- rooted ---------------------------------------------------------------------------------

def build_rooted(space, w, spec: TreeSpec, fs, g: SparseVector, P, n: int,
                 budget: int = 10_000) -> WitnessReport:
    """One transitivity step on a rooted tree (l^p or c0)."""
    space = SpaceTag.parse(space)
    if not spec.rooted:
        raise Unsupported("build_rooted needs a rooted tree")
    fs = _as_vectors(fs)
    sol = solve_exponents(P)
    if len(sol.s) != len(fs):
        raise InvalidArgument(f"P has length {len(sol.s)} but {len(fs)} base vectors were given")
    base = set(g.support).union(*(f.support for f in fs))
    # past the deepest base vertex every B^n f^alpha vanishes and the bumps
    # cannot meet the base
    n_min = max((v.depth for v in base), default=0) + 1
    if n < n_min:
        raise NeedsLargerN(f"n = {n} is too small; need n >= {n_min}", n_min)

    bumps, truncated = _bumps(space, w, spec, g, n, budget)
    h = []
    for f, sj in zip(fs, sol.s):
        extra = SparseVector()
        for a, R in bumps:
            extra = extra + principal_power_vec(R * g[a], sj)
        h.append(f + extra)
    hit = norm(apply(w, spec, _monomial(h, sol.beta), n) - g, space)
    targets = [(a, u) for a, R in bumps for u in R.support]
    return WitnessReport(
        mode="rooted", space=space, n=n, h=h,
        approach_norms=[norm(hj - f, space) for hj, f in zip(h, fs)],
        hit_error=hit, collapse_norms=_collapse(w, spec, h, sol, space, n),
        exponents=sol, targets=sorted(targets), truncated=truncated)


# -- unrooted -------------------------------------------------------------------------------

def _unrooted_n_min(base) -> int:
    if not base:
        return 1
    lo, hi = _gen_span(base)
    return hi - lo + 1


def build_unrooted_algebra(space, w, spec: TreeSpec, fs, g: SparseVector, P, n: int,
                           budget: int = 10_000) -> WitnessReport:
    """The rooted bump construction on an unrooted tree.

    Here ``B^n f^beta`` does not vanish; it is reported as the residual and
    equals the hit error exactly.
    """
    space = SpaceTag.parse(space)
    if spec.rooted:
        raise Unsupported("build_unrooted_algebra needs an unrooted tree")
    fs = _as_vectors(fs)
    sol = solve_exponents(P)
    if len(sol.s) != len(fs):
        raise InvalidArgument(f"P has length {len(sol.s)} but {len(fs)} base vectors were given")
    base = set(g.support).union(*(f.support for f in fs))
    n_min = _unrooted_n_min(base)
    if n < n_min:
        raise NeedsLargerN(f"n = {n} is too small; need n >= {n_min}", n_min)

    bumps, truncated = _bumps(space, w, spec, g, n, budget)
    h = []
    for f, sj in zip(fs, sol.s):
        extra = SparseVector()
        for a, R in bumps:
            extra = extra + principal_power_vec(R * g[a], sj)
        h.append(f + extra)
    hit = norm(apply(w, spec, _monomial(h, sol.beta), n) - g, space)
    residual = norm(apply(w, spec, _monomial(fs, sol.beta), n), space)
    return WitnessReport(
        mode="unrooted-algebra", space=space, n=n, h=h,
        approach_norms=[norm(hj - f, space) for hj, f in zip(h, fs)],
        hit_error=hit, collapse_norms=_collapse(w, spec, h, sol, space, n),
        residual_terms=residual, exponents=sol,
        targets=sorted((a, u) for a, R in bumps for u in R.support),
        truncated=truncated)


def _sibling_n_min(spec, a, n, F, limit=64):
    """Smallest n' > n at which Chi^{n'}(Par^{n'}(a)) leaves F (None if not found)."""
    for k in range(n + 1, n + limit + 1):
        P = _parent(spec, a, k)
        for u in islice(spec.iter_descendants(P, k), len(F) + 1):
            if u not in F:
                return k
    return None


def build_unrooted_power(space, w, spec: TreeSpec, f: SparseVector, g: SparseVector,
                         m: int, n: int, tau: float = 1.0,
                         budget: int = 10_000) -> WitnessReport:
    """``h`` close to ``f`` with ``B^n h^m = g + (F1 residual)``.

    Vertices of F = supp f + supp g whose left product |lambda(Par^n(a) -> a)|
    is at most ``tau`` form F1 and are left alone; the others (F2) get their
    contribution to ``B^n f^m`` cancelled by a correction placed on a sibling
    n-th descendant of Par^n(a), carrying the phase e^{i pi/m} whose m-th
    power is -1.
    """
    space = SpaceTag.parse(space)
    if spec.rooted:
        raise Unsupported("build_unrooted_power needs an unrooted tree")
    if int(m) != m or m < 1:
        raise InvalidArgument("m must be a positive integer")
    m = int(m)
    F = frozenset(f.support | g.support)
    n_min = _unrooted_n_min(F)
    if n < n_min:
        raise NeedsLargerN(f"n = {n} is too small; need n >= {n_min}", n_min)

    left = {a: w.path_product(spec, _parent(spec, a, n), a, n) for a in sorted(F)}
    F1 = [a for a in sorted(F) if abs(left[a]) <= tau]
    F2 = [a for a in sorted(F) if abs(left[a]) > tau]
    active = [a for a in F2 if f[a] != 0]
    phase = cmath.exp(1j * math.pi / m)
    truncated = False

    # target bumps: B^n (bump)^m = g
    bumps, tr = _bumps(space, w, spec, g, n, budget)
    truncated |= tr
    h = f
    for a, R in bumps:
        h = h + principal_power_vec(R * g[a], 1 / m)

    if space.kind != "c0":
        groups: Dict[VertexAddr, List[VertexAddr]] = {}
        lam_b = {}
        for a in active:
            b, lam, tr = _best_target(w, spec, _parent(spec, a, n), n, budget, exclude=F)
            truncated |= tr
            if b is None:
                n2 = _sibling_n_min(spec, a, n, F)
                raise NeedsLargerN(f"no sibling target outside F for {a} at n = {n}",
                                   n2 if n2 is not None else n + 1)
            groups.setdefault(b, []).append(a)
            lam_b[b] = lam
        for b in sorted(groups):
            z = sum(principal_power(f[v], m) * left[v] for v in groups[b]) / lam_b[b]
            h = h + SparseVector.basis(b, phase * principal_power(z, 1 / m))
    else:
        # one representative per generation; same-generation F2 vertices
        # share an ancestor M levels up
        by_gen: Dict[int, List[VertexAddr]] = {}
        for a in active:
            by_gen.setdefault(a.generation, []).append(a)
        for gen in sorted(by_gen):
            members = by_gen[gen]
            rep = members[0]
            M = 0
            while any(_parent(spec, v, M) != _parent(spec, rep, M) for v in members):
                M += 1
            if n < M:
                raise NeedsLargerN(f"same-generation vertices meet only {M} levels up", M)
            z = sum(principal_power(f[v], m) * w.path_product(spec, _parent(spec, v, M), v, M)
                    for v in members) / w.path_product(spec, _parent(spec, rep, M), rep, M)
            H, _, tr = right_inverse(w, spec, _parent(spec, rep, n), n, budget, exclude=F)
            truncated |= tr
            H = H * left[rep]
            h = h + principal_power_vec(H, 1 / m) * (phase * principal_power(z, 1 / m))

    image = apply(w, spec, principal_power_vec(h, m), n)
    residual_vec = SparseVector()
    for a in F1:
        if f[a] != 0:
            residual_vec = residual_vec + SparseVector.basis(
                _parent(spec, a, n), principal_power(f[a], m) * left[a])
    # exact cancellation at the parents of the corrected vertices
    diff = image - g - residual_vec
    cancellation = []
    for a in active:
        p = _parent(spec, a, n)
        scale = abs(principal_power(f[a], m) * left[a])
        cancellation.append((a, abs(diff[p]), scale))

    return WitnessReport(
        mode="unrooted-power", space=space, n=n, h=[h],
        approach_norms=[norm(h - f, space)],
        hit_error=norm(image - g, space),
        residual_terms=norm(residual_vec, space),
        targets=sorted((a, u) for a, R in bumps for u in R.support),
        classes={"F1": F1, "F2": F2},
        cancellation=cancellation, truncated=truncated)
