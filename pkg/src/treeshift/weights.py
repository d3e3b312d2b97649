"""Weight families on trees, path products and operator norms.

A weight assigns a nonzero complex number ``lambda_v`` to every vertex.  The
path product ``lambda(v -> u)`` multiplies the weights of ``u`` and its
ancestors strictly below ``v``.

Builtin families know closed forms for the quantities used by the
hypercyclicity criteria (sup and power sums of ``|lambda(v -> u)|`` over
``Chi^n(v)``) and may *certify* that one of them diverges.  Every method
returning a closed form returns ``None`` when it has none, in which case
callers fall back to budgeted enumeration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, Optional, Tuple

import mpmath
import numpy as np

from .errors import InvalidArgument, NotAnAncestor, Unsupported
from .trees import (INF, ROOT, TreeSpec, VertexAddr, _parent, find_fertile,
                    menthe_vertex)
from .vectors import SpaceTag

LOG_THRESHOLD = 1000


# -- lexicographic positions in the dyadic tree ---------------------------------

def _theta(path) -> int:
    t = 1
    for i in path:
        if i == 1:
            t = 2 * t - 1
        elif i == 2:
            t = 2 * t
        else:
            raise InvalidArgument(f"dyadic indices must be 1 or 2, got {i}")
    return t


def theta(path) -> int:
    """1-based position of ``path`` in the lexicographic order of {1,2}^n."""
    path = tuple(path)
    if not path:
        raise InvalidArgument("theta needs a nonempty index sequence")
    return _theta(path)


def _power_sum(c: int, K: int, s: float) -> float:
    """sum_{k=1}^{K} (c + k)^(-s)."""
    if K <= 1 << 16:
        k = np.arange(1, K + 1, dtype=float)
        return float(np.sum((c + k) ** (-s)))
    with mpmath.workdps(40):
        if s == 1:
            return float(mpmath.psi(0, c + K + 1) - mpmath.psi(0, c + 1))
        return float(mpmath.zeta(s, c + 1) - mpmath.zeta(s, c + K + 1))


# -- families ---------------------------------------------------------------------

class WeightFamily:
    """A rule ``v -> lambda_v``.  Subclasses add closed forms."""

    tag = "generic"
    symmetric = False

    def value(self, v: VertexAddr) -> complex:
        raise NotImplementedError

    def tail_sum(self, spec: TreeSpec, v: VertexAddr, q: float) -> Optional[float]:
        """Exact ``sum_{u in Chi(v)} |lambda_u|^q`` for infinite ``Chi(v)``."""
        return None

    def path_product(self, spec: TreeSpec, v: VertexAddr, u: VertexAddr, n: int) -> complex:
        if n > LOG_THRESHOLD:
            logmod, phase = self.log_path_product(spec, u, n)
            return cmath.rect(math.exp(logmod), phase) if logmod < 709 else complex(INF)
        prod = 1 + 0j
        for k in range(n):
            prod *= self.value(_parent(spec, u, k))
        return prod

    def log_path_product(self, spec, u, n) -> Tuple[float, float]:
        logmod, phase = 0.0, 0.0
        for k in range(n):
            z = self.value(_parent(spec, u, k))
            logmod += math.log(abs(z))
            phase += cmath.phase(z)
        return logmod, math.remainder(phase, 2 * math.pi)

    # closed forms; None means "not known"
    def norm_closed_form(self, spec, space: SpaceTag) -> Optional[float]:
        return None

    def sup_closed_form(self, spec, v, n) -> Optional[float]:
        return None

    def sum_closed_form(self, spec, v, n, q) -> Optional[float]:
        return None

    def best_descendant(self, spec, v, n) -> Optional[VertexAddr]:
        """A maximiser of ``|lambda(v -> u)|`` over ``Chi^n(v)``, if known."""
        return None

    def certify(self, spec, kind: str, q: float = 1.0) -> Optional[str]:
        """Closed-form reason why, at every vertex, ``kind`` diverges.

        ``kind`` is ``"sup"`` or ``"sum"`` (growth to infinity along all n) or
        ``"left"`` (``lambda(Par^n(v) -> v) -> 0``).
        """
        return None

    def to_dict(self) -> dict:
        raise Unsupported(f"{type(self).__name__} cannot be serialized")


class TableWeights(WeightFamily):
    tag = "table"

    def __init__(self, table: Dict, default: complex = 1.0):
        self.table = {VertexAddr.parse(k): complex(z) for k, z in table.items()}
        self.default = complex(default)
        if self.default == 0 or any(z == 0 for z in self.table.values()):
            raise InvalidArgument("weights must be nonzero")

    def value(self, v):
        return self.table.get(v, self.default)

    def to_dict(self):
        return {"builtin": "table", "default": _cx(self.default),
                "table": {str(v): _cx(z) for v, z in sorted(self.table.items())}}


class SymmetricWeights(WeightFamily):
    """Weight depending only on the generation of the vertex."""

    tag = "symmetric"
    symmetric = True

    def __init__(self, rule: Callable[[int], complex]):
        self.rule = rule

    def by_generation(self, g: int) -> complex:
        z = complex(self.rule(g))
        if z == 0:
            raise InvalidArgument(f"zero weight on generation {g}")
        return z

    def value(self, v):
        return self.by_generation(v.generation)

    def path_product(self, spec, v, u, n):
        g = u.generation
        if n > LOG_THRESHOLD:
            return WeightFamily.path_product(self, spec, v, u, n)
        prod = 1 + 0j
        for k in range(n):
            prod *= self.by_generation(g - k)
        return prod

    def sup_closed_form(self, spec, v, n):
        return abs(self.path_product(spec, v, spec.first_descendant(v, n), n))

    def sum_closed_form(self, spec, v, n, q):
        c = spec.descendant_count(v, n)
        if c is None:
            return None
        s = self.sup_closed_form(spec, v, n)
        return INF if c == INF else c * s ** q

    def best_descendant(self, spec, v, n):
        return spec.first_descendant(v, n)


class GenerationTable(SymmetricWeights):
    """Symmetric weight given by a finite generation table and a default."""

    def __init__(self, table: Dict[int, complex], default: complex = 1.0):
        self.table = {int(g): complex(z) for g, z in table.items()}
        self.default = complex(default)
        if self.default == 0 or 0 in self.table.values():
            raise InvalidArgument("weights must be nonzero")
        super().__init__(lambda g: self.table.get(g, self.default))

    def to_dict(self):
        return {"builtin": "symmetric", "default": _cx(self.default),
                "table": {str(g): _cx(z) for g, z in sorted(self.table.items())}}


class Rolewicz(SymmetricWeights):
    tag = "rolewicz"

    def __init__(self, lam: complex):
        lam = complex(lam)
        if lam == 0:
            raise InvalidArgument("Rolewicz weight must be nonzero")
        self.lam = lam
        super().__init__(lambda g: lam)

    def sup_closed_form(self, spec, v, n):
        return abs(self.lam) ** n

    def path_product(self, spec, v, u, n):
        return self.lam ** n

    def norm_closed_form(self, spec, space):
        M = spec.max_arity()
        a = abs(self.lam)
        if space.kind == "l1":
            return a
        if M == INF:
            return INF
        if space.kind == "c0":
            return a * M
        return a * M ** (1 / space.conjugate)

    def certify(self, spec, kind, q=1.0):
        a = abs(self.lam)
        if kind == "sup" and a > 1:
            return f"sup = |lambda|^n with |lambda| = {a:.6g} > 1"
        if kind == "sum":
            if a > 1:
                return f"sum >= |lambda|^(qn) with |lambda| = {a:.6g} > 1"
            if spec.tag == "nadic":
                N = spec.params["N"]
                if N == INF or N * a ** q > 1:
                    return f"sum = (N |lambda|^q)^n with N |lambda|^q = {N * a ** q:.6g} > 1"
        if kind == "left" and not spec.rooted and a < 1:
            return f"lambda(Par^n(v) -> v) = lambda^n with |lambda| = {a:.6g} < 1"
        return None

    def to_dict(self):
        return {"builtin": "rolewicz", "params": {"lambda": _cx(self.lam)}}


class BilateralRolewicz(SymmetricWeights):
    """``1/lam`` below generation ``lo``, ``lam`` above ``hi``, a table between."""

    tag = "bilateral-rolewicz"

    def __init__(self, lam: complex, lo: int, hi: int, middle: Dict[int, complex]):
        self.lam = complex(lam)
        self.lo, self.hi = int(lo), int(hi)
        self.middle = {int(g): complex(z) for g, z in middle.items()}
        super().__init__(self._rule)

    def _rule(self, g):
        if g < self.lo:
            return 1 / self.lam
        if g > self.hi:
            return self.lam
        return self.middle[g]

    def _window(self, spec):
        lo = min(self.lo, -spec.last_branching_level, 0) - 2
        hi = max(self.hi, 0) + 2
        return range(lo, hi + 1)

    def norm_closed_form(self, spec, space):
        if spec.table:
            return None
        if space.kind == "l1":
            return max(abs(self.by_generation(g)) for g in self._window(spec))
        e = space.conjugate
        best = 0.0
        for g in self._window(spec):
            M = max(_generation_arities(spec, g))
            if M == INF:
                return INF
            best = max(best, M * abs(self.by_generation(g + 1)) ** e)
        return best if space.kind == "c0" else best ** (1 / e)

    def certify(self, spec, kind, q=1.0):
        if kind in ("sup", "sum"):
            return f"factors equal lambda above generation {self.hi}, |lambda| > 1"
        if kind == "left":
            return f"factors equal 1/lambda below generation {self.lo}, |lambda| > 1"
        return None

    def to_dict(self):
        return {"builtin": "bilateral-rolewicz",
                "params": {"lambda": _cx(self.lam), "n_lo": self.lo, "n_hi": self.hi,
                           "middle": {str(g): _cx(z) for g, z in sorted(self.middle.items())}}}


def _generation_arities(spec: TreeSpec, g: int):
    """Child counts occurring in generation g (trees without arity tables)."""
    if spec.rooted:
        return {spec.max_arity()}
    out = set()
    if g <= -1:
        out.add(spec.spine_level(-g)[0])
    branching = [k for k in range(1, spec.last_branching_level + 1)
                 if spec.spine_level(k)[0] != 1]
    if not spec.free_left_end or g >= 0 or any(-k + 1 <= g for k in branching):
        out.add(spec.default)
    return out


class DyadicCounterexample(WeightFamily):
    """Hypercyclic on l^p of the dyadic tree, yet without a hypercyclic algebra.

    ``lambda(r -> v_i) = theta_n(i)^(-alpha)`` where ``theta_n(i)`` is the
    lexicographic position of ``i`` among the 2^n indices of length n.
    """

    tag = "dyadic-counterexample"

    def __init__(self, p: float, m0: int, alpha: float):
        self.p, self.m0, self.alpha = p, m0, alpha
        self.pstar = p / (p - 1)

    def value(self, v):
        if not v.path:
            return 1 + 0j
        return complex((_theta(v.path[:-1]) / _theta(v.path)) ** self.alpha)

    def path_product(self, spec, v, u, n):
        return complex((_theta(v.path) / _theta(u.path)) ** self.alpha)

    def norm_closed_form(self, spec, space):
        a = self.alpha
        if space.kind == "l1":
            return 1.0
        if space.kind == "c0":
            return 1 + 2 ** -a
        e = space.conjugate
        return (1 + 2 ** (-a * e)) ** (1 / e)

    def sup_closed_form(self, spec, v, n):
        t = _theta(v.path)
        return (t / ((t - 1) * 2 ** n + 1)) ** self.alpha

    def sum_closed_form(self, spec, v, n, q):
        t = _theta(v.path)
        s = self.alpha * q
        return t ** s * _power_sum((t - 1) * 2 ** n, 2 ** n, s)

    def best_descendant(self, spec, v, n):
        return VertexAddr(0, v.path + (1,) * n)

    def to_dict(self):
        return {"builtin": "dyadic-counterexample",
                "params": {"p": self.p, "m0": self.m0, "alpha": self.alpha}}


class Menthe(WeightFamily):
    """Weights on the star of rays with ``lambda(r -> u_{i,j}) = alpha_i beta_j``."""

    tag = "menthe"

    def __init__(self, alpha, beta, tails, alpha_sup=None, params=None):
        self.alpha, self.beta, self.tails = alpha, beta, tails
        self.alpha_sup = alpha_sup
        self.params = params

    # nonzero entries are checked at construction; far-out alpha_i may underflow
    def _a(self, i):
        return complex(self.alpha(i))

    def _b(self, j):
        return complex(self.beta(j))

    def value(self, v):
        if not v.path:
            return 1 + 0j
        i, j = v.path[0], len(v.path)
        if j == 1:
            return self._a(i) * self._b(1)
        return self._b(j) / self._b(j - 1)

    def path_product(self, spec, v, u, n):
        i, j = u.path[0], len(u.path)
        if not v.path:
            return self._a(i) * self._b(j)
        return self._b(j) / self._b(len(v.path))

    def tail_sum(self, spec, v, q):
        if v.path:
            return None
        return abs(self._b(1)) ** q * self.tails(q)

    def norm_closed_form(self, spec, space):
        # known only for beta_j = b j^e t^j, where sup_j |beta_{j+1}/beta_j|
        # is |t| 2^e (attained at j = 1) or |t| (the limit, when e < 0)
        if self.params is None or self.alpha_sup is None:
            return None
        e = self.params["beta_exponent"]
        ray = abs(self.params["beta_ratio"]) * (2.0 ** e if e >= 0 else 1.0)
        if space.kind == "l1":
            return max(self.alpha_sup * abs(self._b(1)), ray)
        q = space.conjugate
        root = self.tail_sum(spec, ROOT, q)
        if space.kind == "c0":
            return max(root, ray)
        return max(root ** (1 / q), ray)

    def sup_closed_form(self, spec, v, n):
        if v.path:
            j = len(v.path)
            return abs(self._b(j + n) / self._b(j))
        if self.alpha_sup is None:
            return None
        return abs(self._b(n)) * self.alpha_sup

    def sum_closed_form(self, spec, v, n, q):
        if v.path:
            return self.sup_closed_form(spec, v, n) ** q
        return abs(self._b(n)) ** q * self.tails(q)

    def best_descendant(self, spec, v, n):
        if v.path:
            return menthe_vertex(v.path[0], len(v.path) + n)
        return None

    def to_dict(self):
        if self.params is None:
            raise Unsupported("menthe weights built from callables cannot be serialized")
        return {"builtin": "menthe", "params": self.params}


def _fertile_child_sum(m, e: float, pstar: float) -> float:
    """sum over the children of an m-child vertex of |lambda_u|^e."""
    if m == 1:
        return 1.0
    if m == 2:
        return 2.0
    if m == INF:
        r = 2 ** (-e / pstar)
        return 2 + r / (1 - r)
    return 2 + (m - 2) * (m - 2) ** (-e / pstar)


class FertileNoAlgebra(WeightFamily):
    """Mixing weights bounded by 1, hence without hypercyclic algebra."""

    tag = "fertile-no-algebra"

    def __init__(self, p: float):
        self.p = p
        self.pstar = p / (p - 1)

    def _child_weight(self, l: int, m) -> float:
        if l <= 2 or m == 1:
            return 1.0
        if m == INF:
            return (1 / 2 ** (l - 2)) ** (1 / self.pstar)
        return (1 / (m - 2)) ** (1 / self.pstar)

    def value(self, v):
        if not v.path:
            return 1 + 0j
        m = self._spec.arity(VertexAddr(0, v.path[:-1]))
        return complex(self._child_weight(v.path[-1], m))

    def bind(self, spec):
        self._spec = spec
        return self

    def tail_sum(self, spec, v, q):
        if spec.arity(v) != INF:
            return None
        return _fertile_child_sum(INF, q, self.pstar)

    def _N(self, spec):
        return spec.params["N"] if spec.tag == "nadic" else None

    def norm_closed_form(self, spec, space):
        N = self._N(spec)
        if N is None:
            return None
        if space.kind == "l1":
            return 1.0
        if space.kind == "c0":
            return _fertile_child_sum(N, 1.0, self.pstar)
        e = space.conjugate
        return _fertile_child_sum(N, e, self.pstar) ** (1 / e)

    def sup_closed_form(self, spec, v, n):
        return 1.0

    def sum_closed_form(self, spec, v, n, q):
        N = self._N(spec)
        if N is None:
            return None
        return _fertile_child_sum(N, q, self.pstar) ** n

    def best_descendant(self, spec, v, n):
        return spec.first_descendant(v, n)

    def certify(self, spec, kind, q=1.0):
        N = self._N(spec)
        if kind == "sum" and N is not None:
            S = _fertile_child_sum(N, q, self.pstar)
            if S > 1:
                return f"sum = S^n with per-vertex child sum S = {S:.6g} > 1"
        return None

    def to_dict(self):
        return {"builtin": "fertile-no-algebra", "params": {"p": self.p}}


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# -- constructors ----------------------------------------------------------------

def make_rolewicz(lam: complex) -> Rolewicz:
    return Rolewicz(lam)


def make_symmetric(rule, default: complex = 1.0) -> SymmetricWeights:
    """Weight by generation: a callable ``g -> lambda``, or a table plus default."""
    if callable(rule):
        return SymmetricWeights(rule)
    return GenerationTable(rule, default)


def make_table(table: Dict, default: complex = 1.0) -> TableWeights:
    return TableWeights(table, default)


def dyadic_parameters(p: float, m0: Optional[int] = None,
                      alpha: Optional[float] = None) -> Tuple[int, float]:
    """Resolve ``(m0, alpha)`` with ``p/m0 < alpha < (p-1)/p``."""
    if not p > 1:
        raise InvalidArgument(f"p must exceed 1, got {p}")
    upper = (p - 1) / p
    if m0 is None:
        m0 = math.floor(p * p / (p - 1)) + 1
    if not p / m0 < upper:
        raise InvalidArgument(f"m0 = {m0} needs p/m0 < (p-1)/p, i.e. m0 > {p * p / (p - 1):.6g}")
    if alpha is None:
        alpha = (p / m0 + upper) / 2
    if not p / m0 < alpha < upper:
        raise InvalidArgument(f"alpha = {alpha} outside the admissible interval "
                              f"({p / m0:.6g}, {upper:.6g})")
    return m0, alpha


def make_dyadic_counterexample(p: float, m0: Optional[int] = None,
                               alpha: Optional[float] = None) -> DyadicCounterexample:
    m0, alpha = dyadic_parameters(p, m0, alpha)
    return DyadicCounterexample(p, m0, alpha)


def make_menthe(alpha, beta, tails, alpha_sup=None) -> Menthe:
    """``alpha``, ``beta``: 1-based index -> complex; ``tails(q) = sum_i |alpha_i|^q``."""
    for k in range(1, 65):
        if complex(alpha(k)) == 0 or complex(beta(k)) == 0:
            raise InvalidArgument(f"zero entry at index {k}")
    return Menthe(alpha, beta, tails, alpha_sup)


def geometric_alpha(scale: complex, ratio: float):
    """``alpha_i = scale * ratio^i`` with its q-tail sums and sup (|ratio| < 1)."""
    if not 0 < abs(ratio) < 1 or scale == 0:
        raise InvalidArgument("geometric alpha needs 0 < |ratio| < 1 and scale != 0")
    a, r = abs(scale), abs(ratio)
    return (lambda i: scale * ratio ** i,
            lambda q: a ** q * r ** q / (1 - r ** q),
            a * r)


def make_menthe_geometric(alpha_scale=1.0, alpha_ratio=0.5, beta_scale=1.0,
                          beta_exponent=0.0, beta_ratio=1.0) -> Menthe:
    """Menthe weights with ``alpha_i = c r^i`` and ``beta_j = b j^e t^j``."""
    seq, tails, sup = geometric_alpha(alpha_scale, alpha_ratio)
    if beta_scale == 0 or beta_ratio == 0:
        raise InvalidArgument("beta_scale and beta_ratio must be nonzero")
    w = make_menthe(seq, lambda j: beta_scale * j ** beta_exponent * beta_ratio ** j,
                    tails, sup)
    w.params = {"alpha_scale": alpha_scale, "alpha_ratio": alpha_ratio,
                "beta_scale": beta_scale, "beta_exponent": beta_exponent,
                "beta_ratio": beta_ratio}
    return w


def make_fertile_no_algebra(spec: TreeSpec, p: float) -> FertileNoAlgebra:
    if not spec.rooted:
        raise Unsupported("the fertile construction is implemented for rooted trees")
    if not p > 1:
        raise InvalidArgument("p must exceed 1")
    verdict = find_fertile(spec)
    if verdict.status != "fertile" or verdict.vertex != ROOT:
        raise Unsupported("the root is not provably fertile; extending the weights "
                          "outside a fertile subtree is not implemented")
    return FertileNoAlgebra(p).bind(spec)


def make_bilateral_rolewicz(spec: TreeSpec, lam: complex, n_lo: int, n_hi: int,
                            middle: Dict[int, complex]) -> BilateralRolewicz:
    if spec.rooted or not spec.free_left_end:
        raise InvalidArgument("bilateral Rolewicz weights need an unrooted tree "
                              "with a free left end")
    if not abs(lam) > 1:
        raise InvalidArgument(f"need |lambda| > 1, got {abs(lam)}")
    if n_hi < n_lo:
        raise InvalidArgument("n_hi must be >= n_lo")
    missing = [g for g in range(n_lo, n_hi + 1) if g not in middle]
    if missing:
        raise InvalidArgument(f"middle weights missing for generations {missing}")
    if any(complex(middle[g]) == 0 for g in range(n_lo, n_hi + 1)):
        raise InvalidArgument("middle weights must be nonzero")
    return BilateralRolewicz(lam, n_lo, n_hi, {g: middle[g] for g in range(n_lo, n_hi + 1)})


# -- path products and norms ----------------------------------------------------------

def _offset(spec, v, u) -> int:
    n = u.generation - v.generation
    if n < 0 or _parent(spec, u, n) != v:
        raise NotAnAncestor(f"{v} is not an ancestor of {u}")
    return n


def path_product(w: WeightFamily, spec: TreeSpec, v: VertexAddr, u: VertexAddr) -> complex:
    """``lambda(v -> u)``; 1 when ``u == v``."""
    v, u = spec.check(v), spec.check(u)
    n = _offset(spec, v, u)
    if n == 0:
        return 1 + 0j
    return w.path_product(spec, v, u, n)


def iter_weighted_descendants(w: WeightFamily, spec: TreeSpec, v: VertexAddr,
                              n: int) -> Iterator[Tuple[VertexAddr, complex]]:
    """Depth-first ``(u, lambda(v -> u))`` over ``Chi^n(v)``."""
    if n == 0:
        yield v, 1 + 0j
        return
    stack = [(spec.iter_children(v), 1 + 0j)]
    while stack:
        it, prod = stack[-1]
        for c in it:
            pc = prod * w.value(c)
            if len(stack) == n:
                yield c, pc
            else:
                stack.append((spec.iter_children(c), pc))
                break
        else:
            stack.pop()


@dataclass(frozen=True)
class NormReport:
    value: float
    exact: bool
    bounded: bool
    note: str = ""


def _sweep(spec: TreeSpec, budget: int):
    """Vertices generation by generation (alternating signs when unrooted).

    Each generation gets at most a quarter of the budget so that one infinite
    generation cannot hide the others.
    """
    from itertools import islice
    from .trees import _iter_generation
    cap = max(1, budget // 4)
    order = [0]
    for k in range(1, 64):
        order += [k] if spec.rooted else [k, -k]
    seen = 0
    for g in order:
        for v in islice(_iter_generation(spec, g), cap):
            yield v
            seen += 1
            if seen >= budget:
                return


def operator_norm(w: WeightFamily, spec: TreeSpec, space, budget: int = 10_000,
                  guard: float = 1e12) -> NormReport:
    """Operator norm of the weighted backward shift on the given space.

    Without a closed form, ``budget`` bounds the number of child weights
    evaluated and the result is a lower bound (``exact=False``).
    """
    from itertools import islice
    space = SpaceTag.parse(space)
    closed = w.norm_closed_form(spec, space)
    if closed is not None:
        return NormReport(float(closed), True, closed < INF, "closed form")
    e = space.conjugate
    best = 0.0
    work = visited = 0
    for v in _sweep(spec, budget):
        if work >= budget:
            break
        visited += 1
        m = spec.arity(v)
        tail = w.tail_sum(spec, v, e) if m == INF and space.kind != "l1" else None
        if tail is not None:
            s = tail
        else:
            mods = np.array([abs(w.value(c)) for c in
                             islice(spec.iter_children(v), max(1, budget - work))])
            work += len(mods)
            if space.kind == "l1":
                best = max(best, float(mods.max()))
                continue
            s = float(np.sum(mods ** e))
        if s > guard:
            return NormReport(INF, m != INF or tail is not None, False,
                              f"child sum at {v} exceeds {guard:g}")
        best = max(best, s)
    value = best if space.kind in ("c0", "l1") else best ** (1 / e)
    return NormReport(value, False, True, f"lower bound over {visited} vertices")
