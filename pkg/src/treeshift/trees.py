"""Leafless directed trees described by finite branching rules.

A vertex is addressed by a :class:`VertexAddr`: a number of parent steps
above a fixed vertex (the root of a rooted tree, or the *anchor* of an
unrooted one) followed by a descent path of 1-based child indices.  Infinite
trees, including trees in which a vertex has countably many children, are
therefore representable by a finite :class:`TreeSpec`.

For unrooted trees the ancestors ``Par^k(anchor)`` form the *spine*.  Level
``k`` of the spine records the number of children of ``Par^k(anchor)`` and the
index ``s_k`` of the child leading back towards the anchor.  An address
``(k, (i, ...))`` with ``k > 0`` is canonical only if ``i != s_k``; every
vertex then has exactly one canonical address.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import count, islice
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple, Union

from .errors import InvalidArgument, MalformedAddress, Unsupported

INF = math.inf
"""Marker for a countably infinite set of children."""

ChildCount = Union[int, float]

ROOTED = "rooted"
UNROOTED = "unrooted"


@dataclass(frozen=True, order=True)
class VertexAddr:
    """Address of a vertex: ``ascent`` parent steps up, then ``path`` down."""

    ascent: int = 0
    path: Tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.path, tuple):
            object.__setattr__(self, "path", tuple(self.path))
        if self.ascent < 0:
            raise MalformedAddress(f"negative ascent {self.ascent}")
        if any((not isinstance(i, int)) or i < 1 for i in self.path):
            raise MalformedAddress(f"child indices must be positive integers: {self.path}")

    @property
    def depth(self) -> int:
        return len(self.path)

    @property
    def generation(self) -> int:
        """Signed generation relative to the root/anchor."""
        return len(self.path) - self.ascent

    def child(self, i: int) -> "VertexAddr":
        return VertexAddr(self.ascent, self.path + (i,))

    def __str__(self):
        body = ".".join(map(str, self.path))
        if self.ascent == 0:
            return body or "r"
        return f"^{self.ascent}/{body}" if body else f"^{self.ascent}"

    @classmethod
    def parse(cls, text) -> "VertexAddr":
        """Inverse of ``str``; also accepts a list of indices or a mapping."""
        if isinstance(text, VertexAddr):
            return text
        if isinstance(text, dict):
            return cls(int(text.get("ascent", 0)), tuple(int(i) for i in text.get("path", ())))
        if isinstance(text, (list, tuple)):
            return cls(0, tuple(int(i) for i in text))
        text = str(text).strip()
        ascent = 0
        if text.startswith("^"):
            head, _, text = text[1:].partition("/")
            try:
                ascent = int(head)
            except ValueError:
                raise MalformedAddress(f"bad ascent in address {text!r}") from None
        elif text == "r":
            text = ""
        try:
            path = tuple(int(tok) for tok in text.split(".")) if text else ()
        except ValueError:
            raise MalformedAddress(f"cannot parse address {text!r}") from None
        return cls(ascent, path)


ROOT = VertexAddr()


class Enumerated(NamedTuple):
    """A (possibly truncated) deterministic enumeration of vertices."""

    vertices: List[VertexAddr]
    truncated: bool


def take(iterable, budget: int) -> Enumerated:
    if budget <= 0:
        raise InvalidArgument(f"budget must be positive, got {budget}")
    items = list(islice(iterable, budget + 1))
    if len(items) > budget:
        return Enumerated(items[:budget], True)
    return Enumerated(items, False)


def _check_count(c) -> ChildCount:
    if c == INF or c == "inf":
        return INF
    c = int(c)
    if c < 1:
        raise InvalidArgument("trees must be leafless: every vertex needs at least one child")
    return c


@dataclass(frozen=True)
class TreeSpec:
    """Finite description of a leafless directed tree.

    ``tag`` selects a builtin branching rule (``nadic``, ``menthe``,
    ``staircase``); otherwise arities come from ``table`` with ``default`` for
    every vertex not listed.  Unrooted trees additionally carry the spine
    levels ``(arity, spine_index)`` for ``k = 1, 2, ...`` and ``spine_default``
    for all levels beyond the listed ones.
    """

    kind: str = ROOTED
    tag: Optional[str] = None
    params: Dict = field(default_factory=dict)
    table: Dict[VertexAddr, ChildCount] = field(default_factory=dict)
    default: ChildCount = 2
    spine: Tuple[Tuple[ChildCount, int], ...] = ()
    spine_default: Tuple[ChildCount, int] = (1, 1)

    def __post_init__(self):
        if self.kind not in (ROOTED, UNROOTED):
            raise InvalidArgument(f"unknown tree kind {self.kind!r}")
        object.__setattr__(self, "default", _check_count(self.default))
        object.__setattr__(self, "table", {VertexAddr.parse(k): _check_count(c)
                                           for k, c in self.table.items()})
        levels = tuple((_check_count(a), int(s)) for a, s in self.spine)
        sd = (_check_count(self.spine_default[0]), int(self.spine_default[1]))
        for a, s in levels + (sd,):
            if not 1 <= s <= a:
                raise InvalidArgument(f"spine index {s} outside 1..{a}")
        object.__setattr__(self, "spine", levels)
        object.__setattr__(self, "spine_default", sd)
        if self.kind == ROOTED and self.spine:
            raise InvalidArgument("rooted trees have no spine")
        if self.tag is not None and self.tag not in _BUILTIN_ARITY:
            raise InvalidArgument(f"unknown builtin tree {self.tag!r}")
        if self.tag == "nadic":
            _check_count(self.params["N"])

    def __hash__(self):
        return hash((self.kind, self.tag, tuple(sorted(self.params.items())),
                     tuple(sorted(self.table.items())), self.default, self.spine,
                     self.spine_default))

    @property
    def rooted(self) -> bool:
        return self.kind == ROOTED

    # -- spine ----------------------------------------------------------
    def spine_level(self, k: int) -> Tuple[ChildCount, int]:
        """``(arity, spine_index)`` of ``Par^k(anchor)``, ``k >= 1``."""
        if k <= len(self.spine):
            return self.spine[k - 1]
        return self.spine_default

    @property
    def free_left_end(self) -> bool:
        return not self.rooted and self.spine_default[0] == 1

    @property
    def last_branching_level(self) -> int:
        """Largest spine level with more than one child (0 if none)."""
        return max((k for k, (a, _) in enumerate(self.spine, 1) if a != 1), default=0)

    # -- addresses --------------------------------------------------------
    def canonical(self, v: VertexAddr) -> VertexAddr:
        if self.rooted:
            if v.ascent:
                raise MalformedAddress(f"rooted tree address with ascent: {v}")
            return v
        a, p = v.ascent, v.path
        while a > 0 and p and p[0] == self.spine_level(a)[1]:
            a, p = a - 1, p[1:]
        return v if a == v.ascent else VertexAddr(a, p)

    def check(self, v: VertexAddr) -> VertexAddr:
        """Validate that ``v`` is a canonical address of an existing vertex."""
        v = VertexAddr.parse(v)
        if self.canonical(v) != v:
            raise MalformedAddress(f"{v} is not canonical")
        node = VertexAddr(v.ascent)
        for i in v.path:
            if i > self.arity(node):
                raise MalformedAddress(f"{v}: vertex {node} has no child {i}")
            node = node.child(i)
        return v

    # -- branching ----------------------------------------------------------
    def arity(self, v: VertexAddr) -> ChildCount:
        if not self.rooted and v.ascent > 0 and not v.path:
            return self.spine_level(v.ascent)[0]
        if self.tag is not None:
            return _BUILTIN_ARITY[self.tag](self, v)
        return self.table.get(v, self.default)

    def iter_children(self, v: VertexAddr) -> Iterator[VertexAddr]:
        c = self.arity(v)
        indices = count(1) if c == INF else range(1, c + 1)
        if not self.rooted and v.ascent > 0 and not v.path:
            s = self.spine_level(v.ascent)[1]
            for i in indices:
                yield VertexAddr(v.ascent - 1) if i == s else v.child(i)
        else:
            for i in indices:
                yield v.child(i)

    def iter_descendants(self, v: VertexAddr, n: int) -> Iterator[VertexAddr]:
        """Depth-first, ascending-index enumeration of the n-th descendants."""
        if n == 0:
            yield v
            return
        stack = [self.iter_children(v)]
        while stack:
            for c in stack[-1]:
                if len(stack) == n:
                    yield c
                else:
                    stack.append(self.iter_children(c))
                    break
            else:
                stack.pop()

    def first_descendant(self, v: VertexAddr, n: int) -> VertexAddr:
        for _ in range(n):
            v = next(self.iter_children(v))
        return v

    def max_arity(self) -> Optional[ChildCount]:
        """Supremum of the number of children over all vertices, if known."""
        if self.tag == "nadic":
            return _check_count(self.params["N"])
        if self.tag in ("menthe", "staircase"):
            return INF
        counts = [self.default, *self.table.values()]
        if not self.rooted:
            counts += [a for a, _ in self.spine] + [self.spine_default[0]]
        return max(counts)

    def descendant_count(self, v: VertexAddr, n: int) -> Optional[ChildCount]:
        """Closed form of ``|Chi^n(v)|`` where one is known, else None."""
        if n == 0:
            return 1
        if self.tag == "nadic":
            N = _check_count(self.params["N"])
            return _power(N, n)
        if self.tag == "menthe":
            return INF if not v.path else 1
        if self.tag == "staircase":
            k = _staircase_level(v.path)
            if k is None:
                return 1
            if k == 0:
                return self.descendant_count(VertexAddr(0, (1,)), n - 1)
            # (2^k - 1) rays below r_k plus the descendants of r_{k+1}
            return 2 ** (k + n) - 2 ** k - n + 1
        if self.table:
            return None
        if self.rooted or v.path or v.ascent == 0:
            return _power(self.default, n)
        a, _ = self.spine_level(v.ascent)
        below = self.descendant_count(VertexAddr(v.ascent - 1), n - 1)
        if a == INF:
            return INF
        return below + (a - 1) * _power(self.default, n - 1) if a > 1 else below

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.tag is not None:
            out["builtin"] = self.tag
            out["params"] = {k: _count_out(v) for k, v in sorted(self.params.items())}
        else:
            out["arity"] = {
                "default": _count_out(self.default),
                "table": {str(k): _count_out(c) for k, c in sorted(self.table.items())},
            }
        if not self.rooted:
            out["spine"] = {
                "levels": [[_count_out(a), s] for a, s in self.spine],
                "default": [_count_out(self.spine_default[0]), self.spine_default[1]],
            }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "TreeSpec":
        kind = data.get("kind", ROOTED)
        kw: dict = {"kind": kind}
        if "builtin" in data:
            kw["tag"] = data["builtin"]
            kw["params"] = {k: _check_count(v) if k == "N" else v
                            for k, v in data.get("params", {}).items()}
        if "arity" in data:
            kw["default"] = _check_count(data["arity"].get("default", 2))
            kw["table"] = {VertexAddr.parse(k): _check_count(c)
                           for k, c in data["arity"].get("table", {}).items()}
        if kind == UNROOTED:
            spine = data.get("spine", {})
            kw["spine"] = tuple(tuple(lv) for lv in spine.get("levels", ()))
            kw["spine_default"] = tuple(spine.get("default", (1, 1)))
        return cls(**kw)


def _power(c, n):
    if n == 0:
        return 1
    return INF if c == INF else c ** n


def _count_out(c):
    return "inf" if c == INF else c


# -- builtin branching rules ---------------------------------------------------

def _staircase_level(path) -> Optional[int]:
    """k if ``path`` addresses r_k (r_0 = root), None inside a stationary ray."""
    if not path:
        return 0
    if path[0] != 1:
        return None
    for k, i in enumerate(path[1:], 1):
        if i != 2 ** k:
            return None
    return len(path)


def _nadic_arity(spec, v):
    return _check_count(spec.params["N"])


def _menthe_arity(spec, v):
    return INF if not v.path else 1


def _staircase_arity(spec, v):
    k = _staircase_level(v.path)
    if k is None:
        return 1
    return 1 if k == 0 else 2 ** k


_BUILTIN_ARITY = {
    "nadic": _nadic_arity,
    "menthe": _menthe_arity,
    "staircase": _staircase_arity,
}


def nadic(N: ChildCount) -> TreeSpec:
    """Rooted tree in which every vertex has ``N`` children (``N`` may be INF)."""
    return TreeSpec(ROOTED, tag="nadic", params={"N": _check_count(N)})


def dyadic() -> TreeSpec:
    return nadic(2)


def menthe() -> TreeSpec:
    """Root with countably many children, each starting a stationary ray.

    ``u_{i,j}`` (ray ``i``, depth ``j``) has address ``(i, 1, ..., 1)`` of length ``j``.
    """
    return TreeSpec(ROOTED, tag="menthe")


def menthe_vertex(i: int, j: int) -> VertexAddr:
    return VertexAddr(0, (i,) + (1,) * (j - 1))


def staircase() -> TreeSpec:
    """Tree with exponentially growing generations but no fertile vertex.

    The root has the single child ``r_1``; ``r_k`` has ``2^k`` children, the
    first ``2^k - 1`` of which start stationary rays, the last being ``r_{k+1}``.
    """
    return TreeSpec(ROOTED, tag="staircase")


def staircase_vertex(k: int) -> VertexAddr:
    """Address of ``r_k`` (``r_0`` is the root)."""
    if k == 0:
        return ROOT
    return VertexAddr(0, (1,) + tuple(2 ** j for j in range(1, k)))


def table_tree(table: Dict, default: ChildCount = 1) -> TreeSpec:
    return TreeSpec(ROOTED, table=dict(table), default=default)


def spine_tree(levels=((2, 1),), branching: ChildCount = 2,
               spine_default=(1, 1), table=None) -> TreeSpec:
    """Unrooted tree; off-spine vertices have ``branching`` children unless tabled."""
    return TreeSpec(UNROOTED, table=dict(table or {}), default=branching,
                    spine=tuple(levels), spine_default=tuple(spine_default))


# -- operations ----------------------------------------------------------------

def parent(spec: TreeSpec, v: VertexAddr, k: int = 1) -> Optional[VertexAddr]:
    """``Par^k(v)``; None above the root of a rooted tree."""
    v = spec.check(v)
    return _parent(spec, v, k)


def _parent(spec, v, k):
    if k < 0:
        raise InvalidArgument("k must be nonnegative")
    if k <= len(v.path):
        return VertexAddr(v.ascent, v.path[:len(v.path) - k])
    if spec.rooted:
        return None
    return VertexAddr(v.ascent + k - len(v.path))


def children_n(spec: TreeSpec, v: VertexAddr, n: int, budget: int = 10_000) -> Enumerated:
    """``Chi^n(v)`` in depth-first ascending-index order, truncated at ``budget``."""
    if budget <= 0:
        raise InvalidArgument(f"budget must be positive, got {budget}")
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    v = spec.check(v)
    return take(spec.iter_descendants(v, n), budget)


def _iter_generation(spec, n):
    if spec.rooted:
        yield from spec.iter_descendants(ROOT, n)
        return
    a = max(-n, 0)
    stop = max(spec.last_branching_level, -n) if spec.free_left_end else None
    while stop is None or a <= stop:
        if a + n == 0:
            yield VertexAddr(a)
        elif a == 0:
            yield from spec.iter_descendants(ROOT, n)
        else:
            for c in spec.iter_children(VertexAddr(a)):
                if c.ascent == a:   # skip the spine child
                    yield from spec.iter_descendants(c, a + n - 1)
        a += 1


def generation(spec: TreeSpec, n: int, budget: int = 10_000) -> Enumerated:
    """``Gen_n`` (relative to the anchor on unrooted trees)."""
    if spec.rooted and n < 0:
        raise InvalidArgument("rooted trees have no negative generations")
    return take(_iter_generation(spec, n), budget)


def count_descendants(spec: TreeSpec, v: VertexAddr, n: int, budget: int = 10_000):
    """``(|Chi^n(v)|, exact)``: closed form when known, else a budgeted count."""
    c = spec.descendant_count(v, n)
    if c is not None:
        return c, True
    e = children_n(spec, v, n, budget)
    return len(e.vertices), not e.truncated


@dataclass(frozen=True)
class FertilityVerdict:
    status: str                      # "fertile" | "none" | "inconclusive"
    vertex: Optional[VertexAddr] = None
    certificate: str = ""
    horizon: Optional[int] = None
    min_count: Optional[int] = None

    def __str__(self):
        if self.status == "fertile":
            return f"Fertile({self.vertex}): {self.certificate}"
        if self.status == "none":
            return f"ProvenNone: {self.certificate}"
        return f"Inconclusive({self.horizon}): min |Chi^{self.horizon}(w)| = {self.min_count}"


def find_fertile(spec: TreeSpec, horizon: int = 8, depth: int = 1,
                 budget: int = 100_000) -> FertilityVerdict:
    """Look for a fertile vertex.

    Builtin families get an exact verdict.  Table trees get an
    ``inconclusive`` verdict reporting the smallest ``|Chi^horizon(w)|`` over
    the strict descendants ``w`` of the root down to ``depth``.
    """
    if not spec.rooted:
        raise Unsupported("fertility is only decided for rooted trees")
    if horizon < 1:
        raise InvalidArgument("horizon must be positive")
    if spec.tag == "nadic":
        N = spec.params["N"]
        if N == 1:
            return FertilityVerdict("none", certificate="every vertex has exactly one child")
        cert = ("every vertex has infinitely many children" if N == INF
                else f"|Chi^n(w)| = {N}^n for every vertex w")
        return FertilityVerdict("fertile", ROOT, certificate=cert)
    if spec.tag == "menthe":
        return FertilityVerdict("none", certificate="every non-root vertex lies on a "
                                "stationary ray, and the root dominates such rays")
    if spec.tag == "staircase":
        return FertilityVerdict("none", certificate="every r_k has a child starting a "
                                "stationary ray; every other vertex lies on one")
    lowest = None
    for d in range(1, depth + 1):
        for w in spec.iter_descendants(ROOT, d):
            c, _ = count_descendants(spec, w, horizon, budget)
            lowest = c if lowest is None else min(lowest, c)
    return FertilityVerdict("inconclusive", horizon=horizon, min_count=lowest)
