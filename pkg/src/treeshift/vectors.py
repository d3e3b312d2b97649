"""Finitely supported complex functions on the vertices of a tree.

``SparseVector`` is an immutable map from vertex address to nonzero complex
value.  ``*`` between two vectors is the coordinatewise product; ``*`` with a
scalar scales.  Norms take a :class:`SpaceTag`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from numbers import Number
from typing import Dict, Iterable, Optional

import numpy as np

from .errors import InvalidArgument
from .trees import VertexAddr

PURGE = 1e-300


@dataclass(frozen=True)
class SpaceTag:
    """One of the sequence spaces l^1, l^p (1 < p < inf) or c_0."""

    kind: str          # "l1" | "lp" | "c0"
    p: float = 1.0

    def __post_init__(self):
        if self.kind not in ("l1", "lp", "c0"):
            raise InvalidArgument(f"unknown space {self.kind!r}")
        if self.kind == "lp" and not (1 < self.p < math.inf):
            raise InvalidArgument(f"l^p needs 1 < p < inf, got {self.p}")

    @property
    def conjugate(self) -> float:
        """p* with 1/p + 1/p* = 1 (inf for l^1, 1 for c_0)."""
        if self.kind == "l1":
            return math.inf
        if self.kind == "c0":
            return 1.0
        return self.p / (self.p - 1)

    @property
    def norm_exponent(self) -> float:
        return math.inf if self.kind == "c0" else (1.0 if self.kind == "l1" else self.p)

    def __str__(self):
        if self.kind == "lp":
            p = int(self.p) if float(self.p).is_integer() else self.p
            return f"l{p}"
        return self.kind

    @classmethod
    def parse(cls, text) -> "SpaceTag":
        if isinstance(text, SpaceTag):
            return text
        t = str(text).strip().lower().replace("ℓ", "l").replace("^", "")
        if t in ("l1", "c0"):
            return cls(t)
        if t.startswith("l"):
            try:
                return cls("lp", float(t[1:]))
            except ValueError:
                pass
        raise InvalidArgument(f"cannot parse space {text!r}")


def lp(p: float) -> SpaceTag:
    return SpaceTag("l1") if p == 1 else SpaceTag("lp", p)


L1 = SpaceTag("l1")
C0 = SpaceTag("c0")


def principal_power(z: complex, s: float) -> complex:
    """``exp(s Log z)`` with the principal logarithm, Arg in (-pi, pi]."""
    if z == 0:
        return 0j
    if float(s).is_integer():
        return complex(z) ** int(s)
    z = complex(z.real + 0.0, z.imag + 0.0)   # -0.0 imaginary part would flip Arg to -pi
    return cmath.rect(abs(z) ** s, s * cmath.phase(z))


class SparseVector:
    __slots__ = ("_e",)

    def __init__(self, entries: Optional[Dict] = None):
        e = {}
        for k, val in (entries or {}).items():
            val = complex(val)
            if abs(val) > PURGE:
                e[VertexAddr.parse(k)] = val
        self._e = e

    @classmethod
    def basis(cls, v, value: complex = 1.0) -> "SparseVector":
        return cls({VertexAddr.parse(v): value})

    @classmethod
    def from_triples(cls, triples: Iterable) -> "SparseVector":
        """Build from ``(address, re, im)`` triples; repeated addresses add up."""
        acc: Dict[VertexAddr, complex] = {}
        for addr, re, im in triples:
            v = VertexAddr.parse(addr)
            acc[v] = acc.get(v, 0j) + complex(float(re), float(im))
        return cls(acc)

    def to_triples(self):
        return [[str(v), z.real, z.imag] for v, z in sorted(self._e.items())]

    # mapping-like access
    def __getitem__(self, v) -> complex:
        return self._e.get(VertexAddr.parse(v), 0j)

    def __len__(self):
        return len(self._e)

    def __iter__(self):
        return iter(sorted(self._e))

    def items(self):
        return sorted(self._e.items())

    @property
    def support(self) -> frozenset:
        return frozenset(self._e)

    def __bool__(self):
        return bool(self._e)

    def __eq__(self, other):
        return isinstance(other, SparseVector) and self._e == other._e

    def __hash__(self):
        return hash(frozenset(self._e.items()))

    def __repr__(self):
        body = ", ".join(f"{v}: {z:.6g}" for v, z in self.items())
        return f"SparseVector({{{body}}})"

    # linear structure
    def __add__(self, other: "SparseVector") -> "SparseVector":
        e = dict(self._e)
        for v, z in other._e.items():
            e[v] = e.get(v, 0j) + z
        return SparseVector(e)

    def __neg__(self):
        return SparseVector({v: -z for v, z in self._e.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SparseVector):
            return cw_product(self, other)
        if isinstance(other, Number):
            return SparseVector({v: z * other for v, z in self._e.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1.0 / c)

    def __pow__(self, s):
        return power(self, s)

    def norm(self, space="l2") -> float:
        return norm(self, space)

    def sup(self) -> float:
        return max((abs(z) for z in self._e.values()), default=0.0)


def norm(f: SparseVector, space) -> float:
    """l^p norm, or the sup norm for c_0."""
    space = SpaceTag.parse(space)
    if not f:
        return 0.0
    a = np.abs(np.fromiter(f._e.values(), dtype=complex, count=len(f)))
    if space.kind == "c0":
        return float(a.max())
    p = space.norm_exponent
    scale = a.max()
    # scaled to avoid overflow/underflow of |z|^p
    return float(scale * np.sum((a / scale) ** p) ** (1.0 / p))


def cw_product(f: SparseVector, g: SparseVector) -> SparseVector:
    if len(g) < len(f):
        f, g = g, f
    return SparseVector({v: z * g._e[v] for v, z in f._e.items() if v in g._e})


def power(f: SparseVector, s: float) -> SparseVector:
    """Coordinatewise principal s-th power."""
    if s <= 0:
        raise InvalidArgument("power exponent must be positive")
    return SparseVector({v: principal_power(z, s) for v, z in f._e.items()})


def indicator(vertices) -> SparseVector:
    return SparseVector({v: 1.0 for v in vertices})
