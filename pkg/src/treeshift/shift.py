"""Iterates of the weighted backward shift on finitely supported vectors.

``B^n e_u = lambda(Par^n(u) -> u) e_{Par^n(u)}`` (zero above the root), so
``B^n f`` costs ``O(|supp f| * n)`` ancestor hops.  The definitional sum over
``Chi^n(v)`` lives in the tests as an oracle.
"""

from __future__ import annotations

from typing import List, Tuple

from .errors import InvalidArgument
from .trees import TreeSpec, _parent
from .vectors import SparseVector, norm


def apply(w, spec: TreeSpec, f: SparseVector, n: int) -> SparseVector:
    """``B_lambda^n f``."""
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    if n == 0:
        return f
    out = {}
    for u, z in f.items():
        u = spec.check(u)
        a = _parent(spec, u, n)
        if a is None:
            continue
        out[a] = out.get(a, 0j) + w.path_product(spec, a, u, n) * z
    return SparseVector(out)


def orbit_norms(w, spec: TreeSpec, f: SparseVector, g: SparseVector, space,
                n_max: int) -> List[Tuple[int, float]]:
    """``[(n, ||B^n f - g||) for n = 0..n_max]``."""
    if n_max < 0:
        raise InvalidArgument("n_max must be nonnegative")
    return [(n, norm(apply(w, spec, f, n) - g, space)) for n in range(n_max + 1)]
