"""
Building a hypercyclic-algebra witness
======================================

For B = 2B on the dyadic tree, one transitivity step takes base vectors f and
a target g and produces h close to f such that B^n h^beta = g exactly, while
B^n h^alpha is small for the other exponents alpha in P.  The exponents come
from a direction s > 0 with <beta, s> = 1 < <alpha, s>.
"""

from treeshift import ROOT, SparseVector, dyadic, make_rolewicz, solve_exponents
from treeshift.witnesses import build_rooted

w, spec = make_rolewicz(2), dyadic()
P = [[1, 1], [2, 1], [1, 2]]
sol = solve_exponents(P)
print(f"s = {sol.s}, beta = {sol.beta}, <alpha, s> = {sol.values}")

f = [SparseVector({"1": 0.3, "2.2": -1j}), SparseVector({ROOT: 0.5})]
g = SparseVector({ROOT: 1, "2": 0.5 - 0.5j})

# %%
# The hit is exact at every admissible n; the other norms decay like 2^(-n/2).

print(f"{'n':>3} {'hit error':>10} {'approach':>22} {'collapse':>22}")
for n in (4, 8, 12, 16, 20, 30):
    rep = build_rooted("l2", w, spec, f, g, P, n)
    approach = ", ".join(f"{x:.2e}" for x in rep.approach_norms)
    collapse = ", ".join(f"{x:.2e}" for x in rep.collapse_norms.values())
    print(f"{n:3d} {rep.hit_error:10.1e} {approach:>22} {collapse:>22}   ok={rep.ok(g.norm('l2'))}")

# %%
# On c0 the bump is spread over all of Chi^n(a) with equal moduli (the
# key-lemma optimum), which makes its sup norm 1/sum |lambda(a -> u)|.

rep = build_rooted("c0", w, spec, f, g, P, 12)
print(f"c0, n = 12: hit {rep.hit_error:.1e}, approach {rep.approach_norms}")
