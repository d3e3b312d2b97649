"""
Rolewicz operators on N-adic trees
==================================

A constant weight lambda on the N-adic tree gives the operator lambda*B.  Two
numbers govern its dynamics on l^p:

* the p*-sum over Chi^n(v), which grows iff |lambda| > N^(-1/p*)
  (hypercyclicity), and
* the sup over Chi^n(v), which grows iff |lambda| > 1 (hypercyclic algebra).

Between the two thresholds the operator is hypercyclic but has no
hypercyclic algebra.
"""

import numpy as np

from treeshift import ROOT, crit_sum, crit_sup, make_rolewicz, nadic
from treeshift.criteria import assemble_verdict

p = 2.0
pstar = p / (p - 1)

# %%
# Sweep |lambda| across both thresholds on the dyadic and triadic trees.

for N in (2, 3):
    spec = nadic(N)
    lo = N ** (-1 / pstar)
    print(f"\nN = {N}: hypercyclic iff |lambda| > {lo:.4f}, algebra iff |lambda| > 1")
    for lam in np.round(np.linspace(0.5, 1.2, 8), 3):
        w = make_rolewicz(lam)
        hc = assemble_verdict("rooted-hc", w, spec, horizon=30)
        alg = assemble_verdict("rooted-algebra-iv", w, spec, horizon=30)
        s30 = crit_sum(w, spec, ROOT, 30, pstar).value
        m30 = crit_sup(w, spec, ROOT, 30).value
        print(f"  lambda = {lam:5.3f}   sum_30 = {s30:10.4g}   sup_30 = {m30:10.4g}   "
              f"hc: {hc.verdict.kind:<22s} algebra: {alg.verdict.kind}")

# %%
# On c0 the two questions collapse: hypercyclicity (sum with exponent 1)
# already yields an algebra, so lambda = 0.7 on the dyadic tree has one there
# but not on l^2.

w, spec = make_rolewicz(0.7), nadic(2)
for space in ("l2", "c0"):
    rep = assemble_verdict("rooted-algebra-iv", w, spec, space=space, horizon=30)
    print(f"lambda = 0.7 on {space}: {rep.verdict}")
