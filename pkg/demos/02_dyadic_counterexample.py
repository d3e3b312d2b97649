"""
Hypercyclic without a hypercyclic algebra
=========================================

On the dyadic tree, put weights so that the product from the root to the
vertex with lexicographic position theta among its generation equals
theta^(-alpha).  For p/m0 < alpha < (p-1)/p the operator is bounded and
hypercyclic on l^p, yet every sup over Chi^n(v) stays <= 1, so it has no
hypercyclic algebra.
"""

import itertools

import numpy as np

from treeshift import ROOT, crit_sum, crit_sup, dyadic, make_dyadic_counterexample, theta
from treeshift.criteria import assemble_verdict, default_probes
from treeshift.weights import operator_norm

p = 2.0
pstar = p / (p - 1)
spec = dyadic()
w = make_dyadic_counterexample(p)
print(f"p = {p}, m0 = {w.m0}, alpha = {w.alpha:.4f}")

# %%
# theta is the 1-based lexicographic position: the words of length 3 in
# {1, 2} map onto 1..8 in order.

print([theta(word) for word in itertools.product((1, 2), repeat=3)])

# %%
# The operator norm is attained at the root's two children.

rep = operator_norm(w, spec, "l2")
print(f"||B|| on l2 = {rep.value:.6f} (closed form: {rep.exact}), "
      f"bound {(1 + 0.5 ** (w.alpha * pstar)) ** (1 / pstar):.6f}")

# %%
# The p*-sum at the root grows like 2^(n(1 - alpha p*)), slowly.

for n in (1, 4, 8, 12, 24, 48):
    s = crit_sum(w, spec, ROOT, n, pstar).value
    print(f"n = {n:2d}: sum = {s:10.4f}   lower bound {2 ** (n * (1 - w.alpha * pstar)):10.4f}")

# %%
# Every sup over the probe vertices stays at or below 1.

probes = default_probes(spec)
sups = np.array([[crit_sup(w, spec, v, n).value for n in range(1, 13)] for v in probes])
print(f"max sup over {len(probes)} probes and n <= 12: {sups.max():.6f}")

# %%
# The verdicts: hypercyclicity shows up by n = 100 (the minima only clear the
# default threshold of 1000 late), the algebra criterion stalls.

print("hc:     ", assemble_verdict("rooted-hc", w, spec, horizon=100).verdict)
print("algebra:", assemble_verdict("rooted-algebra-iv", w, spec).verdict)
