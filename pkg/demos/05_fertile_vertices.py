"""
Fertile vertices
================

A vertex is fertile when every strict descendant w has |Chi^n(w)| -> inf.
A tree with a fertile vertex carries mixing weights bounded by 1 (so
without a hypercyclic algebra).  Fast-growing generations alone do not make
a vertex fertile: in the staircase tree every vertex has a descendant that
starts a stationary ray.
"""

from treeshift import INF, ROOT, count_descendants, find_fertile, generation, nadic, staircase
from treeshift import staircase_vertex
from treeshift.criteria import assemble_verdict
from treeshift.weights import make_fertile_no_algebra, operator_norm

for N in (2, 3, INF):
    spec = nadic(N)
    w = make_fertile_no_algebra(spec, 2.0)
    hc = assemble_verdict("rooted-hc", w, spec, horizon=20)
    alg = assemble_verdict("rooted-algebra-iv", w, spec, horizon=20)
    print(f"N = {N}: {find_fertile(spec)}")
    print(f"   ||B||_l2 = {operator_norm(w, spec, 'l2').value:.4f}, hc: {hc.verdict}")
    print(f"   algebra: {alg.verdict}")

# %%
# The staircase: generations double, yet no vertex is fertile.

spec = staircase()
print(find_fertile(spec))
print("generation sizes:", [len(generation(spec, n).vertices) for n in range(8)])
for k in range(4):
    print(f"|Chi^n(r_{k})|, n = 0..6:",
          [count_descendants(spec, staircase_vertex(k), n)[0] for n in range(7)])
print("a stationary ray:", [count_descendants(spec, ROOT.child(1).child(1), n)[0]
                             for n in range(5)])
