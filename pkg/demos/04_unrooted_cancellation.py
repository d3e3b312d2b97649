"""
Cancellation on an unrooted tree
================================

On an unrooted tree, B^n f^m does not vanish: mass travels up the spine.
With bilateral Rolewicz weights (1/2 below generation 0, 2 above), a vertex
a with a large left product lambda(Par^n(a) -> a) would leave a large
residue at Par^n(a).  The witness cancels it exactly by placing
e^(i pi/m) z^(1/m) on a sibling b, since (e^(i pi/m))^m = -1.
"""

from treeshift import SparseVector, VertexAddr, make_bilateral_rolewicz, spine_tree
from treeshift.witnesses import build_unrooted_power

spec = spine_tree()
w = make_bilateral_rolewicz(spec, 2, 0, 0, {0: 1})

f = SparseVector({VertexAddr(0, (1,) * 8): 0.5 + 0.2j, VertexAddr(0, (2,) + (1,) * 7): -0.3,
                  VertexAddr(0, (1,) * 7): 0.4j, VertexAddr(1): 0.6})
g = SparseVector({"1.2": 1})

# %%
# At n = 10 the deep vertices still have left products above 1 and need the
# sibling correction (class F2); the rest (F1) leave a residual that decays
# like 2^-n.  Between n = 10 and n = 20 the residual first grows: the deep
# vertices drop below tau = 1 and move from F2 into F1, whose contributions
# are left in place rather than cancelled.

for m in (2, 3):
    for n in (10, 20, 30, 60):
        rep = build_unrooted_power("l2", w, spec, f, g, m, n)
        worst = max((e for _, e, _ in rep.cancellation), default=0.0)
        print(f"m = {m}, n = {n:2d}: |F2| = {len(rep.classes['F2'])}, "
              f"cancellation error {worst:.1e}, residual {rep.residual_terms:.2e}, "
              f"approach {rep.approach_norms[0]:.2e}, ok = {rep.ok(g.norm('l2'))}")
