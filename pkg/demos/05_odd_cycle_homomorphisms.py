#!/usr/bin/env python3
"""Odd-cycle homomorphisms and how a cut bound refutes them.

A graph mapping into the cycle on 2L+1 vertices can always drop one edge
fiber to become bipartite, so Dist_BP > e/(2L+1) rules the map out.  The
demo decides small instances exactly and then runs the certificate at a
size where exact search would be hopeless.
"""

from cutlab import (
    RngSpec,
    dist_bp_via_kernel,
    ell_epsilon,
    hom_to_odd_cycle,
    no_hom_certificate,
    odd_girth,
    sample_gnp,
)
from cutlab.graph import SparseGraph

def cyc(k):
    return [(i, (i + 1) % k) if i < (i + 1) % k else ((i + 1) % k, i)
            for i in range(k)]

c9 = SparseGraph(9, cyc(9))
print("the 9-cycle maps into shorter odd cycles, never longer ones:")
for ell in (1, 2, 3, 4, 5):
    w = hom_to_odd_cycle(c9, ell)
    print(f"  target C{2 * ell + 1}: "
          + (f"witness {w.mapping.tolist()}" if w else "no homomorphism"))

n, eps = 36, 0.9
g = sample_gnp(n, (1 + eps) / n, RngSpec(12))
bound = dist_bp_via_kernel(g)
print(f"\nG(n={n}, p=(1+{eps})/n): m={g.m}, odd girth={odd_girth(g)}, "
      f"exact Dist_BP via kernel = {bound}")
for ell in (1, 2, 3, 4, 6, 8, 10):
    fired = no_hom_certificate(g, ell, bound)
    tag = "refuted by cut bound" if fired else "not refuted"
    confirm = ""
    if fired:
        confirm = ("; exact search agrees"
                   if hom_to_odd_cycle(g, ell) is None else "; BUG")
    print(f"  C{2 * ell + 1}: {tag}{confirm}")

delta = bound / g.m
print(f"\nmeasured delta = Dist_BP/e = {delta:.3f}; every target at or "
      f"beyond ell = {ell_epsilon(delta)} is refuted mechanically")

# very close to the transition the kernel stays small even at large n,
# so the exact kernel bound reaches sizes hopeless for direct search;
# its size fluctuates, so take the first draw inside the guard
from cutlab import GuardLimitError  # noqa: E402

for s in range(13, 40):
    big = sample_gnp(2 * 10 ** 5, 1.03 / (2 * 10 ** 5), RngSpec(s))
    try:
        big_bound = dist_bp_via_kernel(big)
    except GuardLimitError:
        continue
    print(f"\nat n={big.n}, eps=0.03 (far beyond exact search): exact "
          f"Dist_BP = {big_bound} from the kernel bracket; certificates "
          f"fire once 2l+1 > {big.m // max(big_bound, 1) + 1}")
    break
