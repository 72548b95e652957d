#!/usr/bin/env python3
"""The synthetic 2-core: dual rate, conditioned degrees, kernel, paths.

Sampling the model directly is dramatically cheaper than generating a
random graph and peeling it, and its law matches the real 2-core of the
giant component.  This demo checks the sampler against closed forms.
"""

import math

import numpy as np

from cutlab import RngSpec, sample_core_model, solve_mu
from cutlab.core_model import CoreModelParams

print("dual rate mu(1+eps) and the window (1-eps, 1-eps+2eps^2/3):")
for eps in (0.05, 0.1, 0.2, 0.3, 0.5):
    mu = solve_mu(1 + eps)
    print(f"  eps={eps:.2f}: mu={mu:.6f}  "
          f"window=({1 - eps:.4f}, {1 - eps + 2 * eps * eps / 3:.4f})")

eps, n, trials = 0.3, 10 ** 5, 30
params = CoreModelParams.from_eps(eps, n)
rate = params.lam - params.mu
oracle = (rate - rate * math.exp(-rate) - rate ** 2 * math.exp(-rate)) / 2

print(f"\nkernel density at eps={eps}, n={n} over {trials} trials")
ek, odd_frac, attempts = [], [], []
for s in range(trials):
    core = sample_core_model(n, eps, RngSpec(99, s))
    ek.append(core.kernel.m / n)
    odd_frac.append(core.parities.mean())
    attempts.append(core.profile.attempts)
print(f"  mean e(K)/n          = {np.mean(ek):.6f}")
print(f"  exact Poisson oracle = {oracle:.6f}")
print(f"  leading term 2eps^3  = {2 * eps ** 3:.6f} "
      "(visibly above: the eps^4 corrections are negative and large)")
print(f"  odd path fraction    = {np.mean(odd_frac):.4f} "
      f"vs 1/(1+mu) = {1 / (1 + params.mu):.4f}")
print(f"  parity-conditioning attempts per profile: {np.mean(attempts):.2f} "
      "(rejection accepts with probability about 1/2)")

core = sample_core_model(n, eps, RngSpec(7))
g, k = core.graph, core.kernel
print(f"\none sample: kernel {k.n} vertices / {k.m} edges, "
      f"expanded core {g.n} vertices / {g.m} edges")
print(f"  Euler count preserved by subdivision: "
      f"{g.m - g.n} == {k.m - k.n}")
print(f"  min degree of the expanded core: {g.degrees().min()}")
