"""
Model hierarchy: full sector, 5-level, effective 3-level
========================================================

Three nested descriptions of the same dynamics:

* FULL: the complete single-photon sector, dimension 2N + 1;
* COLLECTIVE5: five coupled collective levels -- this reduction is exact,
  so the two must agree to integrator precision;
* EFFECTIVE3: the slow subspace after adiabatic elimination of the two
  cavity-split branches, valid when Omega_peak << N*G.

A fourth comparison switches the counter-rotating laser terms back on:
the resonant (rotating-wave) model is good when the energy shift delta of
the marked atom satisfies delta * T >> 1.
"""

from cavity_grover import compare_models

result = compare_models(n_atoms=4, epsilon=0.05)
print(f"N = {result.n_atoms}, eps = {result.epsilon}")
print(f"G = {result.g:.3f}, delta = {result.delta:.3f}")
print()
print(f"effective 3-level vs 5-level, max population deviation: "
      f"{result.effective_vs_collective:.3e}")
print(f"full sector vs 5-level (exact reduction):               "
      f"{result.full_vs_collective:.3e}")
print(f"resonant vs counter-rotating, transient deviation:      "
      f"{result.rwa_vs_counter_rotating:.3e}")
print(f"resonant vs counter-rotating, final-fidelity gap:       "
      f"{result.rwa_vs_counter_rotating_final:.3e}")
