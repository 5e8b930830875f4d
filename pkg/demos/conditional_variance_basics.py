"""How measuring a control subsystem eats into an observable's variance.

Walks through the conditional-variance split on a Bell pair, then the
chained decomposition on a three-qubit GHZ state where the first control
already pins the answer.
Run:  python demos/conditional_variance_basics.py
"""
import numpy as np

from qurel import (
    DensityOperator,
    Observable,
    SIGMA_X,
    SIGMA_Z,
    conditional_stats,
    sequential_decomposition,
    variance,
)

# --- Bell pair: the partner's outcome determines everything -------------
v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
bell = DensityOperator(np.outer(v, v.conj()), (2, 2))

q = Observable(SIGMA_Z, 0)
o = Observable(SIGMA_Z, 1)
print(f"Bell pair, q = o = sz: unconditional variance V(q) = {variance(bell, q):.3f}")
stats = conditional_stats(bell, q, o)
print(f"  mean conditional variance E[V]   = {stats.e_of_v:.3f}  (outcome fixes q)")
print(f"  variance of conditional means V[E] = {stats.v_of_e:.3f}")
print(f"  E[V] + V[E] = {stats.e_of_v + stats.v_of_e:.3f}  (= V(q), always)\n")

# measuring in the wrong basis learns nothing about sz
stats_x = conditional_stats(bell, q, Observable(SIGMA_X, 1))
print(f"same but o = sx: E[V] = {stats_x.e_of_v:.3f}, V[E] = {stats_x.v_of_e:.3f}")
print("  (an sx measurement on the partner is useless for predicting sz...)")
stats_xx = conditional_stats(bell, Observable(SIGMA_X, 0), Observable(SIGMA_X, 1))
print(f"but for q = sx it is perfect again: E[V] = {stats_xx.e_of_v:.3f}\n")

# --- GHZ chain: the chain terms show who explained what -----------------
g = np.zeros(8, dtype=complex)
g[0] = g[-1] = 1.0 / np.sqrt(2)
ghz = DensityOperator(np.outer(g, g.conj()), (2, 2, 2))

seq = sequential_decomposition(ghz, Observable(SIGMA_Z, 0),
                               [Observable(SIGMA_Z, 1), Observable(SIGMA_Z, 2)])
print("GHZ, q = sz, controls sz on qubits 1 then 2:")
print(f"  residual E[V(q | both)]        = {seq.residual:.3f}")
print(f"  first control V[E(q | c1)]     = {seq.first_term:.3f}  <- all of it")
print(f"  second control nested term     = {seq.nested[0]:.3f}  <- nothing left")
print(f"  sum = {seq.residual + seq.first_term + sum(seq.nested):.3f} "
      f"= V(q) = {variance(ghz, Observable(SIGMA_Z, 0)):.3f}")
