#!/usr/bin/env python3
"""Tour of the core solver: exact maximizers of sum_i ||A_i x||^2 on the unit sphere."""

import numpy as np

from gsvkit import brute_force_max, gsv_solve, gsv_solve_2col_equalnorm, objective_value

# --- a stack where the answer is obvious -----------------------------------
# A1 picks out the first coordinate, A2 doubles the second.  The Gram sum is
# diag(1, 4), so the best unit vector is e2 with objective 4.
stack = [np.diag([1.0, 0.0]), np.diag([0.0, 2.0])]
sol = gsv_solve(stack)
print("diagonal stack")
print("  lambda_max        ", sol.lambda_max)
print("  maximizer         ", sol.basis[:, 0])
print("  objective at v    ", sol.objective_check)

# --- a random stack, checked against blind sampling ------------------------
rng = np.random.default_rng(0)
stack = [rng.normal(size=(6, 4)) for _ in range(3)]
sol = gsv_solve(stack)
lower = brute_force_max(stack, samples=10**6, seed=0)
print("\nrandom 3-matrix stack (6x4 each)")
print("  lambda_max        ", sol.lambda_max)
print("  sampled lower bound", lower)
print("  gap               ", sol.lambda_max - lower)

# every basis column attains the maximum
for j in range(sol.multiplicity):
    print(f"  objective at column {j}:", objective_value(stack, sol.basis[:, j]))

# --- the two-equal-norm-column closed form ----------------------------------
# For a single m x 2 matrix whose columns share their norm, the maximizer is
# known in closed form from the sign of the column dot product.
a = np.column_stack([rng.normal(size=8), rng.normal(size=8)])
a[:, 1] *= np.linalg.norm(a[:, 0]) / np.linalg.norm(a[:, 1])
closed = gsv_solve_2col_equalnorm(a)
eig = gsv_solve([a])
print("\nequal-norm two-column matrix")
print("  closed-form lambda", closed.lambda_max)
print("  eigen lambda      ", eig.lambda_max)
print("  closed-form vector", closed.basis[:, 0])
print("  eigen vector      ", eig.basis[:, 0])

# orthogonal columns: every unit vector is optimal
whole = gsv_solve_2col_equalnorm(np.eye(2))
print("\northogonal columns -> whole sphere optimal:", whole.whole_sphere)
