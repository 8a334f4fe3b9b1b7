"""Tour of the Weyl-Heisenberg operator basis.

Builds the shift/clock pair for a qutrit, checks the commutation phase,
verifies Hilbert-Schmidt orthogonality through the Gram matrix, and round
trips a random operator through its coefficient table.

Run from the repository root:  python3 demos/01_weyl_basis.py
"""

import numpy as np

from weylkit import (
    clock_matrix,
    commutator_in_basis,
    decompose,
    frobenius_distance,
    gram_matrix,
    omega,
    reconstruct,
    shift_matrix,
    weyl_basis,
    weyl_element,
    WeylIndex,
)

np.set_printoptions(precision=3, suppress=True, linewidth=100)

d = 3
w = omega(d)
print(f"dimension d = {d}, primitive root omega = {w:.4f}")

# ---------------------------------------------------------------------------
# The generators: X shifts basis kets cyclically, Z multiplies |i> by omega**i.
X = shift_matrix(d, 1)
Z = clock_matrix(d, 1)
print("\nshift X_1:\n", X.real)
print("clock Z_1:\n", Z)

# They commute only up to a phase: Z X = omega * X Z.
print("\n||Z X - omega * X Z|| =", frobenius_distance(Z @ X, w * (X @ Z)))

# ---------------------------------------------------------------------------
# The full basis: d**2 unitaries X_l Z_k, pairwise orthogonal under
# <A, B> = tr(A^dagger B), each with squared norm d.
basis = weyl_basis(d)
gram = gram_matrix(basis)
print(f"\nGram matrix is {gram.shape[0]} x {gram.shape[1]};",
      "distance from d*I:", frobenius_distance(gram, d * np.eye(d * d)))

# ---------------------------------------------------------------------------
# Decompose an arbitrary operator and put it back together.
rng = np.random.default_rng(7)
a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
xi = decompose(a)
print("\ncoefficient table of a random operator:\n", xi)
print("reconstruction error:", frobenius_distance(reconstruct(xi), a))

# Rank-one operators have a closed-form table: a single populated row with
# a phase ramp along it.
e21 = np.zeros((d, d))
e21[2, 1] = 1.0
print("\ncoefficients of |2><1|:\n", decompose(e21))

# ---------------------------------------------------------------------------
# The basis closes under commutators, so it carries a d**2-dimensional Lie
# algebra: every bracket decomposes exactly back into the basis.
x = WeylIndex(1, 0, d)
y = WeylIndex(0, 1, d)
table = commutator_in_basis(x, y)
comm = x.matrix() @ y.matrix() - y.matrix() @ x.matrix()
print("\n[X_1, Z_1] coefficient table:\n", table)
print("closure residual:", frobenius_distance(reconstruct(table), comm))

# For a qubit the bracket collapses to the familiar [X, Z] = 2 XZ.
qubit_table = commutator_in_basis(WeylIndex(1, 0, 2), WeylIndex(0, 1, 2))
print("\nqubit [X, Z] table (exactly 2 at position (1,1)):\n", qubit_table.real)
print("\nX_1 Z_1 for the qubit:\n", weyl_element(2, 1, 1).real)
