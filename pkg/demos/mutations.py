"""Walking the line-bundle basis on P4 through random mutations.

Every step keeps the Euler pairings integral and the collection
unitriangular up to reordering; adjacent left and right moves undo
each other exactly.
"""

import random

from qgamma.exceptional import (gram_matrix, left_mutation,
                                marked_beilinson_basis, right_mutation,
                                unitriangular_order)

basis = marked_beilinson_basis(5)
rng = random.Random(7)

cur = basis
for step in range(10):
    i = rng.randrange(1, 5)
    move = "R" if rng.random() < 0.5 else "L"
    cur = (right_mutation if move == "R" else left_mutation)(cur, i)
    print(f"step {step}: {move}{i} -> {list(cur.labels)}")

g = gram_matrix(cur)
print("\nGram matrix:")
for row in g["integers"]:
    print("  ", row)
print(f"max integer residual: {g['max_residual']}")
print(f"unitriangular order: {unitriangular_order(g['integers'])}")

back = left_mutation(right_mutation(basis, 2), 2)
print(f"\nL2 after R2 restores the start: {back.rows == basis.rows}")
