"""
Negative-degree base space for g = 2
====================================

The first-order family gives five quadrics in t, s_1..s_5.  They cut out a
complete intersection of degree 32; over a small prime it splits into 32
smooth points.
"""

from hypercone.curve import HyperellipticCurve
from hypercone.versal import (
    base_space_equations, check_solution, ci_hilbert_series, find_split_prime,
    first_order_family, hilbert_function_check, verify_first_order,
)

family = first_order_family(HyperellipticCurve.special(2), 6)
print("first-order identity holds:", verify_first_order(family)["passed"])

system = base_space_equations(family)
for eq in system.equations:
    print("  ", eq)

print("Hilbert function:", hilbert_function_check(system, 6))
print("complete intersection:", ci_hilbert_series(5, 6))

# the line s_i = 1, t = -4 lies on the base
print("(-4, 1, 1, 1, 1, 1) is a solution:", check_solution(system, (-4, 1, 1, 1, 1, 1)))

found = find_split_prime(system, 32, 100)
print(f"p = {found['prime']}: {found['num_points']} points, {found['smooth']} smooth")
