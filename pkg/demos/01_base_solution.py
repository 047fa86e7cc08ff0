"""Walk through the r = 1, 2, 4 base solution and the sextic phi."""

from tep7 import fixtures, pipeline
from tep7.poly import univariate_coeffs

xs, ys = pipeline.base_solution()
print("x1 =", xs[0])
print("y1 =", ys[0])

# r = 1, 2, 4 hold identically
for r in (1, 2, 4):
    print(f"r = {r}:", pipeline.power_sum_difference(r))

# r = 6 does not; its residual factors as 12 * (...)
r6 = pipeline.residual_r6()
print("r = 6 residual has", len(r6.terms), "terms")
print("equals stored product:", r6 == fixtures.product(fixtures.R6_FACTORS, 12))

# the last factor is Q m^2 - P n^2, so m/n = y/Q with y^2 = Q P = phi
print("Q   =", pipeline.quadratic_q())
print("m   =", pipeline.solve_m())
phi = pipeline.phi()
print("phi, collected in a2:")
for k, c in reversed(list(enumerate(univariate_coeffs(phi, "a2")))):
    print(f"  a2^{k}:", c)
