"""The quantum period of the line, three ways.

Geometric route: regularized coefficients of the cohomological series.
Mirror route: constant terms of powers of x + 1/x.
Analytic route: the unit component at t sums to I_0(2t).
"""

from fractions import Fraction
from math import factorial

import mpmath

from qgamma.jfun import evaluate_j, j_projective, quantum_period
from qgamma.laurent import LaurentPolynomial, PowerCache

J = j_projective(2, 60)
G = quantum_period(J)

mirror = PowerCache(LaurentPolynomial(1, {(1,): Fraction(1),
                                          (-1,): Fraction(1)}))

print("degree  geometric      mirror")
for n in range(6):
    d = 2 * n
    print(f"{d:6d}  {str(G.coefficient(d)):13s} "
          f"{str(mirror.constant_term(d) / factorial(d))}")

mpmath.mp.dps = 30
t = mpmath.mpf(1)
val = evaluate_j(J, t)["value"].h0()
print(f"\nsum at t=1: {mpmath.nstr(val, 20)}")
print(f"I_0(2):     {mpmath.nstr(mpmath.besseli(0, 2 * t), 20)}")
