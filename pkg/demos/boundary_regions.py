"""How the RLCT of x*y^2 depends on where you integrate.

Over a neighbourhood of the origin (or the whole positive orthant) the
monomial x*y^2 has RLCT (1/2, 1), set by the y^2 factor. Restricting to the
wedge 0 <= x <= y raises it to 2/3: after x = s*t, y = t the integrand
becomes s*t^3 with Jacobian t, so the exponents (1, 3) and amplitude (0, 1)
give min(1/1, 2/3). The other wedge keeps 1/2.
"""
from fractions import Fraction

import numpy as np

from rlctkit.algebra import parse_ideal, parse_polynomial
from rlctkit.numeric import FUNCTION, Region, fit_lambda_theta, laplace_value, numeric_zeta
from rlctkit.rlct import (blowup_charts, chain_map, pullback_monomial_map, rlct_monomial,
                          rlct_monomial_ideal_via_charts, rlct_region_orthant_chain)

XY = ("x", "y")
print("orthant      :", rlct_monomial((1, 2)))
print("0 <= x <= y  :", rlct_region_orthant_chain((1, 2), (0, 1)))
print("0 <= y <= x  :", rlct_region_orthant_chain((1, 2), (1, 0)))

I = parse_ideal(["x*y^2"], XY)
for chain in [(0, 1), (1, 0)]:
    J, tau = pullback_monomial_map(I, chain_map(2, chain))
    print(f"chain {chain}: pulled back to {J.generators[0]} with amplitude exponents {tau}")

# the blow-up of the origin, chart by chart, gives back the orthant value
print("via blow-up charts:", rlct_monomial_ideal_via_charts(I, blowup_charts(2)))

# numeric check: Z(N) over each wedge. On 0 <= y <= x the next pole (2/3)
# is close to the leading one (1/2), so over N <= 1e6 the slope fit blends
# the two and is visibly biased; the other wedge has a clean gap.
f = parse_polynomial("x*y^2", XY)
grid = np.geomspace(1e2, 1e6, 10)
for chain, want in [((0, 1), Fraction(2, 3)), ((1, 0), Fraction(1, 2))]:
    region = Region.chain_region(2, chain)
    rows = [(N, laplace_value(f, region, N, FUNCTION).value) for N in grid]
    fit = fit_lambda_theta(rows)
    print(f"wedge {chain}: fitted lambda {fit.lambda_hat:.4f}, theta {fit.theta_hat} (exact {want})")

# zeta(z) = int (x y^2)^(-z) over the wedge 0 <= x <= y, at z = -1 this is 1/10
print("zeta(-1) over 0 <= x <= y:", numeric_zeta(f, Region.chain_region(2, (0, 1)), -1.0, FUNCTION).value)
