"""Newton bound, nondegeneracy witness and numeric RLCT for f = (x+y)^2 + y^4.

The Newton polyhedron only sees the (x+y)^2 face, which vanishes on the
torus along x = -y, so the bound (1, 1) is not tight. Integrating exp(-N f)
numerically shows the true exponent, 3/4.
"""
import math

from rlctkit.algebra import Ideal, parse_polynomial
from rlctkit.nondegen import is_function_nondegenerate
from rlctkit.numeric import FUNCTION, Region, laplace_fit
from rlctkit.rlct import rlct_newton_bound

f = parse_polynomial("(x+y)^2 + y^4", ("x", "y"))

bound = rlct_newton_bound(Ideal((f,)))
print("Newton bound:", bound)

verdict = is_function_nondegenerate(f)
print("nondegeneracy:", verdict.status, "witness", verdict.witness)

fit, rows = laplace_fit(f, Region.box(2, -1, 1), FUNCTION)
print(f"{'N':>10} {'Z(N)':>14} {'stderr':>10}  N^(3/4) Z")
for N, z, err in rows:
    print(f"{N:10.0f} {z:14.6e} {err:10.1e}  {z * N ** 0.75:.5f}")
print(f"fitted lambda = {fit.lambda_hat:.4f}, theta = {fit.theta_hat}")
# with u = x + y the integral is close to int exp(-N u^2) du * int exp(-N y^4) dy,
# so N^(3/4) Z tends to Gamma(1/2) * Gamma(1/4) / 2
print("Gamma(1/2) * Gamma(1/4) / 2 =", math.gamma(0.5) * math.gamma(0.25) / 2)
