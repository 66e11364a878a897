"""Real log canonical thresholds of polynomial ideals via Newton polyhedra.

Submodules: ``algebra`` (exact polynomials, ideals, Groebner bases),
``polyhedra`` (Newton polyhedra and tau-distances), ``rlct`` (RLCT pairs and
rules), ``nondegen`` (nondegeneracy tests), ``asympt`` (Laplace asymptotics of
monomial integrals), ``numeric`` (quadrature and fits), ``models`` (discrete
statistical models and the 3x3 mixture study) and ``cli``.
"""

from .algebra import Ideal, MonomialOrder, Polynomial, buchberger, parse_ideal, parse_polynomial
from .polyhedra import NewtonPolyhedron, compact_faces, newton_polyhedron, tau_distance
from .rlct import (RlctPair, rlct_monomial, rlct_newton_bound, rlct_prod_disjoint,
                   rlct_region_orthant_chain, rlct_sum_disjoint)
from .nondegen import is_function_nondegenerate, is_sos_nondegenerate
from .asympt import laplace_coeffs, zeta_monomial_box

__version__ = "0.1.0"
