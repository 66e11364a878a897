from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rlctkit.algebra import (Ideal, MonomialOrder, Polynomial, PolynomialSyntaxError,
                             as_fraction, buchberger, ideal_from_json, is_unit_ideal,
                             normal_form, parse_ideal, parse_polynomial,
                             saturate_by_coordinates)
from strategies import polynomials

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text, names=XY):
    return parse_polynomial(text, names)


# -- parsing ----------------------------------------------------------------

def test_parse_examples():
    assert P("x^2*y + 3/2*z", XYZ).terms == {(2, 1, 0): 1, (0, 0, 1): Fraction(3, 2)}
    assert P("0", ("x",)).is_zero()
    assert P("(x+y)^2 + y^4").terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1, (0, 4): 1}


def test_parse_implicit_forms():
    assert P("2x y") == P("2*x*y")
    assert P("-(x - y)") == P("y - x")
    assert P("x^0") == Polynomial.constant(1, 2)
    assert P("0.25*x") == P("1/4*x")


@pytest.mark.parametrize("text, fragment", [
    ("x +* y", "position"),
    ("x^-1", "negative"),
    ("q", "unknown variable"),
    ("1/0*x", "zero"),
    ("x/2", "position"),
    ("(x", "position"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ValueError) as info:
        P(text)
    assert fragment in str(info.value)


def test_syntax_error_has_position():
    with pytest.raises(PolynomialSyntaxError) as info:
        P("x + + )")
    assert info.value.position >= 0


@given(polynomials(3))
def test_parse_print_roundtrip(f):
    assert parse_polynomial(f.to_string(XYZ), XYZ) == f


def test_as_fraction_float_uses_decimal_repr():
    assert as_fraction(0.1) == Fraction(1, 10)
    assert as_fraction("0.5129202328") == Fraction(5129202328, 10**10)
    with pytest.raises(ValueError):
        as_fraction(float("nan"))


# -- ring laws --------------------------------------------------------------

@given(polynomials(2), polynomials(2), polynomials(2))
def test_ring_laws(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(polynomials(2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_evaluate_matches_float(f, pt):
    from oracles import poly_eval
    assert float(f.evaluate(pt)) == pytest.approx(poly_eval(f, pt), abs=1e-9)


@given(polynomials(2), st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_translate_is_substitution(f, c, pt):
    g = f.translate(c)
    assert g.evaluate(pt) == f.evaluate([a + b for a, b in zip(pt, c)])
    assert g.degree() == f.degree() or f.is_zero()


def test_translate_examples():
    x = P("x", ("x",))
    assert (x ** 2).translate([1]) == P("x^2 + 2*x + 1", ("x",))
    assert x.translate([0]) == x
    with pytest.raises(ValueError):
        x.translate([1, 2])


def test_derivative_and_numpy_evaluator():
    import numpy as np
    f = P("x^3*y - 2*y^2 + 5")
    assert f.derivative(0) == P("3*x^2*y")
    assert f.derivative(1) == P("x^3 - 4*y")
    W = np.array([[1.5, -2.0], [0.0, 3.0]])
    assert np.allclose(f.numpy_evaluator()(W), [1.5 ** 3 * -2 - 8 + 5, -18 + 5])


# -- Groebner bases -----------------------------------------------------------

def test_buchberger_examples():
    x, y = P("x"), P("y")
    assert set(buchberger(Ideal((x, y))).generators) == {x, y}
    assert set(buchberger(Ideal((P("x+y"), P("x-y")))).generators) == {x, y}


def test_buchberger_lex_example():
    I = parse_ideal(["x^2", "x*y", "y^2 - x"], XY)
    lex = MonomialOrder("lex", permutation=(1, 0))  # y > x
    gb = buchberger(I, lex)
    assert P("x^2") in gb.generators
    for g in I.generators:
        assert normal_form(g, gb, lex).is_zero()
    ref = sympy.groebner(["x**2", "x*y", "y**2 - x"], sympy.Symbol("y"), sympy.Symbol("x"), order="lex")
    ours = {sympy.expand(sympy.sympify(g.to_string(XY).replace("^", "**"))) for g in gb.generators}
    assert ours == {sympy.expand(e) for e in ref.exprs}


@settings(max_examples=40)
@given(st.lists(polynomials(3, max_terms=3, max_deg=2), min_size=1, max_size=3))
def test_buchberger_matches_sympy(gens):
    if all(g.is_zero() for g in gens):
        return
    gb = buchberger(Ideal(tuple(gens)))
    syms = sympy.symbols("x y z")
    exprs = [sympy.sympify(g.to_string(XYZ).replace("^", "**")) for g in gens if not g.is_zero()]
    ref = sympy.groebner(exprs, *syms, order="grevlex", domain="QQ")

    def monic(e):
        return sympy.Poly(e, *syms, domain="QQ").monic().as_expr()

    ours = {monic(sympy.sympify(g.to_string(XYZ).replace("^", "**"))) for g in gb.generators}
    assert ours == {monic(e) for e in ref.exprs}


@settings(max_examples=30)
@given(st.lists(polynomials(2, max_terms=3, max_deg=2), min_size=1, max_size=3),
       st.randoms(use_true_random=False))
def test_buchberger_order_unique(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(Ideal(tuple(gens))).generators == buchberger(Ideal(tuple(shuffled))).generators


@settings(max_examples=30)
@given(st.lists(polynomials(2, max_terms=3, max_deg=2), min_size=2, max_size=3),
       st.lists(polynomials(2, max_terms=2, max_deg=2), min_size=3, max_size=3))
def test_ideal_membership(gens, mults):
    if all(g.is_zero() for g in gens):
        return
    gb = buchberger(Ideal(tuple(gens)))
    h = sum((m * g for m, g in zip(mults, gens)), Polynomial.zero(2))
    assert normal_form(h, gb).is_zero()


def test_unit_ideal():
    assert is_unit_ideal(Ideal((Polynomial.constant(1, 1),)))
    assert not is_unit_ideal(Ideal((P("x", ("x",)),)))
    assert is_unit_ideal(parse_ideal(["x+1", "x-1"], ("x",)))


def test_saturation_examples():
    assert is_unit_ideal(saturate_by_coordinates(parse_ideal(["x*y"], XY)))
    sat = saturate_by_coordinates(parse_ideal(["x+y"], XY))
    assert sat.generators == (P("x+y"),)
    # x is invertible on the torus, so <x^2, xy> saturates to the unit ideal
    assert is_unit_ideal(saturate_by_coordinates(parse_ideal(["x^2", "x*y"], XY)))
    sat = saturate_by_coordinates(parse_ideal(["x^2*y - x*y^2", "x^3"], XY))
    assert is_unit_ideal(sat)
    sat = saturate_by_coordinates(parse_ideal(["x*(x+y)", "y*(x+y)^2"], XY))
    assert sat.generators == (P("x+y"),)


def test_ideal_json_roundtrip():
    I = parse_ideal(["x^2 - 1/3*y", "x*y"], XY)
    J = ideal_from_json(I.dumps())
    assert J.generators == I.generators and J.variables == XY


def test_ideal_guards():
    with pytest.raises(ValueError):
        Ideal(())
    with pytest.raises(ValueError):
        Ideal((P("x"), Polynomial.zero(3)))
    assert Ideal((Polynomial.zero(2),)).is_zero()
