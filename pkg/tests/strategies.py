from fractions import Fraction

from hypothesis import strategies as st

from rlctkit.algebra import Polynomial

fractions = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))


def exponents(d, max_deg=3):
    return st.tuples(*[st.integers(0, max_deg)] * d)


def polynomials(d, max_terms=4, max_deg=3):
    return st.dictionaries(exponents(d, max_deg), fractions, max_size=max_terms).map(
        lambda t: Polynomial(d, t))


def monomial_exponents(d, max_deg=3):
    return exponents(d, max_deg).filter(any)
