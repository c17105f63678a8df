from fractions import Fraction

from hypothesis import strategies as st

from projdyn.core import HomogeneousForm, PolynomialMap, monomials


def form_from(n, terms):
    """Quadratic form on P^n from {(j, k): coeff} with variable-index pairs."""
    out = []
    for (j, k), c in terms.items():
        e = [0] * (n + 1)
        e[j] += 1
        e[k] += 1
        out.append((tuple(e), Fraction(c)))
    return HomogeneousForm.from_terms(n, 2, out)


def sec1_map():
    return PolynomialMap.from_forms([form_from(1, {(0, 0): "-3/2", (0, 1): "5/2", (1, 1): 1})])


small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)
nonzero_rationals = small_rationals.filter(lambda q: q != 0)


@st.composite
def quadratic_forms(draw, n):
    coeffs = draw(st.lists(small_rationals, min_size=len(monomials(n + 1, 2)),
                           max_size=len(monomials(n + 1, 2))))
    return HomogeneousForm.from_terms(n, 2, list(zip(monomials(n + 1, 2), coeffs)))


@st.composite
def polynomial_maps(draw, n):
    return PolynomialMap.from_forms([draw(quadratic_forms(n)) for _ in range(n)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
