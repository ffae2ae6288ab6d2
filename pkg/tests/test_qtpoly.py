import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qtcatalan.discrete import BudgetExceededError, catalan_number_m
from qtcatalan.qtpoly import (
    QtPolynomial,
    qt_catalan_area_bounce,
    qt_catalan_dinv_area,
    specialize_q1,
    to_normalized_measure,
    transpose,
)

polys = st.dictionaries(
    st.tuples(st.integers(0, 8), st.integers(0, 8)),
    st.integers(1, 10**12),
    max_size=12,
).map(QtPolynomial)


class TestPolynomialBasics:
    def test_zero_pruning(self):
        p = QtPolynomial({(0, 0): 1, (1, 2): 0})
        assert p.coeffs == {(0, 0): 1}

    def test_equality_is_structural(self):
        assert QtPolynomial({(1, 0): 1, (0, 1): 1}) == QtPolynomial({(0, 1): 1, (1, 0): 1})

    def test_transpose_swaps_exponents(self):
        assert transpose(QtPolynomial({(2, 1): 1})) == QtPolynomial({(1, 2): 1})

    @given(polys)
    def test_transpose_involution(self, p):
        assert transpose(transpose(p)) == p

    def test_canonical_order_t_major(self):
        p = QtPolynomial({(0, 1): 2, (1, 0): 3, (0, 0): 1})
        assert p.canonical_terms() == [(0, 0, 1), (1, 0, 3), (0, 1, 2)]

    def test_json_round_trip(self):
        p = qt_catalan_dinv_area(4, 2)
        data = json.loads(p.to_json(4, 2))
        assert data["n"] == 4 and data["m"] == 2
        assert QtPolynomial.from_json_dict(data) == p

    def test_csv(self):
        csv = qt_catalan_dinv_area(2, 1).to_csv()
        assert csv == "q,t,coeff\n1,0,1\n0,1,1\n"


class TestCatalanPolynomials:
    def test_n2_m1(self):
        assert qt_catalan_dinv_area(2, 1) == QtPolynomial({(1, 0): 1, (0, 1): 1})
        assert qt_catalan_area_bounce(2, 1) == QtPolynomial({(1, 0): 1, (0, 1): 1})

    def test_height_one(self):
        assert qt_catalan_dinv_area(1, 5) == QtPolynomial({(0, 0): 1})
        assert qt_catalan_area_bounce(1, 1) == QtPolynomial({(0, 0): 1})

    def test_value_at_one_one(self):
        assert qt_catalan_dinv_area(4, 1).evaluate(1, 1) == 14

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 1), (3, 3), (4, 2), (5, 1)])
    def test_definitions_agree(self, n, m):
        assert qt_catalan_dinv_area(n, m) == qt_catalan_area_bounce(n, m)

    @pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (4, 2), (5, 1)])
    def test_symmetry(self, n, m):
        p = qt_catalan_dinv_area(n, m)
        assert transpose(p) == p

    @pytest.mark.parametrize("n,m", [(3, 2), (4, 1), (4, 3)])
    def test_max_degrees_are_staircase(self, n, m):
        p = qt_catalan_dinv_area(n, m)
        top = m * n * (n - 1) // 2
        assert p.max_degrees() == (top, top)

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            qt_catalan_dinv_area(6, 3, budget=100)


class TestSpecialization:
    def test_simple(self):
        assert specialize_q1(QtPolynomial({(1, 0): 1, (0, 1): 1})) == [1, 1]

    @pytest.mark.parametrize("n,m", [(3, 2), (4, 1), (5, 3)])
    def test_univariate_distributions_coincide(self, n, m):
        da = qt_catalan_dinv_area(n, m)
        ab = qt_catalan_area_bounce(n, m)
        dinv_marginal = specialize_q1(transpose(da))
        area_marginal = specialize_q1(da)
        bounce_marginal = specialize_q1(ab)
        area_marginal_2 = specialize_q1(transpose(ab))
        assert dinv_marginal == area_marginal == bounce_marginal
        assert area_marginal == area_marginal_2
        assert sum(area_marginal) == catalan_number_m(n, m)


class TestNormalizedMeasure:
    def test_n2_m1_atoms(self):
        mu = to_normalized_measure(qt_catalan_dinv_area(2, 1), 2, 1)
        assert set(mu.atoms) == {
            ((Fraction(1), Fraction(0)), Fraction(1)),
            ((Fraction(0), Fraction(1)), Fraction(1)),
        }

    def test_total_weight_large_m(self):
        mu = to_normalized_measure(qt_catalan_dinv_area(4, 50), 4, 50)
        assert mu.total_weight() == Fraction(catalan_number_m(4, 50), 50**3)

    def test_height_one(self):
        mu = to_normalized_measure(qt_catalan_dinv_area(1, 9), 1, 9)
        assert mu.atoms == (((Fraction(0), Fraction(0)), Fraction(1)),)

    def test_consolidation(self):
        from qtcatalan.qtpoly import DiscreteMeasure

        raw = DiscreteMeasure(
            (
                ((Fraction(0), Fraction(0)), Fraction(1, 2)),
                ((Fraction(0), Fraction(0)), Fraction(1, 2)),
                ((Fraction(1), Fraction(0)), Fraction(2)),
            )
        )
        merged = raw.consolidated()
        assert merged.atoms == (
            ((Fraction(0), Fraction(0)), Fraction(1)),
            ((Fraction(1), Fraction(0)), Fraction(2)),
        )
        assert merged.total_weight() == raw.total_weight() == 3
