from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geninv.errors import DomainError, NumericError
from geninv.exact import (GaussianRational, exact_bt, exact_core, exact_core_ep,
                          exact_drazin, exact_group, exact_index,
                          exact_pair_index, exact_pinv, exact_power, exact_qbt,
                          exact_rank, exact_weighted_qbt, float_of,
                          full_rank_factorization, reye, rmatrix,
                          rmatrix_from_complex, rzeros, requal, conj_t, _matmul)
from geninv.reference import (INDICES_4X3, INDICES_5X4, pair_4x3_exact,
                              pair_5x4_exact)

from conftest import rel


def g(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def from_ints(rows):
    return rmatrix([[g(x) for x in row] for row in rows])


class TestGaussianRational:
    def test_arithmetic(self):
        a = g(Fraction(1, 2), Fraction(1, 3))
        b = g(2, -1)
        assert a + b == g(Fraction(5, 2), Fraction(-2, 3))
        assert a - b == g(Fraction(-3, 2), Fraction(4, 3))
        assert a * b == g(Fraction(4, 3), Fraction(1, 6))

    def test_division_and_inverse(self):
        a = g(3, 4)
        one = g(1)
        inv = one / a
        assert a * inv == one
        with pytest.raises((ZeroDivisionError, DomainError)):
            one / g(0)

    def test_conjugate_and_modulus(self):
        a = g(3, -4)
        c = a.conjugate()
        assert c == g(3, 4)
        assert a * c == g(25)

    def test_to_complex(self):
        assert g(Fraction(1, 2), Fraction(-1, 4)).to_complex() == 0.5 - 0.25j

    @pytest.mark.parametrize("value,text", [
        (g(Fraction(3, 5)), "3/5"),
        (g(0, 1), "1i"),
        (g(0, -1), "-1i"),
        (g(Fraction(1, 2), Fraction(1, 3)), "1/2+1/3i"),
        (g(2, -3), "2-3i"),
        (g(0), "0"),
    ])
    def test_str(self, value, text):
        assert str(value) == text


class TestExactLinearAlgebra:
    def test_rank_and_factorization(self):
        a = from_ints([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert exact_rank(a) == 2
        f, gmat = full_rank_factorization(a)
        assert f.shape == (3, 2) and gmat.shape == (2, 3)
        assert requal(_matmul(f, gmat), a)

    def test_pinv_penrose_exactly(self):
        a = from_ints([[1, 1, 0], [0, 1, 1]])
        x = exact_pinv(a)
        assert requal(_matmul(_matmul(a, x), a), a)
        assert requal(_matmul(_matmul(x, a), x), x)
        ax = _matmul(a, x)
        xa = _matmul(x, a)
        assert requal(conj_t(ax), ax)
        assert requal(conj_t(xa), xa)

    def test_pinv_matches_float(self):
        a = from_ints([[2, 0, 1], [0, 3, 0], [0, 0, 0]])
        assert rel(float_of(exact_pinv(a)), np.linalg.pinv(float_of(a))) < 1e-14

    def test_power_and_index(self):
        jordan = from_ints([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
        assert exact_index(jordan) == 3
        assert requal(exact_power(jordan, 3), rzeros(3, 3))
        assert requal(exact_power(jordan, 0), reye(3))

    def test_dimension_guard(self):
        with pytest.raises(DomainError):
            exact_pinv(rzeros(33, 33))

    def test_float_of_overflow(self):
        giant = rmatrix([[g(Fraction(10) ** 400)]])
        with pytest.raises(NumericError):
            float_of(giant)

    def test_rmatrix_from_complex_roundtrip(self):
        a = np.array([[1 + 2j, -5], [3j, 0]], dtype=np.complex128)
        b = rmatrix_from_complex(a)
        assert np.array_equal(float_of(b), a)

    def test_rmatrix_from_complex_rejects_non_integer_floats(self):
        with pytest.raises(DomainError):
            rmatrix_from_complex(np.array([[0.5]], dtype=np.complex128))


class TestExactInverses:
    def test_qbt_reductions(self):
        a = from_ints([[1, 1, 0], [0, 0, 1], [0, 0, 0]])
        k = exact_index(a)
        assert requal(exact_qbt(a, 0), exact_pinv(a))
        assert requal(exact_qbt(a, 1), exact_bt(a))
        assert requal(exact_qbt(a, k), exact_core_ep(a))
        assert requal(exact_qbt(a, k + 2), exact_core_ep(a))

    def test_drazin_equations(self):
        a = from_ints([[2, 0, 1], [0, 0, 1], [0, 0, 0]])
        k = exact_index(a)
        x = exact_drazin(a)
        assert requal(_matmul(_matmul(x, a), x), x)
        assert requal(_matmul(a, x), _matmul(x, a))
        assert requal(_matmul(x, exact_power(a, k + 1)), exact_power(a, k))

    def test_group_requires_low_index(self):
        nil = from_ints([[0, 1], [0, 0]])
        with pytest.raises(DomainError):
            exact_group(nil)

    def test_core_of_projector_is_itself(self):
        p = from_ints([[1, 0], [0, 0]])
        assert requal(exact_core(p), p)

    def test_pair_indices_of_reference_pairs(self):
        assert exact_pair_index(*pair_4x3_exact()) == INDICES_4X3
        assert exact_pair_index(*pair_5x4_exact()) == INDICES_5X4

    def test_weighted_qbt_matches_float_path(self):
        a, w = pair_4x3_exact()
        from geninv.weighted import WeightedPair, weighted_qbt
        af = float_of(a)
        wf = float_of(w)
        p = WeightedPair.from_matrices(af, wf)
        for q in range(4):
            assert rel(float_of(exact_weighted_qbt(a, w, q)), weighted_qbt(p, q)) < 1e-12


@st.composite
def exact_matrix_strategy(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=4))
    num = st.integers(min_value=-4, max_value=4)
    den = st.integers(min_value=1, max_value=3)
    entry = st.builds(lambda a, b, c, d: GaussianRational(Fraction(a, b), Fraction(c, d)),
                      num, den, num, den)
    rows = draw(st.lists(st.lists(entry, min_size=n, max_size=n),
                         min_size=m, max_size=m))
    return rmatrix(rows)


@given(exact_matrix_strategy())
@settings(max_examples=30, deadline=None)
def test_exact_pinv_penrose_property(a):
    x = exact_pinv(a)
    ax = _matmul(a, x)
    xa = _matmul(x, a)
    assert requal(_matmul(ax, a), a)
    assert requal(_matmul(xa, x), x)
    assert requal(conj_t(ax), ax)
    assert requal(conj_t(xa), xa)
