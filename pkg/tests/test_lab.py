import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from bnquot import lab
from bnquot.lab import (HomForm, InvalidKernelError, KernelMatrix, SamplingError, SplittingType,
                        base_point_free, euler_check, h0_twist, is_valid_kernel,
                        kernel_of_surjection, poly_gcd, sample, sample_quotient, segre_p1,
                        splitting_type, stratum_dimension, survey, twisted_dual_sections)


def F(degree, *coeffs):
    return HomForm(degree, coeffs)


def mono(deg, k, c=1):
    return HomForm.monomial(deg, k, c)


def split_kernel(a: int, b: int, rng: random.Random | None = None) -> KernelMatrix:
    """Kernel of O^4 -> O(a) + O(b) built from two Koszul pairs, optionally disguised.

    ``(y^a, -x^a)`` is killed by ``(x^a, y^a)``, so the cokernel splits
    as O(a) + O(b) by construction.  A constant change of basis on O^4 and
    a shear between the columns leave the splitting type unchanged.
    """
    col0 = [mono(a, 0), -mono(a, a), HomForm.zero(a), HomForm.zero(a)]
    col1 = [HomForm.zero(b), HomForm.zero(b), mono(b, 0), -mono(b, b)]
    if rng is not None:
        while True:
            g = sp.Matrix(4, 4, lambda i, j: rng.randint(-3, 3))
            if g.det() != 0:
                break
        mix = lambda col: [sum((f * HomForm(0, (Fraction(int(g[i, j])),)) for j, f in enumerate(col)),
                               HomForm.zero(col[0].degree)) for i in range(4)]
        col0, col1 = mix(col0), mix(col1)
        if b >= a:
            shear = HomForm(b - a, tuple(Fraction(rng.randint(-2, 2)) for _ in range(b - a + 1)))
            col1 = [f1 + f0 * shear for f0, f1 in zip(col0, col1)]
    return KernelMatrix.from_columns([col0, col1])


# -- validity ------------------------------------------------------------------

def test_coordinate_kernel_is_valid():
    x, y = mono(1, 1), mono(1, 0)
    z = HomForm.zero(1)
    K = KernelMatrix(((x, z), (y, z), (z, x), (z, y)), (1, 1))
    assert is_valid_kernel(K)
    assert splitting_type(K) == SplittingType(1, 1)
    assert [h0_twist(K, m) for m in range(-3, 5)] == [0, 0, 2, 4, 6, 8, 10, 12]


def test_common_zero_invalid():
    x = mono(1, 1)
    cols = [[x, x * mono(0, 0, 2), x * mono(0, 0, 3), HomForm.zero(1)],
            [x * mono(0, 0, 5), HomForm.zero(1), x, x]]
    assert not is_valid_kernel(KernelMatrix.from_columns(cols))


def test_zero_matrix_invalid():
    z = HomForm.zero(1)
    assert not is_valid_kernel(KernelMatrix(((z, z),) * 4, (1, 1)))
    with pytest.raises(InvalidKernelError):
        twisted_dual_sections(KernelMatrix(((z, z),) * 4, (1, 1)), 0)


def test_shape_validation():
    with pytest.raises(InvalidKernelError):
        KernelMatrix(((mono(1, 0), mono(1, 0)),) * 3, (1, 1))
    with pytest.raises(InvalidKernelError):
        KernelMatrix(((mono(1, 0), mono(2, 0)),) * 4, (1, 1))
    with pytest.raises(ValueError):
        HomForm(2, (1, 2))
    with pytest.raises(ValueError):
        SplittingType(3, 1)


def test_poly_gcd_and_base_points():
    x1 = [Fraction(-1), Fraction(1)]            # x - 1
    assert poly_gcd([[Fraction(1), Fraction(-2), Fraction(1)], x1]) == x1
    assert poly_gcd([[]]) == []
    # x and y have no common zero; x and x*y share [0:1]; y and x*y share [1:0]
    assert base_point_free([mono(1, 1), mono(1, 0)])
    assert not base_point_free([mono(1, 1), mono(2, 1)])
    assert not base_point_free([mono(1, 0), mono(2, 1)])


@given(st.lists(st.lists(st.integers(-4, 4), min_size=1, max_size=5), min_size=1, max_size=3))
def test_poly_gcd_matches_sympy(polys):
    t = sp.Symbol("t")
    ours = poly_gcd([[Fraction(c) for c in p] for p in polys])
    exprs = [sum(c * t ** k for k, c in enumerate(p)) for p in polys]
    g = sp.Integer(0)
    for e in exprs:
        g = sp.gcd(g, e)
    if g == 0:
        assert ours == []
    else:
        lead = sp.Poly(g, t).LC()
        monic = sp.Poly(sp.expand(g / lead), t).all_coeffs()[::-1]
        assert [sp.Rational(c.numerator, c.denominator) for c in ours] == monic


def test_homform_rendering_and_arithmetic():
    f = F(2, 1, -3, Fraction(1, 2))
    assert str(f) == "1/2*x^2 - 3*x*y + y^2"
    assert str(HomForm.zero(3)) == "0"
    assert str(F(0, -2)) == "-2"
    assert (f * F(1, 0, 1)).coeffs == (0, 1, -3, Fraction(1, 2))
    assert (f - f).is_zero()
    with pytest.raises(ValueError):
        f + F(1, 1, 1)
    assert f.to_json() == ["1", "-3", "1/2"]


# -- sections and splitting ----------------------------------------------------

def test_constant_kernel():
    K = split_kernel(0, 0)
    assert twisted_dual_sections(K, 0) == 2
    assert splitting_type(K) == SplittingType(0, 0)
    assert segre_p1(K) == 0


def test_generic_degree_two_sections():
    K = sample(2, seed=11)
    assert twisted_dual_sections(K, 0) == 0
    assert twisted_dual_sections(K, 1) == 2
    assert twisted_dual_sections(K, -1) == 0


@settings(max_examples=30)
@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 2 ** 32 - 1))
def test_disguised_split_kernels(a, b, seed):
    a, b = min(a, b), max(a, b)
    K = split_kernel(a, b, random.Random(seed))
    assert is_valid_kernel(K)
    assert splitting_type(K) == SplittingType(a, b)
    assert segre_p1(K) == a - b
    for m in range(-b - 3, 4):
        assert h0_twist(K, m) == max(0, a + m + 1) + max(0, b + m + 1)
    for k in range(0, b + 3):
        # E^dual(k) = O(k-a) + O(k-b)
        assert twisted_dual_sections(K, k) == max(0, k - a + 1) + max(0, k - b + 1)
    assert euler_check(K)


@settings(max_examples=20)
@given(st.integers(0, 8), st.integers(0, 2 ** 32 - 1))
def test_sections_monotone_and_eventually_linear(d, seed):
    K = sample(d, seed)
    counts = [twisted_dual_sections(K, k) for k in range(d + 3)]
    assert counts == sorted(counts)
    assert counts[-1] - counts[-2] == 2


@settings(max_examples=20)
@given(st.integers(0, 8), st.integers(0, 2 ** 32 - 1))
def test_sampled_types_are_ordered_with_matching_parity(d, seed):
    K = sample(d, seed)
    st_ = splitting_type(K)
    assert st_.a <= st_.b and st_.d == d
    assert (segre_p1(K) - d) % 2 == 0 and segre_p1(K) <= 0


# -- kernel of a surjection ----------------------------------------------------

def test_kernel_of_coordinate_projection():
    one, zero = HomForm(0, (1,)), HomForm.zero(0)
    M = [[one, zero, zero, zero], [zero, one, zero, zero]]
    K = kernel_of_surjection(M, (0, 0))
    assert K.col_degrees == (0, 0)
    assert {tuple(int(r[j].coeffs[0]) for r in K.entries) for j in range(2)} == {(0, 0, 1, 0), (0, 0, 0, 1)}


@pytest.mark.parametrize("d,a", [(3, 1), (3, 0), (6, 2), (8, 4)])
def test_round_trip(d, a):
    M = sample_quotient(d, a, seed=d * 10 + a)
    K = kernel_of_surjection(M, (a, d - a))
    assert splitting_type(K) == SplittingType(a, d - a)
    for row in M:
        for j in range(2):
            total = sum((row[i] * K.entries[i][j] for i in range(4)),
                        HomForm.zero(row[0].degree + K.col_degrees[j]))
            assert total.is_zero()


def test_non_surjective_rejected():
    x = mono(1, 1)
    z = HomForm.zero(1)
    with pytest.raises(InvalidKernelError):
        kernel_of_surjection([[x, z, z, z], [z, x, z, z]], (1, 1))
    with pytest.raises(ValueError):
        kernel_of_surjection([[x, z, z], [z, x, z]], (1, 1))


def test_euler_examples():
    K = sample(2, seed=3)
    assert h0_twist(K, 0) == 4 and euler_check(K)
    K = kernel_of_surjection(sample_quotient(3, 0, seed=1), (0, 3))
    assert h0_twist(K, 0) == 5 and euler_check(K)
    K = sample(5, seed=2)
    assert h0_twist(K, 7) == 5 + 14 + 2


# -- dimension counts ----------------------------------------------------------

def test_stratum_dimension_examples():
    r = stratum_dimension(3, 1)
    assert (r.formula, r.lab, r.agree) == (16, 16, True)
    r = stratum_dimension(4, 1)
    assert (r.formula, r.lab, r.agree) == (19, 19, True)
    r = stratum_dimension(2, 1)
    assert (r.formula, r.lab, r.agree) == (13, 12, False)
    with pytest.raises(ValueError):
        stratum_dimension(4, 3)


# -- sampling ------------------------------------------------------------------

def test_sampling_is_deterministic():
    assert sample(6, seed=42) == sample(6, seed=42)
    assert sample(6, seed=42) != sample(6, seed=43)
    assert survey(3, 10, seed=5) == survey(3, 10, seed=5)


def test_survey_examples():
    s4 = survey(4, 200, seed=7)
    assert s4.counts == {"(2,2)": 200}
    s5 = survey(5, 200, seed=7)
    assert s5.dominant == "(2,3)"
    assert survey(3, 50, seed=1).dominant == "(1,2)"


def test_survey_parallel_matches_serial():
    assert survey(4, 12, seed=9, jobs=3) == survey(4, 12, seed=9, jobs=1)


def test_sampling_exhaustion(monkeypatch):
    monkeypatch.setattr(lab, "is_valid_kernel", lambda K: False)
    with pytest.raises(SamplingError):
        sample(3, seed=0)


def test_sample_argument_errors():
    with pytest.raises(ValueError):
        sample(3, seed=0, bound=0)
    with pytest.raises(ValueError):
        sample(3, seed=0, col_degrees=(1, 1))
    with pytest.raises(ValueError):
        sample_quotient(3, 2, seed=0)


def test_special_column_degrees():
    K = sample(4, seed=1, col_degrees=(0, 4))
    assert K.col_degrees == (0, 4)
    assert splitting_type(K).d == 4
