import math

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from cdtube import (
    ComplexValue,
    ConvergenceError,
    DegenerateParameterError,
    DomainError,
    appell_f1,
    arccosh,
    gauss_2f1,
    gauss_2f1_continued,
)
from cdtube._kernels import gauss_series

mpmath.mp.dps = 30


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def naive_appell_double_sum(a, b1, b2, c, x, y, max_index=250):
    """Brute-force double series, summed to machine-precision stagnation.

    Deliberately structured as a plain double loop over (m, n) so that it
    shares nothing with the implementation's single-index expansion.
    """
    total = 0.0
    outer = 1.0  # (a)_m (b1)_m / ((c)_m m!) x^m
    for m in range(max_index):
        inner = outer  # full coefficient of x^m y^n, starting at n = 0
        row = 0.0
        for n in range(max_index):
            row += inner
            inner *= (a + m + n) * (b2 + n) / ((c + m + n) * (n + 1.0)) * y
            if abs(inner) <= 1e-17 * max(abs(row), 1e-300):
                break
        total += row
        outer *= (a + m) * (b1 + m) / ((c + m) * (m + 1.0)) * x
        if abs(outer) <= 1e-17 * max(abs(total), 1e-300):
            break
    return total


def horner_terminating_2f1(a_int, b, c, z):
    """Terminating series evaluated as an explicit Horner polynomial."""
    degree = -int(round(a_int))
    coeffs = [1.0]
    for k in range(degree):
        coeffs.append(
            coeffs[-1] * (a_int + k) * (b + k) / ((c + k) * (k + 1.0))
        )
    acc = 0.0
    for coef in reversed(coeffs):
        acc = acc * z + coef
    return acc


# ---------------------------------------------------------------------------
# gauss_2f1 on the real axis, z < 1
# ---------------------------------------------------------------------------

def test_empty_series_is_one():
    assert gauss_2f1(3.7, -2.2, 0.4, 0.0) == 1.0


def test_log_identity():
    # 2F1(1,1;2;z) = -ln(1-z)/z
    assert gauss_2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(
        2.0 * math.log(2.0), rel=1e-13
    )


def test_arctan_identity():
    # 2F1(1/2,1;3/2;-z^2) = arctan(z)/z at z = 1
    assert gauss_2f1(0.5, 1.0, 1.5, -1.0) == pytest.approx(
        math.pi / 4.0, rel=1e-13
    )


def test_gauss_summation_limit():
    # z -> 1- limit against Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
    for a, b, c in [(0.3, 0.4, 1.45), (0.2, 0.6, 2.3)]:
        expected = (math.gamma(c) * math.gamma(c - a - b)
                    / (math.gamma(c - a) * math.gamma(c - b)))
        got = gauss_2f1(a, b, c, 1.0 - 1e-12)
        assert got == pytest.approx(expected, rel=1e-8)


@given(
    a=st.floats(min_value=-4.0, max_value=4.0),
    b=st.floats(min_value=-4.0, max_value=4.0),
    c=st.floats(min_value=0.1, max_value=5.0),
    z=st.floats(min_value=-5.0, max_value=0.9),
)
def test_symmetry_in_upper_parameters(a, b, c, z):
    left = gauss_2f1(a, b, c, z)
    right = gauss_2f1(b, a, c, z)
    assert right == pytest.approx(left, rel=1e-13, abs=1e-290)


@given(
    a=st.floats(min_value=0.1, max_value=1.2),
    b=st.floats(min_value=0.1, max_value=1.2),
    c=st.floats(min_value=1.0, max_value=4.0),
    z=st.floats(min_value=-0.9, max_value=-0.01),
)
def test_pfaff_agrees_with_direct_series(a, b, c, z):
    # gauss_2f1 maps z < 0 through the Pfaff transformation; the raw
    # series still converges on (-0.9, 0) and is the independent route.
    # Parameters are kept in the regime where the alternating direct sum
    # is itself accurate to full precision (non-increasing terms).
    direct, _, ok = gauss_series(a, b, c, z)
    assert ok
    assert gauss_2f1(a, b, c, z) == pytest.approx(direct, rel=1e-12)


def test_terminating_series_matches_horner_exactly():
    a, b, c = -5.0, 2.3, 1.7
    for z in (0.3, -2.5):
        expected = horner_terminating_2f1(a, b, c, z)
        assert gauss_2f1(a, b, c, z) == pytest.approx(expected, rel=1e-14)
    # past the cut the polynomial stays real
    val = gauss_2f1_continued(a, b, c, 7.5)
    assert val.im == 0.0
    assert val.re == pytest.approx(
        horner_terminating_2f1(a, b, c, 7.5), rel=1e-14
    )


def test_terminating_survives_nonpositive_c():
    # series stops at k = 2 before (c)_k vanishes at k = 4
    assert gauss_2f1(-2.0, 1.0, -3.5, 0.5) == pytest.approx(
        horner_terminating_2f1(-2.0, 1.0, -3.5, 0.5), rel=1e-14
    )


def test_nearly_terminating_parameter_is_not_a_polynomial():
    # b = 2e-16 is inside the pole-detection window but must not take the
    # truncated-series shortcut: the tiny tail diverges for |z| > 1, while
    # the transformed route converges to ~1 + O(b).
    val = gauss_2f1(1.0, 2e-16, 1.0, -2.0)
    assert val == pytest.approx(1.0, abs=1e-12)
    assert gauss_2f1(2e-16, 1.0, 1.0, -2.0) == pytest.approx(val, rel=1e-13)


def test_degenerate_lower_parameter_raises():
    with pytest.raises(DegenerateParameterError) as excinfo:
        gauss_2f1(0.5, 0.5, -2.0, 0.3)
    assert excinfo.value.report.degenerate_parameters


def test_z_at_or_above_one_is_domain_error():
    with pytest.raises(DomainError):
        gauss_2f1(0.5, 0.5, 1.5, 1.0)
    with pytest.raises(DomainError):
        gauss_2f1_continued(0.5, 0.5, 1.5, 0.7)


def test_full_output_report():
    value, report = gauss_2f1(0.5, 0.8, 1.9, 0.4, full_output=True)
    assert report.converged
    assert report.terms_used > 0
    assert report.value.re == value
    assert report.value.im == 0.0


@pytest.mark.parametrize(
    "a,b,c,z",
    [
        (0.4, -2.7, 1.3, 0.6),
        (1.1, 0.3, 2.6, -7.0),
        (0.25, 0.75, 2.0, 0.97),
        (-0.6, 1.9, 0.35, -0.4),
    ],
)
def test_against_reference_implementation(a, b, c, z):
    assert gauss_2f1(a, b, c, z) == pytest.approx(
        float(mpmath.hyp2f1(a, b, c, z)), rel=1e-12
    )


# ---------------------------------------------------------------------------
# continuation past z = 1
# ---------------------------------------------------------------------------

def test_pinned_continuation_from_elementary_integral():
    # The n = 1 cosh closed form integrates elementarily:
    # integral sech^4 = tanh - tanh^3/3, which forces
    # |Im 2F1(1/2,-3/2;-1/2; rho^2)| = 3 rho^3 (T - T^3/3), T = tanh(arccosh rho).
    rho = 2.0
    t = math.tanh(arccosh(rho))
    expected_im = 3.0 * rho**3 * (t - t**3 / 3.0)
    assert expected_im == pytest.approx(9.0 * math.sqrt(3.0), rel=1e-14)

    above = gauss_2f1_continued(0.5, -1.5, -0.5, 4.0, "above")
    assert above.im == pytest.approx(-expected_im, rel=1e-13)
    assert above.re == pytest.approx(0.0, abs=1e-12)


def test_branch_symmetry_is_conjugation():
    for args in [(0.5, -1.5, -0.5, 4.0), (-1.2, 0.5, -0.7, 4.0),
                 (0.3, 1.9, 2.4, 1.7)]:
        above = gauss_2f1_continued(*args, branch="above")
        below = gauss_2f1_continued(*args, branch="below")
        assert above.re == below.re
        assert above.im == -below.im


def test_continuity_onto_the_cut():
    # c - a - b = 1/2 > 0, so the function is finite at z = 1 and both
    # sides approach the same (vanishing) real value like sqrt(|1-z|).
    for eps in (1e-6, 1e-10):
        scale = 4.0 * math.sqrt(eps)
        below_cut = gauss_2f1(0.5, -1.5, -0.5, 1.0 - eps)
        on_cut = gauss_2f1_continued(0.5, -1.5, -0.5, 1.0 + eps, "above")
        assert abs(below_cut) <= scale
        assert abs(on_cut.re) <= scale


@pytest.mark.parametrize(
    "a,b,c,z",
    [
        (0.5, -1.8, -0.5, 4.0),     # 1 - 1/z connection
        (0.5, -1.8, -0.5, 1.21),    # same, close to the cut point
        (0.25, 0.75, 2.0, 5.0),     # c-a-b integer: 1/z connection
        (-1.2, 0.5, -0.7, 9.0),     # reduced sinusoid-style parameters
        (0.5, -2.4, -1.9, 100.0),   # large argument
    ],
)
def test_continued_against_reference_implementation(a, b, c, z):
    got = gauss_2f1_continued(a, b, c, z, "above")
    ref = mpmath.hyp2f1(a, b, c, mpmath.mpc(z, 1e-25))
    assert got.re == pytest.approx(float(ref.real), rel=1e-10, abs=1e-12)
    assert got.im == pytest.approx(float(ref.imag), rel=1e-10, abs=1e-12)


def test_continuation_degenerate_when_both_routes_blocked():
    # c - a - b = -1 and b - a = 0 are both integers
    with pytest.raises(DegenerateParameterError):
        gauss_2f1_continued(0.75, 0.75, 0.5, 4.0)


# ---------------------------------------------------------------------------
# Appell F1
# ---------------------------------------------------------------------------

def test_appell_empty_series():
    assert appell_f1(1.3, 0.4, 0.7, 2.2, 0.0, 0.0) == ComplexValue(1.0, 0.0)


def test_appell_b2_zero_reduces_to_gauss():
    got = appell_f1(0.3, 0.7, 0.0, 1.1, 0.5, 0.99)
    assert got.im == 0.0
    assert got.re == gauss_2f1(0.3, 0.7, 1.1, 0.5)


def test_appell_pinned_value_against_double_sum():
    oracle = naive_appell_double_sum(-1.5, 0.5, 0.5, -0.5, 0.3, 0.4)
    assert oracle == pytest.approx(1.6215014126488505, rel=1e-13)
    got = appell_f1(-1.5, 0.5, 0.5, -0.5, 0.3, 0.4)
    assert got.im == 0.0
    assert got.re == pytest.approx(oracle, rel=1e-10)


@given(
    a=st.floats(min_value=-2.0, max_value=2.5),
    b1=st.floats(min_value=-1.5, max_value=2.0),
    b2=st.floats(min_value=-1.5, max_value=2.0),
    c=st.floats(min_value=0.3, max_value=4.0),
    x=st.floats(min_value=-0.7, max_value=0.7),
    y=st.floats(min_value=-0.7, max_value=0.7),
)
def test_appell_polydisc_against_double_sum(a, b1, b2, c, x, y):
    oracle = naive_appell_double_sum(a, b1, b2, c, x, y)
    got = appell_f1(a, b1, b2, c, x, y)
    assert got.re == pytest.approx(oracle, rel=1e-10, abs=1e-12)


def test_appell_boundary_reduction_against_reference():
    got = appell_f1(-1.2, 0.5, 0.5, -0.2, 1.0, 0.5)
    ref = float(mpmath.appellf1(-1.2, 0.5, 0.5, -0.2, 1.0, 0.5))
    assert got.re == pytest.approx(ref, rel=1e-12)
    assert got.im == 0.0
    assert got.re == pytest.approx(3.0864201798819069, rel=1e-12)


def test_appell_boundary_with_continued_argument_is_complex():
    got = appell_f1(-1.2, 0.5, 0.5, -0.2, 1.0, 3.0, branch="below")
    flipped = appell_f1(-1.2, 0.5, 0.5, -0.2, 1.0, 3.0, branch="above")
    assert got.im != 0.0
    assert got.im == -flipped.im


def test_appell_degenerate_parameters():
    # integer 3n family: c = 1 - 3n is a non-positive integer
    with pytest.raises(DegenerateParameterError):
        appell_f1(-3.0, 0.5, 0.5, -2.0, 1.0, 2.0)
    # half-odd 3n family: the reduction coefficient hits a gamma pole
    with pytest.raises(DegenerateParameterError):
        appell_f1(-1.5, 0.5, 0.5, -0.5, 1.0, 2.0)


def test_appell_domain_errors():
    with pytest.raises(DomainError):
        appell_f1(0.5, 0.5, 0.5, 1.5, 1.0, 1.0)
    with pytest.raises(DomainError):
        appell_f1(0.5, 0.5, 0.5, 1.5, 1.2, 0.3)
    with pytest.raises(DomainError):
        appell_f1(0.5, 0.5, 0.5, 1.5, 0.5, 3.0)
    with pytest.raises(DomainError):
        # boundary reduction needs c - a - b1 > 0
        appell_f1(1.0, 0.5, 0.5, 1.2, 1.0, 0.5)


# ---------------------------------------------------------------------------
# arccosh
# ---------------------------------------------------------------------------

def test_arccosh_values():
    assert arccosh(1.0) == 0.0
    assert arccosh(2.0) == pytest.approx(math.log(2.0 + math.sqrt(3.0)), rel=1e-15)
    assert arccosh(math.cosh(1.7)) == pytest.approx(1.7, rel=1e-14)
    with pytest.raises(DomainError):
        arccosh(0.5)
