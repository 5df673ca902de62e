import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermichip import polylog as pl

mpmath.mp.dps = 20


def mp_fermi(n, z):
    """Independent oracle: arbitrary-precision quadrature of the defining integral."""
    x = float(mpmath.log(z))
    knot = max(x, 1.0)
    val = mpmath.quad(
        lambda t: t ** (n - 1) / (mpmath.exp(t - x) + 1), [0, knot, knot + 50]
    )
    return float(val / mpmath.gamma(n))


# -- fermi_fn ---------------------------------------------------------------------

def test_f1_closed_form():
    assert pl.fermi_fn(1.0, 1.0) == pytest.approx(math.log(2.0), rel=1e-10)
    for z in (0.3, 2.0, 50.0):
        assert pl.fermi_fn(1.0, z) == pytest.approx(math.log1p(z), rel=1e-9)


def test_f32_at_unit_fugacity():
    # (1 - 2^(-1/2)) zeta(3/2), the degeneracy-parameter constant
    ref = (1.0 - 2.0**-0.5) * float(mpmath.zeta(1.5))
    assert pl.fermi_fn(1.5, 1.0) == pytest.approx(ref, rel=1e-9)
    assert pl.fermi_fn(1.5, 1.0) == pytest.approx(0.765147, abs=5e-6)


def test_f3_small_argument_leading_term():
    z = 1e-9
    assert pl.fermi_fn(3.0, z) == pytest.approx(z, rel=1e-8)


def test_f2_against_dilogarithm():
    # scipy's spence gives -Li_2(-z) = -spence(1+z): an exact cross-route
    from scipy.special import spence

    for z in (0.01, 0.5, 1.0, 7.0, 1e3, 1e8):
        assert pl.fermi_fn(2.0, z) == pytest.approx(-spence(1.0 + z), rel=1e-9)


@pytest.mark.parametrize("n", [0.5, 1.5, 2.0, 3.0, 4.0])
def test_against_high_precision_oracle(n):
    for z in (0.3, 0.7, 200.0, 2e13, 1e20):
        assert pl.fermi_fn(n, z) == pytest.approx(mp_fermi(n, z), rel=3e-9)


@pytest.mark.parametrize("n", [0.5, 1.5, 2.0, 3.0, 4.0])
def test_regime_seams_agree(n):
    w = pl.SERIES_CUT
    series = pl._fermi_series(n, np.array([w]))[0]
    mid_lo = math.exp(pl._mid_interpolant(n)(math.log(w)))
    assert abs(series / mid_lo - 1.0) < 1e-8

    x = pl.SOMMERFELD_CUT_LOG
    mid_hi = math.exp(pl._mid_interpolant(n)(x))
    som = pl._fermi_sommerfeld(n, np.array([x]))[0]
    assert abs(mid_hi / som - 1.0) < 1e-8


def test_vectorized_matches_scalar():
    z = np.array([1e-4, 0.4, 2.0, 1e5, 1e14])
    vec = pl.fermi_fn(2.5, z)
    for zi, vi in zip(z, vec):
        assert vi == pytest.approx(pl.fermi_fn(2.5, float(zi)), rel=1e-12)


def test_domain_errors():
    with pytest.raises(ValueError):
        pl.fermi_fn(0.4, 1.0)
    with pytest.raises(ValueError):
        pl.fermi_fn(2.0, 0.0)
    with pytest.raises(ValueError):
        pl.fermi_fn(2.0, -1.0)


@settings(max_examples=40, deadline=None)
@given(
    n=st.sampled_from([0.5, 1.0, 1.5, 2.0, 3.0]),
    lo=st.floats(min_value=-13.0, max_value=13.0),
    hi=st.floats(min_value=-13.0, max_value=13.0),
)
def test_monotonic_in_z(n, lo, hi):
    # separations below the evaluator accuracy (~1e-10) cannot be ordered
    if abs(hi - lo) < 1e-6:
        return
    z1, z2 = math.exp(min(lo, hi)), math.exp(max(lo, hi))
    assert pl.fermi_fn(n, z1) < pl.fermi_fn(n, z2)


def test_monotonic_on_wide_log_grid():
    for n in (0.5, 1.5, 3.0):
        z = np.geomspace(1e-6, 1e6, 200)
        vals = pl.fermi_fn(n, z)
        assert np.all(np.diff(vals) > 0)


@pytest.mark.parametrize("n", [1.5, 2.0, 3.0, 4.0])
def test_derivative_identity(n):
    # z d/dz f_n(z) = f_(n-1)(z), checked by central differences
    for z in (0.05, 0.7, 3.0, 40.0, 1e4):
        h = 1e-4 * z
        deriv = (pl.fermi_fn(n, z + h) - pl.fermi_fn(n, z - h)) / (2.0 * h)
        assert z * deriv == pytest.approx(pl.fermi_fn(n - 1.0, z), rel=1e-5)


def test_boltzmann_limit():
    z = 1e-8
    for n in (0.5, 1.5, 3.0):
        assert pl.fermi_fn(n, z) / z == pytest.approx(1.0, rel=1e-7)
        assert pl.bose_fn(n, z) / z == pytest.approx(1.0, rel=1e-7)


# -- degenerate limit ----------------------------------------------------------------

def test_degenerate_limit_formula():
    assert pl.fermi_fn_degenerate_limit(3.0, 30.0) == pytest.approx(4500.0, rel=1e-12)


def test_degenerate_limit_vs_full_n3():
    x = 30.0
    full = pl.fermi_fn(3.0, math.exp(x))
    lim = pl.fermi_fn_degenerate_limit(3.0, x)
    # next Sommerfeld term is pi^2 x / 6, a ~1.1% relative correction here
    dev = abs(lim / full - 1.0)
    assert dev < math.pi**2 / (2.0 * x**2) * 6.0
    assert dev > 1e-3


def test_degenerate_limit_n1():
    x = 20.0
    exact = math.log1p(math.exp(x))
    assert abs(pl.fermi_fn_degenerate_limit(1.0, x) / exact - 1.0) < 1e-8


# -- bose_fn ---------------------------------------------------------------------------

def test_bose_at_unit_fugacity():
    assert pl.bose_fn(1.5, 1.0) == pytest.approx(float(mpmath.zeta(1.5)), rel=1e-9)
    assert pl.bose_fn(1.5, 1.0) == pytest.approx(2.612, abs=1e-3)
    assert pl.bose_fn(2.0, 1.0) == pytest.approx(math.pi**2 / 6.0, rel=1e-10)


def test_bose_small_z():
    assert pl.bose_fn(2.0, 1e-10) == pytest.approx(1e-10, rel=1e-8)


def test_bose_series_vs_mpmath_seam():
    for n in (1.5, 2.0, 3.0):
        lo = pl.bose_fn(n, 0.4999)
        assert lo == pytest.approx(float(mpmath.polylog(n, 0.4999)), rel=1e-11)
        mid = pl.bose_fn(n, 0.75)
        assert mid == pytest.approx(float(mpmath.polylog(n, 0.75)), rel=1e-11)


def test_bose_domain_errors():
    with pytest.raises(ValueError):
        pl.bose_fn(1.5, 1.2)
    with pytest.raises(ValueError):
        pl.bose_fn(1.0, 1.0)  # diverges at z=1 unless n > 1
    with pytest.raises(ValueError):
        pl.bose_fn(1.5, 0.0)


# -- gaussian reduction ------------------------------------------------------------------

@pytest.mark.parametrize(
    "n,c",
    [(1.5, 1.0), (1.0, 5.0), (2.0, 0.01), (3.0, 1e4)],
)
def test_gaussian_reduction_identity(n, c):
    lhs, rhs = pl.gaussian_reduction_check(n, c)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_gaussian_reduction_closed_form():
    lhs, rhs = pl.gaussian_reduction_check(1.5, 1.0)
    assert rhs == pytest.approx(math.sqrt(math.pi) * math.pi**2 / 12.0, rel=1e-9)
    assert lhs == pytest.approx(rhs, rel=1e-6)


def test_gaussian_reduction_small_c_limit():
    c = 1e-7
    lhs, rhs = pl.gaussian_reduction_check(2.0, c)
    assert lhs == pytest.approx(c * math.sqrt(math.pi), rel=1e-5)
    assert rhs == pytest.approx(c * math.sqrt(math.pi), rel=1e-5)
