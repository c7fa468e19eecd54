from math import comb, pi, sqrt

import numpy as np
import pytest
from hypothesis import given, strategies as st
from numpy.polynomial import chebyshev
from scipy.optimize import brentq

from sphloc.asymptotics import (HypothesisError, ValidityError, dirichlet_one_term,
                                dirichlet_two_term, endpoint_bounds, endpoint_growth_exponent,
                                envelope_m, f2_coefficient, filtered_coefficients,
                                filtered_kernel_asymp, filtered_prefactor, jacobi_one_term,
                                jacobi_two_term, lambda_tables, nu_hat, phase_omega, u_hat)
from sphloc.experiments import decay_fit
from sphloc.filters import hermite_filter
from sphloc.kernels import dirichlet_closed
from sphloc.special import JacobiParams, gamma_ratio, jacobi_eval

P00 = JacobiParams(0.0, 0.0)
P_HALF = JacobiParams(0.5, 0.5)


def test_envelope_examples():
    assert envelope_m(JacobiParams(-0.5, -0.5), pi / 2) == pytest.approx(1 / sqrt(pi))
    assert envelope_m(P00, pi / 2) == pytest.approx(sqrt(2) / sqrt(pi))
    with pytest.raises(ValueError):
        envelope_m(P00, 0.0)
    with pytest.raises(ValueError):
        envelope_m(P00, pi)


@given(st.floats(-0.9, 3), st.floats(-0.9, 3), st.floats(0.01, pi - 0.01))
def test_envelope_symmetry(a, b, th):
    assert envelope_m(JacobiParams(a, b), th) == pytest.approx(envelope_m(JacobiParams(b, a), pi - th), rel=1e-12)


@given(st.floats(-3, 3), st.floats(-50, 50))
def test_phase(alpha, z):
    assert phase_omega(0, pi / 4) == 0.0
    assert phase_omega(-0.5, 0.0) == 0.0
    assert phase_omega(alpha + 1, z) == pytest.approx(phase_omega(alpha, z) - pi / 2, abs=1e-12)


def test_f2_examples():
    assert f2_coefficient(P_HALF, 0.7) == pytest.approx(0.0, abs=1e-16)
    assert f2_coefficient(P00, pi / 2) == pytest.approx(0.0, abs=1e-16)
    assert f2_coefficient(JacobiParams(1, 0), pi / 2) == pytest.approx(-0.25)
    # tan coefficient of the reflected shifted pair at alpha = beta = 1/2
    q = JacobiParams(0.5, 1.5)
    assert f2_coefficient(q, pi / 2) == pytest.approx(0.5 * np.tan(pi / 4) - (4 * 0.25 - 1) / 8 * 0.0)
    q = JacobiParams(1.5, 0.5)
    assert f2_coefficient(q, pi / 2) == pytest.approx(-0.5 * 1.0)


def test_remainder_exponents():
    assert u_hat(0) == -1.5 and nu_hat(0) == 2.5
    assert u_hat(0.5) == -2.0 and nu_hat(0.5) == 1.0
    assert u_hat(1.25) == pytest.approx(-1.25) and nu_hat(1.25) == 1.75
    for a in np.linspace(-0.4, 3, 18):
        assert -2 <= u_hat(a) < -1


def test_jacobi_one_term_chebyshev():
    # P_ell^{(-1/2,-1/2)}(cos t) = P_ell(1) cos(ell t) with P_ell(1) ~ (pi ell)^{-1/2}
    p = JacobiParams(-0.5, -0.5)
    th = np.linspace(0.2, pi - 0.2, 13)
    for ell in (100, 400, 1600):
        res = jacobi_one_term(p, ell, th)
        ratio = gamma_ratio(0.5, 1.0, ell) * sqrt(ell)
        np.testing.assert_allclose(jacobi_eval(p, ell, np.cos(th)), ratio * res.value, rtol=1e-9, atol=1e-12)
        assert abs(ratio - 1) < 1 / (7 * ell)


def test_jacobi_one_term_error_bounded():
    th = 1.0
    scaled = []
    for ell in (100, 200, 400, 800):
        res = jacobi_one_term(P00, ell, th)
        scaled.append(abs(jacobi_eval(P00, ell, np.cos(th)) - res.value) * ell / res.envelope)
        assert res.predicted_error_order == -1.0
    assert max(scaled) < 2.0


def test_jacobi_one_term_phase_zeros():
    p = JacobiParams(0.3, 0.1)
    ell = 300
    et = p.ell_tilde(ell)
    z = p.alpha * pi / 2 + 3 * pi / 4 + 100 * pi
    assert jacobi_one_term(p, ell, z / et).value == pytest.approx(0.0, abs=1e-14)


def test_jacobi_two_term_improves():
    p = JacobiParams(0.25, 0.0)
    th = 1.2
    e1, e2 = [], []
    for ell in (100, 200, 400, 800, 1600):
        exact = jacobi_eval(p, ell, np.cos(th))
        one = jacobi_one_term(p, ell, th)
        two = jacobi_two_term(p, ell, th)
        e1.append(abs(exact - one.value) / one.envelope)
        e2.append(abs(exact - two.value) / two.envelope * p.ell_tilde(ell))
    # oscillating, but error * ell still falls off
    assert max(e2[-2:]) < 0.2 * max(e2[:2])
    assert max(e2) / p.ell_tilde(100) < max(e1)


def test_jacobi_two_term_legendre_drops_term():
    # alpha = beta = 0: the correction is just F2 times the shifted cosine
    ell, th = 50, 0.9
    et = P00.ell_tilde(ell)
    res = jacobi_two_term(P00, ell, th)
    env = et ** -0.5 * envelope_m(P00, th)
    want = env * (np.cos(phase_omega(0, et * th)) + f2_coefficient(P00, th) * np.cos(phase_omega(1, et * th)) / et)
    assert res.value == pytest.approx(want, rel=1e-14)


def test_hypotheses():
    with pytest.raises(HypothesisError):
        jacobi_two_term(JacobiParams(-0.75, 0.0), 100, 1.0)
    with pytest.raises(HypothesisError):
        jacobi_two_term(JacobiParams(0.0, 4.5), 100, 1.0)
    with pytest.raises(HypothesisError):
        dirichlet_two_term(JacobiParams(0.0, 5.5), 100, 1.0, branch="i")
    with pytest.raises(HypothesisError):
        dirichlet_two_term(JacobiParams(3.5, 0.0), 100, 2.0, branch="ii")
    with pytest.raises(HypothesisError):
        dirichlet_one_term(JacobiParams(-0.6, 0.0), 100, 1.0)


def test_validity_windows():
    with pytest.raises(ValidityError):
        jacobi_one_term(P00, 100, 0.05)
    with pytest.raises(ValidityError):
        dirichlet_one_term(P00, 100, 0.05)
    with pytest.raises(ValidityError):
        dirichlet_one_term(P00, 100, pi - 0.05)
    with pytest.raises(ValidityError):
        dirichlet_two_term(P00, 100, pi - 0.05, branch="i")
    with pytest.raises(ValidityError):
        dirichlet_two_term(P00, 100, 0.05, branch="ii")
    with pytest.raises(ValidityError):
        filtered_kernel_asymp(P00, hermite_filter(1), 100, 0.01)
    with pytest.raises(ValueError):
        dirichlet_one_term(P00, 100, 1.0, branch="iii")
    res = dirichlet_one_term(P00, 100, 1.0)
    lo, hi = res.valid_theta_range
    assert lo == pytest.approx(0.1) and hi == pytest.approx(pi / 2)
    lo, hi = dirichlet_one_term(P00, 100, 2.0).valid_theta_range
    assert lo == pytest.approx(pi / 2) and hi == pytest.approx(pi - 0.1)


def test_dirichlet_one_term_order():
    th = 1.0
    e = []
    for L in (64, 128, 256, 512, 1024, 2048):
        res = dirichlet_one_term(P00, L, th)
        e.append(abs(dirichlet_closed(P00, L, np.cos(th)) - res.value) / res.envelope)
    ratios = [b / a for a, b in zip(e, e[1:])]
    assert np.median(ratios) <= 0.6


def test_dirichlet_one_term_sphere_two_amplitude():
    L, th = 80, 1.1
    Lt = P00.L_tilde(L)
    res = dirichlet_one_term(P00, L, th)
    assert res.envelope == pytest.approx(0.5 * Lt ** 0.5 * envelope_m(JacobiParams(1, 0), th), rel=1e-14)


def test_dirichlet_branch_ii_parity():
    th = 2.5
    for L in (100, 101, 102):
        res = dirichlet_one_term(P00, L, th)
        Lt = P00.L_tilde(L)
        core = res.envelope * np.cos(phase_omega(0.0, Lt * (pi - th)))
        assert res.value == pytest.approx((-1) ** L * core, rel=1e-14)
        exact = dirichlet_closed(P00, L, np.cos(th))
        assert abs(exact - res.value) < 0.1 * res.envelope


def test_dirichlet_branches_agree_near_half_pi():
    gaps = []
    for L in (128, 512, 2048):
        th = np.linspace(pi / 2 - 0.05, pi / 2 + 0.05, 11)
        a = dirichlet_one_term(P00, L, th, branch="i")
        b = dirichlet_one_term(P00, L, th, branch="ii")
        gaps.append(np.max(np.abs(a.value - b.value) / a.envelope))
    assert gaps[-1] < 0.1 * gaps[0] + 1e-12
    assert gaps[-1] * 2048 < 10


def test_dirichlet_phase_zeros():
    # exact zeros sit within C / L^2 of the one-term formula's zeros
    p = JacobiParams(0.25, 0.0)
    scaled = []
    for L in (64, 128, 256, 512):
        Lt = p.L_tilde(L)
        base = (p.alpha + 1) * pi / 2 + 3 * pi / 4
        m0 = int(np.ceil((0.8 * Lt - base) / pi))
        offs = []
        for m in range(m0, m0 + 5):
            z0 = (base + m * pi) / Lt
            h = 0.4 / Lt
            root = brentq(lambda t: dirichlet_closed(p, L, np.cos(t)), z0 - h, z0 + h, xtol=1e-15)
            offs.append(abs(root - z0))
        scaled.append(max(offs) * L * L)
    assert max(scaled) < 1.5 * min(scaled) + 1e-6
    assert max(scaled) < 5.0


@pytest.mark.parametrize("p,th,branch", [(P00, 1.0, "i"), (P00, 2.0, "ii"),
                                          (JacobiParams(1.0, 0.5), 1.3, "i")])
def test_dirichlet_two_term_improves(p, th, branch):
    scaled = []
    for L in (64, 128, 256, 512, 1024, 2048):
        res = dirichlet_two_term(p, L, th, branch=branch)
        err = abs(dirichlet_closed(p, L, np.cos(th)) - res.value) / res.envelope
        scaled.append(err * p.L_tilde(L))
    dec = sum(b < a for a, b in zip(scaled, scaled[1:]))
    assert dec >= 4
    assert scaled[-1] < 0.2 * scaled[0]


def test_dirichlet_two_term_exact_at_half():
    # alpha = beta = 1/2 makes the two-term form exact
    for L in (64, 300):
        for th, br in ((0.7, "i"), (2.4, "ii")):
            res = dirichlet_two_term(P_HALF, L, th, branch=br)
            assert res.value == pytest.approx(dirichlet_closed(P_HALF, L, np.cos(th)), rel=1e-9, abs=1e-12 * res.envelope)


def _lam(kappa, s, nu):
    return sum(comb(s, j) * (-1) ** j * (j - nu) ** (kappa + 1) for j in range(nu + 1, s + 1))


def _lam_bar(kappa, s, nu):
    return sum(comb(s, j) * (-1) ** j * (j - nu - 1) ** (kappa + 1) for j in range(nu + 1))


@given(st.integers(0, 6), st.integers(1, 9))
def test_lambda_tables(kappa, s):
    tab = lambda_tables(kappa, s)
    assert len(tab.lam) == s and len(tab.lam_bar) == s + 1
    assert all(isinstance(v, int) for v in tab.lam + tab.lam_bar)
    assert tab.lam[s - 1] == (-1) ** s
    assert tab.lam_bar[0] == (-1) ** (kappa + 1)
    assert list(tab.lam) == [_lam(kappa, s, nu) for nu in range(s)]


@pytest.mark.parametrize("kappa", range(5))
def test_lambda_top_entry(kappa):
    assert lambda_tables(kappa, kappa + 3).lam[kappa + 2] == (-1) ** (kappa + 1)


def test_lambda_bad_input():
    with pytest.raises(ValueError):
        lambda_tables(1, 0)


@pytest.mark.parametrize("kappa", [0, 1, 2, 3])
def test_filtered_coefficients_at_zero(kappa):
    p = JacobiParams(0.5, 0.0)
    f = hermite_filter(kappa)
    tab = lambda_tables(kappa, kappa + 3)
    g1, g2, g3, g4 = filtered_coefficients(p, f, 0.0)
    assert g1 == pytest.approx(f.d1 * sum(tab.lam[:kappa + 3]))
    assert g3 == pytest.approx(2 ** (p.alpha + 0.5) * f.d2 * sum(tab.lam_bar[:kappa + 3]))
    assert g2 == 0.0 and g4 == 0.0


@pytest.mark.parametrize("kappa", [0, 1, 2, 3])
def test_first_coefficient_leading_power(kappa):
    # as a polynomial in cos(theta) the cosine amplitude has degree kappa + 2
    f = hermite_filter(kappa)
    tab = lambda_tables(kappa, kappa + 3)
    poly = chebyshev.cheb2poly(np.array(tab.lam[:kappa + 3], dtype=float) * f.d1)
    assert len(poly) == kappa + 3
    assert poly[-1] == pytest.approx((-2) ** (kappa + 1) * f.d1)
    th = np.linspace(0.1, 3.0, 7)
    g1 = filtered_coefficients(P00, f, th)[0]
    np.testing.assert_allclose(g1, np.polynomial.polynomial.polyval(np.cos(th), poly), rtol=1e-12, atol=1e-10)


@pytest.mark.parametrize("kappa", [0, 1, 2])
@pytest.mark.parametrize("ab", [(0.0, 0.0), (0.5, 0.5), (1.5, -0.25)])
def test_bracket_rearrangement(kappa, ab):
    # sum of shifted cosines over both edge windows equals the four-amplitude bracket
    p = JacobiParams(*ab)
    f = hermite_filter(kappa)
    s = kappa + 3
    xi_order = p.alpha + s
    for L in (40, 333):
        for th in (0.4, 1.0, 2.2):
            lt, lt2 = p.L_tilde(L), p.L_tilde(2 * L)
            first = sum(_lam(kappa, s, i) * np.cos(phase_omega(xi_order, (lt + (kappa + 2) / 2 - i) * th))
                        for i in range(s))
            second = sum(_lam_bar(kappa, s, i) * np.cos(phase_omega(xi_order, (lt2 - 1 + (kappa + 2) / 2 - i) * th))
                         for i in range(s))
            want = f.d1 * first + 2 ** (p.alpha + 0.5) * f.d2 * second
            res = filtered_kernel_asymp(p, f, L, th)
            got = res.value / res.envelope
            scale = sum(abs(x) for x in filtered_coefficients(p, f, th))
            assert abs(got - want) <= 1e-12 * max(1.0, scale)


def test_filtered_prefactor_constant():
    p = P00
    L, th = 100, 1.0
    c1 = np.sin(0.5) ** (-4.5) * np.cos(0.5) ** (-0.5) / (2 * sqrt(pi))
    assert filtered_prefactor(p, 1, L, th) == pytest.approx(L ** -1.5 * c1 / (8 * 2), rel=1e-14)


@pytest.mark.parametrize("ab", [(0.0, 0.0), (0.5, 0.5)])
def test_filtered_expansion_order(ab):
    from sphloc.kernels import filtered_sbp
    p = JacobiParams(*ab)
    f = hermite_filter(1)

    def err(L):
        res = filtered_kernel_asymp(p, f, L, 1.0)
        return abs(filtered_sbp(p, f, L, 4, np.cos(1.0)) - res.value) / res.envelope
    ratios = [err(2 * L) / err(L) for L in (128, 181, 256, 362, 512, 724, 1024)]
    assert np.median(ratios) <= 0.6


def test_endpoint_bounds():
    for L in (4, 40, 400):
        assert endpoint_bounds(P00, L, 0.0) == pytest.approx((L + 1) ** 2 / 2)
        assert abs(endpoint_bounds(P00, L, pi)) == pytest.approx((L + 1) / 2)
    assert np.isfinite(endpoint_bounds(JacobiParams(1.0, 0.5), 1, 0.0))
    with pytest.raises(ValidityError):
        endpoint_bounds(P00, 100, 1.0)


@pytest.mark.parametrize("a", [0.0, 0.5, 1.0])
def test_endpoint_growth(a):
    p = JacobiParams(a, a)
    Ls = [64, 128, 256, 512, 1024, 2048]
    fit0 = decay_fit([(L, endpoint_bounds(p, L, 0.0)) for L in Ls])
    assert fit0.slope == pytest.approx(endpoint_growth_exponent(p, 0), abs=0.05)
    fitpi = decay_fit([(L, abs(endpoint_bounds(p, L, pi))) for L in Ls])
    assert fitpi.slope == pytest.approx(endpoint_growth_exponent(p, pi), abs=0.05)
    # bounded ratio throughout the zone near 0
    ratios = [endpoint_bounds(p, L, np.linspace(0, 10 / L, 9)) / L ** (2 * a + 2) for L in Ls]
    assert np.max(np.abs(ratios)) < 10 * np.max(np.abs(ratios[0]))
