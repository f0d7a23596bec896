import math

import mpmath
import numpy as np
import pytest

from rogue_infinite import phase, spectral
from rogue_infinite.contour import r_chord
from rogue_infinite.errors import ConfigurationError, DomainError

from conftest import curve_at


def gauss_f_left_path(lam, chi, tau, n=200):
    """f by fixed-order Gauss-Legendre on the bent path conj(alpha) -> P -> alpha, P left of all roots."""
    c = spectral.make_curve(lam, chi, tau)
    a = c.alpha
    P = min(a.real, c.beta.real) - 3.0
    x, w = np.polynomial.legendre.leggauss(n)
    s = 0.25 * math.pi * (x + 1)
    jac = 0.25 * math.pi * 2 * np.sin(s) * np.cos(s)

    def leg(start):
        # start + (P - start) sin^2(s) clusters nodes at the square-root end
        z = start + (P - start) * np.sin(s) ** 2
        return np.sum(w * c.hprime(z) * (P - start) * jac)

    total = leg(a.conjugate()) - leg(a)
    return (-1j * (total - 2j)).real


class TestQuartic:
    def test_symmetric_functions(self):
        lam, chi, tau = -2.0, 1.0, 0.3
        s1, s2, s3, s4 = spectral.symmetric_polys(lam, chi, tau)
        g = tau * tau * lam - chi
        assert (s1, s2, s3, s4) == pytest.approx((-tau * lam, 0.75 * tau ** 2 * lam ** 2 - 0.5 * chi * lam,
                                                 -16 * tau / g ** 3, 4 / g ** 2), rel=1e-15)

    def test_biquadratic_symmetry(self):
        c = curve_at(1.0, 0.0)
        assert c.beta == pytest.approx(-c.alpha.conjugate(), abs=1e-13)

    @pytest.mark.parametrize("chi,tau", [(1.0, 0.3), (0.2, -0.5), (3.0, 1.0)])
    def test_labels_and_residuals(self, chi, tau):
        c = curve_at(chi, tau)
        coeffs = spectral.quartic_coefficients(c.lam, chi, tau)
        oracle = np.array([complex(r) for r in mpmath.polyroots(list(coeffs), maxsteps=200, extraprec=60)])
        for r in (c.alpha, c.beta):
            assert np.min(np.abs(oracle - r)) < 1e-12
            assert abs(np.polyval(coeffs, r)) < 1e-11
        assert c.alpha.imag > 0 and c.beta.imag > 0 and c.alpha.real <= c.beta.real
        assert c.gamma != 0

    def test_real_roots_rejected(self):
        with pytest.raises(ConfigurationError):
            spectral.quartic_roots([1.0, 0.0, -5.0, 0.0, 4.0])

    def test_labelling_vertical_tie(self):
        a, b = spectral.label_roots(np.array([1 + 1j, 1 + 2j, 1 - 1j, 1 - 2j]))
        assert a == 1 + 2j and b == 1 + 1j


class TestIntegralCondition:
    def test_against_gauss_oracle(self):
        chi, tau = 1.0, 0.0
        lam = 4 * 1.5 / chi ** 2
        val = spectral.integral_condition_f(lam, chi, tau)
        assert val == pytest.approx(gauss_f_left_path(lam, chi, tau), abs=1e-10)

    def test_at_lambda_one(self):
        chi, tau = 0.7, 0.4
        lam1 = spectral.lambda_one(chi, tau)
        assert spectral.discriminant_factors(lam1, chi, tau)[0] == pytest.approx(0, abs=1e-9)
        near = spectral.integral_condition_f(lam1 + 1e-9, chi, tau)
        assert near == pytest.approx(phase.k_gap(chi, tau) - 2, abs=1e-3)
        assert near > 0

    def test_repeated_real_root(self):
        chi, tau = 0.7, 0.0
        lam = spectral.lambda_max(chi, tau)
        assert spectral.integral_condition_f(lam, chi, tau) == -2.0

    def test_q_at_tau_zero(self):
        for lam in (-3.0, 0.5, 7.0):
            assert spectral.q_polynomial(lam, 1.7, 0.0) == pytest.approx(1.7 ** 6, rel=1e-14)

    @pytest.mark.parametrize("chi,tau", [(1.0, 0.3), (0.4, -0.2)])
    def test_derivative(self, chi, tau):
        lam = curve_at(chi, tau).lam
        h = 1e-6
        fd = (spectral.integral_condition_f(lam + h, chi, tau) - spectral.integral_condition_f(lam - h, chi, tau)) / (2 * h)
        d = spectral.f_lambda_derivative(lam, chi, tau)
        assert d == pytest.approx(fd, rel=1e-4)
        assert np.sign(d) == -np.sign(spectral.q_polynomial(lam, chi, tau))


class TestSolver:
    def test_tau_zero(self):
        c = curve_at(1.0, 0.0)
        assert -8 < c.lam < 8
        assert abs(spectral.integral_condition_f(c.lam, 1.0, 0.0)) < 1e-10

    def test_large_chi_law(self):
        chi = 1e4
        c = spectral.solve_lambda(chi, 0.1)
        dev = 8 - chi * chi * c.lam
        pred = 2 * math.sqrt(128) / math.pi * chi ** -0.5
        assert abs(dev - pred) <= 0.05 * pred

    def test_roots_coalesce_at_boundary(self):
        tau = 0.3
        cc = phase.chi_crit(tau)
        gaps = [abs(spectral.solve_lambda(cc + d, tau).beta - spectral.solve_lambda(cc + d, tau).alpha)
                for d in (1e-2, 1e-4, 1e-6)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 0.05

    def test_rejects_subcritical(self):
        with pytest.raises(DomainError):
            spectral.solve_lambda(0.1, 0.0)

    @pytest.mark.parametrize("chi,tau", [(1.0, 0.3), (0.13, 0.0), (2.0, -0.9), (0.5, 0.004)])
    def test_region_label(self, chi, tau):
        c = curve_at(chi, tau)
        rep = spectral.discriminant_region(chi, tau, c.lam)
        assert rep.configuration == "complex-quartet" and rep.label == "R12"

    def test_region_against_root_count(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            chi, tau, lam = rng.uniform(-1, 2), rng.uniform(-1, 1), rng.uniform(-20, 20)
            if abs(tau * tau * lam - chi) < 1e-3:
                continue
            rep = spectral.discriminant_region(chi, tau, lam)
            roots = np.roots(spectral.quartic_coefficients(lam, chi, tau))
            n_real = int(np.sum(np.abs(roots.imag) < 1e-7 * np.max(np.abs(roots))))
            assert rep.n_real == n_real

    def test_tau_zero_regions(self):
        seen = {spectral.discriminant_region(1.0, 0.0, lam).label for lam in np.linspace(-30, 30, 61)}
        assert seen <= {"R-", "R12", "two-real-pair", "four-real"}
