import math

import numpy as np
import pytest
from mpmath import factorial, mp, mpf, pi as mp_pi, sqrt as mp_sqrt

from rogue_infinite import edge
from rogue_infinite.errors import ConsistencyError, DomainError
from rogue_infinite.phase import chi_crit, critical_point, critical_point_xi
from rogue_infinite.spectral import solve_lambda

POINTS = [(0.3, 0.0), (0.5, 0.4), (1.0, -0.8), (0.2, 0.1), (2.0, 1.5),
          (0.13, -0.02), (0.8, 0.0), (1.4, -1.1), (0.6, 0.7), (3.0, 2.0)]


def test_hermite_gamma_examples():
    assert edge.hermite_gamma(0) == pytest.approx(math.pi ** -0.25, rel=1e-15)
    assert edge.hermite_gamma(0) == pytest.approx(0.7511255, abs=5e-8)
    assert edge.hermite_gamma(1) == pytest.approx(1.0622519, abs=5e-8)
    assert edge.hermite_gamma(-1) == 0.0
    for n in range(1, 11):
        assert edge.hermite_gamma(n) ** 2 / edge.hermite_gamma(n - 1) ** 2 == pytest.approx(2.0 / n, rel=1e-13)


@pytest.mark.parametrize("n", [0, 3, 17, 150])
def test_hermite_gamma_mpmath(n):
    mp.dps = 30
    want = mp_sqrt(mpf(2) ** n / (mp_sqrt(mp_pi) * factorial(n)))
    assert edge.hermite_gamma(n) == pytest.approx(float(want), rel=1e-13)


def test_hermite_gamma_rejects_negative():
    with pytest.raises(DomainError):
        edge.hermite_gamma(-2)


def test_rounding_rule():
    assert edge.round_half_up(0.0) == 0
    assert edge.round_half_up(1.5) == 2
    assert edge.round_half_up(0.5) == 1
    assert edge.round_half_up(-0.5) == 0
    assert edge.round_half_up(2.49) == 2


def _chi_for_ratio(target, tau, M):
    # chi with Re(2d) M / ln M equal to target (Re 2d is increasing in chi)
    from scipy.optimize import brentq
    cc = chi_crit(tau)
    return brentq(lambda c: edge.index_ratio(c, tau, M) - target, cc - 0.5, cc + 0.5, xtol=1e-15)


def test_select_n_examples():
    M, tau = 1000.0, 0.3
    assert edge.select_n(chi_crit(tau), tau, M) == 0
    assert edge.select_n(_chi_for_ratio(-0.7, tau, M), tau, M) == 0
    assert edge.select_n(_chi_for_ratio(-30.0, tau, M), tau, M) == 0
    assert edge.select_n(_chi_for_ratio(1.5 + 1e-9, tau, M), tau, M) == 2
    assert edge.select_n(_chi_for_ratio(2.7, tau, M), tau, M) == 3
    with pytest.raises(DomainError):
        edge.select_n(0.3, 0.0, 1.0)


@pytest.mark.parametrize("chi,tau", POINTS)
def test_pulse_bounded_by_twice_im_xi(chi, tau):
    y = critical_point_xi(chi, tau).imag
    for n in range(4):
        for M in (10.0, 1e3, 1e5):
            assert abs(edge.soliton_term(n, chi, tau, M)) <= 2 * y * (1 + 1e-15)


@pytest.mark.parametrize("chi,tau", POINTS)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_phi_two_forms(chi, tau, n):
    for M in (50.0, 1e3, 1e4):
        phi, _ = edge.phi_omega(n, chi, tau, M)
        assert abs(phi - edge.phi_n_expanded(n, chi, tau, M)) <= 1e-11 * max(1.0, abs(phi))


@pytest.mark.parametrize("chi,tau", POINTS[:5])
def test_phi_step_identity(chi, tau):
    cp = critical_point(chi, tau)
    for M in (100.0, 1e4):
        for n in range(4):
            step = edge.phi_omega(n + 1, chi, tau, M)[0] - edge.phi_omega(n, chi, tau, M)[0]
            want = (-math.log(M) - math.log(edge.hermite_gamma(n + 1) ** 2 / edge.hermite_gamma(n) ** 2)
                    - 2 * math.log(2 * cp.xi.imag * abs(cp.eta)))
            assert step == pytest.approx(want, abs=1e-12 * max(1.0, M))


def test_omega_is_reduced():
    for chi, tau in POINTS:
        om = edge.phi_omega(2, chi, tau, 12345.0)[1]
        assert -math.pi < om <= math.pi


def _edge_layer_points(M, count=10):
    # points just above and below the boundary curve, where the pulses live
    taus = np.linspace(-1.5, 1.5, count)
    offsets = np.linspace(-0.5, 4.0, count) * math.log(M) / M
    return [(chi_crit(t) + o, t) for t, o in zip(taus, offsets)]


@pytest.mark.parametrize("M", [30.0, 1e3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_residue_algebra(n, M):
    for chi, tau in _edge_layer_points(M):
        rep = edge.residue_identities(n, chi, tau, M)
        assert rep.max_defect() <= 1e-12


@pytest.mark.parametrize("n", [1, 3])
def test_residue_algebra_large_M(n):
    # the phase M Im(d) is itself only known to M |d| eps, which bounds every route
    M = 1e5
    for chi, tau in _edge_layer_points(M):
        floor = 4.0 * M * abs(critical_point(chi, tau).d) * np.finfo(float).eps
        rep = edge.residue_identities(n, chi, tau, M, check=False)
        assert rep.max_defect() <= max(1e-12, floor)


def test_residue_failure_is_reported():
    with pytest.raises(DomainError):
        edge.residue_identities(0, 0.3, 0.0, 10.0)


def test_direct_route_matches_pulse():
    # 8 i Im(xi)^2 C+ / (4 Im(xi)^2 + |C+|^2) against the sech form
    for chi, tau in POINTS[:4]:
        for n in range(4):
            data = edge.edge_data(n, chi, tau, 40.0)
            psi = edge.soliton_term(n, chi, tau, 40.0)
            assert abs(edge.psi_plus(data) - psi) <= 1e-11 * max(abs(psi), 1e-300)


def test_deep_subcritical_sum_is_small():
    M = 60.0
    for chi, tau in ((0.02, 0.0), (-2.0, 0.5)):
        assert chi < chi_crit(tau)
        assert (2 * critical_point(chi, tau).d).real < -1.0
        assert abs(edge.soliton_sum(chi, tau, M)) < math.exp(-M / 2)


def test_sum_cap_is_hard():
    chi, tau, M = 0.3, 0.0, 500.0
    manual = sum(edge.soliton_term(n, chi, tau, M) for n in range(2))
    assert edge.soliton_sum(chi, tau, M, k_plus=1) == pytest.approx(manual, abs=1e-15)
    with pytest.raises(DomainError):
        edge.soliton_sum(chi, tau, M, k_plus=-2)


@pytest.mark.parametrize("tau", [0.0, 0.4, -1.0])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_single_term_dominance(tau, n):
    for M in (1e3, 1e4):
        chi0 = edge.phi_zero_chi(n, tau, M)
        psi_n = edge.soliton_term(n, chi0, tau, M)
        y = critical_point_xi(chi0, tau).imag
        assert abs(psi_n) == pytest.approx(2 * y, rel=1e-10)
        assert abs(edge.soliton_sum(chi0, tau, M) - psi_n) <= 0.1 * abs(psi_n)
        # the neighbouring pulse is at most of order M^(-1/2)
        assert abs(edge.soliton_term(n + 1, chi0, tau, M)) <= M ** -0.5


@pytest.mark.parametrize("tau", [0.0, 0.4, -1.0])
def test_trajectory_ordering(tau):
    for M in (1e2, 1e3):
        chis = [edge.phi_zero_chi(n, tau, M) for n in range(4)]
        assert all(b > a for a, b in zip(chis, chis[1:]))
        # all trajectories sit where Re(2d) > 0
        assert all(critical_point(c, tau).d.real > 0 for c in chis)


@pytest.mark.parametrize("tau", [0.0, 0.4, -1.0])
def test_ground_trajectory_approaches_boundary(tau):
    cc = chi_crit(tau)
    scaled = [(edge.phi_zero_chi(0, tau, M) - cc) * M / math.log(M) for M in (1e2, 1e3, 1e4)]
    assert all(0 < s < 1.0 for s in scaled)
    assert scaled[2] < scaled[1] < scaled[0]


@pytest.mark.parametrize("tau", [0.0, 0.4, -1.0])
def test_pulse_spacing(tau):
    # spacing between the n = 0 and n = 1 curves against the leading balance
    # (ln M + ln 2 + 2 ln(2 Im(xi) |eta|)) / (2 Im(xi) M)
    for M in (1e3, 1e4):
        c0, c1 = edge.phi_zero_chi(0, tau, M), edge.phi_zero_chi(1, tau, M)
        cp = critical_point(c0, tau)
        y = cp.xi.imag
        lead = (math.log(M) + math.log(2.0) + 2 * math.log(2 * y * abs(cp.eta))) / (2 * y * M)
        assert (c1 - c0) / lead == pytest.approx(1.0, rel=0.1)


def test_pulse_spacing_bare_log_law_converges_slowly():
    # ln(M) / (2 Im(xi) M) alone is the M -> infinity limit; its ratio drifts toward 1
    ratios = []
    for M in (1e3, 1e4, 1e6):
        c0, c1 = edge.phi_zero_chi(0, 0.4, M), edge.phi_zero_chi(1, 0.4, M)
        y = critical_point_xi(c0, 0.4).imag
        ratios.append((c1 - c0) * 2 * y * M / math.log(M))
    assert ratios[0] > ratios[1] > ratios[2] > 1.0


def test_trajectory_curve_polyline():
    taus = np.linspace(-1.0, 1.0, 9)
    tr = edge.trajectory_curve(1, taus, 1e3)
    assert not tr.truncated and len(tr.points) == 9
    for chi, tau in tr.points:
        assert abs(edge.phi_omega(1, chi, tau, 1e3)[0]) <= 1e-6


@pytest.mark.parametrize("tau", [0.0, 0.4, -1.0])
def test_edge_amplitude_matches_bulk_envelope(tau):
    cc = chi_crit(tau)
    c = solve_lambda(cc + 1e-8, tau)
    assert abs(c.alpha.imag + c.beta.imag - 2 * critical_point_xi(cc, tau).imag) <= 1e-6


def test_local_soliton_anchor():
    M, tau0 = 1e3, 0.3
    chi0 = edge.phi_zero_chi(1, tau0, M)
    q = edge.local_soliton_q(1, chi0, tau0, M)
    assert abs(q(0.0, 0.0)) == pytest.approx(2 * critical_point_xi(chi0, tau0).imag, rel=1e-14)
    assert q(0.0, 0.0) == pytest.approx(edge.soliton_term(1, chi0, tau0, M), rel=1e-10)


@pytest.mark.parametrize("M", [1e2, 1e3, 1e4])
def test_local_soliton_solves_scaled_nls(M):
    chi0 = edge.phi_zero_chi(0, 0.2, M)
    q = edge.local_soliton_q(0, chi0, 0.2, M)
    for x, t in [(0.0, 0.0), (0.4 / M, -0.3 / M), (-0.8 / M, 0.9 / M)]:
        assert abs(edge.nls_residual(q, x, t, M)) <= 1e-6


def _zoom_error(n, tau0, M):
    chi0 = edge.phi_zero_chi(n, tau0, M)
    q = edge.local_soliton_q(n, chi0, tau0, M)
    grid = np.linspace(-1.0, 1.0, 9) / M
    return max(abs(edge.soliton_term(n, chi0 + x, tau0 + t, M) - q(x, t)) for x in grid for t in grid)


def test_zoom_error_decays_like_inverse_M():
    errs = [_zoom_error(1, 0.3, M) for M in (1e2, 1e3, 1e4)]
    for a, b in zip(errs, errs[1:]):
        assert 5.0 <= a / b <= 20.0


def test_phi_zero_needs_large_M():
    with pytest.raises(DomainError):
        edge.phi_zero_chi(0, 0.0, 0.5)


def test_edge_data_refuses_unrepresentable_points():
    with pytest.raises(DomainError):
        edge.edge_data(1, 3.0, 2.0, 1e4)


def test_residue_check_raises_on_tampering(monkeypatch):
    monkeypatch.setattr(edge, "psi_minus", lambda data: 0j)
    with pytest.raises(ConsistencyError):
        edge.residue_identities(1, chi_crit(0.4), 0.4, 100.0)
