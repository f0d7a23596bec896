"""Bulk wavefield above the boundary curve: modulus, complex amplitude, envelope and L2 mass."""

from dataclasses import dataclass

import numpy as np

from . import elliptic_data as ed_mod
from .errors import AccuracyError, ConsistencyError, DomainError
from .phase import Region, chi_crit, critical_point_xi, boundary_point
from .settings import DEFAULT
from .specfun import ThetaParams, ellip_e, ellip_k, jacobi_sn, riemann_constant, theta
from .spectral import solve_lambda

# below this relative gap Im(alpha) and Im(beta) count as equal
_SYMMETRIC_GAP = 1e-9


@dataclass(frozen=True)
class WaveSample:
    chi: float
    tau: float
    psi: complex
    abs2: float
    env_lo: float
    env_hi: float
    region: Region
    quiescent: bool = False


def envelope(alpha, beta):
    a, b = alpha.imag, beta.imag
    return abs(a - b), a + b


def modulus_squared(ed, M):
    """|Psi|^2 from the m1 form: (a + b)^2 - 4ab sn^2(v1; m1), a = Im alpha, b = Im beta."""
    a, b = ed.alpha.imag, ed.beta.imag
    m1 = ed.m1
    v1 = ellip_k(m1) * (M * ed.Delta + np.pi) / np.pi
    sn = jacobi_sn(v1, m1)
    return float((a + b) ** 2 - 4.0 * a * b * sn * sn)


def _is_symmetric(ed):
    a, b = ed.alpha.imag, ed.beta.imag
    return abs(b - a) <= _SYMMETRIC_GAP * (a + b)


def modulus_squared_m(ed, M):
    """|Psi|^2 from the parameter-m form, built from eta = Re 2A(infinity).

    On the symmetric slice both the prefactor (Im beta - Im alpha)^2 and the
    pole factor vanish; there the u-dependent factor is replaced by its limit.
    """
    a, b = ed.alpha.imag, ed.beta.imag
    m = ed.m
    r = np.sqrt(m)
    K = ellip_k(m)
    sv = jacobi_sn(K * M * ed.Delta / np.pi, m)
    V = sv * sv / (1.0 - r * sv * sv) ** 2
    if _is_symmetric(ed):
        front = 4.0 * a * b * (1.0 - r) ** 2
    else:
        su = jacobi_sn(K * ed.eta_abel / np.pi, 1.0 - m)
        s2 = su * su
        front = (b - a) ** 2 * 4.0 * r * (1.0 - (1.0 - m) * s2) / (1.0 - (1.0 + r) * s2) ** 2
    return float((b - a) ** 2 + front * V)


def _theta_checked(w, params, what):
    val = theta(w, params)
    if abs(val) < 1e-13:
        raise ConsistencyError(f"theta denominator {what} is {abs(val):.2e}; argument {w} sits on the lattice zero")
    return val


def psi_breve(ed, M):
    """Complex bulk amplitude from the reduced theta ratio.

    Psi = exp(-i M phi) F G with F = i (Im beta - Im alpha) Theta(0) / Theta(eta - i pi)
    and G = Theta(eta - i pi + i M Delta) / Theta(-i M Delta).  The reduction
    fixes one lattice representative of 2A(infinity); other representatives
    change only the unit phase.
    """
    params = ThetaParams(ed.H)
    w = ed.eta_abel - 1j * np.pi
    s = 1j * M * ed.Delta
    G = theta(w + s, params) / _theta_checked(-s, params, "Theta(-i M Delta)")
    if _is_symmetric(ed):
        F = _symmetric_prefactor(ed, M, G)
    else:
        F = 1j * (ed.beta.imag - ed.alpha.imag) * theta(0.0, params) / _theta_checked(w, params, "Theta(eta - i pi)")
    return complex(np.exp(-1j * M * ed.phi) * F * G)


def _symmetric_prefactor(ed, M, G):
    # 0/0 limit of F: it stays on the negative imaginary axis, and its size is
    # fixed by the modulus at the same point
    return -1j * np.sqrt(modulus_squared(ed, M)) / abs(G)


def psi_breve_abel(ed, M):
    """Unreduced theta ratio built from A(infinity), A(z0) and the Riemann constant."""
    if _is_symmetric(ed) or not np.isfinite(ed.z0):
        raise DomainError("Im(alpha) = Im(beta): z0 is at infinity; use psi_breve")
    params = ThetaParams(ed.H)
    kk = riemann_constant(ed.H)
    s = 1j * M * ed.Delta
    Ai, Az = ed.A_inf, ed.A_z0
    num = theta(Ai - Az - kk + s, params) * theta(Ai + Az + kk, params)
    den = _theta_checked(Ai - Az - kk, params, "Theta(A(inf) - A(z0) - K)") * \
        _theta_checked(Ai + Az + kk - s, params, "Theta(A(inf) + A(z0) + K - i M Delta)")
    pre = 1j * (ed.beta.imag - ed.alpha.imag) * np.exp(-1j * M * ed.phi)
    return complex(pre * num / den)


def sample(chi, tau, M, settings=DEFAULT, chi_c=None):
    """Wavefield at one rescaled point; zero amplitude on or below the boundary curve."""
    cc = chi_crit(tau) if chi_c is None else chi_c
    if chi <= cc:
        region = Region.CRITICAL if chi == cc else Region.SUBCRITICAL
        return WaveSample(float(chi), float(tau), 0j, 0.0, 0.0, 0.0, region, quiescent=True)
    ed = ed_mod.elliptic_data(solve_lambda(chi, tau, settings, chi_c=cc), settings)
    lo, hi = envelope(ed.alpha, ed.beta)
    abs2 = modulus_squared(ed, M)
    return WaveSample(float(chi), float(tau), psi_breve(ed, M), abs2, lo, hi, Region.SUPERCRITICAL)


def averaged_density(alpha, beta):
    """Period average of |Psi|^2: (a+b)^2 - 4ab (K - E)/(m1 K)."""
    a, b = alpha.imag, beta.imag
    m1 = 4.0 * a * b / (a + b) ** 2 if abs(alpha.real - beta.real) == 0 else ed_mod.lattice_parameters(
        ed_mod.circle_geometry(alpha, beta))[1]
    if 1.0 - m1 < 1e-15:
        ratio = 1.0
    else:
        K = ellip_k(m1)
        ratio = (K - ellip_e(m1)) / (m1 * K)
    return (a + b) ** 2 - 4.0 * a * b * ratio


@dataclass(frozen=True)
class L2Result:
    l2: float
    endpoint_check: float
    partial: float
    chi_max: float


def _density(chi, tau, cc, settings):
    c = solve_lambda(chi, tau, settings, chi_c=cc)
    return averaged_density(c.alpha, c.beta)


def _panel_integral(fun, log_lo, log_hi, width=2.0, nodes=12):
    # Gauss-Legendre panels in s = ln(chi - chi_c)
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(log_lo, log_hi, max(1, int(np.ceil((log_hi - log_lo) / width))) + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        s = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        vals = np.array([fun(si) for si in s])
        total += 0.5 * (hi - lo) * np.dot(w, vals)
    return total


def endpoint_check(tau, settings=DEFAULT):
    """2 g1(+inf) - 2 g1(chi_c): the first limit is exactly 4, the second uses the boundary parametrisation."""
    cc = chi_crit(tau)
    xi = critical_point_xi(cc, tau)
    chi_b, tau_b, lam_c = boundary_point(xi.real, xi.imag)
    if abs(chi_b - cc) > 1e-8 * max(1.0, abs(cc)) or abs(tau_b - tau) > 1e-8 * max(1.0, abs(tau)):
        raise ConsistencyError("boundary parametrisation does not reproduce the boundary point")
    g1_c = ed_mod.g1_value(cc, tau, lam_c)
    return 2.0 * 4.0 - 2.0 * g1_c


def l2_norm_bulk(tau, M=None, settings=DEFAULT, chi_max=1e4, gap=1e-10):
    """Period-averaged L2 mass of the bulk field over chi > chi_c(tau).

    The partial integrals up to ``chi_max / 4`` and ``chi_max`` are combined
    assuming a tail proportional to chi**(-1/2).  ``M`` only enters the
    neglected O(1/M) correction and is accepted for interface symmetry.
    """
    del M
    cc = chi_crit(tau)
    f = lambda s: np.exp(s) * _density(cc + np.exp(s), tau, cc, settings)
    lo = np.log(gap)
    mid = np.log(0.25 * chi_max - cc)
    hi = np.log(chi_max - cc)
    first = _panel_integral(f, lo, mid)
    second = first + _panel_integral(f, mid, hi)
    value = 2.0 * second - first
    if not (abs(value - second) < 0.05 * abs(second)):
        raise AccuracyError(f"tail extrapolation moved the L2 value from {second} to {value}")
    return L2Result(float(value), float(endpoint_check(tau, settings)), float(second), float(chi_max))


def sn_squared_imaginary_abel(t, m, settings=DEFAULT):
    """sn^2(U(it); 1 - m) with U(it) = -int_0^t ds / (sqrt(1+s^2) sqrt(1+m s^2))."""
    from .contour import integrate

    U = -integrate(lambda s: 1.0 / (np.sqrt(1.0 + s * s) * np.sqrt(1.0 + m * s * s)), 0.0, t, settings).real
    sn = jacobi_sn(U, 1.0 - m)
    return float(sn * sn)
