"""Soliton train near the boundary curve.

Each pulse is ``psi_n = 2 Im(xi) sech(Phi_n) exp(i Omega_n)`` with
``Phi_n + i Omega_n = log D_n``.  Everything is assembled in logarithmic form
so that large ``M`` never overflows; the residue algebra is available as an
independent route.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConsistencyError, DomainError
from .phase import chi_crit, critical_point


# A_n**2 must stay finite in double precision
_LOG_RANGE = 300.0


def hermite_gamma(n):
    """Normalising constant sqrt(2**n / (sqrt(pi) n!)); zero for n = -1."""
    if n == -1:
        return 0.0
    if n < 0:
        raise DomainError(f"hermite_gamma needs n >= -1, got {n}")
    # log form keeps large n finite
    return math.exp(0.5 * (n * math.log(2.0) - 0.5 * math.log(math.pi) - math.lgamma(n + 1)))


def _log_gamma_sq(n):
    return n * math.log(2.0) - 0.5 * math.log(math.pi) - math.lgamma(n + 1)


def index_ratio(chi, tau, M):
    """Re(2d) M / ln M."""
    if M <= 1:
        raise DomainError(f"M must exceed 1, got {M}")
    cp = critical_point(chi, tau)
    return (2.0 * cp.d).real * M / math.log(M)


def round_half_up(x):
    return int(math.floor(x + 0.5))


def select_n(chi, tau, M):
    """Nearest integer to Re(2d) M / ln M, half-integers rounding up; 0 below -1/2."""
    r = index_ratio(chi, tau, M)
    return 0 if r < -0.5 else max(0, round_half_up(r))


@dataclass(frozen=True)
class EdgeData:
    xi: complex
    d: complex
    eta: complex
    n: int
    A_n: complex
    L_plus: complex
    L_minus: complex
    C_plus: complex
    C_minus: complex
    Phi_n: float
    Omega_n: float


def log_d_n(n, cp, M):
    """log D_n as a complex number; real part Phi_n, imaginary part Omega_n (unreduced)."""
    s = 2.0 * cp.xi.imag * cp.eta
    return (1j * math.pi * n + 2.0 * M * cp.d - (n + 0.5) * math.log(M)
            - math.log(2.0 * math.pi) - _log_gamma_sq(n) - (2 * n + 1) * np.log(s))


def _wrap(angle):
    # reduce to (-pi, pi]
    w = math.remainder(angle, 2.0 * math.pi)
    return math.pi if w == -math.pi else w


def phi_omega(n, chi, tau, M):
    cp = critical_point(chi, tau)
    ld = log_d_n(n, cp, M)
    return float(ld.real), _wrap(ld.imag)


def phi_n_expanded(n, chi, tau, M):
    """Phi_n written as M(Re 2d - (n + 1/2) ln M / M) - ln(2 pi gamma_n^2) - (2n + 1) ln(2 Im xi |eta|)."""
    cp = critical_point(chi, tau)
    return (M * ((2.0 * cp.d).real - (n + 0.5) * math.log(M) / M)
            - math.log(2.0 * math.pi * hermite_gamma(n) ** 2)
            - (2 * n + 1) * math.log(2.0 * cp.xi.imag * abs(cp.eta)))


def _sech(x):
    x = abs(x)
    return 2.0 * math.exp(-x) / (1.0 + math.exp(-2.0 * x))


def soliton_term(n, chi, tau, M):
    """psi_n = 2 Im(xi) sech(Phi_n) exp(i Omega_n)."""
    cp = critical_point(chi, tau)
    ld = log_d_n(n, cp, M)
    return complex(2.0 * cp.xi.imag * _sech(ld.real) * np.exp(1j * _wrap(ld.imag)))


def soliton_sum(chi, tau, M, k_plus=3):
    """Finite sum of psi_n over n = 0 .. round(k_plus); the cap is never extended."""
    top = round_half_up(k_plus)
    if top < 0:
        raise DomainError("k_plus must be nonnegative")
    cp = critical_point(chi, tau)
    total = 0j
    for n in range(top + 1):
        ld = log_d_n(n, cp, M)
        total += 2.0 * cp.xi.imag * _sech(ld.real) * np.exp(1j * _wrap(ld.imag))
    return complex(total)


def edge_data(n, chi, tau, M):
    """Residue-algebra quantities A_n, L_n^pm, C_n^pm computed directly."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    cp = critical_point(chi, tau)
    y = cp.xi.imag
    log_a = M * cp.d - 0.5 * n * math.log(M)
    if abs(log_a.real) > _LOG_RANGE:
        raise DomainError(f"|ln A_n| = {abs(log_a.real):.0f} at chi={chi}, tau={tau}, M={M}: "
                          "outside the edge layer the residue quantities are not representable")
    A = np.exp(log_a)
    g2 = hermite_gamma(n) ** 2
    gm2 = hermite_gamma(n - 1) ** 2
    Lp = A * A / (2j * math.pi * g2 * math.sqrt(M))
    Lm = 2j * math.pi * gm2 / (A * A * math.sqrt(M))
    Cp = Lp * (2j * y) ** (-2 * n) * cp.eta ** (-2 * n - 1)
    Cm = Lm * (2j * y) ** (2 * n) * cp.eta ** (2 * n - 1)
    ld = log_d_n(n, cp, M)
    return EdgeData(cp.xi, cp.d, cp.eta, n, complex(A), complex(Lp), complex(Lm),
                    complex(Cp), complex(Cm), float(ld.real), _wrap(ld.imag))


def psi_plus(data):
    y = data.xi.imag
    c = data.C_plus
    return 8j * y * y * c / (4.0 * y * y + abs(c) ** 2)


def psi_minus(data):
    y = data.xi.imag
    c = data.C_minus
    return -8j * y * y * np.conj(c) / (4.0 * y * y + abs(c) ** 2)


@dataclass(frozen=True)
class ResidueReport:
    n: int
    c_product: complex
    c_target: float
    l_product: complex
    psi_minus: complex
    psi_prev_plus: complex
    psi_plus: complex
    psi_direct: complex
    d_match: complex

    def max_defect(self):
        return max(
            abs(self.c_product - self.c_target) / abs(self.c_target),
            abs(self.l_product - 1.0),
            abs(self.psi_minus - self.psi_prev_plus) / max(abs(self.psi_prev_plus), 1e-300),
            abs(self.psi_plus - self.psi_direct) / max(abs(self.psi_direct), 1e-300),
            abs(self.d_match),
        )


def residue_identities(n, chi, tau, M, tol=1e-12, check=True):
    """Check C+_{n-1} C-_n = -4 Im(xi)^2, L+_{n-1} L-_n = 1 and psi-_n = psi+_{n-1}."""
    if n < 1:
        raise DomainError("residue identities need n >= 1")
    cur = edge_data(n, chi, tau, M)
    prev = edge_data(n - 1, chi, tau, M)
    y = cur.xi.imag
    D = np.exp(log_d_n(n, critical_point(chi, tau), M))
    rep = ResidueReport(
        n=n,
        c_product=prev.C_plus * cur.C_minus,
        c_target=-4.0 * y * y,
        l_product=prev.L_plus * cur.L_minus,
        psi_minus=psi_minus(cur),
        psi_prev_plus=psi_plus(prev),
        psi_plus=psi_plus(cur),
        psi_direct=soliton_term(n, chi, tau, M),
        d_match=(1j * cur.C_plus - 2.0 * y * D) / (2.0 * y * abs(D)),
    )
    if check and rep.max_defect() > tol:
        raise ConsistencyError(f"residue identity defect {rep.max_defect():.3e} at n={n}, chi={chi}, tau={tau}, M={M}")
    return rep


def phi_zero_chi(n, tau, M, chi_hi=None):
    """Solve Phi_n(chi, tau; M) = 0 for chi above the boundary curve."""
    if M <= 1:
        raise DomainError(f"M must exceed 1, got {M}")
    cc = chi_crit(tau)
    f = lambda c: phi_omega(n, c, tau, M)[0]
    lo = cc
    if f(lo) >= 0:
        raise DomainError(f"Phi_{n} is already nonnegative on the boundary curve at tau={tau}")
    hi = chi_hi if chi_hi is not None else cc + max(1e-3, math.log(M) / M)
    tries = 0
    while f(hi) <= 0:
        hi = cc + 2.0 * (hi - cc)
        tries += 1
        if tries > 60:
            raise DomainError(f"no zero of Phi_{n} found above chi_c at tau={tau}")
    return brentq(f, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=300)


def local_soliton_q(n, chi0, tau0, M):
    """Exact soliton of i q_tau / M + q_chichi / (2 M^2) + |q|^2 q = 0 frozen at (chi0, tau0).

    Returns a function of the offsets (chi, tau) from the anchor.
    """
    cp = critical_point(chi0, tau0)
    u, v = cp.xi.real, cp.xi.imag
    omega0 = phi_omega(n, chi0, tau0, M)[1]

    def q(chi, tau):
        chi = np.asarray(chi, dtype=float)
        tau = np.asarray(tau, dtype=float)
        arg = 2.0 * M * v * (chi + 2.0 * u * tau)
        phase = omega0 - 2.0 * M * (u * chi + (u * u - v * v) * tau)
        return 2.0 * v / np.cosh(arg) * np.exp(1j * phase)

    return q


def nls_residual(q, chi, tau, M, h=1e-4):
    """Residual of i q_tau / M + q_chichi / (2 M^2) + |q|^2 q by fourth-order differences.

    The step is ``h / M`` so that it scales with the pulse width.
    """
    k = h / M
    q0 = q(chi, tau)
    qt = (-q(chi, tau + 2 * k) + 8 * q(chi, tau + k) - 8 * q(chi, tau - k) + q(chi, tau - 2 * k)) / (12 * k)
    qxx = (-q(chi + 2 * k, tau) + 16 * q(chi + k, tau) - 30 * q0
           + 16 * q(chi - k, tau) - q(chi - 2 * k, tau)) / (12 * k * k)
    return 1j * qt / M + qxx / (2.0 * M * M) + abs(q0) ** 2 * q0


@dataclass(frozen=True)
class Trajectory:
    n: int
    M: float
    points: tuple
    truncated: bool


def trajectory_curve(n, taus, M):
    """Polyline of (chi, tau) along which Phi_n vanishes; stops where the root search fails."""
    pts = []
    truncated = False
    for t in taus:
        try:
            pts.append((phi_zero_chi(n, float(t), M), float(t)))
        except DomainError:
            truncated = True
            break
    return Trajectory(n, float(M), tuple(pts), truncated)
