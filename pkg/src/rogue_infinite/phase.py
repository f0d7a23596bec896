"""Phase function, its complex critical point, and the critical boundary curve.

The phase is ``theta(z) = chi z + tau z**2 - 2/z``.  For ``chi`` above
``-(54 tau**2)**(1/3)`` it has a unique critical point ``xi`` in the upper
half plane, and the boundary curve ``chi_c(tau)`` is where
``Im(theta(xi) - theta(conj(xi))) = 2``.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import ConsistencyError, DomainError
from .settings import DEFAULT


class Region(enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


@dataclass(frozen=True)
class ScalingMap:
    """Large parameter ``M`` and restored phase ``arg(ab)``."""

    M: float
    a_phase: float = 0.0

    @classmethod
    def from_ab(cls, a, b):
        a, b = complex(a), complex(b)
        if a == 0 or b == 0:
            raise DomainError("both a and b must be nonzero")
        M = -0.5 * np.log(abs(a) / np.hypot(abs(a), abs(b)))
        return cls(M=float(M), a_phase=float(np.angle(a * b)))

    def physical(self, chi, tau):
        """Map rescaled ``(chi, tau)`` to physical ``(X, T)``."""
        return self.M ** 2 * chi, self.M ** 3 * tau


@dataclass(frozen=True)
class CriticalPoint:
    xi: complex
    d: complex
    eta: complex


@dataclass(frozen=True)
class SpacetimePoint:
    chi: float
    tau: float
    region: Region

    @classmethod
    def classify(cls, chi, tau, tol=1e-12):
        cc = chi_crit(tau)
        if abs(chi - cc) <= tol * max(1.0, abs(cc)):
            region = Region.CRITICAL
        elif chi > cc:
            region = Region.SUPERCRITICAL
        else:
            region = Region.SUBCRITICAL
        return cls(float(chi), float(tau), region)


def theta_phase(z, chi, tau):
    """chi z + tau z**2 - 2/z."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise DomainError("the phase has a pole at z = 0")
    out = chi * z + tau * z * z - 2.0 / z
    return complex(out) if out.ndim == 0 else out


def theta_phase_d2(z, chi, tau):
    return 2.0 * tau - 4.0 / z ** 3


def _chi_floor(tau):
    return -np.cbrt(54.0 * tau * tau)


def critical_point_xi(chi, tau):
    """Root of 2 tau xi**3 + chi xi**2 + 2 = 0 in the upper half plane."""
    chi, tau = float(chi), float(tau)
    if tau == 0.0:
        if chi <= 0.0:
            raise DomainError(f"no complex critical point for chi={chi} at tau=0")
        return 1j * np.sqrt(2.0 / chi)
    if chi <= _chi_floor(tau):
        raise DomainError(
            f"no complex critical point: chi={chi} <= -(54 tau^2)^(1/3)={_chi_floor(tau)}"
        )
    roots = np.roots([2.0 * tau, chi, 0.0, 2.0])
    xi = roots[np.argmax(roots.imag)]
    for _ in range(2):
        p = (2.0 * tau * xi + chi) * xi * xi + 2.0
        dp = (6.0 * tau * xi + 2.0 * chi) * xi
        xi = xi - p / dp
    if xi.imag <= 0:
        raise DomainError(f"critical point collapsed onto the real axis at chi={chi}, tau={tau}")
    return complex(xi)


def exponent_gap_d(chi, tau):
    """d = -i(theta(xi) - i); Re(2d) vanishes exactly on the boundary curve."""
    xi = critical_point_xi(chi, tau)
    return -1j * (theta_phase(xi, chi, tau) - 1j)


def eta(chi, tau):
    """Square root of i theta''(xi) with positive real part (positive imaginary if Re = 0)."""
    xi = critical_point_xi(chi, tau)
    e2 = 1j * theta_phase_d2(xi, chi, tau)
    if e2 == 0:
        raise DomainError("degenerate critical point: theta''(xi) = 0")
    e = np.sqrt(e2)
    if e.real < 0 or (e.real == 0 and e.imag < 0):
        e = -e
    return complex(e)


def critical_point(chi, tau):
    xi = critical_point_xi(chi, tau)
    d = -1j * (theta_phase(xi, chi, tau) - 1j)
    return CriticalPoint(xi=xi, d=complex(d), eta=eta(chi, tau))


def k_gap(chi, tau):
    """Im(theta(xi) - theta(conj xi)) = 2 Im theta(xi)."""
    xi = critical_point_xi(chi, tau)
    return 2.0 * theta_phase(xi, chi, tau).imag


def boundary_polynomial(chi, tau):
    """The polynomial F(chi, tau) whose real zero set contains the boundary curve."""
    t2 = tau * tau
    t4 = t2 * t2
    c2 = chi * chi
    c4 = c2 * c2
    return (
        -4096.0 * t4
        + 1259712.0 * t4 * t2
        + 55296.0 * t4 * chi
        - 186624.0 * t4 * c2
        + 69984.0 * t4 * c2 * chi
        - 128.0 * t2 * c4
        + 864.0 * t2 * c4 * chi
        + 1296.0 * t2 * c4 * c2
        - c4 * c4
        + 8.0 * c4 * c4 * chi
    )


def _boundary_coefficients(tau):
    # coefficients of F(., tau) in descending powers of chi
    t2 = tau * tau
    t4 = t2 * t2
    return [8.0, -1.0, 0.0, 1296.0 * t2, 864.0 * t2, -128.0 * t2,
            69984.0 * t4, -186624.0 * t4, 55296.0 * t4, 1259712.0 * t4 * t2 - 4096.0 * t4]


def _chi_crit_integral(tau):
    lo = _chi_floor(tau)
    lo = lo + 1e-9 * max(1.0, abs(lo)) if tau != 0.0 else 1e-6
    hi = 1.0
    while k_gap(hi, tau) < 2.0:
        hi *= 2.0
    return brentq(lambda c: k_gap(c, tau) - 2.0, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=300)


def _chi_crit_polynomial(tau, near):
    coeffs = _boundary_coefficients(tau)
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) <= 1e-6 * np.maximum(1.0, np.abs(roots))].real
    if real.size == 0:
        real = roots.real
    c = float(real[np.argmin(np.abs(real - near))])
    dcoef = np.polyder(coeffs)
    for _ in range(4):
        step = np.polyval(coeffs, c) / np.polyval(dcoef, c)
        if not np.isfinite(step):
            break
        c -= step
    return c


def chi_crit_both(tau):
    """Return ``(chi_integral, chi_polynomial)``."""
    tau = float(tau)
    ci = _chi_crit_integral(tau)
    cp = _chi_crit_polynomial(tau, ci)
    return ci, cp


def chi_crit(tau, check=True):
    """Boundary curve chi_c(tau), checked against the polynomial route."""
    ci, cp = chi_crit_both(tau)
    if check and abs(ci - cp) > 1e-6 * max(1.0, abs(ci)):
        raise ConsistencyError(
            f"boundary curve routes disagree at tau={tau}: integral {ci!r}, polynomial {cp!r}"
        )
    return ci


def chi_crit_slope(tau):
    """chi_c'(tau) = -2 Re xi(chi_c(tau), tau)."""
    cc = chi_crit(tau)
    return -2.0 * critical_point_xi(cc, tau).real


def boundary_point(u, v):
    """Point (chi, tau, lambda) of the boundary parametrised by xi = u + iv."""
    r2 = u * u + v * v
    return (2 * v * v - 6 * u * u) / (r2 * r2), 2 * u / (r2 * r2), -2.0 * r2 * r2
