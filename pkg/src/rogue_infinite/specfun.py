"""Complete elliptic integrals, Jacobi elliptic functions and the genus-one theta function.

The theta function uses the normalization

    Theta(w; H) = sum_n exp(n**2 H / 2 + n w),     H < 0,

which is 2*pi*i periodic in ``w`` and quasi-periodic under ``w -> w + H``.
"""

from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError
from .settings import DEFAULT

_NEAR_ONE = 1e-15


def _check_parameter(m):
    m = float(m)
    if not (0.0 <= m < 1.0) or np.isnan(m):
        raise DomainError(f"elliptic parameter m={m!r} outside [0, 1)")
    if 1.0 - m < _NEAR_ONE:
        raise DomainError(
            f"elliptic parameter m={m!r} is within {_NEAR_ONE:g} of 1 where "
            "K(m) diverges logarithmically"
        )
    return m


def ellip_k(m):
    """Complete elliptic integral of the first kind K(m), parameter convention."""
    m = _check_parameter(m)
    # ellipkm1 keeps full relative accuracy as m approaches 1
    return float(special.ellipkm1(1.0 - m)) if m > 0.5 else float(special.ellipk(m))


def ellip_k_complement(m):
    """K(1 - m), keeping relative accuracy for small ``m`` in (0, 1]."""
    m = float(m)
    if not (0.0 < m <= 1.0):
        raise DomainError(f"K(1 - m) needs 0 < m <= 1, got m={m!r}")
    if m < _NEAR_ONE:
        raise DomainError(f"K(1 - m) diverges logarithmically as m -> 0 (m={m!r})")
    return float(special.ellipkm1(m))


def ellip_e(m):
    """Complete elliptic integral of the second kind E(m)."""
    m = _check_parameter(m)
    return float(special.ellipe(m))


def _agm_table(m):
    a, b, c = 1.0, np.sqrt(1.0 - m), np.sqrt(m)
    table = [(a, c)]
    while abs(c) > 1e-17 * a and len(table) < 64:
        a, b, c = 0.5 * (a + b), np.sqrt(a * b), 0.5 * (a - b)
        table.append((a, c))
    return table


def jacobi_ellip(u, m):
    """Return ``(sn, cn, dn)`` for real ``u`` and ``0 <= m < 1``.

    The argument is first reduced modulo the real period 4K(m); the reduced
    value is then passed through the descending Landen (Gauss) sequence and
    the amplitude is recovered by the backward recursion.
    """
    m = float(m)
    if not (0.0 <= m < 1.0):
        raise DomainError(f"jacobi functions need 0 <= m < 1, got m={m!r}")
    u = np.asarray(u, dtype=float)
    if m == 0.0:
        return np.sin(u), np.cos(u), np.ones_like(u)
    if 1.0 - m < _NEAR_ONE:
        return _jacobi_near_one(u, m)
    quarter = ellip_k(m)
    period = 4.0 * quarter
    ur = u - period * np.round(u / period)
    table = _agm_table(m)
    n = len(table) - 1
    phi = (2.0 ** n) * table[-1][0] * ur
    for a, c in reversed(table[1:]):
        phi = 0.5 * (phi + np.arcsin(np.clip(c * np.sin(phi) / a, -1.0, 1.0)))
    sn = np.sin(phi)
    cn = np.cos(phi)
    dn = np.sqrt(1.0 - m * sn * sn)
    return sn, cn, dn


def _jacobi_near_one(u, m):
    # first-order expansion about the hyperbolic limit; only reached when
    # 1 - m is below the resolution of K(m), so the real period is huge
    m1 = 1.0 - m
    t, s, c = np.tanh(u), np.sinh(u), np.cosh(u)
    sech = 1.0 / c
    corr = 0.25 * m1 * (s * c - u)
    sn = t + corr * sech * sech
    cn = sech - corr * t * sech
    dn = sech + 0.25 * m1 * (s * c + u) * t * sech
    return sn, cn, dn


def jacobi_sn(u, m):
    return jacobi_ellip(u, m)[0]


def jacobi_cn(u, m):
    return jacobi_ellip(u, m)[1]


def jacobi_dn(u, m):
    return jacobi_ellip(u, m)[2]


def jacobi_sc(u, m):
    sn, cn, _ = jacobi_ellip(u, m)
    return sn / cn


@dataclass(frozen=True)
class ThetaParams:
    """Lattice parameter ``H < 0`` and the series truncation tolerance."""

    H: float
    truncation_tol: float = DEFAULT.theta_tol

    def __post_init__(self):
        if not np.isfinite(self.H) or self.H >= 0:
            raise DomainError(f"theta lattice parameter must satisfy H < 0, got {self.H!r}")
        if not (0 < self.truncation_tol < 1):
            raise DomainError("truncation_tol must lie in (0, 1)")


def _as_params(params):
    return params if isinstance(params, ThetaParams) else ThetaParams(float(params))


def _direct(w, H, tol, deriv):
    # n-window centred on the peak of n**2 H/2 + n Re(w)
    centre = -w.real / H
    half = int(np.ceil(np.sqrt(2.0 * (np.log(1.0 / tol) + 5.0) / -H))) + 1
    lo = int(np.floor(centre.min())) - half
    hi = int(np.ceil(centre.max())) + half
    n = np.arange(lo, hi + 1, dtype=float)
    expo = 0.5 * H * n * n + w[..., None] * n
    terms = np.exp(expo)
    if deriv:
        terms = terms * n
    return terms.sum(axis=-1)


def _poisson(w, H, tol, deriv):
    # Theta(w;H) = sqrt(2 pi/|H|) sum_k exp((w - 2 pi i k)^2 / (2|H|))
    a = -H
    centre = w.imag / (2.0 * np.pi)
    half = int(np.ceil(np.sqrt(2.0 * a * (np.log(1.0 / tol) + 5.0)) / (2.0 * np.pi))) + 1
    lo = int(np.floor(centre.min())) - half
    hi = int(np.ceil(centre.max())) + half
    k = np.arange(lo, hi + 1, dtype=float)
    shifted = w[..., None] - 2j * np.pi * k
    terms = np.exp(shifted * shifted / (2.0 * a))
    if deriv:
        terms = terms * shifted / a
    return np.sqrt(2.0 * np.pi / a) * terms.sum(axis=-1)


def _theta_eval(w, params, regime, deriv, settings):
    params = _as_params(params)
    H = params.H
    w_arr = np.asarray(w, dtype=complex)
    flat = np.atleast_1d(w_arr).ravel()
    if regime is None:
        regime = "direct" if H <= settings.theta_switch else "poisson"
    if regime == "direct":
        out = _direct(flat, H, params.truncation_tol, deriv)
    elif regime == "poisson":
        out = _poisson(flat, H, params.truncation_tol, deriv)
    else:
        raise ValueError(f"unknown theta regime {regime!r}")
    out = out.reshape(w_arr.shape)
    return complex(out) if out.ndim == 0 else out


def theta(w, params, regime=None, settings=DEFAULT):
    """Evaluate Theta(w; H).

    ``params`` is a :class:`ThetaParams` or a bare negative float.  The
    direct series is used for ``H <= settings.theta_switch`` and the
    Poisson-resummed series above it; ``regime`` forces one or the other.
    """
    return _theta_eval(w, params, regime, False, settings)


def theta_prime(w, params, regime=None, settings=DEFAULT):
    """Derivative of Theta(w; H) with respect to ``w``."""
    return _theta_eval(w, params, regime, True, settings)


def riemann_constant(H):
    """The zero iπ + H/2 of Theta(·; H) in the fundamental cell."""
    return 1j * np.pi + 0.5 * float(H)
