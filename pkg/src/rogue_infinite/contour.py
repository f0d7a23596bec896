"""Quadrature along parametrised complex paths, and the two square-root branches of the quartic."""

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import AccuracyError
from .settings import DEFAULT


def integrate(fun, a, b, settings=DEFAULT, points=None, scale=None):
    """Adaptive Gauss-Kronrod integral of a complex-valued ``fun`` over real ``[a, b]``."""
    if b < a:
        # quad's complex path does not honour reversed limits
        return -integrate(fun, b, a, settings, points, scale)
    with warnings.catch_warnings():
        # the request sits at the roundoff floor; the estimate is checked below
        warnings.simplefilter("ignore", IntegrationWarning)
        val, err = quad(
            fun, a, b, complex_func=True, epsabs=0.0, epsrel=settings.quad_rel,
            limit=settings.quad_limit, points=points,
        )
    err = abs(complex(err))
    ref = abs(val) if scale is None else max(abs(val), scale)
    if not np.isfinite(val) or err > max(1e-9 * ref, 1e-13):
        raise AccuracyError(f"quadrature did not converge: value {val}, error estimate {err:g}")
    return complex(val)


def path_integral(fun, path, dpath, s0, s1, settings=DEFAULT, scale=None):
    """Integral of ``fun(z) dz`` along ``z = path(s)``, ``s`` from ``s0`` to ``s1``."""
    return integrate(lambda s: fun(path(s)) * dpath(s), s0, s1, settings, scale=scale)


def trapezoid_loop(fun, loop, dloop, n0=256, tol=1e-14, nmax=2 ** 20):
    """Periodic trapezoid rule for a closed loop parametrised on ``[0, 2 pi)``.

    The node count doubles until two successive values agree to ``tol``.
    """
    n = n0
    prev = None
    while n <= nmax:
        t = 2.0 * np.pi * np.arange(n) / n
        val = np.sum(fun(loop(t)) * dloop(t)) * (2.0 * np.pi / n)
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return complex(val)
        prev = val
        n *= 2
    raise AccuracyError(f"loop quadrature did not settle with {nmax} nodes")


def sqrt_chord(z, p, q):
    """Branch of sqrt((z - p)(z - q)) ~ z at infinity, cut on the segment [p, q]."""
    c = 0.5 * (p + q)
    u = z - c
    # (z - p)(z - q) / u**2 equals 1 - (h/u)**2 but keeps its digits near p and q
    return u * np.sqrt((z - p) * (z - q) / (u * u))


def sqrt_chord_offset(d, p, q):
    """``sqrt_chord(q + d, p, q)`` evaluated from the offset ``d`` without cancellation."""
    u = d + 0.5 * (q - p)
    return u * np.sqrt((d + (q - p)) * d / (u * u))


def r_chord(z, alpha, beta):
    """R(z) ~ z**2 with cuts on the segments alpha-beta and conj(alpha)-conj(beta).

    ``R`` is positive on the real axis.
    """
    z = np.asarray(z, dtype=complex)
    return sqrt_chord(z, alpha, beta) * np.conj(sqrt_chord(np.conj(z), alpha, beta))


def r_chord_left(z, alpha, beta):
    """Boundary value of ``r_chord`` on the alpha-beta segment from its left side."""
    z = np.asarray(z, dtype=complex)
    c = 0.5 * (alpha + beta)
    h = 0.5 * (beta - alpha)
    t = ((z - c) / h).real
    upper = h * 1j * np.sqrt(np.clip(1.0 - t * t, 0.0, None))
    return upper * np.conj(sqrt_chord(np.conj(z), alpha, beta))


def sqrt_vertical(z, p):
    """Branch of sqrt((z - p)(z - conj p)) ~ z - Re p, cut on the vertical segment conj(p)..p."""
    u = z - p.real
    return u * np.sqrt(1.0 + (p.imag / u) ** 2)


def r_chord_near_alpha(d, alpha, beta):
    """``r_chord(alpha + d, alpha, beta)`` with the small offset ``d`` kept exact."""
    z = alpha + d
    return sqrt_chord_offset(d, beta, alpha) * np.conj(sqrt_chord(np.conj(z), alpha, beta))


def r_tilde(z, alpha, beta):
    """The second branch, with vertical cuts through alpha and through beta."""
    z = np.asarray(z, dtype=complex)
    return sqrt_vertical(z, alpha) * sqrt_vertical(z, beta)


def bernstein_loop(p, q, rho):
    """Clockwise ellipse with foci ``p`` and ``q``; returns ``(z(t), z'(t))``."""
    c = 0.5 * (p + q)
    h = 0.5 * (q - p)

    def z(t):
        return c + h * np.cos(t + 1j * rho)

    def dz(t):
        return -h * np.sin(t + 1j * rho)

    return z, dz


def elliptic_radius(w, p, q):
    """Elliptic-coordinate radius of ``w`` relative to the focal segment ``[p, q]``."""
    c = 0.5 * (p + q)
    h = 0.5 * (q - p)
    zeta = (np.asarray(w, dtype=complex) - c) / h
    return np.abs(np.arccosh(zeta).real)


def safe_radius(p, q, obstacles, cap=1.0):
    """Half the elliptic radius of the nearest obstacle, capped at ``cap``."""
    rho = elliptic_radius(obstacles, p, q)
    return float(min(cap, 0.5 * np.min(rho)))


def segment_samples(p, q, n=64):
    s = np.linspace(0.0, 1.0, n)
    return p + (q - p) * s
