"""Genus-one scalar data attached to a labelled quartet ``alpha, beta`` and conjugates.

Conventions:

* ``R`` is the branch with cuts on the chords alpha-beta and their mirror
  images, ``R ~ z**2`` at infinity and ``R > 0`` on the real axis.
* ``R~`` ("r tilde") has vertical cuts through alpha and through beta; it
  equals ``-R`` inside the trapezoid spanned by the four roots.
* The Abel map is ``A(z) = (2 pi i / I_A) * int_alpha^z dw / R(w)`` on the
  plane cut along alpha -> beta -> conj(beta) -> conj(alpha).
"""

import logging
from dataclasses import dataclass

import numpy as np

from . import contour
from .contour import integrate, r_chord, r_chord_left, r_chord_near_alpha, r_tilde
from .errors import AccuracyError, DomainError
from .settings import DEFAULT
from .specfun import ellip_k, ellip_k_complement
from .spectral import SpectralCurve, conjugate_path_integral, inverse_r_near

log = logging.getLogger(__name__)

_LOOP_CAP = float(np.arccosh(1.5))


@dataclass(frozen=True)
class Circle:
    x: float
    rho: float
    theta_alpha: float
    theta_beta: float
    t_alpha: float
    t_beta: float
    vertical: bool = False


@dataclass(frozen=True)
class EllipticData:
    curve: SpectralCurve
    x: float
    rho: float
    theta_alpha: float
    theta_beta: float
    m: float
    m1: float
    H: float
    I_A: complex
    I_B: float
    I_p: tuple
    z0: float
    A_inf: complex
    A_z0: complex
    Delta: float
    phi: float
    g1: float
    r3: float
    r4: float

    @property
    def alpha(self):
        return self.curve.alpha

    @property
    def beta(self):
        return self.curve.beta

    @property
    def eta_abel(self):
        """Re(2 A(infinity))."""
        return 2.0 * self.A_inf.real


def _drop_imag(value, what, settings=DEFAULT):
    value = complex(value)
    if abs(value.imag) > settings.im_discard * max(1.0, abs(value.real)):
        log.warning("%s has imaginary part %.3e", what, value.imag)
    return value.real


def _half_tan(p, x, rho):
    dx = p.real - x
    return p.imag / (rho + dx) if dx >= 0 else (rho - dx) / p.imag


def circle_geometry(alpha, beta):
    """Centre, radius and polar angles of the circle through the quartet."""
    alpha, beta = complex(alpha), complex(beta)
    if alpha.imag <= 0 or beta.imag <= 0:
        raise DomainError("alpha and beta must lie in the upper half plane")
    gap = beta.real - alpha.real
    if abs(gap) <= 1e-14 * max(abs(alpha), abs(beta)):
        # the circle degenerates into the vertical line through both roots;
        # only the ratio of half-angle tangents survives
        return Circle(np.inf, np.inf, 0.0, 0.0, alpha.imag, beta.imag, vertical=True)
    x = (abs(beta) ** 2 - abs(alpha) ** 2) / (2.0 * gap)
    rho = abs(alpha - beta) * abs(alpha - beta.conjugate()) / (2.0 * abs(gap))
    ta = np.arctan2(alpha.imag, alpha.real - x)
    tb = np.arctan2(beta.imag, beta.real - x)
    return Circle(float(x), float(rho), float(ta), float(tb),
                  float(_half_tan(alpha, x, rho)), float(_half_tan(beta, x, rho)))


def elliptic_params(theta_alpha, theta_beta):
    """(m, m1, H) from the polar angles, 0 < theta_beta < theta_alpha < pi."""
    if not (0.0 < theta_beta < theta_alpha < np.pi):
        raise DomainError(f"angles out of order: theta_beta={theta_beta}, theta_alpha={theta_alpha}")
    return _params_from_tangents(np.tan(0.5 * theta_alpha), np.tan(0.5 * theta_beta))


def m1_from_angles(theta_alpha, theta_beta):
    return np.sin(theta_alpha) * np.sin(theta_beta) / np.sin(0.5 * (theta_alpha + theta_beta)) ** 2


def _params_from_tangents(t_alpha, t_beta):
    q = t_beta / t_alpha
    m = q * q
    m1 = 4.0 * t_alpha * t_beta / (t_alpha + t_beta) ** 2
    H = -np.pi * ellip_k_complement(m) / ellip_k(m)
    return float(m), float(m1), float(H)


def lattice_parameters(circle):
    return _params_from_tangents(circle.t_alpha, circle.t_beta)


def i_a_closed_form(circle, m):
    return 2j * ellip_k(m) / (circle.rho * np.sin(0.5 * circle.theta_alpha) * np.cos(0.5 * circle.theta_beta))


def period_a(curve, settings=DEFAULT):
    """I_A = 2 * int_{conj alpha}^{alpha} dz / R."""
    return 2.0 * conjugate_path_integral(lambda z: 1.0 / curve.R(z), curve.alpha, curve.beta, settings,
                                         near=inverse_r_near(curve))


def _real_line_integral(fun, nodes, settings=DEFAULT):
    lo, hi = min(nodes) - 1.0, max(nodes) + 1.0
    parts = [
        integrate(fun, -np.inf, lo, settings),
        integrate(fun, lo, hi, settings, points=sorted(set(nodes))),
        integrate(fun, hi, np.inf, settings),
    ]
    return sum(parts)


def period_b(curve, settings=DEFAULT):
    """I_B = -int_R dx / R(x), the collapsed clockwise loop about the alpha-beta cut."""
    a, b = curve.alpha, curve.beta
    val = _real_line_integral(lambda x: 1.0 / r_chord(x, a, b), [a.real, b.real], settings)
    return -val.real


def period_b_loop(curve):
    """I_B as a clockwise loop integral around the alpha-beta chord."""
    a, b = curve.alpha, curve.beta
    obstacles = contour.segment_samples(a.conjugate(), b.conjugate())
    rho = contour.safe_radius(a, b, obstacles)
    z, dz = contour.bernstein_loop(a, b, rho)
    return contour.trapezoid_loop(lambda w: 1.0 / r_chord(w, a, b), z, dz)


def i_p_segment(curve, p, settings=DEFAULT):
    """I_p = (1/(2 pi i)) int_{beta}^{conj beta} w**p dw / R(w) along Re w = Re beta."""
    a, b = curve.alpha, curve.beta
    y = b.imag

    def fun(s):
        # offsets from beta and conj(beta) in half-angle form stay exact at both ends
        t = 0.5 * s + 0.25 * np.pi
        d_top = -2j * y * np.sin(t) ** 2
        d_bot = 2j * y * np.cos(t) ** 2
        R = contour.sqrt_chord_offset(d_top, a, b) * np.conj(contour.sqrt_chord_offset(np.conj(d_bot), a, b))
        if R == 0:
            return 0j  # endpoint; the integrand is integrable there
        return (b + d_top) ** p / R * (-1j * y * np.cos(s))

    val = integrate(fun, -0.5 * np.pi, 0.5 * np.pi, settings, points=_near_alpha_nodes(a, b))
    return val / (2j * np.pi)


def _near_alpha_nodes(a, b):
    # near the boundary curve alpha sits next to the start of the path; grade the
    # breakpoints geometrically in distance from beta (|w - beta| ~ Im(beta) u**2 / 2)
    gap = abs(a - b) / b.imag
    if gap > 0.1:
        return None
    u = np.sqrt(2.0 * gap * 2.0 ** np.arange(-6.0, 8.0))
    return [float(-0.5 * np.pi + t) for t in u if t < 1.0]


def beta_loop(curve, extra=()):
    """Clockwise ellipse about the vertical beta cut avoiding the alpha cut."""
    a, b = curve.alpha, curve.beta
    obstacles = np.concatenate([contour.segment_samples(a.conjugate(), a), np.asarray(extra, complex)])
    rho = contour.safe_radius(b, b.conjugate(), obstacles, cap=_LOOP_CAP)
    return contour.bernstein_loop(b, b.conjugate(), rho)


def i_p_loop(curve, p):
    """I_p = (1/(4 pi i)) * loop integral of w**p / R~ about the beta cut."""
    a, b = curve.alpha, curve.beta
    z, dz = beta_loop(curve)
    val = contour.trapezoid_loop(lambda w: w ** p / r_tilde(w, a, b), z, dz)
    return val / (4j * np.pi)


def _abel_scale(I_A):
    return 2j * np.pi / I_A


def abel_infinity(curve, I_A, settings=DEFAULT):
    """A(infinity) along the upward vertical ray from alpha."""
    a, b = curve.alpha, curve.beta
    val = integrate(lambda u: 2j * u / r_chord_near_alpha(1j * u * u, a, b), 0.0, np.inf, settings)
    return _abel_scale(I_A) * val


def _down_from_alpha(a, b, settings):
    # int dz / R from alpha straight down to Re(alpha)
    y = a.imag
    return integrate(lambda s: -2j * y * np.sin(s) * np.cos(s) / r_chord_near_alpha(-1j * y * np.sin(s) ** 2, a, b),
                     0.0, 0.5 * np.pi, settings)


def abel_infinity_left(curve, I_A, settings=DEFAULT):
    """A(infinity) via alpha -> Re(alpha) -> -infinity along the real axis."""
    a, b = curve.alpha, curve.beta
    down = _down_from_alpha(a, b, settings)
    left = integrate(lambda x: 1.0 / r_chord(x, a, b), -np.inf, a.real, settings)
    return _abel_scale(I_A) * (down - left)


def z0_point(alpha, beta):
    alpha, beta = complex(alpha), complex(beta)
    den = beta.imag - alpha.imag
    if den == 0:
        raise DomainError("Im(alpha) = Im(beta): z0 is at infinity")
    return (alpha.conjugate() * beta).imag / den


def abel_z0(curve, I_A, A_inf, settings=DEFAULT):
    a, b = curve.alpha, curve.beta
    z0 = z0_point(a, b)
    R = lambda x: 1.0 / r_chord(x, a, b)
    if z0 > b.real:
        tail = integrate(R, z0, np.inf, settings)
        return z0, A_inf - _abel_scale(I_A) * tail
    down = _down_from_alpha(a, b, settings)
    if z0 < a.real - 4.0 * max(abs(a), abs(b), 1.0):
        # far to the left: go through -infinity to keep both legs short in 1/x
        along = integrate(R, -np.inf, z0, settings) - integrate(R, -np.inf, a.real, settings)
    else:
        along = integrate(R, a.real, z0, settings)
    return z0, _abel_scale(I_A) * (down + along)


def lattice_defect(A_z0, A_inf, H):
    """Residual of 2A(z0) + 2A(inf) = -2 pi i + H modulo the period lattice."""
    v = 2.0 * A_z0 + 2.0 * A_inf + 2j * np.pi - H
    n2 = np.round(v.real / H)
    n1 = np.round(v.imag / (2.0 * np.pi))
    return abs(v - n2 * H - 2j * np.pi * n1)


def _delta_integrand(curve):
    tau, g = curve.tau, curve.gamma
    return lambda z: (2.0 * tau * z - g) / (z * z)


def delta_chord(curve, settings=DEFAULT):
    """Delta = 2 int_{alpha -> beta} (2 tau z - gamma) R_+(z) / z**2 dz on the chord."""
    a, b = curve.alpha, curve.beta
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    w = _delta_integrand(curve)

    def fun(th):
        t = -np.cos(th)
        z = c + h * t
        return w(z) * r_chord_left(z, a, b) * h * np.sin(th)

    return 2.0 * integrate(fun, 0.0, np.pi, settings)


def delta_loop(curve):
    """The same quantity as a clockwise loop integral of h' about the chord."""
    a, b = curve.alpha, curve.beta
    obstacles = np.concatenate([contour.segment_samples(a.conjugate(), b.conjugate()), [0.0]])
    rho = contour.safe_radius(a, b, obstacles)
    z, dz = contour.bernstein_loop(a, b, rho)
    w = _delta_integrand(curve)
    return contour.trapezoid_loop(lambda s: w(s) * r_chord(s, a, b), z, dz)


def _laurent(curve):
    # R = P2 + delta, P2 = z^2 + a z + b, R^2 - P2^2 = e1 z + e0
    lam, tau, g = curve.lam, curve.tau, curve.gamma
    pa = 0.5 * tau * lam
    pb = 0.25 * g * lam
    e1 = -curve.s3 - 2.0 * pa * pb
    e0 = curve.s4 - pb * pb
    c2 = -(g * pb + 2.0)
    return pa, pb, e1, e0, c2


def gprime(z, curve):
    """g'(z) = h'(z) - theta'(z), evaluated without large-z cancellation."""
    pa, pb, e1, e0, c2 = _laurent(curve)
    z = np.asarray(z, dtype=complex)
    R = r_chord(z, curve.alpha, curve.beta)
    P2 = z * z + pa * z + pb
    s = R + P2
    d = np.where(np.abs(s) >= np.abs(R - P2), (e1 * z + e0) / np.where(s == 0, 1.0, s), R - P2)
    return c2 / (z * z) + (2.0 * curve.tau * z - curve.gamma) * d / (z * z)


def delta_real_line(curve, settings=DEFAULT):
    """-int_R g'(x) dx with a small upper semicircle around the origin."""
    a, b = curve.alpha, curve.beta
    r = 0.25 * min(1.0, abs(a), abs(b))
    gp = lambda x: gprime(x, curve)
    big = max(abs(a), abs(b)) + 1.0
    total = sum(integrate(gp, lo, hi, settings)
                for lo, hi in ((-np.inf, -big), (-big, -r), (r, big), (big, np.inf)))
    semi = integrate(lambda t: gp(r * np.exp(1j * t)) * 1j * r * np.exp(1j * t), np.pi, 0.0, settings)
    return -(total + semi)


def h_at_alpha(curve, settings=DEFAULT):
    """h(alpha) = theta(alpha) + g(alpha) with g(infinity) = 0, along the upward ray."""
    a = curve.alpha
    *_, c2 = _laurent(curve)
    # g(alpha) = -int_alpha^infinity g' dz; the c2/z^2 part is integrated exactly
    rest = integrate(lambda u: (gprime(a + 1j * u * u, curve) - c2 / (a + 1j * u * u) ** 2) * 2j * u,
                     0.0, np.inf, settings)
    g_alpha = -c2 / a - rest
    theta_a = curve.chi * a + curve.tau * a * a - 2.0 / a
    return theta_a + g_alpha


def g1_value(chi, tau, lam):
    """Coefficient of 1/z in g(z) at infinity."""
    g = tau * tau * lam - chi
    if g == 0:
        raise DomainError("tau**2 lam = chi is excluded")
    return (2.0 * g ** 3 + chi * g * g - 8.0 * tau * tau) * (8.0 + g * g * lam) / (4.0 * g ** 3)


def g1_from_laurent(curve):
    *_, e1, _e0, c2 = _laurent(curve)
    return -c2 - curve.tau * e1


def r3_r4(alpha, beta):
    zs = np.array([alpha, beta, np.conj(alpha), np.conj(beta)])
    e1 = zs.sum()
    e2 = sum(zs[i] * zs[j] for i in range(4) for j in range(i + 1, 4))
    return float((0.5 * e1).real), float(((3.0 * e1 * e1 - 4.0 * e2) / 8.0).real)


def elliptic_data(curve, settings=DEFAULT):
    """Assemble every scalar of :class:`EllipticData` for a solved spectral curve."""
    a, b = curve.alpha, curve.beta
    circ = circle_geometry(a, b)
    m, m1, H = lattice_parameters(circ)
    I_A = period_a(curve, settings)
    I_B = period_b(curve, settings)
    I_p = tuple(i_p_segment(curve, p, settings) for p in range(4))
    A_inf = abel_infinity(curve, I_A, settings)
    if a.imag != b.imag:
        z0, A_z0 = abel_z0(curve, I_A, A_inf, settings)
    else:
        z0, A_z0 = np.inf, complex(-np.conj(A_inf) + 0.5 * H - 1j * np.pi)
    Delta = _drop_imag(delta_chord(curve, settings), "Delta", settings)
    h_a = h_at_alpha(curve, settings)
    phi = _drop_imag(2.0 * (h_a - 1j), "phi", settings)
    r3, r4 = r3_r4(a, b)
    return EllipticData(
        curve=curve, x=circ.x, rho=circ.rho, theta_alpha=circ.theta_alpha, theta_beta=circ.theta_beta,
        m=m, m1=m1, H=H, I_A=I_A, I_B=I_B, I_p=I_p, z0=float(z0), A_inf=complex(A_inf),
        A_z0=complex(A_z0), Delta=Delta, phi=phi,
        g1=g1_value(curve.chi, curve.tau, curve.lam), r3=r3, r4=r4,
    )


def compute(chi, tau, settings=DEFAULT):
    from .spectral import solve_lambda

    return elliptic_data(solve_lambda(chi, tau, settings), settings)
