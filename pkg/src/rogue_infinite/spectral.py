"""The genus-one spectral curve: integral condition, quartic roots and discriminant regions.

For a real parameter ``lam`` the quartic is

    R(z)**2 = z**4 - s1 z**3 + s2 z**2 - s3 z + s4

with coefficients depending on ``(lam, chi, tau)``.  The physical value of
``lam`` is the unique zero of the real function ``f(lam)`` obtained by
integrating ``h'(z) = (2 tau z - gamma) R(z) / z**2`` between ``conj(alpha)``
and ``alpha``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import phase
from .contour import integrate, r_chord, r_chord_near_alpha
from .errors import ConfigurationError, DomainError, AccuracyError
from .settings import DEFAULT

TAU_HAT = 0.00573703


@dataclass(frozen=True)
class SpectralCurve:
    chi: float
    tau: float
    lam: float
    gamma: float
    s1: float
    s2: float
    s3: float
    s4: float
    alpha: complex
    beta: complex
    residual: float = 0.0

    @property
    def roots(self):
        return np.array([self.alpha, self.beta, np.conj(self.alpha), np.conj(self.beta)])

    def R(self, z):
        return r_chord(z, self.alpha, self.beta)

    def hprime(self, z):
        return hprime(z, self)


@dataclass(frozen=True)
class RegionReport:
    d2_plus: float
    d2_minus: float
    d1: float
    n_real: int
    configuration: str
    label: str


def symmetric_polys(lam, chi, tau):
    """(s1, s2, s3, s4) for the quartic at parameter ``lam``."""
    g = tau * tau * lam - chi
    if g == 0:
        raise DomainError("singular line tau**2 lam = chi")
    return (-tau * lam, 0.75 * tau * tau * lam * lam - 0.5 * chi * lam,
            -16.0 * tau / g ** 3, 4.0 / g ** 2)


def quartic_coefficients(lam, chi, tau):
    s1, s2, s3, s4 = symmetric_polys(lam, chi, tau)
    return np.array([1.0, -s1, s2, -s3, s4])


def _polish(coeffs, roots, steps=2):
    d = np.polyder(coeffs)
    out = []
    for r in roots:
        for _ in range(steps):
            dv = np.polyval(d, r)
            if dv == 0:
                break
            step = np.polyval(coeffs, r) / dv
            if not np.isfinite(step) or abs(step) > 0.1 * max(abs(r), 1e-300):
                break
            r = r - step
        out.append(r)
    return np.array(out)


def raw_roots(coeffs):
    return _polish(coeffs, np.roots(coeffs))


def _count_real(roots, rel=1e-9):
    scale = max(np.max(np.abs(roots)), 1e-300)
    return int(np.sum(np.abs(roots.imag) <= rel * scale))


def label_roots(roots):
    """Return (alpha, beta) from a conjugation-closed nonreal quartet."""
    upper = roots[roots.imag > 0]
    if upper.size != 2:
        raise ConfigurationError(f"expected two roots in the upper half plane, got {roots}")
    a, b = upper
    if a.real > b.real or (a.real == b.real and a.imag < b.imag):
        a, b = b, a
    return complex(a), complex(b)


def quartic_roots(coeffs):
    """Labelled ``(alpha, beta)`` with Im > 0 and Re(alpha) <= Re(beta)."""
    coeffs = np.asarray(coeffs, dtype=float)
    roots = raw_roots(coeffs)
    if _count_real(roots) > 0:
        raise ConfigurationError(f"quartic has real roots {roots}; not a complex quartet")
    # enforce exact conjugate symmetry before labelling
    up = roots[roots.imag > 0]
    if up.size != 2:
        raise ConfigurationError(f"roots not closed under conjugation: {roots}")
    return label_roots(np.concatenate([up, np.conj(up)]))


def discriminant_factors(lam, chi, tau):
    g = tau * tau * lam - chi
    d2p = g * g * lam + 8.0
    d2m = g * g * lam - 8.0
    d1 = 27.0 * g ** 5 * tau * tau * lam + 9.0 * chi * chi * g ** 4 + chi ** 3 * g ** 3 - 864.0 * tau ** 4
    return d2p, d2m, d1


def _poly_d2(chi, tau, sign):
    # (chi - tau^2 lam)^2 lam + sign*8 in descending powers of lam
    t2 = tau * tau
    return np.trim_zeros(np.array([t2 * t2, -2.0 * chi * t2, chi * chi, sign * 8.0]), "f")


def _poly_d1(chi, tau):
    P = np.polynomial.Polynomial
    t2 = tau * tau
    g = P([-chi, t2])
    lam = P([0.0, 1.0])
    d1 = 27.0 * g ** 5 * t2 * lam + 9.0 * chi * chi * g ** 4 + chi ** 3 * g ** 3 - 864.0 * t2 * t2
    c = d1.coef[::-1]
    return np.trim_zeros(c, "f")


def _real_roots(desc, rel=1e-7):
    if desc.size < 2:
        return np.array([])
    r = _polish(desc, np.roots(desc), steps=4)
    keep = np.abs(r.imag) <= rel * np.maximum(1.0, np.abs(r))
    return np.sort(r[keep].real)


def lambda_one(chi, tau):
    """The real root of the D2+ factor (perfect-square quartic)."""
    r = _real_roots(_poly_d2(chi, tau, +1.0))
    if r.size == 0:
        raise DomainError(f"no real root of D2+ at chi={chi}, tau={tau}")
    # unique whenever chi > -(54 tau^2)^(1/3)
    return float(r[0])


def lambda_max(chi, tau, lam1=None, chi_c=None):
    """Upper end of the bracket in which the quartet stays complex."""
    lam1 = lambda_one(chi, tau) if lam1 is None else lam1
    chi0 = np.cbrt(54.0 * tau * tau)
    use_d1 = abs(tau) > TAU_HAT and chi < chi0
    if use_d1:
        cand = _real_roots(_poly_d1(chi, tau))
    else:
        cand = _real_roots(_poly_d2(chi, tau, -1.0))
    cand = cand[cand > lam1]
    if cand.size == 0:
        other = _poly_d2(chi, tau, -1.0) if use_d1 else _poly_d1(chi, tau)
        cand = _real_roots(other)
        cand = cand[cand > lam1]
    if cand.size == 0:
        raise DomainError(f"no upper bracket for lambda at chi={chi}, tau={tau}")
    return float(cand[0])


def discriminant_region(chi, tau, lam, bracket=None):
    """Classify the root configuration of the quartic at ``lam``."""
    d2p, d2m, d1 = discriminant_factors(lam, chi, tau)
    roots = raw_roots(quartic_coefficients(lam, chi, tau))
    n_real = _count_real(roots, rel=1e-7)
    if n_real == 0:
        config = "complex-quartet"
        if bracket is None:
            try:
                lo = lambda_one(chi, tau)
                hi = lambda_max(chi, tau, lo)
            except DomainError:
                lo, hi = -np.inf, -np.inf
        else:
            lo, hi = bracket
        if lam < lo:
            label = "R-"
        elif lam <= hi:
            label = "R12"
        else:
            label = "complex-other"
    elif n_real >= 4:
        config, label = "four-real", "four-real"
    else:
        config, label = "two-real-pair", "two-real-pair"
    return RegionReport(d2p, d2m, d1, n_real, config, label)


def hprime(z, curve):
    g = curve.gamma
    return (2.0 * curve.tau * z - g) * r_chord(z, curve.alpha, curve.beta) / (z * z)


def _vertical_ok(alpha, beta):
    size = max(abs(alpha), abs(beta))
    return abs(alpha.real) >= 0.25 * abs(alpha) and (beta.real - alpha.real) > 1e-6 * size


def conjugate_path_integral(fun, alpha, beta, settings=DEFAULT, near=None):
    """Integral of ``fun(z) dz`` from conj(alpha) to alpha avoiding 0 and the cuts.

    ``fun`` may have an inverse square-root singularity at the endpoints.  If
    given, ``near(d, top)`` evaluates the integrand at ``alpha + d`` (``top``) or
    ``conj(alpha) + d`` from the exact offset, which matters when another root
    sits very close to ``alpha``.
    """
    a = complex(alpha)
    ac = a.conjugate()
    if near is None:
        near = lambda d, top: fun((a if top else ac) + d)
    y = a.imag
    if _vertical_ok(alpha, beta):
        # half-angle offsets: 1 -+ sin(s) = 2 sin(pi/4 -+ s/2)**2
        lower = integrate(lambda s: near(2j * y * np.sin(0.25 * np.pi + 0.5 * s) ** 2, False) * (1j * y * np.cos(s)),
                          -0.5 * np.pi, 0.0, settings)
        upper = integrate(lambda s: near(-2j * y * np.sin(0.25 * np.pi - 0.5 * s) ** 2, True) * (1j * y * np.cos(s)),
                          0.0, 0.5 * np.pi, settings)
        return lower + upper
    X = -2.0 * max(abs(alpha), abs(beta), 1.0)
    L = X - a.real
    top = integrate(lambda s: near(L * np.sin(s) ** 2, True) * (2.0 * L * np.sin(s) * np.cos(s)),
                    0.0, 0.5 * np.pi, settings)
    side = integrate(lambda s: fun(X + 1j * y * np.sin(s)) * (1j * y * np.cos(s)),
                     -0.5 * np.pi, 0.5 * np.pi, settings)
    bottom = integrate(lambda s: near(L * np.sin(s) ** 2, False) * (2.0 * L * np.sin(s) * np.cos(s)),
                       0.0, 0.5 * np.pi, settings)
    # the top leg is parametrised from alpha outwards, so it enters reversed
    return -top + side + bottom


def inverse_r_near(curve):
    """``near`` hook for :func:`conjugate_path_integral` with integrand 1/R."""
    a, b = curve.alpha, curve.beta

    def near(d, top):
        # R(conj z) = conj R(z)
        return 1.0 / (r_chord_near_alpha(d, a, b) if top else np.conj(r_chord_near_alpha(np.conj(d), a, b)))

    return near


def _has_repeated_real_root(roots, rel=1e-10):
    real = np.sort(roots[np.abs(roots.imag) <= 1e-7 * max(1.0, np.max(np.abs(roots)))].real)
    scale = max(1.0, np.max(np.abs(roots)))
    return real.size >= 2 and np.min(np.diff(real)) < max(rel * scale, 1e-7 * scale)


def make_curve(lam, chi, tau):
    s1, s2, s3, s4 = symmetric_polys(lam, chi, tau)
    coeffs = np.array([1.0, -s1, s2, -s3, s4])
    alpha, beta = quartic_roots(coeffs)
    res = max(abs(np.polyval(coeffs, alpha)), abs(np.polyval(coeffs, beta)))
    return SpectralCurve(float(chi), float(tau), float(lam), tau * tau * lam - chi,
                         s1, s2, s3, s4, alpha, beta, float(res))


def curve_from_roots(alpha, beta):
    """Curve carrying only a labelled quartet; the (chi, tau, lam) slots are NaN."""
    alpha, beta = complex(alpha), complex(beta)
    if alpha.imag <= 0 or beta.imag <= 0:
        raise DomainError("alpha and beta must lie in the upper half plane")
    alpha, beta = label_roots(np.array([alpha, beta, alpha.conjugate(), beta.conjugate()]))
    c = np.poly([alpha, beta, alpha.conjugate(), beta.conjugate()]).real
    nan = float("nan")
    return SpectralCurve(nan, nan, nan, nan, -c[1], c[2], -c[3], c[4], alpha, beta, 0.0)


def integral_condition_f(lam, chi, tau, settings=DEFAULT, return_imag=False):
    """f(lam) = -i (integral of h' from conj(alpha) to alpha - 2i)."""
    coeffs = quartic_coefficients(lam, chi, tau)
    roots = raw_roots(coeffs)
    if _count_real(roots, rel=1e-9) > 0:
        if _has_repeated_real_root(roots):
            return (-2.0, 0.0) if return_imag else -2.0
        raise ConfigurationError(f"quartic at lam={lam} has simple real roots; f is undefined")
    curve = make_curve(lam, chi, tau)
    val = -1j * (conjugate_path_integral(curve.hprime, curve.alpha, curve.beta, settings) - 2j)
    return (val.real, val.imag) if return_imag else val.real


def q_polynomial(lam, chi, tau):
    g = tau * tau * lam - chi
    return 6.0 * g ** 6 + 6.0 * chi * g ** 5 + chi * chi * g ** 4 + 192.0 * tau ** 4


def f_lambda_derivative(lam, chi, tau, settings=DEFAULT):
    """d f / d lam via the period of dz/R between conj(alpha) and alpha."""
    curve = make_curve(lam, chi, tau)
    g = curve.gamma
    per = conjugate_path_integral(lambda z: 1.0 / curve.R(z), curve.alpha, curve.beta, settings,
                                  near=inverse_r_near(curve))
    return (1j * q_polynomial(lam, chi, tau) / (4.0 * g ** 4) * per).real


def solve_lambda(chi, tau, settings=DEFAULT, chi_c=None):
    """Unique zero of f in (lambda_1, lambda_max); returns the spectral curve."""
    chi, tau = float(chi), float(tau)
    cc = phase.chi_crit(tau) if chi_c is None else chi_c
    if chi <= cc:
        raise DomainError(f"chi={chi} is not above the boundary curve chi_c({tau})={cc}")
    lo = lambda_one(chi, tau)
    hi = lambda_max(chi, tau, lo)
    f_lo = phase.k_gap(chi, tau) - 2.0
    f_hi = -2.0

    def fun(lam):
        if lam <= lo:
            return f_lo
        if lam >= hi:
            return f_hi
        return integral_condition_f(lam, chi, tau, settings)

    if not (f_lo > 0 > f_hi):
        raise AccuracyError(f"lambda bracket failed: ({lo}, {hi}) with f = ({f_lo}, {f_hi})")
    width = hi - lo
    lam = brentq(fun, lo, hi, xtol=1e-15 * max(abs(lo), abs(hi)), rtol=1e-15, maxiter=200)
    fv = fun(lam)
    near = (lam - lo) < settings.near_critical_gap * max(1.0, abs(lo)) or width < settings.near_critical_gap
    if not near:
        for _ in range(2):
            if abs(fv) <= 1e-14:
                break
            trial = lam - fv / f_lambda_derivative(lam, chi, tau, settings)
            if not (lo < trial < hi):
                break
            ft = fun(trial)
            if abs(ft) >= abs(fv):
                break
            lam, fv = trial, ft
    limit = settings.near_critical_gap if near else settings.lambda_tol
    if abs(fv) > limit:
        raise AccuracyError(f"|f(lambda)|={abs(fv):g} above {limit:g} at chi={chi}, tau={tau}")
    return make_curve(lam, chi, tau)
