"""Characteristic speeds of the genus-one Whitham system and a finite-difference check."""

import logging
from dataclasses import dataclass

import numpy as np

from . import contour
from . import elliptic_data as ed_mod
from .errors import DomainError
from .phase import chi_crit
from .settings import DEFAULT
from .spectral import solve_lambda

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModulationState:
    z: tuple
    s: tuple
    Sigma1: complex
    Sigma2: complex
    Sigma3: complex


def quartet(alpha, beta):
    return (complex(alpha), complex(beta), complex(alpha).conjugate(), complex(beta).conjugate())


def symmetric_sums(zs):
    z = np.asarray(zs, dtype=complex)
    s1 = z.sum()
    s2 = sum(z[i] * z[j] for i in range(4) for j in range(i + 1, 4))
    s3 = sum(z[i] * z[j] * z[k] for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    return complex(s1), complex(s2), complex(s3)


def _check_separation(zs):
    z = np.asarray(zs)
    gap = min(abs(z[i] - z[j]) for i in range(4) for j in range(i + 1, 4))
    if gap < 1e-8:
        log.warning("near-coalescent quartet (min gap %.2e): speeds are ill-conditioned", gap)


def speeds_polynomial(zs, I):
    """Ratio-of-polynomials form in the moments I_0 .. I_2."""
    S1, S2, S3 = symmetric_sums(zs)
    I0, I1, I2 = I[0], I[1], I[2]
    out = []
    for z in zs:
        num = (2 * I0 * z ** 3 - S1 * I0 * z ** 2 + (S2 - 0.25 * S1 ** 2) * I0 * z
               - 0.5 * S1 * I2 + 0.25 * S1 ** 2 * I1 - 0.5 * S3 * I0)
        den = -I0 * z ** 2 + 0.5 * S1 * I0 * z + I2 - 0.5 * S1 * I1
        out.append(complex(num / den))
    return tuple(out)


def _pole_loop_integral(curve, z, rho_scale=1.0):
    # clockwise loop around the beta cut, kept clear of the alpha cut and of z
    a, b = curve.alpha, curve.beta
    obstacles = [z] if abs(z - b) > 1e-12 and abs(z - b.conjugate()) > 1e-12 else []
    zl, dzl = ed_mod.beta_loop(curve, extra=obstacles)
    if rho_scale != 1.0:
        rho = contour.safe_radius(b, b.conjugate(), np.concatenate(
            [contour.segment_samples(a.conjugate(), a), np.asarray(obstacles, complex)]), cap=ed_mod._LOOP_CAP)
        zl, dzl = contour.bernstein_loop(b, b.conjugate(), rho * rho_scale)
    return contour.trapezoid_loop(lambda w: 1.0 / (contour.r_tilde(w, a, b) * (w - z)), zl, dzl)


def speeds_contour(curve, I0=None, rho_scale=1.0):
    """Contour form: -Sigma1/2 + 4 pi i I_0 / loop(dw / (R~ (w - z))).

    ``I_0`` is the loop moment normalised by 1/(4 pi i), matching the segment form.
    """
    zs = quartet(curve.alpha, curve.beta)
    S1 = sum(zs)
    if I0 is None:
        I0 = ed_mod.i_p_loop(curve, 0)
    return tuple(complex(-0.5 * S1 + 4j * np.pi * I0 / _pole_loop_integral(curve, z, rho_scale)) for z in zs)


def moment_identity(zs, I):
    S1, S2, S3 = symmetric_sums(zs)
    return complex(2 * I[3] - 1.5 * S1 * I[2] + S2 * I[1] - 0.5 * S3 * I[0])


def characteristic_speeds(curve, settings=DEFAULT):
    """Both speed formulas; returns (state, contour_speeds)."""
    zs = quartet(curve.alpha, curve.beta)
    _check_separation(zs)
    I = tuple(ed_mod.i_p_segment(curve, p, settings) for p in range(4))
    poly = speeds_polynomial(zs, I)
    cont = speeds_contour(curve, I[0])
    S1, S2, S3 = symmetric_sums(zs)
    return ModulationState(zs, poly, S1, S2, S3), cont


def _roots(chi, tau, settings):
    c = solve_lambda(chi, tau, settings)
    return np.array(quartet(c.alpha, c.beta))


def whitham_residual(chi, tau, h=1e-3, settings=DEFAULT):
    """Centred-difference residuals dz/dtau + s dz/dchi for the four invariants."""
    for dc, dt in ((-h, 0), (h, 0), (0, -h), (0, h)):
        if chi + dc <= chi_crit(tau + dt):
            raise DomainError(f"stencil point ({chi + dc}, {tau + dt}) is not above the boundary curve")
    curve = solve_lambda(chi, tau, settings)
    state, _ = characteristic_speeds(curve, settings)
    zc = (_roots(chi + h, tau, settings) - _roots(chi - h, tau, settings)) / (2 * h)
    zt = (_roots(chi, tau + h, settings) - _roots(chi, tau - h, settings)) / (2 * h)
    s = np.array(state.s)
    return zt + s * zc, zc
