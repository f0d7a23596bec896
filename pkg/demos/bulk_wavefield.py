"""
Boundary curve and bulk wavefield
=================================

Walk from the quiet region across the boundary curve into the oscillatory
bulk at a fixed rescaled time, and print the amplitude next to its envelope.
"""

# %%
# The boundary curve
# ------------------
# Below ``chi_c(tau)`` the rescaled field is exponentially small.  The curve
# passes through (1/8, 0) and is even in tau.
import numpy as np

from rogue_infinite import chi_crit, compute_elliptic_data
from rogue_infinite.phase import chi_crit_slope
from rogue_infinite.wavefield import sample

for tau in (-1.0, -0.5, 0.0, 0.5, 1.0):
    print(f"tau={tau:+.2f}  chi_c={chi_crit(tau):.12f}  slope={chi_crit_slope(tau) + 0.0:+.6f}")

# %%
# A slice at tau = 0.3
# --------------------
# For M = 40 the bulk oscillates between the envelope bounds
# ``(Im alpha - Im beta)**2`` and ``(Im alpha + Im beta)**2``.
tau, M = 0.3, 40.0
cc = chi_crit(tau)
print(f"\nslice tau={tau}, M={M}, chi_c={cc:.6f}")
print(f"{'chi':>8} {'|psi|^2':>12} {'lower':>10} {'upper':>10}")
for chi in np.linspace(cc - 0.1, cc + 1.0, 12):
    s = sample(chi, tau, M)
    print(f"{chi:8.4f} {s.abs2:12.6f} {s.env_lo ** 2:10.6f} {s.env_hi ** 2:10.6f}")

# %%
# Elliptic data at one point
# --------------------------
# The two ways of computing the lattice parameter agree.
d = compute_elliptic_data(1.0, 0.3)
print(f"\nm={d.m:.10f}  m1={d.m1:.10f}")
print(f"H (elliptic integrals)   = {d.H:.14f}")
print(f"H (ratio of periods)     = {(2j * np.pi * d.I_B / d.I_A).real:.14f}")
print(f"Delta={d.Delta:.12f}  phi={d.phi:.12f}")
