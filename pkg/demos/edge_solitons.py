"""
Solitons at the edge
====================

Near the boundary curve the field is a train of well separated pulses.  This
script locates the pulse centres for several M and compares one pulse with
the exact soliton it approaches.
"""

# %%
# Where the pulses sit
# --------------------
# Pulse n is centred where Phi_n vanishes.  The centres move toward the
# boundary curve, and their spacing shrinks like ln(M)/M.
import math

import numpy as np

from rogue_infinite import chi_crit, edge

tau = 0.4
cc = chi_crit(tau)
for M in (1e2, 1e3, 1e4):
    centres = [edge.phi_zero_chi(n, tau, M) for n in range(4)]
    gaps = np.diff(centres) * M / math.log(M)
    print(f"M={M:>7.0f}  offsets from chi_c: " + " ".join(f"{c - cc:.3e}" for c in centres)
          + "  scaled gaps: " + " ".join(f"{g:.3f}" for g in gaps))

# %%
# One pulse against the exact soliton
# -----------------------------------
# On a box of size 1/M around the centre of pulse 1 the difference shrinks
# tenfold per decade of M.
for M in (1e2, 1e3, 1e4):
    chi0 = edge.phi_zero_chi(1, tau, M)
    q = edge.local_soliton_q(1, chi0, tau, M)
    grid = np.linspace(-1.0, 1.0, 9) / M
    err = max(abs(edge.soliton_term(1, chi0 + x, tau + t, M) - q(x, t)) for x in grid for t in grid)
    res = abs(edge.nls_residual(q, 0.0, 0.0, M))
    print(f"M={M:>7.0f}  max |psi_1 - q_1| = {err:.3e}   NLS residual of q_1 = {res:.1e}")

# %%
# The residue algebra
# -------------------
# Neighbouring pulses are tied together by exact algebraic identities.
rep = edge.residue_identities(2, cc + 0.01, tau, 500.0)
print(f"\nC+_1 C-_2 = {rep.c_product:.12f}  (target {rep.c_target:.12f})")
print(f"largest relative defect: {rep.max_defect():.1e}")
