"""
Closure and modulation checks
=============================

Two global checks: the bulk carries L2 mass 8, and the branch points move
according to the Whitham equations.
"""

# %%
# Mass of the bulk
# ----------------
# The period-averaged density, integrated over the whole bulk, gives 8.
# The endpoint formula gets there in closed form.
import numpy as np

from rogue_infinite import l2_norm_bulk, solve_lambda
from rogue_infinite.whitham import characteristic_speeds, whitham_residual

for tau in (0.0, 0.5):
    r = l2_norm_bulk(tau)
    print(f"tau={tau}: quadrature {r.l2:.6f}, endpoint formula {r.endpoint_check:.12f}")

# %%
# Whitham residuals
# -----------------
# Central differences of the branch points in chi and tau satisfy the
# modulation equations up to O(h**2), so halving h divides the residual by 4.
chi, tau = 1.0, 0.5
for h in (4e-3, 2e-3, 1e-3):
    r, _ = whitham_residual(chi, tau, h=h)
    print(f"h={h:.0e}: max residual {np.max(np.abs(r)):.3e}")

state, contour = characteristic_speeds(solve_lambda(chi, tau))
for z, s, c in zip(state.z, state.s, contour):
    print(f"z={z:.6f}  speed={s:.10f}  contour form differs by {abs(s - c):.1e}")
