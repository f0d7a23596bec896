"""Numeric settings threaded through the library."""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    """Tolerances and step sizes used by the solvers.

    Every public routine accepts an optional ``settings`` argument; when it
    is omitted the module-level :data:`DEFAULT` record is used.
    """

    tol: float = 1e-12
    quad_rel: float = 1e-13
    quad_limit: int = 400
    im_discard: float = 1e-9
    fd_step: float = 1e-3
    theta_tol: float = 1e-17
    theta_switch: float = -3.141592653589793
    lambda_tol: float = 1e-10
    near_critical_gap: float = 1e-8

    def with_(self, **changes):
        return replace(self, **changes)


DEFAULT = Settings()
