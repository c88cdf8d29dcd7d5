"""Numerical tolerances shared by all modules."""
from dataclasses import dataclass, replace

TAU_ZERO = 1e-14
DELTA_NU = 1e-8


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle.

    Attributes
    ----------
    fn : target relative accuracy of special-function evaluations.
    root : residual bound accepted by the characteristic solvers.
    tail : relative size of the last series term at which summation stops.
    res : ODE residual bound used by verification.
    n_max : hard cap on series terms / continued-fraction depth.
    """

    fn: float = 1e-12
    root: float = 1e-10
    tail: float = 1e-16
    res: float = 1e-8
    n_max: int = 10000

    def __post_init__(self):
        from .errors import InvalidParams

        for name in ("fn", "root", "tail", "res"):
            v = getattr(self, name)
            if not (v > 0):
                raise InvalidParams(f"tolerance {name} must be positive, got {v}")
        if not 0 < self.fn < 1:
            raise InvalidParams("fn tolerance must lie in (0, 1)")
        if self.n_max < 8:
            raise InvalidParams("n_max must be at least 8")

    def with_(self, **kw):
        return replace(self, **kw)


DEFAULT = Tolerances()


def is_zero(x, scale=1.0):
    return abs(x) <= TAU_ZERO * max(1.0, abs(scale))


def near_integer(x, tol=TAU_ZERO):
    """Return the nearest integer if ``x`` is within ``tol`` of one, else None."""
    x = complex(x)
    k = round(x.real)
    if abs(x - k) <= tol * max(1.0, abs(k)):
        return int(k)
    return None
