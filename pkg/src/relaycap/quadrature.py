"""Adaptive quadrature used as an independent oracle for the closed forms."""

from dataclasses import dataclass
import math

from scipy import integrate


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 500

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be a positive integer")


DEFAULT = QuadratureSpec()


def integrate_1d(f, lo, hi, spec=DEFAULT, points=None):
    """``int_lo^hi f``; `hi` may be ``math.inf``."""
    kw = dict(epsabs=spec.abs_tol, epsrel=spec.rel_tol, limit=spec.max_subdivisions)
    if points is not None and math.isfinite(hi):
        kw["points"] = points
    value, _ = integrate.quad(f, lo, hi, **kw)
    return value


def decay_cutoff(rate, floor=1e-16):
    """Point beyond which ``exp(-rate x)`` falls below `floor` of its peak."""
    return -math.log(floor) / rate


def integrate_triangle(f, outer_hi, spec=DEFAULT):
    """``int_0^outer_hi int_0^y f(x, y) dx dy``."""
    return integrate_1d(lambda y: integrate_1d(lambda x: f(x, y), 0.0, y, spec) if y > 0 else 0.0,
                        0.0, outer_hi, spec)
