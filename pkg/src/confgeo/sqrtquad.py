"""Quadrature of dx / sqrt(q(x)) across simple turning points.

Orbit equations on the instanton backgrounds reduce to integrals of
1/sqrt(polynomial) between consecutive roots.  Near a simple root x* the
substitution x = x* +/- t^2 removes the inverse-square-root singularity
exactly, leaving a smooth integrand for adaptive quadrature.
"""

import numpy as np
from scipy.integrate import quad

from .errors import TurningPointError


def _check_positive_interior(q, a, b, n=400):
    xs = np.linspace(a, b, n + 2)[1:-1]
    vals = np.array([q(x) for x in xs])
    if np.any(vals <= 0):
        i = int(np.argmin(vals))
        raise TurningPointError(
            f"integrand sign change inside ({a!r}, {b!r}): q({xs[i]!r})={vals[i]!r}"
        )


def inv_sqrt_integral(q, a, b, left_turning=False, right_turning=False,
                      epsabs=1e-13, epsrel=1e-12):
    """Integral of dx/sqrt(q(x)) over [a, b].

    Set left_turning / right_turning when q has a simple zero at that
    endpoint; the integral is then computed in the de-singularized variable.
    q must be strictly positive on the open interval (checked on a sample
    grid; an interior zero means the requested segment crosses a turning
    point and is rejected).
    """
    if b < a:
        raise ValueError("require a <= b")
    if b == a:
        return 0.0
    _check_positive_interior(q, a, b)

    if not left_turning and not right_turning:
        val, _ = quad(lambda x: 1.0 / np.sqrt(q(x)), a, b,
                      epsabs=epsabs, epsrel=epsrel, limit=200)
        return val

    if left_turning and right_turning:
        mid = 0.5 * (a + b)
        return (
            inv_sqrt_integral(q, a, mid, left_turning=True,
                              epsabs=epsabs, epsrel=epsrel)
            + inv_sqrt_integral(q, mid, b, right_turning=True,
                                epsabs=epsabs, epsrel=epsrel)
        )

    if left_turning:
        # x = a + t^2, dx = 2t dt, q(x) ~ q'(a) t^2 near t=0
        tmax = np.sqrt(b - a)

        def integrand(t):
            x = a + t * t
            return 2.0 * t / np.sqrt(q(x)) if t > 0 else 2.0 / np.sqrt(_slope(q, a, +1))
    else:
        tmax = np.sqrt(b - a)

        def integrand(t):
            x = b - t * t
            return 2.0 * t / np.sqrt(q(x)) if t > 0 else 2.0 / np.sqrt(_slope(q, b, -1))

    val, _ = quad(integrand, 0.0, tmax, epsabs=epsabs, epsrel=epsrel, limit=200)
    return val


def _slope(q, x0, side, h=1e-7):
    """|q| linear growth rate off a simple zero, from the interior side."""
    s = abs(q(x0 + side * h)) / h
    if s <= 0:
        raise TurningPointError(f"degenerate turning point at {x0!r}")
    return s


def period_between_roots(q, r1, r2, **kw):
    """Integral of dx/sqrt(q) between two consecutive simple roots of q."""
    return inv_sqrt_integral(q, r1, r2, left_turning=True, right_turning=True, **kw)
