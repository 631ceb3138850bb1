"""Safeguarded scalar root finding.

Newton steps accelerated inside a maintained sign-change bracket; any step
that leaves the bracket, or fails to shrink it fast enough, falls back to
bisection.  Written in-house so polynomial root selection (where we know the
bracket structure a priori) does not depend on library tolerances changing
under us.
"""

import numpy as np

from .errors import RootBracketError


def bracket_root(f, lo, hi, grow=1.6, max_expand=50):
    """Expand [lo, hi] geometrically until f changes sign across it."""
    flo, fhi = f(lo), f(hi)
    for _ in range(max_expand):
        if np.sign(flo) != np.sign(fhi) and flo == flo and fhi == fhi:
            return lo, hi
        if abs(flo) < abs(fhi):
            lo += grow * (lo - hi)
            flo = f(lo)
        else:
            hi += grow * (hi - lo)
            fhi = f(hi)
    raise RootBracketError(lo, hi, flo, fhi)


def solve(f, lo, hi, fprime=None, xtol=1e-14, rtol=4e-16, max_iter=200):
    """Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.

    If fprime is given, Newton iterations are attempted from the bracket
    midpoint and accepted only while they stay inside the current bracket;
    otherwise (and on every rejected step) the bracket is bisected.  Either
    way the bracket shrinks monotonically, so the loop always terminates.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if np.sign(flo) == np.sign(fhi):
        raise RootBracketError(lo, hi, flo, fhi)
    if flo > 0:  # keep f(lo) < 0 < f(hi)
        lo, hi, flo, fhi = hi, lo, fhi, flo

    x = 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if fx < 0:
            lo = x
        else:
            hi = x
        if abs(hi - lo) <= xtol + rtol * abs(x):
            return 0.5 * (lo + hi)

        x_new = None
        if fprime is not None:
            d = fprime(x)
            if d != 0 and np.isfinite(d):
                step = fx / d
                cand = x - step
                inside = min(lo, hi) < cand < max(lo, hi)
                if inside and np.isfinite(cand):
                    x_new = cand
        if x_new is None or x_new == x:
            x_new = 0.5 * (lo + hi)
        x = x_new
    return 0.5 * (lo + hi)


def polish(f, x0, fprime, tol=1e-14, max_iter=60):
    """Plain Newton polish from a good starting point (no bracket)."""
    x = float(x0)
    for _ in range(max_iter):
        fx = f(x)
        d = fprime(x)
        if d == 0 or not np.isfinite(d):
            break
        step = fx / d
        x -= step
        if abs(step) <= tol * max(1.0, abs(x)):
            break
    return x
