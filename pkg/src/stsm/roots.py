"""Bracketed scalar root finding: bisection to localize, secant to polish."""

from __future__ import annotations

import math

from .errors import NoConvergenceError


def expand_bracket(f, lo: float, hi: float, limit: float = 1e8, factor: float = 2.0):
    """Widen [lo, hi] geometrically until f changes sign on it.

    Returns (lo, hi, f(lo), f(hi)).  Raises NoConvergenceError once either
    end would pass ``limit`` in magnitude without a sign change.
    """
    flo, fhi = f(lo), f(hi)
    while flo * fhi > 0:
        if max(abs(lo), abs(hi)) >= limit:
            raise NoConvergenceError(
                f"no sign change of the constraint on [{lo:g}, {hi:g}]"
            )
        # grow the side where the function has not yet crossed
        if abs(flo) < abs(fhi):
            lo = max(lo * factor, -limit) if lo < 0 else lo - (hi - lo)
            flo = f(lo)
        else:
            hi = min(hi * factor, limit) if hi > 0 else hi + (hi - lo)
            fhi = f(hi)
    return lo, hi, flo, fhi


def bisect_secant(
    f,
    lo: float,
    hi: float,
    tol: float = 1e-12,
    flo: float | None = None,
    fhi: float | None = None,
    bisect_width: float = 1e-3,
    max_iter: int = 500,
) -> float:
    """Root of ``f`` inside a sign-changing bracket [lo, hi].

    Bisection shrinks the bracket to relative width ``bisect_width``; then
    secant steps take over, falling back to bisection whenever a step would
    leave the bracket.  Iteration continues past ``|f| <= tol`` until the
    step stalls at machine precision, so the returned root is as sharp as
    the function evaluation allows.
    """
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        raise NoConvergenceError("root is not bracketed")

    best_x, best_f = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    x0, f0 = lo, flo
    x1, f1 = hi, fhi
    for _ in range(max_iter):
        width = hi - lo
        scale = max(1.0, abs(lo), abs(hi))
        if width > bisect_width * scale or f1 == f0:
            x = 0.5 * (lo + hi)
        else:
            x = x1 - f1 * (x1 - x0) / (f1 - f0)
            if not (lo < x < hi):
                x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if fx == 0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        step = abs(x - x1)
        x0, f0, x1, f1 = x1, f1, x, fx
        if abs(best_f) <= tol and step <= 4 * math.ulp(max(abs(x), 1.0)):
            return best_x
        if hi - lo <= 2 * math.ulp(max(abs(lo), abs(hi), 1.0)):
            break
    if abs(best_f) <= tol:
        return best_x
    raise NoConvergenceError(f"root finding stalled with residual {abs(best_f):.3e}")
