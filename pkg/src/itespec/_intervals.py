"""Root location between the poles of two interleaved branch families.

Both the half-line determinant and the per-momentum ball determinant have the
form ``F = D * a(x) * b(x)`` where ``D`` is a difference of logarithmic
derivatives with poles at the zeros of ``a`` (poles_a) and of ``b``
(poles_b). At every zero of ``D`` its slope has the sign of ``1 - gamma**2``,
so ``D`` vanishes at most once between consecutive poles. Whether it does is
decided by the side limits of ``D`` at the poles, which are known exactly:

* just right of a pole of ``a`` only: -inf; just left of it: +inf
* just right of a pole of ``b`` only: +inf; just left of it: -inf
* at ``x = 0`` and at a common pole ``D`` is continuous, vanishes, and has
  slope of sign ``1 - gamma**2``.

This avoids deciding existence from floating-point sign changes near poles.
"""
import numpy as np
from scipy.optimize import brentq

_A, _B, _C = 0, 1, 2
_EPS = np.finfo(float).eps


def interval_roots(poles_a, poles_b, common, r, f, d_sign, slope_positive):
    """Return the sorted simple roots of ``f`` in (0, r].

    ``poles_a``, ``poles_b`` and ``common`` must be disjoint. Poles past ``r``
    may be included and should be: the first one decides the last interval
    exactly, whereas the sign of ``D`` at ``r`` is unreliable when ``r`` sits
    next to a pole. ``f`` is the smooth determinant; ``d_sign(x)`` returns the
    sign of ``D`` at a point that is not a pole. Common poles are roots
    themselves and are not returned here.
    """
    values = np.concatenate([poles_a, poles_b, common]).astype(float)
    tags = np.concatenate([
        np.full(len(poles_a), _A), np.full(len(poles_b), _B), np.full(len(common), _C)
    ])
    order = np.argsort(values, kind="stable")
    values, tags = values[order], tags[order]

    s0 = 1 if slope_positive else -1
    left_sign = {_A: -1, _B: 1, _C: s0}
    right_sign = {_A: 1, _B: -1, _C: -s0}

    roots = []
    lo, lo_sign = 0.0, s0
    for x, tag in zip(values, tags):
        if right_sign[tag] != lo_sign:
            root = _solve(f, d_sign, lo, x, lo_sign)
            if root > r:
                return roots
            roots.append(root)
        if x >= r:
            return roots
        lo, lo_sign = x, left_sign[tag]
    if lo < r:
        end = d_sign(r)
        if end == 0:
            roots.append(r)
        elif end != lo_sign:
            roots.append(_solve(f, d_sign, lo, r, lo_sign))
    return roots


def _solve(f, d_sign, lo, hi, lo_sign):
    flo, fhi = f(lo), f(hi)
    if flo * fhi < 0:
        return brentq(f, lo, hi, xtol=1e-15, rtol=4 * _EPS, maxiter=200)
    return _bisect_sign(d_sign, lo, hi, lo_sign)


def _bisect_sign(d_sign, lo, hi, lo_sign):
    # fallback when f at an endpoint is zero or swamped by rounding
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= 4 * _EPS * hi or mid in (lo, hi):
            break
        s = d_sign(mid)
        if s == 0:
            return mid
        if s == lo_sign:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
