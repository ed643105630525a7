"""Bessel and Hankel functions of real order, and tables of Bessel zeros.

Evaluation of J, J' and H^(1) is delegated to ``scipy.special`` (AMOS);
correctness is pinned in the test-suite by the Bessel ODE, the three-term
recurrence and closed forms for half-integer order. Zero tables are built
here.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._validation import (
    check_dimension,
    check_momentum,
    check_order,
    check_positive,
    scalar_or_array,
)
from .errors import DomainError, NumericalError

ZERO_TOL = 1e-12
# consecutive zeros of J_nu are more than 3 apart for every nu >= 0
_SCAN_STEP = math.pi / 4


def bessel_j(nu, x):
    """J_nu(x) for real ``nu >= 0`` and real ``x >= 0``."""
    nu_a = check_order(nu)
    x_a = check_positive("x", x, allow_zero=True)
    return scalar_or_array(np.broadcast(nu_a, x_a), special.jv(nu_a, x_a))


def bessel_j_prime(nu, x):
    """dJ_nu/dx."""
    nu_a = check_order(nu)
    x_a = check_positive("x", x, allow_zero=True)
    return scalar_or_array(np.broadcast(nu_a, x_a), special.jvp(nu_a, x_a))


def bessel_j_second(nu, x):
    """J_nu'' obtained from the Bessel equation; ``x`` must be positive."""
    nu_a = check_order(nu)
    x_a = check_positive("x", x)
    j = special.jv(nu_a, x_a)
    jp = special.jvp(nu_a, x_a)
    out = -jp / x_a - (1.0 - (nu_a / x_a) ** 2) * j
    return scalar_or_array(np.broadcast(nu_a, x_a), out)


def hankel1(nu, x):
    """H^(1)_nu(x) = J_nu(x) + i Y_nu(x) on the positive real axis.

    Built from its parts: the library routine loses the real part entirely
    once |Y| dwarfs |J| (order well above the argument).
    """
    nu_a = check_order(nu)
    x_a = check_positive("x", x)
    out = special.jv(nu_a, x_a) + 1j * special.yv(nu_a, x_a)
    return scalar_or_array(np.broadcast(nu_a, x_a), out)


def hankel1_prime(nu, x):
    nu_a = check_order(nu)
    x_a = check_positive("x", x)
    out = special.jvp(nu_a, x_a) + 1j * special.yvp(nu_a, x_a)
    return scalar_or_array(np.broadcast(nu_a, x_a), out)


def bessel_order(n, l):
    """nu(l) = l + n/2 - 1 for dimension ``n``."""
    return check_momentum(l) + check_dimension(n) / 2.0 - 1.0


def reduced_j(n, l, lam):
    """lam**(1 - n/2) * J_{nu(l)}(lam), bounded as lam -> 0+."""
    nu = bessel_order(n, l)
    lam_a = check_positive("lambda", lam)
    out = lam_a ** (1.0 - n / 2.0) * special.jv(nu, lam_a)
    return scalar_or_array(lam_a, out)


def reduced_j_prime(n, l, lam):
    """Derivative of :func:`reduced_j` with respect to ``lam``."""
    nu = bessel_order(n, l)
    lam_a = check_positive("lambda", lam)
    a = 1.0 - n / 2.0
    out = lam_a**a * (a / lam_a * special.jv(nu, lam_a) + special.jvp(nu, lam_a))
    return scalar_or_array(lam_a, out)


def reduced_j_pair(n, l, lam):
    """``(reduced_j, reduced_j_prime)`` from two Bessel evaluations.

    Uses J_nu' = (nu/x) J_nu - J_{nu+1}.
    """
    nu = bessel_order(n, l)
    lam_a = check_positive("lambda", lam)
    a = 1.0 - n / 2.0
    j = special.jv(nu, lam_a)
    j1 = special.jv(nu + 1.0, lam_a)
    pref = lam_a**a
    out = pref * j, pref * ((a + nu) / lam_a * j - j1)
    return tuple(scalar_or_array(lam_a, v) for v in out)


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """All positive zeros of J_nu up to ``upper``, increasing."""

    nu: float
    zeros: np.ndarray
    upper: float

    def __post_init__(self):
        self.zeros.setflags(write=False)

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, k):
        return self.zeros[k]

    def count(self, x):
        """Number of tabulated zeros <= x."""
        if x > self.upper:
            raise DomainError(f"table only complete up to {self.upper}, asked for {x}")
        return int(np.searchsorted(self.zeros, x, side="right"))


def mcmahon_guess(nu, k):
    """Leading large-k approximation k*pi + nu*pi/2 - pi/4 of the k-th zero."""
    return (np.asarray(k) + 0.5 * nu - 0.25) * np.pi


def bessel_zeros(nu, upper):
    """Tabulate every zero of J_nu in (0, upper].

    Brackets come from a sign scan with step pi/4, which cannot skip a zero
    since zeros are more than 3 apart. Each bracket is refined with Newton's
    method, safeguarded by bisection, starting from the McMahon guess when it
    falls inside the bracket and from the secant point otherwise.
    """
    nu = float(check_order(nu))
    upper = float(check_positive("upper", upper))
    start = max(nu, 1.0)
    if upper <= start:
        return ZeroTable(nu, np.empty(0), upper)
    grid = np.arange(start, upper, _SCAN_STEP)
    grid = np.append(grid, upper)
    vals = special.jv(nu, grid)
    exact = vals == 0.0
    sign = np.sign(vals)
    change = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    lo, hi = grid[change], grid[change + 1]
    found = [grid[exact]]
    if lo.size:
        k = np.arange(1, lo.size + 1) + np.count_nonzero(
            exact[None, :] & (grid[None, :] < lo[:, None]), axis=1
        )
        guess = mcmahon_guess(nu, k)
        flo, fhi = vals[change], vals[change + 1]
        secant = lo - flo * (hi - lo) / (fhi - flo)
        guess = np.where((guess > lo) & (guess < hi), guess, secant)
        found.append(_newton_bisect(nu, lo, hi, guess))
    zeros = np.sort(np.concatenate(found))
    return ZeroTable(nu, zeros, upper)


def _newton_bisect(nu, lo, hi, guess, max_iter=100):
    lo = lo.astype(float).copy()
    hi = hi.astype(float).copy()
    flo = np.sign(special.jv(nu, lo))
    x = np.where((guess > lo) & (guess < hi), guess, 0.5 * (lo + hi))
    active = np.arange(x.size)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        if active.size == 0:
            break
        xa, la, ha = x[active], lo[active], hi[active]
        f = special.jv(nu, xa)
        fp = special.jvp(nu, xa)
        same = np.sign(f) == flo[active]
        la = np.where(same, xa, la)
        ha = np.where(same, ha, xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            xn = xa - f / fp
        bad = ~np.isfinite(xn) | (xn < la) | (xn > ha)
        xn = np.where(bad, 0.5 * (la + ha), xn)
        xn = np.where(f == 0, xa, xn)
        done = (np.abs(xn - xa) <= 16 * eps * xa) | (ha - la <= 4 * eps * xa)
        x[active], lo[active], hi[active] = xn, la, ha
        active = active[~done]
    f = special.jv(nu, x)
    slope = np.abs(x * special.jvp(nu, x))
    if np.any(np.abs(f) > ZERO_TOL * (1.0 + slope)):
        worst = int(np.argmax(np.abs(f)))
        raise NumericalError("Bessel zero refinement did not converge",
                             nu=nu, x=float(x[worst]), residual=float(f[worst]))
    return x
