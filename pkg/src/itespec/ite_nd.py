"""Real transmission eigenvalues of the unit ball in dimension n >= 2.

Separating variables, the momentum-l channel (Bessel order
nu = l + n/2 - 1) has eigenvalues at the zeros of

    F_nu(lam) = gamma J_nu(lam) J_nu'(gamma lam) - J_nu(gamma lam) J_nu'(lam),

each contributing mu(l) (the dimension of degree-l spherical harmonics) to
the counting function.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import special

from ._intervals import interval_roots
from ._validation import (
    check_dimension,
    check_increasing,
    check_momentum,
    check_order,
    check_positive,
    check_positive_scalar,
    scalar_or_array,
)
from .errors import DomainError
from .records import Contrast, CountReport, Kind, RealIte, as_contrast, fit_power_law
from .special_functions import bessel_zeros

log = logging.getLogger(__name__)

COMMON_TOL = 1e-9


def multiplicity_mu(n, l):
    """Dimension of the space of degree-l spherical harmonics on S^{n-1}."""
    n = check_dimension(n)
    l = check_momentum(l)
    if n == 2:
        return 1 if l == 0 else 2
    return (2 * l + n - 2) * math.comb(l + n - 3, n - 3) // (n - 2)


@dataclass(frozen=True)
class DimensionConfig:
    """Dimension ``n`` and constant refraction index ``m`` of the ball."""

    n: int
    m: float

    def __post_init__(self):
        object.__setattr__(self, "n", check_dimension(self.n))
        m = check_positive_scalar("m", self.m)
        if m == 1.0:
            raise DomainError("m = 1 gives no inclusion")
        object.__setattr__(self, "m", m)

    @property
    def gamma(self):
        return math.sqrt(self.m)

    @property
    def contrast(self):
        return Contrast(self.gamma)

    @property
    def ball_volume(self):
        return math.pi ** (self.n / 2) / math.gamma(self.n / 2 + 1)

    def nu(self, l):
        return check_momentum(l) + self.n / 2 - 1

    def mu(self, l):
        return multiplicity_mu(self.n, l)


def f_nu(gamma, nu, lam):
    """F_nu(lam) in unreduced Bessel form."""
    g = as_contrast(gamma).gamma
    nu = check_order(nu)
    x = check_positive("lambda", lam)
    out = (g * special.jv(nu, x) * special.jvp(nu, g * x)
           - special.jv(nu, g * x) * special.jvp(nu, x))
    return scalar_or_array(lam, out)


def f_nu_derivatives(gamma, nu, lam):
    """``(F, F', F'', F''')`` from Bessel values and the Bessel equation."""
    g = as_contrast(gamma).gamma
    nu = check_order(nu)
    x = check_positive("lambda", lam)
    gx = g * x
    j, jp = special.jv(nu, x), special.jvp(nu, x)
    jg, jgp = special.jv(nu, gx), special.jvp(nu, gx)
    jpp = -jp / x - (1 - (nu / x) ** 2) * j
    jgpp = -jgp / gx - (1 - (nu / gx) ** 2) * jg
    k = 1 - g * g
    f0 = g * j * jgp - jg * jp
    f1 = -f0 / x + k * j * jg
    f2 = f0 / x**2 - f1 / x + k * (jp * jg + g * j * jgp)
    f3 = (-2 * f0 / x**3 + 2 * f1 / x**2 - f2 / x
          + k * (jpp * jg + 2 * g * jp * jgp + g * g * j * jgpp))
    return tuple(scalar_or_array(lam, v) for v in (f0, f1, f2, f3))


def log_derivative_gap(gamma, nu, lam):
    """gamma J'(gamma lam)/J(gamma lam) - J'(lam)/J(lam)."""
    g = as_contrast(gamma).gamma
    x = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (g * special.jvp(nu, g * x) / special.jv(nu, g * x)
               - special.jvp(nu, x) / special.jv(nu, x))
    return scalar_or_array(lam, out)


@dataclass(frozen=True)
class NuSpectrum:
    """Real eigenvalues of one momentum channel, sorted."""

    l: int | None
    nu: float
    roots: tuple
    mu: int
    zeros_fast: np.ndarray
    zeros_slow: np.ndarray

    def __len__(self):
        return len(self.roots)

    @property
    def values(self):
        return np.array([e.lam for e in self.roots])


def _split_common(g, nu, za, zb, tol):
    """Separate coinciding zeros of J_nu(lam) and J_nu(gamma lam)."""
    if len(za) == 0 or len(zb) == 0:
        return za, zb, np.empty(0)
    idx = np.searchsorted(za, zb)
    left = za[np.clip(idx - 1, 0, len(za) - 1)]
    right = za[np.clip(idx, 0, len(za) - 1)]
    nearest = np.where(np.abs(left - zb) <= np.abs(right - zb), left, right)
    close = np.abs(nearest - zb) <= 1e-6 * (1 + zb)
    keep_a = np.ones(len(za), bool)
    keep_b = np.ones(len(zb), bool)
    common = []
    for i in np.nonzero(close)[0]:
        lam0 = 0.5 * (nearest[i] + zb[i])
        bound = tol * (1 + lam0)
        if abs(special.jv(nu, lam0)) <= bound and abs(special.jv(nu, g * lam0)) <= bound:
            common.append(nearest[i])
            keep_b[i] = False
            keep_a[za == nearest[i]] = False
    return za[keep_a], zb[keep_b], np.array(sorted(common))


def enumerate_ites_for_nu(gamma, nu, r, *, l=None, mu=1, tol=COMMON_TOL):
    """Zeros of F_nu in (0, r].

    Between consecutive zeros of J_nu(lam) and J_nu(gamma lam) the gap of
    logarithmic derivatives is monotone through its zeros, so each interval
    holds at most one simple root, decided by its end behaviour. Coinciding
    zeros are triple roots.
    """
    g = as_contrast(gamma).gamma
    nu = float(check_order(nu))
    r = check_positive_scalar("r", r)
    # extend past r until a pole closes the last interval
    ext = math.pi * max(1.0, 1.0 / g)
    while True:
        za = bessel_zeros(nu, r + ext).zeros
        zb = bessel_zeros(nu, g * (r + ext)).zeros / g
        below = np.count_nonzero(za <= r) + np.count_nonzero(zb <= r)
        if below == 0 or below < len(za) + len(zb):
            break
        ext *= 2
    only_a, only_b, common = _split_common(g, nu, za, zb, tol)

    jv, jvp = special.jv, special.jvp

    def f(x):
        return g * jv(nu, x) * jvp(nu, g * x) - jv(nu, g * x) * jvp(nu, x)

    def d_sign(x):
        return np.sign(f(x)) * np.sign(jv(nu, x)) * np.sign(jv(nu, g * x))

    simple = interval_roots(only_a, only_b, common, r, f, d_sign, slope_positive=g < 1)
    roots = [RealIte(float(x), 1, mu, Kind.INTERSECTION, l, nu) for x in simple]
    roots += [RealIte(float(x), 3, mu, Kind.COMMON_ZERO, l, nu) for x in common if x <= r]
    roots.sort(key=lambda e: e.lam)
    return NuSpectrum(l, nu, tuple(roots), mu, za[za <= r], zb[zb <= r])


def _momentum_cutoff(cfg, r):
    # a root needs a zero of J_nu(lam) or J_nu(gamma lam) below it, and j_{nu,1} > nu
    return int(math.floor(r * max(1.0, cfg.gamma) - cfg.n / 2 + 1)) + 1


def spectrum(cfg, r, *, threads=None, tol=COMMON_TOL):
    """Per-momentum spectra in (0, r], one entry per l that contributes."""
    r = check_positive_scalar("r", r)
    g = cfg.gamma
    ls = range(_momentum_cutoff(cfg, r) + 1)

    def work(l):
        return enumerate_ites_for_nu(g, cfg.nu(l), r, l=l, mu=cfg.mu(l), tol=tol)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, ls))
    else:
        parts = [work(l) for l in ls]
    return [p for p in parts if len(p.zeros_fast) or len(p.zeros_slow)]


def all_ites(cfg, r, **kwargs):
    """All real eigenvalues in (0, r], merged and ordered by (lam, l)."""
    out = [e for part in spectrum(cfg, r, **kwargs) for e in part.roots]
    out.sort(key=lambda e: (e.lam, e.l))
    return out


def _count(parts, r):
    return sum(p.mu * int(np.count_nonzero(p.values <= r)) for p in parts if len(p))


def count_nd(cfg, r, **kwargs):
    """N(r): real eigenvalues in (0, r] counted with geometric multiplicity."""
    return _count(spectrum(cfg, r, **kwargs), r)


def dirichlet_count(cfg, speed, r):
    """Sum over l of mu(l) * #{k : j_{nu(l),k} <= speed * r}."""
    speed = check_positive_scalar("speed", speed)
    r = check_positive_scalar("r", r)
    limit = speed * r
    total = 0
    l = 0
    while True:
        n_zeros = len(bessel_zeros(cfg.nu(l), limit))
        if n_zeros == 0:
            return total
        total += cfg.mu(l) * n_zeros
        l += 1


def _dirichlet_counts(cfg, speed, radii):
    limit = speed * float(radii[-1])
    counts = np.zeros(len(radii), dtype=np.int64)
    l = 0
    while True:
        zeros = bessel_zeros(cfg.nu(l), limit).zeros
        if len(zeros) == 0:
            return counts
        counts += cfg.mu(l) * np.searchsorted(zeros, speed * radii, side="right")
        l += 1


def weyl_coefficient(cfg):
    """(2 pi)^{-n} omega_n^2 |1 - m^{n/2}|; zero (with a warning) when m = 1."""
    if cfg.m == 1.0:
        log.warning("m = 1: Weyl coefficient is degenerate")
        return 0.0
    return (2 * math.pi) ** (-cfg.n) * cfg.ball_volume**2 * abs(1 - cfg.m ** (cfg.n / 2))


def weyl_report(cfg, r_grid, *, fit_from=None, threads=None, tol=COMMON_TOL):
    """Tabulate N(r), |N_1 - N_gamma|, the Weyl term and scaled residuals.

    ``fit_coefficient`` is the least-squares ``c`` in ``N = c r^n`` over the
    grid points with ``r >= fit_from`` (default: half the largest radius).
    """
    radii = check_increasing("r_grid", r_grid)
    parts = spectrum(cfg, float(radii[-1]), threads=threads, tol=tol)
    counts = np.array([_count(parts, r) for r in radii], dtype=np.int64)
    n1 = _dirichlet_counts(cfg, 1.0, radii)
    ng = _dirichlet_counts(cfg, cfg.gamma, radii)
    coef = weyl_coefficient(cfg)
    pred = coef * radii**cfg.n
    top = radii >= (0.5 * radii[-1] if fit_from is None else fit_from)
    return CountReport(
        radii=radii,
        counts=counts,
        weyl=pred,
        residual_scaled=np.abs(counts - pred) / radii ** (cfg.n - 1),
        fit_coefficient=fit_power_law(radii[top], counts[top], cfg.n),
        dirichlet_diff=np.abs(n1 - ng),
        meta={"n": cfg.n, "m": cfg.m, "weyl_coefficient": coef},
    )
