"""Partial-wave relative scattering entries for the ball.

For momentum ``l`` (order nu = l + n/2 - 1) write

    D(lam) = H1_nu'(lam) J_nu(gamma lam) - gamma H1_nu(lam) J_nu'(gamma lam).

The relative scattering entry is ``S = -conj(D) / D`` on the real axis, so
``|S| = 1`` there, and ``S - 1 = -2 Re(D) / D = 2 F_nu / D``. The
``lam**(1 - n/2)`` factors of the reduced functions cancel in both
quotients, so unreduced functions are used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import special
from scipy.optimize import brentq

from ._validation import check_momentum, check_positive, check_positive_scalar, scalar_or_array
from .errors import NumericalError
from .ite_nd import _momentum_cutoff, spectrum
from .special_functions import reduced_j_pair

DENOMINATOR_FLOOR = 1e-300
ZERO_TOL = 1e-8
FLAT_TOL = 1e-5


@dataclass(frozen=True)
class ScatterEntry:
    l: int
    lam: float
    s: complex
    a: complex


def _denominator(cfg, l, lam):
    nu = cfg.nu(l)
    g = cfg.gamma
    x = check_positive("lambda", lam)
    jg, jgp = special.jv(nu, g * x), special.jvp(nu, g * x)
    # assembled from J and Y so the real part stays accurate when |Y| >> |J|
    re = special.jvp(nu, x) * jg - g * special.jv(nu, x) * jgp
    im = special.yvp(nu, x) * jg - g * special.yv(nu, x) * jgp
    d = re + 1j * im
    if np.any(np.abs(d) < DENOMINATOR_FLOOR):
        raise NumericalError("scattering denominator vanished", l=l, lam=lam)
    return x, nu, g, d


def s_matrix_entry(cfg, l, lam):
    """S_l(lam) for real ``lam > 0``; unimodular."""
    _, _, _, d = _denominator(cfg, check_momentum(l), lam)
    return scalar_or_array(lam, -np.conj(d) / d)


def amplitude_entry(cfg, l, lam):
    """A_l(lam) = S_l(lam) - 1 in quotient form 2 F_nu / D."""
    x, nu, g, d = _denominator(cfg, check_momentum(l), lam)
    f = g * special.jv(nu, x) * special.jvp(nu, g * x) - special.jv(nu, g * x) * special.jvp(nu, x)
    return scalar_or_array(lam, 2 * f / d)


def scatter_entry(cfg, l, lam):
    s = s_matrix_entry(cfg, l, lam)
    return ScatterEntry(l, float(lam), complex(s), complex(s) - 1)


@dataclass
class CoincidenceReport:
    """Outcome of matching eigenvalues against amplitude zeros.

    ``items`` has one ``(l, lam, origin, abs_amplitude, status)`` tuple per
    eigenvalue and per unmatched amplitude zero; ``origin`` is
    ``"eigenvalue"`` or ``"amplitude_zero"`` and ``status`` is ``"matched"``
    or the reason for a mismatch.
    """

    r: float
    checked: int = 0
    amplitude_zeros: int = 0
    max_amplitude: float = 0.0
    items: list = field(default_factory=list)

    @property
    def mismatches(self):
        return [(l, lam, status) for l, lam, _, _, status in self.items if status != "matched"]

    @property
    def ok(self):
        return not self.mismatches

    def __len__(self):
        return self.checked


def _numerator(cfg, l, lam):
    # reduced-form numerator of A_l; real on the real axis
    g = cfg.gamma
    j, jp = reduced_j_pair(cfg.n, l, lam)
    jg, jgp = reduced_j_pair(cfg.n, l, g * np.asarray(lam))
    return g * j * jgp - jg * jp


def amplitude_zeros(cfg, l, r, *, step=5e-3):
    """Zeros of A_l on (0, r] from sign changes of the reduced numerator.

    Returns ``(lam, flat)`` pairs; ``flat`` marks zeros where the numerator
    has vanishing slope, whose location is only resolved to about 1e-5.
    """
    # every zero exceeds the first zero of J_nu(lam) or of J_nu(gamma lam), both above nu
    start = max(step, cfg.nu(l) * min(1.0, 1.0 / cfg.gamma))
    if start >= r:
        return []
    grid = np.append(np.arange(start, r, step), r)
    vals = _numerator(cfg, l, grid)
    scale = np.max(np.abs(vals))
    if scale == 0:
        return []
    out = []
    for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        lam0 = brentq(lambda x: _numerator(cfg, l, x), grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15)
        h = 1e-6 * (1 + lam0)
        slope = (_numerator(cfg, l, lam0 + h) - _numerator(cfg, l, lam0 - h)) / (2 * h)
        out.append((lam0, abs(slope) * (1 + lam0) < 1e-6 * scale))
    if vals[-1] == 0:
        out.append((float(r), False))
    return out


def _match(eigen, zeros):
    used = set()
    hits = []
    for lam in eigen:
        hit = None
        for k, (z, flat) in enumerate(zeros):
            tol = (FLAT_TOL if flat else ZERO_TOL) * (1 + lam)
            if k not in used and abs(z - lam) <= tol:
                hit = k
                break
        if hit is not None:
            used.add(hit)
        hits.append(hit)
    return hits, [z for k, (z, _) in enumerate(zeros) if k not in used]


def verify_ite_te_coincidence(cfg, r, *, step=5e-3, threads=None):
    """Cross-check eigenvalues from :mod:`itespec.ite_nd` against zeros of A_l.

    The amplitude zeros are found independently by a dense sign scan of the
    reduced numerator; each eigenvalue must also satisfy ``|A_l| <= 1e-8``.
    """
    r = check_positive_scalar("r", r)
    report = CoincidenceReport(r)
    parts = {p.l: p for p in spectrum(cfg, r, threads=threads)}
    for l in range(_momentum_cutoff(cfg, r) + 1):
        eigen = [e.lam for e in parts[l].roots] if l in parts else []
        zeros = amplitude_zeros(cfg, l, r, step=step)
        report.checked += len(eigen)
        report.amplitude_zeros += len(zeros)
        hits, unmatched = _match(eigen, zeros)
        if eigen:
            amp = np.abs(amplitude_entry(cfg, l, np.array(eigen)))
            report.max_amplitude = max(report.max_amplitude, float(amp.max()))
            for lam, a, hit in zip(eigen, amp, hits):
                if hit is None:
                    status = "no amplitude zero"
                elif a > ZERO_TOL:
                    status = "amplitude above tolerance"
                else:
                    status = "matched"
                report.items.append((l, lam, "eigenvalue", float(a), status))
        for z in unmatched:
            a = float(abs(amplitude_entry(cfg, l, z)))
            report.items.append((l, z, "amplitude_zero", a, "no eigenvalue"))
    report.items.sort(key=lambda t: (t[1], t[0]))
    return report


def unitarity_defect(cfg, ls, lams):
    """max | |S_l(lam)| - 1 | over paired samples."""
    worst = 0.0
    for l, lam in zip(ls, lams):
        worst = max(worst, abs(abs(s_matrix_entry(cfg, int(l), float(lam))) - 1.0))
    return worst


__all__ = [
    "ScatterEntry",
    "CoincidenceReport",
    "s_matrix_entry",
    "amplitude_entry",
    "scatter_entry",
    "amplitude_zeros",
    "verify_ite_te_coincidence",
    "unitarity_defect",
]
