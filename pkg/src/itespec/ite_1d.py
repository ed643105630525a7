"""Real transmission eigenvalues of the half-line model.

On (0, 1) the pair ``u = a sin(lam x)``, ``v = b sin(gamma lam x)`` matches
Cauchy data at x = 1 exactly when the boundary determinant

    F(lam) = gamma sin(lam) cos(gamma lam) - sin(gamma lam) cos(lam)

vanishes. Roots are simple, except at common zeros of ``sin(lam)`` and
``sin(gamma lam)`` where they are triple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._intervals import interval_roots
from ._validation import check_positive_scalar, scalar_or_array
from .errors import PreconditionError
from .records import Contrast, Kind, Mode, RealIte, as_contrast

COMMON_TOL = 1e-8
ROOT_TOL = 1e-8


def f_1d(gamma, lam):
    """Boundary determinant F(lam); accepts real or complex scalars and arrays."""
    g = as_contrast(gamma).gamma
    z = np.asarray(lam)
    out = g * np.sin(z) * np.cos(g * z) - np.sin(g * z) * np.cos(z)
    return scalar_or_array(lam, out)


def f_1d_prime(gamma, lam):
    g = as_contrast(gamma).gamma
    z = np.asarray(lam)
    return scalar_or_array(lam, (1 - g * g) * np.sin(z) * np.sin(g * z))


def f_1d_derivatives(gamma, lam):
    """Return ``(F, F', F'', F''')`` at ``lam`` from their closed forms."""
    g = as_contrast(gamma).gamma
    z = np.asarray(lam)
    s, c = np.sin(z), np.cos(z)
    sg, cg = np.sin(g * z), np.cos(g * z)
    k = 1 - g * g
    f0 = g * s * cg - sg * c
    f1 = k * s * sg
    f2 = k * (c * sg + g * s * cg)
    f3 = k * (2 * g * c * cg - (1 + g * g) * s * sg)
    return tuple(scalar_or_array(lam, v) for v in (f0, f1, f2, f3))


def dn_difference(gamma, lam):
    """gamma cot(gamma lam) - cot(lam), the difference of the two DN maps."""
    g = as_contrast(gamma).gamma
    z = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = g / np.tan(g * z) - 1.0 / np.tan(z)
    return scalar_or_array(lam, out)


def _poles(contrast, r, tol):
    """Split the zeros of sin(lam) and sin(gamma lam) in (0, r] into
    (only-first, only-second, common)."""
    g = contrast.gamma
    ka = np.arange(1, int(r / math.pi) + 2)
    ka = ka[ka * math.pi <= r]
    kb = np.arange(1, int(g * r / math.pi) + 2)
    kb = kb[kb * math.pi / g <= r]
    if contrast.rational is not None:
        p, q = contrast.rational
        common_a = ka % q == 0
        common_b = kb % p == 0
    else:
        gk = g * ka
        common_a = np.abs(gk - np.round(gk)) < tol
        partners = set(np.round(gk[common_a]).astype(int).tolist())
        common_b = np.isin(kb, list(partners)) if partners else np.zeros(kb.shape, bool)
    if contrast.rational is not None:
        p, q = contrast.rational
        b_vals = kb[~common_b] * q * math.pi / p
    else:
        b_vals = kb[~common_b] * math.pi / g
    return ka[~common_a] * math.pi, b_vals, ka[common_a] * math.pi


def enumerate_real_ites_1d(gamma, r, *, tol=COMMON_TOL):
    """All real roots of F in (0, r], sorted, each listed once.

    Intervals between consecutive zeros of sin(lam) and sin(gamma lam) hold
    at most one simple root; the common zeros are the triple roots. Pass a
    :class:`Contrast` built with ``from_ratio`` to classify triple roots
    exactly; otherwise coincidences are detected to within ``tol``.
    """
    contrast = as_contrast(gamma)
    r = check_positive_scalar("r", r)
    g = contrast.gamma
    # one pole of each family past r closes the last interval exactly
    only_a, only_b, common = _poles(contrast, r + math.pi * max(1.0, 1.0 / g), tol)

    def f(x):
        return g * math.sin(x) * math.cos(g * x) - math.sin(g * x) * math.cos(x)

    def d_sign(x):
        return np.sign(f(x)) * np.sign(math.sin(x)) * np.sign(math.sin(g * x))

    simple = interval_roots(only_a, only_b, common, r, f, d_sign, slope_positive=g < 1)
    out = [RealIte(float(x), 1, 1, Kind.INTERSECTION) for x in simple]
    out += [RealIte(float(x), 3, 1, Kind.COMMON_ZERO) for x in common if x <= r]
    out.sort(key=lambda e: e.lam)
    return out


def _check_root(contrast, lam0):
    lam0 = check_positive_scalar("lambda0", lam0)
    value = f_1d(contrast, lam0)
    if abs(value) > ROOT_TOL * (1 + contrast.gamma):
        raise PreconditionError(f"lambda0={lam0!r} is not a root of F (F={value:.3e})")
    return lam0


def classify_multiplicity_1d(gamma, lam0, *, tol=COMMON_TOL):
    """Algebraic multiplicity (1 or 3) of the root ``lam0``."""
    contrast = as_contrast(gamma)
    lam0 = _check_root(contrast, lam0)
    if contrast.rational is not None:
        k = round(lam0 / math.pi)
        if abs(lam0 / math.pi - k) >= tol:
            return 1
        return 3 if k % contrast.rational[1] == 0 else 1
    both = abs(math.sin(lam0)) < tol and abs(math.sin(contrast.gamma * lam0)) < tol
    return 3 if both else 1


@dataclass(frozen=True)
class Eigenpair1D:
    """Unit coefficient vector of ``u = a sin(lam x)``, ``v = b sin(gamma lam x)``."""

    a: float
    b: float

    def residual(self, gamma, lam0):
        g = as_contrast(gamma).gamma
        row1 = self.a * math.sin(lam0) - self.b * math.sin(g * lam0)
        row2 = self.a * math.cos(lam0) - self.b * g * math.cos(g * lam0)
        return abs(row1) + abs(row2)


def eigenpair_1d(gamma, lam0, *, tol=COMMON_TOL):
    contrast = as_contrast(gamma)
    g = contrast.gamma
    mult = classify_multiplicity_1d(contrast, lam0, tol=tol)
    if mult == 1:
        a, b = math.sin(g * lam0), math.sin(lam0)
    else:
        a, b = g * math.cos(g * lam0), math.cos(lam0)
    norm = math.hypot(a, b)
    return Eigenpair1D(a / norm, b / norm)


def count_1d(gamma, r, mode=Mode.GEOMETRIC, *, tol=COMMON_TOL):
    """Counting function of real eigenvalues in (0, r]."""
    return count_from_list(enumerate_real_ites_1d(gamma, r, tol=tol), r, mode)


def count_from_list(ites, r, mode=Mode.GEOMETRIC):
    mode = Mode.parse(mode)
    if mode is Mode.GEOMETRIC:
        return sum(1 for e in ites if e.lam <= r)
    return sum(e.alg_mult for e in ites if e.lam <= r)


def weyl_coefficient_1d(gamma, mode=Mode.GEOMETRIC):
    """Leading coefficient ``c`` in ``N(r) = c r / pi + O(1)``."""
    contrast = as_contrast(gamma)
    mode = Mode.parse(mode)
    base = abs(1 - contrast.gamma)
    if mode is Mode.ALGEBRAIC and contrast.rational is not None:
        base += 2 / contrast.rational[1]
    return base
