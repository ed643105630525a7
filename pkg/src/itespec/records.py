"""Value types shared across the 1D and ball modules."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError


class Kind(str, enum.Enum):
    """How a real eigenvalue arises."""

    INTERSECTION = "intersection"
    COMMON_ZERO = "common_zero"


class Mode(str, enum.Enum):
    """Multiplicity convention used when counting."""

    GEOMETRIC = "geometric"
    ALGEBRAIC = "algebraic"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower()
        aliases = {"geom": cls.GEOMETRIC, "geometric": cls.GEOMETRIC,
                   "alg": cls.ALGEBRAIC, "algebraic": cls.ALGEBRAIC}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown counting mode {value!r}") from None


@dataclass(frozen=True)
class Contrast:
    """Wave-speed contrast ``gamma = sqrt(m)`` of the inclusion.

    ``rational`` optionally carries an exact representation ``p/q`` in lowest
    terms. Rational logic (exact detection of triple roots) is only used when
    it is supplied; it is never guessed from a float.
    """

    gamma: float
    rational: tuple[int, int] | None = None

    def __post_init__(self):
        g = self.gamma
        if isinstance(g, bool) or not isinstance(g, (int, float, np.floating, np.integer)):
            raise DomainError(f"gamma must be a real number, got {g!r}")
        g = float(g)
        if not math.isfinite(g) or g <= 0:
            raise DomainError(f"gamma must be finite and positive, got {g!r}")
        if g == 1.0:
            raise DomainError("gamma = 1 means no inclusion; the spectrum is degenerate")
        object.__setattr__(self, "gamma", g)
        if self.rational is not None:
            p, q = self.rational
            if int(p) != p or int(q) != q or p <= 0 or q <= 0:
                raise DomainError(f"rational gamma needs positive integers, got {self.rational!r}")
            p, q = int(p), int(q)
            if math.gcd(p, q) != 1:
                raise DomainError(f"{p}/{q} is not in lowest terms")
            if p / q != g:
                raise DomainError(f"gamma={g!r} does not equal {p}/{q}")
            object.__setattr__(self, "rational", (p, q))

    @classmethod
    def from_ratio(cls, p, q):
        frac = Fraction(int(p), int(q))
        return cls(frac.numerator / frac.denominator, (frac.numerator, frac.denominator))

    @classmethod
    def from_index(cls, m):
        """Contrast for refraction index ``m`` (gamma = sqrt(m))."""
        m = float(m)
        if not math.isfinite(m) or m <= 0:
            raise DomainError(f"refraction index must be positive, got {m!r}")
        return cls(math.sqrt(m))

    @classmethod
    def parse_ratio(cls, text):
        """Parse ``"p/q"`` (or a bare integer) into an exact contrast."""
        try:
            num, _, den = str(text).partition("/")
            return cls.from_ratio(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"cannot parse rational gamma {text!r}") from None

    @property
    def is_exact(self):
        return self.rational is not None

    @property
    def inverse(self):
        if self.rational is not None:
            p, q = self.rational
            return Contrast(q / p, (q, p))
        return Contrast(1.0 / self.gamma)


def as_contrast(gamma):
    if isinstance(gamma, Contrast):
        return gamma
    if isinstance(gamma, Fraction):
        return Contrast.from_ratio(gamma.numerator, gamma.denominator)
    return Contrast(gamma)


@dataclass(frozen=True)
class RealIte:
    """A real interior transmission eigenvalue.

    ``l`` is ``None`` for the half-line model and the angular momentum
    otherwise; ``nu`` is the matching Bessel order.
    """

    lam: float
    alg_mult: int
    geom_mult: int
    kind: Kind
    l: int | None = None
    nu: float | None = None

    def __post_init__(self):
        if not self.lam > 0:
            raise DomainError(f"eigenvalue must be positive, got {self.lam!r}")
        if self.alg_mult not in (1, 3):
            raise DomainError(f"algebraic multiplicity must be 1 or 3, got {self.alg_mult}")
        if (self.alg_mult == 3) != (self.kind is Kind.COMMON_ZERO):
            raise DomainError("triple roots are exactly the common zeros")
        if self.geom_mult < 1:
            raise DomainError("geometric multiplicity must be positive")
        if self.l is None and self.geom_mult != 1:
            raise DomainError("half-line eigenvalues are geometrically simple")

    @property
    def source(self):
        return "1d" if self.l is None else f"l={self.l}"


@dataclass(frozen=True)
class CountReport:
    """Counting function sampled on a grid of radii.

    ``residual_scaled`` is ``|count - weyl| / r**(n-1)`` for the real
    counting functions and ``|count - weyl| / r`` for complex counts.
    ``dirichlet_diff`` is filled where a Dirichlet comparison exists.
    """

    radii: np.ndarray
    counts: np.ndarray
    weyl: np.ndarray
    residual_scaled: np.ndarray
    fit_coefficient: float
    dirichlet_diff: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.radii)

    def rows(self):
        diff = self.dirichlet_diff
        for i, r in enumerate(self.radii):
            yield {
                "r": float(r),
                "count": int(self.counts[i]),
                "dirichlet_diff": None if diff is None else int(diff[i]),
                "weyl_pred": float(self.weyl[i]),
                "residual_scaled": float(self.residual_scaled[i]),
            }


def fit_power_law(radii, counts, exponent):
    """Least-squares coefficient ``c`` for ``counts ~ c * radii**exponent``."""
    r = np.asarray(radii, dtype=float) ** exponent
    y = np.asarray(counts, dtype=float)
    return float(np.dot(r, y) / np.dot(r, r))
