"""Input validation helpers."""
import math
from numbers import Real

import numpy as np

from .errors import DomainError


def check_finite(name, value):
    arr = np.asarray(value)
    if arr.dtype.kind not in "biufc":
        raise DomainError(f"{name} must be numeric, got {value!r}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return arr


def check_order(nu):
    arr = check_finite("nu", nu)
    if arr.dtype.kind == "c":
        raise DomainError("complex Bessel order is not supported")
    if np.any(arr < 0):
        raise DomainError(f"Bessel order must be >= 0, got {nu!r}")
    return arr


def check_positive(name, value, *, allow_zero=False):
    arr = check_finite(name, value)
    if arr.dtype.kind == "c":
        raise DomainError(f"{name} must be real, got {value!r}")
    bad = arr < 0 if allow_zero else arr <= 0
    if np.any(bad):
        rel = ">=" if allow_zero else ">"
        raise DomainError(f"{name} must be {rel} 0, got {value!r}")
    return arr


def check_positive_scalar(name, value):
    if isinstance(value, bool) or not isinstance(value, Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a finite positive number, got {value!r}")
    return value


def check_dimension(n, *, minimum=2):
    if isinstance(n, bool) or int(n) != n or n < minimum:
        raise DomainError(f"dimension must be an integer >= {minimum}, got {n!r}")
    return int(n)


def check_momentum(l):
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise DomainError(f"angular momentum must be a nonnegative integer, got {l!r}")
    return int(l)


def check_increasing(name, values):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise DomainError(f"{name} must be a nonempty 1-d sequence")
    check_positive(name, arr)
    if np.any(np.diff(arr) <= 0):
        raise DomainError(f"{name} must be strictly increasing")
    return arr


def scalar_or_array(template, result):
    """Return a Python scalar when ``template`` was a scalar."""
    if np.ndim(template) == 0 and np.ndim(result) == 0:
        return result.item() if isinstance(result, np.ndarray | np.generic) else result
    return result
