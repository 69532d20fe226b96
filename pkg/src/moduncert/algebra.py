"""The commutative unital C*-algebra C(X) on a finite point set X of size d.

Elements are d-tuples of complex numbers with pointwise arithmetic, the
sup-norm, and the usual order (a >= 0 iff every value is a nonnegative
real).  By Gelfand duality this realizes every finite-dimensional
commutative unital C*-algebra, so nothing here is an approximation.

The only functional calculus provided is the logarithm of strictly
positive elements; that is all the entropy machinery downstream needs.
All operations are pure functions on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError

# Absolute tolerance for positivity / order checks on floating-point data.
POSITIVITY_TOL = 1e-9

# Default floor for log_positive: rejects zero and denormal garbage while
# accepting anything a healthy computation can produce.
LOG_FLOOR = 1e-300


@dataclass(frozen=True)
class AlgebraElement:
    """One element of C(X): the value at point t of X is ``values[t]``."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError(f"values must be a nonempty 1-d sequence, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def d(self) -> int:
        return self.values.shape[0]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return add(self, other)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return sub(self, other)

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return mul(self, other)
        return AlgebraElement(self.values * complex(other))

    __rmul__ = __mul__

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.values)


def _check_same_d(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.d != b.d:
        raise DimensionMismatch(f"algebra elements live on different point sets: d={a.d} vs d={b.d}")


def identity(d: int) -> AlgebraElement:
    """The unit of C(X): the constant function 1."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return AlgebraElement(np.ones(d, dtype=np.complex128))


def zero(d: int) -> AlgebraElement:
    """The zero element."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return AlgebraElement(np.zeros(d, dtype=np.complex128))


def add(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_d(a, b)
    return AlgebraElement(a.values + b.values)


def sub(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _check_same_d(a, b)
    return AlgebraElement(a.values - b.values)


def mul(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Pointwise product; commutative by construction."""
    _check_same_d(a, b)
    return AlgebraElement(a.values * b.values)


def involution(a: AlgebraElement) -> AlgebraElement:
    """The *-operation: pointwise complex conjugation."""
    return AlgebraElement(np.conj(a.values))


def norm(a: AlgebraElement) -> float:
    """Sup-norm: max modulus over the d points.  Satisfies ||a* a|| = ||a||^2."""
    return float(np.max(np.abs(a.values)))


def is_positive(a: AlgebraElement, tol: float = POSITIVITY_TOL) -> bool:
    """True iff every value is, within tol, a nonnegative real."""
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    v = a.values
    return bool(np.all(np.abs(v.imag) <= tol) and np.all(v.real >= -tol))


def order_geq(a: AlgebraElement, b: AlgebraElement, tol: float = POSITIVITY_TOL) -> bool:
    """The C*-order: a >= b iff a - b is positive."""
    _check_same_d(a, b)
    return is_positive(sub(a, b), tol)


def log_positive(a: AlgebraElement, floor: float = LOG_FLOOR) -> AlgebraElement:
    """Pointwise natural logarithm of a strictly positive element.

    Every value must be (numerically) a positive real with real part at
    least ``floor``.  Nothing is clamped silently: an entry below the
    floor raises DomainError naming the offending point of X.  The
    0*log(0) continuity convention is deliberately *not* implemented
    here; it belongs to the entropy layer.
    """
    if not floor > 0:
        raise ValueError(f"floor must be > 0, got {floor}")
    v = a.values
    bad_imag = np.abs(v.imag) > POSITIVITY_TOL
    if np.any(bad_imag):
        t = int(np.argmax(bad_imag))
        raise DomainError(f"log_positive: entry at point {t} is not real: {v[t]}")
    below = v.real < floor
    if np.any(below):
        t = int(np.argmax(below))
        raise DomainError(
            f"log_positive: entry at point {t} is below the floor {floor:g}: {v[t].real!r}"
        )
    return AlgebraElement(np.log(v.real).astype(np.complex128))


def to_json(a: AlgebraElement) -> list:
    """JSON encoding: array of d two-element arrays [re, im]."""
    return [[float(z.real), float(z.imag)] for z in a.values]


def from_json(data, *, what: str = "algebra element") -> AlgebraElement:
    """Decode the [re, im] pair-array encoding, validating shape."""
    if not isinstance(data, list) or len(data) == 0:
        raise ValueError(f"{what}: expected a nonempty array of [re, im] pairs")
    vals = np.empty(len(data), dtype=np.complex128)
    for t, pair in enumerate(data):
        if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                or not all(isinstance(u, (int, float)) for u in pair)):
            raise ValueError(f"{what}: entry {t} is not a [re, im] pair: {pair!r}")
        vals[t] = complex(pair[0], pair[1])
    return AlgebraElement(vals)
