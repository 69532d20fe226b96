"""The Hilbert module E = C(X)^n with its algebra-valued inner product.

A vector is an n x d complex array: column t is the fiber of the vector
at point t of X, an ordinary vector in C^n.  The inner product is taken
fiberwise, conjugate-linear in the second slot, so <a.x, y> = a <x, y>
for a in C(X).  Everything decomposes into independent per-fiber
computations in C^n; that fact is what makes all downstream checks
exact rather than approximate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, norm
from .errors import DimensionMismatch

# Tolerance at which a vector counts as having unit inner product.
UNIT_TOL = 1e-9


@dataclass(frozen=True)
class ModuleVector:
    """Element of C(X)^n; ``entries[i, t]`` is coordinate i at point t."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"entries must be a nonempty n x d array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def d(self) -> int:
        return self.entries.shape[1]

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        _check_same_shape(self, other)
        return ModuleVector(self.entries + other.entries)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        _check_same_shape(self, other)
        return ModuleVector(self.entries - other.entries)

    def __neg__(self) -> "ModuleVector":
        return ModuleVector(-self.entries)


def _check_same_shape(x: ModuleVector, y: ModuleVector) -> None:
    if x.entries.shape != y.entries.shape:
        raise DimensionMismatch(
            f"module vectors have mismatched shapes: {x.entries.shape} vs {y.entries.shape}"
        )


def inner(x: ModuleVector, y: ModuleVector) -> AlgebraElement:
    """The C(X)-valued inner product, fiberwise <x(t), y(t)> in C^n.

    Conjugation sits on the second slot, so the product is C(X)-linear
    in the first slot and <x, y> = <y, x>*.
    """
    _check_same_shape(x, y)
    return AlgebraElement(np.sum(x.entries * np.conj(y.entries), axis=0))


def scale(a: AlgebraElement, x: ModuleVector) -> ModuleVector:
    """The module action: (a.x)(t) = a(t) x(t)."""
    if a.d != x.d:
        raise DimensionMismatch(f"algebra element has d={a.d} but vector has d={x.d}")
    return ModuleVector(a.values[np.newaxis, :] * x.entries)


def module_norm(x: ModuleVector) -> float:
    """||x|| = sqrt(||<x, x>||), the max over fibers of the Euclidean norm."""
    return float(np.sqrt(norm(inner(x, x))))


def is_unit_inner(x: ModuleVector, tol: float = UNIT_TOL) -> bool:
    """True iff <x, x> = 1 in C(X), i.e. every fiber is on the unit sphere."""
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    gram = np.sum(np.abs(x.entries) ** 2, axis=0)
    return bool(np.max(np.abs(gram - 1.0)) <= tol)


def random_unit_vector(n: int, d: int, seed) -> ModuleVector:
    """Sample each fiber independently uniform on the unit sphere of C^n.

    Complex-Gaussian then normalize; deterministic given an integer seed.
    ``seed`` may also be a numpy Generator, which is advanced in place.
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d))
    z /= np.sqrt(np.sum(np.abs(z) ** 2, axis=0, keepdims=True))
    return ModuleVector(z)


def to_json(x: ModuleVector) -> dict:
    """JSON encoding: {"n": .., "d": .., "entries": n x d array of [re, im]}."""
    return {
        "n": x.n,
        "d": x.d,
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in x.entries],
    }


def from_json(data, *, what: str = "module vector") -> ModuleVector:
    """Decode and validate the ModuleVector JSON encoding."""
    if not isinstance(data, dict):
        raise ValueError(f"{what}: expected an object with n, d, entries")
    for key in ("n", "d", "entries"):
        if key not in data:
            raise ValueError(f"{what}: missing field {key!r}")
    n, d = data["n"], data["d"]
    if not (isinstance(n, int) and isinstance(d, int) and n >= 1 and d >= 1):
        raise ValueError(f"{what}: n and d must be integers >= 1, got n={n!r}, d={d!r}")
    rows = data["entries"]
    if not isinstance(rows, list) or len(rows) != n:
        raise ValueError(f"{what}: entries must be an array of n={n} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    arr = np.empty((n, d), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != d:
            raise ValueError(f"{what}: row {i} must hold d={d} fibers, got {len(row) if isinstance(row, list) else type(row).__name__}")
        for t, pair in enumerate(row):
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(u, (int, float)) for u in pair)):
                raise ValueError(f"{what}: row {i}, fiber {t} is not a [re, im] pair: {pair!r}")
            arr[i, t] = complex(pair[0], pair[1])
    return ModuleVector(arr)
