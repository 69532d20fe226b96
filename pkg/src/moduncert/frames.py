"""Finite Parseval frames for the module C(X)^n.

A frame is a family of m module vectors sharing n and d.  Per fiber t
the family is just m vectors in C^n; stacking the fiber-t analysis
coefficients row-wise gives the analysis matrix A(t) (row j is the
conjugate of tau_j's fiber), and the family is Parseval exactly when
A(t)^H A(t) = I_n in every fiber.  Frames cache those matrices at
construction because every downstream quantity (entropy, coherence,
reconstruction) is a per-fiber dense product against them.

Infinite index sets are out of scope: in a rank-n module any Parseval
frame carries finite essential content, so finite families are the
whole story here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .module_space import ModuleVector, inner, is_unit_inner, module_norm, scale
from .module_space import from_json as vector_from_json
from .module_space import to_json as vector_to_json

PARSEVAL_TOL = 1e-9


@dataclass(frozen=True)
class Frame:
    """Immutable frame with cached per-fiber analysis matrices.

    ``analysis[t]`` is the m x n matrix whose row j is the conjugated
    fiber-t vector of tau_j, so ``analysis[t] @ v`` lists the
    coefficients <v, tau_j>(t).  ``parseval`` records whether the
    Parseval identity held at ``parseval_tol`` when the frame was built.
    """

    vectors: tuple[ModuleVector, ...]
    parseval_tol: float = PARSEVAL_TOL
    analysis: np.ndarray = field(init=False, repr=False, compare=False)
    parseval: bool = field(init=False, compare=False)

    def __post_init__(self):
        vecs = tuple(self.vectors)
        if len(vecs) == 0:
            raise ValueError("a frame needs at least one vector")
        n, d = vecs[0].n, vecs[0].d
        for j, v in enumerate(vecs):
            if (v.n, v.d) != (n, d):
                raise DimensionMismatch(
                    f"frame vector {j} has shape (n={v.n}, d={v.d}), expected (n={n}, d={d})"
                )
        if len(vecs) < n:
            raise ValueError(
                f"m={len(vecs)} frame vectors cannot be Parseval for rank n={n}; need m >= n"
            )
        if self.parseval_tol < 0:
            raise ValueError(f"parseval_tol must be >= 0, got {self.parseval_tol}")
        # analysis[t, j, :] = conj(tau_j fiber t)
        stacked = np.stack([v.entries for v in vecs], axis=0)      # (m, n, d)
        analysis = np.conj(stacked).transpose(2, 0, 1).copy()      # (d, m, n)
        analysis.setflags(write=False)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "analysis", analysis)
        object.__setattr__(self, "parseval", _parseval_defect(analysis) <= self.parseval_tol)

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def n(self) -> int:
        return self.vectors[0].n

    @property
    def d(self) -> int:
        return self.vectors[0].d


def _parseval_defect(analysis: np.ndarray) -> float:
    """Max-entry distance of A(t)^H A(t) from I_n, worst fiber."""
    n = analysis.shape[2]
    gram = np.einsum("tji,tjk->tik", np.conj(analysis), analysis)
    return float(np.max(np.abs(gram - np.eye(n))))


def is_parseval(frame: Frame, tol: float | None = None) -> bool:
    """True iff the per-fiber Parseval identity holds to tol (max-entry norm).

    Equivalent to the reconstruction identity x = sum_j <x, tau_j> tau_j
    for all x; the equivalence is exercised by the test suite rather
    than assumed.
    """
    if tol is None:
        tol = frame.parseval_tol
    return _parseval_defect(frame.analysis) <= tol


def reconstruct(frame: Frame, x: ModuleVector) -> ModuleVector:
    """sum_j <x, tau_j> tau_j; equals x (to tolerance) iff the frame is Parseval."""
    if (x.n, x.d) != (frame.n, frame.d):
        raise DimensionMismatch(
            f"vector shape (n={x.n}, d={x.d}) does not match frame (n={frame.n}, d={frame.d})"
        )
    out = np.zeros_like(x.entries)
    for tau in frame.vectors:
        out += scale(inner(x, tau), tau).entries
    return ModuleVector(out)


def has_unit_inner_products(frame: Frame, tol: float = 1e-9) -> bool:
    """True iff <tau_j, tau_j> = 1 for every j."""
    return all(is_unit_inner(v, tol) for v in frame.vectors)


def max_vector_norm(frame: Frame) -> float:
    """max_j ||tau_j||; at most 1 (up to tolerance) for Parseval frames."""
    return max(module_norm(v) for v in frame.vectors)


def _frame_from_fiber_matrices(mats: np.ndarray, parseval_tol: float) -> Frame:
    """Build a Frame from per-fiber synthesis matrices, shape (d, m, n): row j of
    mats[t] is tau_j's fiber-t vector."""
    d, m, n = mats.shape
    entries = mats.transpose(1, 2, 0)  # (m, n, d)
    return Frame(tuple(ModuleVector(entries[j]) for j in range(m)), parseval_tol)


def _haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via phase-corrected QR of a complex Gaussian."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    q = q * (diag / np.abs(diag))[np.newaxis, :]
    return q


def gen_onb(n: int, d: int, seed) -> Frame:
    """Random orthonormal basis per fiber: rows of an independent Haar unitary."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    mats = np.stack([_haar_unitary(n, rng) for _ in range(d)], axis=0)
    return _frame_from_fiber_matrices(mats, PARSEVAL_TOL)


def gen_random_parseval(n: int, m: int, d: int, seed) -> Frame:
    """Random Parseval frame: per fiber, the isometry factor of the polar
    decomposition of an m x n complex Gaussian (rows are the frame vectors)."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    if m < n:
        raise ValueError(f"need m >= n for a Parseval frame, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    mats = np.empty((d, m, n), dtype=np.complex128)
    for t in range(d):
        g = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        u, _, vh = np.linalg.svd(g, full_matrices=False)
        mats[t] = u @ vh
    return _frame_from_fiber_matrices(mats, PARSEVAL_TOL)


def gen_fourier_pair(n: int, d: int) -> tuple[Frame, Frame]:
    """The standard basis and the discrete Fourier basis, replicated per fiber.

    The bases are mutually unbiased in every fiber: all cross inner
    products have modulus 1/sqrt(n).
    """
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    std = np.broadcast_to(np.eye(n, dtype=np.complex128), (d, n, n))
    k, i = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    dft = np.exp(2j * np.pi * k * i / n) / np.sqrt(n)  # row k = omega_k
    four = np.broadcast_to(dft, (d, n, n))
    return (
        _frame_from_fiber_matrices(np.array(std), PARSEVAL_TOL),
        _frame_from_fiber_matrices(np.array(four), PARSEVAL_TOL),
    )


def restrict_to_fiber(frame: Frame, t: int) -> Frame:
    """The d=1 frame obtained by keeping only fiber t of every vector.

    Restriction preserves the Parseval property fiber by fiber; the
    search machinery leans on this decoupling.
    """
    if not 0 <= t < frame.d:
        raise ValueError(f"fiber index {t} out of range for d={frame.d}")
    return Frame(
        tuple(ModuleVector(v.entries[:, t : t + 1]) for v in frame.vectors),
        frame.parseval_tol,
    )


def to_json(frame: Frame) -> dict:
    """JSON encoding: {"n", "m", "d", "vectors": [ModuleVector...]}."""
    return {
        "n": frame.n,
        "m": frame.m,
        "d": frame.d,
        "vectors": [vector_to_json(v) for v in frame.vectors],
    }


def from_json(data, *, what: str = "frame", parseval_tol: float = PARSEVAL_TOL) -> Frame:
    """Decode and validate the Frame JSON encoding."""
    if not isinstance(data, dict):
        raise ValueError(f"{what}: expected an object with n, m, d, vectors")
    for key in ("n", "m", "d", "vectors"):
        if key not in data:
            raise ValueError(f"{what}: missing field {key!r}")
    n, m, d = data["n"], data["m"], data["d"]
    vecs_json = data["vectors"]
    if not isinstance(vecs_json, list) or len(vecs_json) != m:
        raise ValueError(f"{what}: expected m={m} vectors, got {len(vecs_json) if isinstance(vecs_json, list) else type(vecs_json).__name__}")
    vecs = []
    for j, vj in enumerate(vecs_json):
        v = vector_from_json(vj, what=f"{what}: vector {j}")
        if (v.n, v.d) != (n, d):
            raise ValueError(
                f"{what}: vector {j} has (n={v.n}, d={v.d}), header says (n={n}, d={d})"
            )
        vecs.append(v)
    return Frame(tuple(vecs), parseval_tol)
