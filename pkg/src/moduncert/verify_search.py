"""Monte Carlo verification of the uncertainty bounds and minimization of the
entropy sum to probe the sharper conjectured bound.

Verification samples unit vectors, evaluates the entropy sum against the
chosen bound fiberwise in the C(X)-order, and records gaps.  The search
minimizes the pointwise-minimum-over-fibers of the entropy sum over
unit-inner-product vectors.  Everything in sight is fiberwise, so the
search decouples into one problem per fiber on the unit sphere of C^n,
solved by projected gradient descent (project the Euclidean gradient to
the tangent space, step, renormalize) with Armijo backtracking and
multi-start.  Entropies use the 0*ln(0) extension so boundary infima --
where the sharper bound is attained -- are reachable.

Determinism contract: the unit of work (trial index, or fiber*restarts
+ restart for the search) with user seed S always draws from the stream
seeded S XOR unit-index, so any execution schedule gives identical
results, and any single trial can be replayed in isolation.
"""

from __future__ import annotations

import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import add as algebra_add
from .entropy_bounds import (
    ZERO_TOL,
    batch_entropy_values,
    coherence,
    cross_inner_norms,
    deutsch_bound,
    entropy,
    fiber_entropy_sum,
    fiber_entropy_sum_grad,
    mu_bound,
    project_tangent,
)
from .errors import DimensionMismatch, PreconditionError
from .frames import Frame
from .frames import to_json as frame_to_json
from .module_space import ModuleVector, is_unit_inner, module_norm, random_unit_vector
from .module_space import to_json as vector_to_json

BOUND_KINDS = ("deutsch", "maassen_uffink")

VERIFY_GAP_TOL = 1e-9      # gap below -tol counts as a violation
SEARCH_GAP_TOL = 1e-6      # gap below -tol counts as a counterexample candidate
STIFF_TOL = 1e-6           # weights below this make the log-gradient stiff
GRAD_TOL = 1e-8            # tangent gradient norm stopping threshold

_VERIFY_CHUNK = 2048       # trials per vectorized batch; no effect on results


@dataclass(frozen=True)
class VerificationReport:
    """Per-trial gap record for one bound check.

    ``violations`` holds exactly the (trial, fiber, gap) entries with
    gap < -gap_tol; ``boundary_graze_trials`` lists violating trials
    whose vector had a coefficient within zero_tol of vanishing (outside
    the strict entropy domain, so not counterexample evidence).
    """

    trials: int
    bound_kind: str
    bound_value: float
    mu: float
    gap_tol: float
    min_gap: float
    violations: tuple[tuple[int, int, float], ...]
    boundary_graze_trials: tuple[int, ...]
    seed: int
    frames_digest: str
    trial_gaps: np.ndarray
    trial_worst_fiber: np.ndarray


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one entropy-sum minimization.

    ``best_gap`` is recomputed from scratch at report time from the
    assembled ``best_x``; ``boundary_grazing`` marks minima sitting
    within zero_tol of a vanished coefficient.
    """

    best_x: ModuleVector
    best_gap: float
    bound_kind: str
    bound_value: float
    mu: float
    restarts: int
    max_iters: int
    iterations_used: int
    converged: bool
    boundary_grazing: bool
    seed: int
    frames_digest: str
    zero_tol: float


def canonical_json(obj) -> bytes:
    """Stable byte encoding used for content digests."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True).encode()


def frames_digest(frame_a: Frame, frame_b: Frame) -> str:
    """Content hash of the pair of frames, independent of file layout."""
    h = hashlib.sha256()
    h.update(canonical_json(frame_to_json(frame_a)))
    h.update(canonical_json(frame_to_json(frame_b)))
    return "sha256:" + h.hexdigest()


def bound_value_for(bound_kind: str, mu: float) -> float:
    """Resolve a bound kind and coherence to the bound in nats.

    Parseval frames keep mu <= 1 mathematically; floating-point overshoot
    up to 1e-9 is clamped before the closed forms reject it.
    """
    if bound_kind not in BOUND_KINDS:
        raise ValueError(f"unknown bound kind {bound_kind!r}; expected one of {BOUND_KINDS}")
    if 1.0 < mu <= 1.0 + 1e-9:
        mu = 1.0
    return deutsch_bound(mu) if bound_kind == "deutsch" else mu_bound(mu)


def _check_pair(frame_a: Frame, frame_b: Frame) -> None:
    if (frame_a.n, frame_a.d) != (frame_b.n, frame_b.d):
        raise DimensionMismatch(
            f"frames have mismatched shapes: (n={frame_a.n}, d={frame_a.d})"
            f" vs (n={frame_b.n}, d={frame_b.d})"
        )
    for name, fr in (("first", frame_a), ("second", frame_b)):
        if not fr.parseval:
            raise PreconditionError(f"{name} frame is not Parseval at tol={fr.parseval_tol:g}")


def verify(frame_a: Frame, frame_b: Frame, bound_kind: str, trials: int, seed: int,
           gap_tol: float = VERIFY_GAP_TOL, zero_tol: float = ZERO_TOL) -> VerificationReport:
    """Sample unit vectors and check the entropy sum against the bound fiberwise.

    Trial i draws its vector from ``random_unit_vector(n, d, seed ^ i)``,
    so any trial is replayable in isolation.
    """
    _check_pair(frame_a, frame_b)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if gap_tol < 0:
        raise ValueError(f"gap_tol must be >= 0, got {gap_tol}")
    mu = coherence(frame_a, frame_b)
    bound = bound_value_for(bound_kind, mu)
    n, d = frame_a.n, frame_a.d

    trial_gaps = np.empty(trials)
    trial_worst = np.empty(trials, dtype=np.int64)
    violations: list[tuple[int, int, float]] = []
    graze: list[int] = []
    for start in range(0, trials, _VERIFY_CHUNK):
        stop = min(start + _VERIFY_CHUNK, trials)
        xs = np.empty((stop - start, n, d), dtype=np.complex128)
        for i in range(start, stop):
            xs[i - start] = random_unit_vector(n, d, seed ^ i).entries
        sa, za = batch_entropy_values(frame_a.analysis, xs, zero_tol)
        sb, zb = batch_entropy_values(frame_b.analysis, xs, zero_tol)
        gaps = (sa + sb) - bound                       # (chunk, d)
        trial_gaps[start:stop] = gaps.min(axis=1)
        trial_worst[start:stop] = gaps.argmin(axis=1)
        bad_trial, bad_fiber = np.nonzero(gaps < -gap_tol)
        for s, t in zip(bad_trial, bad_fiber):
            violations.append((start + int(s), int(t), float(gaps[s, t])))
        zeros = za + zb
        graze.extend(start + int(s) for s in np.unique(bad_trial) if zeros[s] > 0)

    return VerificationReport(
        trials=trials,
        bound_kind=bound_kind,
        bound_value=float(bound),
        mu=mu,
        gap_tol=gap_tol,
        min_gap=float(trial_gaps.min()),
        violations=tuple(violations),
        boundary_graze_trials=tuple(graze),
        seed=seed,
        frames_digest=frames_digest(frame_a, frame_b),
        trial_gaps=trial_gaps,
        trial_worst_fiber=trial_worst,
    )


def recompute_gap(frame_a: Frame, frame_b: Frame, x: ModuleVector, bound_kind: str,
                  zero_tol: float = ZERO_TOL) -> tuple[float, bool]:
    """Gap of the entropy sum at x against the bound, from scratch.

    Returns (gap, boundary_grazing).  This is the replay path: it goes
    through the public entropy evaluation, not the optimizer internals.
    """
    ea = entropy(frame_a, x, zero_tol)
    eb = entropy(frame_b, x, zero_tol)
    total = algebra_add(ea.value, eb.value)
    mu = coherence(frame_a, frame_b)
    bound = bound_value_for(bound_kind, mu)
    gap = float(np.min(total.values.real)) - bound
    return gap, (ea.zero_coefficient_count + eb.zero_coefficient_count) > 0


def _coordinate_quadratic_sweep(mats, v, f, zero_tol, h0=1e-2):
    """Derivative-free descent sweep: per real coordinate, fit a quadratic
    through three on-sphere evaluations and jump to its minimizer.

    Used where vanished weights make the log-gradient stiff; shrinks the
    probe until it finds descent or bottoms out.
    """
    n = v.shape[0]
    h = h0
    while h >= 1e-9:
        improved = False
        for k in range(2 * n):
            e = np.zeros(n, dtype=np.complex128)
            e[k % n] = 1.0 if k < n else 1.0j

            def on_sphere(s):
                u = v + s * e
                return u / np.linalg.norm(u)

            fp = fiber_entropy_sum(mats, on_sphere(h), zero_tol)
            fm = fiber_entropy_sum(mats, on_sphere(-h), zero_tol)
            curve = (fp + fm - 2.0 * f) / (h * h)
            slope = (fp - fm) / (2.0 * h)
            if curve > 0:
                step = float(np.clip(-slope / curve, -8.0 * h, 8.0 * h))
            else:
                step = -8.0 * h if slope > 0 else 8.0 * h
            candidates = [(fp, h), (fm, -h)]
            vq = on_sphere(step)
            candidates.append((fiber_entropy_sum(mats, vq, zero_tol), step))
            fbest, sbest = min(candidates, key=lambda c: c[0])
            if fbest < f - 1e-15:
                v = on_sphere(sbest)
                f = fbest
                improved = True
        if improved:
            return True, v, f
        h /= 32.0
    return False, v, f


def _pgd_fiber(mats, v0, max_iters, zero_tol, grad_tol, stiff_tol):
    """Projected gradient descent on the unit sphere of C^n, one start.

    Returns (v, f, iterations, converged); converged means the tangent
    gradient dropped below grad_tol or progress stopped at floating
    resolution, as opposed to running out of iterations.
    """
    v = v0 / np.linalg.norm(v0)
    f, g, min_w = fiber_entropy_sum_grad(mats, v, zero_tol)
    iters = 0
    converged = False
    stall = 0
    while iters < max_iters:
        iters += 1
        if min_w < stiff_tol:
            improved, v, f = _coordinate_quadratic_sweep(mats, v, f, zero_tol)
            if not improved:
                converged = True
                break
            f, g, min_w = fiber_entropy_sum_grad(mats, v, zero_tol)
            continue
        gt = project_tangent(g, v)
        gnorm = float(np.linalg.norm(gt))
        if gnorm <= grad_tol:
            converged = True
            break
        alpha = 1.0
        accepted = False
        for _ in range(60):
            u = v - alpha * gt
            u /= np.linalg.norm(u)
            fu = fiber_entropy_sum(mats, u, zero_tol)
            if fu <= f - 1e-4 * alpha * gnorm * gnorm:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            converged = True
            break
        f_prev = f
        v = u
        f, g, min_w = fiber_entropy_sum_grad(mats, v, zero_tol)
        if f_prev - f <= 1e-13 * max(1.0, abs(f)):
            stall += 1
            if stall >= 8:
                converged = True
                break
        else:
            stall = 0
    return v, f, iters, converged


def _search_fiber(mats, n, restarts, max_iters, seed, t, zero_tol, grad_tol):
    """Multi-start minimization of one fiber; unit r uses seed ^ (t*restarts + r)."""
    best_v, best_f, best_conv = None, np.inf, False
    iters_total = 0
    for r in range(restarts):
        unit_seed = seed ^ (t * restarts + r)
        v0 = random_unit_vector(n, 1, unit_seed).entries[:, 0]
        v, f, iters, conv = _pgd_fiber(mats, v0, max_iters, zero_tol, grad_tol, STIFF_TOL)
        iters_total += iters
        if f < best_f:
            best_v, best_f, best_conv = v, f, conv
    return best_v, best_f, best_conv, iters_total


def minimize_entropy_sum(frame_a: Frame, frame_b: Frame, bound_kind: str,
                         restarts: int = 32, max_iters: int = 2000, seed: int = 0,
                         zero_tol: float = ZERO_TOL, grad_tol: float = GRAD_TOL,
                         threads: int = 1) -> SearchResult:
    """Minimize the pointwise-minimum-over-fibers entropy sum over unit x.

    The problem decouples into one sphere minimization per fiber;
    ``best_x`` assembles every fiber's minimizer, so the reported gap is
    attained at the worst fiber.  With restarts a power of two, the run
    on fiber t reproduces exactly the d=1 run seeded seed ^ (t*restarts)
    on the restricted frame (the unit indices coincide bitwise).
    """
    _check_pair(frame_a, frame_b)
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    mu = coherence(frame_a, frame_b)
    bound = bound_value_for(bound_kind, mu)
    n, d = frame_a.n, frame_a.d

    def run_fiber(t):
        mats = [frame_a.analysis[t], frame_b.analysis[t]]
        return _search_fiber(mats, n, restarts, max_iters, seed, t, zero_tol, grad_tol)

    if threads > 1 and d > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            fiber_results = list(pool.map(run_fiber, range(d)))
    else:
        fiber_results = [run_fiber(t) for t in range(d)]

    entries = np.empty((n, d), dtype=np.complex128)
    iterations_used = 0
    converged = True
    for t, (v, _f, conv, iters) in enumerate(fiber_results):
        entries[:, t] = v
        iterations_used += iters
        converged = converged and conv
    best_x = ModuleVector(entries)
    best_gap, grazing = recompute_gap(frame_a, frame_b, best_x, bound_kind, zero_tol)

    return SearchResult(
        best_x=best_x,
        best_gap=best_gap,
        bound_kind=bound_kind,
        bound_value=float(bound),
        mu=mu,
        restarts=restarts,
        max_iters=max_iters,
        iterations_used=iterations_used,
        converged=converged,
        boundary_grazing=grazing,
        seed=seed,
        frames_digest=frames_digest(frame_a, frame_b),
        zero_tol=zero_tol,
    )


def is_counterexample_candidate(result: SearchResult, gap_tol: float = SEARCH_GAP_TOL) -> bool:
    """A candidate needs a genuinely negative gap away from the boundary;
    boundary-grazing minima live outside the strict entropy domain."""
    return result.best_gap < -gap_tol and not result.boundary_grazing


def report_to_dict(report: VerificationReport) -> dict:
    """Full JSON body of a verification report (fixed key order)."""
    return {
        "kind": "verification",
        "trials": report.trials,
        "bound_kind": report.bound_kind,
        "mu": report.mu,
        "bound_value": report.bound_value,
        "gap_tol": report.gap_tol,
        "seed": report.seed,
        "frames_digest": report.frames_digest,
        "min_gap": report.min_gap,
        "violations": [[t, f, g] for (t, f, g) in report.violations],
        "boundary_graze_trials": list(report.boundary_graze_trials),
        "trial_gaps": [float(g) for g in report.trial_gaps],
        "trial_worst_fiber": [int(t) for t in report.trial_worst_fiber],
    }


def report_csv_rows(report: VerificationReport):
    """One row per trial: trial index, min fiber gap, worst fiber index."""
    yield ("trial", "min_gap", "worst_fiber")
    for i in range(report.trials):
        yield (i, repr(float(report.trial_gaps[i])), int(report.trial_worst_fiber[i]))


def search_result_to_dict(result: SearchResult) -> dict:
    """Full JSON body of a search result; carries everything replay needs."""
    return {
        "kind": "search",
        "bound_kind": result.bound_kind,
        "mu": result.mu,
        "bound_value": result.bound_value,
        "seed": result.seed,
        "frames_digest": result.frames_digest,
        "zero_tol": result.zero_tol,
        "restarts": result.restarts,
        "max_iters": result.max_iters,
        "iterations_used": result.iterations_used,
        "converged": result.converged,
        "boundary_grazing": result.boundary_grazing,
        "best_gap": result.best_gap,
        "best_x": vector_to_json(result.best_x),
    }


def proof_chain_check(frame_a: Frame, frame_b: Frame, x: ModuleVector,
                      tol: float = 1e-10) -> bool:
    """Check the pairwise product bound the uncertainty proof threads through
    the monotone logarithm:

        ||<tau_j, x><x, omega_k>|| <= (||tau_j|| ||omega_k|| + ||<tau_j, omega_k>||)/2

    for every (j, k), with x of unit inner product.
    """
    if not is_unit_inner(x):
        raise PreconditionError("proof_chain_check needs a unit inner product x")
    if (x.n, x.d) != (frame_a.n, frame_a.d):
        raise DimensionMismatch(
            f"vector shape (n={x.n}, d={x.d}) does not match frame (n={frame_a.n}, d={frame_a.d})"
        )
    if (frame_a.n, frame_a.d) != (frame_b.n, frame_b.d):
        raise DimensionMismatch("frames have mismatched shapes")
    # |<tau_j, x>(t)| = |<x, tau_j>(t)|, and the analysis caches give the latter.
    ca = np.abs(np.einsum("tji,it->jt", frame_a.analysis, x.entries))   # (m_a, d)
    cb = np.abs(np.einsum("tki,it->kt", frame_b.analysis, x.entries))   # (m_b, d)
    lhs = np.max(ca[:, np.newaxis, :] * cb[np.newaxis, :, :], axis=2)   # (m_a, m_b)
    norms_a = np.array([module_norm(v) for v in frame_a.vectors])
    norms_b = np.array([module_norm(v) for v in frame_b.vectors])
    rhs = 0.5 * (np.outer(norms_a, norms_b) + cross_inner_norms(frame_a, frame_b))
    return bool(np.all(lhs <= rhs + tol))
