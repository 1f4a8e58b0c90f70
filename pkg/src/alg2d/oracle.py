"""Randomized verification oracles.

Orbit sampling grounds every classification claim: an isomorphism invariant
must be constant along {act(g, A)}.  The isomorphism search is a
falsification probe, not a decision procedure: a found witness certifies
isomorphism, a miss certifies nothing (the classifier does the certifying).

All sampling uses numpy's PCG64 generator, so a seed reproduces the exact
sample sequence across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Tolerances,
    act,
    as_msc,
    cond2,
    det2,
    kron2,
    require_nontrivial,
    scale_of,
)

__all__ = [
    "OrbitSampler",
    "IsoWitness",
    "AutSearchReport",
    "random_gl2",
    "orbit_sample",
    "brute_iso_search",
    "random_automorphisms",
    "automorphism_report",
]


@dataclass(frozen=True)
class OrbitSampler:
    """Deterministic sampler of basis changes: entries uniform in [-2, 2],
    rejection-resampled until the condition number bound holds."""

    seed: int = 42
    condition_bound: float = 100.0
    count: int = 100


@dataclass(frozen=True)
class IsoWitness:
    """A basis change g with act(g, A) ~= B; residual is relative."""

    g: np.ndarray
    residual: float


@dataclass(frozen=True)
class AutSearchReport:
    """Clustered outcome of the randomized automorphism search."""

    clusters: tuple[np.ndarray, ...]
    n_converged: int
    continuous: bool
    local_dimension: int


def random_gl2(rng: np.random.Generator, condition_bound: float = 100.0,
               tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    while True:
        g = rng.uniform(-2.0, 2.0, (2, 2))
        if abs(det2(g)) <= tol.singular_rel * float((g * g).sum()):
            continue
        if cond2(g) <= condition_bound:
            return g


def orbit_sample(A, sampler: OrbitSampler = OrbitSampler(),
                 tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Deterministic list of `count` orbit points of A."""
    A = as_msc(A)
    require_nontrivial(A)
    rng = np.random.default_rng(sampler.seed)
    return [act(random_gl2(rng, sampler.condition_bound, tol), A, tol)
            for _ in range(sampler.count)]


# ---------------------------------------------------------------------------
# Levenberg-Marquardt on the polynomial residual  r(g) = g A - B (g (x) g)
#
# act(g, A) = B is equivalent to r(g) = 0 for invertible g, and the
# polynomial form needs no matrix inversion, so the minimization is smooth
# everywhere.  Spurious stationary points (g = 0, singular g) are discarded
# by the det check and the re-verification against the true action.

_BASIS2 = (np.array([[1.0, 0], [0, 0]]), np.array([[0, 1.0], [0, 0]]),
           np.array([[0, 0], [1.0, 0]]), np.array([[0, 0], [0, 1.0]]))


def _kron_mixed(x, y) -> np.ndarray:
    return (x[:, None, :, None] * y[None, :, None, :]).reshape(4, 4)


def _lm_solve(A, B, x0: np.ndarray, max_iter: int = 80) -> np.ndarray:
    """Minimize ||g A - B (g (x) g)||^2 from the start g = x0.reshape(2, 2).

    Fixed convergence thresholds: step below 1e-12 (relative) or residual
    below 1e-10 (relative to the problem scale).
    """
    s = max(scale_of(A), scale_of(B), 1e-300)
    x = x0.copy()
    g = x.reshape(2, 2)
    r = (g @ A - B @ kron2(g)).ravel()
    cost = float(r @ r)
    mu = 1e-3
    for _ in range(max_iter):
        J = np.empty((8, 4))
        for k in range(4):
            E = _BASIS2[k]
            J[:, k] = (E @ A - B @ (_kron_mixed(E, g) + _kron_mixed(g, E))).ravel()
        JTJ = J.T @ J
        JTr = J.T @ r
        for _ in range(12):
            try:
                step = np.linalg.solve(JTJ + mu * np.eye(4), -JTr)
            except np.linalg.LinAlgError:
                mu *= 4.0
                continue
            x_new = x + step
            g_new = x_new.reshape(2, 2)
            r_new = (g_new @ A - B @ kron2(g_new)).ravel()
            cost_new = float(r_new @ r_new)
            if cost_new < cost:
                x, g, r, cost = x_new, g_new, r_new, cost_new
                mu = max(mu * 0.3, 1e-12)
                break
            mu *= 4.0
        else:
            break
        denom = s * (1 + scale_of(g)) ** 2
        if np.max(np.abs(step)) <= 1e-12 * (1 + np.max(np.abs(x))):
            break
        if cost ** 0.5 <= 1e-10 * denom:
            break
    # undamped Gauss-Newton polish: quadratic convergence near a solution
    # pushes the residual to machine precision, so even witnesses with a
    # large condition number re-verify against the true action
    for _ in range(3):
        g = x.reshape(2, 2)
        r = (g @ A - B @ kron2(g)).ravel()
        J = np.empty((8, 4))
        for k in range(4):
            E = _BASIS2[k]
            J[:, k] = (E @ A - B @ (_kron_mixed(E, g) + _kron_mixed(g, E))).ravel()
        try:
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        x_new = x + step
        g_new = x_new.reshape(2, 2)
        r_new = (g_new @ A - B @ kron2(g_new)).ravel()
        if float(r_new @ r_new) >= cost:
            break
        x, cost = x_new, float(r_new @ r_new)
    return x


def _witness_from(A, B, g, tol: Tolerances) -> IsoWitness | None:
    if abs(det2(g)) <= max(tol.singular_rel * float((g * g).sum()), 1e-12):
        return None
    resid = scale_of(act(g, A, tol) - B) / max(scale_of(B), 1e-300)
    if resid <= tol.iso_residual:
        return IsoWitness(g, float(resid))
    return None


def brute_iso_search(A, B, budget: int = 200, seed: int = 42,
                     tol: Tolerances = DEFAULT_TOL) -> IsoWitness | None:
    """Multi-start search for g with act(g, A) ~= B.

    Runs `budget` random restarts; returns the first witness whose true
    action residual is below the acceptance threshold, else None.  None is
    not a proof of non-isomorphism.
    """
    A = as_msc(A)
    B = as_msc(B)
    require_nontrivial(A)
    require_nontrivial(B)
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        x0 = rng.uniform(-2.0, 2.0, 4)
        g = _lm_solve(A, B, x0).reshape(2, 2)
        w = _witness_from(A, B, g, tol)
        if w is not None:
            return w
    return None


def _collect_automorphisms(A, budget: int, seed: int,
                           tol: Tolerances) -> list[np.ndarray]:
    A = as_msc(A)
    require_nontrivial(A)
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(budget):
        x0 = rng.uniform(-2.0, 2.0, 4)
        g = _lm_solve(A, A, x0).reshape(2, 2)
        if _witness_from(A, A, g, tol) is not None:
            found.append(g)
    return found


def _cluster(points: list[np.ndarray], radius: float) -> list[np.ndarray]:
    reps: list[np.ndarray] = []
    for p in points:
        if not any(np.max(np.abs(p - q)) <= radius for q in reps):
            reps.append(p)
    reps.sort(key=lambda q: tuple(np.round(q.ravel(), 6)))
    return reps


def random_automorphisms(A, budget: int = 200, seed: int = 42,
                         tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Distinct converged automorphisms of A found by the randomized search,
    deduplicated at the cluster radius.  A lower bound on the automorphism
    group; many clusters indicate a continuous family."""
    pts = _collect_automorphisms(A, budget, seed, tol)
    return _cluster(pts, tol.cluster_radius)


def automorphism_report(A, budget: int = 200, seed: int = 42,
                        tol: Tolerances = DEFAULT_TOL) -> AutSearchReport:
    """Clusters plus a continuity diagnosis.

    Finite automorphism groups of 2-dimensional evolution algebras have at
    most two elements, so a cluster count past the threshold can only come
    from a positive-dimensional family.  The local dimension is estimated
    from the principal components of the converged points near the cluster
    closest to the identity.
    """
    pts = _collect_automorphisms(A, budget, seed, tol)
    reps = _cluster(pts, tol.cluster_radius)
    continuous = len(reps) >= 12
    dim = 0
    if continuous and pts:
        center = min(reps, key=lambda q: np.max(np.abs(q - np.eye(2))))
        near = [p.ravel() for p in pts if np.max(np.abs(p - center)) <= 0.5]
        if len(near) >= 6:
            X = np.array(near) - np.mean(near, axis=0)
            sv = np.linalg.svd(X, compute_uv=False)
            dim = int(np.sum(sv > 0.05 * sv[0]))
    return AutSearchReport(tuple(reps), len(pts), continuous, dim)
