"""Structure-constant representation of 2-dimensional real algebras.

An algebra with basis (e1, e2) is stored as its 2x4 matrix of structure
constants A: the product of coordinate vectors u, v is A @ (u (x) v), with
(u (x) v) = (u1*v1, u1*v2, u2*v1, u2*v2).  Columns are ordered by the index
pairs (1,1), (1,2), (2,1), (2,2).

A change of basis by an invertible g acts on matrices as

    A  |->  g @ A @ kron2(inv(g)),

and two matrices present isomorphic algebras exactly when they lie in one
orbit of this action.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "TrivialAlgebraError",
    "SingularMatrixError",
    "TracePair",
    "as_msc",
    "as_gl2",
    "scale_of",
    "is_trivial",
    "require_nontrivial",
    "inv2",
    "det2",
    "cond2",
    "kron2",
    "multiply",
    "act",
    "traces",
    "opposite",
]


class TrivialAlgebraError(ValueError):
    """Raised when an all-zero structure matrix reaches a classification step."""


class SingularMatrixError(ValueError):
    """Raised when a basis-change matrix fails the invertibility threshold."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the library.

    rel_zero is the scale-aware zero test: an entry x of a matrix with largest
    absolute entry s counts as zero when |x| <= rel_zero * s.  Canonical
    parameters are compared with the looser param_match because they
    accumulate more rounding than raw entries.
    """

    rel_zero: float = 1e-9
    param_match: float = 1e-6
    witness_residual: float = 1e-8
    natural_residual: float = 1e-8
    aut_residual: float = 1e-10
    iso_residual: float = 1e-6
    singular_rel: float = 1e-12
    cluster_radius: float = 1e-4


DEFAULT_TOL = Tolerances()


class TracePair(NamedTuple):
    """The two trace row-vectors of a structure matrix."""

    tr1: np.ndarray
    tr2: np.ndarray


def as_msc(obj) -> np.ndarray:
    """Coerce to a finite 2x4 float array of structure constants."""
    A = np.asarray(obj, dtype=float)
    if A.shape != (2, 4):
        raise ValueError(f"structure matrix must be 2x4, got shape {A.shape}")
    if not np.isfinite(A).all():
        raise ValueError("structure matrix entries must be finite")
    return A


def scale_of(A) -> float:
    """Largest absolute entry; the reference scale for zero tests."""
    return float(np.max(np.abs(A)))


def is_trivial(A) -> bool:
    return not np.any(A)


def require_nontrivial(A) -> None:
    if is_trivial(A):
        raise TrivialAlgebraError("trivial algebra")


def det2(g) -> float:
    return float(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])


def cond2(g) -> float:
    """Spectral condition number of a 2x2 matrix (closed form)."""
    m = g.T @ g
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    gap = max(tr * tr - 4.0 * det, 0.0) ** 0.5
    smax = ((tr + gap) / 2.0) ** 0.5
    smin_sq = (tr - gap) / 2.0
    if smin_sq <= 0.0:
        return np.inf
    return float(smax / smin_sq ** 0.5)


def as_gl2(obj, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Coerce to an invertible 2x2 matrix.

    Invertibility is |det g| > singular_rel * ||g||_F^2, which guards the
    Kronecker square of the inverse against catastrophic amplification.
    """
    g = np.asarray(obj, dtype=float)
    if g.shape != (2, 2):
        raise ValueError(f"basis change must be 2x2, got shape {g.shape}")
    if not np.isfinite(g).all():
        raise ValueError("basis change entries must be finite")
    d = det2(g)
    if abs(d) <= tol.singular_rel * float((g * g).sum()):
        raise SingularMatrixError(f"matrix is singular to tolerance (det={d:g})")
    return g


def inv2(g) -> np.ndarray:
    d = det2(g)
    return np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / d


def kron2(m) -> np.ndarray:
    """Kronecker square m (x) m as a 4x4 matrix."""
    m = np.asarray(m, dtype=float)
    return (m[:, None, :, None] * m[None, :, None, :]).reshape(4, 4)


def multiply(A, u, v) -> np.ndarray:
    """Product of coordinate vectors u and v in the algebra given by A."""
    A = np.asarray(A, dtype=float)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return A @ np.array([u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]])


def act(g, A, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Basis change: g @ A @ kron2(inv(g)).  Left action of GL(2, R)."""
    g = as_gl2(g, tol)
    return g @ (np.asarray(A, dtype=float) @ kron2(inv2(g)))


def traces(A) -> TracePair:
    """Trace row-vectors (tr1, tr2).

    Under a basis change by g both transform by right multiplication with
    inv(g), so their dependence pattern is an isomorphism invariant.
    """
    A = np.asarray(A, dtype=float)
    tr1 = np.array([A[0, 0] + A[1, 2], A[0, 1] + A[1, 3]])
    tr2 = np.array([A[0, 0] + A[1, 1], A[0, 2] + A[1, 3]])
    return TracePair(tr1, tr2)


def opposite(A) -> np.ndarray:
    """Structure matrix of the opposite multiplication u*v = v*u.

    Swaps columns 2 and 3; swaps the two trace vectors; commutes with the
    basis-change action.
    """
    A = np.asarray(A, dtype=float)
    return A[:, [0, 2, 1, 3]]
