"""Evolution algebras: natural bases, the E1..E7 classification, automorphism
groups and derivation algebras.

An algebra is an evolution algebra when some basis (f1, f2) satisfies
f1*f2 = f2*f1 = 0; in such a basis the structure matrix has zero middle
columns, i.e. the shape [[a, 0, 0, b], [c, 0, 0, d]].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_TOL,
    Tolerances,
    act,
    as_gl2,
    as_msc,
    inv2,
    kron2,
    require_nontrivial,
    scale_of,
)
from .families import evolution_msc

__all__ = [
    "EvolutionMsc",
    "EvolutionClass",
    "LinearFamily",
    "find_natural_basis",
    "natural_form",
    "classify_evolution",
    "is_automorphism",
    "automorphism_family",
    "derivations",
    "derivation_dimension",
]


@dataclass(frozen=True)
class EvolutionMsc:
    """Structure matrix in a natural basis: [[a, 0, 0, b], [c, 0, 0, d]]."""

    a: float
    b: float
    c: float
    d: float

    @property
    def msc(self) -> np.ndarray:
        return np.array([[self.a, 0, 0, self.b], [self.c, 0, 0, self.d]])

    @staticmethod
    def from_msc(A, tol: Tolerances = DEFAULT_TOL) -> "EvolutionMsc":
        A = as_msc(A)
        mid = float(np.max(np.abs(A[:, 1:3])))
        if mid > tol.natural_residual * max(scale_of(A), 1e-300):
            raise ValueError("matrix is not in natural-basis shape")
        return EvolutionMsc(float(A[0, 0]), float(A[0, 3]),
                            float(A[1, 0]), float(A[1, 3]))


@dataclass(frozen=True)
class EvolutionClass:
    """Canonical evolution family: E1(b, c) with b <= c, E2(b), or E3..E7."""

    label: str
    params: tuple[float, ...] = ()

    @property
    def representative(self) -> np.ndarray:
        return evolution_msc(self.label, *self.params)


@dataclass(frozen=True)
class LinearFamily:
    """A set of 2x2 matrices: a finite set, a parametrized group family, or a
    linear subspace spanned by `generators`.

    For group families `generators` are the tangent directions at the
    identity and `element` materializes a member from parameter values; each
    materialized member is re-checked against the defining equation of the
    producing operation before being handed out.
    """

    kind: str                       # "finite-set" | "group-family" | "linear-subspace"
    base: np.ndarray
    generators: tuple[np.ndarray, ...]
    constraints: str = ""
    _element_fn: Optional[Callable[..., np.ndarray]] = field(default=None, repr=False)
    _verify: Optional[Callable[[np.ndarray], bool]] = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def element(self, *params: float) -> np.ndarray:
        if self.kind == "finite-set":
            raise ValueError("finite set has no parameters; use elements()")
        if self.kind == "linear-subspace":
            out = self.base + sum(t * g for t, g in zip(params, self.generators))
        else:
            out = self._element_fn(*params)
        if self._verify is not None and not self._verify(out):
            raise ArithmeticError("family element failed its defining equation")
        return out

    def elements(self) -> list[np.ndarray]:
        if self.kind != "finite-set":
            raise ValueError("only finite sets enumerate all elements")
        out = [self.base] + [np.asarray(g) for g in self.generators]
        if self._verify is not None:
            for g in out:
                if not self._verify(g):
                    raise ArithmeticError("family element failed its defining equation")
        return out

    def sample(self, n: int) -> list[np.ndarray]:
        """Deterministic sample of n members (all of them for finite sets)."""
        if self.kind == "finite-set":
            return self.elements()
        if self.kind == "linear-subspace":
            ts = np.linspace(-2.0, 2.0, n)
            return [self.element(*(t,) * self.dimension) for t in ts]
        return [self.element(*p) for p in self._sample_params(n)]

    def _sample_params(self, n: int) -> list[tuple[float, ...]]:
        bad = _EXCLUDED.get(self.constraints)
        vals = [t for t in np.linspace(-2.0, 2.5, n + 2)
                if bad is None or abs(t - bad) > 0.2][:n]
        k = 2 if self.constraints == "t != 0" else 1
        if k == 1:
            return [(t,) for t in vals]
        return [(t, s) for t, s in zip(vals, np.linspace(-3.0, 3.0, len(vals)))]


_EXCLUDED = {"t != 1": 1.0, "t != 1/2": 0.5, "t != 0": 0.0}

_SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])
_FLIP = np.array([[1.0, 0.0], [0.0, -1.0]])


def is_automorphism(g, A, tol: Tolerances = DEFAULT_TOL,
                    rtol: Optional[float] = None) -> bool:
    """True when g.A = A.(g (x) g), i.e. g preserves the multiplication."""
    g = as_gl2(g, tol)
    A = as_msc(A)
    resid = scale_of(g @ A - A @ kron2(g))
    denom = max(scale_of(A), 1e-300) * (1 + scale_of(g)) ** 2
    return resid <= (tol.aut_residual if rtol is None else rtol) * denom


# ---------------------------------------------------------------------------
# natural basis search


def _pair_system(A) -> tuple[np.ndarray, np.ndarray]:
    """S0, S1 with S(u) = u1*S0 + u2*S1; rows of the 4x2 matrix S(u) are the
    linear conditions u*v = 0 and v*u = 0 on v."""
    S0 = np.array([[A[0, 0], A[0, 1]], [A[1, 0], A[1, 1]],
                   [A[0, 0], A[0, 2]], [A[1, 0], A[1, 2]]])
    S1 = np.array([[A[0, 2], A[0, 3]], [A[1, 2], A[1, 3]],
                   [A[0, 1], A[0, 3]], [A[1, 1], A[1, 3]]])
    return S0, S1


def _quad_roots(c2: float, c1: float, c0: float,
                s2: float, s1: float) -> list[float]:
    """Real roots of c2 t^2 + c1 t + c0.

    s2 and s1 are the cancellation scales of the leading coefficients (the
    sums of magnitudes of the products that formed them); a coefficient
    below its own scale counts as zero, degrading the degree.
    """
    if abs(c2) <= 1e-10 * (s2 + 1e-300):
        if abs(c1) <= 1e-10 * (s1 + 1e-300):
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    q = -0.5 * (c1 + np.copysign(disc ** 0.5, c1 if c1 != 0 else 1.0))
    roots = [q / c2]
    if q != 0:
        roots.append(c0 / q)
    else:
        roots.append(0.0)
    return roots


def _candidate_vs(u: np.ndarray, S0, S1, tol: Tolerances):
    """Null direction(s) of S(u) if rank(S(u)) <= 1, else None."""
    S = u[0] * S0 + u[1] * S1
    U, sv, Vt = np.linalg.svd(S, full_matrices=False)
    if sv[1] > 1e-7 * max(sv[0], 1e-300):
        return None
    if sv[0] <= 1e-12:
        return [np.array([0.0, 1.0]), np.array([1.0, 0.0])]   # S ~ 0: any v
    return [Vt[1]]


def find_natural_basis(A, tol: Tolerances = DEFAULT_TOL) -> Optional[np.ndarray]:
    """Basis change g such that act(g, A) has zero middle columns, or None.

    For a direction u the conditions u*v = v*u = 0 stack into the 4x2 system
    S(u) v = 0, linear in u.  A valid pair needs rank(S(u)) <= 1 with a null
    vector independent of u; rank deficiency means all six 2x2 minors of
    S(u) vanish, and each minor is a quadratic in t for u = (1, t).  The
    search enumerates the real roots of every non-degenerate minor (plus the
    probes t = 0 and u = (0, 1)), verifies the rank condition with an SVD at
    each candidate, and returns the basis with the smallest verified
    middle-column residual.
    """
    A = as_msc(A)
    require_nontrivial(A)
    S0, S1 = _pair_system(A)

    # minor coefficients c2 t^2 + c1 t + c0 over all row pairs of S0 + t S1;
    # each coefficient is compared against its own cancellation scale, since
    # orbit points can mix entry magnitudes across several orders
    ts: list[float] = [0.0]
    for i in range(4):
        for j in range(i + 1, 4):
            c0 = S0[i, 0] * S0[j, 1] - S0[i, 1] * S0[j, 0]
            c1 = (S0[i, 0] * S1[j, 1] + S1[i, 0] * S0[j, 1]
                  - S0[i, 1] * S1[j, 0] - S1[i, 1] * S0[j, 0])
            c2 = S1[i, 0] * S1[j, 1] - S1[i, 1] * S1[j, 0]
            s0 = abs(S0[i, 0] * S0[j, 1]) + abs(S0[i, 1] * S0[j, 0])
            s1 = (abs(S0[i, 0] * S1[j, 1]) + abs(S1[i, 0] * S0[j, 1])
                  + abs(S0[i, 1] * S1[j, 0]) + abs(S1[i, 1] * S0[j, 0]))
            s2 = abs(S1[i, 0] * S1[j, 1]) + abs(S1[i, 1] * S1[j, 0])
            if (abs(c0) <= 1e-10 * s0 and abs(c1) <= 1e-10 * s1
                    and abs(c2) <= 1e-10 * s2):
                continue                      # degenerate minor constrains nothing
            ts.extend(_quad_roots(c2, c1, c0, s2, s1))

    ts.sort()
    dedup: list[float] = []
    for t in ts:
        if not dedup or t - dedup[-1] > 1e-7:
            dedup.append(t)

    candidates = [np.array([1.0, t]) / max(1.0, abs(t)) for t in dedup]
    candidates.append(np.array([0.0, 1.0]))

    best = None
    for u in candidates:
        u = u / np.linalg.norm(u)
        vs = _candidate_vs(u, S0, S1, tol)
        if vs is None:
            continue
        for v in vs:
            if abs(u[0] * v[1] - u[1] * v[0]) < 1e-7:
                continue                      # null direction parallel to u
            ginv = np.column_stack([u, v])
            g = inv2(ginv)
            F = act(g, A, tol)
            resid = float(np.max(np.abs(F[:, 1:3]))) / max(scale_of(F), 1e-300)
            if best is None or resid < best[0]:
                best = (resid, g)
    if best is not None and best[0] <= tol.natural_residual:
        return best[1]
    return None


def natural_form(A, g, tol: Tolerances = DEFAULT_TOL) -> EvolutionMsc:
    """Apply a natural-basis witness and read off the diagonal products.

    The middle columns of act(g, A) must already be below the natural-basis
    residual; they are snapped to exact zero.
    """
    F = act(g, as_msc(A), tol)
    mid = float(np.max(np.abs(F[:, 1:3])))
    if mid > tol.natural_residual * max(scale_of(F), 1e-300):
        raise ValueError("witness does not produce a natural basis")
    return EvolutionMsc(float(F[0, 0]), float(F[0, 3]),
                        float(F[1, 0]), float(F[1, 3]))


# ---------------------------------------------------------------------------
# classification of natural forms


def classify_evolution(E: EvolutionMsc, tol: Tolerances = DEFAULT_TOL) -> EvolutionClass:
    """Canonical evolution family of a natural-form algebra.

    Branches on det [[a, b], [c, d]]:

    * det != 0: diagonal scaling gives E1(b, c) when a, d != 0 (parameters
      stored sorted), E2 when exactly one of a, d vanishes, E3 when both do;
    * det = 0 with one row zero: sign of the ratio of the two products gives
      E4 / E5 / E2(0), or E7 when the surviving row is (0, b);
    * det = 0 with rows proportional by lam != 0: E4 / E5 / E2(0) by the sign
      of a*b when a + b*lam^2 != 0, and E6 on a + b*lam^2 = 0.
    """
    a, b, c, d = E.a, E.b, E.c, E.d
    s = max(abs(a), abs(b), abs(c), abs(d))
    if s == 0.0:
        raise ValueError("trivial algebra")
    z = tol.rel_zero * s
    det = a * d - b * c

    if abs(det) > tol.rel_zero * s * s:
        az, dz = abs(a) <= z, abs(d) <= z
        if not az and not dz:
            bp = a * b / (d * d)
            cp = c * d / (a * a)
            lo, hi = sorted((bp, cp))
            return EvolutionClass("E1", (lo, hi))
        if not az:                       # d = 0, b*c != 0
            return EvolutionClass("E2", (b * c * c / a ** 3,))
        if not dz:                       # a = 0: swap then reduce
            return EvolutionClass("E2", (c * b * b / d ** 3,))
        return EvolutionClass("E3")

    row1_zero = abs(a) <= z and abs(b) <= z
    row2_zero = abs(c) <= z and abs(d) <= z
    if row1_zero and row2_zero:
        raise ValueError("trivial algebra")
    if row1_zero or row2_zero:
        x, y = (a, b) if row2_zero else (d, c)
        if abs(x) <= z:
            return EvolutionClass("E7")
        r = y / x
        if abs(r) <= tol.rel_zero:
            return EvolutionClass("E2", (0.0,))
        return EvolutionClass("E4" if r > 0 else "E5")

    lam = (a * c + b * d) / (a * a + b * b)
    w = a + b * lam * lam
    if abs(w) <= tol.rel_zero * (abs(a) + abs(b) * lam * lam + 1e-300):
        return EvolutionClass("E6")
    if abs(a) <= z or abs(b) <= z:
        return EvolutionClass("E2", (0.0,))
    return EvolutionClass("E4" if a * b > 0 else "E5")


# ---------------------------------------------------------------------------
# automorphism groups (table of closed forms, re-verified on emission)


def automorphism_family(cls: EvolutionClass,
                        tol: Tolerances = DEFAULT_TOL) -> LinearFamily:
    """Automorphism group of a canonical evolution algebra as a closed form.

    E1(b, c): {I} for b != c, {I, swap} for b = c; E2(b != 0): {I};
    E2(0): [[1, 0], [t, 1-t]] with t != 1; E3: {I, swap};
    E4, E5: {I, diag(1, -1)}; E6: [[t, 1-t], [1-t, t]] with t != 1/2;
    E7: [[t^2, s], [0, t]] with t != 0.
    """
    A = cls.representative
    I = np.eye(2)

    def chk(g):
        return is_automorphism(g, A, tol)

    lbl = cls.label
    if lbl == "E1":
        b, c = cls.params
        if abs(b - c) <= tol.param_match:
            return LinearFamily("finite-set", I, (_SWAP.copy(),), "", None, chk)
        return LinearFamily("finite-set", I, (), "", None, chk)
    if lbl == "E2":
        if abs(cls.params[0]) > tol.param_match:
            return LinearFamily("finite-set", I, (), "", None, chk)
        gen = np.array([[0.0, 0.0], [1.0, -1.0]])
        return LinearFamily(
            "group-family", I, (gen,), "t != 1",
            lambda t: np.array([[1.0, 0.0], [t, 1.0 - t]]), chk)
    if lbl == "E3":
        return LinearFamily("finite-set", I, (_SWAP.copy(),), "", None, chk)
    if lbl in ("E4", "E5"):
        return LinearFamily("finite-set", I, (_FLIP.copy(),), "", None, chk)
    if lbl == "E6":
        gen = np.array([[1.0, -1.0], [-1.0, 1.0]])
        return LinearFamily(
            "group-family", I, (gen,), "t != 1/2",
            lambda t: np.array([[t, 1.0 - t], [1.0 - t, t]]), chk)
    if lbl == "E7":
        g1 = np.array([[2.0, 0.0], [0.0, 1.0]])
        g2 = np.array([[0.0, 1.0], [0.0, 0.0]])
        return LinearFamily(
            "group-family", I, (g1, g2), "t != 0",
            lambda t, s: np.array([[t * t, s], [0.0, t]]), chk)
    raise ValueError(f"unknown evolution label {cls.label!r}")


# ---------------------------------------------------------------------------
# derivation algebras

# constant matrices M_k = E_k (x) I + I (x) E_k for the 2x2 basis E_k
_DER_BASIS = (
    np.array([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0.0]]),
    np.array([[0, 1, 1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0.0]]),
    np.array([[0, 0, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 1, 0.0]]),
    np.array([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2.0]]),
)
_E2 = (np.array([[1.0, 0], [0, 0]]), np.array([[0, 1.0], [0, 0]]),
       np.array([[0, 0], [1.0, 0]]), np.array([[0, 0], [0, 1.0]]))


def derivations(A, tol: Tolerances = DEFAULT_TOL) -> LinearFamily:
    """Derivation algebra of any structure matrix as a linear subspace.

    A 2x2 matrix D is a derivation when A (D (x) I + I (x) D) = D A; over the
    four unknown entries of D this is an 8x4 linear system whose null space
    is returned (an orthonormal basis, kind "linear-subspace").
    """
    A = as_msc(A)
    L = np.empty((8, 4))
    for k in range(4):
        L[:, k] = (A @ _DER_BASIS[k] - _E2[k] @ A).ravel()
    ns = scipy.linalg.null_space(L, rcond=1e-8)
    gens = tuple(ns[:, j].reshape(2, 2) for j in range(ns.shape[1]))

    def chk(D):
        resid = scale_of(A @ (np.kron(D, np.eye(2)) + np.kron(np.eye(2), D)) - D @ A)
        return resid <= 1e-10 * max(scale_of(A), 1e-300) * (1 + scale_of(D))

    return LinearFamily("linear-subspace", np.zeros((2, 2)), gens,
                        "any real coefficients", None, chk)


def derivation_dimension(A, tol: Tolerances = DEFAULT_TOL) -> int:
    return derivations(A, tol).dimension
