"""Canonicalization of structure matrices under the basis-change action.

Every nonzero 2x4 structure matrix lies in exactly one of five subsets
determined by its trace vectors (independent / dependent nonzero / second
zero / first zero / both zero), and within its subset is equivalent to
exactly one member of the fifteen-family catalogue A1..A15.  The reduction
below is constructive: it returns the family label, the canonical parameter
tuple, and the accumulated basis change ("witness") that maps the input onto
the canonical representative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Tolerances,
    TracePair,
    act,
    as_msc,
    inv2,
    kron2,
    opposite,
    require_nontrivial,
    scale_of,
    traces,
)
from .families import family_msc

__all__ = [
    "CanonicalForm",
    "trace_matrix",
    "subset_of",
    "subset_margin",
    "canonicalize",
    "isomorphic",
]


@dataclass(frozen=True)
class CanonicalForm:
    """Result of canonicalization.

    act(witness, input) equals the representative matrix of (label, params)
    up to the witness-residual tolerance.
    """

    label: str
    params: tuple[float, ...]
    witness: np.ndarray

    @property
    def representative(self) -> np.ndarray:
        return family_msc(self.label, *self.params)


def trace_matrix(A) -> np.ndarray:
    """2x2 matrix whose rows are the two trace vectors."""
    tp = traces(A)
    return np.array([tp.tr1, tp.tr2])


def subset_margin(A) -> dict:
    """Decision margins of the subset test: det of the trace matrix and the
    trace norms.  Small margins flag ill-conditioned classification inputs."""
    tp = traces(A)
    P = np.array([tp.tr1, tp.tr2])
    return {
        "det_P": float(np.linalg.det(P)),
        "trace_norms": [float(np.max(np.abs(tp.tr1))), float(np.max(np.abs(tp.tr2)))],
    }


def _trace_state(A, tol: Tolerances):
    tp = traces(A)
    s = scale_of(A)
    n1 = float(np.max(np.abs(tp.tr1)))
    n2 = float(np.max(np.abs(tp.tr2)))
    z1 = n1 <= tol.rel_zero * s
    z2 = n2 <= tol.rel_zero * s
    detP = float(tp.tr1[0] * tp.tr2[1] - tp.tr1[1] * tp.tr2[0])
    independent = (not z1) and (not z2) and abs(detP) > tol.rel_zero * n1 * n2
    return tp, z1, z2, independent


def subset_of(A, tol: Tolerances = DEFAULT_TOL) -> int:
    """Trace subset id in {1..5}; constant along basis-change orbits."""
    A = as_msc(A)
    require_nontrivial(A)
    _, z1, z2, independent = _trace_state(A, tol)
    if independent:
        return 1
    if not z1 and not z2:
        return 2
    if not z1:
        return 3
    if not z2:
        return 4
    return 5


def _complete_to_basis(row: np.ndarray) -> np.ndarray:
    """Invertible matrix with the given first row; the second row is the
    orthogonal completion, so the result is a scaled rotation (condition 1)."""
    return np.array([[row[0], row[1]], [-row[1], row[0]]])


def _halfplane_reduce(A, lam: float, tol: Tolerances):
    """Reduce a matrix already normalized to tr1 = (1, 0), tr2 = (lam, 0).

    Remaining freedom is g with inv(g) = [[1, 0], [x2, e2]].  The entries
    transform as

        a1' = a1 + 2 a2 x2 + a4 x2^2
        a2' = (a2 + a4 x2) e2
        a4' = a4 e2^2
        b1' = (b1 + (1 + lam - 3 a1) x2 - 3 a2 x2^2 - a4 x2^3) / e2

    and the branch structure on (a4, a2) picks the target family.
    Returns (label, params, stage g).
    """
    m = scale_of(A)
    z = tol.rel_zero * m
    a1 = float(A[0, 0])
    a2 = 0.5 * float(A[0, 1] + A[0, 2])
    a4 = float(A[0, 3])
    b1 = float(A[1, 0])

    if abs(a4) > z:
        x2 = -a2 / a4
        e2 = abs(a4) ** -0.5
        n = b1 + (1 + lam - 3 * a1) * x2 - 3 * a2 * x2 * x2 - a4 * x2 ** 3
        b1p = n / e2
        if b1p < 0:                         # flipping e2 negates b1', fixes the rest
            e2 = -e2
            b1p = -b1p
        a1p = a1 - a2 * a2 / a4
        label = "A2" if a4 > 0 else "A3"
        params = (a1p, b1p, lam - a1p)
    elif abs(a2) > z:
        x2 = -a1 / (2 * a2)
        e2 = 1.0 / a2
        b1p = a2 * b1 - (2 + 2 * lam - 3 * a1) * a1 / 4
        label = "A4"
        params = (b1p, lam)
    else:
        q = 1 + lam - 3 * a1
        if abs(q) > tol.rel_zero * (1 + abs(lam) + 3 * abs(a1)):
            x2 = -b1 / q
            e2 = 1.0
            label, params = "A5", (a1, lam - a1)
        elif abs(b1) > z:
            x2 = 0.0
            e2 = b1
            label, params = "A6", (a1,)
        else:
            x2 = 0.0
            e2 = 1.0
            label, params = "A5", (a1, lam - a1)

    g = inv2(np.array([[1.0, 0.0], [x2, e2]]))
    return label, params, g


def _canonicalize_nonzero_tr1(A, lam_zero: bool, tol: Tolerances):
    """Subsets 2 and 3: normalize tr1 to (1, 0), then run the half-plane
    reduction.  Returns (label, params, witness)."""
    tp = traces(A)
    g0 = _complete_to_basis(tp.tr1)
    M = act(g0, A, tol)
    lam = 0.0 if lam_zero else float(traces(M).tr2[0])
    label, params, g1 = _halfplane_reduce(M, lam, tol)
    return label, params, g1 @ g0


# subset-4 families are the opposites of the subset-2/3 results at lam = 0
_OPPOSITE_LABEL = {"A2": "A7", "A3": "A8", "A4": "A9", "A5": "A10", "A6": "A11"}


def _best_real_root(coeffs) -> float:
    """Best-conditioned real root of a polynomial (high-to-low coefficients).

    Multiple roots are only computed to about sqrt(machine) accuracy and land
    the subsequent reduction in a degenerate frame, so among the real roots
    the one with the largest |p'(t)| is preferred (ties: the smallest root).
    Roots returned with tiny imaginary fuzz are accepted as real.
    """
    p = np.poly1d(coeffs)
    dp = p.deriv()
    real = [r.real for r in np.roots(coeffs)
            if abs(r.imag) <= 1e-6 * (1 + abs(r.real))]
    if not real:
        raise ArithmeticError("no real root found")
    best = None
    for t in sorted(real):
        for _ in range(3):                        # Newton polish
            d = dp(t)
            if d == 0:
                break
            step = p(t) / d
            if abs(step) > 0.1 * (1 + abs(t)):
                break
            t -= step
        margin = abs(dp(t))
        if best is None or margin > best[0] * (1 + 1e-9):
            best = (margin, t)
    return float(best[1])


def _zero_divisor_side(A) -> int:
    """Discriminant sign of the zero-divisor quadratic: +1 means no real
    zero-divisor direction (D < 0, the A12 stratum), -1 means two (D > 0,
    A13), 0 means a double direction (D = 0, A14 and A15).  An isomorphism
    invariant, computed on the raw input."""
    dl = float(A[0, 0] * A[1, 2] - A[0, 2] * A[1, 0])
    dm = float((A[0, 0] * A[1, 3] - A[0, 3] * A[1, 0])
               + (A[0, 1] * A[1, 2] - A[0, 2] * A[1, 1]))
    dr = float(A[0, 1] * A[1, 3] - A[0, 3] * A[1, 1])
    disc = dm * dm - 4 * dl * dr
    if abs(disc) > 1e-10 * (dm * dm + 4 * abs(dl * dr) + 1e-300):
        return -1 if disc > 0 else 1
    return 0


def _reduce_rank1(A) -> np.ndarray:
    """Witness mapping a rank-1 subset-5 matrix onto the A15 representative.

    Rank 1 means the multiplication factors as u*v = B(u, v) * w through a
    single image direction w, and within subset 5 that is exactly the A15
    orbit: B kills w on both sides, so (f, B(f, f) w) with f orthogonal to w
    is a canonical basis.  The scaled-orthogonal variant (f, w) / B(f, f) is
    the same basis composed with a stabilizer element and is perfectly
    conditioned."""
    u_dir = np.linalg.svd(A)[0][:, 0]
    q = u_dir @ A                           # B(u, v) = q . (u (x) v)
    f = np.array([-u_dir[1], u_dir[0]])
    c = float(q @ np.array([f[0] * f[0], f[0] * f[1], f[1] * f[0], f[1] * f[1]]))
    if c == 0.0:
        raise ArithmeticError("degenerate rank-1 algebra in subset 5")
    return inv2(np.column_stack([f, u_dir]) / c)


def _reduce_boundary(A, tol: Tolerances) -> np.ndarray:
    """Witness mapping a rank-2 subset-5 matrix with zero discriminant onto
    the A14 representative.

    The double zero-divisor direction f satisfies f*f = 0 and spans an
    ideal; the complementary basis vector is the unique h with h*h = -h.
    This avoids the generic cubic elimination, whose roots collapse near
    this stratum and cannot be computed accurately."""
    dl = float(A[0, 0] * A[1, 2] - A[0, 2] * A[1, 0])
    dm = float((A[0, 0] * A[1, 3] - A[0, 3] * A[1, 0])
               + (A[0, 1] * A[1, 2] - A[0, 2] * A[1, 1]))
    dr = float(A[0, 1] * A[1, 3] - A[0, 3] * A[1, 1])
    v0 = np.array([-dm, 2 * dl]) if abs(dl) >= abs(dr) else np.array([2 * dr, -dm])
    n = float(np.linalg.norm(v0))
    if n <= 1e-12 * (abs(dl) + abs(dm) + abs(dr) + 1e-300):
        raise ArithmeticError("no zero-divisor direction found on the boundary")
    f = v0 / n

    def mul(u, v):
        return A @ np.array([u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]])

    for ang in (0.0, 0.5, 1.0):             # fallback rotations, rarely needed
        h0 = np.array([-f[1], f[0]])
        if ang:
            ca, sa = np.cos(ang), np.sin(ang)
            h0 = ca * h0 + sa * f
            h0 /= np.linalg.norm(h0)
        M = np.column_stack([f, h0])
        try:
            a_, b_ = np.linalg.solve(M, mul(h0, h0))
            c_f, _ = np.linalg.solve(M, mul(f, h0) + mul(h0, f))
        except np.linalg.LinAlgError:
            continue
        if abs(b_) <= 1e-12 * scale_of(A):
            continue
        s = -1.0 / b_
        den = 1.0 + s * c_f
        if abs(den) <= 1e-6 * (1 + abs(s * c_f)):
            continue
        h = s * h0 + (-s * s * a_ / den) * f
        # the f-scale is a stabilizer freedom; balance the column norms
        return inv2(np.column_stack([f * float(np.linalg.norm(h)), h]))
    raise ArithmeticError("boundary reduction failed in subset 5")


def _canonicalize_traceless(A, tol: Tolerances):
    """Subset 5 (both traces zero): the matrix has the rigid shape

        [[a1, a2, a2, a4], [b1, -a1, -a1, -a2]]

    which the full action preserves.  Dispatch on invariants: matrix rank 1
    is the A15 orbit; zero discriminant of the zero-divisor quadratic is the
    A14 orbit; otherwise kill a4 with a real root of
    b1 - 3 a1 t - 3 a2 t^2 - a4 t^3 and scale onto A12 or A13 by the sign of
    s = 3 a1^2 + 4 a2 b1 (opposite to the discriminant sign, which is
    cross-checked).  Returns (label, params, witness)."""
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[1] <= 1e-8 * max(sv[0], 1e-300):
        return "A15", (), _reduce_rank1(A)

    side = _zero_divisor_side(A)
    if side == 0:
        return "A14", (), _reduce_boundary(A, tol)

    witness = np.eye(2)
    a1 = float(A[0, 0] - A[1, 1] - A[1, 2]) / 3
    a2 = float(A[0, 1] + A[0, 2] - A[1, 3]) / 3
    a4 = float(A[0, 3])
    b1 = float(A[1, 0])
    m = max(abs(a1), abs(a2), abs(a4), abs(b1))

    if abs(a4) > tol.rel_zero * m:
        t = _best_real_root([-a4, -3 * a2, -3 * a1, b1])
        g = inv2(np.array([[0.0, 1.0], [-1.0, t]]))
        A = act(g, A, tol)
        witness = g
        a1 = float(A[0, 0] - A[1, 1] - A[1, 2]) / 3
        a2 = float(A[0, 1] + A[0, 2] - A[1, 3]) / 3
        b1 = float(A[1, 0])
        m = max(abs(a1), abs(a2), abs(b1))

    # on the a4 = 0 frame the discriminant is -a2^2 (3 a1^2 + 4 a2 b1), so a
    # nonzero discriminant forces a2 != 0 and a sign-definite selector
    if abs(a2) <= tol.rel_zero * m:
        raise ArithmeticError("inconsistent frame in subset 5 reduction")
    sig = 3 * a1 * a1 + 4 * a2 * b1
    if abs(sig) > 1e-7 * (3 * a1 * a1 + 4 * abs(a2 * b1)) and (sig > 0) != (side > 0):
        raise ArithmeticError("inconsistent zero-divisor sign in subset 5")
    label = "A12" if side > 0 else "A13"
    x1 = 2.0 / abs(sig) ** 0.5
    ginv = np.array([[x1, 0.0], [-a1 / (2 * a2) * x1, 1.0 / a2]])
    return label, (), inv2(ginv) @ witness


_GN_BASIS = (np.array([[1.0, 0], [0, 0]]), np.array([[0, 1.0], [0, 0]]),
             np.array([[0, 0], [1.0, 0]]), np.array([[0, 0], [0, 1.0]]))


def _polish_witness(A, rep, g, iters: int = 2) -> np.ndarray:
    """Gauss-Newton refinement of act(g, A) ~= rep on the polynomial residual
    g A - rep (g (x) g); removes the roundoff accumulated by the staged
    reduction (the decisions are already made, only the witness moves)."""
    x = g.ravel().copy()
    for _ in range(iters):
        gm = x.reshape(2, 2)
        r = (gm @ A - rep @ kron2(gm)).ravel()
        J = np.empty((8, 4))
        for k in range(4):
            E = _GN_BASIS[k]
            mixed = (E[:, None, :, None] * gm[None, :, None, :]).reshape(4, 4) \
                + (gm[:, None, :, None] * E[None, :, None, :]).reshape(4, 4)
            J[:, k] = (E @ A - rep @ mixed).ravel()
        try:
            step, *_ = np.linalg.lstsq(J, -r, rcond=None)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        x_new = x + step
        gm_new = x_new.reshape(2, 2)
        r_new = (gm_new @ A - rep @ kron2(gm_new)).ravel()
        if float(r_new @ r_new) >= float(r @ r):
            break
        x = x_new
    return x.reshape(2, 2)


def canonicalize(A, tol: Tolerances = DEFAULT_TOL) -> CanonicalForm:
    """Canonical form of a nonzero structure matrix.

    Dispatches on the trace subset:

    * subset 1: conjugate by the trace matrix itself; the result always has
      the A1 shape and its four free entries are the parameters;
    * subsets 2/3: trace normalization followed by the half-plane reduction
      onto A2..A6;
    * subset 4: reduce the opposite algebra (which lies in subset 3) and map
      the outcome onto A7..A11;
    * subset 5: the traceless reduction onto A12..A15.

    The returned witness g satisfies act(g, A) ~= representative; this is
    re-verified and a failure raises ArithmeticError.
    """
    A = as_msc(A)
    require_nontrivial(A)
    tp, z1, z2, independent = _trace_state(A, tol)

    if independent:
        P = np.array([tp.tr1, tp.tr2])
        B = act(P, A, tol)
        label = "A1"
        params = (
            float(B[0, 0]),
            0.5 * float(B[0, 1] + B[0, 2] - 1),
            float(B[0, 3]),
            float(B[1, 0]),
        )
        witness = P
    elif not z1:
        label, params, witness = _canonicalize_nonzero_tr1(A, lam_zero=z2, tol=tol)
    elif not z2:
        label, params, witness = _canonicalize_nonzero_tr1(
            opposite(A), lam_zero=True, tol=tol)
        label = _OPPOSITE_LABEL[label]
        if label in ("A7", "A8"):
            params = (params[0], params[1])     # drop b2 = -a1
        elif label == "A9":
            params = (params[0],)               # drop b2 = 0
        elif label == "A10":
            params = (params[0],)               # drop b2 = -a1
        else:
            params = ()                         # A11 is rigid
    else:
        label, params, witness = _canonicalize_traceless(A, tol)

    params = tuple(float(p) for p in params)
    rep = family_msc(label, *params)
    witness = _polish_witness(A, rep, witness)
    resid = scale_of(act(witness, A, tol) - rep) / max(scale_of(rep), 1e-300)
    if resid > 1e-5:
        raise ArithmeticError(
            f"canonicalization self-check failed for {label} (residual {resid:.3e})")
    return CanonicalForm(label, params, witness)


def isomorphic(A, B, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when A and B lie in one basis-change orbit: equal canonical
    labels and parameters within the parameter-match tolerance."""
    ca = canonicalize(A, tol)
    cb = canonicalize(B, tol)
    if ca.label != cb.label:
        return False
    return all(abs(x - y) <= tol.param_match for x, y in zip(ca.params, cb.params))
