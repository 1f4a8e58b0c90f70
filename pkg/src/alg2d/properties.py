"""Commutativity, the Jordan identity, and the division property.

All three are isomorphism invariants.  The division test is a discriminant
computation: products u*v with fixed v are a linear map in u whose
determinant is the quadratic dl*z^2 + dm*z*w + dr*w^2 in the coordinates
(z, w) of v; the algebra has no zero divisors exactly when that quadratic
has no real nonzero root, i.e. when D = dm^2 - 4*dl*dr < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .core import DEFAULT_TOL, Tolerances, as_msc, multiply, scale_of
from .classify import CanonicalForm

__all__ = [
    "DivisionData",
    "PropertyFlags",
    "CommutativeLabel",
    "is_commutative",
    "jordan_condition",
    "jordan_residual",
    "division_data",
    "is_division",
    "commutative_label",
    "jordan_label",
]


@dataclass(frozen=True)
class DivisionData:
    """Zero-divisor discriminant data: D = delta_m^2 - 4*delta_l*delta_r."""

    delta_l: float
    delta_m: float
    delta_r: float
    discriminant: float


class CommutativeLabel(NamedTuple):
    name: str
    params: tuple[float, ...]


@dataclass(frozen=True)
class PropertyFlags:
    commutative: bool
    jordan: bool
    division: bool
    evolution: bool


def is_commutative(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Commutative means columns 2 and 3 of the structure matrix agree."""
    A = as_msc(A)
    return float(np.max(np.abs(A[:, 1] - A[:, 2]))) <= tol.rel_zero * scale_of(A)


def jordan_condition(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Exact criterion for the Jordan identity (u*v)*u^2 = u*(v*u^2) on a
    commutative algebra, in terms of the entries a1, a2, a4, b1, b2, b4 of
    [[a1, a2, a2, a4], [b1, b2, b2, b4]]: either

        b1 = a4 = 2*b2 - a1 = 2*a2 - b4 = 0, or
        b1*a4 - b2*a2 = b2^2 - b1*b4 + a2*b1 - a1*b2
                      = a2^2 - a1*a4 + a4*b2 - a2*b4 = 0.

    Raises ValueError on non-commutative input.
    """
    A = as_msc(A)
    if not is_commutative(A, tol):
        raise ValueError("jordan_condition requires a commutative algebra")
    a1, a4 = float(A[0, 0]), float(A[0, 3])
    a2 = 0.5 * float(A[0, 1] + A[0, 2])
    b1, b4 = float(A[1, 0]), float(A[1, 3])
    b2 = 0.5 * float(A[1, 1] + A[1, 2])
    z = tol.rel_zero * max(scale_of(A), 1e-300)
    z2 = tol.rel_zero * max(scale_of(A) ** 2, 1e-300)
    branch_a = (abs(b1) <= z and abs(a4) <= z
                and abs(2 * b2 - a1) <= z and abs(2 * a2 - b4) <= z)
    branch_b = (abs(b1 * a4 - b2 * a2) <= z2
                and abs(b2 * b2 - b1 * b4 + a2 * b1 - a1 * b2) <= z2
                and abs(a2 * a2 - a1 * a4 + a4 * b2 - a2 * b4) <= z2)
    return branch_a or branch_b


def jordan_residual(A, u, v) -> np.ndarray:
    """(u*v)*u^2 - u*(v*u^2); the sampling oracle for the Jordan identity."""
    A = as_msc(A)
    uu = multiply(A, u, u)
    return multiply(A, multiply(A, u, v), uu) - multiply(A, u, multiply(A, v, uu))


def division_data(A) -> DivisionData:
    """The three 2x2 column determinants and the discriminant D."""
    A = as_msc(A)
    dl = float(A[0, 0] * A[1, 2] - A[0, 2] * A[1, 0])
    dm = float((A[0, 0] * A[1, 3] - A[0, 3] * A[1, 0])
               + (A[0, 1] * A[1, 2] - A[0, 2] * A[1, 1]))
    dr = float(A[0, 1] * A[1, 3] - A[0, 3] * A[1, 1])
    return DivisionData(dl, dm, dr, dm * dm - 4 * dl * dr)


def is_division(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when u*v = 0 forces u = 0 or v = 0.

    Requires strict negativity of the discriminant with a scale-aware margin,
    so boundary D ~ 0 algebras are never reported as division algebras.
    """
    d = division_data(A)
    eps = 1e-9 * (1 + d.delta_m ** 2 + abs(d.delta_l * d.delta_r))
    return d.discriminant < -eps


def commutative_label(cf: CanonicalForm,
                      tol: Tolerances = DEFAULT_TOL) -> Optional[CommutativeLabel]:
    """Commutative-catalogue name C1..C9 of a canonical form, or None.

    The commutative members of the general catalogue are A2/A3 with
    b2 = 1 - a1 (-> C1/C2), A4 with b2 = 1 (-> C3), A5 with b2 = 1 - a1
    (-> C4), A6(2/3) (-> C5) and A12..A15 (-> C6..C9).
    """
    t = tol.param_match
    lbl, p = cf.label, cf.params
    if lbl in ("A2", "A3") and abs(p[2] - (1 - p[0])) <= t:
        return CommutativeLabel("C1" if lbl == "A2" else "C2", (p[0], p[1]))
    if lbl == "A4" and abs(p[1] - 1) <= t:
        return CommutativeLabel("C3", (p[0],))
    if lbl == "A5" and abs(p[1] - (1 - p[0])) <= t:
        return CommutativeLabel("C4", (p[0],))
    if lbl == "A6" and abs(p[0] - 2 / 3) <= t:
        return CommutativeLabel("C5", ())
    fixed = {"A12": "C6", "A13": "C7", "A14": "C8", "A15": "C9"}
    if lbl in fixed:
        return CommutativeLabel(fixed[lbl], ())
    return None


# the six canonical forms satisfying the Jordan identity
_JORDAN_LIST = (
    ("A2", (0.5, 0.0, 0.5)),
    ("A3", (0.5, 0.0, 0.5)),
    ("A5", (2 / 3, 1 / 3)),
    ("A5", (0.5, 0.5)),
    ("A5", (1.0, 0.0)),
    ("A15", ()),
)


def jordan_label(cf: CanonicalForm, tol: Tolerances = DEFAULT_TOL) -> Optional[str]:
    """Name of the Jordan-catalogue member matching a canonical form, or None.

    Membership test against the six Jordan representatives; the name spells
    out the member, e.g. "A5(2/3,1/3)".
    """
    for lbl, params in _JORDAN_LIST:
        if cf.label != lbl or len(cf.params) != len(params):
            continue
        if all(abs(x - y) <= tol.param_match for x, y in zip(cf.params, params)):
            if not params:
                return lbl
            inner = ",".join(_frac(x) for x in params)
            return f"{lbl}({inner})"
    return None


def _frac(x: float) -> str:
    for txt, val in (("1/2", 0.5), ("2/3", 2 / 3), ("1/3", 1 / 3),
                     ("0", 0.0), ("1", 1.0)):
        if abs(x - val) <= 1e-9:
            return txt
    return f"{x:g}"
