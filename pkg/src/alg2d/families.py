"""Constructors for the canonical structure matrices.

General algebras fall into fifteen families A1..A15 (the classification
catalogue of this library); evolution algebras into seven families E1..E7.
The commutative sublist C1..C9 re-labels the commutative members of the main
catalogue.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "GENERAL_LABELS",
    "EVOLUTION_LABELS",
    "PARAM_COUNT",
    "family_msc",
    "evolution_msc",
    "commutative_msc",
    "COMMUTATIVE_LABELS",
    "JORDAN_MEMBERS",
]

GENERAL_LABELS = tuple(f"A{k}" for k in range(1, 16))
EVOLUTION_LABELS = tuple(f"E{k}" for k in range(1, 8))

# number of continuous parameters per general family
PARAM_COUNT = {
    "A1": 4, "A2": 3, "A3": 3, "A4": 2, "A5": 2, "A6": 1, "A7": 2,
    "A8": 2, "A9": 1, "A10": 1, "A11": 0, "A12": 0, "A13": 0,
    "A14": 0, "A15": 0,
}


def family_msc(label: str, *params: float) -> np.ndarray:
    """Canonical 2x4 structure matrix of a general family member.

    Families A2, A3, A7, A8 require their first free second-row entry to be
    nonnegative; A1 is the four-parameter family with independent traces.
    """
    if label not in PARAM_COUNT:
        raise ValueError(f"unknown family label {label!r}")
    if len(params) != PARAM_COUNT[label]:
        raise ValueError(
            f"{label} takes {PARAM_COUNT[label]} parameter(s), got {len(params)}")
    p = [float(x) for x in params]
    if label in ("A2", "A3", "A7", "A8") and p[1] < 0:
        raise ValueError(f"{label} requires a nonnegative second parameter")
    if label == "A1":
        a1, a2, a4, b1 = p
        return np.array([[a1, a2, a2 + 1, a4], [b1, -a1, 1 - a1, -a2]])
    if label == "A2":
        a1, b1, b2 = p
        return np.array([[a1, 0, 0, 1], [b1, b2, 1 - a1, 0]])
    if label == "A3":
        a1, b1, b2 = p
        return np.array([[a1, 0, 0, -1], [b1, b2, 1 - a1, 0]])
    if label == "A4":
        b1, b2 = p
        return np.array([[0, 1, 1, 0], [b1, b2, 1, -1]])
    if label == "A5":
        a1, b2 = p
        return np.array([[a1, 0, 0, 0], [0, b2, 1 - a1, 0]])
    if label == "A6":
        (a1,) = p
        return np.array([[a1, 0, 0, 0], [1, 2 * a1 - 1, 1 - a1, 0]])
    if label == "A7":
        a1, b1 = p
        return np.array([[a1, 0, 0, 1], [b1, 1 - a1, -a1, 0]])
    if label == "A8":
        a1, b1 = p
        return np.array([[a1, 0, 0, -1], [b1, 1 - a1, -a1, 0]])
    if label == "A9":
        (b1,) = p
        return np.array([[0, 1, 1, 0], [b1, 1, 0, -1]])
    if label == "A10":
        (a1,) = p
        return np.array([[a1, 0, 0, 0], [0, 1 - a1, -a1, 0]])
    return {
        "A11": np.array([[1 / 3, 0, 0, 0], [1, 2 / 3, -1 / 3, 0]]),
        "A12": np.array([[0, 1, 1, 0], [1, 0, 0, -1.0]]),
        "A13": np.array([[0, 1, 1, 0], [-1, 0, 0, -1.0]]),
        "A14": np.array([[0, 1, 1, 0], [0, 0, 0, -1.0]]),
        "A15": np.array([[0, 0, 0, 0], [1, 0, 0, 0.0]]),
    }[label]


def evolution_msc(label: str, *params: float) -> np.ndarray:
    """Canonical structure matrix of an evolution family member.

    E1(b, c) carries the constraint b*c != 1 and is symmetric in (b, c);
    the canonical parameter order is b <= c.
    """
    p = [float(x) for x in params]
    if label == "E1":
        b, c = p
        if abs(b * c - 1) < 1e-12:
            raise ValueError("E1 requires b*c != 1")
        return np.array([[1, 0, 0, b], [c, 0, 0, 1]])
    if label == "E2":
        (b,) = p
        return np.array([[1, 0, 0, b], [1, 0, 0, 0]])
    if params:
        raise ValueError(f"{label} takes no parameters")
    return {
        "E3": np.array([[0, 0, 0, 1], [1, 0, 0, 0.0]]),
        "E4": np.array([[1, 0, 0, 1], [0, 0, 0, 0.0]]),
        "E5": np.array([[1, 0, 0, -1], [0, 0, 0, 0.0]]),
        "E6": np.array([[1, 0, 0, -1], [-1, 0, 0, 1.0]]),
        "E7": np.array([[0, 0, 0, 1], [0, 0, 0, 0.0]]),
    }[label]


# Commutative sublist: label -> (general family, parameter embedding).
# C1(a1,b1) = A2(a1,b1,1-a1), C2(a1,b1) = A3(a1,b1,1-a1), C3(b1) = A4(b1,1),
# C4(a1) = A5(a1,1-a1), C5 = A6(2/3), C6..C9 = A12..A15.
COMMUTATIVE_LABELS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9")


def commutative_msc(label: str, *params: float) -> np.ndarray:
    """Canonical structure matrix of a commutative family member."""
    p = [float(x) for x in params]
    if label == "C1":
        return family_msc("A2", p[0], p[1], 1 - p[0])
    if label == "C2":
        return family_msc("A3", p[0], p[1], 1 - p[0])
    if label == "C3":
        return family_msc("A4", p[0], 1.0)
    if label == "C4":
        return family_msc("A5", p[0], 1 - p[0])
    if params:
        raise ValueError(f"{label} takes no parameters")
    return {
        "C5": family_msc("A6", 2 / 3),
        "C6": family_msc("A12"),
        "C7": family_msc("A13"),
        "C8": family_msc("A14"),
        "C9": family_msc("A15"),
    }[label]


# The six commutative families whose members satisfy the Jordan identity,
# by canonical (label, params).
JORDAN_MEMBERS = (
    ("A2", (0.5, 0.0, 0.5)),
    ("A3", (0.5, 0.0, 0.5)),
    ("A5", (2 / 3, 1 / 3)),
    ("A5", (0.5, 0.5)),
    ("A5", (1.0, 0.0)),
    ("A15", ()),
)
