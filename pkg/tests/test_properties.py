"""Commutativity, Jordan identity, division property; sublist labelling."""

import numpy as np
import pytest

from alg2d import (
    act,
    canonicalize,
    commutative_label,
    commutative_msc,
    division_data,
    family_msc,
    is_commutative,
    is_division,
    jordan_condition,
    jordan_label,
    jordan_residual,
    multiply,
)
from alg2d.families import JORDAN_MEMBERS
from alg2d.oracle import random_gl2


def max_jordan_residual(A, n=200, seed=0):
    """Normalized worst residual of the Jordan identity over random unit
    pairs; the sampling oracle for the closed-form condition."""
    rng = np.random.default_rng(seed)
    scale = max(np.max(np.abs(A)), 1e-300) ** 3
    worst = 0.0
    for _ in range(n):
        u = rng.normal(size=2)
        v = rng.normal(size=2)
        u /= np.linalg.norm(u)
        v /= np.linalg.norm(v)
        worst = max(worst, float(np.max(np.abs(jordan_residual(A, u, v)))) / scale)
    return worst


# ---------------------------------------------------------------- commutative

def test_commutative_examples():
    assert is_commutative(family_msc("A12"))
    assert not is_commutative(family_msc("A1", 0, 0, 0, 0))


def test_opposite_fixed_implies_commutative():
    A = commutative_msc("C3", 1.5)
    assert is_commutative(A)


def test_commutative_members_of_catalogue():
    # the commutative members of the main catalogue and their sublabels
    assert commutative_label(canonicalize(family_msc("A2", 0.4, 0.7, 0.6))).name == "C1"
    assert commutative_label(canonicalize(family_msc("A3", 0.4, 0.7, 0.6))).name == "C2"
    assert commutative_label(canonicalize(family_msc("A4", 2.0, 1.0))).name == "C3"
    assert commutative_label(canonicalize(family_msc("A5", 0.3, 0.7))).name == "C4"
    assert commutative_label(canonicalize(family_msc("A6", 2 / 3))).name == "C5"
    assert commutative_label(canonicalize(family_msc("A15"))).name == "C9"
    assert commutative_label(canonicalize(family_msc("A1", 0, 0, 0, 0))) is None
    assert commutative_label(canonicalize(family_msc("A5", 0.3, 0.2))) is None


def test_commutative_label_params_roundtrip():
    lab = commutative_label(canonicalize(commutative_msc("C1", 0.4, 0.7)))
    assert lab.name == "C1"
    assert lab.params == pytest.approx((0.4, 0.7), abs=1e-9)


# ---------------------------------------------------------------- jordan

def test_jordan_condition_examples():
    assert jordan_condition(family_msc("A2", 0.5, 0.0, 0.5))
    assert not jordan_condition(commutative_msc("C3", 1.0))
    assert jordan_condition(family_msc("A15"))


def test_jordan_condition_requires_commutative():
    with pytest.raises(ValueError):
        jordan_condition(family_msc("A1", 0, 0, 0, 0))


def test_jordan_residual_trivial_input():
    A = family_msc("A13")
    assert np.array_equal(jordan_residual(A, (0, 0), (2, 3)), [0, 0])


def test_jordan_residual_vanishes_on_members():
    for label, params in JORDAN_MEMBERS:
        A = family_msc(label, *params)
        assert max_jordan_residual(A) < 1e-7


def test_jordan_residual_nonzero_on_non_member():
    assert max_jordan_residual(commutative_msc("C3", 1.0)) > 1e-3


def test_jordan_condition_matches_residual_sampling():
    rng = np.random.default_rng(43)
    for _ in range(150):
        top = rng.uniform(-1.5, 1.5, 3)
        bot = rng.uniform(-1.5, 1.5, 3)
        A = np.array([[top[0], top[1], top[1], top[2]],
                      [bot[0], bot[1], bot[1], bot[2]]])
        if not A.any():
            continue
        assert jordan_condition(A) == (max_jordan_residual(A, n=120) < 1e-9)


# ---------------------------------------------------------------- division

def test_division_data_exact_values():
    d12 = division_data(family_msc("A12"))
    assert (d12.delta_l, d12.delta_m, d12.delta_r, d12.discriminant) == (-1, 0, -1, -4)
    d13 = division_data(family_msc("A13"))
    assert (d13.delta_l, d13.delta_m, d13.delta_r, d13.discriminant) == (1, 0, -1, 4)


def test_division_data_derived_values():
    # frozen by direct evaluation of the 2x2 column determinants
    d9 = division_data(family_msc("A9", 1.0))
    assert (d9.delta_l, d9.delta_m, d9.delta_r) == (-1, -1, -1)
    assert d9.discriminant == -3
    d1 = division_data(family_msc("A1", 0.0, 0.0, 1.0, -1.0))
    assert (d1.delta_l, d1.delta_m, d1.delta_r, d1.discriminant) == (1, 1, 0, 1)


def test_is_division_examples():
    assert is_division(family_msc("A12"))
    assert not is_division(family_msc("A5", 0.3, 0.7))     # discriminant 0
    assert not is_division(family_msc("A1", 0.0, 0.0, 1.0, -1.0))


# per-family discriminant in terms of the canonical parameters
FAMILY_DISCRIMINANT = {
    "A1": None,  # no closed form needed: evaluate division_data directly
    "A2": lambda a1, b1, b2: b1 * b1 + 4 * a1 * (1 - a1) * b2,
    "A3": lambda a1, b1, b2: b1 * b1 - 4 * a1 * (1 - a1) * b2,
    "A4": lambda b1, b2: (1 - b2) ** 2 - 4 * b1,
    "A5": lambda a1, b2: 0.0,
    "A6": lambda a1: 0.0,
    "A7": lambda a1, b1: b1 * b1 - 4 * a1 * a1 * (1 - a1),
    "A8": lambda a1, b1: b1 * b1 + 4 * a1 * a1 * (1 - a1),
    "A9": lambda b1: 1 - 4 * b1,
    "A10": lambda a1: 0.0,
    "A11": lambda: 0.0,
    "A12": lambda: -4.0,
    "A13": lambda: 4.0,
    "A14": lambda: 0.0,
    "A15": lambda: 0.0,
}


def grid_zero_divisor_free(A, n=50):
    """Direction-grid oracle: no near-zero product over n x n unit pairs AND
    no real root of the zero-divisor quadratic.

    The 0.07 threshold is calibrated to the grid resolution: with 50
    directions per factor, algebras with zero divisors show a grid minimum
    below ~0.045 of the matrix scale while division algebras with a healthy
    discriminant margin stay above ~0.09.
    """
    d = division_data(A)
    roots_exist = False
    if abs(d.delta_l) <= 1e-12 * (1 + abs(d.delta_m) + abs(d.delta_r)):
        roots_exist = True                     # v = (1, 0) direction
    else:
        roots_exist = d.discriminant >= 0
    angles = np.pi * (np.arange(n) + 0.5) / n
    us = np.column_stack([np.cos(angles), np.sin(angles)])
    smallest = np.inf
    for u in us:
        for v in us:
            smallest = min(smallest, float(np.linalg.norm(multiply(A, u, v))))
    grid_free = smallest / max(np.max(np.abs(A)), 1e-300) > 0.07
    assert grid_free == (not roots_exist)
    return grid_free


@pytest.mark.parametrize("label,params,expect", [
    ("A2", (0.5, 0.1, -2.0), True),
    ("A2", (0.5, 2.0, -2.0), False),
    ("A3", (0.5, 0.0, 3.0), True),
    ("A4", (3.0, 1.0), True),
    ("A4", (0.0, 5.0), False),
    ("A7", (0.9, 0.1), True),
    ("A8", (2.0, 1.0), True),
    ("A9", (2.0,), True),
    ("A9", (-1.0,), False),
    ("A12", (), True),
    ("A13", (), False),
    ("A14", (), False),
    ("A15", (), False),
])
def test_is_division_against_family_conditions_and_grid(label, params, expect):
    A = family_msc(label, *params)
    cond = FAMILY_DISCRIMINANT[label](*params)
    assert is_division(A) == expect == (cond < 0)
    assert division_data(A).discriminant == pytest.approx(cond, abs=1e-12)
    assert grid_zero_divisor_free(A) == expect


# ---------------------------------------------------------------- sublists

def test_jordan_label_membership():
    assert jordan_label(canonicalize(family_msc("A5", 1.0, 0.0))) == "A5(1,0)"
    assert jordan_label(canonicalize(family_msc("A3", 0.5, 0.0, 0.5))) == "A3(1/2,0,1/2)"
    assert jordan_label(canonicalize(family_msc("A15"))) == "A15"
    assert jordan_label(canonicalize(family_msc("A12"))) is None
    assert jordan_label(canonicalize(family_msc("A5", 0.9, 0.0))) is None


def test_jordan_closure_of_commutative_catalogue():
    """Filtering the commutative catalogue by the Jordan condition yields
    exactly the six Jordan representatives."""
    found = set()
    sweeps = {
        "C1": [(a1, b1) for a1 in np.linspace(-1, 2, 13) for b1 in (0.0, 0.5, 1.5)],
        "C2": [(a1, b1) for a1 in np.linspace(-1, 2, 13) for b1 in (0.0, 0.5, 1.5)],
        "C3": [(b1,) for b1 in np.linspace(-2, 2, 17)],
        "C4": [(a1,) for a1 in list(np.linspace(-1, 2, 13)) + [2 / 3, 0.5, 1.0]],
        "C5": [()], "C6": [()], "C7": [()], "C8": [()], "C9": [()],
    }
    for name, grid in sweeps.items():
        for params in grid:
            A = commutative_msc(name, *params)
            assert is_commutative(A)
            if jordan_condition(A):
                cf = canonicalize(A)
                found.add((cf.label, tuple(np.round(cf.params, 9))))
                assert max_jordan_residual(A) < 1e-7
    expected = {(lbl, tuple(np.round(p, 9))) for lbl, p in JORDAN_MEMBERS}
    assert found == expected


# ---------------------------------------------------------------- invariance

@pytest.mark.parametrize("label,params", [
    ("A2", (0.5, 0.1, -2.0)), ("A5", (2 / 3, 1 / 3)), ("A9", (2.0,)),
    ("A12", ()), ("A13", ()), ("A15", ()),
])
def test_property_flags_invariant_under_action(label, params):
    rng = np.random.default_rng(47)
    A = family_msc(label, *params)
    comm = is_commutative(A)
    div = is_division(A)
    jor = comm and jordan_condition(A)
    for _ in range(30):
        B = act(random_gl2(rng), A)
        assert is_commutative(B) == comm
        assert is_division(B) == div
        if comm:
            assert jordan_condition(B) == jor
