"""Representation, action, traces: definitions and algebraic laws."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alg2d import (
    SingularMatrixError,
    TrivialAlgebraError,
    act,
    as_gl2,
    as_msc,
    family_msc,
    kron2,
    multiply,
    opposite,
    subset_of,
    traces,
)
from alg2d.core import cond2, inv2
from alg2d.oracle import random_gl2

finite = st.floats(min_value=-3, max_value=3, allow_nan=False)


def rand_msc(rng):
    return rng.uniform(-2, 2, (2, 4))


# ---------------------------------------------------------------- multiply

def test_multiply_zero_vector_is_zero():
    A = family_msc("A7", 0.5, 1.2)
    assert np.array_equal(multiply(A, (0, 0), (1, 2)), [0, 0])


def test_multiply_a15_basis_square():
    # e1 * e1 reads off column 1
    assert np.array_equal(multiply(family_msc("A15"), (1, 0), (1, 0)), [0, 1])


def test_multiply_evolution_mixed_product_vanishes():
    E3 = np.array([[0, 0, 0, 1], [1, 0, 0, 0.0]])
    assert np.array_equal(multiply(E3, (1, 0), (0, 1)), [0, 0])


@settings(max_examples=60, deadline=None)
@given(a=finite, b=finite, u1=finite, u2=finite, w1=finite, w2=finite,
       v1=finite, v2=finite)
def test_multiply_bilinear(a, b, u1, u2, w1, w2, v1, v2):
    A = family_msc("A1", 0.3, -0.7, 1.1, 0.5)
    u, w, v = np.array([u1, u2]), np.array([w1, w2]), np.array([v1, v2])
    lhs = multiply(A, a * u + b * w, v)
    rhs = a * multiply(A, u, v) + b * multiply(A, w, v)
    assert np.allclose(lhs, rhs, atol=1e-10)
    lhs2 = multiply(A, v, a * u + b * w)
    rhs2 = a * multiply(A, v, u) + b * multiply(A, v, w)
    assert np.allclose(lhs2, rhs2, atol=1e-10)


# ---------------------------------------------------------------- kron2

def test_kron2_identity():
    assert np.array_equal(kron2(np.eye(2)), np.eye(4))


def test_kron2_first_row_layout():
    x1, e1, x2, e2 = 0.3, -1.2, 0.7, 2.1
    K = kron2(np.array([[x1, e1], [x2, e2]]))
    assert np.allclose(K[0], [x1 * x1, x1 * e1, x1 * e1, e1 * e1])
    assert np.allclose(K[1], [x1 * x2, x1 * e2, x2 * e1, e1 * e2])
    assert np.allclose(K[3], [x2 * x2, x2 * e2, x2 * e2, e2 * e2])


def test_kron2_scalar_degree_two():
    assert np.allclose(kron2(2 * np.eye(2)), 4 * np.eye(4))


def test_kron2_matches_outer_products():
    rng = np.random.default_rng(3)
    m = rng.uniform(-2, 2, (2, 2))
    assert np.allclose(kron2(m), np.kron(m, m))


# ---------------------------------------------------------------- act

def test_act_identity():
    A = family_msc("A4", 2.0, -1.0)
    assert np.allclose(act(np.eye(2), A), A)


def test_act_known_basis_change_is_exact():
    # integer-matrix change of basis between the two unital Jordan forms
    J2 = np.array([[1, 0, 0, 0], [0, 0, 0, 1.0]])
    J1 = np.array([[1, 0, 0, 0], [0, 1, 1, 1.0]])
    g = np.array([[1, 0], [-1, 1.0]])
    assert np.array_equal(act(g, J2), J1)


def test_act_composition_law():
    rng = np.random.default_rng(7)
    for _ in range(100):
        A = rand_msc(rng)
        g = random_gl2(rng)
        h = random_gl2(rng)
        two_step = act(g, act(h, A))
        one_step = act(g @ h, A)
        denom = max(np.max(np.abs(one_step)), 1e-300)
        assert np.max(np.abs(two_step - one_step)) / denom < 1e-10


def test_act_rejects_singular():
    with pytest.raises(SingularMatrixError):
        act(np.array([[1.0, 2.0], [2.0, 4.0]]), family_msc("A15"))


def test_as_gl2_threshold_scales_with_norm():
    as_gl2(np.array([[1e-8, 0], [0, 1e-8]]))  # small but well-conditioned: fine
    with pytest.raises(SingularMatrixError):
        as_gl2(np.array([[1e4, 1e4], [1e4, 1e4 + 1e-9]]))


# ---------------------------------------------------------------- traces

def test_traces_of_catalogue_member():
    tp = traces(family_msc("A2", 0.4, 0.7, -0.3))
    assert np.allclose(tp.tr1, [1, 0])
    assert np.allclose(tp.tr2, [0.4 - 0.3, 0])


def test_traces_vanish_on_a15():
    tp = traces(family_msc("A15"))
    assert np.array_equal(tp.tr1, [0, 0])
    assert np.array_equal(tp.tr2, [0, 0])


def test_trace_equivariance():
    rng = np.random.default_rng(11)
    for _ in range(100):
        A = rand_msc(rng)
        g = random_gl2(rng)
        gi = inv2(g)
        before = traces(A)
        after = traces(act(g, A))
        scale = max(1.0, np.max(np.abs(A)) * np.max(np.abs(gi)))
        assert np.max(np.abs(after.tr1 - before.tr1 @ gi)) <= 1e-10 * scale
        assert np.max(np.abs(after.tr2 - before.tr2 @ gi)) <= 1e-10 * scale


# ---------------------------------------------------------------- opposite

def test_opposite_involution():
    rng = np.random.default_rng(13)
    A = rand_msc(rng)
    assert np.array_equal(opposite(opposite(A)), A)


def test_opposite_fixes_commutative():
    A = family_msc("A12")
    assert np.array_equal(opposite(A), A)


def test_opposite_swaps_traces():
    rng = np.random.default_rng(17)
    for _ in range(100):
        A = rand_msc(rng)
        tp = traces(A)
        to = traces(opposite(A))
        assert np.array_equal(to.tr1, tp.tr2)
        assert np.array_equal(to.tr2, tp.tr1)


def test_opposite_commutes_with_action():
    rng = np.random.default_rng(19)
    for _ in range(50):
        A = rand_msc(rng)
        g = random_gl2(rng)
        assert np.allclose(opposite(act(g, A)), act(g, opposite(A)), atol=1e-10)


# ---------------------------------------------------------------- guards

def test_trivial_algebra_rejected():
    with pytest.raises(TrivialAlgebraError):
        subset_of(np.zeros((2, 4)))


def test_as_msc_validates_shape_and_finiteness():
    with pytest.raises(ValueError):
        as_msc([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        as_msc([[np.inf, 0, 0, 0], [0, 0, 0, 0]])


def test_cond2_matches_numpy():
    rng = np.random.default_rng(23)
    for _ in range(50):
        g = rng.uniform(-2, 2, (2, 2))
        if abs(np.linalg.det(g)) < 1e-6:
            continue
        assert cond2(g) == pytest.approx(np.linalg.cond(g), rel=1e-8)
