import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from elastic_dtn import algebra as al

finite = st.floats(-5, 5, allow_nan=False)


def cvec(d):
    return st.tuples(arrays(float, d, elements=finite), arrays(float, d, elements=finite)).map(
        lambda t: t[0] + 1j * t[1])


def test_outer_action():
    got = al.outer(np.array([1.0, 0.0]), np.array([0.0, 1.0])) @ np.array([3.0, 4.0])
    assert np.allclose(got, [0.0, 3.0])


def test_outer_projector():
    e1 = al.unit(0, 3)
    assert np.allclose(al.outer(e1, e1), np.diag([1.0, 0.0, 0.0]))


def test_outer_random_d5():
    rng = np.random.default_rng(3)
    xi, eta, g = (rng.standard_normal(5) + 1j * rng.standard_normal(5) for _ in range(3))
    assert al.maxnorm(al.outer(xi, eta) @ g - al.pair(xi, g) * eta) < 1e-14


def test_outer_transposed_differs():
    xi, eta = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    assert not np.allclose(al.outer(xi, eta), al.outer(xi, eta, convention="transposed"))


def test_u0_d2():
    xi = np.array([1.0, 2.0])
    u = al.u0_matrix(xi)
    assert np.allclose(u, [[1, 2], [-2, 1]])
    assert np.allclose(u @ xi, [5.0, 0.0])


def test_z0_d3_commutes():
    z = al.z0_matrix(np.array([0.0, 1.0, 1.0]))
    assert np.allclose(z, [[2, 0, 0], [0, 1, 1], [0, 1, 1]])
    e11 = al.outer(al.unit(0, 3), al.unit(0, 3))
    assert np.allclose(z @ e11, e11 @ z)


def test_u0_identity_at_e1():
    assert np.allclose(al.u0_matrix(al.unit(0, 4)), np.eye(4))


def test_transposed_convention_breaks_u0_identity():
    xi = np.array([1.0, 2.0, -0.5])
    u = al.u0_matrix(xi, convention="transposed")
    assert al.maxnorm(u @ xi - al.sq(xi) * al.unit(0, 3)) > 0.1


def test_m_matrix_d2():
    m = al.m_matrix(np.array([1.0, 2.0]), 3.0)
    assert np.allclose(m, [[4, 2], [-2, 1]])
    assert al.det_m(np.array([1.0, 2.0]), 3.0) == pytest.approx(8.0)
    assert np.linalg.det(m) == pytest.approx(8.0)


def test_det_m_d3():
    xi = np.array([2.0, 1.0, 1.0])
    assert al.det_m(xi, 1.0) == pytest.approx(16.0)
    assert np.linalg.det(al.m_matrix(xi, 1.0)) == pytest.approx(16.0)


def test_det_m_identity_case():
    assert al.det_m(al.unit(0, 3), 0.0) == pytest.approx(1.0)


def test_invert_d2():
    got = al.invert_m(np.array([1.0, 2.0]), 3.0)
    assert np.allclose(got, np.array([[1, -2], [2, 4]]) / 8)


def test_invert_d3_residual():
    xi = np.array([1.0, 3.0, 4.0])
    inv = al.invert_m(xi, 0.0)
    assert al.maxnorm(al.m_matrix(xi, 0.0) @ inv - np.eye(3)) < 1e-12


def test_invert_identity():
    assert np.allclose(al.invert_m(al.unit(0, 3), 0.0), np.eye(3))


def test_invert_rejects_complex_tangential():
    with pytest.raises(ValueError):
        al.invert_m(np.array([1.0, 1j, 2.0]), 0.5)


def test_theta_chart_d3():
    th = al.theta_chart(np.array([3.0, 4.0]))
    assert np.allclose(th, [[1, 0, 0], [0, 0.6, 0.8], [0, -0.8, 0.6]])
    assert np.allclose(th @ np.array([0.0, 3.0, 4.0]), [0.0, 5.0, 0.0])


def test_theta_chart_d2():
    assert np.allclose(al.theta_chart(np.array([2.5])), np.eye(2))


@pytest.mark.parametrize("d", [4, 5, 7])
def test_householder_chart(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        w = rng.standard_normal(d - 1)
        w /= np.linalg.norm(w)
        v, _ = al.householder_chart(w)
        e = np.zeros(d - 1)
        e[0] = 1.0
        assert np.abs(v @ w - e).max() < 1e-13
        assert np.abs(v @ v.T - np.eye(d - 1)).max() < 1e-13


def test_lambda_frame_examples():
    assert np.allclose(al.lambda_frame(np.array([0.0, 1.0])), [[0, 1], [-1, 0]])
    assert np.allclose(al.lambda_frame(np.array([1.0, 0.0])), np.eye(2))


@given(st.floats(0, 2 * np.pi))
def test_lambda_frame_circle(a):
    nu = np.array([np.cos(a), np.sin(a)])
    lam = al.lambda_frame(nu)
    assert np.abs(lam @ nu - [1, 0]).max() <= 1e-14
    assert np.abs(lam @ lam.T - np.eye(2)).max() <= 1e-14


@settings(max_examples=60)
@given(st.integers(2, 5).flatmap(lambda d: st.tuples(cvec(d), st.complex_numbers(max_magnitude=5))))
def test_det_formula_property(args):
    xi, eta = args
    d = xi.shape[0]
    ref = al.det_m(xi, eta)
    scale = (np.sum(np.abs(xi) ** 2) + abs(xi[0] * eta) + 1) * (abs(xi[0]) + 1) ** (d - 2)
    assert abs(np.linalg.det(al.m_matrix(xi, eta)) - ref) <= 1e-11 * scale


@settings(max_examples=60)
@given(st.integers(3, 5).flatmap(lambda d: st.tuples(
    st.complex_numbers(min_magnitude=0.2, max_magnitude=5),
    arrays(float, d - 1, elements=finite).filter(lambda v: np.linalg.norm(v) > 0.1),
    st.complex_numbers(max_magnitude=5))))
def test_inverse_property(args):
    x1, xp, eta = args
    xi = np.concatenate([[x1], xp]).astype(complex)
    m = al.m_matrix(xi, eta)
    if np.linalg.cond(m) > 1e8:
        return
    inv = al.invert_m(xi, eta)
    assert al.maxnorm(m @ inv - np.eye(xi.shape[0])) < 1e-9


@settings(max_examples=60)
@given(st.integers(2, 5).flatmap(cvec))
def test_u0_identity_property(xi):
    u = al.u0_matrix(xi)
    assert al.maxnorm(u @ xi - al.sq(xi) * al.unit(0, xi.shape[0])) <= 1e-12 * (1 + np.sum(np.abs(xi) ** 2))
