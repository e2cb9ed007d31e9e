import numpy as np
import pytest
from hypothesis import given, strategies as st

from elastic_dtn.core import (ElasticMedium, Profile, constant_values, in_regime, params_from_h_theta,
                              params_from_tau, region_classify)


def test_params_from_tau_basic():
    p = params_from_tau(100 + 50j)
    assert p.h == pytest.approx(0.01)
    assert p.z == pytest.approx(1 + 0.5j)
    assert p.theta == pytest.approx(0.5)


def test_params_from_tau_boundary_case():
    p = params_from_tau(64 + 64j)
    assert p.h == pytest.approx(1 / 64)
    assert p.z == pytest.approx(1 + 1j)
    assert p.theta == pytest.approx(1.0)


@pytest.mark.parametrize("tau", [100, 100 + 0j, -5 + 1j, 10 + 20j])
def test_params_from_tau_rejects(tau):
    with pytest.raises(ValueError):
        params_from_tau(tau)


def test_params_from_h_theta_roundtrip():
    p = params_from_h_theta(0.02, 0.3)
    assert p.tau == pytest.approx(50 + 15j)
    assert p.z2 == pytest.approx((1 + 0.3j) ** 2)


def test_in_regime():
    assert in_regime(2.0 ** -6, 0.2)
    assert not in_regime(0.01, 0.1)
    assert in_regime(1e-3, 0.1)


@pytest.mark.parametrize("r0, region, rs, rp", [
    (1.0, "elliptic", 0.0, 3.0),
    (0.1, "hyperbolic_both", -0.9, -0.6),
    (10.0, "elliptic", 9.0, 39.0),
    (0.5, "between", -0.5, 1.0),
])
def test_region_classify(r0, region, rs, rp):
    mv = constant_values(1.0, 2.0, 1.0)  # c_s = 1, c_p = 4
    info = region_classify(mv, r0)
    assert info.region == region
    assert info.residual_s == pytest.approx(rs)
    assert info.residual_p == pytest.approx(rp)


def test_region_classify_rejects_negative_r0():
    with pytest.raises(ValueError):
        region_classify(constant_values(1, 2, 1), -1.0)


def test_medium_rejects_equal_wave_numbers():
    # lam + mu = 0 would make k_s = k_p
    with pytest.raises(ValueError):
        constant_values(1.0, -1.0, 1.0)
    with pytest.raises(ValueError):
        ElasticMedium.constant(1.0, -1.0, 1.0).at(0.0)


def test_variable_profile_values():
    n = Profile(value=lambda s: 1 + 0.1 * np.cos(s), grad=lambda s: -0.1 * np.sin(s))
    med = ElasticMedium(Profile.const(1.0), Profile.const(2.0), n)
    mv = med.at(0.5)
    assert mv.n == pytest.approx(1 + 0.1 * np.cos(0.5))
    assert np.allclose(mv.dn, [-0.1 * np.sin(0.5)])
    assert np.allclose(mv.grad_k("s"), mv.dn / mv.cs)


@given(mu=st.floats(0.1, 10), frac=st.floats(-0.99, 10), n=st.floats(0.1, 10))
def test_speeds_ordered(mu, frac, n):
    mv = constant_values(mu, frac * mu, n)
    assert mv.cp > mv.cs > 0
    assert mv.ks > mv.kp > 0
