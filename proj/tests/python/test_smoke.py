"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import sdkim


def test_evolution_is_unitary_and_flat_at_t1():
    spec = sdkim.CircuitSpec.dual_unitary(8)
    amps = sdkim.evolve(spec, 1)
    assert amps.shape == (256,)
    assert amps.dtype == np.complex128
    p = np.abs(amps) ** 2
    assert math.isclose(p.sum(), 1.0, rel_tol=1e-12)
    # one period spreads |0..0> uniformly over all bit-strings
    assert np.allclose(p, 1.0 / 256, rtol=1e-12)


def test_ipr_matches_closed_form_at_t1():
    spec = sdkim.CircuitSpec.dual_unitary(10)
    amps = sdkim.evolve(spec, 1)
    for q in (2, 3, 5):
        assert math.isclose(
            sdkim.ipr(amps, q), sdkim.ipr_du_analytic(10, 1, q), rel_tol=1e-12
        )
    s2 = sdkim.participation_entropy(sdkim.ipr(amps, 2), 2)
    assert math.isclose(s2, 10 * math.log(2), rel_tol=1e-12)


def test_probabilities_and_ks():
    spec = sdkim.CircuitSpec.dual_unitary(10)
    p = sdkim.probabilities(spec, 6)
    ref = sdkim.porter_thomas_distribution(10)
    assert sdkim.ks_statistic(p, ref) < 0.1
    assert math.isclose(sdkim.normalization(ref), 1.0, rel_tol=1e-9)


def test_dual_transfer_identity():
    spec = sdkim.CircuitSpec.dual_unitary(6)
    assert sdkim.dual_deviation(spec, 4) < 1e-12


def test_perturbed_boundary():
    theta = math.pi / 14
    u = sdkim.kick_gate(theta)
    assert u.unitarity_error() < 1e-15
    assert math.isclose(
        sdkim.m_element(u, 3, 0) + sdkim.m_element(u, 3, 1), 1.0, rel_tol=0
    )
    assert math.isclose(
        sdkim.ipr_via_m(12, 3, 2, u),
        sdkim.ipr_perturbed_analytic(12, 3, 2, theta),
        rel_tol=1e-12,
    )


def test_haar_sampling_and_moments():
    U = sdkim.sample_haar(4, seed=7)
    assert np.allclose(U @ U.conj().T, np.eye(4), atol=1e-12)
    est = sdkim.mc_moment(4, 2, 4000, seed=17, threads=2)
    z = (est.mean - sdkim.haar_moment_closed(4, 2)) / est.std_error
    assert abs(z) < 4


def test_spec_round_trip_and_validation():
    spec = sdkim.CircuitSpec.boundary_kick(8, math.pi / 14)
    text = spec.to_config_text()
    back = sdkim.from_config_text(text)
    assert back.hash_hex() == spec.hash_hex()
    assert sdkim.validate(spec)["ok"]

    bad = sdkim.CircuitSpec.dual_unitary(8)
    bad.J = 0.7  # off the self-dual point
    assert not sdkim.validate(bad)["ok"]


def test_angle_round_trip():
    assert sdkim.parse_angle("pi/14") == pytest.approx(math.pi / 14, rel=1e-15)
    assert sdkim.format_angle(math.pi / 3) == "pi/3"
    assert sdkim.parse_angle(sdkim.format_angle(0.123456)) == 0.123456


def test_dump_round_trip(tmp_path):
    spec = sdkim.CircuitSpec.dual_unitary(6)
    path = str(tmp_path / "probs.bin")
    sdkim.dump_probabilities(spec, 3, path)
    d = sdkim.load_probabilities(path)
    assert d["L"] == 6
    assert d["t"] == 3
    assert d["spec_hash"] == spec.hash_hex()
    assert np.allclose(d["p"], sdkim.probabilities(spec, 3), rtol=0, atol=0)
