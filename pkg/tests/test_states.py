"""Tests for the piecewise plane-wave states and their label algebra."""

import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from complexmech.algebra import GridSpec, StateVector, build_operator, classify_value, rayleigh_eigenvalue
from complexmech.black_hole import BlackHoleModel
from complexmech.states import (
    LITERAL,
    MATCHED,
    PiecewiseState,
    PlaneWaveLabel,
    Region,
    bh_escape_state,
    boundary_mismatch,
    match_amplitudes,
    momentum_label,
    plane_wave,
    region_profile,
    schrodinger_residual,
    spatial_tunnel_state,
    temporal_tunnel_state,
)
from complexmech.units import Units

U = Units()


def test_label_invariants():
    PlaneWaveLabel(p_re=1.0, p_im=2j, E=0.5)
    PlaneWaveLabel()  # all-zero is fine
    with pytest.raises(ValueError, match="p_re"):
        PlaneWaveLabel(p_re=1 + 1j)
    with pytest.raises(ValueError, match="p_im"):
        PlaneWaveLabel(p_im=1.0)
    with pytest.raises(ValueError, match="E"):
        PlaneWaveLabel(E=1j)


def test_momentum_label_routing():
    assert momentum_label(2.0, 1.0).p_re == 2.0
    assert momentum_label(2j, 1.0).p_im == 2j
    assert momentum_label(0.0, 1.0) == PlaneWaveLabel(E=1.0)
    with pytest.raises(ValueError, match="neither"):
        momentum_label(1 + 1j, 1.0)


def test_region_tiling_enforced():
    lab = PlaneWaveLabel()
    with pytest.raises(ValueError, match="tile"):
        PiecewiseState(
            axis="q_re",
            regions=(Region(-math.inf, 0.0, lab), Region(0.5, math.inf, lab)),
        )


def test_plane_wave_oscillatory_on_real_axis():
    g = GridSpec("q_re", 0.0, 1.0, 32)
    vals = plane_wave(PlaneWaveLabel(p_re=1.0, E=0.5), [g], U)
    assert np.max(np.abs(np.abs(vals) - 1.0)) < 1e-14


def test_plane_wave_real_exponential_on_imaginary_axis():
    """Purely imaginary p_im gives a real exponential along the x grid."""
    g = GridSpec("x_im", 0.0, 1.0, 32)
    vals = plane_wave(PlaneWaveLabel(p_im=1j), [g], U)
    assert np.max(np.abs(vals - np.exp(-g.points))) < 1e-15
    assert np.max(np.abs(vals.imag)) == 0.0


def test_plane_wave_zero_label_is_one():
    g = GridSpec("q_re", -1.0, 1.0, 16)
    assert np.all(plane_wave(PlaneWaveLabel(), [g], U) == 1.0)


def test_plane_wave_product_grid():
    gq = GridSpec("q_re", 0.0, 1.0, 8)
    gt = GridSpec("t", 0.0, 2.0, 12)
    vals = plane_wave(PlaneWaveLabel(p_re=1.0, E=0.5), [gq, gt], U)
    assert vals.shape == (8, 12)
    expected = np.exp(1j * gq.points[3]) * np.exp(-0.5j * gt.points[5])
    assert abs(vals[3, 5] - expected) < 1e-14


def test_plane_wave_momentum_sign_flag():
    g = GridSpec("q_re", 0.0, 1.0, 16)
    plus = plane_wave(PlaneWaveLabel(p_re=1.0), [g], U, momentum_sign=1)
    minus = plane_wave(PlaneWaveLabel(p_re=1.0), [g], U, momentum_sign=-1)
    assert np.max(np.abs(plus - np.conj(minus))) < 1e-14


def test_spatial_state_labels():
    s = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U)
    assert s.regions[0].label.p_re == math.sqrt(2.0)
    assert s.regions[1].label.p_im == 1j * math.sqrt(2.0)
    assert s.regions[1].label.E == 1.0  # keeps the incident energy
    assert s.regions[2].label == s.regions[0].label


def test_spatial_state_free_barrier_collapses():
    s = spatial_tunnel_state(0.0, 1.0, 0.0, 1.0, 1.0, U)
    assert s.regions[1].label == s.regions[0].label


def test_spatial_state_marginal_energy():
    s = spatial_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U)
    assert s.regions[1].label.total_momentum == 0.0
    prof = region_profile(s.regions[1], np.linspace(0.0, 1.0, 16), U)
    assert np.all(prof == 1.0)  # constant amplitude inside


def test_spatial_state_validation():
    with pytest.raises(ValueError, match="q_a"):
        spatial_tunnel_state(1.0, 0.0, 2.0, 1.0, 1.0, U)


def test_temporal_state_conserves_energy():
    s = temporal_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U)
    before, during, after = s.regions
    assert before.label.E == 0.5
    assert during.label.p_im == 1j
    assert during.label.E == -0.5
    assert during.label.E + 1.0 == before.label.E  # exact
    assert after.label == before.label


@given(p0=st.floats(0.01, 50.0), W0=st.floats(0.0, 100.0), m=st.floats(0.01, 10.0))
def test_temporal_conservation_within_rounding(p0, W0, m):
    """Generic floats: the identity holds to a couple of ulps."""
    s = temporal_tunnel_state(0.0, 1.0, W0, p0, m)
    E0 = s.regions[0].label.E.real
    E_T = s.regions[1].label.E.real
    eps = np.finfo(float).eps
    assert abs((E_T + W0) - E0) <= 4 * eps * (abs(E0) + abs(W0))


def test_temporal_state_trivial_cases():
    s = temporal_tunnel_state(0.0, 1.0, 0.0, 1.0, 1.0, U)
    assert s.regions[1].label == s.regions[0].label
    s = temporal_tunnel_state(0.0, 1.0, 0.5, 1.0, 1.0, U)  # W0 = E0
    assert s.regions[1].label.total_momentum == 0.0
    assert s.regions[1].label.E == 0.0


def test_matched_mode_is_continuous():
    s = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U, mode=MATCHED)
    for b in boundary_mismatch(s, U):
        assert b.rel_jump_value < 1e-10
        assert b.rel_jump_slope < 1e-10


def test_literal_mode_reports_mismatch_without_error():
    s = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U, mode=LITERAL)
    mismatches = boundary_mismatch(s, U)
    assert len(mismatches) == 2
    assert max(max(b.jump_value, b.jump_slope) for b in mismatches) > 0.1


def test_single_region_state_has_no_boundaries():
    free = PiecewiseState(
        axis="q_re",
        regions=(Region(-math.inf, math.inf, PlaneWaveLabel(p_re=1.0, E=0.5)),),
    )
    assert boundary_mismatch(free, U) == []


def test_temporal_state_rejected_by_boundary_mismatch():
    s = temporal_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U)
    with pytest.raises(ValueError, match="time-axis"):
        boundary_mismatch(s, U)


def test_matched_mode_marginal_energy_uses_linear_interior():
    """E0 = V0: the interior degenerates to {1, q} and still matches."""
    s = spatial_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U, mode=MATCHED)
    assert s.regions[1].label.total_momentum == 0.0
    for b in boundary_mismatch(s, U):
        assert b.rel_jump_value < 1e-10
        assert b.rel_jump_slope < 1e-10


def test_matching_is_idempotent():
    s1 = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U, mode=MATCHED)
    s2 = match_amplitudes(s1, U)
    for r1, r2 in zip(s1.regions, s2.regions):
        assert r1.amp_fwd == r2.amp_fwd
        assert r1.amp_bwd == r2.amp_bwd


def test_schrodinger_residual_examples():
    # free region with dyadic-exact momentum: exactly zero
    s = spatial_tunnel_state(0.0, 1.0, 1.0, 0.5, 1.0, U)  # p0 = 1 exactly
    assert schrodinger_residual(s, 0, 0.0, U) == 0.0
    # middle region with the barrier height as potential: exactly zero
    assert schrodinger_residual(s, 1, 1.0, U) == 0.0
    # temporal middle region passes zero potential (ledger, not potential)
    t = temporal_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U)
    assert schrodinger_residual(t, 1, 0.0, U) == 0.0
    # deliberately wrong label reports the gap
    wrong = PiecewiseState(
        axis="q_re",
        regions=(Region(-math.inf, math.inf, PlaneWaveLabel(E=0.7)),),
    )
    assert schrodinger_residual(wrong, 0, 0.0, U) == 0.7


def test_schrodinger_residual_generic_values_small():
    s = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U)
    for idx, v in ((0, 0.0), (1, 2.0), (2, 0.0)):
        assert schrodinger_residual(s, idx, v, U) < 1e-14


def test_mid_barrier_rayleigh_reproduces_imaginary_momentum():
    """Sampling the barrier interior and probing with p_re gives i*kappa."""
    E0, V0, m = 1.0, 2.0, 1.0
    kappa = math.sqrt(2 * m * (V0 - E0)) / U.hbar
    s = spatial_tunnel_state(0.0, 1.0, V0, E0, m, U)
    grid = GridSpec("q_re", 0.0, 1.0, 256)
    psi = StateVector(region_profile(s.regions[1], grid.points, U), grid)
    p_op = build_operator("momentum_re", grid, U)
    val = rayleigh_eigenvalue(p_op, psi, boundary_margin=1)
    assert abs(val.real) < 1e-9
    assert classify_value(val) == "Imaginary"
    discrete = math.sinh(kappa * grid.spacing) / grid.spacing
    assert abs(val.imag - U.hbar * discrete) < 1e-12
    assert abs(abs(val.imag) - U.hbar * kappa) < U.hbar * kappa**3 * grid.spacing**2 / 4 + 1e-12


def test_bh_escape_state_regions():
    model = BlackHoleModel(M=1.0, m=1.0)
    s = bh_escape_state(model, p0_re=1.2, units=U)
    inner, outer = s.regions
    assert inner.label.p_re == 1.2
    assert inner.lo == 0.0 and inner.hi == model.r_E
    # at the horizon the local momentum equals the launch momentum
    assert outer.momentum_at(model.r_E) == pytest.approx(1.2)
    # far away it approaches the stored asymptotic label
    far = outer.momentum_at(1e12)
    assert abs(far - outer.label.total_momentum) < 1e-5


def test_bh_escape_state_bound_particle_goes_imaginary():
    model = BlackHoleModel(M=1.0, m=1.0)
    s = bh_escape_state(model, p0_re=0.5, units=U)  # E0 = 0.125 < depth 0.5
    outer = s.regions[1]
    assert outer.label.p_im.imag > 0.0
    assert classify_value(outer.momentum_at(1e9)) == "Imaginary"


def test_bh_escape_state_gravity_decoupling_limit():
    """Light particles see free propagation everywhere outside.

    The well depth gamma*m*M/r_E equals m*c^2/2 for any gamma (shrinking
    gamma shrinks the horizon radius proportionally), so shrinking gamma
    alone never decouples gravity; shrinking the particle mass does, since
    the depth scales with m while E0 = p0^2/2m grows.
    """
    model = BlackHoleModel(M=1.0, m=1e-6)
    s = bh_escape_state(model, p0_re=1.0, m=1e-6, units=U)
    for r in (1.0, 10.0, 1e6):
        assert s.regions[1].momentum_at(r) == pytest.approx(1.0, rel=1e-9)


def test_bh_escape_state_validation():
    model = BlackHoleModel(M=1.0, m=1.0)
    with pytest.raises(ValueError, match="r_a"):
        bh_escape_state(model, r_a=-1.0, p0_re=1.0, units=U)


def test_state_serialization_schema():
    s = spatial_tunnel_state(0.0, 1.0, 2.0, 1.0, 1.0, U, mode=MATCHED)
    payload = json.loads(s.to_json())
    assert payload["axis"] == "q_re"
    assert payload["mode"] == "matched"
    assert len(payload["regions"]) == 3
    first = payload["regions"][0]
    assert first["lo"] == "-inf"
    assert set(first) == {"lo", "hi", "p_re", "p_im", "E", "amp_fwd", "amp_bwd", "local"}
    assert first["p_re"] == [math.sqrt(2.0), 0.0]
    # serialization is deterministic
    assert s.to_json() == s.to_json()


def test_temporal_state_has_no_matched_mode():
    with pytest.raises(ValueError, match="literal"):
        temporal_tunnel_state(0.0, 1.0, 1.0, 1.0, 1.0, U, mode=MATCHED)
