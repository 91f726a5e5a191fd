"""Tests for the finite-well black-hole model."""

import math

import numpy as np
import pytest
from scipy.optimize import brentq

from complexmech.black_hole import (
    BlackHoleModel,
    NonIntegrableBarrier,
    classical_escape,
    escape_momentum,
    horizon_radius,
    potential,
    radial_profile,
    turning_radius,
    wkb_escape_probability,
)
from complexmech.units import Units

U = Units()
MODEL = BlackHoleModel(M=1.0, m=1.0)


def test_horizon_radius_examples():
    assert horizon_radius(1.0, 1.0, 1.0) == 2.0
    assert horizon_radius(2.0, 1.0, 1.0) == 4.0  # linear in M
    assert horizon_radius(1.0, 1.0, 2.0) == 0.5  # quartered when c doubles


def test_horizon_radius_against_root_oracle():
    """r_E solves (1/2) c^2 = grav M / r, found independently by brentq."""
    for M, grav, c in ((1.0, 1.0, 1.0), (3.7, 0.8, 2.1), (1e3, 1.0, 10.0)):
        root = brentq(lambda r: 0.5 * c**2 - grav * M / r, 1e-12, 1e12, xtol=1e-14)
        assert horizon_radius(M, grav, c) == pytest.approx(root, rel=1e-10)


def test_potential_flat_inside_and_continuous():
    r_E = MODEL.r_E
    v_h = potential(MODEL, r_E)
    assert potential(MODEL, 0.0) == v_h
    assert potential(MODEL, r_E / 2) == v_h  # flat interior, zero force
    assert potential(MODEL, r_E * (1 + 1e-12)) == pytest.approx(v_h, rel=1e-11)
    assert potential(MODEL, 1e9) == pytest.approx(0.0, abs=1e-8)
    assert potential(MODEL, 1e9) < 0.0  # approaches zero from below
    with pytest.raises(ValueError):
        potential(MODEL, -1.0)


def test_potential_is_bounded():
    """No singularity proxy: |V| peaks at the horizon value."""
    radii = np.linspace(0.0, 100.0, 10_001)
    values = [potential(MODEL, r) for r in radii]
    assert max(abs(v) for v in values) == MODEL.well_depth
    inside = [potential(MODEL, r) for r in np.linspace(0.0, MODEL.r_E, 100)]
    assert len(set(inside)) == 1


def test_escape_momentum_at_horizon_is_launch_momentum():
    pm = escape_momentum(MODEL, MODEL.r_E, 1.3)
    assert pm.kind == "Real"
    assert pm.value == pytest.approx(1.3)


def test_escape_momentum_asymptotic():
    p0 = 0.6  # E0 = 0.18 < depth 0.5: bound
    E0 = p0**2 / 2
    pm = escape_momentum(MODEL, 1e12, p0)
    assert pm.kind == "Imaginary"
    expected = math.sqrt(2.0 * (MODEL.well_depth - E0))
    assert pm.value.imag == pytest.approx(expected, rel=1e-9)
    # above the well depth the far momentum is real
    pm_free = escape_momentum(MODEL, 1e12, 1.2)  # E0 = 0.72 > 0.5
    assert pm_free.kind == "Real"


def test_escape_momentum_partition_matches_energy_inequality():
    p0 = 0.6
    E0 = p0**2 / 2
    v_h = potential(MODEL, MODEL.r_E)
    for r in np.linspace(MODEL.r_E / 100, 20.0 * MODEL.r_E, 1000):
        pm = escape_momentum(MODEL, r, p0)
        allowed = potential(MODEL, r) <= v_h + E0
        assert (pm.kind == "Real") == allowed


def test_escape_momentum_continuous_at_turning_radius():
    p0 = 0.6
    r_t = turning_radius(MODEL, p0**2 / 2)
    assert abs(escape_momentum(MODEL, r_t, p0).value) < 1e-7
    assert abs(escape_momentum(MODEL, r_t * (1 + 1e-9), p0).value) < 1e-4


def test_classical_escape_threshold():
    # E0 = depth exactly: marginal escape with infinite turning radius
    p_marginal = math.sqrt(2.0 * MODEL.well_depth)
    verdict = classical_escape(MODEL, p_marginal)
    assert verdict.escapes and math.isinf(verdict.turning_radius)
    # E0 = depth/2 turns around at exactly 2 r_E
    verdict = classical_escape(MODEL, math.sqrt(MODEL.well_depth))
    assert not verdict.escapes
    assert verdict.turning_radius == pytest.approx(2.0 * MODEL.r_E, rel=1e-12)
    # p0 = 0 never leaves the interior
    verdict = classical_escape(MODEL, 0.0)
    assert not verdict.escapes
    assert verdict.turning_radius == pytest.approx(MODEL.r_E, rel=1e-12)


def test_wkb_probability_is_one_for_escaping_particles():
    for E0 in (MODEL.well_depth, MODEL.well_depth * 2, MODEL.well_depth * 10):
        assert wkb_escape_probability(MODEL, E0, units=U) == 1.0


def test_wkb_unbounded_shell_raises():
    """A bound particle faces an infinitely wide barrier: no silent truncation."""
    with pytest.raises(NonIntegrableBarrier, match="unbounded"):
        wkb_escape_probability(MODEL, 0.9 * MODEL.well_depth, units=U)


def test_wkb_banded_values_and_monotonicity():
    r_max = 50.0 * MODEL.r_E
    previous = 0.0
    for frac in (0.1, 0.3, 0.5, 0.7, 0.9):
        prob = wkb_escape_probability(MODEL, frac * MODEL.well_depth, units=U, r_max=r_max)
        assert 0.0 < prob < 1.0
        assert prob > previous
        previous = prob


def test_wkb_band_must_reach_shell():
    E0 = 0.9 * MODEL.well_depth
    r_t = turning_radius(MODEL, E0)
    with pytest.raises(ValueError, match="does not reach"):
        wkb_escape_probability(MODEL, E0, units=U, r_max=r_t / 2)


def test_wkb_semiclassical_limit_direction():
    """Shrinking hbar drives the banded probability toward zero."""
    E0 = 0.5 * MODEL.well_depth
    r_max = 20.0 * MODEL.r_E
    probs = [
        wkb_escape_probability(MODEL, E0, units=Units(hbar=h), r_max=r_max)
        for h in (1.0, 0.5, 0.25)
    ]
    assert probs[0] > probs[1] > probs[2]


def test_classical_wkb_agreement():
    """Escape verdict and probability-one outcomes coincide exactly."""
    for p0 in (0.2, 0.6, 0.999, 1.0, 1.5):
        E0 = p0**2 / (2.0 * MODEL.m)
        verdict = classical_escape(MODEL, p0)
        try:
            prob = wkb_escape_probability(MODEL, E0, units=U)
        except NonIntegrableBarrier:
            prob = None
        assert (prob == 1.0) == verdict.escapes


def test_radial_profile_rows():
    rows = radial_profile(MODEL, 0.6, np.linspace(0.1, 10.0, 50))
    assert len(rows) == 50
    r, v, p_re, p_im, allowed = rows[0]
    assert r == 0.1 and v == -MODEL.well_depth
    assert allowed and p_im == 0.0
    assert not rows[-1][4]  # far radius is forbidden for this energy


def test_model_validation():
    with pytest.raises(ValueError):
        BlackHoleModel(M=-1.0, m=1.0)
    with pytest.raises(ValueError):
        horizon_radius(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        escape_momentum(MODEL, 0.0, 1.0)
    with pytest.raises(ValueError):
        wkb_escape_probability(MODEL, -1.0, units=U)
