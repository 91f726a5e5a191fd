"""Transfer-matrix scattering vs the closed-form single-barrier oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complexmech.spatial_tunneling import (
    PiecewisePotential,
    classical_encounter,
    transfer_matrix,
    transmission_reflection,
    tunneling_momentum,
)
from complexmech.units import Units

U = Units()


def closed_form_T(E0, V0, L, m=1.0, hbar=1.0):
    """Independent single-barrier transmission oracle (all three branches)."""
    if E0 < V0:
        kap = math.sqrt(2 * m * (V0 - E0)) / hbar
        return 1.0 / (1.0 + V0**2 * math.sinh(kap * L) ** 2 / (4 * E0 * (V0 - E0)))
    if E0 > V0:
        k = math.sqrt(2 * m * (E0 - V0)) / hbar
        return 1.0 / (1.0 + V0**2 * math.sin(k * L) ** 2 / (4 * E0 * (E0 - V0)))
    return 1.0 / (1.0 + m * L**2 * V0 / (2 * hbar**2))


BARRIER = PiecewisePotential.single_barrier(0.0, 1.0, 2.0)


def test_potential_validation():
    with pytest.raises(ValueError, match="ascending"):
        PiecewisePotential((1.0, 0.0), (0.0, 2.0, 0.0))
    with pytest.raises(ValueError, match="interval"):
        PiecewisePotential((0.0, 1.0), (0.0, 2.0))
    assert BARRIER.value_at(0.5) == 2.0
    assert BARRIER.value_at(-1.0) == 0.0


def test_tunneling_momentum_examples():
    assert tunneling_momentum(1.0, 2.0, 1.0) == 1j * math.sqrt(2.0)
    assert tunneling_momentum(1.0, 0.0, 1.0) == math.sqrt(2.0)
    assert tunneling_momentum(1.0, 1.0, 1.0) == 0.0
    with pytest.raises(ValueError):
        tunneling_momentum(1.0, 0.0, -1.0)


@given(
    E0=st.floats(0.01, 50.0),
    V=st.floats(-50.0, 50.0),
    m=st.floats(0.01, 100.0),
)
def test_tunneling_momentum_principal_branch(E0, V, m):
    p = tunneling_momentum(E0, V, m)
    assert p.imag >= 0.0
    if E0 < V:
        assert p.real == 0.0 and p.imag > 0.0
    elif E0 > V:
        assert p.imag == 0.0 and p.real > 0.0


def test_free_potential_gives_identity():
    pot = PiecewisePotential((0.0, 1.0), (0.0, 0.0, 0.0))
    tm = transfer_matrix(pot, 1.0, 1.0, U)
    assert np.max(np.abs(tm.matrix - np.eye(2))) < 1e-14


def test_single_barrier_matches_oracle():
    res = transmission_reflection(BARRIER, 1.0, 1.0, U)
    oracle = closed_form_T(1.0, 2.0, 1.0)
    assert abs(res.T - oracle) < 1e-10 * oracle
    assert abs(res.T - 0.2108) < 1e-4
    assert abs(res.T + res.R - 1.0) < 1e-10
    # |M11|^-2 is the transmission for equal asymptotes
    tm = transfer_matrix(BARRIER, 1.0, 1.0, U)
    assert abs(1.0 / abs(tm.matrix[0, 0]) ** 2 - oracle) < 1e-10


@pytest.mark.parametrize("E0", [0.2, 0.9, 1.999, 2.3, 4.7])
def test_oracle_equivalence_both_branches(E0):
    res = transmission_reflection(BARRIER, E0, 1.0, U)
    assert res.T == pytest.approx(closed_form_T(E0, 2.0, 1.0), rel=1e-10)


def test_marginal_energy_uses_linear_limit():
    res = transmission_reflection(BARRIER, 2.0, 1.0, U)
    assert res.marginal
    assert res.T == pytest.approx(closed_form_T(2.0, 2.0, 1.0), rel=1e-10)


def test_unitarity_sweep():
    for i in range(1, 101):
        E0 = 6.0 * i / 100
        res = transmission_reflection(BARRIER, E0, 1.0, U)
        assert abs(res.T + res.R - 1.0) < 1e-10


@settings(max_examples=25)
@given(
    E0=st.floats(0.05, 8.0),
    V0=st.floats(-3.0, 3.0),
    L=st.floats(0.05, 4.0),
    m=st.floats(0.2, 5.0),
)
def test_unitarity_property(E0, V0, L, m):
    pot = PiecewisePotential.single_barrier(0.0, L, V0)
    if abs(E0 - V0) < 1e-9:
        return
    res = transmission_reflection(pot, E0, m, U)
    assert abs(res.T + res.R - 1.0) < 1e-10
    assert 0.0 <= res.T <= 1.0 + 1e-12


def test_transfer_matrix_composition():
    full = PiecewisePotential((0.0, 1.0, 2.0, 2.5), (0.0, 2.0, 0.0, 3.0, 0.0))
    left = PiecewisePotential((0.0, 1.0), (0.0, 2.0, 0.0))
    right = PiecewisePotential((2.0, 2.5), (0.0, 3.0, 0.0))
    tm = transfer_matrix(full, 1.3, 1.0, U)
    product = transfer_matrix(left, 1.3, 1.0, U).matrix @ transfer_matrix(right, 1.3, 1.0, U).matrix
    assert np.max(np.abs(tm.matrix - product)) < 1e-12
    assert abs(np.linalg.det(tm.matrix) - 1.0) < 1e-12  # equal asymptotes


def test_thick_barrier_transmission_decays():
    kappa = math.sqrt(2.0)
    previous = 1.0
    for L in (1.0, 2.0, 4.0, 8.0, 20.0 / kappa):
        pot = PiecewisePotential.single_barrier(0.0, L, 2.0)
        T = transmission_reflection(pot, 1.0, 1.0, U).T
        assert T < previous
        previous = T
    assert previous < 1e-15  # kappa*L = 20


def test_amplitudes_solve_matching():
    """The back-propagated amplitude pairs are continuous at breakpoints."""
    res = transmission_reflection(BARRIER, 1.0, 1.0, U)
    (a1, b1), (a2, b2), (a3, b3) = res.amplitudes
    k = math.sqrt(2.0)
    kap = math.sqrt(2.0)
    for q in BARRIER.breakpoints:
        if q == 0.0:
            left = a1 * np.exp(1j * k * q) + b1 * np.exp(-1j * k * q)
            right = a2 * np.exp(-kap * q) + b2 * np.exp(kap * q)
        else:
            left = a2 * np.exp(-kap * q) + b2 * np.exp(kap * q)
            right = a3 * np.exp(1j * k * q) + b3 * np.exp(-1j * k * q)
        assert abs(left - right) < 1e-12
    assert abs(a1 - 1.0) < 1e-14 and abs(b3) < 1e-14


def test_classical_reflection():
    ev = classical_encounter(-1.0, math.sqrt(2.0), BARRIER, 1.0)  # E0 = 1 < 2
    assert ev.verdict == "Reflected"
    assert ev.turning_point == 0.0
    assert ev.exit_momentum == -math.sqrt(2.0)


def test_classical_transmission_speed():
    ev = classical_encounter(-1.0, math.sqrt(6.0), BARRIER, 1.0)  # E0 = 3 > 2
    assert ev.verdict == "Transmitted"
    interior = ev.segments[1]
    assert interior[2] == pytest.approx(math.sqrt(2.0 * (3.0 - 2.0)))


def test_classical_free_motion():
    pot = PiecewisePotential((0.0, 1.0), (0.0, 0.0, 0.0))
    ev = classical_encounter(-1.0, 1.0, pot, 1.0)
    assert ev.verdict == "Transmitted"
    assert all(seg[2] == 1.0 for seg in ev.segments)


def test_classical_from_the_right():
    ev = classical_encounter(5.0, -math.sqrt(2.0), BARRIER, 1.0)
    assert ev.verdict == "Reflected"
    assert ev.turning_point == 1.0


def test_classical_requires_free_start():
    with pytest.raises(ValueError, match="zero-potential"):
        classical_encounter(0.5, 1.0, BARRIER, 1.0)
    with pytest.raises(ValueError, match="p0"):
        classical_encounter(-1.0, 0.0, BARRIER, 1.0)


def test_quantum_classical_contrast():
    """Below the barrier the classical side reflects while T stays positive."""
    for i in range(1, 20):
        E0 = 2.0 * i / 20
        ev = classical_encounter(-1.0, math.sqrt(2 * E0), BARRIER, 1.0)
        res = transmission_reflection(BARRIER, E0, 1.0, U)
        assert ev.verdict == "Reflected"
        assert res.T > 0.0
