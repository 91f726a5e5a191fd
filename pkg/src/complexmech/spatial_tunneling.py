"""Scattering on piecewise-constant potentials and the classical contrast.

The transfer matrix relates plane-wave amplitude pairs across a stack of
constant-potential intervals and is the quantitative oracle for
transmission/reflection rates.  ``classical_encounter`` walks a point
particle through the same landscape, where any step it cannot afford to
climb reflects it; the quantum side always transmits a nonzero fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .units import Units

#: |E0 - V| below this (times the problem scale) switches an interval to the
#: linear {1, q} solution basis, the k -> 0 limit of the plane-wave pair.
MARGINAL_REL_TOL = 1e-12


@dataclass(frozen=True)
class PiecewisePotential:
    """k ascending breakpoints delimiting k+1 constant-potential intervals."""

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __init__(self, breakpoints, values):
        breakpoints = tuple(float(b) for b in breakpoints)
        values = tuple(float(v) for v in values)
        if len(values) != len(breakpoints) + 1:
            raise ValueError(
                f"{len(breakpoints)} breakpoints require {len(breakpoints) + 1} "
                f"interval values, got {len(values)}"
            )
        if any(b2 <= b1 for b1, b2 in zip(breakpoints, breakpoints[1:])):
            raise ValueError("breakpoints must be strictly ascending")
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "values", values)

    @classmethod
    def single_barrier(cls, q_a: float, q_b: float, height: float) -> "PiecewisePotential":
        return cls((q_a, q_b), (0.0, height, 0.0))

    def value_at(self, q: float) -> float:
        idx = int(np.searchsorted(self.breakpoints, q, side="right"))
        return self.values[idx]

    def region_index(self, q: float) -> int:
        return int(np.searchsorted(self.breakpoints, q, side="right"))


def tunneling_momentum(E0: float, V: float, m: float, hbar: float = 1.0) -> complex:
    """Principal complex root of 2m(E0 - V).

    Purely imaginary with positive imaginary part inside a barrier
    (E0 < V); purely real and nonnegative otherwise.  ``hbar`` is accepted
    for signature symmetry but the momentum itself does not involve it.
    """
    if m <= 0:
        raise ValueError(f"mass must be positive, got {m}")
    return complex(np.sqrt(complex(2.0 * m * (E0 - V))))


def _is_marginal(E0: float, V: float, scale: float) -> bool:
    return abs(E0 - V) <= MARGINAL_REL_TOL * scale


def _basis(k: complex, x: float, marginal: bool) -> np.ndarray:
    """Columns = the two solutions (value; derivative) evaluated at x."""
    if marginal:
        # k -> 0 limit: the plane-wave pair degenerates; use {1, q}.
        return np.array([[1.0, x], [0.0, 1.0]], dtype=complex)
    ep = np.exp(1j * k * x)
    em = np.exp(-1j * k * x)
    return np.array([[ep, em], [1j * k * ep, -1j * k * em]], dtype=complex)


@dataclass(frozen=True)
class TransferMatrix:
    """2x2 complex matrix mapping leftmost amplitudes from rightmost ones."""

    matrix: np.ndarray
    k_in: complex
    k_out: complex
    marginal: bool


def transfer_matrix(
    pot: PiecewisePotential, E0: float, m: float, units: Units | None = None
) -> TransferMatrix:
    """Chain the continuity conditions across every breakpoint.

    The returned matrix T satisfies (A_left, B_left) = T (A_right, B_right)
    for amplitudes of exp(+i k q) / exp(-i k q) in the outermost intervals,
    with det T equal to the ratio k_out / k_in of asymptotic wavenumbers.
    Intervals with E0 equal to the potential are handled through the linear
    limit basis and flag the result as marginal.
    """
    if units is None:
        units = Units()
    if not E0 > 0:
        raise ValueError(f"scattering requires E0 > 0, got {E0}")
    hbar = units.hbar
    scale = max(abs(E0), max(abs(v) for v in pot.values), 1.0)
    marginals = [_is_marginal(E0, v, scale) for v in pot.values]
    if marginals[0] or marginals[-1]:
        raise ValueError("E0 coincides with an asymptotic potential value")
    ks = [tunneling_momentum(E0, v, m) / hbar for v in pot.values]

    total = np.eye(2, dtype=complex)
    any_marginal = False
    for j, x in enumerate(pot.breakpoints):
        left = _basis(ks[j], x, marginals[j])
        right = _basis(ks[j + 1], x, marginals[j + 1])
        total = total @ np.linalg.solve(left, right)
        any_marginal = any_marginal or marginals[j] or marginals[j + 1]
    return TransferMatrix(total, ks[0], ks[-1], any_marginal)


@dataclass(frozen=True)
class ScatterResult:
    """Transmission/reflection rates plus the per-interval amplitude pairs."""

    T: float
    R: float
    amplitudes: tuple[tuple[complex, complex], ...]
    k_in: complex
    k_out: complex
    marginal: bool


def transmission_reflection(
    pot: PiecewisePotential, E0: float, m: float, units: Units | None = None
) -> ScatterResult:
    """Scatter a unit wave incident from the left.

    T = (k_out/k_in)|t|^2 and R = |r|^2 from the transfer matrix; the
    amplitude list carries the matched coefficients of every interval
    (coefficients of {1, q} for a marginal interval).
    """
    if units is None:
        units = Units()
    tm = transfer_matrix(pot, E0, m, units)
    t_amp = 1.0 / tm.matrix[0, 0]
    r_amp = tm.matrix[1, 0] / tm.matrix[0, 0]
    T = float((tm.k_out / tm.k_in).real * abs(t_amp) ** 2)
    R = float(abs(r_amp) ** 2)

    # Back-propagate (t, 0) from the rightmost interval to fill every pair.
    hbar = units.hbar
    scale = max(abs(E0), max(abs(v) for v in pot.values), 1.0)
    marginals = [_is_marginal(E0, v, scale) for v in pot.values]
    ks = [tunneling_momentum(E0, v, m) / hbar for v in pot.values]
    coeffs = [np.array([t_amp, 0.0], dtype=complex)]
    for j in range(len(pot.breakpoints) - 1, -1, -1):
        left = _basis(ks[j], pot.breakpoints[j], marginals[j])
        right = _basis(ks[j + 1], pot.breakpoints[j], marginals[j + 1])
        coeffs.insert(0, np.linalg.solve(left, right @ coeffs[0]))
    amplitudes = tuple((complex(c[0]), complex(c[1])) for c in coeffs)
    return ScatterResult(T, R, amplitudes, tm.k_in, tm.k_out, tm.marginal)


@dataclass(frozen=True)
class EncounterEvent:
    """Outcome of a classical particle meeting the potential landscape."""

    verdict: str  # "Reflected" | "Transmitted"
    turning_point: float | None
    exit_momentum: float
    segments: tuple[tuple[float, float, float], ...]  # (q_from, q_to, speed)


def classical_encounter(
    q0: float, p0: float, pot: PiecewisePotential, m: float
) -> EncounterEvent:
    """Walk a point particle through the piecewise landscape.

    The particle is reflected at the first interface whose step it cannot
    afford (kinetic energy below the next interval's value) and exits with
    momentum -p0; otherwise it crosses every breakpoint at the
    piecewise-constant speed fixed by energy conservation.
    """
    if p0 == 0:
        raise ValueError("classical encounter needs p0 != 0")
    if m <= 0:
        raise ValueError(f"mass must be positive, got {m}")
    start_region = pot.region_index(q0)
    if pot.values[start_region] != 0.0:
        raise ValueError("particle must start in a zero-potential interval")
    E0 = p0**2 / (2.0 * m)
    direction = 1 if p0 > 0 else -1

    if direction > 0:
        interfaces = list(range(start_region, len(pot.breakpoints)))
    else:
        interfaces = list(range(start_region - 1, -1, -1))

    segments = []
    pos = q0
    region = start_region
    for j in interfaces:
        boundary = pot.breakpoints[j]
        speed = math.sqrt(2.0 * (E0 - pot.values[region]) / m)
        segments.append((pos, boundary, speed))
        next_region = j + 1 if direction > 0 else j
        v_next = pot.values[next_region]
        if E0 < v_next:
            return EncounterEvent("Reflected", boundary, -p0, tuple(segments))
        pos = boundary
        region = next_region
    speed = math.sqrt(2.0 * (E0 - pot.values[region]) / m)
    segments.append((pos, math.inf if direction > 0 else -math.inf, speed))
    return EncounterEvent("Transmitted", None, p0, tuple(segments))
