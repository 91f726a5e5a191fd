"""Factored and piecewise plane-wave states with machine-checkable labels.

A state is a list of axis intervals, each labeled by a momentum/energy
triple and an amplitude pair.  Labels keep the real momentum, the imaginary
momentum, and the energy in separate slots so reality constraints stay
explicit: p_re is purely real, p_im purely imaginary, E purely real.

Sampling conventions (``momentum_sign`` flips the momentum exponents):

* per-axis factors: exp(+i*p*u/hbar) on the coordinate axes (u the grid
  coordinate of that axis) and exp(-i*E*t/hbar) on the time axis.  With a
  purely imaginary p_im the imaginary-axis factor becomes a *real*
  exponential -- the i from the momentum cancels the i in the phase.  That
  is a feature of the construction and is kept as-is.
* whole-region profiles on the state's own axis combine both momentum
  slots into one complex momentum p_re + p_im, which is what makes a
  barrier's interior a decaying exponential along the real axis.

Amplitude modes: ``literal`` keeps unit forward amplitudes exactly as the
states are usually written down; ``matched`` fills the amplitude pairs from
the scattering transfer matrix so value and slope are continuous at every
interior boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

from .black_hole import BlackHoleModel, escape_momentum, potential
from .spatial_tunneling import PiecewisePotential, transmission_reflection
from .units import Units

LITERAL = "literal"
MATCHED = "matched"

STATE_AXES = ("q_re", "r_re", "t")


def _reality_defect(z: complex, part: str) -> float:
    return abs(z.imag) if part == "real" else abs(z.real)


@dataclass(frozen=True)
class PlaneWaveLabel:
    """Momentum/energy triple labeling one product plane wave."""

    p_re: complex = 0.0
    p_im: complex = 0.0
    E: complex = 0.0

    def __post_init__(self):
        p_re, p_im, E = complex(self.p_re), complex(self.p_im), complex(self.E)
        object.__setattr__(self, "p_re", p_re)
        object.__setattr__(self, "p_im", p_im)
        object.__setattr__(self, "E", E)
        if p_re.imag != 0.0:
            raise ValueError(f"p_re must be purely real, got {p_re}")
        if p_im.real != 0.0:
            raise ValueError(f"p_im must be purely imaginary, got {p_im}")
        if E.imag != 0.0:
            raise ValueError(f"E must be purely real, got {E}")

    @property
    def total_momentum(self) -> complex:
        """Both momentum slots folded into one complex momentum."""
        return self.p_re + self.p_im


def momentum_label(p: complex, E: float) -> PlaneWaveLabel:
    """Build a label routing a complex momentum into the matching slot.

    A purely real momentum lands in p_re, a purely imaginary one in p_im;
    anything genuinely mixed is rejected by the label invariants.
    """
    p = complex(p)
    if p.imag == 0.0:
        return PlaneWaveLabel(p_re=p, E=E)
    if p.real == 0.0:
        return PlaneWaveLabel(p_im=p, E=E)
    raise ValueError(f"momentum {p} is neither purely real nor purely imaginary")


@dataclass(frozen=True)
class Region:
    """One axis interval carrying a label and a forward/backward amplitude pair.

    ``local_momentum``, when present, makes the label position dependent:
    the stored label holds the asymptotic values while sampling evaluates
    the callable per point (local-wavenumber reading).
    """

    lo: float
    hi: float
    label: PlaneWaveLabel
    amp_fwd: complex = 1.0
    amp_bwd: complex = 0.0
    local_momentum: Callable[[float], complex] | None = None

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"region needs lo < hi, got [{self.lo}, {self.hi}]")
        for name in ("amp_fwd", "amp_bwd"):
            z = complex(getattr(self, name))
            object.__setattr__(self, name, z)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError(f"{name} must be finite, got {z}")

    def momentum_at(self, u: float) -> complex:
        if self.local_momentum is not None:
            return complex(self.local_momentum(u))
        return self.label.total_momentum


@dataclass(frozen=True)
class PiecewiseState:
    """Ordered regions tiling one axis, plus the particle mass they share."""

    axis: str
    regions: tuple[Region, ...]
    mode: str = LITERAL
    mass: float = 1.0

    def __post_init__(self):
        if self.axis not in STATE_AXES:
            raise ValueError(f"unknown state axis {self.axis!r}")
        if self.mode not in (LITERAL, MATCHED):
            raise ValueError(f"unknown amplitude mode {self.mode!r}")
        if not self.regions:
            raise ValueError("state needs at least one region")
        regions = tuple(self.regions)
        object.__setattr__(self, "regions", regions)
        for left, right in zip(regions, regions[1:]):
            if left.hi != right.lo:
                raise ValueError(
                    f"regions must tile the axis: gap/overlap between "
                    f"{left.hi} and {right.lo}"
                )
        if self.mode == LITERAL:
            for region in regions:
                if region.amp_fwd != 1.0 or region.amp_bwd != 0.0:
                    raise ValueError(
                        "literal mode keeps unit forward amplitudes everywhere"
                    )
        if self.mass <= 0:
            raise ValueError(f"mass must be positive, got {self.mass}")

    @property
    def boundaries(self) -> tuple[float, ...]:
        return tuple(r.hi for r in self.regions[:-1])

    def region_at(self, u: float) -> Region:
        for region in self.regions:
            if region.lo <= u < region.hi:
                return region
        return self.regions[-1]

    def to_dict(self) -> dict:
        def _num(x: float):
            if math.isinf(x):
                return "inf" if x > 0 else "-inf"
            return x

        def _pair(z: complex):
            return [z.real, z.imag]

        return {
            "axis": self.axis,
            "mode": self.mode,
            "regions": [
                {
                    "lo": _num(r.lo),
                    "hi": _num(r.hi),
                    "p_re": _pair(r.label.p_re),
                    "p_im": _pair(r.label.p_im),
                    "E": _pair(r.label.E),
                    "amp_fwd": _pair(r.amp_fwd),
                    "amp_bwd": _pair(r.amp_bwd),
                    "local": r.local_momentum is not None,
                }
                for r in self.regions
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def plane_wave(
    label: PlaneWaveLabel,
    grids,
    units: Units | None = None,
    momentum_sign: int = 1,
) -> np.ndarray:
    """Sample the factored plane wave over the product of per-axis grids.

    Each coordinate axis contributes exp(+i*s*p*u/hbar) with its own
    momentum slot (s = momentum_sign), the time axis contributes
    exp(-i*E*t/hbar).  The result has one array axis per grid, in order.
    """
    if units is None:
        units = Units()
    if momentum_sign not in (1, -1):
        raise ValueError("momentum_sign must be +1 or -1")
    try:
        grids = list(grids)
    except TypeError:
        grids = [grids]
    hbar = units.hbar
    factors = []
    for grid in grids:
        u = grid.points
        if grid.axis == "q_re":
            factors.append(np.exp(1j * momentum_sign * label.p_re * u / hbar))
        elif grid.axis == "x_im":
            # Purely imaginary p_im turns this into a real exponential.
            factors.append(np.exp(1j * momentum_sign * label.p_im * u / hbar))
        elif grid.axis == "t":
            factors.append(np.exp(-1j * label.E * u / hbar))
        else:
            raise ValueError(f"cannot sample axis {grid.axis!r}")
    out = factors[0]
    for f in factors[1:]:
        out = np.multiply.outer(out, f)
    return out


def region_profile(
    region: Region,
    points,
    units: Units | None = None,
    momentum_sign: int = 1,
) -> np.ndarray:
    """Sample one region's profile along the state's own axis.

    amp_fwd*exp(+i*p*u/hbar) + amp_bwd*exp(-i*p*u/hbar) with the combined
    complex momentum p = p_re + p_im (position dependent for local-momentum
    regions).  A region with p = 0 degenerates to the {1, u} basis:
    amp_fwd + amp_bwd*u.
    """
    if units is None:
        units = Units()
    hbar = units.hbar
    u = np.asarray(points, dtype=float)
    if region.local_momentum is not None:
        p = np.array([region.momentum_at(x) for x in np.atleast_1d(u)])
        p = p.reshape(u.shape)
    else:
        p = region.label.total_momentum
        if p == 0:
            return region.amp_fwd + region.amp_bwd * u.astype(complex)
    s = momentum_sign
    return region.amp_fwd * np.exp(1j * s * p * u / hbar) + region.amp_bwd * np.exp(
        -1j * s * p * u / hbar
    )


def _region_value_slope(region: Region, u: float, hbar: float) -> tuple[complex, complex]:
    """Value and derivative of a region profile at one point.

    Local-momentum regions use the local-wavenumber derivative
    i*p(u)/hbar * (each traveling component).
    """
    p = region.momentum_at(u)
    if p == 0 and region.local_momentum is None:
        return region.amp_fwd + region.amp_bwd * u, region.amp_bwd
    fwd = region.amp_fwd * np.exp(1j * p * u / hbar)
    bwd = region.amp_bwd * np.exp(-1j * p * u / hbar)
    value = fwd + bwd
    slope = (1j * p / hbar) * fwd - (1j * p / hbar) * bwd
    return complex(value), complex(slope)


def spatial_tunnel_state(
    q_a: float,
    q_b: float,
    V0: float,
    E0: float,
    m: float,
    units: Units | None = None,
    mode: str = LITERAL,
) -> PiecewiseState:
    """Three-region state for a square barrier of height V0 on [q_a, q_b].

    Outer regions carry the free momentum sqrt(2m*E0); the interior carries
    sqrt(2m(E0 - V0)) evaluated in complex arithmetic, purely imaginary when
    E0 < V0.  Every region keeps the incident energy E0 in its label.  In
    matched mode the amplitude pairs come from the scattering solution.
    """
    if units is None:
        units = Units()
    if not q_a < q_b:
        raise ValueError(f"barrier needs q_a < q_b, got [{q_a}, {q_b}]")
    if not E0 > 0:
        raise ValueError(f"E0 must be positive, got {E0}")
    if m <= 0:
        raise ValueError(f"mass must be positive, got {m}")
    p0 = complex(np.sqrt(complex(2.0 * m * E0)))
    p_t = complex(np.sqrt(complex(2.0 * m * (E0 - V0))))
    outer = momentum_label(p0, E0)
    inner = momentum_label(p_t, E0)
    state = PiecewiseState(
        axis="q_re",
        regions=(
            Region(-math.inf, q_a, outer),
            Region(q_a, q_b, inner),
            Region(q_b, math.inf, outer),
        ),
        mode=LITERAL,
        mass=m,
    )
    if mode == MATCHED:
        state = match_amplitudes(state, units)
    elif mode != LITERAL:
        raise ValueError(f"unknown amplitude mode {mode!r}")
    return state


def temporal_tunnel_state(
    t_a: float,
    t_b: float,
    W0: float,
    p0_re: float,
    m: float,
    units: Units | None = None,
    mode: str = LITERAL,
) -> PiecewiseState:
    """Three time intervals around an energy drain of height W0 on [t_a, t_b].

    Before and after: free label (p0, 0, E0) with E0 = p0^2/2m.  During:
    momentum sqrt(2m(E0 - W0)) and energy E_T = E0 - W0, so the
    conservation identity E_T + W0 = E0 holds by construction.  The square
    root carries the 2m factor; the variant (E0 - W0)^(1/2) sometimes
    written down has units of sqrt(energy) and would break the kinetic
    identity E_T = p^2/2m.
    """
    if units is None:
        units = Units()
    if not t_a < t_b:
        raise ValueError(f"barrier needs t_a < t_b, got [{t_a}, {t_b}]")
    if m <= 0:
        raise ValueError(f"mass must be positive, got {m}")
    E0 = p0_re**2 / (2.0 * m)
    E_T = E0 - W0
    p_t = complex(np.sqrt(complex(2.0 * m * (E0 - W0))))
    free = PlaneWaveLabel(p_re=p0_re, E=E0)
    during = momentum_label(p_t, E_T)
    if mode != LITERAL:
        raise ValueError("temporal states define no boundary matching; use literal mode")
    return PiecewiseState(
        axis="t",
        regions=(
            Region(-math.inf, t_a, free),
            Region(t_a, t_b, during),
            Region(t_b, math.inf, free),
        ),
        mode=LITERAL,
        mass=m,
    )


def bh_escape_state(
    model: BlackHoleModel,
    r_a: float | None = None,
    p0_re: float = 1.0,
    m: float | None = None,
    units: Units | None = None,
) -> PiecewiseState:
    """Two radial regions: free interior below r_a, local-momentum exterior.

    The interior label carries the launch momentum p0_re; the exterior
    stores the r -> infinity asymptotic momentum in its label and samples
    the local momentum sqrt(2m(V(r_E) + E0 - V(r))) on demand.  r_a
    defaults to the horizon radius.
    """
    if units is None:
        units = Units()
    if m is None:
        m = model.m
    if r_a is None:
        r_a = model.r_E
    if r_a <= 0:
        raise ValueError(f"r_a must be positive, got {r_a}")
    E0 = p0_re**2 / (2.0 * m)
    inner = PlaneWaveLabel(p_re=p0_re, E=E0)
    asymptotic = complex(np.sqrt(complex(2.0 * m * (potential(model, model.r_E) + E0))))
    outer_label = momentum_label(asymptotic, E0)

    def local(r: float) -> complex:
        return escape_momentum(model, r, p0_re).value

    return PiecewiseState(
        axis="r_re",
        regions=(
            Region(0.0, r_a, inner),
            Region(r_a, math.inf, outer_label, local_momentum=local),
        ),
        mode=LITERAL,
        mass=m,
    )


def _infer_potential(state: PiecewiseState) -> PiecewisePotential:
    """Recover the interval potentials from the labels: V = E - p^2/2m."""
    m = state.mass
    values = []
    for region in state.regions:
        p = region.label.total_momentum
        v = region.label.E - (p * p) / (2.0 * m)
        values.append(float(v.real))
    return PiecewisePotential(state.boundaries, values)


def match_amplitudes(state: PiecewiseState, units: Units | None = None) -> PiecewiseState:
    """Fill amplitude pairs so value and slope are continuous everywhere.

    The potentials are recovered from the labels and the scattering problem
    is solved for a unit wave incident from the left; applying this twice
    gives the same amplitudes as applying it once.
    """
    if units is None:
        units = Units()
    if state.axis == "t":
        raise ValueError("temporal states define no boundary matching")
    if any(r.local_momentum is not None for r in state.regions):
        raise ValueError("cannot match amplitudes of local-momentum regions")
    if len(state.regions) == 1:
        return replace(state, mode=MATCHED)
    pot = _infer_potential(state)
    E0 = float(state.regions[0].label.E.real)
    scatter = transmission_reflection(pot, E0, state.mass, units)
    regions = tuple(
        replace(region, amp_fwd=a, amp_bwd=b)
        for region, (a, b) in zip(state.regions, scatter.amplitudes)
    )
    return replace(state, regions=regions, mode=MATCHED)


def schrodinger_residual(
    state: PiecewiseState,
    region_index: int,
    potential_value: float = 0.0,
    units: Units | None = None,
) -> float:
    """|E - (p_re^2 + p_im^2)/2m - V| for one region's label.

    Zero means the plane-wave label solves the stationary constraint on
    that interval.  Spatial barrier regions pass the barrier height (their
    labels keep the incident energy); temporal regions pass zero because
    the energy drain is bookkeeping, not a potential term -- their labels
    already carry the drained system energy.
    """
    if units is None:
        units = Units()
    region = state.regions[region_index]
    label = region.label
    kinetic = (label.p_re**2 + label.p_im**2) / (2.0 * state.mass)
    return abs(label.E - kinetic - potential_value)


class BoundaryMismatch(NamedTuple):
    boundary: float
    jump_value: float
    jump_slope: float
    rel_jump_value: float
    rel_jump_slope: float


def boundary_mismatch(
    state: PiecewiseState, units: Units | None = None
) -> list[BoundaryMismatch]:
    """Value/slope jumps at each interior boundary, from both sides.

    Only spatial-axis states are accepted: no matching doctrine exists for
    time-axis states.  Literal amplitudes generally produce nonzero jumps;
    matched amplitudes must be continuous to rounding.
    """
    if units is None:
        units = Units()
    if state.axis == "t":
        raise ValueError("boundary matching is undefined for time-axis states")
    hbar = units.hbar
    out = []
    for left, right in zip(state.regions, state.regions[1:]):
        q = left.hi
        v_l, s_l = _region_value_slope(left, q, hbar)
        v_r, s_r = _region_value_slope(right, q, hbar)
        jv = abs(v_l - v_r)
        js = abs(s_l - s_r)
        scale_v = max(abs(v_l), abs(v_r), 1e-300)
        scale_s = max(abs(s_l), abs(s_r), 1e-300)
        out.append(BoundaryMismatch(q, jv, js, jv / scale_v, js / scale_s))
    return out
