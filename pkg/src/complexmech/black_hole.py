"""Finite-well black-hole model: flat interior, truncated 1/r exterior.

The horizon radius is where a particle falling from rest at infinity reaches
light speed, i.e. the solution of (1/2)c^2 = grav*M/r.  Inside that radius
the potential is held constant (zero force), so the well depth is finite and
nothing in the model is singular at the center.  Escape is classical only
above the well depth; below it the outward particle turns around, while a
wave can still leak outward with imaginary local momentum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .units import Units


def horizon_radius(M: float, grav: float, c: float) -> float:
    """Radius where an infalling particle from rest at infinity reaches c."""
    if M <= 0 or grav <= 0 or c <= 0:
        raise ValueError("M, grav and c must all be positive")
    return 2.0 * grav * M / c**2


@dataclass(frozen=True)
class BlackHoleModel:
    """Hole mass M, test-particle mass m, and the derived horizon radius."""

    M: float
    m: float
    grav: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        for name in ("M", "m", "grav", "c"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def r_E(self) -> float:
        return horizon_radius(self.M, self.grav, self.c)

    @property
    def well_depth(self) -> float:
        """|V| at the horizon: the finite depth of the interior plateau."""
        return self.grav * self.m * self.M / self.r_E


def potential(model: BlackHoleModel, r: float) -> float:
    """-grav*m*M/r outside the horizon, constant at the horizon value inside."""
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    return -model.grav * model.m * model.M / max(r, model.r_E)


class EscapeMomentum(NamedTuple):
    value: complex
    kind: str  # "Real" | "Imaginary"


def escape_momentum(model: BlackHoleModel, r: float, p0_re: float) -> EscapeMomentum:
    """Local momentum of an escaping particle launched with p0_re inside.

    Principal complex root of 2m(V(r_E) + p0^2/2m - V(r)); real where the
    total energy clears the local potential, purely imaginary beyond the
    classical turning radius.
    """
    if r <= 0:
        raise ValueError(f"radius must be positive, got {r}")
    E0 = p0_re**2 / (2.0 * model.m)
    arg = 2.0 * model.m * (potential(model, model.r_E) + E0 - potential(model, r))
    value = complex(np.sqrt(complex(arg)))
    kind = "Real" if arg >= 0 else "Imaginary"
    return EscapeMomentum(value, kind)


class EscapeVerdict(NamedTuple):
    escapes: bool
    turning_radius: float  # inf when the particle escapes


def classical_escape(model: BlackHoleModel, p0_re: float) -> EscapeVerdict:
    """Energy bookkeeping for an outward classical particle from the interior.

    Escapes iff E0 + V(r_E) >= 0; otherwise it turns around where the
    potential eats all of its kinetic energy.
    """
    E0 = p0_re**2 / (2.0 * model.m)
    e_total = E0 + potential(model, model.r_E)
    if e_total >= 0:
        return EscapeVerdict(True, math.inf)
    r_t = model.grav * model.m * model.M / (-e_total)
    return EscapeVerdict(False, r_t)


class NonIntegrableBarrier(ValueError):
    """The forbidden shell extends to infinity with nonvanishing |Im p|.

    In this model a sub-threshold particle (E0 below the well depth) faces a
    barrier of infinite radial extent: the decay-rate integral diverges and
    the escape probability has no finite-action value.  Rather than silently
    truncating the integral, this error is raised; pass an explicit r_max to
    study the finite shell [turning radius, r_max].
    """


def turning_radius(model: BlackHoleModel, E0: float) -> float:
    """Radius where the escape momentum crosses from real to imaginary."""
    e_total = E0 + potential(model, model.r_E)
    if e_total >= 0:
        return math.inf
    return model.grav * model.m * model.M / (-e_total)


def wkb_escape_probability(
    model: BlackHoleModel,
    E0: float,
    m: float | None = None,
    units: Units | None = None,
    r_max: float | None = None,
) -> float:
    """exp(-(2/hbar) * integral of |Im p(r)|) over the forbidden shell.

    Returns exactly 1.0 when the shell is empty (classical escape).  When
    the shell is nonempty it is unbounded here -- the exterior potential
    approaches zero from below, so |Im p| tends to a positive constant and
    the integral diverges: NonIntegrableBarrier is raised unless the caller
    explicitly bounds the shell with ``r_max``.  With a finite ``r_max`` the
    quadrature runs at relative tolerance 1e-6.
    """
    if units is None:
        units = Units()
    if m is None:
        m = model.m
    if E0 <= 0:
        raise ValueError(f"escape analysis needs E0 > 0, got {E0}")
    r_turn = turning_radius(model, E0)
    if math.isinf(r_turn):
        return 1.0
    if r_max is None:
        raise NonIntegrableBarrier(
            f"forbidden shell (r > {r_turn:.6g}) is unbounded and |Im p| "
            f"approaches a positive constant; the decay integral diverges. "
            f"Pass r_max to study a finite shell explicitly."
        )
    if r_max <= r_turn:
        raise ValueError(
            f"r_max = {r_max:.6g} does not reach the forbidden shell "
            f"starting at {r_turn:.6g}"
        )
    e_total = E0 + potential(model, model.r_E)

    def decay_rate(r: float) -> float:
        arg = 2.0 * m * (e_total - potential(model, r))
        return math.sqrt(-arg) if arg < 0 else 0.0

    action, err = quad(decay_rate, r_turn, r_max, epsrel=1e-6, limit=200)
    if not math.isfinite(action):
        raise NonIntegrableBarrier("quadrature of the decay rate diverged")
    return math.exp(-2.0 * action / units.hbar)


def radial_profile(
    model: BlackHoleModel, p0_re: float, radii
) -> list[tuple[float, float, float, float, bool]]:
    """Rows (r, V, Re p, Im p, classically_allowed) for CSV export."""
    rows = []
    for r in radii:
        pm = escape_momentum(model, r, p0_re)
        rows.append(
            (float(r), potential(model, r), pm.value.real, pm.value.imag,
             pm.kind == "Real")
        )
    return rows
