"""Finite-grid operator algebra for the complexified mechanics.

Builds matrix representations of the six fundamental operators -- real and
imaginary coordinate and momentum, time, and energy -- on one grid axis at a
time, and provides the verification tools (adjoint defects, commutator
probes, Rayleigh quotients) used throughout the test suite.

Conventions:

* The imaginary coordinate axis is stored as a real magnitude ``x`` with
  ``q_im = i * x``; all imaginarity lives in explicit algebra rules, which
  keeps every matrix well conditioned and the symmetry classes exact.
* Derivatives are discretized with the antisymmetric central difference and
  periodic wrap.  Antisymmetry of that matrix is what makes the momentum
  operators exactly self-adjoint / anti self-adjoint on the grid.
* Commutator identities such as [q, p] = i*hbar are continuum statements; on
  any finite matrix the trace of a commutator vanishes, so they cannot hold
  as matrix equalities.  All commutator checks here are therefore probe
  based, on states supported away from the grid boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .units import Units

AXES = ("q_re", "x_im", "t")

OPERATOR_KINDS = (
    "position_re",
    "momentum_re",
    "position_im",
    "momentum_im",
    "time",
    "energy",
)

_KIND_AXIS = {
    "position_re": "q_re",
    "momentum_re": "q_re",
    "position_im": "x_im",
    "momentum_im": "x_im",
    "time": "t",
    "energy": "t",
}

SELF_ADJOINT = "self_adjoint"
ANTI_SELF_ADJOINT = "anti_self_adjoint"
GENERAL = "general"

#: Relative weight of |state|^2 allowed in the outer 10% of the grid before
#: commutator_residual flags the probe as boundary-contaminated.
BOUNDARY_MASS_WARN = 1e-6


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on one axis; endpoints inclusive."""

    axis: str
    min: float
    max: float
    n: int

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"unknown axis {self.axis!r}; expected one of {AXES}")
        if not self.min < self.max:
            raise ValueError(f"grid needs min < max, got [{self.min}, {self.max}]")
        if self.n < 8:
            raise ValueError(f"grid needs n >= 8 points, got {self.n}")

    @property
    def spacing(self) -> float:
        return (self.max - self.min) / (self.n - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.n)


@dataclass(frozen=True)
class GridOperator:
    """Dense matrix representation of an operator on one grid axis."""

    matrix: np.ndarray
    symmetry: str
    axis: str
    grid: GridSpec
    kind: str = GENERAL

    def __matmul__(self, other: "GridOperator") -> "GridOperator":
        _require_same_grid(self, other)
        return GridOperator(self.matrix @ other.matrix, GENERAL, self.axis, self.grid)

    def apply(self, state: "StateVector | np.ndarray") -> np.ndarray:
        return self.matrix @ _values(state)


@dataclass(frozen=True)
class StateVector:
    """Sampled amplitudes aligned to a grid."""

    values: np.ndarray
    grid: GridSpec | None = None

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        object.__setattr__(self, "values", vals)
        if self.grid is not None and vals.shape != (self.grid.n,):
            raise ValueError(
                f"state has {vals.shape[0]} entries but grid has {self.grid.n} points"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("state amplitudes must be finite")


def _values(state: StateVector | np.ndarray) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.values
    return np.asarray(state, dtype=complex)


def _central_difference(grid: GridSpec) -> np.ndarray:
    """Antisymmetric central-difference matrix with periodic wrap."""
    n, dx = grid.n, grid.spacing
    d = np.zeros((n, n))
    idx = np.arange(n)
    d[idx, (idx + 1) % n] = 1.0 / (2.0 * dx)
    d[idx, (idx - 1) % n] = -1.0 / (2.0 * dx)
    return d


def build_operator(kind: str, grid: GridSpec, units: Units | None = None) -> GridOperator:
    """Construct one of the six fundamental operators on its grid axis.

    position_re -> diag(q) (self-adjoint); position_im -> i*diag(x)
    (anti self-adjoint); momentum_re -> -i*hbar*D (self-adjoint);
    momentum_im -> -hbar*D, i.e. -i*hbar d/dq_im with q_im = i*x
    (anti self-adjoint); time -> diag(t); energy -> +i*hbar*D on the
    time axis (both self-adjoint).  D is the periodic central difference.
    """
    if units is None:
        units = Units()
    if kind not in OPERATOR_KINDS:
        raise ValueError(f"unknown operator kind {kind!r}; expected one of {OPERATOR_KINDS}")
    expected_axis = _KIND_AXIS[kind]
    if grid.axis != expected_axis:
        raise ValueError(
            f"operator {kind!r} lives on axis {expected_axis!r}, got grid on {grid.axis!r}"
        )

    hbar = units.hbar
    if kind == "position_re":
        matrix = np.diag(grid.points).astype(complex)
        symmetry = SELF_ADJOINT
    elif kind == "position_im":
        matrix = 1j * np.diag(grid.points)
        symmetry = ANTI_SELF_ADJOINT
    elif kind == "momentum_re":
        matrix = -1j * hbar * _central_difference(grid)
        symmetry = SELF_ADJOINT
    elif kind == "momentum_im":
        # -i*hbar d/dq_im = -i*hbar * (1/i) d/dx = -hbar d/dx: real antisymmetric.
        matrix = (-hbar * _central_difference(grid)).astype(complex)
        symmetry = ANTI_SELF_ADJOINT
    elif kind == "time":
        matrix = np.diag(grid.points).astype(complex)
        symmetry = SELF_ADJOINT
    else:  # energy
        matrix = 1j * hbar * _central_difference(grid)
        symmetry = SELF_ADJOINT
    return GridOperator(matrix, symmetry, grid.axis, grid, kind)


def adjoint_defect(op: GridOperator) -> tuple[float, float]:
    """Return (max|M - M^H|, max|M + M^H|) entrywise.

    The first entry vanishes for self-adjoint matrices, the second for anti
    self-adjoint ones; the zero matrix reports (0, 0).
    """
    mh = op.matrix.conj().T
    sa = float(np.max(np.abs(op.matrix - mh)))
    asa = float(np.max(np.abs(op.matrix + mh)))
    return sa, asa


def _require_same_grid(a: GridOperator, b: GridOperator) -> None:
    if a.grid != b.grid:
        raise ValueError(f"operators live on different grids: {a.grid} vs {b.grid}")


def commutator(a: GridOperator, b: GridOperator) -> GridOperator:
    """AB - BA on a shared grid; the result carries no symmetry tag."""
    _require_same_grid(a, b)
    return GridOperator(
        a.matrix @ b.matrix - b.matrix @ a.matrix, GENERAL, a.axis, a.grid
    )


class CommutatorResidual(NamedTuple):
    residual: float
    boundary_warning: bool

    def __float__(self) -> float:
        return self.residual


def boundary_mass_fraction(state: StateVector | np.ndarray, margin: float = 0.1) -> float:
    """Fraction of |state|^2 living within ``margin`` of either grid edge."""
    vals = _values(state)
    n = vals.shape[0]
    edge = max(1, int(np.ceil(margin * n)))
    weight = np.abs(vals) ** 2
    total = float(np.sum(weight))
    if total == 0.0:
        return 0.0
    return float(np.sum(weight[:edge]) + np.sum(weight[n - edge:])) / total


def commutator_residual(
    a: GridOperator,
    b: GridOperator,
    expected: complex,
    probe: StateVector | np.ndarray,
) -> CommutatorResidual:
    """Relative norm of ((AB - BA) - expected*I) applied to a probe state.

    Probes should be supported away from the grid boundary (>= 10% margin);
    otherwise the periodic wrap contaminates the result and the boundary
    warning flag is set.
    """
    _require_same_grid(a, b)
    psi = _values(probe)
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise ValueError("probe state has zero norm")
    comm = a.matrix @ (b.matrix @ psi) - b.matrix @ (a.matrix @ psi)
    residual = float(np.linalg.norm(comm - expected * psi)) / norm
    warn = boundary_mass_fraction(psi) > BOUNDARY_MASS_WARN
    return CommutatorResidual(residual, warn)


def rayleigh_eigenvalue(
    op: GridOperator,
    state: StateVector | np.ndarray,
    boundary_margin: int = 0,
) -> complex:
    """Rayleigh quotient <psi|M|psi> / <psi|psi>.

    ``boundary_margin`` restricts both inner products to grid rows at least
    that many points away from the edges, which removes the periodic-wrap
    rows; needed when probing non-periodic profiles such as real
    exponentials.
    """
    psi = _values(state)
    mpsi = op.matrix @ psi
    if boundary_margin:
        sl = slice(boundary_margin, psi.shape[0] - boundary_margin)
        psi, mpsi = psi[sl], mpsi[sl]
    denom = np.vdot(psi, psi)
    if denom == 0.0:
        raise ValueError("state has zero norm")
    return complex(np.vdot(psi, mpsi) / denom)


def classify_value(value: complex, rel_tol: float = 1e-9) -> str:
    """Classify a complex number as 'Real', 'Imaginary', or 'Mixed'.

    The minor part must be below ``rel_tol`` times the magnitude; zero
    counts as real.
    """
    mag = abs(value)
    if abs(value.imag) <= rel_tol * mag:
        return "Real"
    if abs(value.real) <= rel_tol * mag:
        return "Imaginary"
    return "Mixed"


def gaussian_state(
    grid: GridSpec, center: float | None = None, width: float | None = None
) -> StateVector:
    """Gaussian probe on a grid.

    Default width is span/10, comfortably inside the 10% boundary margin
    required by commutator probes while staying several grid spacings wide.
    """
    if center is None:
        center = 0.5 * (grid.min + grid.max)
    if width is None:
        width = (grid.max - grid.min) / 10.0
    if width < 4.0 * grid.spacing:
        raise ValueError(
            f"probe width {width} below 4 grid spacings ({4 * grid.spacing:.3g})"
        )
    x = grid.points
    return StateVector(np.exp(-((x - center) ** 2) / (2.0 * width**2)), grid)
