"""Classical dynamics under a time-dependent energy drain, plus the quantum contrast.

The drain W(t) removes mechanical energy from the system so that system
energy plus W stays constant.  No spatial force is involved: the dynamics
is energy bookkeeping.  A classical system whose energy the drain fully
consumes hits zero kinetic energy; in the nonrelativistic model the run
terminates there (the system is destroyed), in the relativistic model the
mass sign flips and the trajectory continues, annotated as propagating
toward the past, with the deficit carried as imaginary-world momentum.

A quantum system in a sharp-energy state rides through the same drain: its
interval labels drop to the drained energy while it is on, and return to
the original label afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .states import PiecewiseState, temporal_tunnel_state
from .units import Units

SQUARE = "square"
SMOOTH_BUMP = "smooth_bump"

NONREL = "nonrel"
REL = "rel"

#: Maximum allowed |W(t+dt) - W(t)| per accepted step, as a fraction of W0.
MAX_STEP_DRAIN_FRACTION = 0.01


def _smoothstep(u: float) -> float:
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return 1.0
    return u * u * (3.0 - 2.0 * u)


@dataclass(frozen=True)
class TemporalProfile:
    """Energy drain profile: square pulse or C1 smooth bump.

    The square profile is W0 on [t_a, t_b] and zero outside.  The smooth
    bump rises with a cubic smoothstep on [t1, t_a], holds the plateau W0 on
    [t_a, t_b], and falls back to zero on [t_b, t2]; its derivative vanishes
    at all four knots.
    """

    kind: str
    t_a: float
    t_b: float
    W0: float
    t1: float | None = None
    t2: float | None = None

    def __post_init__(self):
        if self.kind not in (SQUARE, SMOOTH_BUMP):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if not self.t_a < self.t_b:
            raise ValueError(f"profile needs t_a < t_b, got [{self.t_a}, {self.t_b}]")
        if self.W0 < 0:
            raise ValueError(f"drain height must be nonnegative, got {self.W0}")
        if self.kind == SMOOTH_BUMP:
            if self.t1 is None or self.t2 is None:
                raise ValueError("smooth bump needs t1 and t2")
            if not (self.t1 < self.t_a and self.t_b < self.t2):
                raise ValueError("smooth bump needs t1 < t_a < t_b < t2")

    @property
    def support(self) -> tuple[float, float]:
        if self.kind == SQUARE:
            return self.t_a, self.t_b
        return self.t1, self.t2

    @property
    def discontinuities(self) -> tuple[float, ...]:
        return (self.t_a, self.t_b) if self.kind == SQUARE else ()


def square_profile(t_a: float, t_b: float, W0: float) -> TemporalProfile:
    return TemporalProfile(SQUARE, t_a, t_b, W0)


def smooth_bump_profile(
    t1: float, t_a: float, t_b: float, t2: float, W0: float
) -> TemporalProfile:
    return TemporalProfile(SMOOTH_BUMP, t_a, t_b, W0, t1=t1, t2=t2)


def profile_value(profile: TemporalProfile, t: float) -> float:
    """Drain energy W(t)."""
    if profile.kind == SQUARE:
        return profile.W0 if profile.t_a <= t <= profile.t_b else 0.0
    if t <= profile.t1 or t >= profile.t2:
        return 0.0
    if t < profile.t_a:
        return profile.W0 * _smoothstep((t - profile.t1) / (profile.t_a - profile.t1))
    if t <= profile.t_b:
        return profile.W0
    return profile.W0 * _smoothstep((profile.t2 - t) / (profile.t2 - profile.t_b))


@dataclass(frozen=True)
class ClassicalState:
    """Phase-space point of the complexified classical system.

    The imaginary coordinate and momentum are stored as real magnitudes
    (q_im = i*x_im, p_im = i*pi_im); mass_sign tracks the relativistic
    branch after an energy-zero event.
    """

    t: float
    q_re: float = 0.0
    p_re: float = 0.0
    x_im: float = 0.0
    pi_im: float = 0.0
    m: float = 1.0
    mass_sign: int = 1

    def __post_init__(self):
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.mass_sign not in (1, -1):
            raise ValueError("mass_sign must be +1 or -1")
        for name in ("t", "q_re", "p_re", "x_im", "pi_im"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class TrajectoryEvent:
    kind: str  # "BarrierEntered" | "EnergyZero" | "Destroyed" | "BarrierExited"
    t: float
    state: ClassicalState


@dataclass(frozen=True)
class Trajectory:
    samples: tuple[ClassicalState, ...]
    events: tuple[TrajectoryEvent, ...]
    model: str
    destroyed: bool
    #: +1 while mass_sign is positive; -1 marks the stretch annotated as
    #: propagating toward the past (metadata only, never reverse stepping).
    direction_flags: tuple[int, ...]

    def event(self, kind: str) -> TrajectoryEvent | None:
        for ev in self.events:
            if ev.kind == kind:
                return ev
        return None


def total_energy(
    state: ClassicalState,
    profile: TemporalProfile | None,
    model: str = NONREL,
    units: Units | None = None,
) -> float:
    """System energy plus drain energy at the state's time.

    Nonrelativistic: p_re^2/2m - pi_im^2/2m + W(t); the imaginary-motion
    term is negative because (i*pi)^2 = -pi^2.  Relativistic: the sum of
    both worlds' rest-frame terms; the imaginary-world term evaluates to
    -mc^2/sqrt(1 - v_x^2/c^2) because c_im^2 = -c^2 while v_im^2/c_im^2
    is real, so a particle at rest in both worlds has total energy zero
    for any mass.  mass_sign multiplies the relativistic terms.
    """
    if units is None:
        units = Units()
    w = profile_value(profile, state.t) if profile is not None else 0.0
    m = state.m
    if model == NONREL:
        return state.p_re**2 / (2.0 * m) - state.pi_im**2 / (2.0 * m) + w
    if model != REL:
        raise ValueError(f"unknown model {model!r}")
    c = units.c_re
    # momentum -> velocity in each world: v = p / sqrt(m^2 + (p/c)^2)
    gamma_re = math.sqrt(1.0 + (state.p_re / (m * c)) ** 2)
    v_x = state.pi_im / (m * math.sqrt(1.0 + (state.pi_im / (m * c)) ** 2))
    if abs(v_x) >= c:
        raise ValueError("imaginary-world speed magnitude must stay below c")
    gamma_im = 1.0 / math.sqrt(1.0 - (v_x / c) ** 2)
    term_re = m * c**2 * gamma_re
    term_im = -m * c**2 * gamma_im
    return state.mass_sign * (term_re + term_im) + w


def _locate_crossing(profile: TemporalProfile, target: float, lo: float, hi: float) -> float:
    """Bisect for the first time in [lo, hi] with W(t) >= target."""
    f_lo = profile_value(profile, lo) - target
    if f_lo >= 0.0:
        return lo
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if profile_value(profile, mid) - target >= 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-15 * max(1.0, abs(hi)):
            break
    return hi


def _step_times(profile: TemporalProfile, t0: float, t_end: float, dt: float) -> list[float]:
    """Uniform steps split exactly at square-profile discontinuities."""
    times = [t0]
    t = t0
    while t < t_end - 1e-15 * max(1.0, abs(t_end)):
        t_next = min(t + dt, t_end)
        for disc in profile.discontinuities:
            if t < disc < t_next:
                t_next = disc
                break
        times.append(t_next)
        t = t_next
    return times


def integrate_classical(
    state0: ClassicalState,
    profile: TemporalProfile,
    model: str = NONREL,
    dt: float = 1e-3,
    t_end: float | None = None,
    units: Units | None = None,
) -> Trajectory:
    """Evolve the energy-bookkeeping dynamics from state0 to t_end.

    The system's mechanical energy is E0 - W(t): the real momentum follows
    sqrt(2m(E0 - W)) while that is nonnegative, and the deficit beyond the
    energy-zero point is carried as imaginary-momentum magnitude
    sqrt(2m(W - E0)), keeping the total exactly constant.  At the first
    energy zero the nonrelativistic run emits Destroyed and stops; the
    relativistic run flips mass_sign and keeps going (annotated as
    propagating toward the past).  Smooth profiles enforce the per-step
    drain bound by subdividing steps; square-profile jumps are stepped
    exactly at their discontinuities.
    """
    if units is None:
        units = Units()
    if model not in (NONREL, REL):
        raise ValueError(f"unknown model {model!r}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end is None or t_end <= state0.t:
        raise ValueError("t_end must exceed the initial time")

    m = state0.m
    sign0 = 1.0 if state0.p_re >= 0 else -1.0
    e_sys0 = state0.p_re**2 / (2.0 * m) - state0.pi_im**2 / (2.0 * m)

    def momenta(t: float) -> tuple[float, float]:
        e_sys = e_sys0 - profile_value(profile, t)
        if e_sys >= 0.0:
            return sign0 * math.sqrt(2.0 * m * e_sys), 0.0
        return 0.0, math.sqrt(-2.0 * m * e_sys)

    drain_bound = MAX_STEP_DRAIN_FRACTION * profile.W0 if profile.W0 > 0 else math.inf

    def refine(lo: float, hi: float, depth: int = 0) -> list[float]:
        # A square jump can never satisfy the bound; it is stepped exactly
        # at its discontinuity instead (see _step_times).
        if profile.kind == SQUARE:
            return [hi]
        if abs(profile_value(profile, hi) - profile_value(profile, lo)) <= drain_bound:
            return [hi]
        if depth >= 16:
            raise ValueError(
                f"cannot satisfy the per-step drain bound on [{lo}, {hi}]; refine dt"
            )
        mid = 0.5 * (lo + hi)
        return refine(lo, mid, depth + 1) + refine(mid, hi, depth + 1)

    samples = [state0]
    events: list[TrajectoryEvent] = []
    flags = [state0.mass_sign]
    q, x = state0.q_re, state0.x_im
    mass_sign = state0.mass_sign
    entered = exited = False
    crossed_zero = False
    destroyed = False

    base_times = _step_times(profile, state0.t, t_end, dt)
    times: list[float] = [base_times[0]]
    for lo, hi in zip(base_times, base_times[1:]):
        times.extend(refine(lo, hi))

    for t_prev, t in zip(times, times[1:]):
        p_prev, pi_prev = momenta(t_prev)
        p_now, pi_now = momenta(t)
        w_now = profile_value(profile, t)

        if not entered and w_now > 0.0:
            # W(t) > 0 exactly on the open support interior, so the entry
            # time is the support start itself.
            t_in = max(profile.support[0], t_prev)
            p_in, pi_in = momenta(t_in)
            events.append(TrajectoryEvent(
                "BarrierEntered", t_in,
                ClassicalState(t_in, q, p_in, x, pi_in, m, mass_sign)))
            entered = True

        if not crossed_zero and e_sys0 - w_now <= 0.0 and e_sys0 > 0.0:
            t_zero = _locate_crossing(profile, e_sys0, t_prev, t)
            st_zero = ClassicalState(t_zero, q, 0.0, x, 0.0, m, mass_sign)
            events.append(TrajectoryEvent("EnergyZero", t_zero, st_zero))
            crossed_zero = True
            if model == NONREL:
                events.append(TrajectoryEvent("Destroyed", t_zero, st_zero))
                samples.append(st_zero)
                flags.append(mass_sign)
                destroyed = True
                break
            mass_sign = -1

        if crossed_zero and mass_sign < 0 and e_sys0 - w_now > 0.0:
            # Drain released what it took: back to real-world propagation.
            mass_sign = 1
            crossed_zero = False

        # Trapezoid advance of the coordinates from the closed-form momenta.
        h = t - t_prev
        q += 0.5 * (p_prev + p_now) / m * h
        x += 0.5 * (pi_prev + pi_now) / m * h

        if entered and not exited and w_now == 0.0 and t > profile.support[0]:
            t_out = profile.support[1]
            events.append(TrajectoryEvent(
                "BarrierExited", t_out,
                ClassicalState(t_out, q, p_now, x, pi_now, m, mass_sign)))
            exited = True

        samples.append(ClassicalState(t, q, p_now, x, pi_now, m, mass_sign))
        flags.append(mass_sign)

    return Trajectory(tuple(samples), tuple(events), model, destroyed, tuple(flags))


@dataclass(frozen=True)
class ContrastReport:
    """Classical verdict and quantum labels for the same square drain."""

    E0: float
    E_T: float
    conservation_exact: bool
    quantum_survives: bool
    classical_destroyed: bool
    destroyed_time: float | None
    state: PiecewiseState


def quantum_contrast(
    profile: TemporalProfile,
    p0_re: float,
    m: float,
    units: Units | None = None,
    dt: float = 1e-3,
) -> ContrastReport:
    """Pair the sharp-energy quantum labels with the classical outcome.

    Requires a square profile.  The quantum side survives whenever the
    after-interval label equals the before-interval label; the classical
    side is destroyed whenever the drain height exceeds its energy.
    """
    if units is None:
        units = Units()
    if profile.kind != SQUARE:
        raise ValueError("quantum contrast is defined for square profiles")
    state = temporal_tunnel_state(profile.t_a, profile.t_b, profile.W0, p0_re, m, units)
    before, during, after = state.regions
    E0 = float(before.label.E.real)
    E_T = float(during.label.E.real)
    conservation = (during.label.E + profile.W0) == before.label.E
    survives = after.label == before.label

    span = profile.t_b - profile.t_a
    start = ClassicalState(t=profile.t_a - span, p_re=p0_re, m=m)
    traj = integrate_classical(start, profile, NONREL, dt, profile.t_b + span, units)
    destroyed_ev = traj.event("Destroyed")
    return ContrastReport(
        E0=E0,
        E_T=E_T,
        conservation_exact=bool(conservation),
        quantum_survives=bool(survives),
        classical_destroyed=destroyed_ev is not None,
        destroyed_time=destroyed_ev.t if destroyed_ev else None,
        state=state,
    )


def trajectory_rows(traj: Trajectory, profile: TemporalProfile) -> list[tuple]:
    """CSV rows: t, q_re, p_re, x_im, pi_im, W, E_system, mass_sign, event."""
    by_time: dict[float, str] = {}
    for ev in traj.events:
        by_time[ev.t] = (by_time[ev.t] + "+" + ev.kind) if ev.t in by_time else ev.kind
    rows = []
    for s in traj.samples:
        w = profile_value(profile, s.t)
        e_sys = s.p_re**2 / (2 * s.m) - s.pi_im**2 / (2 * s.m)
        rows.append((s.t, s.q_re, s.p_re, s.x_im, s.pi_im, w, e_sys, s.mass_sign,
                     by_time.get(s.t, "")))
    return rows
