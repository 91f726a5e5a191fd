"""Toy expanding-universe Hamiltonian with an imaginary radial sector.

One real tangential pair (qT, pT) and one imaginary radial pair stored as
real magnitudes (xR, pR) with q_im = i*xR, p_im = i*pR.  The Hamiltonian

    H = pT^2/2m - pR^2/2m + k*xR^2/qT

is real after the i-algebra: the imaginary kinetic term is negative and the
coupling term flips sign because q_im^2 = -xR^2.  Both accelerations are
positive whenever xR and qT are, which is the accelerated-expansion claim
of the model at the level where it is literally true.

In the complex variables the law a = -(1/m) dH/dq holds componentwise; in
the stored magnitudes the imaginary sector picks up a sign from the chain
rule through q_im = i*xR, so the xR acceleration is +(1/m) dH/dxR.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class CosmoState:
    """Phase-space point; xR/pR are the imaginary-sector magnitudes."""

    t: float
    qT: float
    pT: float = 0.0
    xR: float = 0.0
    pR: float = 0.0
    k: float = 1.0
    m: float = 1.0

    def __post_init__(self):
        if self.qT <= 0:
            raise ValueError(f"qT must stay positive, got {self.qT}")
        if self.k <= 0:
            raise ValueError(f"coupling k must be positive, got {self.k}")
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")


def hamiltonian(state: CosmoState) -> float:
    """pT^2/2m - pR^2/2m + k*xR^2/qT (real-valued after the i-algebra)."""
    return (
        state.pT**2 / (2.0 * state.m)
        - state.pR**2 / (2.0 * state.m)
        + state.k * state.xR**2 / state.qT
    )


def accelerations(state: CosmoState) -> tuple[float, float]:
    """(tangential acceleration, imaginary-radial acceleration magnitude).

    From Hamilton's equations: qT'' = (k/m) xR^2/qT^2 and the magnitude of
    the imaginary radial acceleration is 2(k/m) xR/qT; both positive for
    positive xR and qT.
    """
    if state.qT <= 0:
        raise ValueError(f"qT must stay positive, got {state.qT}")
    aT = (state.k / state.m) * state.xR**2 / state.qT**2
    aR = 2.0 * (state.k / state.m) * state.xR / state.qT
    return aT, aR


def hamilton_consistency_defect(state: CosmoState, h_rel: float = 1e-6) -> float:
    """Max relative gap between accelerations() and differentiating H.

    Central differences of the Hamiltonian give dH/dqT and dH/dxR; the
    tangential acceleration must equal -(1/m) dH/dqT and the imaginary
    magnitude +(1/m) dH/dxR (the sign flip comes from the chain rule
    through q_im = i*xR).
    """
    aT, aR = accelerations(state)
    m = state.m
    h_q = h_rel * max(1.0, abs(state.qT))
    h_x = h_rel * max(1.0, abs(state.xR))
    dH_dqT = (
        hamiltonian(replace(state, qT=state.qT + h_q))
        - hamiltonian(replace(state, qT=state.qT - h_q))
    ) / (2.0 * h_q)
    dH_dxR = (
        hamiltonian(replace(state, xR=state.xR + h_x))
        - hamiltonian(replace(state, xR=state.xR - h_x))
    ) / (2.0 * h_x)
    aT_fd = -dH_dqT / m
    aR_fd = +dH_dxR / m
    scale_T = max(abs(aT), abs(aT_fd), 1e-12)
    scale_R = max(abs(aR), abs(aR_fd), 1e-12)
    return max(abs(aT - aT_fd) / scale_T, abs(aR - aR_fd) / scale_R)


class HaltedNearSingularity(RuntimeError):
    """qT collapsed toward the coupling singularity at qT = 0."""

    def __init__(self, message: str, last_state: CosmoState, trajectory: "CosmoTrajectory"):
        super().__init__(message)
        self.last_state = last_state
        self.trajectory = trajectory


@dataclass(frozen=True)
class CosmoTrajectory:
    samples: tuple[CosmoState, ...]

    def __post_init__(self):
        ts = [s.t for s in self.samples]
        if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
            raise ValueError("trajectory times must be strictly increasing")

    @property
    def times(self) -> list[float]:
        return [s.t for s in self.samples]

    def energies(self) -> list[float]:
        return [hamiltonian(s) for s in self.samples]


def _forces(qT: float, xR: float, k: float) -> tuple[float, float]:
    """Canonical momentum derivatives: (dpT/dt, dpR/dt)."""
    return k * xR**2 / qT**2, -2.0 * k * xR / qT


def integrate(state0: CosmoState, dt: float, t_end: float) -> CosmoTrajectory:
    """Leapfrog (kick-drift-kick) integration of the toy Hamiltonian.

    The kinetic part is separable with drift velocities (pT/m, -pR/m); the
    scheme is symplectic and time reversible, so the energy error stays
    bounded instead of drifting.  Approaching qT = 0 raises
    HaltedNearSingularity carrying the trajectory up to the last good step.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end <= state0.t:
        raise ValueError("t_end must exceed the initial time")
    m, k = state0.m, state0.k
    floor = 1e-12 * state0.qT

    t, qT, pT, xR, pR = state0.t, state0.qT, state0.pT, state0.xR, state0.pR
    samples = [state0]
    n_steps = max(1, int(round((t_end - state0.t) / dt)))
    for i in range(n_steps):
        fT, fR = _forces(qT, xR, k)
        pT_h = pT + 0.5 * dt * fT
        pR_h = pR + 0.5 * dt * fR
        qT_new = qT + dt * pT_h / m
        xR_new = xR - dt * pR_h / m
        if qT_new <= floor:
            traj = CosmoTrajectory(tuple(samples))
            raise HaltedNearSingularity(
                f"qT reached {qT_new:.3e} at t = {t + dt:.6g}; "
                f"the coupling term is singular at qT = 0",
                samples[-1],
                traj,
            )
        fT, fR = _forces(qT_new, xR_new, k)
        pT = pT_h + 0.5 * dt * fT
        pR = pR_h + 0.5 * dt * fR
        qT, xR = qT_new, xR_new
        t = state0.t + (i + 1) * dt
        samples.append(replace(state0, t=t, qT=qT, pT=pT, xR=xR, pR=pR))
    return CosmoTrajectory(tuple(samples))


@dataclass(frozen=True)
class ExpansionReport:
    """Finite-difference kinematics of a trajectory.

    Velocities and accelerations are central differences at the interior
    samples; the positivity flags restate the model's expansion claim on
    the actual run.  Monotone spans are (t_start, t_end) intervals on which
    the respective finite-difference speed is nondecreasing.
    """

    times: tuple[float, ...]
    vT: tuple[float, ...]
    vR: tuple[float, ...]
    aT_fd: tuple[float, ...]
    aR_fd: tuple[float, ...]
    aT_model: tuple[float, ...]
    aR_model: tuple[float, ...]
    all_aT_positive: bool
    all_aR_positive: bool
    vT_monotone_spans: tuple[tuple[float, float], ...]
    vR_monotone_spans: tuple[tuple[float, float], ...]
    degenerate: bool

    @property
    def note(self) -> str:
        if self.degenerate:
            return "degenerate run: xR stayed zero, all accelerations vanish"
        return ""


def _monotone_spans(times, values) -> tuple[tuple[float, float], ...]:
    if len(values) < 2:
        return ()
    spans = []
    start = 0
    for i in range(1, len(values)):
        if values[i] < values[i - 1] - 1e-15 * max(1.0, abs(values[i - 1])):
            if i - 1 > start:
                spans.append((times[start], times[i - 1]))
            start = i
    if len(values) - 1 > start:
        spans.append((times[start], times[-1]))
    return tuple(spans)


def expansion_report(traj: CosmoTrajectory) -> ExpansionReport:
    """Differentiate the samples and check the positivity claims."""
    if len(traj.samples) < 3:
        raise ValueError("expansion report needs at least 3 samples")
    s = traj.samples
    times, vT, vR, aT_fd, aR_fd, aT_model, aR_model = [], [], [], [], [], [], []
    for i in range(1, len(s) - 1):
        h_prev = s[i].t - s[i - 1].t
        h_next = s[i + 1].t - s[i].t
        h = 0.5 * (h_prev + h_next)
        times.append(s[i].t)
        vT.append((s[i + 1].qT - s[i - 1].qT) / (h_prev + h_next))
        vR.append((s[i + 1].xR - s[i - 1].xR) / (h_prev + h_next))
        aT_fd.append((s[i + 1].qT - 2 * s[i].qT + s[i - 1].qT) / h**2)
        aR_fd.append((s[i + 1].xR - 2 * s[i].xR + s[i - 1].xR) / h**2)
        aT, aR = accelerations(s[i])
        aT_model.append(aT)
        aR_model.append(aR)

    active = [i for i, t in enumerate(times) if s[i + 1].xR > 0 and s[i + 1].qT > 0]
    all_aT = all(aT_model[i] > 0 for i in active) if active else True
    all_aR = all(aR_model[i] > 0 for i in active) if active else True
    degenerate = all(st.xR == 0 for st in s)
    return ExpansionReport(
        times=tuple(times),
        vT=tuple(vT),
        vR=tuple(vR),
        aT_fd=tuple(aT_fd),
        aR_fd=tuple(aR_fd),
        aT_model=tuple(aT_model),
        aR_model=tuple(aR_model),
        all_aT_positive=all_aT,
        all_aR_positive=all_aR,
        vT_monotone_spans=_monotone_spans(times, [abs(v) for v in vT]),
        vR_monotone_spans=_monotone_spans(times, [abs(v) for v in vR]),
        degenerate=degenerate,
    )


def trajectory_rows(traj: CosmoTrajectory) -> list[tuple]:
    """CSV rows: t, qT_re, pT_re, xR_im, pR_im_mag, H, aT_re, aR_im_mag."""
    rows = []
    for s in traj.samples:
        aT, aR = accelerations(s)
        rows.append((s.t, s.qT, s.pT, s.xR, s.pR, hamiltonian(s), aT, aR))
    return rows
