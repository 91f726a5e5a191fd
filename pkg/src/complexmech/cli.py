"""Declarative scenario runner: TOML configs in, CSV/JSON artifacts out.

Every scenario validates its parameters against the owning module's
preconditions before running, emits plot-ready CSV series plus a JSON
summary with one pass/fail verdict per applicable invariant, and is fully
deterministic: the same config produces byte-identical outputs.

Exit codes: 0 success with all checks passing, 1 validation error,
2 runtime error, 3 success but at least one invariant check failed.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from . import __version__
from . import black_hole as bh
from . import cosmology as cosmo
from . import spatial_tunneling as spt
from . import states as st
from . import temporal_barrier as tb
from .algebra import (
    GridSpec,
    StateVector,
    adjoint_defect,
    build_operator,
    classify_value,
    commutator_residual,
    gaussian_state,
    rayleigh_eigenvalue,
)
from .ioutil import sha256_file, sha256_text, write_csv, write_json
from .units import Units

ENV_OUT = "COMPLEXMECH_OUT"

#: Frozen regression constant for the commutator probes: residual/dx^2
#: measured at 0.109 for n in 64..256 on [-span, span] with the default
#: span/10 Gaussian probe; 0.16 leaves a safety margin.
COMM_RESIDUAL_C = 0.16


class ConfigError(ValueError):
    """Carries every validation problem found, not just the first."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = list(errors)


@dataclass(frozen=True)
class ParamSpec:
    type: type
    default: object
    choices: tuple | None = None
    minimum: float | None = None
    exclusive_min: float | None = None


SCENARIO_PARAMS: dict[str, dict[str, ParamSpec]] = {
    "operator_algebra": {
        "n": ParamSpec(int, 256, minimum=8),
        "span": ParamSpec(float, 10.0, exclusive_min=0.0),
    },
    "spatial_barrier": {
        "E0": ParamSpec(float, 1.0, exclusive_min=0.0),
        "V0": ParamSpec(float, 2.0),
        "q_a": ParamSpec(float, 0.0),
        "q_b": ParamSpec(float, 1.0),
        "m": ParamSpec(float, 1.0, exclusive_min=0.0),
        "mode": ParamSpec(str, "matched", choices=("literal", "matched")),
        "sweep_points": ParamSpec(int, 100, minimum=2),
        "grid_n": ParamSpec(int, 256, minimum=8),
    },
    "temporal_barrier": {
        "p0_re": ParamSpec(float, 1.0),
        "W0": ParamSpec(float, 1.0, minimum=0.0),
        "t_a": ParamSpec(float, 0.0),
        "t_b": ParamSpec(float, 1.0),
        "t1": ParamSpec(float, math.nan),
        "t2": ParamSpec(float, math.nan),
        "m": ParamSpec(float, 1.0, exclusive_min=0.0),
        "profile": ParamSpec(str, "square", choices=("square", "smooth_bump")),
        "model": ParamSpec(str, "nonrel", choices=("nonrel", "rel")),
        "dt": ParamSpec(float, 1e-3, exclusive_min=0.0),
        "margin": ParamSpec(float, 1.0, exclusive_min=0.0),
    },
    "black_hole": {
        "M": ParamSpec(float, 1.0, exclusive_min=0.0),
        "m": ParamSpec(float, 1.0, exclusive_min=0.0),
        "p0_re": ParamSpec(float, 1.0, exclusive_min=0.0),
        "r_points": ParamSpec(int, 1000, minimum=10),
        "r_max_factor": ParamSpec(float, 8.0, exclusive_min=1.0),
        "wkb_r_max_factor": ParamSpec(float, 50.0, exclusive_min=1.0),
    },
    "cosmology": {
        "qT0": ParamSpec(float, 1.0, exclusive_min=0.0),
        "pT0": ParamSpec(float, 0.0),
        "xR0": ParamSpec(float, 0.5),
        "pR0": ParamSpec(float, 0.0),
        "k": ParamSpec(float, 1.0, exclusive_min=0.0),
        "m": ParamSpec(float, 1.0, exclusive_min=0.0),
        "dt": ParamSpec(float, 5e-4, exclusive_min=0.0),
        "steps": ParamSpec(int, 2000, minimum=3),
    },
}

UNIT_KEYS = ("hbar", "c_re", "grav")
TOP_KEYS = ("scenario", "parameters", "units", "output", "seed")


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    parameters: dict
    units: Units
    output: str | None
    seed: int
    source_text: str

    @property
    def config_sha256(self) -> str:
        return sha256_text(self.source_text)


@dataclass(frozen=True)
class ScenarioResult:
    summary: dict
    artifacts: list[tuple[str, str]]  # (relative path, sha256)
    checks_passed: bool
    out_dir: Path


def _distance_leq1(a: str, b: str) -> bool:
    """True when a and b differ by at most one edit (incl. transposition)."""
    if a == b:
        return True
    la, lb = len(a), len(b)
    if abs(la - lb) > 1:
        return False
    if la == lb:
        diffs = [i for i in range(la) if a[i] != b[i]]
        if len(diffs) == 1:
            return True
        if len(diffs) == 2:
            i, j = diffs
            return j == i + 1 and a[i] == b[j] and a[j] == b[i]
        return False
    if la > lb:
        a, b, la, lb = b, a, lb, la
    # b is one longer: check deletion
    for i in range(lb):
        if a == b[:i] + b[i + 1:]:
            return True
    return False


def _unknown_key_error(key: str, known, context: str) -> str:
    hints = [k for k in known if _distance_leq1(key.lower(), k.lower())]
    msg = f"unknown {context} key {key!r}"
    if hints:
        msg += f" (did you mean {hints[0]!r}?)"
    return msg


def _coerce(name: str, spec: ParamSpec, raw, errors: list[str]):
    if spec.type is float:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            errors.append(f"parameter {name!r} must be a number, got {raw!r}")
            return spec.default
        value = float(raw)
    elif spec.type is int:
        if isinstance(raw, bool) or not isinstance(raw, int):
            errors.append(f"parameter {name!r} must be an integer, got {raw!r}")
            return spec.default
        value = int(raw)
    else:
        if not isinstance(raw, str):
            errors.append(f"parameter {name!r} must be a string, got {raw!r}")
            return spec.default
        value = raw
    if spec.choices is not None and value not in spec.choices:
        errors.append(f"parameter {name!r} must be one of {spec.choices}, got {value!r}")
    if spec.minimum is not None and isinstance(value, (int, float)) and value < spec.minimum:
        errors.append(f"parameter {name!r} must be >= {spec.minimum}, got {value}")
    if spec.exclusive_min is not None and isinstance(value, (int, float)) and not value > spec.exclusive_min:
        errors.append(f"parameter {name!r} must be > {spec.exclusive_min}, got {value}")
    return value


def _cross_checks(scenario: str, p: dict, errors: list[str]) -> None:
    if scenario == "spatial_barrier":
        if not p["q_a"] < p["q_b"]:
            errors.append(f"constraint violated: q_a < q_b (got q_a={p['q_a']}, q_b={p['q_b']})")
    elif scenario == "temporal_barrier":
        if not p["t_a"] < p["t_b"]:
            errors.append(f"constraint violated: t_a < t_b (got t_a={p['t_a']}, t_b={p['t_b']})")
        if p["profile"] == "smooth_bump":
            if math.isnan(p["t1"]) or math.isnan(p["t2"]):
                errors.append("smooth_bump profile requires t1 and t2")
            elif not (p["t1"] < p["t_a"] and p["t_b"] < p["t2"]):
                errors.append("constraint violated: t1 < t_a < t_b < t2")


def validate_config(text: str) -> ScenarioConfig:
    """Parse and validate a TOML scenario config, reporting all errors."""
    errors: list[str] = []
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError([f"malformed TOML: {exc}"]) from exc

    for key in data:
        if key not in TOP_KEYS:
            errors.append(_unknown_key_error(key, TOP_KEYS, "top-level"))

    scenario = data.get("scenario")
    if scenario is None:
        errors.append("missing required key 'scenario'")
    elif scenario not in SCENARIO_PARAMS:
        hint = _unknown_key_error(str(scenario), SCENARIO_PARAMS, "scenario")
        errors.append(f"{hint}; valid scenarios: {', '.join(sorted(SCENARIO_PARAMS))}")

    params: dict = {}
    if scenario in SCENARIO_PARAMS:
        specs = SCENARIO_PARAMS[scenario]
        raw_params = data.get("parameters", {})
        if not isinstance(raw_params, dict):
            errors.append("'parameters' must be a table")
            raw_params = {}
        for key in raw_params:
            if key not in specs:
                errors.append(_unknown_key_error(key, specs, "parameter"))
        for name, spec in specs.items():
            if name in raw_params:
                params[name] = _coerce(name, spec, raw_params[name], errors)
            else:
                params[name] = spec.default
        _cross_checks(scenario, params, errors)

    raw_units = data.get("units", {})
    if not isinstance(raw_units, dict):
        errors.append("'units' must be a table")
        raw_units = {}
    for key in raw_units:
        if key not in UNIT_KEYS:
            errors.append(_unknown_key_error(key, UNIT_KEYS, "units"))
    unit_values = {}
    for key in UNIT_KEYS:
        if key in raw_units:
            value = raw_units[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
                errors.append(f"units.{key} must be a positive number, got {value!r}")
            else:
                unit_values[key] = float(value)

    output = data.get("output")
    if output is not None and not isinstance(output, str):
        errors.append(f"'output' must be a string path, got {output!r}")
        output = None
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        errors.append(f"'seed' must be an integer, got {seed!r}")
        seed = 0

    if errors:
        raise ConfigError(errors)
    return ScenarioConfig(
        scenario=str(scenario),
        parameters=params,
        units=Units(**unit_values),
        output=output,
        seed=seed,
        source_text=text,
    )


# ----------------------------------------------------------------------
# scenario implementations
# ----------------------------------------------------------------------


def _run_operator_algebra(p: dict, units: Units, out: Path):
    span, n = p["span"], p["n"]
    results: dict = {}
    rows = []
    defects_ok = True
    reality_ok = True
    for kind, axis in (
        ("position_re", "q_re"),
        ("momentum_re", "q_re"),
        ("position_im", "x_im"),
        ("momentum_im", "x_im"),
        ("time", "t"),
        ("energy", "t"),
    ):
        grid = GridSpec(axis, -span, span, n)
        op = build_operator(kind, grid, units)
        sa, asa = adjoint_defect(op)
        own = sa if op.symmetry == "self_adjoint" else asa
        defects_ok = defects_ok and own == 0.0
        eigs = np.linalg.eigvals(op.matrix)
        radius = float(np.max(np.abs(eigs)))
        stray = (
            float(np.max(np.abs(eigs.imag)))
            if op.symmetry == "self_adjoint"
            else float(np.max(np.abs(eigs.real)))
        )
        ratio = stray / radius if radius > 0 else 0.0
        reality_ok = reality_ok and ratio < 1e-10
        rows.append((kind, op.symmetry, sa, asa, ratio))

    residuals = {}
    bound = COMM_RESIDUAL_C * (2 * span / (n - 1)) ** 2
    hbar = units.hbar
    for name, axis, kinds, expected in (
        ("q_re_p_re", "q_re", ("position_re", "momentum_re"), 1j * hbar),
        ("q_im_p_im", "x_im", ("position_im", "momentum_im"), 1j * hbar),
        ("t_s", "t", ("time", "energy"), -1j * hbar),
    ):
        grid = GridSpec(axis, -span, span, n)
        a = build_operator(kinds[0], grid, units)
        b = build_operator(kinds[1], grid, units)
        probe = gaussian_state(grid)
        res = commutator_residual(a, b, expected, probe)
        residuals[name] = res.residual
    grid = GridSpec("t", -span, span, n)
    t_op = build_operator("time", grid, units)
    s_op = build_operator("energy", grid, units)
    wrong = commutator_residual(t_op, s_op, +1j * hbar, gaussian_state(grid))

    checks = {
        "adjoint_defects_exact_zero": defects_ok,
        "eigenvalue_reality": reality_ok,
        "commutator_bounds": all(r < bound for r in residuals.values()),
        "time_energy_sign": residuals["t_s"] < bound < wrong.residual,
    }
    results["residuals"] = residuals
    results["residual_bound"] = bound
    results["wrong_sign_residual"] = wrong.residual
    write_csv(
        out / "operators.csv",
        ["kind", "symmetry", "sa_defect", "asa_defect", "stray_eig_ratio"],
        rows,
    )
    return results, checks, ["operators.csv"]


def _run_spatial_barrier(p: dict, units: Units, out: Path):
    E0, V0, q_a, q_b, m = p["E0"], p["V0"], p["q_a"], p["q_b"], p["m"]
    pot = spt.PiecewisePotential.single_barrier(q_a, q_b, V0)
    scatter = spt.transmission_reflection(pot, E0, m, units)
    state = st.spatial_tunnel_state(q_a, q_b, V0, E0, m, units, mode=p["mode"])

    sweep_top = 3.0 * (V0 if V0 > 0 else E0)
    sweep_rows = []
    unitarity_ok = True
    contrast_ok = True
    for i in range(1, p["sweep_points"] + 1):
        e = sweep_top * i / p["sweep_points"]
        r = spt.transmission_reflection(pot, e, m, units)
        sweep_rows.append((e, r.T, r.R, r.T + r.R))
        unitarity_ok = unitarity_ok and abs(r.T + r.R - 1.0) < 1e-10
        if 0 < e < V0:
            enc = spt.classical_encounter(q_a - 1.0, math.sqrt(2 * m * e), pot, m)
            contrast_ok = contrast_ok and enc.verdict == "Reflected" and r.T > 0

    mismatches = st.boundary_mismatch(state, units)
    continuity_ok = all(
        b.rel_jump_value < 1e-10 and b.rel_jump_slope < 1e-10 for b in mismatches
    )
    resid_scale = max(abs(E0), abs(V0), 1.0)
    residuals = [
        st.schrodinger_residual(state, i, v, units)
        for i, v in ((0, 0.0), (1, V0), (2, 0.0))
    ]
    schrodinger_ok = all(r <= 1e-12 * resid_scale for r in residuals)

    results = {
        "T": scatter.T,
        "R": scatter.R,
        "T_plus_R": scatter.T + scatter.R,
        "mode": p["mode"],
        "schrodinger_residuals": residuals,
        "boundary_mismatch_max": max(
            (max(b.rel_jump_value, b.rel_jump_slope) for b in mismatches), default=0.0
        ),
    }
    if E0 < V0:
        kappa = math.sqrt(2 * m * (V0 - E0)) / units.hbar
        grid = GridSpec("q_re", q_a, q_b, p["grid_n"])
        # Probe the forward component alone: the amplitude-matched mixture
        # of decaying and growing waves has no sharp momentum.
        forward = replace(state.regions[1], amp_fwd=1.0, amp_bwd=0.0)
        profile = st.region_profile(forward, grid.points, units)
        p_op = build_operator("momentum_re", grid, units)
        value = rayleigh_eigenvalue(p_op, StateVector(profile, grid), boundary_margin=1)
        grid_tol = units.hbar * kappa**3 * grid.spacing**2 / 4.0 + 1e-12
        results["mid_barrier_momentum"] = [value.real, value.imag]
        results["mid_barrier_momentum_class"] = classify_value(value)
        imag_ok = (
            abs(value.real) < 1e-9
            and abs(abs(value.imag) - units.hbar * kappa) < grid_tol
        )
    else:
        imag_ok = True

    checks = {
        "unitarity_sweep": unitarity_ok,
        "classical_reflects_quantum_tunnels": contrast_ok,
        "boundary_continuity": continuity_ok,
        "piecewise_schrodinger": schrodinger_ok,
        "mid_barrier_momentum_imaginary": imag_ok,
    }
    write_csv(out / "transmission.csv", ["E0", "T", "R", "T_plus_R"], sweep_rows)
    write_json(out / "state.json", state.to_dict())
    return results, checks, ["transmission.csv", "state.json"]


def _run_temporal_barrier(p: dict, units: Units, out: Path):
    if p["profile"] == "square":
        profile = tb.square_profile(p["t_a"], p["t_b"], p["W0"])
    else:
        profile = tb.smooth_bump_profile(p["t1"], p["t_a"], p["t_b"], p["t2"], p["W0"])
    m, p0 = p["m"], p["p0_re"]
    E0 = p0**2 / (2 * m)
    lo, hi = profile.support
    start = tb.ClassicalState(t=lo - p["margin"], p_re=p0, m=m)
    traj = tb.integrate_classical(start, profile, p["model"], p["dt"], hi + p["margin"], units)

    # The terminal Destroyed snapshot is excluded: the system no longer
    # exists there, and at a square jump the drain holds W0 > E0.
    destroyed_t = traj.event("Destroyed").t if traj.destroyed else math.inf
    living = [s for s in traj.samples if s.t < destroyed_t] or traj.samples[:1]
    conserved = max(
        abs(tb.total_energy(s, profile, tb.NONREL, units) - E0) for s in living
    ) <= 1e-8 * max(E0, 1.0)

    destroyed = traj.event("Destroyed")
    if destroyed is not None:
        w_at_event = tb.profile_value(profile, destroyed.t)
        event_ok = abs(w_at_event - E0) <= max(1e-6 * max(profile.W0, 1.0), 0.0) or (
            profile.kind == tb.SQUARE and abs(destroyed.t - profile.t_a) < 1e-9
        )
    else:
        event_ok = profile.W0 < E0 or E0 == 0.0 or p["model"] == tb.REL

    results = {
        "E0": E0,
        "model": p["model"],
        "events": [[e.kind, e.t] for e in traj.events],
        "classical_destroyed": traj.destroyed,
    }
    checks = {
        "total_energy_conserved": bool(conserved),
        "event_location": bool(event_ok),
    }
    artifacts = ["trajectory.csv"]
    write_csv(
        out / "trajectory.csv",
        ["t", "q_re", "p_re", "x_im", "pi_im", "W", "E_system", "mass_sign", "event"],
        tb.trajectory_rows(traj, profile),
    )
    if profile.kind == tb.SQUARE:
        contrast = tb.quantum_contrast(profile, p0, m, units, p["dt"])
        results["E_T"] = contrast.E_T
        results["quantum_survives"] = contrast.quantum_survives
        checks["conservation_identity"] = contrast.conservation_exact
        checks["quantum_survival"] = contrast.quantum_survives
        write_json(out / "state.json", contrast.state.to_dict())
        artifacts.append("state.json")
    return results, checks, artifacts


def _run_black_hole(p: dict, units: Units, out: Path):
    model = bh.BlackHoleModel(M=p["M"], m=p["m"], grav=units.grav, c=units.c_re)
    m, p0 = p["m"], p["p0_re"]
    E0 = p0**2 / (2 * m)
    r_E = model.r_E
    verdict = bh.classical_escape(model, p0)

    try:
        prob = bh.wkb_escape_probability(model, E0, m, units)
        wkb_outcome: object = prob
    except bh.NonIntegrableBarrier:
        prob = None
        wkb_outcome = "non_integrable"

    r_turn = bh.turning_radius(model, E0)
    banded = None
    band_r_max = p["wkb_r_max_factor"] * r_E
    if prob is None and r_turn < band_r_max:
        banded = bh.wkb_escape_probability(model, E0, m, units, r_max=band_r_max)

    radii = np.linspace(r_E / 100.0, p["r_max_factor"] * r_E, p["r_points"])
    rows = bh.radial_profile(model, p0, radii)

    v_h = bh.potential(model, r_E)
    continuity_ok = abs(bh.potential(model, r_E * (1 - 1e-12)) - v_h) <= 1e-12 * abs(v_h)
    inside = [bh.potential(model, r) for r in np.linspace(0.0, r_E, 64)]
    force_zero_ok = all(v == inside[0] for v in inside)
    partition_ok = all(
        (bh.potential(model, r) <= v_h + E0) == allowed
        for r, _v, _re, _im, allowed in rows
    )
    agreement_ok = (wkb_outcome == 1.0) == verdict.escapes

    results = {
        "r_E": r_E,
        "well_depth": model.well_depth,
        "E0": E0,
        "classical_escapes": verdict.escapes,
        "turning_radius": verdict.turning_radius,
        "wkb_escape_probability": wkb_outcome if prob is not None else "non_integrable",
        "wkb_banded_probability": banded,
        "wkb_band_r_max": band_r_max,
    }
    checks = {
        "potential_continuity": bool(continuity_ok),
        "force_zero_inside": bool(force_zero_ok),
        "momentum_partition": bool(partition_ok),
        "classical_wkb_agreement": bool(agreement_ok),
    }
    write_csv(
        out / "radial_profile.csv",
        ["r", "V", "p_re", "p_im", "classically_allowed"],
        rows,
    )
    return results, checks, ["radial_profile.csv"]


def _run_cosmology(p: dict, units: Units, out: Path):
    start = cosmo.CosmoState(
        t=0.0, qT=p["qT0"], pT=p["pT0"], xR=p["xR0"], pR=p["pR0"], k=p["k"], m=p["m"]
    )
    traj = cosmo.integrate(start, p["dt"], p["steps"] * p["dt"])
    report = cosmo.expansion_report(traj)

    h0 = cosmo.hamiltonian(start)
    scale = max(abs(h0), 1e-30)
    drift_rows = [(s.t, h, abs(h - h0) / scale) for s, h in zip(traj.samples, traj.energies())]
    max_drift = max(row[2] for row in drift_rows)

    stride = max(1, len(traj.samples) // 20)
    consistency = max(
        cosmo.hamilton_consistency_defect(s) for s in traj.samples[::stride]
    )

    results = {
        "H0": h0,
        "max_rel_energy_drift": max_drift,
        "hamilton_consistency_defect": consistency,
        "final_qT": traj.samples[-1].qT,
        "final_xR": traj.samples[-1].xR,
        "degenerate": report.degenerate,
    }
    checks = {
        "acceleration_positivity": report.all_aT_positive and report.all_aR_positive,
        "energy_drift": max_drift < 1e-6,
        "hamilton_consistency": consistency < 1e-6,
    }
    write_csv(
        out / "trajectory.csv",
        ["t", "qT_re", "pT_re", "xR_im", "pR_im_mag", "H", "aT_re", "aR_im_mag"],
        cosmo.trajectory_rows(traj),
    )
    write_csv(out / "drift.csv", ["t", "H", "rel_drift"], drift_rows)
    return results, checks, ["trajectory.csv", "drift.csv"]


_RUNNERS = {
    "operator_algebra": _run_operator_algebra,
    "spatial_barrier": _run_spatial_barrier,
    "temporal_barrier": _run_temporal_barrier,
    "black_hole": _run_black_hole,
    "cosmology": _run_cosmology,
}


def _json_safe(value):
    """Strict JSON has no Infinity/NaN literals; render them as strings."""
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        if math.isnan(value):
            return "nan"
        return "inf" if value > 0 else "-inf"
    return value


def run_scenario(config: ScenarioConfig, out_dir: str | Path | None = None) -> ScenarioResult:
    """Execute a validated config and write its artifacts.

    Output directory precedence: explicit argument, then the
    COMPLEXMECH_OUT environment variable, then the config's ``output``
    key, then ``out/<scenario>``.
    """
    if out_dir is None:
        out_dir = os.environ.get(ENV_OUT) or config.output or f"out/{config.scenario}"
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    results, checks, artifact_names = _RUNNERS[config.scenario](
        config.parameters, config.units, out
    )
    artifacts = [(name, sha256_file(out / name)) for name in artifact_names]
    summary = {
        "scenario": config.scenario,
        "version": __version__,
        "config_sha256": config.config_sha256,
        "seed": config.seed,
        "parameters": {k: v for k, v in sorted(config.parameters.items())
                       if not (isinstance(v, float) and math.isnan(v))},
        "units": {"hbar": config.units.hbar, "c_re": config.units.c_re,
                  "grav": config.units.grav},
        "results": _json_safe(results),
        "checks": {k: ("pass" if v else "fail") for k, v in sorted(checks.items())},
        "artifacts": [{"path": name, "sha256": digest} for name, digest in artifacts],
    }
    write_json(out / "summary.json", summary)
    return ScenarioResult(summary, artifacts, all(checks.values()), out)


def list_scenarios() -> list[str]:
    return sorted(SCENARIO_PARAMS)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="complexmech",
        description="Run complexified-mechanics scenarios from TOML configs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="validate and execute a scenario config")
    run_p.add_argument("config", type=Path)
    run_p.add_argument("--out", type=Path, default=None, help="output directory")
    val_p = sub.add_parser("validate", help="validate a config without running it")
    val_p.add_argument("config", type=Path)
    sub.add_parser("list-scenarios", help="print the available scenario names")

    args = parser.parse_args(argv)

    if args.command == "list-scenarios":
        for name in list_scenarios():
            print(name)
        return 0

    try:
        text = args.config.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 1

    try:
        config = validate_config(text)
    except ConfigError as exc:
        for err in exc.errors:
            print(f"config error: {err}", file=sys.stderr)
        return 1

    if args.command == "validate":
        print(f"ok: scenario {config.scenario!r} with "
              f"{len(config.parameters)} parameters")
        return 0

    try:
        result = run_scenario(config, args.out)
    except (ValueError, RuntimeError) as exc:
        print(f"runtime error in scenario {config.scenario!r}: {exc}", file=sys.stderr)
        return 2

    for name, verdict in result.summary["checks"].items():
        print(f"{verdict:4s}  {name}")
    print(f"wrote {result.out_dir / 'summary.json'}")
    return 0 if result.checks_passed else 3


if __name__ == "__main__":
    sys.exit(main())
