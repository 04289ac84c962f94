"""Named batch experiments behind the CLI subcommands.

Each `run_*` function takes an ExperimentConfig, returns the rows it
computed and (optionally) writes them as CSV: comma separated, header
row, `.` decimal separator, LF line endings, floats at the configured
significant-digit precision.  Re-running with the same config reproduces
the CSV byte for byte: grids are fixed tuples, solvers are deterministic
and rows are emitted in a fixed order.

Sweep points are dispatched to a process pool when jobs > 1; workers
share nothing mutable and results are collected in task order.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor

from .config import ExperimentConfig
from .constants import NM, W_CM2_TO_W_M2, omega_to_wavelength_nm, wavelength_nm_to_omega
from .effective import (
    build_coupling_matrix,
    complex_pole,
    decay_spectrum,
    mediated_params,
)
from .exceptions import ConfigError, MemoryBudgetError
from .fullmodel import FockConfig, validate_against_effective
from .numerics import fit_exponential_decay, fit_quadratic
from .plasmonics import (
    ArrayGeometry,
    DrudeMetal,
    HostMedium,
    MaterialSystem,
    QdParams,
    bare_couplings,
    derive_material,
    drive_rates,
)
from .steadystate import concurrence, dicke_populations, steady_state

__all__ = [
    "material_from",
    "geometry_from",
    "qd_from",
    "detuning_pair",
    "single_omega",
    "run_couplings",
    "run_spectra",
    "run_concurrence_sweep",
    "run_decay",
    "run_validate",
    "write_csv",
]

SEQUENCE_OF = {1: "1", 2: "2-6-10-14", 3: "3-7-11-15", 0: "4-8-12-16"}
SEQUENCE_OF_ODD1 = "5-9-13-17"  # n = 1 mod 4, n > 1


def material_from(cfg: ExperimentConfig) -> MaterialSystem:
    metal = DrudeMetal.from_ev(cfg.metal.omega_p_ev, cfg.metal.eps_inf, cfg.metal.gamma_p_ev)
    medium = HostMedium(cfg.medium.eps_m)
    return derive_material(
        metal, medium, cfg.geometry.r_nm * NM,
        include_radiative=cfg.metal.radiative_damping,
    )


def geometry_from(cfg: ExperimentConfig, n: int) -> ArrayGeometry:
    return ArrayGeometry(
        r=cfg.geometry.r_nm * NM,
        r0=cfg.geometry.r0_nm * NM,
        s=cfg.geometry.s_nm * NM,
        n=n,
        s_z=cfg.geometry.s_z,
    )


def detuning_pair(mode: str, delta_over_gamma: float, gamma_i: float) -> tuple:
    """Per-dot detunings (rad/s) for a named detuning mode."""
    delta = delta_over_gamma * gamma_i
    if mode == "none":
        return 0.0, 0.0
    if mode == "symmetric":
        return delta, delta
    if mode == "antisymmetric":
        return delta, -delta
    raise ConfigError(f"unknown detuning mode {mode!r}")


def qd_from(cfg: ExperimentConfig, mat: MaterialSystem, delta_over_gamma: float) -> QdParams:
    d1, d2 = detuning_pair(cfg.qd.detuning_mode, delta_over_gamma, cfg.qd.gamma_i)
    return QdParams.at_resonance(mat, cfg.geometry.r0_nm * NM, cfg.qd.gamma_i, d1, d2)


def single_omega(cfg: ExperimentConfig, mat: MaterialSystem) -> float:
    """Driving frequency for single-frequency experiments."""
    mode = cfg.drive.omega_mode
    if mode == "lspr":
        return mat.omega_0
    if mode == "wavelength_nm":
        return wavelength_nm_to_omega(cfg.drive.wavelength_nm)
    raise ConfigError(f"this experiment needs a single frequency, got omega_mode={mode!r}")


def _sequence_label(n: int) -> str:
    if n == 1:
        return SEQUENCE_OF[1]
    if n % 4 == 1:
        return SEQUENCE_OF_ODD1
    return SEQUENCE_OF[n % 4]


def _format_value(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.{precision - 1}e}"
    return str(value)


def write_csv(path: str, header, rows, precision: int = 12) -> None:
    """Write rows (sequences of cells) with a header, LF endings."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(cell, precision) for cell in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _map_tasks(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------------------
# couplings: mediated G12/Gamma12 vs inter-dot distance at the resonance
# ---------------------------------------------------------------------------

COUPLINGS_HEADER = (
    "n", "d_qq_minus_2r0_um", "g_coh_rad_s", "gamma_diss_rad_s",
    "sequence", "fit_a0", "fit_a1", "fit_a2", "fit_rms",
)


def run_couplings(cfg: ExperimentConfig, jobs: int = 1):
    """Mediated couplings at omega = omega_0 for each configured n.

    Per four-step sequence the dominant coupling (coherent for even n,
    dissipative for odd) is fit quadratically against d_qq - 2 r0; the fit
    columns repeat on every row of the sequence.
    """
    if cfg.drive.omega_mode != "lspr":
        raise ConfigError("couplings experiment requires drive.omega_mode = lspr")
    mat = material_from(cfg)
    qd = QdParams.at_resonance(mat, cfg.geometry.r0_nm * NM, cfg.qd.gamma_i)
    points = []
    for n in sorted(set(cfg.geometry.n)):
        geom = geometry_from(cfg, n)
        couplings = bare_couplings(geom, qd, mat)
        pole = complex_pole(mat, qd, mat.omega_0)
        cm = build_coupling_matrix(n, couplings.kappa, pole.delta)
        drive = drive_rates(0.0, mat, qd, mat.omega_0)
        mp = mediated_params(geom, mat, qd, drive, cm)
        dist_um = (geom.d_qq - 2.0 * geom.r0) / 1e-6
        points.append((n, dist_um, mp.g_coh, mp.gamma_diss))

    fits = {}
    for label in set(_sequence_label(n) for n, *_ in points):
        members = [p for p in points if _sequence_label(p[0]) == label]
        if len(members) < 3:
            continue
        xs = [p[1] for p in members]
        # fit the coupling that is non-zero on this sequence
        ys = [p[2] if members[0][0] % 2 == 0 else p[3] for p in members]
        fits[label] = fit_quadratic(xs, ys)

    rows = []
    for n, dist_um, g_coh, gamma_diss in points:
        label = _sequence_label(n)
        fit = fits.get(label)
        rows.append((
            n, dist_um, g_coh, gamma_diss, label,
            fit.coefficients[0] if fit else None,
            fit.coefficients[1] if fit else None,
            fit.coefficients[2] if fit else None,
            fit.rms_residual if fit else None,
        ))
    if cfg.output.csv:
        write_csv(cfg.output.csv, COUPLINGS_HEADER, rows, cfg.output.precision)
    return rows


# ---------------------------------------------------------------------------
# spectra: collective decay rates across the frequency grid
# ---------------------------------------------------------------------------

SPECTRA_HEADER = (
    "n", "omega_rad_s", "lambda_nm", "gamma_s_rad_s", "gamma_a_rad_s",
    "gamma_tilde_rad_s", "g_coh_rad_s", "gamma_diss_rad_s", "omega_0_rad_s",
)


def _spectra_task(args):
    cfg, n = args
    mat = material_from(cfg)
    qd = QdParams.at_resonance(mat, cfg.geometry.r0_nm * NM, cfg.qd.gamma_i)
    geom = geometry_from(cfg, n)
    # wavelength grid descending in lambda gives an ascending omega grid
    lam_lo, lam_hi = cfg.drive.lambda_min_nm, cfg.drive.lambda_max_nm
    npts = cfg.drive.lambda_points
    lambdas = [lam_hi - k * (lam_hi - lam_lo) / (npts - 1) for k in range(npts)]
    omegas = [wavelength_nm_to_omega(lam) for lam in lambdas]
    spectrum = decay_spectrum(omegas, geom, mat, qd)
    return [
        (n, pt.omega, omega_to_wavelength_nm(pt.omega), pt.gamma_s, pt.gamma_a,
         pt.gamma_tilde, pt.g_coh, pt.gamma_diss, mat.omega_0)
        for pt in spectrum
    ]


def run_spectra(cfg: ExperimentConfig, jobs: int = 1):
    """Symmetric/antisymmetric decay rates over the wavelength grid."""
    if cfg.drive.omega_mode != "grid":
        raise ConfigError("spectra experiment requires drive.omega_mode = grid")
    if cfg.drive.lambda_max_nm <= cfg.drive.lambda_min_nm:
        raise ConfigError("lambda_max_nm must exceed lambda_min_nm")
    tasks = [(cfg, n) for n in sorted(set(cfg.geometry.n))]
    rows = [row for chunk in _map_tasks(_spectra_task, tasks, jobs) for row in chunk]
    if cfg.output.csv:
        write_csv(cfg.output.csv, SPECTRA_HEADER, rows, cfg.output.precision)
    return rows


# ---------------------------------------------------------------------------
# concurrence: stationary concurrence over (n, intensity, detuning)
# ---------------------------------------------------------------------------

CONCURRENCE_HEADER = (
    "n", "intensity_w_cm2", "delta_over_gamma", "concurrence",
    "rho_gg", "rho_ss", "rho_aa", "rho_ee",
)


def _concurrence_task(args):
    """All intensities for one (n, detuning) pair; reuses the chain inverse."""
    cfg, n, delta_over_gamma, phi, detuning_mode = args
    mat = material_from(cfg)
    d1, d2 = detuning_pair(detuning_mode, delta_over_gamma, cfg.qd.gamma_i)
    qd = QdParams.at_resonance(mat, cfg.geometry.r0_nm * NM, cfg.qd.gamma_i, d1, d2)
    geom = geometry_from(cfg, n)
    omega = single_omega(cfg, mat)
    couplings = bare_couplings(geom, qd, mat)
    pole = complex_pole(mat, qd, omega)
    cm = build_coupling_matrix(n, couplings.kappa, pole.delta)
    rows = []
    for intensity in cfg.drive.intensity_w_cm2:
        drive = drive_rates(intensity * W_CM2_TO_W_M2, mat, qd, omega, phi)
        mp = mediated_params(geom, mat, qd, drive, cm, phi_mode=cfg.drive.phi_mode)
        state = steady_state(mp)
        pops = dicke_populations(state)
        rows.append((
            n, float(intensity), float(delta_over_gamma), concurrence(state),
            pops.rho_gg, pops.rho_ss, pops.rho_aa, pops.rho_ee,
        ))
    return rows


def run_concurrence_sweep(cfg: ExperimentConfig, jobs: int = 1):
    """Full (n, intensity, detuning) grid with Dicke populations.

    Returns (rows, optima) where optima maps n to the grid argmax
    (intensity*, delta*, concurrence*).
    """
    if cfg.solver.backend != "effective":
        raise ConfigError("concurrence experiment requires solver.backend = effective")
    deltas = cfg.qd.delta_over_gamma if cfg.qd.detuning_mode != "none" else (0.0,)
    phi = cfg.drive.phi_over_pi * math.pi
    tasks = [
        (cfg, n, d, phi, cfg.qd.detuning_mode)
        for n in sorted(set(cfg.geometry.n))
        for d in deltas
    ]
    chunks = _map_tasks(_concurrence_task, tasks, jobs)
    rows = [row for chunk in chunks for row in chunk]
    optima = {}
    for row in rows:
        n, intensity, delta, conc = row[0], row[1], row[2], row[3]
        if n not in optima or conc > optima[n][2]:
            optima[n] = (intensity, delta, conc)
    if cfg.output.csv:
        write_csv(cfg.output.csv, CONCURRENCE_HEADER, rows, cfg.output.precision)
    return rows, optima


# ---------------------------------------------------------------------------
# decay: optimal concurrence per n and per-sequence exponential fits
# ---------------------------------------------------------------------------

DECAY_HEADER = (
    "sequence", "n", "c_opt", "i_opt_w_cm2", "delta_opt_over_gamma",
    "fit_c0", "fit_tau",
)


def _decay_scheme(cfg: ExperimentConfig, n: int, g_coh_sign: float):
    """Drive scheme for the per-n optimization: (mode, delta grid, phi)."""
    deltas = cfg.qd.delta_over_gamma
    if n == 1:
        return "antisymmetric", tuple(d for d in deltas if d != 0.0) or (80.0,), 0.0
    if n % 2 == 0:
        matching = tuple(d for d in deltas if d * g_coh_sign > 0)
        return "symmetric", matching or (math.copysign(80.0, g_coh_sign),), 0.0
    if n % 4 == 3:
        return "none", (0.0,), 0.0
    return "none", (0.0,), math.pi


def _decay_task(args):
    """Optimize one n over its scheme's (intensity, detuning) grid."""
    cfg, n = args
    mat = material_from(cfg)
    qd0 = QdParams.at_resonance(mat, cfg.geometry.r0_nm * NM, cfg.qd.gamma_i)
    geom = geometry_from(cfg, n)
    couplings = bare_couplings(geom, qd0, mat)
    pole = complex_pole(mat, qd0, mat.omega_0)
    cm = build_coupling_matrix(n, couplings.kappa, pole.delta)
    drive0 = drive_rates(0.0, mat, qd0, mat.omega_0)
    g_sign = math.copysign(1.0, mediated_params(geom, mat, qd0, drive0, cm).g_coh or 1.0)
    mode, deltas, phi = _decay_scheme(cfg, n, g_sign)
    best = (-1.0, 0.0, 0.0)
    for delta in deltas:
        rows = _concurrence_task((cfg, n, delta, phi, mode))
        for row in rows:
            if row[3] > best[0]:
                best = (row[3], row[1], row[2])
    return n, _sequence_label(n), best[0], best[1], best[2]


def run_decay(cfg: ExperimentConfig, jobs: int = 1):
    """Optimal concurrence per n plus per-sequence exponential decay fits.

    The per-n drive scheme follows the parity rules: even n uses symmetric
    drive with detunings restricted to the sign of the coherent coupling;
    n = 3, 7, ... uses symmetric drive at zero detuning; n = 5, 9, ...
    uses the pi-phased (antisymmetric) drive; n = 1 uses antisymmetric
    detuning.  Fits use only strictly positive optima and need at least
    two of them per sequence.
    """
    if cfg.solver.backend != "effective":
        raise ConfigError("decay experiment requires solver.backend = effective")
    if cfg.drive.omega_mode != "lspr":
        raise ConfigError("decay experiment requires drive.omega_mode = lspr")
    tasks = [(cfg, n) for n in sorted(set(cfg.geometry.n))]
    results = _map_tasks(_decay_task, tasks, jobs)

    fits = {}
    for label in set(r[1] for r in results):
        members = [(r[0], r[2]) for r in results if r[1] == label and r[2] > 0.0]
        if len(members) >= 2:
            fits[label] = fit_exponential_decay(
                [m[0] for m in members], [m[1] for m in members]
            )
    rows = []
    for n, label, c_opt, i_opt, delta_opt in sorted(results):
        fit = fits.get(label) if label != "1" else None
        rows.append((
            label, n, c_opt, i_opt, delta_opt,
            fit.coefficients[0] if fit else None,
            fit.coefficients[1] if fit else None,
        ))
    if cfg.output.csv:
        write_csv(cfg.output.csv, DECAY_HEADER, rows, cfg.output.precision)
    return rows, fits


# ---------------------------------------------------------------------------
# validate: effective model against the explicit-mode simulation
# ---------------------------------------------------------------------------

VALIDATE_HEADER = (
    "n", "fock_levels", "intensity_w_cm2", "c_eff", "c_full", "abs_diff", "error",
)

# coarse default grid for the expensive explicit-mode comparison
VALIDATE_INTENSITIES_W_CM2 = tuple(float(i) for i in range(0, 81, 10))


def run_validate(cfg: ExperimentConfig, jobs: int = 1,
                 intensities_w_cm2=VALIDATE_INTENSITIES_W_CM2):
    """Concurrence discrepancy table between the two backends.

    A chain that exceeds the memory budget contributes a structured error
    row instead of aborting the whole run.
    """
    mat = material_from(cfg)
    if cfg.qd.detuning_mode != "none" and len(cfg.qd.delta_over_gamma) != 1:
        raise ConfigError("validate expects a single qd.delta_over_gamma value")
    delta = cfg.qd.delta_over_gamma[0] if cfg.qd.detuning_mode != "none" else 0.0
    qd = qd_from(cfg, mat, delta)
    omega = single_omega(cfg, mat)
    phi = cfg.drive.phi_over_pi * math.pi
    budget = int(cfg.solver.memory_budget_gb * 2**30)
    rows = []
    summaries = {}
    for n in sorted(set(cfg.geometry.n)):
        if n > cfg.solver.validate_max_n:
            rows.append((n, cfg.solver.fock_levels, None, None, None, None,
                         f"skipped: n exceeds validate_max_n={cfg.solver.validate_max_n}"))
            continue
        geom = geometry_from(cfg, n)
        fock = FockConfig(n=n, fock_levels=cfg.solver.fock_levels,
                          memory_budget_bytes=budget)
        try:
            table = validate_against_effective(
                geom, mat, qd, fock,
                [i * W_CM2_TO_W_M2 for i in intensities_w_cm2],
                omega=omega, phi=phi,
                phase_mnp_drives=cfg.solver.phase_mnp_drives,
            )
        except MemoryBudgetError as exc:
            rows.append((n, cfg.solver.fock_levels, None, None, None, None, str(exc)))
            continue
        for intensity, row in zip(intensities_w_cm2, table.rows):
            rows.append((n, cfg.solver.fock_levels, float(intensity),
                         row.c_eff, row.c_full, row.abs_diff, ""))
        summaries[n] = table.max_abs_diff
    if cfg.output.csv:
        write_csv(cfg.output.csv, VALIDATE_HEADER, rows, cfg.output.precision)
    return rows, summaries
