"""Adiabatic elimination of the nanoparticle chain.

The chain response to the two dots and the drive is encoded by the n x n
coupling matrix A with unit diagonal and nearest-neighbor entries
-i*kappa/delta, where delta = i(omega_0 - omega) + gamma_0/2 is the
complex pole of a driven damped particle.  Its inverse K folds the chain
back onto the dots and yields

* plasmon-induced single-dot terms: exciton shift, Purcell-broadened
  emission rate and enhanced excitation rate,
* dot-dot mediated couplings: the coherent rate G12 (Hamiltonian
  exchange) and the dissipative rate Gamma12 (collective decay).

Everything here is a pure function of its inputs; sweeps over frequency
or particle number are embarrassingly parallel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ContractError, DomainError
from .numerics import uniform_tridiagonal_inverse
from .plasmonics import (
    ArrayGeometry,
    DriveField,
    MaterialSystem,
    QdParams,
    bare_couplings,
    drive_rates,
)

__all__ = [
    "ComplexPole",
    "CouplingMatrix",
    "EffectiveCouplings",
    "MediatedParams",
    "DickeParams",
    "complex_pole",
    "build_coupling_matrix",
    "effective_couplings",
    "mediated_params",
    "dicke_params",
    "SpectrumPoint",
    "decay_spectrum",
]

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ComplexPole:
    """Rotating-frame complex rates of the particle and dot responses."""

    delta: complex       # i*(omega_0 - omega) + gamma_0/2
    delta_1: complex     # i*(omega_1 - omega) + gamma_i/2
    delta_2: complex
    detuning_0: float    # omega_0 - omega
    detuning_1: float    # omega_1 - omega
    detuning_2: float


def complex_pole(mat: MaterialSystem, qd: QdParams, omega: float) -> ComplexPole:
    """Complex poles at driving frequency omega."""
    if omega <= 0:
        raise DomainError(f"driving frequency must be positive, got {omega}")
    d0 = mat.omega_0 - omega
    d1 = qd.omega_1 - omega
    d2 = qd.omega_2 - omega
    return ComplexPole(
        delta=complex(mat.gamma_0 / 2.0, d0),
        delta_1=complex(qd.gamma_i / 2.0, d1),
        delta_2=complex(qd.gamma_i / 2.0, d2),
        detuning_0=d0,
        detuning_1=d1,
        detuning_2=d2,
    )


@dataclass(frozen=True)
class CouplingMatrix:
    """Chain coupling matrix A and its inverse K.

    A is symmetric tridiagonal with unit diagonal and off-diagonal
    -i*kappa/delta; K is computed by the continuant recurrence and checked
    against the defining property ||K A - I|| < 1e-12 (relative Frobenius).
    """

    n: int
    kappa: float
    delta: complex
    a: np.ndarray
    k: np.ndarray
    inverse_residual: float


def build_coupling_matrix(n: int, kappa: float, delta: complex) -> CouplingMatrix:
    """Build A and K = A^-1 for an n-particle chain."""
    if n < 1:
        raise DomainError(f"particle count must be >= 1, got {n}")
    if delta.real <= 0:
        raise DomainError(f"Re(delta) must be positive, got {delta}")
    x = -1j * kappa / delta
    a = np.eye(n, dtype=complex)
    idx = np.arange(n - 1)
    a[idx, idx + 1] = x
    a[idx + 1, idx] = x
    k = uniform_tridiagonal_inverse(n, x)
    residual = float(np.linalg.norm(k @ a - np.eye(n))) / math.sqrt(n)
    return CouplingMatrix(n=n, kappa=kappa, delta=delta, a=a, k=k, inverse_residual=residual)


@dataclass(frozen=True)
class EffectiveCouplings:
    """Chain-dressed dot-particle couplings and particle excitation rates.

    g_tilde[i, m] = sum_v K_mv g_{i+1,v} and omega_tilde[m] = sum_v K_mv
    Omega_v.  Only the end couplings are non-zero bare, so g_tilde rows are
    scaled columns of K; for a single particle both dots couple to it.
    """

    g_tilde: np.ndarray      # (2, n) complex
    omega_tilde: np.ndarray  # (n,) complex


def _bare_coupling_vectors(n: int, g: float) -> tuple[np.ndarray, np.ndarray]:
    g1 = np.zeros(n)
    g2 = np.zeros(n)
    g1[0] = g
    g2[n - 1] = g
    return g1, g2


def effective_couplings(cm: CouplingMatrix, g: float, omega_m: float) -> EffectiveCouplings:
    """Dress the bare end couplings and uniform particle drive through K."""
    g1, g2 = _bare_coupling_vectors(cm.n, g)
    gt = np.vstack([cm.k @ g1, cm.k @ g2]).astype(complex)
    omt = cm.k @ (omega_m * np.ones(cm.n))
    return EffectiveCouplings(g_tilde=gt, omega_tilde=omt)


@dataclass(frozen=True)
class MediatedParams:
    """Plasmon-induced single-dot terms and dot-dot mediated couplings.

    All rates rad/s.  lambda_tilde_i are complex; the imaginary part is the
    chain-funnelled drive component.  v_mat/u_mat hold the quadratures
    V_jm = d0*Re(g~_jm) - (gamma_0/2) Im(g~_jm) and
    U_jm = d0*Im(g~_jm) + (gamma_0/2) Re(g~_jm).
    """

    n: int
    omega: float
    delta_omega_tilde_1: float
    delta_omega_tilde_2: float
    gamma_tilde_1: float
    gamma_tilde_2: float
    lambda_tilde_1: complex
    lambda_tilde_2: complex
    g_coh: float          # coherent coupling G12 = G21
    gamma_diss: float     # dissipative coupling Gamma12 = Gamma21
    g_tilde: np.ndarray
    omega_tilde: np.ndarray
    v_mat: np.ndarray
    u_mat: np.ndarray


def mediated_params(
    geom: ArrayGeometry,
    mat: MaterialSystem,
    qd: QdParams,
    drive: DriveField,
    cm: CouplingMatrix,
    phi_mode: str = "effective",
) -> MediatedParams:
    """Mediated parameters of the two dots for a given drive.

    Parameters
    ----------
    phi_mode : {"effective", "bare"}
        Where the inter-laser phase is applied.  "effective" sets
        lambda~_2 = lambda~_1 * e^{i phi} after the chain dressing;
        "bare" phases only the bare dot-2 rate before dressing (the
        full-model convention).

    Raises
    ------
    ContractError
        If the coupling matrix was built for a different chain size or for
        inconsistent kappa/delta.
    """
    if cm.n != geom.n:
        raise ContractError(f"coupling matrix is for n={cm.n}, geometry has n={geom.n}")
    if phi_mode not in ("effective", "bare"):
        raise DomainError(f"unknown phi_mode {phi_mode!r}")
    couplings = bare_couplings(geom, qd, mat)
    pole = complex_pole(mat, qd, drive.omega)
    if abs(cm.delta - pole.delta) > 1e-9 * abs(pole.delta):
        raise ContractError(
            f"coupling matrix delta {cm.delta} does not match system delta {pole.delta}"
        )
    if abs(cm.kappa - couplings.kappa) > 1e-9 * abs(couplings.kappa):
        raise ContractError(
            f"coupling matrix kappa {cm.kappa} does not match system kappa {couplings.kappa}"
        )

    g = couplings.g
    d0 = pole.detuning_0
    delta = pole.delta
    abs_delta_sq = abs(delta) ** 2
    eff = effective_couplings(cm, g, drive.omega_m)
    gt, omt = eff.g_tilde, eff.omega_tilde

    v_mat = d0 * gt.real - 0.5 * mat.gamma_0 * gt.imag
    u_mat = d0 * gt.imag + 0.5 * mat.gamma_0 * gt.real

    g1, g2 = _bare_coupling_vectors(geom.n, g)
    dwt1 = pole.detuning_1 - (g1 @ v_mat[0]) / abs_delta_sq
    dwt2 = pole.detuning_2 - (g2 @ v_mat[1]) / abs_delta_sq
    gamt1 = qd.gamma_i + 2.0 * (g1 @ u_mat[0]) / abs_delta_sq
    gamt2 = qd.gamma_i + 2.0 * (g2 @ u_mat[1]) / abs_delta_sq

    lt1 = drive.lambda_1 + 1j * (g1 @ omt) / delta
    if phi_mode == "effective":
        lt2 = lt1 * complex(math.cos(drive.phi), math.sin(drive.phi))
    else:
        lt2 = drive.lambda_2 + 1j * (g2 @ omt) / delta

    g_coh = (g1 @ v_mat[1]) / abs_delta_sq
    gamma_diss = 2.0 * (g1 @ u_mat[1]) / abs_delta_sq

    return MediatedParams(
        n=geom.n,
        omega=drive.omega,
        delta_omega_tilde_1=float(dwt1),
        delta_omega_tilde_2=float(dwt2),
        gamma_tilde_1=float(gamt1),
        gamma_tilde_2=float(gamt2),
        lambda_tilde_1=complex(lt1),
        lambda_tilde_2=complex(lt2),
        g_coh=float(g_coh),
        gamma_diss=float(gamma_diss),
        g_tilde=gt,
        omega_tilde=omt,
        v_mat=v_mat,
        u_mat=u_mat,
    )


@dataclass(frozen=True)
class DickeParams:
    """Collective (Dicke-basis) parameters of the mediated two-dot system.

    e_plus/e_minus are the diagonal energies of the symmetric and
    antisymmetric single-excitation states, (dw1+dw2)/2 -/+ g_coh (the
    coupling term enters with a minus sign for the symmetric state).
    gamma_s/gamma_a = gamma~ +/- Gamma12 are the collective decay rates
    and omega_s/omega_a = (lambda~_1 +/- lambda~_2)/sqrt(2) the collective
    drive rates.
    """

    e_plus: float
    e_minus: float
    delta_plus: float
    delta_minus: float
    omega_s: complex
    omega_a: complex
    gamma_s: float
    gamma_a: float
    gamma_tilde: float


def dicke_params(mp: MediatedParams) -> DickeParams:
    """Transform mediated parameters to the Dicke basis."""
    davg = 0.5 * (mp.delta_omega_tilde_1 + mp.delta_omega_tilde_2)
    dmin = 0.5 * (mp.delta_omega_tilde_1 - mp.delta_omega_tilde_2)
    gavg = 0.5 * (mp.gamma_tilde_1 + mp.gamma_tilde_2)
    return DickeParams(
        e_plus=davg - mp.g_coh,
        e_minus=davg + mp.g_coh,
        delta_plus=davg,
        delta_minus=dmin,
        omega_s=(mp.lambda_tilde_1 + mp.lambda_tilde_2) / SQRT2,
        omega_a=(mp.lambda_tilde_1 - mp.lambda_tilde_2) / SQRT2,
        gamma_s=gavg + mp.gamma_diss,
        gamma_a=gavg - mp.gamma_diss,
        gamma_tilde=gavg,
    )


@dataclass(frozen=True)
class SpectrumPoint:
    """One row of a decay-rate spectrum."""

    omega: float
    gamma_s: float
    gamma_a: float
    gamma_tilde: float
    g_coh: float
    gamma_diss: float


def decay_spectrum(
    omega_grid,
    geom: ArrayGeometry,
    mat: MaterialSystem,
    qd: QdParams,
) -> list[SpectrumPoint]:
    """Collective decay rates and mediated couplings across a frequency grid.

    The mediated rates are independent of the drive intensity, so the
    spectrum is computed at zero drive.  The grid must be non-empty and
    strictly increasing.
    """
    omegas = np.asarray(omega_grid, dtype=float)
    if omegas.size == 0:
        raise ContractError("frequency grid is empty")
    if omegas.size > 1 and not np.all(np.diff(omegas) > 0):
        raise ContractError("frequency grid must be strictly increasing")
    couplings = bare_couplings(geom, qd, mat)
    rows = []
    for omega in omegas:
        pole = complex_pole(mat, qd, float(omega))
        cm = build_coupling_matrix(geom.n, couplings.kappa, pole.delta)
        drive = drive_rates(0.0, mat, qd, float(omega))
        mp = mediated_params(geom, mat, qd, drive, cm)
        dk = dicke_params(mp)
        rows.append(
            SpectrumPoint(
                omega=float(omega),
                gamma_s=dk.gamma_s,
                gamma_a=dk.gamma_a,
                gamma_tilde=dk.gamma_tilde,
                g_coh=mp.g_coh,
                gamma_diss=mp.gamma_diss,
            )
        )
    return rows
