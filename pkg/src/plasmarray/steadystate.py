"""Effective two-dot master equation: steady state and entanglement.

The density matrix lives in the computational basis {|0> = gg, |1> = eg,
|2> = ge, |3> = ee}.  The generator combines the effective Hamiltonian
(detunings, complex drives, coherent coupling G12) with a collective
dissipator whose rate matrix has the Purcell-broadened rates gamma~_i on
the diagonal and the mediated rate Gamma12 off-diagonal:

    L rho = sum_ij Gamma_ij/2 (2 s_j rho s_i^+ - {s_i^+ s_j, rho}).

The stationarity condition is solved as a 16 x 16 real linear system over
x = [rho_ii (4), Re rho_ij (6), Im rho_ij (6)]; the redundant rho_00 row
is replaced by the trace constraint, giving rhs b = e_0.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .effective import MediatedParams
from .exceptions import DomainError, NumericalError

__all__ = [
    "SIGMA_1",
    "SIGMA_2",
    "TwoQubitState",
    "EvolutionMatrix",
    "DickePopulations",
    "build_effective_generator",
    "solve_steady",
    "steady_state",
    "concurrence",
    "dicke_populations",
    "concurrence_x_approx",
]

logger = logging.getLogger(__name__)

# lowering operators in the computational ordering {gg, eg, ge, ee}
SIGMA_1 = np.zeros((4, 4), dtype=complex)
SIGMA_1[0, 1] = 1.0
SIGMA_1[2, 3] = 1.0
SIGMA_2 = np.zeros((4, 4), dtype=complex)
SIGMA_2[0, 2] = 1.0
SIGMA_2[1, 3] = 1.0
_N_1 = SIGMA_1.conj().T @ SIGMA_1
_N_2 = SIGMA_2.conj().T @ SIGMA_2

# rows are the Dicke bras <g|, <s|, <a|, <e| in the computational basis
_DICKE_ROTATION = np.array(
    [
        [1, 0, 0, 0],
        [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0],
        [0, 1 / math.sqrt(2), -1 / math.sqrt(2), 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

# (sigma_y x sigma_y) in the computational ordering; invariant under the
# eg <-> ge relabeling, so the standard anti-diagonal form applies
_YY = np.zeros((4, 4))
_YY[0, 3] = -1.0
_YY[1, 2] = 1.0
_YY[2, 1] = 1.0
_YY[3, 0] = -1.0

_OFFDIAG_PAIRS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _real_basis() -> list[np.ndarray]:
    basis = []
    for i in range(4):
        b = np.zeros((4, 4), dtype=complex)
        b[i, i] = 1.0
        basis.append(b)
    for (i, j) in _OFFDIAG_PAIRS:
        b = np.zeros((4, 4), dtype=complex)
        b[i, j] = 1.0
        b[j, i] = 1.0
        basis.append(b)
    for (i, j) in _OFFDIAG_PAIRS:
        b = np.zeros((4, 4), dtype=complex)
        b[i, j] = 1.0j
        b[j, i] = -1.0j
        basis.append(b)
    return basis


_BASIS = _real_basis()


def _coords(rho: np.ndarray) -> np.ndarray:
    x = np.empty(16)
    for i in range(4):
        x[i] = rho[i, i].real
    for k, (i, j) in enumerate(_OFFDIAG_PAIRS):
        x[4 + k] = rho[i, j].real
        x[10 + k] = rho[i, j].imag
    return x


def _from_coords(x: np.ndarray) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for i in range(4):
        rho[i, i] = x[i]
    for k, (i, j) in enumerate(_OFFDIAG_PAIRS):
        rho[i, j] = x[4 + k] + 1j * x[10 + k]
        rho[j, i] = x[4 + k] - 1j * x[10 + k]
    return rho


# positivity tolerance: eigenvalues in [-POSITIVITY_TOL, 0) are clipped
# with a logged warning, anything below is a hard error
POSITIVITY_TOL = 1e-9


@dataclass(frozen=True)
class TwoQubitState:
    """4 x 4 Hermitian unit-trace density matrix of the two dots."""

    rho: np.ndarray
    basis: str = "computational"

    def validate(self, positivity_tol: float = POSITIVITY_TOL) -> "TwoQubitState":
        """Check Hermiticity, unit trace and positivity (up to tolerance)."""
        rho = self.rho
        herm = float(np.max(np.abs(rho - rho.conj().T)))
        if herm > 1e-10:
            raise NumericalError(f"state is not Hermitian: max asymmetry {herm:.3e}")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > 1e-10:
            raise NumericalError(f"state trace deviates from 1 by {abs(tr - 1.0):.3e}")
        evals = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        if evals.min() < -positivity_tol:
            raise NumericalError(
                f"state has negative eigenvalue {evals.min():.3e} "
                f"below tolerance {positivity_tol:.1e}"
            )
        if evals.min() < 0:
            logger.warning(
                "clipping steady-state eigenvalue %.3e to 0 (round-off)", evals.min()
            )
        return self

    def in_dicke_basis(self) -> np.ndarray:
        """Density matrix rotated to the Dicke basis {g, s, a, e}."""
        w = _DICKE_ROTATION
        return w @ self.rho @ w.conj().T


@dataclass(frozen=True)
class EvolutionMatrix:
    """Real 16 x 16 stationarity system M x = b.

    m_raw is the generator before the trace-row replacement; it is kept
    for residual checks (a steady state satisfies m_raw @ x = 0).
    context names the collective rates for diagnostics.
    """

    m: np.ndarray
    b: np.ndarray
    m_raw: np.ndarray
    context: str = ""


def _generator_apply(mp: MediatedParams, rho: np.ndarray) -> np.ndarray:
    h = mp.delta_omega_tilde_1 * _N_1 + mp.delta_omega_tilde_2 * _N_2
    h = h - (mp.lambda_tilde_1 * SIGMA_1.conj().T + np.conj(mp.lambda_tilde_1) * SIGMA_1)
    h = h - (mp.lambda_tilde_2 * SIGMA_2.conj().T + np.conj(mp.lambda_tilde_2) * SIGMA_2)
    h = h - mp.g_coh * (SIGMA_1.conj().T @ SIGMA_2 + SIGMA_2.conj().T @ SIGMA_1)
    out = -1j * (h @ rho - rho @ h)
    rates = ((mp.gamma_tilde_1, 0, 0), (mp.gamma_diss, 0, 1),
             (mp.gamma_diss, 1, 0), (mp.gamma_tilde_2, 1, 1))
    sig = (SIGMA_1, SIGMA_2)
    for rate, i, j in rates:
        sd_i = sig[i].conj().T
        out = out + 0.5 * rate * (
            2.0 * sig[j] @ rho @ sd_i - sd_i @ sig[j] @ rho - rho @ sd_i @ sig[j]
        )
    return out


def build_effective_generator(mp: MediatedParams) -> EvolutionMatrix:
    """Assemble the real stationarity system for the mediated parameters."""
    m_raw = np.empty((16, 16))
    for k, basis_el in enumerate(_BASIS):
        m_raw[:, k] = _coords(_generator_apply(mp, basis_el))
    m = m_raw.copy()
    m[0, :] = 0.0
    m[0, :4] = 1.0
    b = np.zeros(16)
    b[0] = 1.0
    gavg = 0.5 * (mp.gamma_tilde_1 + mp.gamma_tilde_2)
    context = (
        f"n={mp.n}, gamma_s={gavg + mp.gamma_diss:.6e}, "
        f"gamma_a={gavg - mp.gamma_diss:.6e}, "
        f"|omega_s|={abs(mp.lambda_tilde_1 + mp.lambda_tilde_2) / math.sqrt(2):.6e}, "
        f"|omega_a|={abs(mp.lambda_tilde_1 - mp.lambda_tilde_2) / math.sqrt(2):.6e}"
    )
    return EvolutionMatrix(m=m, b=b, m_raw=m_raw, context=context)


def solve_steady(em: EvolutionMatrix, check_condition: bool = True) -> TwoQubitState:
    """Solve M x = b and reconstruct the density matrix.

    Raises
    ------
    NumericalError
        If M is singular (for example a dark collective channel that is
        neither decaying nor driven) or the reconstructed state violates
        the TwoQubitState invariants.
    """
    try:
        x = np.linalg.solve(em.m, em.b)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            "stationarity system is singular (a collective channel is "
            f"neither decaying nor driven): {em.context}"
        ) from exc
    if check_condition:
        cond = np.linalg.cond(em.m)
        if cond > 1e12:
            warnings.warn(
                f"stationarity system is ill-conditioned (cond = {cond:.3e}); "
                f"the steady state may be inaccurate ({em.context})",
                RuntimeWarning,
                stacklevel=2,
            )
    rho = _from_coords(x)
    state = TwoQubitState(rho=rho)
    try:
        state.validate()
    except NumericalError as exc:
        raise NumericalError(f"{exc}; degenerate parameter set: {em.context}") from exc
    residual = float(np.linalg.norm(em.m_raw @ x))
    norm = float(np.linalg.norm(em.m_raw))
    if residual > 1e-10 * max(norm, 1.0):
        raise NumericalError(
            f"steady state violates stationarity: residual {residual:.3e} "
            f"vs generator norm {norm:.3e} ({em.context})"
        )
    return state


def steady_state(mp: MediatedParams, check_condition: bool = False) -> TwoQubitState:
    """Steady state for the given mediated parameters (one-call form)."""
    return solve_steady(build_effective_generator(mp), check_condition=check_condition)


def concurrence(state) -> float:
    """Two-qubit concurrence of a state or 4 x 4 density matrix.

    Eigenvalues of rho * (Y x Y) rho^* (Y x Y) are computed with a general
    complex eigensolver, clipped at zero, square-rooted and sorted in
    descending order; C = max(0, l1 - l2 - l3 - l4).
    """
    rho = np.asarray(state.rho if isinstance(state, TwoQubitState) else state, dtype=complex)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    rho_tilde = _YY @ rho.conj() @ _YY
    try:
        evals = np.linalg.eigvals(rho @ rho_tilde)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NumericalError(f"concurrence eigensolve failed: {exc}") from exc
    lam = np.sqrt(np.clip(evals.real, 0.0, None))
    lam[::-1].sort()
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass(frozen=True)
class DickePopulations:
    """Populations in the Dicke basis plus the s-a coherence."""

    rho_gg: float
    rho_ss: float
    rho_aa: float
    rho_ee: float
    rho_sa: complex


def dicke_populations(state: TwoQubitState) -> DickePopulations:
    """Rotate to the Dicke basis and read off populations and rho_sa."""
    rd = state.in_dicke_basis()
    return DickePopulations(
        rho_gg=float(rd[0, 0].real),
        rho_ss=float(rd[1, 1].real),
        rho_aa=float(rd[2, 2].real),
        rho_ee=float(rd[3, 3].real),
        rho_sa=complex(rd[1, 2]),
    )


def concurrence_x_approx(pops: DickePopulations) -> float:
    """X-state closed form for the concurrence in the Dicke basis.

    C ~ max(0, sqrt((rho_ss - rho_aa)^2 + 4 Im(rho_sa)^2)
               - 2 sqrt(rho_gg * rho_ee))

    Exact for states that are X-shaped in the Dicke basis with no
    ground-biexciton coherence; an approximation otherwise.
    """
    term = math.sqrt(
        (pops.rho_ss - pops.rho_aa) ** 2 + 4.0 * pops.rho_sa.imag**2
    )
    return max(0.0, term - 2.0 * math.sqrt(max(pops.rho_gg, 0.0) * max(pops.rho_ee, 0.0)))
