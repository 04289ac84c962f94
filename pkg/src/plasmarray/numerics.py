"""Shared numerical kernels: eigensolves, tridiagonal systems, fits.

The tridiagonal routines exploit the special structure that appears in the
nanoparticle-chain coupling matrix: unit diagonal and one constant complex
off-diagonal value.  The inverse of such a matrix has a closed form in
terms of continuants (the three-term determinant recurrence), which is
what `uniform_tridiagonal_inverse` evaluates in O(n^2) for all entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, NumericalError

__all__ = [
    "eig_general",
    "thomas_solve",
    "continuants",
    "uniform_tridiagonal_inverse",
    "kron_chain",
    "FitResult",
    "fit_exponential_decay",
    "fit_quadratic",
]


def eig_general(m) -> np.ndarray:
    """Eigenvalues of a general square complex matrix (unsorted).

    Raises
    ------
    NumericalError
        If the matrix contains non-finite entries or the QR iteration
        fails to converge.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix contains non-finite entries")
    try:
        return np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NumericalError(f"eigensolver failed to converge: {exc}") from exc


def thomas_solve(sub, diag, sup, rhs) -> np.ndarray:
    """Solve a complex tridiagonal system by the Thomas recurrence.

    Parameters
    ----------
    sub, diag, sup : array_like
        Sub-diagonal (n-1), diagonal (n) and super-diagonal (n-1) entries.
    rhs : array_like
        Right-hand side, length n.
    """
    a = np.asarray(sub, dtype=complex)
    b = np.asarray(diag, dtype=complex).copy()
    c = np.asarray(sup, dtype=complex)
    d = np.asarray(rhs, dtype=complex).copy()
    n = b.size
    if a.size != n - 1 or c.size != n - 1 or d.size != n:
        raise DomainError("inconsistent tridiagonal system sizes")
    scale = np.max(np.abs(b)) or 1.0
    for i in range(1, n):
        if abs(b[i - 1]) < 1e-300 * scale:
            raise NumericalError(f"Thomas pivot underflow at row {i - 1}")
        w = a[i - 1] / b[i - 1]
        b[i] = b[i] - w * c[i - 1]
        d[i] = d[i] - w * d[i - 1]
    x = np.empty(n, dtype=complex)
    if abs(b[-1]) < 1e-300 * scale:
        raise NumericalError("Thomas pivot underflow at last row")
    x[-1] = d[-1] / b[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (d[i] - c[i] * x[i + 1]) / b[i]
    return x


def continuants(n: int, offdiag: complex) -> np.ndarray:
    """Leading principal minors D_0..D_n of the n x n matrix I + x*T.

    T is the path-graph adjacency matrix and x the constant off-diagonal.
    D_k = D_{k-1} - x^2 D_{k-2}, D_0 = D_1 = 1; D_n is det(A).
    """
    d = np.empty(n + 1, dtype=complex)
    d[0] = 1.0
    if n >= 1:
        d[1] = 1.0
    x2 = offdiag * offdiag
    for k in range(2, n + 1):
        d[k] = d[k - 1] - x2 * d[k - 2]
    return d


def uniform_tridiagonal_inverse(n: int, offdiag: complex) -> np.ndarray:
    """Inverse of the symmetric tridiagonal matrix with unit diagonal.

    For A = I + x*T (T the nearest-neighbor adjacency of a chain of n
    sites) the inverse has the closed form

        (A^-1)_ij = (-x)^(j-i) * D_{i-1} * D_{n-j} / D_n,   i <= j,

    with D_k the continuants above.  The cost is O(n^2) and the corner
    element (A^-1)_1n = (-x)^(n-1)/D_n is obtained without cancellation,
    which keeps its exact parity structure (purely real or purely
    imaginary off-diagonal x stays exactly so).

    Raises
    ------
    NumericalError
        If det(A) is below 1e-14 of the continuant scale (near-singular),
        with a condition report in the message.
    """
    if n < 1:
        raise DomainError(f"matrix size must be >= 1, got {n}")
    d = continuants(n, offdiag)
    scale = float(np.max(np.abs(d)))
    if abs(d[n]) < 1e-14 * scale:
        raise NumericalError(
            f"coupling matrix is numerically singular: |det| = {abs(d[n]):.3e}, "
            f"continuant scale = {scale:.3e} (ratio {abs(d[n]) / scale:.3e})"
        )
    k = np.empty((n, n), dtype=complex)
    # powers of (-x) up to n-1
    pow_mx = np.empty(n, dtype=complex)
    pow_mx[0] = 1.0
    for p in range(1, n):
        pow_mx[p] = pow_mx[p - 1] * (-offdiag)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            val = pow_mx[j - i] * d[i - 1] * d[n - j] / d[n]
            k[i - 1, j - 1] = val
            k[j - 1, i - 1] = val
    return k


def kron_chain(ops) -> np.ndarray:
    """Kronecker product of a sequence of dense operators, left to right."""
    out = np.asarray(ops[0])
    for op in ops[1:]:
        out = np.kron(out, np.asarray(op))
    return out


@dataclass(frozen=True)
class FitResult:
    """Least-squares fit summary.

    For model "exponential" the coefficients are (c0, tau) of
    c = c0 * exp(-tau * n) and the residual is the rms in log space.
    For model "quadratic" the coefficients are (a0, a1, a2) of
    y = a0 + a1 x + a2 x^2 and the residual is the rms in y.
    """

    model: str
    coefficients: tuple
    rms_residual: float


def fit_exponential_decay(n_values, c_values) -> FitResult:
    """Fit c = c0 * exp(-tau * n) by linear least squares on (n, ln c)."""
    n_arr = np.asarray(n_values, dtype=float)
    c_arr = np.asarray(c_values, dtype=float)
    if n_arr.size != c_arr.size or n_arr.size < 2:
        raise DomainError("need at least 2 (n, c) points")
    if np.any(c_arr <= 0):
        raise DomainError("exponential fit requires all-positive ordinates")
    design = np.vstack([np.ones_like(n_arr), -n_arr]).T
    coef, _, _, _ = np.linalg.lstsq(design, np.log(c_arr), rcond=None)
    log_c0, tau = coef
    resid = design @ coef - np.log(c_arr)
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult("exponential", (float(np.exp(log_c0)), float(tau)), rms)


def fit_quadratic(x_values, y_values) -> FitResult:
    """Least-squares quadratic y = a0 + a1 x + a2 x^2."""
    x = np.asarray(x_values, dtype=float)
    y = np.asarray(y_values, dtype=float)
    if x.size != y.size or x.size < 3:
        raise DomainError("need at least 3 (x, y) points")
    design = np.vstack([np.ones_like(x), x, x * x]).T
    if np.linalg.matrix_rank(design) < 3:
        raise NumericalError("rank-deficient design matrix (degenerate abscissae)")
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    resid = design @ coef - y
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult("quadratic", tuple(float(c) for c in coef), rms)
