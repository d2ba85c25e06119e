"""Dense complex linear algebra: shifted determinants, trace powers, eigenvalues."""

import numpy as np

# Hard cap on matrix dimension; assemblies beyond this are a config mistake.
MAX_DIM = 2048

_LOG_HUGE = 709.0  # log of the largest finite double, minus slack


class DetOverflowError(ArithmeticError):
    """|det(I + zA)| exceeded the double-precision range."""


def as_complex_matrix(a) -> np.ndarray:
    """Coerce input to a square complex matrix with finite entries."""
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got shape {m.shape}")
    n = m.shape[0]
    if n < 1:
        raise ValueError("matrix dimension must be at least 1")
    if n > MAX_DIM:
        raise ValueError(f"matrix dimension {n} exceeds MAX_DIM={MAX_DIM}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def det_shifted(a, z) -> complex:
    """det(I + z*A) via LU with partial pivoting.

    The determinant is accumulated as log-magnitude plus phase so that
    intermediate products cannot overflow; only a final value outside the
    double range raises DetOverflowError.  det_shifted(a, 0) == 1 exactly.
    """
    m = as_complex_matrix(a)
    z = complex(z)
    if z == 0:
        return 1.0 + 0.0j
    shifted = np.eye(m.shape[0], dtype=np.complex128) + z * m
    phase, logabs = np.linalg.slogdet(shifted)
    if phase == 0:
        return 0.0 + 0.0j
    if logabs > _LOG_HUGE:
        raise DetOverflowError(f"|det| ~ exp({logabs:.4g}) is out of double range")
    return complex(phase * np.exp(logabs))


def trace_powers(a, jmax: int) -> np.ndarray:
    """[tr(A), tr(A^2), ..., tr(A^jmax)] by repeated multiplication."""
    m = as_complex_matrix(a)
    if jmax < 1:
        raise ValueError("jmax must be at least 1")
    out = np.empty(jmax, dtype=np.complex128)
    p = m
    out[0] = np.trace(p)
    for j in range(1, jmax):
        p = p @ m
        out[j] = np.trace(p)
    return out


def eigenvalues(a) -> np.ndarray:
    """All eigenvalues, sorted by nonincreasing modulus.

    Backed by LAPACK's balanced Hessenberg reduction with shifted QR;
    non-convergence surfaces as LinAlgError rather than silent garbage.
    The contract is solver-agnostic: eigenvalue sums must reproduce
    trace_powers and the product must reproduce det_shifted.
    """
    m = as_complex_matrix(a)
    lam = np.linalg.eigvals(m)
    order = np.argsort(-np.abs(lam), kind="stable")
    return lam[order]
