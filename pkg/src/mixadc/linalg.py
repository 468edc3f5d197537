"""Small dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` complex arrays.  Functions accept a leading
stack of matrices where that is useful (``hermitian_solve``), so that a
whole population of candidate allocations can be evaluated in one call.
"""

import numpy as np

HERMITIAN_TOL = 1e-10
PIVOT_TOL = 1e-14


class LinalgError(ValueError):
    """Base class for numerical errors raised by this package."""


class NotHermitian(LinalgError):
    pass


class Singular(LinalgError):
    pass


class NotPositiveDefinite(LinalgError):
    pass


class EmptyMatrix(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


def as_cmatrix(a):
    """Return ``a`` as a finite 2-D complex128 array.

    Raises
    ------
    EmptyMatrix
        If either dimension is zero.
    ValueError
        If the input is not 2-D or holds NaN/Inf entries.
    """
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {m.shape}")
    if m.size == 0:
        raise EmptyMatrix(f"matrix has zero dimension {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def hermitian_solve(a, b):
    """Solve ``a @ x = b`` for Hermitian positive-definite ``a``.

    Both arguments may carry leading batch dimensions, which broadcast as in
    ``numpy.linalg.solve``.  The factorization is a Cholesky decomposition
    followed by two triangular solves.

    Parameters
    ----------
    a : array_like, shape (..., N, N)
        Hermitian positive-definite matrix (or stack).
    b : array_like, shape (..., N, M)
        Right-hand side.

    Returns
    -------
    numpy.ndarray, shape (..., N, M)

    Raises
    ------
    NotHermitian
        If ``max |a - a^H| > 1e-10``.
    Singular
        If a Cholesky pivot falls below 1e-14 in magnitude.
    NotPositiveDefinite
        If the factorization breaks down.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"a must be square, got shape {a.shape}")
    if b.ndim < 2 or b.shape[-2] != a.shape[-1]:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} do not align")
    asym = np.max(np.abs(a - np.conj(np.swapaxes(a, -1, -2))))
    if asym > HERMITIAN_TOL:
        raise NotHermitian(f"max |A - A^H| = {asym:.3e}")
    # symmetrize to remove rounding dust before factoring
    a = 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from None
    pivots = np.abs(np.diagonal(chol, axis1=-2, axis2=-1)) ** 2
    if np.min(pivots) < PIVOT_TOL:
        raise Singular(f"pivot magnitude {np.min(pivots):.3e} below {PIVOT_TOL}")
    y = np.linalg.solve(chol, b)
    return np.linalg.solve(np.conj(np.swapaxes(chol, -1, -2)), y)


def condition_number(m):
    """2-norm condition number ``sigma_max / sigma_min``.

    Returns ``inf`` when the smallest singular value is below 1e-300.
    """
    m = as_cmatrix(m)
    s = np.linalg.svd(m, compute_uv=False)
    if s[-1] < 1e-300:
        return float("inf")
    return float(s[0] / s[-1])


def gaussian_cmatrix(rows, cols, variance=1.0, seed=None):
    """Draw an i.i.d. circularly-symmetric complex Gaussian matrix.

    Each entry has total variance ``variance`` split evenly between its real
    and imaginary parts.  ``seed`` may be an int, a ``SeedSequence`` or a
    ``numpy.random.Generator``.
    """
    if rows < 1 or cols < 1:
        raise EmptyMatrix(f"invalid dimensions ({rows}, {cols})")
    if variance <= 0:
        raise ValueError("variance must be positive")
    rng = np.random.default_rng(seed)
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal((rows, cols))
                    + 1j * rng.standard_normal((rows, cols)))


def random_unitary(n, seed=None):
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    g = gaussian_cmatrix(n, n, 1.0, seed)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
