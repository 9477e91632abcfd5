"""Small dense Hermitian linear algebra for the Wiener predictor.

Matrices here are at most a few tens of rows, so plain loops over numpy
arrays are fine. ``numpy.linalg`` is deliberately not used so that the test
suite can use it as an independent oracle.
"""

import numpy as np

RIDGE_SCALE = 1e-10


class DecompositionError(np.linalg.LinAlgError):
    """Raised when a Cholesky pivot is not positive.

    Attributes
    ----------
    pivot : int
        Zero-based index of the failing pivot.
    value : float
        The offending pivot value.
    """

    def __init__(self, pivot, value):
        super().__init__(f"matrix not positive definite: pivot {pivot} is {value:.3e}")
        self.pivot = pivot
        self.value = value


def as_hermitian(m, atol=1e-12):
    """Validate and return `m` as a complex square Hermitian array."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.conj().T)) > atol * scale:
        raise ValueError("matrix is not Hermitian")
    return m


def ridge(m, scale=RIDGE_SCALE):
    """Add ``scale * trace(m) / dim`` to the diagonal of `m`."""
    m = np.array(m, dtype=complex)
    eps = scale * np.trace(m).real / m.shape[0]
    m[np.diag_indices_from(m)] += eps
    return m


def cholesky(m):
    """Lower-triangular ``L`` with positive real diagonal and ``L @ L^H == m``.

    Raises
    ------
    DecompositionError
        If a pivot is not strictly positive.
    """
    m = as_hermitian(m)
    dim = m.shape[0]
    low = np.zeros_like(m)
    for j in range(dim):
        pivot = m[j, j].real - np.sum(np.abs(low[j, :j]) ** 2)
        if not pivot > 0.0:
            raise DecompositionError(j, pivot)
        d = np.sqrt(pivot)
        low[j, j] = d
        for i in range(j + 1, dim):
            low[i, j] = (m[i, j] - np.dot(low[i, :j], low[j, :j].conj())) / d
    return low


def cholesky_psd(m, rtol=1e-12):
    """Cholesky factor of a positive *semi*-definite matrix.

    Pivots below ``rtol * max(diag)`` are treated as exact zeros and their
    column is dropped, so perfectly correlated components come out
    bit-identical when sampled through the factor.
    """
    m = as_hermitian(m)
    dim = m.shape[0]
    low = np.zeros_like(m)
    cutoff = rtol * float(np.max(m.diagonal().real))
    for j in range(dim):
        pivot = m[j, j].real - np.sum(np.abs(low[j, :j]) ** 2)
        if pivot < -cutoff * 1e3:
            raise DecompositionError(j, pivot)
        if pivot <= cutoff:
            continue
        d = np.sqrt(pivot)
        low[j, j] = d
        for i in range(j + 1, dim):
            low[i, j] = (m[i, j] - np.dot(low[i, :j], low[j, :j].conj())) / d
    return low


def _forward(low, b):
    x = np.zeros(len(b), dtype=complex)
    for i in range(len(b)):
        x[i] = (b[i] - np.dot(low[i, :i], x[:i])) / low[i, i]
    return x


def _backward(low, y):
    # solves L^H x = y
    n = len(y)
    x = np.zeros(n, dtype=complex)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - np.dot(low[i + 1:, i].conj(), x[i + 1:])) / low[i, i].real
    return x


def solve_hermitian(m, rhs):
    """Solve ``m x = rhs`` for Hermitian positive definite `m`."""
    low = cholesky(m)
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape != (low.shape[0],):
        raise ValueError(f"rhs has shape {rhs.shape}, expected ({low.shape[0]},)")
    return _backward(low, _forward(low, rhs))


def quadratic_form(m, v):
    """``v^H m^{-1} v``, real and clamped at zero."""
    low = cholesky(m)
    v = np.asarray(v, dtype=complex)
    if v.shape != (low.shape[0],):
        raise ValueError(f"vector has shape {v.shape}, expected ({low.shape[0]},)")
    y = _forward(low, v)
    return max(0.0, float(np.sum(np.abs(y) ** 2)))
