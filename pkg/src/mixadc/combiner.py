"""Quantization-aware MMSE combiner and its closed-form MSE.

Signal chain: ``r = sqrt(p_u) H x + n``, ``z = W_alpha r + n_q`` and the
estimate ``y = C^H z``, with ``E{x x^H} = I`` and ``E{n n^H} = sigma2 I``.
The combiner is ``C = R_zz^{-1} R_zx`` and the cost ``J(b)`` is the trace
of the resulting error covariance.

The ``*_many`` functions evaluate a whole population of allocations against
one channel at once.  The single-allocation functions route through the same
stacked code, so ``cost_j(h, b) == cost_j_many(h, [b])[0]`` bit for bit.
"""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelMatrix
from .linalg import DimensionMismatch, NotPositiveDefinite, hermitian_solve
from .quantization import alphas, as_bits


def _as_h(h):
    if isinstance(h, ChannelMatrix):
        return h.h
    h = np.asarray(h, dtype=np.complex128)
    if h.ndim == 0:
        h = h.reshape(1, 1)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"channel must be square, got {h.shape}")
    return h


def _alpha_stack(bits_list, n):
    a = np.array([alphas(b) for b in bits_list], dtype=float)
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionMismatch(f"allocations do not match an {n}-path channel")
    return a


def _check_power(p_u, sigma2):
    if p_u <= 0 or sigma2 <= 0:
        raise ValueError("p_u and sigma2 must be positive")


def _stack_zx(h, a, p_u):
    return np.sqrt(p_u) * a[:, :, None] * h[None, :, :]


def _stack_zz(h, a, p_u, sigma2):
    hh = p_u * (h @ h.conj().T)
    d = hh.diagonal().real + sigma2
    r_zz = a[:, :, None] * a[:, None, :] * hh[None, :, :]
    diag = sigma2 * a ** 2 + a * (1.0 - a) * d
    idx = np.arange(h.shape[0])
    r_zz[:, idx, idx] = (a ** 2 * hh.diagonal().real + diag)
    return r_zz


def _stack_mmse(h, a, p_u, sigma2):
    r_zx = _stack_zx(h, a, p_u)
    r_zz = _stack_zz(h, a, p_u, sigma2)
    c = hermitian_solve(r_zz, r_zx)
    explained = np.einsum("kij,kij->k", r_zx.conj(), c).real
    mse = np.maximum(h.shape[0] - explained, 0.0)
    return r_zz, r_zx, c, mse


def cross_cov_zx(h, bits, p_u):
    """``R_zx = E{z x^H} = sqrt(p_u) W_alpha H``."""
    h = _as_h(h)
    if p_u <= 0:
        raise ValueError("p_u must be positive")
    return _stack_zx(h, _alpha_stack([as_bits(bits)], h.shape[0]), p_u)[0]


def cov_zz(h, bits, p_u, sigma2=1.0):
    """``R_zz = p_u W H H^H W + sigma2 W W + R_nq``, checked positive-definite."""
    h = _as_h(h)
    _check_power(p_u, sigma2)
    r_zz = _stack_zz(h, _alpha_stack([as_bits(bits)], h.shape[0]), p_u, sigma2)[0]
    try:
        np.linalg.cholesky(r_zz)
    except np.linalg.LinAlgError:
        raise NotPositiveDefinite("R_zz is not positive-definite") from None
    return r_zz


@dataclass(frozen=True)
class CombinerResult:
    """Combiner ``c`` (applied as ``c^H z``), its MSE and the covariances used."""

    c: np.ndarray
    mse: float
    r_zz: np.ndarray
    r_zx: np.ndarray


def mmse_combiner(h, bits, p_u, sigma2=1.0):
    h = _as_h(h)
    _check_power(p_u, sigma2)
    a = _alpha_stack([as_bits(bits)], h.shape[0])
    r_zz, r_zx, c, mse = _stack_mmse(h, a, p_u, sigma2)
    return CombinerResult(c=c[0], mse=float(mse[0]), r_zz=r_zz[0], r_zx=r_zx[0])


def cost_j(h, bits, p_u, sigma2=1.0):
    """Closed-form ``E||C^H z - x||^2`` for the MMSE combiner of ``bits``.

    Summed over all N streams, so ``0 <= J <= N``.
    """
    return mmse_combiner(h, bits, p_u, sigma2).mse


def cost_j_many(h, bits_list, p_u, sigma2=1.0):
    """Vector of :func:`cost_j` values, one per allocation in ``bits_list``."""
    h = _as_h(h)
    _check_power(p_u, sigma2)
    bits_list = [as_bits(b) for b in bits_list]
    if not bits_list:
        return np.zeros(0)
    a = _alpha_stack(bits_list, h.shape[0])
    return _stack_mmse(h, a, p_u, sigma2)[3]
