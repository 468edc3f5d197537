"""Additive quantization noise model (AQNM) with per-path resolutions.

An ADC with ``b`` bits on each of I and Q is replaced by the linear
surrogate ``z = alpha * r + n_q`` where ``alpha = 1 - beta(b)`` and ``n_q``
is Gaussian, uncorrelated with ``r``.  A bit allocation is any sequence of
per-path resolutions; :data:`INF` marks an ideal (unquantized) path.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DimensionMismatch

INF = math.inf

# Non-uniform MMSE quantizer distortion for 1..5 bits.
BETA_TABLE = {1: 0.3634, 2: 0.1175, 3: 0.03454, 4: 0.009497, 5: 0.002499}
HIGH_RES_COEF = math.pi * math.sqrt(3.0) / 2.0


class BadResolution(ValueError):
    pass


def _check_resolution(b):
    if b == INF:
        return b
    if isinstance(b, (bool, np.bool_)) or int(b) != b or b < 1:
        raise BadResolution(f"resolution must be an integer >= 1 or INF, got {b!r}")
    return int(b)


def beta(b):
    """Normalized quantization distortion for a ``b``-bit ADC.

    Tabulated for 1..5 bits, ``(pi*sqrt(3)/2) * 2**(-2b)`` above that, and
    exactly zero for :data:`INF`.
    """
    b = _check_resolution(b)
    if b == INF:
        return 0.0
    if b in BETA_TABLE:
        return BETA_TABLE[b]
    return HIGH_RES_COEF * 2.0 ** (-2 * b)


def as_bits(bits):
    """Validate an allocation and return it as a tuple."""
    out = tuple(_check_resolution(b) for b in bits)
    if not out:
        raise BadResolution("allocation is empty")
    return out


def betas(bits):
    return np.array([beta(b) for b in as_bits(bits)])


def alphas(bits):
    return 1.0 - betas(bits)


def alpha_matrix(bits):
    """Diagonal gain matrix ``W_alpha(b) = diag(1 - beta(b_i))``."""
    return np.diag(alphas(bits))


def _rx_power(h, p_u, sigma2):
    # diagonal of the received-signal covariance p_u H H^H + sigma2 I
    return p_u * np.sum(np.abs(h) ** 2, axis=1) + sigma2


def quant_noise_var(h, bits, p_u, sigma2=1.0):
    """Per-path quantization noise variances (diagonal of R_nq)."""
    h = np.asarray(h)
    a = alphas(bits)
    if h.shape != (a.size, a.size):
        raise DimensionMismatch(f"channel {h.shape} vs allocation of length {a.size}")
    if p_u <= 0 or sigma2 <= 0:
        raise ValueError("p_u and sigma2 must be positive")
    return a * (1.0 - a) * _rx_power(h, p_u, sigma2)


def quant_noise_cov(h, bits, p_u, sigma2=1.0):
    """``W_alpha W_(1-alpha) diag(p_u H H^H + sigma2 I)`` as a dense diagonal."""
    return np.diag(quant_noise_var(h, bits, p_u, sigma2))


@dataclass(frozen=True)
class QuantModel:
    w_alpha: np.ndarray
    r_nq: np.ndarray


def quant_model(h, bits, p_u, sigma2=1.0):
    return QuantModel(alpha_matrix(bits), quant_noise_cov(h, bits, p_u, sigma2))


def quantize(r, h, bits, p_u, sigma2, rng):
    """Pass received samples through the AQNM.

    ``r`` is either one length-N vector or an ``(N, S)`` block of S received
    vectors; a fresh noise draw is taken for every column.
    """
    r = np.asarray(r, dtype=np.complex128)
    a = alphas(bits)
    if r.shape[0] != a.size:
        raise DimensionMismatch(f"r has {r.shape[0]} rows, allocation has {a.size}")
    var = quant_noise_var(h, bits, p_u, sigma2)
    scale = np.sqrt(var / 2.0).reshape((-1,) + (1,) * (r.ndim - 1))
    noise = scale * (rng.standard_normal(r.shape) + 1j * rng.standard_normal(r.shape))
    gain = a.reshape(scale.shape)
    return gain * r + noise
