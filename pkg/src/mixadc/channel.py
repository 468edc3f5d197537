"""Channel realizations: generation, measurement and a text file format."""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .linalg import as_cmatrix, condition_number, gaussian_cmatrix, random_unitary

MODEL_TAGS = ("rayleigh", "synthetic-ill-conditioned", "file")
DEFAULT_KAPPA = 1000.0


class BadKappa(ValueError):
    pass


class FormatError(ValueError):
    pass


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ChannelMatrix:
    """An N x N complex channel with the seed and tag it came from.

    ``kappa`` is measured on construction when not given, and checked against
    the matrix when it is.
    """

    h: np.ndarray
    seed: int | None = None
    model_tag: str = "file"
    kappa: float = field(default=None)

    def __post_init__(self):
        h = as_cmatrix(self.h)
        if h.shape[0] != h.shape[1]:
            raise DimensionError(f"channel must be square, got {h.shape}")
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"unknown model_tag {self.model_tag!r}")
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "h", h)
        measured = condition_number(h)
        if self.kappa is None:
            object.__setattr__(self, "kappa", measured)
        elif not np.isclose(self.kappa, measured, rtol=1e-6):
            raise ValueError(f"kappa {self.kappa} does not match measured {measured}")

    @property
    def n(self):
        return self.h.shape[0]


def gen_rayleigh(n, seed):
    """Rich-scattering channel with unit-variance CN(0, 1) entries."""
    if n < 1:
        raise DimensionError("n must be >= 1")
    return ChannelMatrix(gaussian_cmatrix(n, n, 1.0, seed), seed=seed,
                         model_tag="rayleigh")


def gen_ill_conditioned(n, kappa_target=DEFAULT_KAPPA, seed=None):
    """Channel ``U diag(s) V^H`` with a prescribed condition number.

    ``U`` and ``V`` are Haar unitaries and ``s`` decays geometrically from
    its largest to its smallest value over a ratio of ``kappa_target``.  The
    result is scaled so that the mean squared entry magnitude is exactly 1,
    matching the energy of a unit-variance Rayleigh channel.
    """
    if n < 2:
        raise DimensionError("n must be >= 2")
    if not kappa_target >= 1:
        raise BadKappa(f"kappa_target must be >= 1, got {kappa_target}")
    rng = np.random.default_rng(seed)
    u = random_unitary(n, rng)
    v = random_unitary(n, rng)
    s = kappa_target ** (-np.arange(n) / (n - 1))
    s *= n / np.sqrt(np.sum(s ** 2))
    h = (u * s) @ v.conj().T
    return ChannelMatrix(h, seed=seed, model_tag="synthetic-ill-conditioned")


def save_channel(ch, path):
    """Write ``ch`` as a JSON document with 17-significant-digit entries."""
    rows = []
    for row in ch.h:
        pairs = ", ".join(f"[{z.real:.17e}, {z.imag:.17e}]" for z in row)
        rows.append(f"    [{pairs}]")
    seed = "null" if ch.seed is None else str(int(ch.seed))
    text = (
        "{\n"
        f'  "n": {ch.n},\n'
        f'  "seed": {seed},\n'
        f'  "model_tag": {json.dumps(ch.model_tag)},\n'
        '  "h": [\n' + ",\n".join(rows) + "\n  ]\n}\n"
    )
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def load_channel(path):
    """Read a channel file written by :func:`save_channel` (or by hand)."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    if not isinstance(doc, dict) or "h" not in doc:
        raise FormatError(f"{path}: missing 'h' field")
    try:
        arr = np.asarray(doc["h"], dtype=float)
    except (TypeError, ValueError):
        raise FormatError(f"{path}: 'h' is not a rectangular array of numbers") from None
    if arr.ndim != 3 or arr.shape[-1] != 2:
        raise FormatError(f"{path}: 'h' must be rows of [re, im] pairs")
    h = arr[..., 0] + 1j * arr[..., 1]
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"{path}: channel is {h.shape[0]}x{h.shape[1]}, not square")
    n = doc.get("n", h.shape[0])
    if n != h.shape[0]:
        raise DimensionError(f"{path}: n={n} but h has {h.shape[0]} rows")
    tag = doc.get("model_tag", "file")
    if tag not in MODEL_TAGS:
        raise FormatError(f"{path}: unknown model_tag {tag!r}")
    return ChannelMatrix(h, seed=doc.get("seed"), model_tag=tag)
