"""Sparsifying frames: analysis/synthesis operators, the sparsity norm and
the soft-thresholding primitive.

Supported frame kinds:

* ``identity`` -- coefficients are the signal itself.
* ``haar-dwt`` / ``db4-dwt`` -- periodized orthonormal discrete wavelet
  transforms (Haar, and the eight-tap Daubechies filter with four vanishing
  moments).  2D signals are transformed separably, rows then columns per
  decomposition level.
* ``unitary-dft`` -- the unitary DFT (1/sqrt(n) normalization both ways);
  the 2D transform is the tensor product of 1D transforms.

All transforms are square and invertible, so coefficient arrays have the
same shape as the signal they came from.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ShapeError
from . import kernels

FRAME_KINDS = ("identity", "haar-dwt", "db4-dwt", "unitary-dft")

_SQRT2 = np.sqrt(2.0)

# Orthonormal lowpass filters (periodic extension keeps these orthogonal on
# any even length).
_HAAR_LOWPASS = np.array([1.0, 1.0]) / _SQRT2
_DB4_LOWPASS = np.array(
    [
        0.23037781330885523,
        0.7148465705525415,
        0.6308807679295904,
        -0.02798376941698385,
        -0.18703481171888114,
        0.030841381835986965,
        0.032883011666982945,
        -0.010597401784997278,
    ]
)

_LOWPASS = {"haar-dwt": _HAAR_LOWPASS, "db4-dwt": _DB4_LOWPASS}


def _highpass(h):
    # Quadrature mirror: g[k] = (-1)^k h[L-1-k]
    g = h[::-1].copy()
    g[1::2] *= -1.0
    return g


def as_signal(x):
    """Validate and promote a signal to a complex array.

    Accepts 1D or 2D input with power-of-two axes and finite entries.
    """
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim not in (1, 2):
        raise ShapeError(f"signal must be 1D or 2D, got ndim={arr.ndim}")
    if arr.size < 1:
        raise ShapeError("signal must have at least one element")
    for ax_len in arr.shape:
        if ax_len < 1 or (ax_len & (ax_len - 1)) != 0:
            raise ShapeError(f"axis length {ax_len} is not a power of two")
    if not np.all(np.isfinite(arr)):
        raise ShapeError("signal contains non-finite entries")
    return arr


@dataclass(frozen=True)
class Frame:
    """An invertible sparsifying transform.

    ``levels`` is the wavelet decomposition depth; it is ignored for the
    identity and DFT kinds.  ``levels=0`` on a wavelet kind degenerates to
    the identity.
    """

    kind: str
    levels: int = 0

    def __post_init__(self):
        if self.kind not in FRAME_KINDS:
            raise ParameterError(
                f"unknown frame kind {self.kind!r}; expected one of {FRAME_KINDS}"
            )
        if self.levels < 0:
            raise ParameterError(f"levels must be >= 0, got {self.levels}")


def _check_levels(frame, shape):
    if frame.kind not in _LOWPASS or frame.levels == 0:
        return
    for ax_len in shape:
        if ax_len % (1 << frame.levels) != 0:
            raise ShapeError(
                f"axis length {ax_len} does not support {frame.levels} "
                "dyadic decomposition levels"
            )


def _dwt_step(x, h, g):
    # One periodized analysis step along the last axis (length must be even).
    n = x.shape[-1]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(h.size)[None, :]) % n
    windows = x[..., idx]
    return windows @ h, windows @ g


def _idwt_step(a, d, h, g):
    # Adjoint (= inverse, by orthonormality) of _dwt_step along the last axis.
    n = 2 * a.shape[-1]
    idx = (2 * np.arange(n // 2)[:, None] + np.arange(h.size)[None, :]) % n
    out = np.zeros(a.shape[:-1] + (n,), dtype=np.complex128)
    contrib = a[..., :, None] * h + d[..., :, None] * g
    flat = out.reshape(-1, n)
    cflat = contrib.reshape(-1, n // 2, h.size)
    for row in range(flat.shape[0]):
        np.add.at(flat[row], idx.ravel(), cflat[row].ravel())
    return out


def _dwt_1d(x, h, g, levels):
    c = x.copy()
    m = c.size
    for _ in range(levels):
        a, d = _dwt_step(c[:m], h, g)
        c[: m // 2] = a
        c[m // 2 : m] = d
        m //= 2
    return c


def _idwt_1d(c, h, g, levels):
    x = c.copy()
    m = x.size >> levels
    for _ in range(levels):
        x[: 2 * m] = _idwt_step(x[:m], x[m : 2 * m], h, g)
        m *= 2
    return x


def _dwt_2d(x, h, g, levels):
    c = x.copy()
    mh, mw = c.shape
    for _ in range(levels):
        block = c[:mh, :mw]
        a, d = _dwt_step(block, h, g)
        block = np.concatenate([a, d], axis=-1)
        a, d = _dwt_step(block.T, h, g)
        c[:mh, :mw] = np.concatenate([a, d], axis=-1).T
        mh //= 2
        mw //= 2
    return c


def _idwt_2d(c, h, g, levels):
    x = c.copy()
    mh = x.shape[0] >> levels
    mw = x.shape[1] >> levels
    for _ in range(levels):
        block = x[: 2 * mh, : 2 * mw]
        cols = _idwt_step(block.T[:, :mh], block.T[:, mh : 2 * mh], h, g)
        rows = _idwt_step(cols.T[:, :mw], cols.T[:, mw : 2 * mw], h, g)
        x[: 2 * mh, : 2 * mw] = rows
        mh *= 2
        mw *= 2
    return x


def analyze(frame, x):
    """Map a signal to its frame coefficients (same shape as the input)."""
    arr = as_signal(x)
    if frame.kind == "identity":
        return arr.copy()
    if frame.kind == "unitary-dft":
        return np.fft.fftn(arr, norm="ortho")
    _check_levels(frame, arr.shape)
    h = _LOWPASS[frame.kind]
    g = _highpass(h)
    if arr.ndim == 1:
        return _dwt_1d(arr, h, g, frame.levels)
    return _dwt_2d(arr, h, g, frame.levels)


def synthesize(frame, coeffs):
    """Invert :func:`analyze`; exact to round-off for all supported kinds."""
    arr = as_signal(coeffs)
    if frame.kind == "identity":
        return arr.copy()
    if frame.kind == "unitary-dft":
        return np.fft.ifftn(arr, norm="ortho")
    _check_levels(frame, arr.shape)
    h = _LOWPASS[frame.kind]
    g = _highpass(h)
    if arr.ndim == 1:
        return _idwt_1d(arr, h, g, frame.levels)
    return _idwt_2d(arr, h, g, frame.levels)


def sparsity_norm(frame, x):
    """L1 norm of the analysis coefficients (complex moduli summed)."""
    return float(np.sum(np.abs(analyze(frame, x))))


def soft_threshold(u, lam):
    """Componentwise complex soft-thresholding.

    Entries with modulus below ``lam`` are zeroed; the rest are shrunk
    toward zero by ``lam`` while keeping their phase.
    """
    if lam < 0:
        raise ParameterError(f"threshold must be nonnegative, got {lam}")
    arr = np.asarray(u, dtype=np.complex128)
    out = kernels.soft_threshold_flat(arr.ravel(), float(lam))
    return out.reshape(arr.shape)


@dataclass(frozen=True)
class CsSpace:
    """A compressed-sensing space: frame, L1 budget and space constant.

    ``solution_bound`` is the sparsity-norm radius of the solution set;
    ``cs_bound`` is the decomposition constant (sqrt(K) in the canonical
    K-sparse setting).
    """

    frame: Frame
    solution_bound: float
    cs_bound: float

    def __post_init__(self):
        if self.solution_bound <= 0:
            raise ParameterError(
                f"solution_bound must be positive, got {self.solution_bound}"
            )
        if self.cs_bound <= 0:
            raise ParameterError(f"cs_bound must be positive, got {self.cs_bound}")
