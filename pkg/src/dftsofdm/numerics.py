"""Complex vector/matrix primitives, unitary transforms, and seeded samplers."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_MASK64 = (1 << 64) - 1

#: singularity cutoff on |det| for closed-form 2x2 inversion
DET_EPS = 1e-30


class SingularMatrixError(ValueError):
    """Raised when a 2x2 inversion hits |det| at or below DET_EPS."""


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def substream_id(*indices: int) -> int:
    """Mix integers into a 64-bit stream id; order-sensitive and collision-resistant."""
    h = 0
    for v in indices:
        h = _splitmix64((h ^ (int(v) & _MASK64)) & _MASK64)
    return h


@dataclass
class RngStream:
    """Counter-based random stream: (seed, stream_id) fully determine the draws.

    Distinct stream ids give statistically independent sequences, so Monte
    Carlo trials can be seeded per (point, trial) and run in any order.
    """

    seed: int
    stream_id: int = 0
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        key = np.array([self.seed & _MASK64, self.stream_id & _MASK64], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def substream(self, *indices: int) -> "RngStream":
        """Fresh independent stream derived from this one and the given indices."""
        return RngStream(self.seed, substream_id(self.stream_id, *indices))


def dft_unitary(v: np.ndarray) -> np.ndarray:
    """Unitary DFT along the last axis: F[a, b] = exp(-2j*pi*a*b/M) / sqrt(M)."""
    v = np.asarray(v)
    if v.shape[-1] == 0:
        raise ValueError("dft_unitary: zero-length input")
    return np.fft.fft(v, axis=-1, norm="ortho")


def idft_unitary(v: np.ndarray) -> np.ndarray:
    """Inverse of dft_unitary (conjugate-transpose transform, also unitary)."""
    v = np.asarray(v)
    if v.shape[-1] == 0:
        raise ValueError("idft_unitary: zero-length input")
    return np.fft.ifft(v, axis=-1, norm="ortho")


def mat2_hermitian(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose of 2x2 matrices stacked in the leading axes."""
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def mat2_inv(a: np.ndarray) -> np.ndarray:
    """Closed-form inverse of (stacked) 2x2 matrices.

    Raises SingularMatrixError if any determinant magnitude is <= DET_EPS.
    """
    a = np.asarray(a, dtype=complex)
    det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    if np.any(np.abs(det) <= DET_EPS):
        raise SingularMatrixError(f"2x2 matrix singular (|det| <= {DET_EPS})")
    out = np.empty_like(a)
    out[..., 0, 0] = a[..., 1, 1]
    out[..., 0, 1] = -a[..., 0, 1]
    out[..., 1, 0] = -a[..., 1, 0]
    out[..., 1, 1] = a[..., 0, 0]
    return out / det[..., None, None]


def _shape(size) -> tuple:
    if size is None:
        return ()
    if np.isscalar(size):
        return (int(size),)
    return tuple(int(s) for s in size)


def sample_gaussian_pair(rng: RngStream, variance: float, size=None):
    """Circularly-symmetric complex Gaussian draw(s) with E|v|^2 = variance.

    Returns a scalar complex for size=None, else an ndarray of that shape.
    """
    if variance < 0:
        raise ValueError("variance must be >= 0")
    shape = _shape(size)
    if variance == 0:
        zero = np.zeros(shape, dtype=complex)
        return complex(zero) if size is None else zero
    g = rng.generator
    scale = np.sqrt(variance / 2.0)
    out = scale * (g.standard_normal(shape) + 1j * g.standard_normal(shape))
    return complex(out) if size is None else out


def sample_maxwellian(rng: RngStream, rms: float, size=None):
    """Maxwellian draw(s): norm of 3 i.i.d. Gaussians scaled so E[tau^2] = rms^2."""
    if rms < 0:
        raise ValueError("rms must be >= 0")
    shape = _shape(size)
    if rms == 0:
        zero = np.zeros(shape)
        return float(zero) if size is None else zero
    g = rng.generator
    comps = g.standard_normal((3,) + shape) * (rms / np.sqrt(3.0))
    out = np.sqrt(np.sum(comps * comps, axis=0))
    return float(out) if size is None else out
