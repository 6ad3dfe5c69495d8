"""Gray-mapped QPSK and 16-QAM with unit average symbol energy."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Per-axis Gray tables indexed by the integer value of the axis bit pair.
# QPSK: one bit per axis, 0 -> +, 1 -> -.
_QPSK_AXIS = np.array([1.0, -1.0])
# 16-QAM: two bits per axis in Gray order (00, 01, 10, 11) -> (+1, +3, -1, -3),
# i.e. amplitudes ordered (+3, +1, -1, -3) carry labels (01, 00, 10, 11).
_QAM16_AXIS = np.array([1.0, 3.0, -1.0, -3.0])


@dataclass(frozen=True)
class ConstellationSpec:
    """Constellation table indexed by integer bit label (MSB first)."""

    scheme: str
    bits_per_symbol: int
    points: np.ndarray


def _build_points(scheme: str) -> np.ndarray:
    if scheme == "qpsk":
        pts = [
            (_QPSK_AXIS[(label >> 1) & 1] + 1j * _QPSK_AXIS[label & 1]) / np.sqrt(2.0)
            for label in range(4)
        ]
    else:
        pts = [
            (_QAM16_AXIS[(label >> 2) & 3] + 1j * _QAM16_AXIS[label & 3]) / np.sqrt(10.0)
            for label in range(16)
        ]
    return np.array(pts, dtype=complex)


_SPECS = {
    "qpsk": ConstellationSpec("qpsk", 2, _build_points("qpsk")),
    "16qam": ConstellationSpec("16qam", 4, _build_points("16qam")),
}


def constellation(scheme: str) -> ConstellationSpec:
    """Look up the QPSK or 16-QAM constellation spec."""
    try:
        return _SPECS[scheme.lower()]
    except KeyError:
        raise ValueError(f"unknown constellation scheme '{scheme}'") from None


def map_bits(bits: np.ndarray, spec: ConstellationSpec) -> np.ndarray:
    """Map a flat {0,1} block to symbols, bits_per_symbol at a time (MSB first)."""
    bits = np.asarray(bits)
    bps = spec.bits_per_symbol
    if bits.ndim != 1 or bits.size % bps:
        raise ValueError(f"bit count {bits.size} not divisible by {bps}")
    groups = bits.reshape(-1, bps).astype(np.int64)
    weights = 1 << np.arange(bps - 1, -1, -1)
    return spec.points[groups @ weights]


def demap_hard(symbols: np.ndarray, spec: ConstellationSpec) -> np.ndarray:
    """Nearest-point hard decision; exact ties resolve to the smallest bit label."""
    sym = np.asarray(symbols).reshape(-1)
    bps = spec.bits_per_symbol
    out = np.empty((sym.size, bps), dtype=np.uint8)
    step = 1 << 15  # keeps the (chunk x points) distance table small
    for i in range(0, sym.size, step):
        chunk = sym[i : i + step]
        d2 = np.abs(chunk[:, None] - spec.points[None, :]) ** 2
        labels = np.argmin(d2, axis=1)  # first minimum = smallest label
        for b in range(bps):
            out[i : i + chunk.size, b] = (labels >> (bps - 1 - b)) & 1
    return out.reshape(-1)
