"""Per-tone bias-corrected linear MMSE equalization, despreading, error counting."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import SingularMatrixError, idft_unitary, mat2_hermitian, mat2_inv


def mmse_equalize(y: np.ndarray, h: np.ndarray, sigma2: float) -> np.ndarray:
    """Per-stream conditionally unbiased linear MMSE estimate of the tone vector.

    Applies W0 = (sigma2 I + H^H H)^-1 H^H and rescales each stream by the
    reciprocal of diag(W0 H), so the composite filter-channel gain has unit
    diagonal. sigma2 = 0 switches to the zero-forcing limit H^-1 y.
    Shapes: y (..., 2), h (..., 2, 2).
    """
    y = np.asarray(y, dtype=complex)
    h = np.asarray(h, dtype=complex)
    if sigma2 < 0:
        raise ValueError("sigma2 must be >= 0")
    if sigma2 == 0:
        return np.einsum("...ij,...j->...i", mat2_inv(h), y)
    hh = mat2_hermitian(h)
    gram = hh @ h
    gram[..., 0, 0] += sigma2
    gram[..., 1, 1] += sigma2
    w0 = mat2_inv(gram) @ hh
    gain = np.einsum("...ij,...ji->...i", w0, h)  # diag(W0 H), real-positive
    if np.any(gain == 0) or not np.all(np.isfinite(gain)):
        raise SingularMatrixError("degenerate channel: zero composite gain")
    return np.einsum("...ij,...j->...i", w0, y) / gain


def despread(x_hat: np.ndarray, subcarriers: int | None = None) -> np.ndarray:
    """Undo the transmit DFT spreading (unitary IDFT along the last axis)."""
    x_hat = np.asarray(x_hat)
    if subcarriers is not None and x_hat.shape[-1] != subcarriers:
        raise ValueError(f"expected length {subcarriers}, got {x_hat.shape[-1]}")
    return idft_unitary(x_hat)


@dataclass(frozen=True)
class ErrorCount:
    bit_errors: int
    bits_total: int
    symbol_errors: int

    def __add__(self, other: "ErrorCount") -> "ErrorCount":
        return ErrorCount(
            self.bit_errors + other.bit_errors,
            self.bits_total + other.bits_total,
            self.symbol_errors + other.symbol_errors,
        )


def count_errors(tx_bits: np.ndarray, rx_bits: np.ndarray, bits_per_symbol: int = 1) -> ErrorCount:
    """Hamming distance between two equal-length bit blocks."""
    tx = np.asarray(tx_bits)
    rx = np.asarray(rx_bits)
    if tx.shape != rx.shape:
        raise ValueError(f"bit block shapes differ: {tx.shape} vs {rx.shape}")
    if tx.size == 0:
        raise ValueError("empty bit blocks")
    diff = tx != rx
    bit_errors = int(diff.sum())
    if bits_per_symbol > 1:
        symbol_errors = int(diff.reshape(-1, bits_per_symbol).any(axis=1).sum())
    else:
        symbol_errors = bit_errors
    return ErrorCount(bit_errors, tx.size, symbol_errors)
