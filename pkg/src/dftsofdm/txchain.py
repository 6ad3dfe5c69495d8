"""Tone-domain symbol construction, waveform synthesis, clipping, and PAPR."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import dft_unitary, idft_unitary


@dataclass(frozen=True)
class FrameConfig:
    """One OFDM symbol worth of geometry.

    symbol_rate is the serial QAM symbol rate, so the useful symbol duration
    is subcarriers / symbol_rate; cp_fraction only accounts for rate overhead.
    """

    subcarriers: int
    symbol_rate: float
    cp_fraction: float = 0.0
    oversample: int = 4

    def __post_init__(self):
        if self.subcarriers < 1:
            raise ValueError("subcarriers must be >= 1")
        if self.symbol_rate <= 0:
            raise ValueError("symbol_rate must be > 0")
        if self.cp_fraction < 0:
            raise ValueError("cp_fraction must be >= 0")
        if self.oversample < 1:
            raise ValueError("oversample must be >= 1")

    @property
    def t_s(self) -> float:
        """Useful symbol duration in seconds (cyclic prefix excluded)."""
        return self.subcarriers / self.symbol_rate


def spread(s: np.ndarray, subcarriers: int | None = None) -> np.ndarray:
    """DFT-spread data symbols into the tone domain (unitary, along last axis)."""
    s = np.asarray(s)
    if subcarriers is not None and s.shape[-1] != subcarriers:
        raise ValueError(f"expected length {subcarriers}, got {s.shape[-1]}")
    return dft_unitary(s)


def _occupied_split(subcarriers: int) -> tuple[int, int]:
    # tones straddle DC: first half on positive bins, second half on the top
    # (negative-frequency) bins of the padded spectrum
    n_pos = (subcarriers + 1) // 2
    return n_pos, subcarriers - n_pos


def synthesize_waveform(x: np.ndarray, cfg: FrameConfig, oversample: int | None = None) -> np.ndarray:
    """Time waveform of one symbol from its tone values (last axis = tones).

    Zero-pads the spectrum to oversample * M and scales by sqrt(oversample),
    so the mean sample power equals ||x||^2 / M at any oversampling factor.
    oversample=1 reduces exactly to the unitary IDFT of x.
    """
    los = cfg.oversample if oversample is None else oversample
    if los < 1:
        raise ValueError("oversample must be >= 1")
    x = np.asarray(x, dtype=complex)
    m = cfg.subcarriers
    if x.shape[-1] != m:
        raise ValueError(f"expected {m} tones, got {x.shape[-1]}")
    if los == 1:
        return idft_unitary(x)
    n = los * m
    n_pos, n_neg = _occupied_split(m)
    padded = np.zeros(x.shape[:-1] + (n,), dtype=complex)
    padded[..., :n_pos] = x[..., :n_pos]
    padded[..., n - n_neg :] = x[..., n_pos:]
    return np.sqrt(los) * idft_unitary(padded)


def clip(w: np.ndarray, cr_db: float | None) -> np.ndarray:
    """Amplitude-clip each waveform (last axis = time) at A = rms * 10^(cr_db/20).

    Samples at or under the threshold pass through bit-identical; clipped
    samples keep their phase. cr_db of None or +inf disables clipping.
    """
    w = np.asarray(w, dtype=complex)
    if cr_db is None or np.isinf(cr_db):
        return w
    power = np.mean(np.abs(w) ** 2, axis=-1, keepdims=True)
    if np.any(power == 0):
        raise ValueError("clip level undefined for an all-zero waveform")
    limit = np.sqrt(power) * 10.0 ** (cr_db / 20.0)
    mag = np.abs(w)
    ratio = np.divide(limit, mag, out=np.ones_like(mag), where=mag > 0)
    return np.where(mag > limit, w * ratio, w)


def clip_tones(x: np.ndarray, cr_db: float | None, cfg: FrameConfig, oversample: int = 1) -> np.ndarray:
    """Clip in the time domain and return to the tone domain.

    oversample=1 clips the critically-sampled waveform, so all clipping
    distortion stays on the occupied tones; larger factors let part of the
    distortion fall out of band, where it is discarded.
    """
    x = np.asarray(x, dtype=complex)
    if cr_db is None or np.isinf(cr_db):
        return x
    w = synthesize_waveform(x, cfg, oversample)
    spectrum = dft_unitary(clip(w, cr_db)) / np.sqrt(oversample)
    if oversample == 1:
        return spectrum
    m = cfg.subcarriers
    n = oversample * m
    n_pos, n_neg = _occupied_split(m)
    return np.concatenate([spectrum[..., :n_pos], spectrum[..., n - n_neg :]], axis=-1)


def papr_db(w: np.ndarray):
    """Peak-to-average power ratio in dB over the last axis, per leading index."""
    p = np.abs(np.asarray(w)) ** 2
    mean = p.mean(axis=-1)
    if np.any(mean == 0):
        raise ValueError("PAPR undefined for an all-zero waveform")
    out = 10.0 * np.log10(p.max(axis=-1) / mean)
    return float(out) if np.ndim(out) == 0 else out


def ccdf(papr_samples: np.ndarray, thresholds_db: np.ndarray) -> np.ndarray:
    """P(PAPR > threshold) for each threshold, from empirical samples."""
    samples = np.sort(np.asarray(papr_samples, dtype=float).reshape(-1))
    if samples.size == 0:
        raise ValueError("ccdf requires at least one PAPR sample")
    idx = np.searchsorted(samples, np.asarray(thresholds_db, dtype=float), side="right")
    return 1.0 - idx / samples.size
