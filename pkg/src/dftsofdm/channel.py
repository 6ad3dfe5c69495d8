"""Multi-span fiber MIMO channel: random link draws and per-tone 2x2 transfers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import RngStream, sample_gaussian_pair, sample_maxwellian

C_LIGHT = 2.99792458e8  # m/s


@dataclass(frozen=True)
class FiberParams:
    """Link geometry and impairment coefficients in base SI units."""

    n_spans: int
    span_length: float  # m
    cd_coeff: float  # s/m^2
    pmd_coeff: float  # s/sqrt(m)
    pdl_db: float = 0.0
    wavelength: float = 1.55e-6  # m

    def __post_init__(self):
        if self.n_spans < 1:
            raise ValueError("n_spans must be >= 1")
        if self.span_length <= 0:
            raise ValueError("span_length must be > 0")
        if self.cd_coeff < 0 or self.pmd_coeff < 0 or self.pdl_db < 0:
            raise ValueError("impairment coefficients must be >= 0")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be > 0")

    @classmethod
    def from_practical(
        cls,
        n_spans: int,
        span_km: float,
        lambda_nm: float,
        cd_ps_nm_km: float,
        pmd_ps_sqrtkm: float,
        pdl_db: float,
    ) -> "FiberParams":
        """Build from data-sheet units (km, nm, ps/nm/km, ps/sqrt(km))."""
        return cls(
            n_spans=n_spans,
            span_length=span_km * 1e3,
            cd_coeff=cd_ps_nm_km * 1e-6,
            pmd_coeff=pmd_ps_sqrtkm * 1e-12 / np.sqrt(1e3),
            pdl_db=pdl_db,
            wavelength=lambda_nm * 1e-9,
        )

    @property
    def carrier_freq(self) -> float:
        return C_LIGHT / self.wavelength

    @property
    def total_length(self) -> float:
        return self.n_spans * self.span_length

    @property
    def span_dgd_rms(self) -> float:
        """RMS differential group delay contributed by one span, seconds."""
        return self.pmd_coeff * np.sqrt(self.span_length)

    @property
    def pdl_k(self) -> float:
        """Per-span attenuation of the lossy polarization axis, k in (0, 1]."""
        return 10.0 ** (-self.pdl_db / 20.0)


@dataclass(frozen=True)
class SpanDraw:
    """One span's random state: PDL factor, DGD, and rotation angle."""

    k: float
    tau: float
    theta: float


@dataclass(frozen=True)
class LinkRealization:
    """One random draw of the whole multi-span link plus the common phase error."""

    spans: tuple[SpanDraw, ...]
    cpe: float
    params: FiberParams


@dataclass(frozen=True)
class ToneChannel:
    """Per-tone transfer matrices, shape (M, 2, 2), with the noise variance."""

    h: np.ndarray
    sigma2: float

    def __post_init__(self):
        if self.sigma2 < 0:
            raise ValueError("sigma2 must be >= 0")
        if not np.all(np.isfinite(self.h)):
            raise ValueError("transfer matrices must be finite")


def frequency_grid(subcarriers: int, t_s: float) -> np.ndarray:
    """Tone frequencies f_m = (m - 1) / t_s for m = 1..M, in Hz."""
    if subcarriers < 1:
        raise ValueError("subcarriers must be >= 1")
    if t_s <= 0:
        raise ValueError("t_s must be > 0")
    return np.arange(subcarriers) / t_s


def cd_phase(f, params: FiberParams, length: float):
    """Chromatic-dispersion phase pi*c*D*L*f^2/fc^2 in radians (quadratic in f)."""
    f = np.asarray(f, dtype=float)
    out = np.pi * C_LIGHT * params.cd_coeff * length * f**2 / params.carrier_freq**2
    return float(out) if np.ndim(out) == 0 else out


def draw_link(params: FiberParams, rng: RngStream, cpe: str = "zero") -> LinkRealization:
    """Sample one link: Maxwellian DGD and uniform rotation per span.

    The PDL factor is deterministic from params; only its orientation is
    randomized through the rotations. cpe is "zero" (default) or "uniform".
    """
    taus = sample_maxwellian(rng, params.span_dgd_rms, size=params.n_spans)
    thetas = rng.generator.uniform(0.0, 2.0 * np.pi, size=params.n_spans)
    if cpe == "zero":
        phi = 0.0
    elif cpe == "uniform":
        phi = float(rng.generator.uniform(0.0, 2.0 * np.pi))
    else:
        raise ValueError(f"unknown cpe mode '{cpe}'")
    spans = tuple(
        SpanDraw(k=params.pdl_k, tau=float(t), theta=float(a)) for t, a in zip(taus, thetas)
    )
    return LinkRealization(spans=spans, cpe=phi, params=params)


def _dgd_phase(f_abs: np.ndarray, tau: float) -> np.ndarray:
    """pi*(fc+f)*tau reduced mod 2*pi.

    (fc+f)*tau is hundreds of cycles; the product and its fractional part are
    taken in extended precision so the reduced angle keeps full accuracy.
    """
    cycles = np.asarray(f_abs, dtype=np.longdouble) * np.longdouble(tau) * np.longdouble(0.5)
    return (2.0 * np.pi) * np.mod(cycles, 1.0).astype(float)


def link_transfer(link: LinkRealization, grid: np.ndarray) -> np.ndarray:
    """Per-tone 2x2 transfer matrices for every grid frequency, shape (M, 2, 2).

    Each span applies PDL, the DGD phase split, and its rotation; the per-span
    dispersion pre-compensation cancels the lumped CD phase algebraically, so
    the only scalar factor left is the common phase error.
    """
    p = link.params
    f_abs = p.carrier_freq + np.asarray(grid, dtype=float)
    h = np.broadcast_to(np.eye(2, dtype=complex), (f_abs.size, 2, 2)).copy()
    for span in link.spans:
        ang = _dgd_phase(f_abs, span.tau)
        fwd = np.exp(1j * ang)
        rev = np.conj(fwd)
        c = np.cos(span.theta)
        s = np.sin(span.theta)
        mat = np.empty((f_abs.size, 2, 2), dtype=complex)
        mat[:, 0, 0] = fwd * c
        mat[:, 0, 1] = fwd * s
        mat[:, 1, 0] = -span.k * rev * s
        mat[:, 1, 1] = span.k * rev * c
        h = h @ mat
    if link.cpe != 0.0:
        h = np.exp(1j * link.cpe) * h
    return h


def tone_transfer(link: LinkRealization, m: int, grid: np.ndarray) -> np.ndarray:
    """Transfer matrix of tone m (1-based index into the frequency grid)."""
    grid = np.asarray(grid, dtype=float)
    if not 1 <= m <= grid.size:
        raise IndexError(f"tone index {m} outside 1..{grid.size}")
    return link_transfer(link, grid[m - 1 : m])[0]


def apply_channel(x: np.ndarray, ch: ToneChannel, rng: RngStream) -> np.ndarray:
    """y = H x + v per tone, with circularly-symmetric CN(0, sigma2) noise entries.

    x has shape (..., 2) matching ch.h's leading axes.
    """
    x = np.asarray(x, dtype=complex)
    if x.shape[:-1] != ch.h.shape[:-2] or x.shape[-1] != 2:
        raise ValueError(f"tone vector shape {x.shape} does not match channel {ch.h.shape}")
    y = np.einsum("...ij,...j->...i", ch.h, x)
    if ch.sigma2 > 0:
        y = y + sample_gaussian_pair(rng, ch.sigma2, size=x.shape)
    return y
