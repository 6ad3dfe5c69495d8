import numpy as np
import pytest

from dftsofdm.modem import constellation, map_bits
from dftsofdm.numerics import RngStream, idft_unitary
from dftsofdm.txchain import FrameConfig, ccdf, clip, clip_tones, papr_db, spread, synthesize_waveform


def frame(m=256, oversample=4):
    return FrameConfig(subcarriers=m, symbol_rate=25e9, oversample=oversample)


def direct_padded_idft(x, los):
    """Direct-summation oracle for synthesize_waveform."""
    x = np.asarray(x, dtype=complex)
    m = x.size
    n = los * m
    n_pos = (m + 1) // 2
    padded = np.zeros(n, dtype=complex)
    padded[:n_pos] = x[:n_pos]
    padded[n - (m - n_pos):] = x[n_pos:]
    k = np.arange(n)
    basis = np.exp(2j * np.pi * np.outer(k, k) / n)
    return np.sqrt(los) * (basis @ padded) / np.sqrt(n)


class TestFrameConfig:
    def test_symbol_duration(self):
        assert frame().t_s == pytest.approx(10.24e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            FrameConfig(subcarriers=0, symbol_rate=1e9)
        with pytest.raises(ValueError):
            FrameConfig(subcarriers=4, symbol_rate=1e9, oversample=0)
        with pytest.raises(ValueError):
            FrameConfig(subcarriers=4, symbol_rate=1e9, cp_fraction=-0.1)


class TestSpread:
    def test_constant_maps_to_impulse(self):
        c = 0.5 - 0.25j
        out = spread(np.full(16, c))
        assert out[0] == pytest.approx(4 * c)
        np.testing.assert_allclose(out[1:], 0, atol=1e-13)

    def test_round_trip(self):
        rng = np.random.default_rng(2)
        s = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        np.testing.assert_allclose(idft_unitary(spread(s)), s, atol=1e-12)

    def test_parseval(self):
        rng = np.random.default_rng(3)
        s = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        assert np.linalg.norm(spread(s)) == pytest.approx(np.linalg.norm(s), rel=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            spread(np.ones(8), subcarriers=16)


class TestSynthesize:
    def test_dc_impulse_is_constant_envelope(self):
        cfg = frame(m=16)
        x = np.zeros(16, dtype=complex)
        x[0] = 2.0
        for los in (1, 2, 4):
            w = synthesize_waveform(x, cfg, oversample=los)
            assert papr_db(w) == pytest.approx(0.0, abs=1e-12)

    def test_critical_rate_is_plain_idft(self):
        rng = np.random.default_rng(4)
        x = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        cfg = frame(m=32, oversample=1)
        np.testing.assert_array_equal(synthesize_waveform(x, cfg), idft_unitary(x))

    def test_matches_direct_summation_oracle(self):
        rng = np.random.default_rng(5)
        x = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        cfg = frame(m=16)
        for los in (1, 2, 4):
            w = synthesize_waveform(x, cfg, oversample=los)
            np.testing.assert_allclose(w, direct_padded_idft(x, los), atol=1e-11)

    def test_power_scaling(self):
        # mean sample power = ||x||^2 / M at any oversampling
        rng = np.random.default_rng(6)
        x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        cfg = frame(m=64)
        energy = np.linalg.norm(x) ** 2
        for los in (1, 2, 4, 8):
            w = synthesize_waveform(x, cfg, oversample=los)
            assert np.mean(np.abs(w) ** 2) == pytest.approx(energy / 64, rel=1e-12)
            # time-integral energy (sample sum / oversample) is invariant
            assert np.sum(np.abs(w) ** 2) / los == pytest.approx(energy, rel=1e-12)


class TestClip:
    def test_off_sentinel_is_identity(self):
        w = np.array([1.0, 3.0, -2.0 + 1j])
        np.testing.assert_array_equal(clip(w, None), w)
        np.testing.assert_array_equal(clip(w, np.inf), w)

    def test_zero_db_example(self):
        # samples [1, 3]: rms = sqrt(5), only the 3 clips, down to sqrt(5)
        out = clip(np.array([1.0, 3.0], dtype=complex), 0.0)
        np.testing.assert_allclose(out, [1.0, np.sqrt(5)], atol=1e-14)

    def test_threshold_and_phase_contract(self):
        rng = np.random.default_rng(7)
        w = rng.standard_normal(4096) + 1j * rng.standard_normal(4096)
        cr = 2.0
        out = clip(w, cr)
        a = np.sqrt(np.mean(np.abs(w) ** 2)) * 10 ** (cr / 20)
        assert np.max(np.abs(out)) <= a * (1 + 1e-12)
        clipped = np.abs(w) > a
        np.testing.assert_allclose(np.angle(out[clipped]), np.angle(w[clipped]), atol=1e-12)
        # untouched samples are bit-identical
        np.testing.assert_array_equal(out[~clipped], w[~clipped])

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            clip(np.zeros(8, dtype=complex), 3.0)

    def test_per_polarization_threshold(self):
        # each row gets its own rms, so scaling one row leaves the other alone
        rng = np.random.default_rng(8)
        w = rng.standard_normal((2, 512)) + 1j * rng.standard_normal((2, 512))
        w[1] *= 10
        out = clip(w, 1.0)
        np.testing.assert_array_equal(clip(w[0][None, :], 1.0)[0], out[0])


class TestPapr:
    def test_constant_envelope(self):
        assert papr_db(np.full(64, 1j)) == pytest.approx(0.0)

    def test_hand_computed_example(self):
        w = np.array([1, 1, 1, np.sqrt(2) * np.exp(1j * np.pi / 4)])
        assert papr_db(w) == pytest.approx(10 * np.log10(2 / 1.25), abs=1e-12)

    def test_zero_waveform_rejected(self):
        with pytest.raises(ValueError):
            papr_db(np.zeros(4))


class TestCcdf:
    def test_counting(self):
        assert ccdf([1.0, 2.0, 3.0], [2.5])[0] == pytest.approx(1 / 3)

    def test_extremes(self):
        out = ccdf([1.0, 2.0, 3.0], [0.0, 10.0])
        assert out[0] == 1.0
        assert out[1] == 0.0

    def test_monotone_non_increasing(self):
        rng = np.random.default_rng(9)
        samples = rng.exponential(size=2000)
        thresholds = np.linspace(0, 8, 81)
        out = ccdf(samples, thresholds)
        assert np.all(np.diff(out) <= 0)
        assert np.all((out >= 0) & (out <= 1))

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            ccdf([], [1.0])


class TestClipTones:
    def test_critical_rate_round_trip_structure(self):
        # clipping with a huge ratio leaves the tones untouched
        rng = np.random.default_rng(10)
        x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        cfg = frame(m=64)
        np.testing.assert_allclose(clip_tones(x, 60.0, cfg), x, atol=1e-12)

    def test_off_is_identity(self):
        x = np.ones(8, dtype=complex)
        cfg = frame(m=8)
        np.testing.assert_array_equal(clip_tones(x, None, cfg), x)

    def test_oversampled_clipping_discards_out_of_band(self):
        # at higher clipping rates part of the distortion leaves the band, so
        # the in-band error is no larger than at the critical rate
        rng = np.random.default_rng(11)
        spec = constellation("qpsk")
        bits = rng.integers(0, 2, size=512, dtype=np.uint8)
        x = map_bits(bits, spec)
        cfg = frame(m=256)
        err_crit = np.linalg.norm(clip_tones(x, 3.0, cfg, oversample=1) - x)
        err_os = np.linalg.norm(clip_tones(x, 3.0, cfg, oversample=4) - x)
        assert err_os < err_crit


class TestPaprDominance:
    def test_dft_spread_qpsk_beats_ofdm_qpsk(self):
        # 1e4 symbols, M=256, L_os=4: the DFT-spread CCDF sits well left of OFDM
        m, n_sym = 256, 10_000
        cfg = frame(m=m)
        spec = constellation("qpsk")
        rng = RngStream(77, 0)
        bits = rng.generator.integers(0, 2, size=n_sym * m * 2, dtype=np.uint8)
        s = map_bits(bits, spec).reshape(n_sym, m)
        papr_ofdm = papr_db(synthesize_waveform(s, cfg))
        papr_dfts = papr_db(synthesize_waveform(spread(s), cfg))
        for level in (1e-1, 1e-2, 1e-3):
            t_ofdm = np.quantile(papr_ofdm, 1 - level)
            t_dfts = np.quantile(papr_dfts, 1 - level)
            assert t_dfts < t_ofdm
        gap = np.quantile(papr_ofdm, 1 - 1e-3) - np.quantile(papr_dfts, 1 - 1e-3)
        assert gap >= 2.0
