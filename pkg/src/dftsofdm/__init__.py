"""Coherent optical DFT-spread OFDM link simulator with polarization multiplexing."""

from .channel import (
    C_LIGHT,
    FiberParams,
    LinkRealization,
    SpanDraw,
    ToneChannel,
    apply_channel,
    cd_phase,
    draw_link,
    frequency_grid,
    link_transfer,
    tone_transfer,
)
from .harness import (
    BerRecord,
    CcdfRecord,
    ComparisonResults,
    ExperimentConfig,
    dump_channel,
    esn0_at_ber,
    parse_config,
    run_ber_sweep,
    run_comparison_study,
    run_papr_experiment,
    select_ccdf,
    threshold_at_ccdf,
    verify_comparison_study,
    write_config,
    write_results,
)
from .modem import ConstellationSpec, constellation, demap_hard, map_bits
from .numerics import (
    RngStream,
    SingularMatrixError,
    dft_unitary,
    idft_unitary,
    mat2_hermitian,
    mat2_inv,
    sample_gaussian_pair,
    sample_maxwellian,
    substream_id,
)
from .rxchain import ErrorCount, count_errors, despread, mmse_equalize
from .txchain import FrameConfig, ccdf, clip, clip_tones, papr_db, spread, synthesize_waveform

__version__ = "0.1.0"
