"""wavelab: multicarrier waveform laboratory.

Offset-QAM filter bank transmit/receive chains with DFT spreading variants,
SC-FDMA and CP-OFDM baselines, fading channels, and PAPR/PSD/BER metrics.
"""

from .errors import ConfigError, DegenerateChannel, InvalidArgument, WavelabError
from .fbmc import (
    Signal,
    analyze,
    default_phase,
    oqam_destagger_scheme1,
    oqam_destagger_scheme2,
    oqam_stagger_scheme1,
    oqam_stagger_scheme2,
    synthesize,
)
from .filters import PrototypeFilter, make_filter, orthogonality_residual, write_taps_csv
from .spectral import dft, dirichlet_f1, dirichlet_f2, idft
from .spreading import (
    conjugate_symmetric_map,
    demap,
    map_dft_spread_rx,
    map_dft_spread_tx,
    ofdm_rx,
    ofdm_tx,
    qam_constellation,
    qam_demod,
    qam_mod,
    scfdma_despread,
    scfdma_rx,
    scfdma_tx,
    simple_dft_spread_rx,
    simple_dft_spread_tx,
)
from .channel import (
    ChannelProfile,
    apply_awgn,
    apply_tdl,
    awgn_profile,
    custom_profile,
    effective_coefficients,
    mmse_coefficients,
    mmse_equalize,
    ofdm_effective_coefficients,
    pedestrian_a,
    vehicular_a,
)
from .metrics import (
    CurveResult,
    ber_campaign,
    ber_qpsk_awgn,
    ccdf,
    ccdf_crossing,
    papr_db,
    psd_welch,
    qfunc,
    wilson_interval,
)
from .systems import ChainPlan, ber_trial, papr_trial, psd_burst, transmit_burst
from .config import (
    CurveSettings,
    FilterSettings,
    RunConfig,
    load_config,
    parse_config,
    plan_for_curve,
    preset_names,
    preset_text,
)
from .runner import papr_values, run_experiment

__version__ = "0.1.0"
