"""Experiment configuration: TOML schema, validation, and figure presets.

A config file declares one experiment (kind = papr_ccdf | ber | psd), the
shared signal/filter/channel settings, and one [[curve]] table per output
curve.  Validation errors carry file:line positions where the text allows.
"""

import math
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .filters import FILTER_KINDS, make_filter
from .systems import BLOCK_WAVEFORMS, ChainPlan, WAVEFORMS, guard_slots

__all__ = [
    "FilterSettings",
    "CurveSettings",
    "RunConfig",
    "load_config",
    "parse_config",
    "plan_for_curve",
    "preset_names",
    "preset_text",
]

EXPERIMENT_KINDS = ("papr_ccdf", "ber", "psd")
PROFILES = ("awgn", "pedestrian_a", "vehicular_a", "custom")
QAM_ORDERS = (4, 64)
_DEFAULT_DOPPLER = {"pedestrian_a": 5.0, "vehicular_a": 185.0}


@dataclass(frozen=True)
class FilterSettings:
    kind: str = "hermite"
    overlap: int = 4
    params: tuple = ()  # sorted ((name, value), ...)


@dataclass(frozen=True)
class CurveSettings:
    waveform: str
    label: str
    filter: FilterSettings
    constellation: int


@dataclass(frozen=True)
class RunConfig:
    kind: str
    seed: int
    out: str
    m: int
    subcarrier_hz: float
    oversample: int
    slots: int
    symbols: int
    cp_fraction: float
    profile: str
    max_doppler_hz: float
    custom_delays_ns: tuple
    custom_powers_db: tuple
    noiseless: bool
    papr_windows: int
    papr_grid_db: tuple  # (start, stop, step)
    psd_nperseg: int
    snr_db: tuple
    min_errors: int
    max_bits: int
    curves: tuple
    source_text: str = ""
    path: str = "<config>"

    @property
    def cp_samples(self):
        return int(round(self.cp_fraction * self.m * self.oversample))


def plan_for_curve(cfg, curve):
    """Resolve one curve of a RunConfig into a picklable ChainPlan."""
    return ChainPlan(
        waveform=curve.waveform,
        m=cfg.m,
        constellation=curve.constellation,
        filter_kind=curve.filter.kind,
        filter_overlap=curve.filter.overlap,
        filter_params=curve.filter.params,
        oversample=cfg.oversample,
        subcarrier_hz=cfg.subcarrier_hz,
        slots=cfg.slots,
        symbols=cfg.symbols,
        cp_samples=cfg.cp_samples,
        profile=cfg.profile,
        max_doppler_hz=cfg.max_doppler_hz,
        custom_delays_ns=cfg.custom_delays_ns,
        custom_powers_db=cfg.custom_powers_db,
        noiseless=cfg.noiseless,
    )


# --- parsing with line attribution --------------------------------------------


def _line_map(text):
    """Map (section, occurrence, key) -> 1-based line number; key None marks
    the section header itself.  Top-level keys use section ''."""
    out = {}
    counts = {}
    section, occurrence = "", 0
    out[("", 0, None)] = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[["):
            section = line.strip("[] \t")
            counts[section] = counts.get(section, -1) + 1
            occurrence = counts[section]
            out[(section, occurrence, None)] = lineno
        elif line.startswith("["):
            section = line.strip("[] \t")
            occurrence = 0
            out[(section, 0, None)] = lineno
        elif "=" in line:
            key = line.split("=", 1)[0].strip().strip("\"'")
            out.setdefault((section, occurrence, key), lineno)
    return out


class _Scope:
    """One table of the parsed config, with typed getters that raise
    ConfigError pointing at the offending line."""

    def __init__(self, data, lines, path, section="", occurrence=0):
        self.data = data
        self.lines = lines
        self.path = path
        self.section = section
        self.occurrence = occurrence

    def fail(self, message, key=None):
        line = self.lines.get((self.section, self.occurrence, key))
        if line is None:
            line = self.lines.get((self.section, self.occurrence, None))
        raise ConfigError(message, line=line, path=self.path)

    def _describe(self, key):
        return f"{self.section}.{key}" if self.section else key

    def get(self, key, types, default=None, required=False):
        if key not in self.data:
            if required:
                self.fail(f"missing required key {self._describe(key)!r}")
            return default
        value = self.data[key]
        if types is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if isinstance(value, bool) and types in (int, float):
            self.fail(f"{self._describe(key)} must be a number", key)
        if not isinstance(value, types):
            name = types.__name__ if isinstance(types, type) else "value"
            self.fail(f"{self._describe(key)} must be a {name}", key)
        return value

    def number_list(self, key, default=None):
        if key not in self.data:
            return default
        value = self.data[key]
        ok = isinstance(value, list) and value and all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
        )
        if not ok:
            self.fail(f"{self._describe(key)} must be a nonempty list of numbers", key)
        return tuple(float(v) for v in value)

    def reject_unknown(self, allowed):
        for key in self.data:
            if key not in allowed:
                self.fail(f"unknown key {self._describe(key)!r}", key)


_TOP_KEYS = {"kind", "seed", "out", "signal", "filter", "channel", "papr", "psd", "ber", "curve"}
_SIGNAL_KEYS = {"m", "subcarrier_hz", "oversample", "slots", "symbols", "constellation", "cp_fraction"}
_FILTER_KEYS = {"kind", "overlap", "alpha", "roll_off"}
_CHANNEL_KEYS = {"profile", "max_doppler_hz", "delays_ns", "powers_db", "noiseless"}
_PAPR_KEYS = {"windows", "grid_start_db", "grid_stop_db", "grid_step_db"}
_PSD_KEYS = {"nperseg"}
_BER_KEYS = {"snr_db", "min_errors", "max_bits"}
_CURVE_KEYS = {"waveform", "label", "filter", "constellation"}


def _filter_settings(scope, default=None):
    scope.reject_unknown(_FILTER_KEYS)
    base = default or FilterSettings()
    kind = scope.get("kind", str, base.kind)
    if kind not in FILTER_KINDS:
        scope.fail(f"unknown filter kind {kind!r}; choose from {', '.join(FILTER_KINDS)}", "kind")
    overlap = scope.get("overlap", int, base.overlap)
    if overlap < 1:
        scope.fail("filter overlap must be >= 1", "overlap")
    params = []
    for name in ("alpha", "roll_off"):
        if name in scope.data:
            params.append((name, scope.get(name, float)))
    return FilterSettings(kind=kind, overlap=overlap, params=tuple(sorted(params)))


def parse_config(text, path="<config>"):
    """Parse and validate config text; raises ConfigError with positions."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as err:
        raise ConfigError(f"not valid TOML: {err}", path=path) from err
    lines = _line_map(text)

    top = _Scope(data, lines, path)
    top.reject_unknown(_TOP_KEYS)
    kind = top.get("kind", str, required=True)
    if kind not in EXPERIMENT_KINDS:
        top.fail(f"kind must be one of {', '.join(EXPERIMENT_KINDS)}, got {kind!r}", "kind")
    seed = top.get("seed", int, 12345)
    if seed < 0:
        top.fail("seed must be >= 0", "seed")
    out = top.get("out", str, "results")

    sig = _Scope(data.get("signal", {}), lines, path, "signal")
    sig.reject_unknown(_SIGNAL_KEYS)
    m = sig.get("m", int, 64)
    if m < 4 or m % 2 != 0:
        sig.fail(f"signal.m must be an even integer >= 4, got {m}", "m")
    subcarrier_hz = sig.get("subcarrier_hz", float, 15000.0)
    if subcarrier_hz <= 0:
        sig.fail("signal.subcarrier_hz must be > 0", "subcarrier_hz")
    oversample = sig.get("oversample", int, 1)
    if oversample < 1:
        sig.fail("signal.oversample must be >= 1", "oversample")
    slots = sig.get("slots", int, 64)
    if slots < 4 or slots % 2 != 0:
        sig.fail("signal.slots must be an even integer >= 4", "slots")
    symbols = sig.get("symbols", int, 16)
    if symbols < 3:
        sig.fail("signal.symbols must be >= 3 (edge symbols are not counted)", "symbols")
    constellation = sig.get("constellation", int, 4)
    if constellation not in QAM_ORDERS:
        sig.fail(f"signal.constellation must be one of {QAM_ORDERS}", "constellation")
    cp_fraction = sig.get("cp_fraction", float, 0.0)
    if not 0.0 <= cp_fraction <= 1.0:
        sig.fail("signal.cp_fraction must be in [0, 1]", "cp_fraction")

    filt_scope = _Scope(data.get("filter", {}), lines, path, "filter")
    default_filter = _filter_settings(filt_scope)

    chan = _Scope(data.get("channel", {}), lines, path, "channel")
    chan.reject_unknown(_CHANNEL_KEYS)
    profile = chan.get("profile", str, "awgn")
    if profile not in PROFILES:
        chan.fail(f"channel.profile must be one of {', '.join(PROFILES)}", "profile")
    doppler = chan.get("max_doppler_hz", float, _DEFAULT_DOPPLER.get(profile, 0.0))
    if doppler < 0:
        chan.fail("channel.max_doppler_hz must be >= 0", "max_doppler_hz")
    delays = chan.number_list("delays_ns")
    powers = chan.number_list("powers_db")
    if profile == "custom":
        if delays is None or powers is None:
            chan.fail("custom profile needs channel.delays_ns and channel.powers_db")
        if len(delays) != len(powers):
            chan.fail("channel.delays_ns and channel.powers_db lengths differ", "delays_ns")
    elif delays is not None or powers is not None:
        chan.fail("delays_ns/powers_db are only valid with profile = \"custom\"")
    noiseless = chan.get("noiseless", bool, False)

    papr = _Scope(data.get("papr", {}), lines, path, "papr")
    papr.reject_unknown(_PAPR_KEYS)
    windows = papr.get("windows", int, 20000)
    if windows < 1:
        papr.fail("papr.windows must be >= 1", "windows")
    g0 = papr.get("grid_start_db", float, 3.0)
    g1 = papr.get("grid_stop_db", float, 13.0)
    gs = papr.get("grid_step_db", float, 0.05)
    if not (g0 < g1 and gs > 0):
        papr.fail("papr grid needs grid_start_db < grid_stop_db and grid_step_db > 0")

    psd = _Scope(data.get("psd", {}), lines, path, "psd")
    psd.reject_unknown(_PSD_KEYS)
    nperseg = psd.get("nperseg", int, 4096)
    if nperseg < 16:
        psd.fail("psd.nperseg must be >= 16", "nperseg")

    ber = _Scope(data.get("ber", {}), lines, path, "ber")
    ber.reject_unknown(_BER_KEYS)
    snr_db = ber.number_list("snr_db", default=(0.0, 4.0, 8.0))
    if kind == "ber" and any(b <= a for a, b in zip(snr_db, snr_db[1:])):
        ber.fail("ber.snr_db must be strictly increasing", "snr_db")
    min_errors = ber.get("min_errors", int, 200)
    max_bits = ber.get("max_bits", int, 1_000_000)
    if min_errors < 1 or max_bits < 1:
        ber.fail("ber budgets must be positive")

    raw_curves = data.get("curve", [])
    if not isinstance(raw_curves, list) or not raw_curves:
        top.fail("config needs at least one [[curve]] table")
    curves = []
    for i, raw in enumerate(raw_curves):
        cs = _Scope(raw, lines, path, "curve", i)
        cs.reject_unknown(_CURVE_KEYS)
        waveform = cs.get("waveform", str, required=True)
        if waveform not in WAVEFORMS:
            cs.fail(f"unknown waveform {waveform!r}; choose from {', '.join(WAVEFORMS)}", "waveform")
        if "filter" in raw:
            fsub = _Scope(raw["filter"], lines, path, "curve", i)
            cfilter = _filter_settings(fsub, default_filter)
        else:
            cfilter = default_filter
        order = cs.get("constellation", int, constellation)
        if order not in QAM_ORDERS:
            cs.fail(f"constellation must be one of {QAM_ORDERS}", "constellation")
        label = cs.get("label", str, _default_label(waveform, cfilter, default_filter, order, constellation))
        if not label or not all(c.isalnum() or c in "_-" for c in label):
            cs.fail(f"label {label!r} must be filename-safe ([A-Za-z0-9_-])", "label")
        curves.append(CurveSettings(waveform, label, cfilter, order))
    labels = [c.label for c in curves]
    if len(set(labels)) != len(labels):
        dup = next(l for l in labels if labels.count(l) > 1)
        top.fail(f"duplicate curve label {dup!r}; set explicit labels")

    cfg = RunConfig(
        kind=kind, seed=seed, out=out, m=m, subcarrier_hz=subcarrier_hz,
        oversample=oversample, slots=slots, symbols=symbols, cp_fraction=cp_fraction,
        profile=profile, max_doppler_hz=doppler,
        custom_delays_ns=delays or (), custom_powers_db=powers or (),
        noiseless=noiseless, papr_windows=windows, papr_grid_db=(g0, g1, gs),
        psd_nperseg=nperseg, snr_db=snr_db, min_errors=min_errors,
        max_bits=max_bits, curves=tuple(curves), source_text=text, path=path,
    )
    _check_cross_rules(cfg, data, lines)
    return cfg


def _default_label(waveform, cfilter, default_filter, order, default_order):
    label = waveform
    if cfilter != default_filter:
        label += f"_{cfilter.kind}"
        for name, value in cfilter.params:
            label += f"{value:g}".replace(".", "p").replace("-", "m")
    if order != default_order:
        label += f"_qam{order}"
    return label


def _check_cross_rules(cfg, data, lines):
    sig = _Scope(data.get("signal", {}), lines, cfg.path, "signal")
    for i, curve in enumerate(cfg.curves):
        cs = _Scope(data["curve"][i], lines, cfg.path, "curve", i)
        if curve.waveform == "map_dft" and cfg.m % 4 != 0:
            sig.fail(
                f"signal.m = {cfg.m} violates the divisibility rule for waveform "
                f"'map_dft': the conjugate-symmetric mapping needs m divisible by 4",
                "m",
            )
        if curve.waveform in BLOCK_WAVEFORMS:
            continue
        try:
            filt = make_filter(
                curve.filter.kind, cfg.m, K=curve.filter.overlap,
                L_os=cfg.oversample, **dict(curve.filter.params),
            )
        except Exception as err:
            cs.fail(f"curve {curve.label!r}: cannot build prototype filter: {err}")
        if cfg.kind == "ber" and cfg.slots < 2 * guard_slots(filt) + 2:
            sig.fail(
                f"signal.slots = {cfg.slots} leaves no interior symbols for curve "
                f"{curve.label!r}: need at least {2 * guard_slots(filt) + 2}",
                "slots",
            )


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError(f"cannot read config: {err}", path=str(path)) from err
    return parse_config(text, path=str(path))


# --- figure presets ------------------------------------------------------------

_PRESET_HEADER = {
    "fig3a": "PAPR CCDF of the DFT spreading schemes (Hermite K=4, 4-QAM)",
    "fig3b": "PAPR CCDF of map-DFT spreading across prototype filters",
    "fig3c": "Welch PSD of map-DFT spreading across prototype filters",
    "fig4a": "BER over AWGN (4-QAM)",
    "fig4b": "BER over Pedestrian A fading (4-QAM)",
    "fig4c": "BER over Vehicular A fading (4-QAM and 64-QAM)",
}

_PAPR_COMMON = """
[signal]
m = 64
subcarrier_hz = 15000.0
oversample = 4
slots = 64
symbols = 16
constellation = 4

[filter]
kind = "hermite"
overlap = 4

[papr]
windows = 200000
grid_start_db = 3.0
grid_stop_db = 13.0
grid_step_db = 0.05
"""

_PRESETS = {
    "fig3a": 'kind = "papr_ccdf"\nseed = 31001\nout = "results/fig3a"\n'
    + _PAPR_COMMON
    + """
[[curve]]
waveform = "fbmc_oqam"

[[curve]]
waveform = "simple_dft_s1"

[[curve]]
waveform = "simple_dft_s2"

[[curve]]
waveform = "map_dft"

[[curve]]
waveform = "scfdma"

[[curve]]
waveform = "ofdm"
""",
    "fig3b": 'kind = "papr_ccdf"\nseed = 31002\nout = "results/fig3b"\n'
    + _PAPR_COMMON
    + """
[[curve]]
label = "map_dft_phydyas"
waveform = "map_dft"
filter = { kind = "phydyas" }

[[curve]]
label = "map_dft_iota"
waveform = "map_dft"
filter = { kind = "iota" }

[[curve]]
label = "map_dft_rrc"
waveform = "map_dft"
filter = { kind = "rrc", roll_off = 1.0 }

[[curve]]
label = "map_dft_egf6"
waveform = "map_dft"
filter = { kind = "egf", alpha = 6.0 }

[[curve]]
label = "map_dft_hermite"
waveform = "map_dft"

[[curve]]
label = "scfdma"
waveform = "scfdma"
""",
    "fig3c": 'kind = "psd"\nseed = 31003\nout = "results/fig3c"\n'
    + """
[signal]
m = 64
subcarrier_hz = 15000.0
oversample = 4
slots = 2048
constellation = 4

[filter]
kind = "hermite"
overlap = 4

[psd]
nperseg = 4096

[[curve]]
label = "map_dft_hermite"
waveform = "map_dft"

[[curve]]
label = "map_dft_phydyas"
waveform = "map_dft"
filter = { kind = "phydyas" }

[[curve]]
label = "map_dft_iota"
waveform = "map_dft"
filter = { kind = "iota" }

[[curve]]
label = "map_dft_rrc"
waveform = "map_dft"
filter = { kind = "rrc", roll_off = 1.0 }

[[curve]]
label = "map_dft_egf6"
waveform = "map_dft"
filter = { kind = "egf", alpha = 6.0 }
""",
    "fig4a": 'kind = "ber"\nseed = 41001\nout = "results/fig4a"\n'
    + """
[signal]
m = 64
subcarrier_hz = 15000.0
oversample = 1
slots = 64
symbols = 16
constellation = 4

[filter]
kind = "hermite"
overlap = 4

[ber]
snr_db = [0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0]
min_errors = 400
max_bits = 4000000

[[curve]]
waveform = "fbmc_oqam"

[[curve]]
waveform = "map_dft"

[[curve]]
waveform = "scfdma"

[[curve]]
waveform = "ofdm"
""",
    "fig4b": 'kind = "ber"\nseed = 41002\nout = "results/fig4b"\n'
    + """
[signal]
m = 64
subcarrier_hz = 15000.0
oversample = 4
slots = 64
symbols = 16
constellation = 4
cp_fraction = 0.125

[filter]
kind = "hermite"
overlap = 4

[channel]
profile = "pedestrian_a"
max_doppler_hz = 5.0

[ber]
snr_db = [8.0, 12.0, 16.0, 20.0, 24.0, 28.0, 32.0]
min_errors = 300
max_bits = 2000000

[[curve]]
waveform = "fbmc_oqam"

[[curve]]
waveform = "map_dft"

[[curve]]
waveform = "scfdma"

[[curve]]
waveform = "ofdm"
""",
    "fig4c": 'kind = "ber"\nseed = 41003\nout = "results/fig4c"\n'
    + """
[signal]
m = 64
subcarrier_hz = 15000.0
oversample = 4
slots = 64
symbols = 16
constellation = 4
cp_fraction = 0.125

[filter]
kind = "hermite"
overlap = 4

[channel]
profile = "vehicular_a"
max_doppler_hz = 185.0

[ber]
snr_db = [8.0, 12.0, 16.0, 20.0, 24.0, 28.0, 32.0]
min_errors = 300
max_bits = 2000000

[[curve]]
waveform = "fbmc_oqam"

[[curve]]
waveform = "map_dft"

[[curve]]
waveform = "scfdma"

[[curve]]
waveform = "ofdm"

[[curve]]
label = "fbmc_oqam_qam64"
waveform = "fbmc_oqam"
constellation = 64

[[curve]]
label = "map_dft_qam64"
waveform = "map_dft"
constellation = 64

[[curve]]
label = "scfdma_qam64"
waveform = "scfdma"
constellation = 64

[[curve]]
label = "ofdm_qam64"
waveform = "ofdm"
constellation = 64
""",
}


def preset_names():
    return tuple(sorted(_PRESETS))


def preset_text(name):
    """TOML text of a named figure preset; every preset passes parse_config."""
    if name not in _PRESETS:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        )
    return f"# {name}: {_PRESET_HEADER[name]}\n" + _PRESETS[name]
