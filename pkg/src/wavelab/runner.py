"""Experiment execution: parallel campaigns, CSV artifacts, run manifest.

Curves are computed fully in memory and written only after every curve has
finished, so a failed run leaves no partial artifacts.  Trial seeds are
SeedSequence tuples keyed by (curve seed, trial index) and batches merge in
index order, making results byte-identical for any worker count.
"""

import hashlib
import json
import platform
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from functools import partial
from pathlib import Path

import numpy as np
import scipy

from .config import plan_for_curve
from .errors import InvalidArgument
from .metrics import CurveResult, ber_campaign, ccdf, psd_welch
from .systems import ber_trial, papr_trial, psd_burst

__all__ = ["run_experiment", "papr_values"]

_BATCH = 32


def papr_values(plan, n_windows, seed, executor=None, batch_size=_BATCH):
    """Accumulate exactly n_windows per-window PAPR samples, deterministically.

    Trial t draws from SeedSequence((seed, t)); batches are merged in index
    order and the tail batch is truncated, so the result does not depend on
    the executor or worker count.
    """
    if n_windows < 1:
        raise InvalidArgument("n_windows must be >= 1")
    fn = partial(papr_trial, plan)
    chunks = []
    total = 0
    t0 = 0
    while total < n_windows:
        seqs = [np.random.SeedSequence((seed, t)) for t in range(t0, t0 + batch_size)]
        if executor is None:
            batch = [fn(ss) for ss in seqs]
        else:
            batch = list(executor.map(fn, seqs))
        for values in batch:
            chunks.append(values)
            total += values.size
        t0 += batch_size
    return np.concatenate(chunks)[:n_windows]


def _papr_curve(cfg, curve, seed, executor):
    plan = plan_for_curve(cfg, curve)
    values = papr_values(plan, cfg.papr_windows, seed, executor)
    start, stop, step = cfg.papr_grid_db
    grid = np.arange(start, stop + step / 2, step)
    prob = ccdf(values, grid)
    return CurveResult(
        label=curve.label, x=grid, y=prob,
        x_label="papr_db", y_label="ccdf",
        meta={"windows": int(values.size), "waveform": curve.waveform},
    )


def _ber_curve(cfg, curve, seed, executor):
    plan = plan_for_curve(cfg, curve)
    points = ber_campaign(
        partial(ber_trial, plan),
        cfg.snr_db,
        seed=seed,
        min_errors=cfg.min_errors,
        max_bits=cfg.max_bits,
        executor=executor,
        batch_size=_BATCH,
    )
    return CurveResult(
        label=curve.label,
        x=np.array([p["snr_db"] for p in points]),
        y=np.array([p["ber"] for p in points]),
        ci_low=np.array([p["ci_low"] for p in points]),
        ci_high=np.array([p["ci_high"] for p in points]),
        x_label="snr_db", y_label="ber",
        meta={
            "waveform": curve.waveform,
            "bits": [int(p["bits"]) for p in points],
            "errors": [int(p["errors"]) for p in points],
        },
    )


def _psd_curve(cfg, curve, seed, executor):
    plan = plan_for_curve(cfg, curve)
    s = psd_burst(plan, np.random.SeedSequence((seed, 0)))
    freqs, psd, meta = psd_welch(s, nperseg=cfg.psd_nperseg)
    out_meta = {"waveform": curve.waveform, "segments": meta["segments"]}
    if meta["warning"]:
        out_meta["warning"] = meta["warning"]
    return CurveResult(
        label=curve.label, x=freqs, y=psd,
        x_label="freq_hz", y_label="psd_db", meta=out_meta,
    )


_CURVE_FN = {"papr_ccdf": _papr_curve, "ber": _ber_curve, "psd": _psd_curve}
_FILE_PREFIX = {"papr_ccdf": "ccdf", "ber": "ber", "psd": "psd"}


def compute_curves(cfg, workers=1):
    """All curves of a validated config, in declaration order."""
    make = _CURVE_FN[cfg.kind]
    executor = None
    try:
        if workers > 1:
            executor = ProcessPoolExecutor(max_workers=workers)
        # every curve shares cfg.seed: trial sub-streams pair the fading and
        # noise draws across curves, so compared waveforms see the same channels
        return [make(cfg, curve, cfg.seed, executor) for curve in cfg.curves]
    finally:
        if executor is not None:
            executor.shutdown()


def run_experiment(cfg, workers=1, out_dir=None):
    """Compute every curve, then write CSVs plus manifest.json; returns paths."""
    out = Path(out_dir if out_dir is not None else cfg.out)
    curves = compute_curves(cfg, workers=workers)

    out.mkdir(parents=True, exist_ok=True)
    prefix = _FILE_PREFIX[cfg.kind]
    paths = []
    for result in curves:
        path = out / f"{prefix}_{result.label}.csv"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            result.write_csv(fh)
        paths.append(path)

    manifest = {
        "config_path": cfg.path,
        "config_sha256": hashlib.sha256(cfg.source_text.encode()).hexdigest(),
        "config_text": cfg.source_text,
        "kind": cfg.kind,
        "seed": cfg.seed,
        "artifacts": [p.name for p in paths],
        "curves": {
            r.label: {k: v for k, v in r.meta.items()} for r in curves
        },
        "cp_samples": cfg.cp_samples,
        "versions": {
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "wavelab": _package_version(),
        },
        "created_utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    manifest_path = out / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths + [manifest_path]


def _package_version():
    from . import __version__

    return __version__
