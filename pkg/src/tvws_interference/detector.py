"""Maximum-minimum eigenvalue (MME) spectrum sensing under stable interference.

The received sequence is unit-variance white noise, plus white Gaussian
interference whose power is drawn once per sensing window from the
interference law (scaled so its median equals the configured
interference-to-noise ratio), plus under H1 a BPSK stream passed through a
fixed 4-tap channel. ``L`` consecutive time shifts form the rows of the
sample matrix.

Thresholds are calibrated by Monte Carlo under H0. An optional entropy
adjustment ``threshold * exp(beta * (delta - reference_delta))`` folds the
interference uncertainty into the threshold; it is the identity when
``delta == reference_delta``.

Streams: calibration trial ``i`` uses ``(seed, 0, i)``, held-out H0 trial
``i`` uses ``(seed, 1, i)`` and H1 trial ``i`` uses ``(seed, 2, i)`` at every
SNR, so curves use common random numbers across SNR points.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .analytic import StableLaw, median
from .errors import DomainError, InsufficientTrialsError, RankDeficiencyError
from .mcsim import SCHEMA_VERSION, stable_sample, trial_rng

__all__ = [
    "DetectorConfig",
    "DetectionCurve",
    "GAUSSIAN_REFERENCE_DELTA",
    "CHANNEL_TAPS",
    "generate_received",
    "mme_statistic",
    "h0_statistics",
    "calibrate_threshold",
    "adjust_threshold",
    "detection_curve",
    "curve_csv",
    "curve_json",
]

# int g ln g for the unit-variance Gaussian: -(1/2) ln(2 pi e)
GAUSSIAN_REFERENCE_DELTA = -0.5 * math.log(2.0 * math.pi * math.e)
CHANNEL_TAPS = (1.0, 0.8, 0.5, 0.3)

CALIBRATION, HOLDOUT, SIGNAL = 0, 1, 2


@dataclass(frozen=True)
class DetectorConfig:
    """MME experiment settings.

    ``n_samples`` is N (10000 keeps runs short; full scale is 100000),
    ``smoothing_factor`` is L, SNR and INR are in dB. ``delta=None`` skips
    the entropy adjustment. ``holdout_trials`` defaults to ``trials``.
    """

    n_samples: int = 10_000
    smoothing_factor: int = 8
    target_pfa: float = 0.1
    delta: Optional[float] = None
    snr_grid: Sequence[float] = tuple(float(x) for x in range(-22, -7, 2))
    trials: int = 1000
    seed: int = 0
    inr_db: float = -5.0
    beta: float = 0.1
    reference_delta: float = GAUSSIAN_REFERENCE_DELTA
    holdout_trials: Optional[int] = None
    calibration_trials: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.target_pfa < 1:
            raise DomainError(f"target_pfa must lie in (0, 1), got {self.target_pfa}")
        if self.smoothing_factor < 2:
            raise DomainError(f"smoothing_factor must be >= 2, got {self.smoothing_factor}")
        if self.n_samples <= self.smoothing_factor:
            raise DomainError("n_samples must exceed smoothing_factor")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        object.__setattr__(self, "snr_grid", tuple(float(x) for x in self.snr_grid))

    @property
    def n_holdout(self):
        return self.holdout_trials if self.holdout_trials is not None else self.trials

    @property
    def n_calibration(self):
        return self.calibration_trials if self.calibration_trials is not None else self.trials


@dataclass
class DetectionCurve:
    snr_db: list
    pd: list
    pfa_achieved: float
    threshold: float
    threshold_calibrated: float = field(default=math.nan)


def _db(x):
    return 10.0 ** (x / 10.0)


def generate_received(snr_db, cfg: DetectorConfig, hypothesis: str, interference_law: Optional[StableLaw], rng):
    """``L x N`` matrix of consecutive shifts of the received sequence."""
    if hypothesis not in ("H0", "H1"):
        raise DomainError(f"hypothesis must be 'H0' or 'H1', got {hypothesis!r}")
    n, L = cfg.n_samples, cfg.smoothing_factor
    m = n + L - 1
    x = rng.standard_normal(m)
    if interference_law is not None:
        # quasi-static: one interference level per sensing window
        power = float(stable_sample(interference_law, 1, rng)[0]) * (_db(cfg.inr_db) / median(interference_law))
        x += math.sqrt(power) * rng.standard_normal(m)
    if hypothesis == "H1":
        taps = np.asarray(CHANNEL_TAPS)
        taps = taps / np.linalg.norm(taps)
        bits = 2.0 * rng.integers(0, 2, size=m + len(taps) - 1) - 1.0
        x += math.sqrt(_db(snr_db)) * np.convolve(bits, taps, mode="valid")
    return sliding_window_view(x, n)[:L]


def mme_statistic(samples) -> float:
    """``lambda_max / lambda_min`` of the sample covariance ``X X^T / N``."""
    X = np.asarray(samples, dtype=float)
    L, n = X.shape
    if n <= L:
        raise DomainError(f"need more samples than rows (N={n}, L={L})")
    ev = np.linalg.eigvalsh(X @ X.T / n)
    if ev[0] <= ev[-1] * 1e-12:
        raise RankDeficiencyError(f"sample covariance is singular (eigenvalues {ev[0]:.3g} .. {ev[-1]:.3g})")
    return float(ev[-1] / ev[0])


def _stats_block(cfg, law, key, snr_db, hypothesis, start, stop):
    return np.array(
        [mme_statistic(generate_received(snr_db, cfg, hypothesis, law, trial_rng(cfg.seed, key, i))) for i in range(start, stop)]
    )


def _batch(cfg, law, key, snr_db, hypothesis, n, workers):
    if workers <= 1 or n < 2 * workers:
        return _stats_block(cfg, law, key, snr_db, hypothesis, 0, n)
    edges = np.linspace(0, n, 4 * workers + 1).astype(int)
    k = len(edges) - 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_stats_block, [cfg] * k, [law] * k, [key] * k, [snr_db] * k, [hypothesis] * k, edges[:-1], edges[1:])
        return np.concatenate(list(parts))


def h0_statistics(cfg: DetectorConfig, interference_law=None, n=None, key=HOLDOUT, workers=1) -> np.ndarray:
    """MME statistics of ``n`` noise-plus-interference trials from stream ``key``."""
    return _batch(cfg, interference_law, key, 0.0, "H0", cfg.n_holdout if n is None else n, workers)


def calibrate_threshold(cfg: DetectorConfig, interference_law=None, workers=1) -> float:
    """Empirical ``1 - target_pfa`` quantile of the H0 statistic."""
    n = cfg.n_calibration
    need = math.ceil(50.0 / cfg.target_pfa)
    if n < need:
        raise InsufficientTrialsError(f"{n} calibration trials; at least {need} needed for P_fa={cfg.target_pfa}")
    stats = h0_statistics(cfg, interference_law, n=n, key=CALIBRATION, workers=workers)
    return float(np.quantile(stats, 1.0 - cfg.target_pfa))


def adjust_threshold(threshold: float, delta: float, reference_delta: float, beta: float = 0.1) -> float:
    """``threshold * exp(beta * (delta - reference_delta))``."""
    if not threshold > 0:
        raise DomainError(f"threshold must be positive, got {threshold}")
    return threshold * math.exp(beta * (delta - reference_delta))


def detection_curve(cfg: DetectorConfig, interference_law=None, workers=1) -> DetectionCurve:
    calibrated = calibrate_threshold(cfg, interference_law, workers)
    threshold = calibrated
    if cfg.delta is not None:
        threshold = adjust_threshold(calibrated, cfg.delta, cfg.reference_delta, cfg.beta)
    h0 = h0_statistics(cfg, interference_law, workers=workers)
    pfa = float(np.mean(h0 > threshold))
    pd = []
    for snr in cfg.snr_grid:
        h1 = _batch(cfg, interference_law, SIGNAL, snr, "H1", cfg.trials, workers)
        pd.append(float(np.mean(h1 > threshold)))
    return DetectionCurve(
        snr_db=list(cfg.snr_grid), pd=pd, pfa_achieved=pfa, threshold=threshold, threshold_calibrated=calibrated
    )


def curve_csv(curve: DetectionCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["snr_db", "pd"])
    for s, p in zip(curve.snr_db, curve.pd):
        w.writerow([repr(float(s)), repr(float(p))])
    return buf.getvalue()


def curve_json(curve: DetectionCurve, cfg: DetectorConfig, interference_law=None) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": asdict(cfg),
        "interference_law": None if interference_law is None else asdict(interference_law),
        "threshold": curve.threshold,
        "threshold_calibrated": curve.threshold_calibrated,
        "pfa_achieved": curve.pfa_achieved,
        "snr_db": curve.snr_db,
        "pd": curve.pd,
    }
    return json.dumps(doc, sort_keys=True, indent=1)
