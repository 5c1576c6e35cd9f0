"""Monte Carlo ground truth for the interference law.

A campaign draws independent Poisson fields of transmitters on the lune,
applies fading and path loss, and records the aggregate interference at the
origin. Trial ``i`` draws from its own generator,
``PCG64(SeedSequence(seed, spawn_key=(i,)))``, so samples do not depend on
how trials are distributed over workers.

Heavy tails (infinite mean for ``eta < 1``) mean comparisons should use
distribution functions and quantiles, never sample means.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .analytic import InterferenceModel, StableLaw
from .errors import DomainError, SingularityError
from .geometry import admissible_half_angle, contains, lune

__all__ = [
    "CampaignParams",
    "CampaignResult",
    "RNG_ALGORITHM",
    "SCHEMA_VERSION",
    "trial_rng",
    "sample_ppp",
    "aggregate_interference",
    "run_campaign",
    "ks_distance",
    "stable_sample",
    "campaign_csv",
    "campaign_json",
]

RNG_ALGORITHM = "numpy PCG64, child stream SeedSequence(seed, spawn_key=(trial_index,))"
SCHEMA_VERSION = 1
_THIN_LUNE = 0.01


@dataclass(frozen=True)
class CampaignParams:
    model: InterferenceModel
    n_trials: int
    seed: int
    tx_power: float = 1.0

    def __post_init__(self):
        if self.n_trials < 1:
            raise DomainError(f"n_trials must be >= 1, got {self.n_trials}")
        if not self.tx_power > 0:
            raise DomainError(f"tx_power must be positive, got {self.tx_power}")


@dataclass
class CampaignResult:
    samples: np.ndarray
    n_nodes: np.ndarray
    seed_used: int
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def n_nodes_mean(self):
        return float(np.mean(self.n_nodes))


def trial_rng(seed: int, *key: int) -> np.random.Generator:
    """Generator for the stream identified by ``(seed, *key)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=key)))


def _uniform_disk(rng, n, r_max):
    r = r_max * np.sqrt(rng.random(n))
    phi = 2.0 * np.pi * rng.random(n)
    return np.column_stack((r * np.cos(phi), r * np.sin(phi)))


def _sample_rejection(region, n, frac, rng):
    out = []
    have = 0
    while have < n:
        m = int(math.ceil((n - have) / frac * 1.2)) + 8
        cand = _uniform_disk(rng, m, region.r_max)
        cand = cand[contains(cand, region)]
        out.append(cand)
        have += len(cand)
    return np.concatenate(out)[:n]


def _sample_stratified(region, n, rng):
    # radius from density proportional to r * arc(r), angle uniform on the admissible arc
    r_lo = max(0.0, region.r_p - region.r_dec)
    r_hi = region.r_max
    grid = np.linspace(r_lo, r_hi, 2049)
    envelope = float(np.max(grid * admissible_half_angle(grid, region))) * 1.05
    radii = []
    have = 0
    while have < n:
        m = 4 * (n - have) + 16
        r = r_lo + (r_hi - r_lo) * rng.random(m)
        keep = rng.random(m) * envelope <= r * admissible_half_angle(r, region)
        radii.append(r[keep])
        have += int(keep.sum())
    r = np.concatenate(radii)[:n]
    half = admissible_half_angle(r, region)
    phi = np.pi - half * (2.0 * rng.random(n) - 1.0)
    return np.column_stack((r * np.cos(phi), r * np.sin(phi)))


def sample_ppp(model: InterferenceModel, rng: np.random.Generator) -> np.ndarray:
    """Poisson field of intensity ``model.lam`` on the lune, as an ``(n, 2)`` array."""
    region = model.region
    geo = lune(region)
    n = int(rng.poisson(model.lam * geo.area)) if geo.area > 0 else 0
    if n == 0:
        return np.empty((0, 2))
    frac = geo.area / (math.pi * region.r_max ** 2)
    if frac >= _THIN_LUNE:
        return _sample_rejection(region, n, frac, rng)
    return _sample_stratified(region, n, rng)


def aggregate_interference(points, model: InterferenceModel, rng: np.random.Generator, tx_power: float = 1.0) -> float:
    """``sum_x P h_x |x|**(-alpha)`` at the origin."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        return 0.0
    dist = np.hypot(pts[:, 0], pts[:, 1])
    if np.any(dist == 0):
        raise SingularityError("an interferer sits exactly at the victim receiver")
    if model.fading.kind == "rayleigh":
        gain = rng.exponential(model.fading.mean_power, size=len(pts))
    else:
        gain = np.full(len(pts), model.fading.mean_power)
    return float(tx_power * np.sum(gain * dist ** (-model.alpha)))


def _run_block(params, start, stop):
    samples = np.empty(stop - start)
    counts = np.empty(stop - start, dtype=np.int64)
    for j, i in enumerate(range(start, stop)):
        rng = trial_rng(params.seed, i)
        pts = sample_ppp(params.model, rng)
        counts[j] = len(pts)
        samples[j] = aggregate_interference(pts, params.model, rng, params.tx_power)
    return samples, counts


def run_campaign(params: CampaignParams, workers: int = 1) -> CampaignResult:
    """Run ``params.n_trials`` trials; identical output for any ``workers``."""
    n = params.n_trials
    if workers <= 1 or n < 2 * workers:
        samples, counts = _run_block(params, 0, n)
    else:
        edges = np.linspace(0, n, 4 * workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_block, [params] * (len(edges) - 1), edges[:-1], edges[1:]))
        samples = np.concatenate([p[0] for p in parts])
        counts = np.concatenate([p[1] for p in parts])
    return CampaignResult(samples=samples, n_nodes=counts, seed_used=params.seed)


def ks_distance(samples, cdf) -> float:
    """Kolmogorov-Smirnov distance ``sup |F_n - F|`` between samples and a CDF."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = len(x)
    if n < 2:
        raise DomainError("the KS distance needs at least 2 samples")
    f = np.asarray(cdf(x), dtype=float)
    if f.shape != x.shape:
        f = np.array([float(cdf(v)) for v in x])
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - f), np.max(f - (i - 1) / n)))


def stable_sample(law: StableLaw, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draws with transform ``exp(-K s**eta)``, ``0 < eta < 1``.

    Totally skewed Chambers-Mallows-Stuck construction in Kanter's form::

        S = sin(eta U) / sin(U)**(1/eta) * (sin((1-eta) U) / E)**((1-eta)/eta)

    with ``U ~ Uniform(0, pi)``, ``E ~ Exp(1)``, then scaled by ``K**(1/eta)``.
    """
    eta = law.eta
    if not 0 < eta < 1:
        raise DomainError(f"stable_sample needs 0 < eta < 1, got {eta}")
    u = np.pi * rng.random(n)
    e = rng.exponential(size=n)
    s = np.sin(eta * u) / np.sin(u) ** (1.0 / eta) * (np.sin((1.0 - eta) * u) / e) ** ((1.0 - eta) / eta)
    return law.K ** (1.0 / eta) * s


# ---------------------------------------------------------------------------
# export


def campaign_csv(result: CampaignResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial_index", "n_nodes", "interference"])
    for i, (k, v) in enumerate(zip(result.n_nodes, result.samples)):
        w.writerow([i, int(k), repr(float(v))])
    return buf.getvalue()


def _params_echo(params):
    d = asdict(params)
    d["model"]["eta"] = params.model.eta
    return d


def campaign_json(params: CampaignParams, result: CampaignResult) -> str:
    q = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99]
    doc = {
        "schema_version": SCHEMA_VERSION,
        "params": _params_echo(params),
        "rng_algorithm": result.rng_algorithm,
        "seed_used": result.seed_used,
        "n_nodes_mean": result.n_nodes_mean,
        "summary": {"quantiles": dict(zip([str(p) for p in q], np.quantile(result.samples, q).tolist()))},
        "samples": result.samples.tolist(),
    }
    return json.dumps(doc, sort_keys=True, indent=1)
