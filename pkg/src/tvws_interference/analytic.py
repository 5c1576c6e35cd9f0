"""Closed-form interference statistics.

The aggregate interference of a Poisson field of Rayleigh-faded transmitters
with path-loss exponent ``alpha`` has Laplace transform ``exp(-K s**eta)``
with ``eta = 2/alpha``: a one-sided stable law. This module computes ``K``
from the network geometry and evaluates the density, distribution function,
truncated mean and entropy functional of that law.

Closed-form densities exist for ``eta`` in ``{1, 2/3, 1/2, 1/3}``
(``alpha`` in ``{2, 3, 4, 6}``); other exponents go through
:mod:`tvws_interference.ltinv`. The ``*_paper`` functions reproduce the
published formulas verbatim for side-by-side comparison; they are not used
by any other computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.optimize import brentq

from . import ltinv, specfun
from .errors import DomainError, GeometryError, PointMassError, PoleError
from .geometry import RegionSpec, lune, satisfies_truncation

__all__ = [
    "FadingSpec",
    "InterferenceModel",
    "StableLaw",
    "radial_integral",
    "compute_k",
    "k_by_quadrature",
    "implied_density_angle",
    "laplace_transform",
    "laplace_transform_infinite",
    "pdf",
    "pdf_paper",
    "cdf",
    "ccdf_series",
    "normalization",
    "median",
    "truncated_mean",
    "truncated_mean_paper",
    "airy_asymptotic",
    "airy_crossover",
    "uncertainty",
    "levy_entropy",
    "solve_uncertainty",
]

CLOSED_FORM_ETAS = (1.0, 2.0 / 3.0, 0.5, 1.0 / 3.0)
_QUAD_OPTS = dict(epsabs=0.0, epsrel=1e-11, limit=400)


@dataclass(frozen=True)
class FadingSpec:
    """Power-gain distribution of each link: ``rayleigh`` (exponential power) or ``none``."""

    kind: str = "rayleigh"
    mean_power: float = 1.0

    def __post_init__(self):
        if self.kind not in ("rayleigh", "none"):
            raise DomainError(f"fading kind must be 'rayleigh' or 'none', got {self.kind!r}")
        if not self.mean_power > 0:
            raise DomainError(f"mean_power must be positive, got {self.mean_power}")

    def eta_moment(self, eta):
        """``E[h**eta]`` for the configured gain distribution."""
        scale = self.mean_power ** eta
        if self.kind == "rayleigh":
            return specfun.gamma(1.0 + eta) * scale
        return scale


@dataclass(frozen=True)
class InterferenceModel:
    """Path-loss exponent, node density, region and fading bound together."""

    alpha: float
    lam: float
    region: RegionSpec
    fading: FadingSpec = field(default_factory=FadingSpec)

    def __post_init__(self):
        if not self.alpha >= 2:
            raise DomainError(f"alpha must be >= 2 so that eta = 2/alpha <= 1, got {self.alpha}")
        if not self.lam > 0:
            raise DomainError(f"node density must be positive, got {self.lam}")
        eps = self.region.epsilon
        if eps is not None:
            if self.alpha <= 2 or not satisfies_truncation(self.region.r_max, self.alpha, eps):
                raise GeometryError(
                    f"r_max={self.region.r_max} violates the truncation rule "
                    f"1 - r_max^(2-alpha) >= 1 - epsilon for alpha={self.alpha}, epsilon={eps}"
                )

    @property
    def eta(self):
        return 2.0 / self.alpha


@dataclass(frozen=True)
class StableLaw:
    """One-sided stable law with Laplace transform ``exp(-K s**eta)``."""

    K: float
    eta: float

    def __post_init__(self):
        if not (self.K > 0 and math.isfinite(self.K)):
            raise DomainError(f"K must be positive and finite, got {self.K}")
        if not 0 < self.eta <= 1:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")

    @classmethod
    def from_alpha(cls, K, alpha):
        return cls(K=K, eta=2.0 / alpha)

    @property
    def alpha(self):
        return 2.0 / self.eta

    @property
    def is_point_mass(self):
        return self.eta == 1.0

    @property
    def scale(self):
        """``K**(1/eta)``: the natural unit of the interference level."""
        return self.K ** (1.0 / self.eta)


def _closed_form(eta):
    for e in CLOSED_FORM_ETAS:
        if abs(eta - e) < 1e-12:
            return e
    return None


# ---------------------------------------------------------------------------
# the scale constant K


def radial_integral(eta: float, r_lo: float, r_hi: float) -> float:
    """``int_{r_lo}^{r_hi} r**(-eta) e**(-r) dr`` via incomplete gammas."""
    if not 0 <= r_lo <= r_hi:
        raise GeometryError(f"radial range must satisfy 0 <= r_lo <= r_hi, got [{r_lo}, {r_hi}]")
    a = 1.0 - eta
    if a == 0.0:
        if r_lo == 0:
            raise DomainError("the radial integral diverges at r=0 for alpha=2; use r_p > 0")
        return specfun.exp1(r_lo) - specfun.exp1(r_hi)
    if r_lo > a + 1.0:
        return specfun.upper_incomplete_gamma(a, r_lo) - specfun.upper_incomplete_gamma(a, r_hi)
    return specfun.lower_incomplete_gamma(a, r_hi) - specfun.lower_incomplete_gamma(a, r_lo)


def _angular_prefactor(model, convention):
    geo = lune(model.region)
    if geo.area == 0.0 or geo.theta1 == 0.0:
        raise GeometryError("the interference region is empty (network disk lies inside the protection disk)")
    if convention == "normalized":
        # fraction 2*theta1 / (2*pi) of the full-plane constant pi * lambda
        return model.lam * geo.theta1
    if convention == "paper":
        return math.pi * model.lam * 2.0 * geo.theta1
    raise DomainError(f"unknown K convention {convention!r}; expected 'normalized' or 'paper'")


def compute_k(model: InterferenceModel, convention: str = "normalized") -> StableLaw:
    """Stable law of the interference in the lune.

    ``K = lambda * theta1 * E[h**eta] * int_{r_p}^{r_max} r**(-eta) e**(-r) dr``.

    With ``convention="paper"`` the angular factor is ``pi * lambda * 2 * theta1``
    as printed, which is ``2 pi`` times larger and does not reduce to the
    infinite-network transform when ``theta1 = pi``.
    """
    r = model.region
    if r.r_p >= r.r_max:
        raise GeometryError(
            f"r_p={r.r_p} >= r_max={r.r_max}: the radial range r_p <= r <= r_max is empty (K = 0)"
        )
    eta = model.eta
    k = _angular_prefactor(model, convention) * model.fading.eta_moment(eta) * radial_integral(eta, r.r_p, r.r_max)
    if not k > 0:
        raise DomainError(f"non-positive K={k}")
    return StableLaw(K=k, eta=eta)


def k_by_quadrature(model: InterferenceModel, convention: str = "normalized") -> float:
    """Same constant as :func:`compute_k`, with the radial integral done by adaptive quadrature."""
    r = model.region
    eta = model.eta
    pieces = [r.r_p]
    pieces += [x for x in (1.0, 10.0) if r.r_p < x < r.r_max]
    pieces.append(r.r_max)
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        val, _ = integrate.quad(lambda x: x ** (-eta) * math.exp(-x), lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    return _angular_prefactor(model, convention) * model.fading.eta_moment(eta) * total


def implied_density_angle(K: float, alpha: float, r_max: float, r_p: float = 0.0, fading: FadingSpec = FadingSpec()):
    """Product ``lambda * theta1`` that yields the scale constant ``K``."""
    eta = 2.0 / alpha
    return K / (fading.eta_moment(eta) * radial_integral(eta, r_p, r_max))


def laplace_transform(law: StableLaw, s):
    """``exp(-K s**eta)``; vectorised over ``s >= 0``."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise DomainError("Laplace variable must be >= 0")
    out = np.exp(-law.K * s ** law.eta)
    return float(out) if out.ndim == 0 else out


def laplace_transform_infinite(model: InterferenceModel, s):
    """Transform for the unbounded network: ``exp(-pi lambda E[h^eta]/Gamma(1+eta) s^eta pi eta / sin(pi eta))``.

    With Rayleigh fading the fading factor is 1 and this is the textbook form.
    """
    eta = model.eta
    if eta >= 1:
        raise PoleError("the infinite-network transform diverges at eta = 1 (alpha = 2)")
    s = np.asarray(s, dtype=float)
    fading = model.fading.eta_moment(eta) / specfun.gamma(1.0 + eta)
    out = np.exp(-math.pi * model.lam * fading * s ** eta * math.pi * eta / math.sin(math.pi * eta))
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# densities


_LEVY_C = 1.0 / (2.0 * math.sqrt(math.pi))
_TWO_THIRDS_C = 2.0 ** (4.0 / 3.0) / (3.0 ** 1.5 * math.sqrt(math.pi))
_CBRT3 = 3.0 ** (1.0 / 3.0)


def _pdf_levy(K, r):
    return K * _LEVY_C * r ** -1.5 * math.exp(-K * K / (4.0 * r))


def _pdf_third(K, r):
    return K / (_CBRT3 * r ** (4.0 / 3.0)) * specfun.airy_ai(K / (3.0 * r) ** (1.0 / 3.0))


def _pdf_two_thirds(K, r):
    z = 4.0 * K ** 3 / (27.0 * r * r)
    if z > 745.0:
        return 0.0
    return _TWO_THIRDS_C * K * K * r ** (-7.0 / 3.0) * math.exp(-z) * specfun.kummer_u(1.0 / 6.0, 4.0 / 3.0, z)


def _pdf_series(K, eta, r):
    # convergent tail expansion, used for generic eta once K r^-eta is small
    y = K * r ** (-eta)
    total = 0.0
    for k in range(1, 200):
        size = math.exp(specfun.log_gamma(k * eta + 1.0) - specfun.log_gamma(k + 1.0) + k * math.log(y))
        total += size * math.sin(k * math.pi * eta) * (1 if k % 2 else -1)
        if size < 1e-17 * abs(total) and k > 3:
            break
    return total / (math.pi * r)


def _pdf_scalar(K, eta, r, cfg):
    if not r > 0:
        raise DomainError(f"density argument must be positive, got {r}")
    form = _closed_form(eta)
    if form == 1.0:
        raise PointMassError(f"alpha=2 gives a point mass at r=K={K}; use cdf() or truncated_mean()")
    if form == 0.5:
        return _pdf_levy(K, r)
    if form == 1.0 / 3.0:
        return _pdf_third(K, r)
    if form == 2.0 / 3.0:
        return _pdf_two_thirds(K, r)
    if K * r ** (-eta) < 0.1:
        return _pdf_series(K, eta, r)
    return ltinv.stable_density(K, eta, r, cfg)


def pdf(law: StableLaw, r, cfg: ltinv.InversionConfig = ltinv.InversionConfig()):
    """Density of the interference; vectorised over ``r > 0``.

    Closed forms (``c = K``):

    * ``eta = 1/2``: ``c / (2 sqrt(pi)) r^(-3/2) exp(-c^2 / (4 r))``
    * ``eta = 1/3``: ``c / (3^(1/3) r^(4/3)) Ai(c / (3 r)^(1/3))``
    * ``eta = 2/3``: ``2^(4/3) / (3^(3/2) sqrt(pi)) c^2 r^(-7/3) e^(-z) U(1/6, 4/3, z)``,
      ``z = 4 c^3 / (27 r^2)``

    ``eta = 1`` is a point mass and raises :class:`PointMassError`.
    """
    r_arr = np.asarray(r, dtype=float)
    if r_arr.ndim == 0:
        return _pdf_scalar(law.K, law.eta, float(r_arr), cfg)
    return np.array([_pdf_scalar(law.K, law.eta, float(x), cfg) for x in r_arr.ravel()]).reshape(r_arr.shape)


def pdf_paper(alpha: float, K: float, r):
    """Densities exactly as printed, kept to document their discrepancies.

    ``alpha=2`` (a Dirac delta) evaluates to NaN.
    """
    r = np.asarray(r, dtype=float)

    def one(x):
        if alpha == 2:
            return math.nan
        if alpha == 3:
            z = 4.0 / 27.0 * K ** 0.75 * x ** -2.0
            return (
                2.0 ** (4.0 / 3.0) / (3.0 ** 1.5 * math.sqrt(math.pi) * K * K * x ** (7.0 / 3.0))
                * math.exp(-4.0 / (27.0 * K ** 3 * x * x))
                * specfun.kummer_u(1.0 / 6.0, 4.0 / 3.0, z)
            )
        if alpha == 4:
            return 1.0 / (2.0 * math.sqrt(math.pi) * K * x ** 1.5) * math.exp(-1.0 / (4.0 * K * K * x))
        if alpha == 6:
            return 3.0 / (3.0 * K * x ** (4.0 / 3.0)) * specfun.airy_ai(3.0 * K * x ** (1.0 / 3.0))
        raise DomainError(f"printed densities exist only for alpha in (2, 3, 4, 6), got {alpha}")

    if r.ndim == 0:
        return one(float(r))
    return np.array([one(float(x)) for x in r.ravel()]).reshape(r.shape)


# ---------------------------------------------------------------------------
# integrals of the density


def _left_cutoff(law):
    # below this point the density is smaller than exp(-60) relative to its scale
    eta = law.eta
    if _closed_form(eta) == 1.0:
        return law.K
    rate = (1.0 - eta) * eta ** (eta / (1.0 - eta))
    return law.scale * (60.0 / rate) ** (-(1.0 - eta) / eta)


def _log_quad(func, x_lo, x_hi, width=4.0):
    """``int_{x_lo}^{x_hi} func(x) dx`` in the variable ``u = log x``, split into pieces."""
    if x_hi <= x_lo:
        return 0.0
    u_lo, u_hi = math.log(x_lo), math.log(x_hi)
    n = max(1, math.ceil((u_hi - u_lo) / width))
    edges = np.linspace(u_lo, u_hi, n + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(lambda u: func(math.exp(u)) * math.exp(u), a, b, **_QUAD_OPTS)
        total += val
    return total


def ccdf_series(law: StableLaw, r: float) -> float:
    """``P(I > r)`` from the convergent power series in ``K r**(-eta)``.

    ``(1/pi) sum_k (-1)^(k+1) Gamma(k eta) / k! sin(k pi eta) (K r^-eta)^k``;
    accurate while ``K r**(-eta)`` is of order one or smaller.
    """
    eta = law.eta
    if eta >= 1:
        raise DomainError("the tail series needs eta < 1")
    y = law.K * r ** (-eta)
    total = 0.0
    for k in range(1, 400):
        size = math.exp(specfun.log_gamma(k * eta) - specfun.log_gamma(k + 1.0) + k * math.log(y))
        total += size * math.sin(k * math.pi * eta) * (1 if k % 2 else -1)
        # the bound uses the magnitude: sin(k pi eta) vanishes for some k
        if size < 1e-17 * abs(total) and k > 3:
            break
    return total / math.pi


def _tail_start(law, y=0.5):
    # point where K r^-eta = y
    return (law.K / y) ** (1.0 / law.eta)


def normalization(law: StableLaw, cfg: ltinv.InversionConfig = ltinv.InversionConfig()) -> float:
    """``int_0^inf pdf``: quadrature up to the tail start plus the analytic tail mass."""
    r_tail = _tail_start(law)
    body = _log_quad(lambda x: _pdf_scalar(law.K, law.eta, x, cfg), _left_cutoff(law), r_tail)
    return body + ccdf_series(law, r_tail)


def _cdf_scalar(law, r, cfg):
    if r <= 0:
        return 0.0
    if math.isinf(r):
        return 1.0
    form = _closed_form(law.eta)
    if form == 1.0:
        return 1.0 if r >= law.K else 0.0
    if form == 0.5:
        return specfun.erfc(law.K / (2.0 * math.sqrt(r)))
    if law.K * r ** (-law.eta) <= 0.5:
        return 1.0 - ccdf_series(law, r)
    lo = _left_cutoff(law)
    if r <= lo:
        return 0.0
    return _log_quad(lambda x: _pdf_scalar(law.K, law.eta, x, cfg), lo, r)


def cdf(law: StableLaw, r, cfg: ltinv.InversionConfig = ltinv.InversionConfig()):
    """Distribution function ``P(I <= r)``; vectorised.

    Closed form ``erfc(K / (2 sqrt(r)))`` for ``eta = 1/2``, a unit step at
    ``K`` for ``eta = 1``, otherwise quadrature of :func:`pdf` or the tail
    series, whichever is accurate at ``r``.
    """
    r_arr = np.asarray(r, dtype=float)
    if r_arr.ndim == 0:
        return _cdf_scalar(law, float(r_arr), cfg)
    return np.array([_cdf_scalar(law, float(x), cfg) for x in r_arr.ravel()]).reshape(r_arr.shape)


@lru_cache(maxsize=256)
def _median(K, eta):
    law = StableLaw(K, eta)
    if _closed_form(eta) == 1.0:
        return K
    if _closed_form(eta) == 0.5:
        # erfc(K / (2 sqrt(m))) = 1/2
        z = brentq(lambda x: specfun.erfc(x) - 0.5, 0.1, 1.0, xtol=1e-15)
        return (K / (2.0 * z)) ** 2
    scale = law.scale
    f = lambda u: _cdf_scalar(law, scale * math.exp(u), ltinv.InversionConfig()) - 0.5
    lo, hi = -2.0, 2.0
    while f(lo) > 0:
        lo -= 2.0
    while f(hi) < 0:
        hi += 2.0
    return scale * math.exp(brentq(f, lo, hi, xtol=1e-12))


def median(law: StableLaw) -> float:
    return _median(law.K, law.eta)


def truncated_mean(law: StableLaw, r_max: float, cfg: ltinv.InversionConfig = ltinv.InversionConfig()) -> float:
    """``int_0^{r_max} r pdf(r) dr`` by adaptive quadrature (exact for the point mass)."""
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    if _closed_form(law.eta) == 1.0:
        return law.K if law.K <= r_max else 0.0
    lo = _left_cutoff(law)
    return _log_quad(lambda x: x * _pdf_scalar(law.K, law.eta, x, cfg), lo, r_max)


def truncated_mean_paper(alpha: float, K: float, r_max: float) -> dict:
    """Printed mean formulas.

    Returns ``{"value": float, "note": str}``. For ``alpha=2`` the Dirac
    factor is read as unit mass; for ``alpha=3`` the inverse gamma is the
    functional inverse of ``Gamma(1/6, .)`` and is NaN when its argument
    exceeds ``Gamma(1/6)``, with the reciprocal reading reported as well.
    """
    if alpha == 2:
        return {"value": r_max * r_max / 2.0, "note": "delta(K) read as unit mass"}
    if alpha == 4:
        return {"value": specfun.erfc(1.0 / (2.0 * K * math.sqrt(r_max))), "note": ""}
    if alpha == 6:
        g1 = specfun.upper_incomplete_gamma(2.0 / 3.0, 5.1962 * K ** 1.5 * math.sqrt(r_max))
        g2 = specfun.upper_incomplete_gamma(2.0 / 3.0, 1.5197 * K ** 0.75 * math.sqrt(r_max))
        value = 1.6633 * r_max ** (1.0 / 9.0) / K * (1.3541 - g1) - 0.5618 * r_max ** 0.25 / K ** 2.25 * g2
        return {"value": value, "note": ""}
    if alpha == 3:
        arg = 0.8536 * r_max * r_max
        reciprocal = 0.56 / specfun.upper_incomplete_gamma(1.0 / 6.0, arg)
        try:
            value = 0.56 * specfun.inverse_upper_gamma(1.0 / 6.0, arg)
            note = f"reciprocal reading gives {reciprocal:.6g}"
        except DomainError:
            value = math.nan
            note = (
                f"no x with Gamma(1/6, x) = {arg:.6g} (range is (0, {specfun.gamma(1.0 / 6.0):.6g})); "
                f"reciprocal reading gives {reciprocal:.6g}"
            )
        return {"value": value, "note": note}
    raise DomainError(f"printed means exist only for alpha in (2, 3, 4, 6), got {alpha}")


# ---------------------------------------------------------------------------
# Airy asymptotics and the entropy functional


def airy_asymptotic(x):
    """Leading-order large-argument form ``exp(-2 x^(3/2) / 3) / (2 sqrt(pi) x^(1/4))``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("airy_asymptotic needs x > 0")
    out = np.exp(-2.0 * x ** 1.5 / 3.0) / (2.0 * math.sqrt(math.pi) * x ** 0.25)
    return float(out) if out.ndim == 0 else out


def airy_crossover(threshold: float = 0.05) -> float:
    """Argument below which :func:`airy_asymptotic` is off by more than ``threshold`` (relative)."""

    def excess(x):
        return abs(airy_asymptotic(x) / specfun.airy_ai(x) - 1.0) - threshold

    return brentq(excess, 0.01, 20.0, xtol=1e-12)


def _uncertainty_integrand(law, cfg):
    def g(x):
        f = _pdf_scalar(law.K, law.eta, x, cfg)
        return f * math.log(f) if f > 0 else 0.0

    return g


def uncertainty(law: StableLaw, cfg: ltinv.InversionConfig = ltinv.InversionConfig()) -> float:
    """``int_0^inf f ln f dr`` (the negative of the differential entropy).

    Integrated in ``log r`` out to where ``K r**(-eta) = 1e-15``; the
    neglected tail is below ``1e-13`` in absolute terms.
    """
    if _closed_form(law.eta) == 1.0:
        raise DomainError("the entropy functional diverges for the point mass (alpha = 2)")
    hi = _tail_start(law, 1e-15)
    return _log_quad(_uncertainty_integrand(law, cfg), _left_cutoff(law), hi)


def levy_entropy(K: float) -> float:
    """Differential entropy of the ``eta = 1/2`` law: ``(1 + 3 gamma_E + ln(16 pi c^2)) / 2``, ``c = K^2/2``."""
    c = K * K / 2.0
    return 0.5 * (1.0 + 3.0 * specfun.EULER_GAMMA + math.log(16.0 * math.pi * c * c))


def solve_uncertainty(target: float, eta: float = 0.5, sign: str = "literal") -> float:
    """Scale constant ``K`` at which the entropy functional equals ``target``.

    ``sign="literal"`` solves ``int f ln f = target``; ``sign="entropy"``
    solves ``-int f ln f = target``. Uses the scaling law
    ``H(K) = H(1) + ln(K) / eta``.
    """
    if sign not in ("literal", "entropy"):
        raise DomainError(f"sign must be 'literal' or 'entropy', got {sign!r}")
    h_target = -target if sign == "literal" else target
    h1 = -uncertainty(StableLaw(1.0, eta))
    return math.exp(eta * (h_target - h1))
