"""Marginal laws of the channel gains ``X_i = rho_i |H_i|^2``.

Every family exposes the same numpy-vectorised interface: ``cdf``,
``quantile``, ``pdf``, ``pdf_derivative`` and the scalar summaries
``mean``, ``median``, ``mode``. SNR values are linear throughout; use
:func:`db_to_linear` at the boundary.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, InfiniteQuantile
from .numerics import reg_gamma_lower, reg_gamma_lower_inv

__all__ = [
    "GainDistribution",
    "RayleighGain",
    "NakagamiGain",
    "WeibullGain",
    "LogNormalGain",
    "db_to_linear",
    "parse_distribution",
]


def db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def _out(value, x):
    return float(value) if np.ndim(x) == 0 else value


class GainDistribution(ABC):
    """Continuous non-negative law supported on ``[0, inf)``."""

    def cdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            pos = np.maximum(x_arr, 0.0)
            val = np.where(x_arr > 0, self._cdf(pos), 0.0)
        return _out(np.clip(val, 0.0, 1.0), x)

    def quantile(self, u):
        u_arr = np.asarray(u, dtype=float)
        if np.any(u_arr == 1.0):
            raise InfiniteQuantile("quantile(1) is +inf for unbounded support")
        if np.any(~((u_arr >= 0.0) & (u_arr < 1.0))):
            raise DomainError("quantile requires u in [0, 1)")
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.where(u_arr > 0, self._quantile(u_arr), 0.0)
        return _out(val, u)

    def pdf(self, x):
        x_arr = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            val = np.where(x_arr >= 0, self._pdf(np.maximum(x_arr, 0.0)), 0.0)
        return _out(val, x)

    def pdf_derivative(self, x):
        x_arr = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            val = np.where(x_arr >= 0, self._pdf_derivative(np.maximum(x_arr, 0.0)), 0.0)
        return _out(val, x)

    @abstractmethod
    def _cdf(self, x): ...

    @abstractmethod
    def _quantile(self, u): ...

    @abstractmethod
    def _pdf(self, x): ...

    @abstractmethod
    def _pdf_derivative(self, x): ...

    @abstractmethod
    def mean(self) -> float: ...

    def median(self) -> float:
        return self.quantile(0.5)

    @abstractmethod
    def mode(self) -> float: ...

    def moments(self) -> tuple[float, float, float]:
        """``(mean, median, mode)``."""
        return self.mean(), self.median(), self.mode()

    def scaled(self, factor: float) -> "GainDistribution":
        """Law of ``factor * X``; only families with an SNR parameter support it."""
        raise NotImplementedError(f"{type(self).__name__} has no SNR parameter")


@dataclass(frozen=True)
class RayleighGain(GainDistribution):
    """Exponential gain with mean ``snr`` (rate ``1/snr``)."""

    snr: float

    def __post_init__(self):
        if not self.snr > 0:
            raise DomainError("Rayleigh SNR must be positive")

    @classmethod
    def from_db(cls, snr_db: float) -> "RayleighGain":
        return cls(db_to_linear(snr_db))

    @property
    def rate(self) -> float:
        return 1.0 / self.snr

    def _cdf(self, x):
        return -np.expm1(-x / self.snr)

    def _quantile(self, u):
        return -self.snr * np.log1p(-u)

    def _pdf(self, x):
        return np.exp(-x / self.snr) / self.snr

    def _pdf_derivative(self, x):
        return -np.exp(-x / self.snr) / self.snr**2

    def mean(self):
        return self.snr

    def median(self):
        return self.snr * math.log(2.0)

    def mode(self):
        return 0.0

    def scaled(self, factor):
        return RayleighGain(self.snr * factor)


@dataclass(frozen=True)
class NakagamiGain(GainDistribution):
    """Gamma gain with shape ``m`` and scale ``snr / m`` (Nakagami-m envelope)."""

    m: float
    snr: float

    def __post_init__(self):
        if not self.m >= 0.5:
            raise DomainError("Nakagami shape m must be >= 0.5")
        if not self.snr > 0:
            raise DomainError("Nakagami SNR must be positive")

    @classmethod
    def from_db(cls, m: float, snr_db: float) -> "NakagamiGain":
        return cls(m, db_to_linear(snr_db))

    @property
    def scale(self) -> float:
        return self.snr / self.m

    def _cdf(self, x):
        return reg_gamma_lower(self.m, x / self.scale)

    def _quantile(self, u):
        return self.scale * reg_gamma_lower_inv(self.m, u)

    def _log_norm(self):
        return special.gammaln(self.m) + self.m * math.log(self.scale)

    def _pdf(self, x):
        return np.exp(special.xlogy(self.m - 1.0, x) - x / self.scale - self._log_norm())

    def _pdf_derivative(self, x):
        lead = -self._pdf(x) / self.scale
        if self.m == 1.0:
            return lead
        body = np.exp(special.xlogy(self.m - 2.0, x) - x / self.scale - self._log_norm())
        return lead + (self.m - 1.0) * body

    def mean(self):
        return self.snr

    def mode(self):
        return (self.m - 1.0) * self.scale if self.m >= 1 else 0.0

    def scaled(self, factor):
        return NakagamiGain(self.m, self.snr * factor)


@dataclass(frozen=True)
class WeibullGain(GainDistribution):
    scale: float
    shape: float

    def __post_init__(self):
        if not (self.scale > 0 and self.shape > 0):
            raise DomainError("Weibull scale and shape must be positive")

    def _cdf(self, x):
        return -np.expm1(-((x / self.scale) ** self.shape))

    def _quantile(self, u):
        return self.scale * (-np.log1p(-u)) ** (1.0 / self.shape)

    def _pdf(self, x):
        k, z = self.shape, x / self.scale
        return (k / self.scale) * z ** (k - 1.0) * np.exp(-(z**k))

    def _pdf_derivative(self, x):
        k, z = self.shape, x / self.scale
        return (k / self.scale**2) * np.exp(-(z**k)) * z ** (k - 2.0) * ((k - 1.0) - k * z**k)

    def mean(self):
        return self.scale * math.gamma(1.0 + 1.0 / self.shape)

    def median(self):
        return self.scale * math.log(2.0) ** (1.0 / self.shape)

    def mode(self):
        k = self.shape
        return self.scale * ((k - 1.0) / k) ** (1.0 / k) if k > 1 else 0.0

    def scaled(self, factor):
        return WeibullGain(self.scale * factor, self.shape)


@dataclass(frozen=True)
class LogNormalGain(GainDistribution):
    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise DomainError("log-normal sigma must be positive")

    def _z(self, x):
        return (np.log(x) - self.mu) / self.sigma

    def _cdf(self, x):
        return special.ndtr(self._z(x))

    def _quantile(self, u):
        return np.exp(self.mu + self.sigma * special.ndtri(u))

    def _pdf(self, x):
        z = self._z(x)
        val = np.exp(-0.5 * z * z) / (x * self.sigma * math.sqrt(2.0 * math.pi))
        return np.where(x > 0, val, 0.0)

    def _pdf_derivative(self, x):
        z = self._z(x)
        val = -self._pdf(x) / x * (1.0 + z / self.sigma)
        return np.where(x > 0, val, 0.0)

    def mean(self):
        return math.exp(self.mu + 0.5 * self.sigma**2)

    def median(self):
        return math.exp(self.mu)

    def mode(self):
        return math.exp(self.mu - self.sigma**2)

    def scaled(self, factor):
        return LogNormalGain(self.mu + math.log(factor), self.sigma)


def _parse_params(body: str) -> dict[str, float]:
    params = {}
    if not body:
        return params
    for item in body.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise DomainError(f"malformed parameter {item!r}, expected key=value")
        try:
            params[key.strip()] = float(value)
        except ValueError as exc:
            raise DomainError(f"parameter {key!r} is not a number: {value!r}") from exc
    return params


_FAMILIES = {
    "rayleigh": ({"snr_db"}, lambda p: RayleighGain.from_db(p["snr_db"])),
    "nakagami": ({"m", "snr_db"}, lambda p: NakagamiGain.from_db(p["m"], p["snr_db"])),
    "weibull": ({"scale", "shape"}, lambda p: WeibullGain(p["scale"], p["shape"])),
    "lognormal": ({"mu", "sigma"}, lambda p: LogNormalGain(p["mu"], p["sigma"])),
}


def parse_distribution(spec: str) -> GainDistribution:
    """Build a marginal from a string such as ``"nakagami:m=5,snr_db=10"``.

    SNRs in the string are in dB and converted to linear here.
    """
    name, _, body = spec.strip().partition(":")
    name = name.lower()
    if name not in _FAMILIES:
        raise DomainError(f"unknown distribution family {name!r}")
    required, build = _FAMILIES[name]
    params = _parse_params(body)
    if set(params) != required:
        raise DomainError(f"{name} expects parameters {sorted(required)}, got {sorted(params)}")
    return build(params)
