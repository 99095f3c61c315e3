"""Copulas used to couple fading marginals.

Bivariate families share the :class:`BivariateCopula` interface (vectorised
evaluation, conditional law, zero-set boundary in copula space, exact
sampler). :class:`ArchLowerCopula` is the n-dimensional lower bound of the
Archimedean class.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EmptyZeroSet
from .marginals import GainDistribution
from .numerics import ToleranceConfig, bisect_vectorized, make_rng

__all__ = [
    "BivariateCopula",
    "Comonotone",
    "Countermonotone",
    "Independence",
    "ShiftedW",
    "GeneralizedCircular",
    "Clayton",
    "ArchLowerCopula",
    "ZeroBoundary",
    "zero_boundary",
    "parse_copula",
    "TAIL_PROB",
]

# Probability clip used wherever a quantile of 1 would otherwise be needed.
TAIL_PROB = 1e-12

_SAMPLER_TOL = ToleranceConfig(abs_tol=1e-13, max_iter=80)


def _check_unit(*arrays):
    for arr in arrays:
        if np.any(~((arr >= 0.0) & (arr <= 1.0))):
            raise DomainError("copula arguments must lie in [0, 1]")


def _out(value, *inputs):
    return float(value) if all(np.ndim(v) == 0 for v in inputs) else value


class BivariateCopula(ABC):
    """Two-dimensional copula ``C(a, b)``."""

    def eval2(self, a, b):
        a_arr = np.asarray(a, dtype=float)
        b_arr = np.asarray(b, dtype=float)
        _check_unit(a_arr, b_arr)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            val = self._eval(a_arr, b_arr)
        return _out(np.clip(val, 0.0, 1.0), a, b)

    @abstractmethod
    def _eval(self, a, b): ...

    def zero_width(self) -> float:
        """Largest ``a`` with ``C(a, b) = 0`` for some ``b > 0``.

        Raises :class:`EmptyZeroSet` when ``C > 0`` on the whole open square.
        """
        raise EmptyZeroSet(f"{self!r} has no zero set inside the open unit square")

    def zero_curve(self, a):
        """Upper edge ``b(a)`` of the zero set ``{C(a, b) = 0}`` for ``a`` in ``[0, zero_width]``."""
        raise EmptyZeroSet(f"{self!r} has no zero set inside the open unit square")

    def conditional(self, v, a):
        """``h(v | a) = dC(u, v)/du`` at ``u = a``, by central difference in ``u``."""
        v_arr = np.asarray(v, dtype=float)
        a_arr = np.asarray(a, dtype=float)
        # small power-of-two step: the piecewise-linear families are only
        # smeared within `step` of a kink, which must stay below outage rtol
        step = 2.0**-33
        hi = np.minimum(a_arr + step, 1.0)
        lo = np.maximum(a_arr - step, 0.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            diff = (self._eval(hi, v_arr) - self._eval(lo, v_arr)) / (hi - lo)
        return _out(np.clip(diff, 0.0, 1.0), v, a)

    def conditional2(self, a: float) -> Callable:
        """The conditional CDF ``v -> h(v | a)`` for fixed ``a`` in ``(0, 1)``."""
        if not 0.0 < a < 1.0:
            raise DomainError("conditioning value must lie in (0, 1)")
        return lambda v: self.conditional(v, a)

    def sample2(self, count: int, seed: int) -> np.ndarray:
        """``count`` draws from the copula as an array of shape ``(count, 2)``."""
        if count < 1:
            raise DomainError("count must be >= 1")
        rng = make_rng(seed)
        return self._sample(rng, count)

    def _sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        # conditional inversion
        u = rng.random(count)
        w = rng.random(count)
        v = bisect_vectorized(
            lambda x: self.conditional(x, u) - w,
            np.zeros(count), np.ones(count), _SAMPLER_TOL,
        )
        return np.column_stack([u, v])

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Comonotone(BivariateCopula):
    """Upper Frechet-Hoeffding bound ``M(a, b) = min(a, b)``."""

    def _eval(self, a, b):
        return np.minimum(a, b)

    def conditional(self, v, a):
        return _out(np.where(np.asarray(v) >= np.asarray(a), 1.0, 0.0), v, a)

    def _sample(self, rng, count):
        u = rng.random(count)
        return np.column_stack([u, u])


@dataclass(frozen=True)
class Countermonotone(BivariateCopula):
    """Lower Frechet-Hoeffding bound ``W(a, b) = max(a + b - 1, 0)``."""

    def _eval(self, a, b):
        return np.maximum(a + b - 1.0, 0.0)

    def zero_width(self):
        return 1.0

    def zero_curve(self, a):
        return 1.0 - np.asarray(a, dtype=float)

    def conditional(self, v, a):
        return _out(np.where(np.asarray(v) >= 1.0 - np.asarray(a), 1.0, 0.0), v, a)

    def _sample(self, rng, count):
        u = rng.random(count)
        return np.column_stack([u, 1.0 - u])


@dataclass(frozen=True)
class Independence(BivariateCopula):
    def _eval(self, a, b):
        return a * b

    def conditional(self, v, a):
        return _out(np.broadcast_to(np.asarray(v, dtype=float), np.broadcast(v, a).shape).copy(), v, a)

    def _sample(self, rng, count):
        return rng.random((count, 2))


@dataclass(frozen=True)
class ShiftedW(BivariateCopula):
    """``max(a + b - t, 0)`` on ``[0, t]^2`` and ``M`` elsewhere.

    ``t = 0`` gives ``M``, ``t = 1`` gives ``W``. Vanishes whenever
    ``a + b <= t``.
    """

    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise DomainError("ShiftedW parameter t must lie in [0, 1]")

    def _eval(self, a, b):
        inside = (a <= self.t) & (b <= self.t)
        return np.where(inside, np.maximum(a + b - self.t, 0.0), np.minimum(a, b))

    def zero_width(self):
        if self.t == 0.0:
            return super().zero_width()
        return self.t

    def zero_curve(self, a):
        return np.maximum(self.t - np.asarray(a, dtype=float), 0.0)

    def conditional(self, v, a):
        v_arr = np.asarray(v, dtype=float)
        a_arr = np.asarray(a, dtype=float)
        t = self.t
        inside = np.where(v_arr <= t, v_arr >= t - a_arr, 1.0)
        val = np.where(a_arr <= t, inside, v_arr >= a_arr)
        return _out(val.astype(float), v, a)

    def _sample(self, rng, count):
        u = rng.random(count)
        return np.column_stack([u, np.where(u <= self.t, self.t - u, u)])


@dataclass(frozen=True)
class GeneralizedCircular(BivariateCopula):
    """Uniform law on the boundary of the rectangle with corners
    ``(0, t), (t, 0), (1, 1-t), (1-t, 1)``.

    ``M`` where ``|a - b| > t``, ``W`` where ``|a + b - 1| > 1 - t`` and
    ``(a + b - t) / 2`` in between; ``t = 1/2`` is the classic circular
    copula, ``t = 0`` gives ``M`` and ``t = 1`` gives ``W``.
    """

    t: float

    def __post_init__(self):
        if not 0.0 <= self.t <= 1.0:
            raise DomainError("circular parameter t must lie in [0, 1]")

    def _eval(self, a, b):
        t = self.t
        mid = 0.5 * (a + b - t)
        w = np.maximum(a + b - 1.0, 0.0)
        val = np.where(np.abs(a + b - 1.0) > 1.0 - t, w, mid)
        return np.where(np.abs(a - b) > t, np.minimum(a, b), val)

    def zero_width(self):
        if self.t == 0.0:
            return super().zero_width()
        return self.t

    def zero_curve(self, a):
        return np.maximum(self.t - np.asarray(a, dtype=float), 0.0)

    def conditional(self, v, a):
        # mass 1/2 on each of the two rectangle edges crossing u = a
        v_arr = np.asarray(v, dtype=float)
        a_arr = np.asarray(a, dtype=float)
        t = self.t
        zero = (v_arr < a_arr - t) | (a_arr + v_arr < t)
        one = (v_arr >= a_arr + t) | (a_arr + v_arr >= 2.0 - t)
        val = np.where(one, 1.0, np.where(zero, 0.0, 0.5))
        return _out(val, v, a)


@dataclass(frozen=True)
class Clayton(BivariateCopula):
    """Clayton copula, ``theta`` in ``[-1, inf) \\ {0}``; ``theta = -1`` is ``W``."""

    theta: float

    def __post_init__(self):
        if not (self.theta >= -1.0 and self.theta != 0.0):
            raise DomainError("Clayton theta must lie in [-1, inf) without 0")

    def _eval(self, a, b):
        th = self.theta
        if th > 0:
            inner = a**-th + b**-th - 1.0
            return np.where((a > 0) & (b > 0), inner ** (-1.0 / th), 0.0)
        inner = np.maximum(a**-th + b**-th - 1.0, 0.0)
        return inner ** (-1.0 / th)

    def conditional(self, v, a):
        th = self.theta
        v_arr = np.asarray(v, dtype=float)
        a_arr = np.asarray(a, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            inner = a_arr**-th + v_arr**-th - 1.0
            pos = inner > 0
            safe = np.where(pos, inner, 1.0)
            val = a_arr ** (-th - 1.0) * safe ** (-1.0 / th - 1.0)
            val = np.where(pos, val, 0.0)
            if th > 0:
                val = np.where(v_arr > 0, val, 0.0)
        return _out(np.clip(val, 0.0, 1.0), v, a)

    def zero_width(self):
        if self.theta > 0:
            return super().zero_width()
        return 1.0

    def zero_curve(self, a):
        th = self.theta
        if th > 0:
            return super().zero_curve(a)
        a_arr = np.asarray(a, dtype=float)
        return np.maximum(1.0 - a_arr**-th, 0.0) ** (-1.0 / th)


@dataclass(frozen=True)
class ArchLowerCopula:
    """``C_n(u) = (max(sum u_i^(1/(n-1)) - n + 1, 0))^(n-1)``; equals ``W`` for ``n = 2``."""

    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError("ArchLowerCopula needs an integer dimension n >= 2")

    @property
    def dim(self) -> int:
        return self.n

    def eval_arch(self, u) -> float | np.ndarray:
        """Evaluate at one point (length-``n`` vector) or at rows of an ``(m, n)`` array."""
        arr = np.asarray(u, dtype=float)
        if arr.shape[-1] != self.n:
            raise DomainError(f"expected {self.n} coordinates, got {arr.shape[-1]}")
        _check_unit(arr)
        k = self.n - 1
        s = np.sum(arr ** (1.0 / k), axis=-1) - k
        val = np.clip(np.maximum(s, 0.0) ** k, 0.0, 1.0)
        return float(val) if arr.ndim == 1 else val

    def sample_arch(self, count: int, seed: int) -> np.ndarray:
        """Exact sampler on the singular support ``sum U_i^(1/(n-1)) = n - 1``.

        Draw ``S`` uniformly on the unit simplex via normalised exponential
        spacings and return ``U_i = (1 - S_i)^(n-1)``.
        """
        if count < 1:
            raise DomainError("count must be >= 1")
        rng = make_rng(seed)
        e = rng.standard_exponential((count, self.n))
        s = e / e.sum(axis=1, keepdims=True)
        return (1.0 - s) ** (self.n - 1)


@dataclass(frozen=True)
class ZeroBoundary:
    """Upper edge ``x2 = B(x1)`` of the zero-mass region in gain space.

    ``x_max`` is ``F1^-1(width)``, clipped to ``F1^-1(1 - TAIL_PROB)`` when
    the zero set spans the whole first margin; ``B`` clips its quantile
    argument the same way, so ``B(0)`` stays finite.
    """

    copula: BivariateCopula
    F1: GainDistribution
    F2: GainDistribution
    width: float
    x_max: float

    def __call__(self, x):
        u1 = np.where(np.asarray(x) >= self.x_max, self.width, self.F1.cdf(x))
        u2 = np.clip(self.copula.zero_curve(np.minimum(u1, self.width)), 0.0, 1.0 - TAIL_PROB)
        return self.F2.quantile(u2)


def zero_boundary(copula: BivariateCopula, F1: GainDistribution, F2: GainDistribution) -> ZeroBoundary:
    """Boundary of ``{(x1, x2): C(F1(x1), F2(x2)) = 0}`` as a function of ``x1``."""
    width = copula.zero_width()
    x_max = F1.quantile(min(width, 1.0 - TAIL_PROB))
    return ZeroBoundary(copula, F1, F2, width, x_max)


def _params(body: str) -> dict[str, float]:
    out = {}
    for item in filter(None, body.split(",")):
        key, sep, value = item.partition("=")
        if not sep:
            raise DomainError(f"malformed copula parameter {item!r}")
        try:
            out[key.strip()] = float(value)
        except ValueError as exc:
            raise DomainError(f"copula parameter {key!r} is not a number") from exc
    return out


def parse_copula(spec: str):
    """Copula from ``shifted_w:t=0.9``, ``circular:t=0.4``, ``clayton:theta=-0.75``,
    ``w``, ``m``, ``indep`` or ``arch_lower:n=3``."""
    name, _, body = spec.strip().partition(":")
    name = name.lower()
    p = _params(body)

    def need(*keys):
        if set(p) != set(keys):
            raise DomainError(f"{name} expects parameters {list(keys)}, got {sorted(p)}")

    if name in ("w", "m", "indep"):
        need()
        return {"w": Countermonotone, "m": Comonotone, "indep": Independence}[name]()
    if name == "shifted_w":
        need("t")
        return ShiftedW(p["t"])
    if name == "circular":
        need("t")
        return GeneralizedCircular(p["t"])
    if name == "clayton":
        need("theta")
        return Clayton(p["theta"])
    if name == "arch_lower":
        need("n")
        if p["n"] != int(p["n"]):
            raise DomainError("arch_lower dimension must be an integer")
        return ArchLowerCopula(int(p["n"]))
    raise DomainError(f"unknown copula {name!r}")
