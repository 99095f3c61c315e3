"""Scalar numerics: bracketed roots, global 1-D minimisation, finite
differences and the regularized incomplete gamma family.

The gamma functions are thin, domain-checked wrappers around
:mod:`scipy.special`; they accept scalars or arrays and return the same
shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize, special

from .errors import DomainError, InvalidInterval, NoConvergence, NoSignChange, NonFinite

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ToleranceConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_iter: int = 200
    grid_points: int = 2048

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")
        if self.grid_points < 16:
            raise DomainError("grid_points must be >= 16")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidInterval(f"bracket requires lo < hi, got [{self.lo}, {self.hi}]")


def find_root_bracketed(
    f: Callable[[float], float],
    bracket: RootBracket,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> float:
    """Root of ``f`` inside ``bracket`` using Brent's method.

    Raises
    ------
    NoSignChange
        If ``f(lo)`` and ``f(hi)`` have the same strict sign.
    NoConvergence
        If the iteration budget ``tol.max_iter`` is exhausted.
    """
    flo, fhi = f(bracket.lo), f(bracket.hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NonFinite(f"f is not finite at the bracket ends: f(lo)={flo}, f(hi)={fhi}")
    if flo == 0.0:
        return float(bracket.lo)
    if fhi == 0.0:
        return float(bracket.hi)
    if flo * fhi > 0:
        raise NoSignChange(f"f(lo)={flo:.6g} and f(hi)={fhi:.6g} have the same sign")
    # brentq refuses rtol below 4 machine epsilons
    rtol = max(tol.rel_tol, 4 * np.finfo(float).eps)
    root, info = optimize.brentq(
        f, bracket.lo, bracket.hi, xtol=tol.abs_tol, rtol=rtol,
        maxiter=tol.max_iter, full_output=True, disp=False,
    )
    if not info.converged:
        raise NoConvergence(f"brentq stopped after {info.iterations} iterations: {info.flag}")
    return float(root)


def bisect_vectorized(
    f: Callable[[np.ndarray], np.ndarray],
    lo: np.ndarray,
    hi: np.ndarray,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> np.ndarray:
    """Elementwise bisection for many independent monotone root problems.

    ``f`` must map an array of abscissae to an array of the same shape with
    ``f(lo) <= 0 <= f(hi)`` in every component. Works for step functions
    too; the result then converges to the jump location.
    """
    lo = np.array(lo, dtype=float, copy=True)
    hi = np.array(hi, dtype=float, copy=True)
    for _ in range(tol.max_iter):
        if np.all(hi - lo <= tol.abs_tol):
            break
        mid = 0.5 * (lo + hi)
        below = f(mid) < 0
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    else:
        raise NoConvergence("vectorised bisection did not reach abs_tol")
    return 0.5 * (lo + hi)


def _golden_section(f, a, b, tol: ToleranceConfig):
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(tol.max_iter):
        if b - a <= tol.abs_tol + tol.rel_tol * abs(c):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def minimize_on_interval(
    f: Callable,
    lo: float,
    hi: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    vectorized: bool = False,
) -> tuple[float, float]:
    """Global minimum of ``f`` on the closed interval ``[lo, hi]``.

    A uniform grid of ``tol.grid_points`` samples (endpoints included) is
    scanned, then the best cell is refined by golden-section search. The
    returned pair is ``(argmin, min)``.

    Parameters
    ----------
    f : callable
        Objective. If ``vectorized`` is true it is called once on the whole
        grid array; otherwise point by point.
    lo, hi : float
        Interval bounds, ``lo <= hi``.

    Raises
    ------
    InvalidInterval
        If ``lo > hi``.
    NonFinite
        If two or more adjacent grid values are non-finite. Isolated
        non-finite samples are skipped.
    """
    if lo > hi:
        raise InvalidInterval(f"lo={lo} > hi={hi}")
    if lo == hi:
        return float(lo), float(f(lo))

    grid = np.linspace(lo, hi, tol.grid_points)
    if vectorized:
        values = np.asarray(f(grid), dtype=float)
    else:
        values = np.array([f(x) for x in grid], dtype=float)

    bad = ~np.isfinite(values)
    if bad.all() or np.any(bad[1:] & bad[:-1]):
        raise NonFinite("objective is non-finite on a run of grid points")
    masked = np.where(bad, np.inf, values)
    i = int(np.argmin(masked))

    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, grid.size - 1)]

    def scalar(x):
        if vectorized:
            return float(np.asarray(f(np.array([x])), dtype=float)[0])
        return float(f(x))

    x_ref, f_ref = _golden_section(scalar, a, b, tol)
    candidates = [(grid[i], masked[i]), (x_ref, f_ref)]
    if not bad[0]:
        candidates.append((grid[0], values[0]))
    if not bad[-1]:
        candidates.append((grid[-1], values[-1]))
    candidates = [(x, v) for x, v in candidates if math.isfinite(v)]
    x_best, f_best = min(candidates, key=lambda c: c[1])
    return float(x_best), float(f_best)


def derivative_central(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """Central difference ``(f(x+h) - f(x-h)) / 2h``."""
    if h is None:
        h = max(1e-6, 1e-6 * abs(x))
    if not h > 0:
        raise DomainError("step size must be positive")
    fp, fm = f(x + h), f(x - h)
    if not (math.isfinite(fp) and math.isfinite(fm)):
        raise NonFinite(f"f not finite around x={x}")
    return (fp - fm) / (2.0 * h)


def _as_output(value, *inputs):
    if all(np.ndim(v) == 0 for v in inputs):
        return float(value)
    return value


def ln_gamma(a):
    """Natural logarithm of the gamma function for ``a > 0``."""
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError("ln_gamma requires a > 0")
    return _as_output(special.gammaln(arr), a)


def reg_gamma_lower(a, x):
    """Regularized lower incomplete gamma function ``P(a, x)``."""
    a_arr = np.asarray(a, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(~(a_arr > 0)):
        raise DomainError("P(a, x) requires a > 0")
    if np.any(~(x_arr >= 0)):
        raise DomainError("P(a, x) requires x >= 0")
    return _as_output(special.gammainc(a_arr, x_arr), a, x)


def reg_gamma_lower_inv(a, q):
    """Inverse of ``P(a, .)``: the ``x >= 0`` with ``P(a, x) = q``, for ``q`` in [0, 1)."""
    a_arr = np.asarray(a, dtype=float)
    q_arr = np.asarray(q, dtype=float)
    if np.any(~(a_arr > 0)):
        raise DomainError("inverse P(a, q) requires a > 0")
    if np.any(~((q_arr >= 0) & (q_arr < 1))):
        raise DomainError("inverse P(a, q) requires q in [0, 1)")
    return _as_output(special.gammaincinv(a_arr, q_arr), a, q)


def make_rng(seed: int) -> np.random.Generator:
    """Counter-based (Philox) generator; the stream depends only on ``seed``."""
    return np.random.Generator(np.random.Philox(int(seed)))
