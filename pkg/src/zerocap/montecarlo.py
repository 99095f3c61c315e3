"""Monte Carlo checks of zero-outage claims.

Gains are drawn from explicit couplings (copula samples pushed through
the marginal quantiles, or direct SC constructions) and the combiner
output is compared with the SNR threshold of a claimed rate.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import NamedTuple, Sequence, TextIO

import numpy as np

from .copulas import ArchLowerCopula, BivariateCopula
from .errors import DimensionMismatch, DomainError
from .marginals import GainDistribution
from .numerics import make_rng
from .zoc import Combiner, sc_n_heterogeneous, snr_from_rate

__all__ = [
    "SampleBatch",
    "OutageReport",
    "Verification",
    "gains_from_copula",
    "rotation_coupling_sc",
    "hetero_sc_coupling",
    "empirical_outage",
    "verify_zoc",
]

# largest double below one; keeps quantiles finite
_U_MAX = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class SampleBatch:
    gains: np.ndarray
    seed: int
    coupling: str

    def __post_init__(self):
        if self.gains.ndim != 2:
            raise DomainError("gains must be an N x n matrix")
        if not np.all(np.isfinite(self.gains)) or np.any(self.gains < 0):
            raise DomainError("gains must be finite and non-negative")

    @property
    def n(self) -> int:
        return self.gains.shape[1]

    def __len__(self):
        return self.gains.shape[0]

    def write_csv(self, stream: TextIO) -> None:
        """Header ``x1,...,xn`` then one row per sample, 9 significant digits."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([f"x{i + 1}" for i in range(self.n)])
        for row in self.gains:
            writer.writerow([f"{v:.9g}" for v in row])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


@dataclass(frozen=True)
class OutageReport:
    rate_bits: float
    outage_count: int
    sample_count: int
    min_combiner_value: float

    @property
    def verdict(self) -> str:
        return "zero_outage" if self.outage_count == 0 else "outage_observed"

    @property
    def outage_probability(self) -> float:
        return self.outage_count / self.sample_count

    def as_dict(self) -> dict:
        return {
            "rate_bits": self.rate_bits,
            "outage_count": self.outage_count,
            "sample_count": self.sample_count,
            "min_combiner_value": self.min_combiner_value,
            "verdict": self.verdict,
        }


class Verification(NamedTuple):
    at_claim: OutageReport
    above_claim: OutageReport

    @property
    def passed(self) -> bool:
        return self.at_claim.outage_count == 0 and self.above_claim.outage_count > 0


def _push_through(u: np.ndarray, Fs: Sequence[GainDistribution]) -> np.ndarray:
    u = np.clip(u, 0.0, _U_MAX)
    return np.column_stack([F.quantile(u[:, i]) for i, F in enumerate(Fs)])


def gains_from_copula(
    c: BivariateCopula | ArchLowerCopula,
    Fs: Sequence[GainDistribution],
    count: int,
    seed: int,
) -> SampleBatch:
    """Sklar construction: ``X_i = F_i^-1(U_i)`` with ``U`` drawn from ``c``."""
    if len(Fs) != c.dim:
        raise DimensionMismatch(f"copula has dimension {c.dim} but {len(Fs)} marginals were given")
    if isinstance(c, ArchLowerCopula):
        u = c.sample_arch(count, seed)
    else:
        u = c.sample2(count, seed)
    return SampleBatch(_push_through(u, Fs), seed, repr(c))


def rotation_coupling_sc(F: GainDistribution, n: int, count: int, seed: int) -> SampleBatch:
    """Maximally dependent coupling of ``n`` copies of ``F``.

    ``V_i = frac(U + (i-1)/n)``; the largest ``V_i`` is always at least
    ``1 - 1/n``, so ``max X_i >= F^-1(1 - 1/n)`` on every sample.
    """
    if int(n) != n or n < 2:
        raise DomainError("n must be an integer >= 2")
    if count < 1:
        raise DomainError("count must be >= 1")
    u = make_rng(seed).random(count)
    v = np.mod(u[:, None] + np.arange(n)[None, :] / n, 1.0)
    return SampleBatch(_push_through(v, [F] * n), seed, f"rotation(n={n})")


def hetero_sc_coupling(Fs: Sequence[GainDistribution], count: int, seed: int) -> SampleBatch:
    """Coupling of heterogeneous marginals with ``max X_i >= s*`` on every sample.

    ``[0, 1)`` is split into consecutive intervals of length ``1 - F_i(s*)``.
    Each ``V_i`` rearranges ``U`` so that its own interval lands on the upper
    tail ``[F_i(s*), 1)`` and the rest fills ``[0, F_i(s*))`` in order.
    """
    if len(Fs) < 2:
        raise DomainError("need at least two marginals")
    if count < 1:
        raise DomainError("count must be >= 1")
    s_star = sc_n_heterogeneous(Fs).snr_threshold
    q = np.array([F.cdf(s_star) for F in Fs])
    lengths = 1.0 - q
    lengths = lengths / lengths.sum()
    starts = np.concatenate([[0.0], np.cumsum(lengths)[:-1]])
    q = 1.0 - lengths

    u = make_rng(seed).random(count)
    cols = []
    for i in range(len(Fs)):
        lo, hi = starts[i], starts[i] + lengths[i]
        v = np.where(u < lo, u, np.where(u < hi, q[i] + (u - lo), u - lengths[i]))
        cols.append(v)
    return SampleBatch(_push_through(np.column_stack(cols), Fs), seed, f"hetero_sc(n={len(Fs)})")


def empirical_outage(
    batch: SampleBatch, comb: Combiner, rate_bits: float, rtol: float = 1e-9
) -> OutageReport:
    """Count samples whose combined gain falls below ``2^rate - 1``.

    ``rtol`` widens the threshold by a relative ``1e-9`` so that rounding in a
    claimed rate cannot register as an outage.
    """
    if rate_bits < 0:
        raise DomainError("rate must be non-negative")
    threshold = snr_from_rate(rate_bits)
    combined = comb.combine(batch.gains)
    count = int(np.count_nonzero(combined < threshold - rtol * max(threshold, 1.0)))
    return OutageReport(float(rate_bits), count, len(batch), float(combined.min()))


def verify_zoc(
    coupling,
    Fs: Sequence[GainDistribution],
    comb: Combiner,
    claimed_rate_bits: float,
    N: int = 100_000,
    seed: int = 0x5EED,
    delta_bits: float = 0.05,
) -> Verification:
    """Outage reports at the claimed rate and ``delta_bits`` above it.

    ``coupling`` is a copula object, ``"rotation"`` (homogeneous SC) or
    ``"hetero_sc"``. A pass means zero outages at the claim and at least
    one just above it.
    """
    if N < 1000:
        raise DomainError("verification needs at least 1000 samples")
    Fs = list(Fs)
    if comb is Combiner.MRC and len(Fs) > 2 and any(F != Fs[0] for F in Fs[1:]):
        raise DomainError("no optimal coupling is known for heterogeneous MRC with n > 2")
    if coupling == "rotation":
        if any(F != Fs[0] for F in Fs[1:]):
            raise DomainError("rotation coupling needs identical marginals")
        batch = rotation_coupling_sc(Fs[0], len(Fs), N, seed)
    elif coupling == "hetero_sc":
        batch = hetero_sc_coupling(Fs, N, seed)
    elif isinstance(coupling, (BivariateCopula, ArchLowerCopula)):
        batch = gains_from_copula(coupling, Fs, N, seed)
    else:
        raise DomainError(f"unknown coupling {coupling!r}")
    return Verification(
        empirical_outage(batch, comb, claimed_rate_bits),
        empirical_outage(batch, comb, claimed_rate_bits + delta_bits),
    )
