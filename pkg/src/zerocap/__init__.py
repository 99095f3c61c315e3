"""Zero-outage capacity of dependent slow-fading channels."""

from .copulas import (
    ArchLowerCopula,
    BivariateCopula,
    Clayton,
    Comonotone,
    Countermonotone,
    GeneralizedCircular,
    Independence,
    ShiftedW,
    ZeroBoundary,
    parse_copula,
    zero_boundary,
)
from .errors import (
    DegenerateQuantile,
    DimensionMismatch,
    DomainError,
    EmptyZeroSet,
    InfiniteQuantile,
    InvalidInterval,
    NoConvergence,
    NonFinite,
    NoSignChange,
    ZocError,
)
from .marginals import (
    GainDistribution,
    LogNormalGain,
    NakagamiGain,
    RayleighGain,
    WeibullGain,
    db_to_linear,
    parse_distribution,
)
from .montecarlo import (
    OutageReport,
    SampleBatch,
    Verification,
    empirical_outage,
    gains_from_copula,
    hetero_sc_coupling,
    rotation_coupling_sc,
    verify_zoc,
)
from .numerics import ToleranceConfig, make_rng
from .zoc import (
    BoundsReport,
    BsymVerdict,
    Combiner,
    ZocResult,
    bounds_report,
    bsym_check_arch,
    bsym_check_w,
    generic_two_link,
    max_zoc_two_link,
    mrc_gap_limit,
    mrc_inner_bound,
    mrc_inner_bound_rayleigh,
    mrc_outer_bound_jm,
    mrc_outer_bound_w,
    mrc_two_link_ct,
    mrc_two_link_rayleigh,
    rate_from_snr,
    rayleigh_gap_limit,
    sc_n_heterogeneous,
    sc_n_homogeneous,
    sc_nakagami,
    sc_rayleigh,
    snr_from_rate,
)

__version__ = "0.1.0"
