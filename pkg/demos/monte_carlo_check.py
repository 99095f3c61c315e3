"""Check analytic zero-outage rates by sampling the couplings that achieve them.

A claim passes when no sample is in outage at the claimed rate and some
sample is in outage 0.05 bits above it. Run with
``python3 demos/monte_carlo_check.py``.
"""

from zerocap import (
    ArchLowerCopula,
    Clayton,
    Combiner,
    NakagamiGain,
    RayleighGain,
    ShiftedW,
    generic_two_link,
    mrc_inner_bound,
    mrc_two_link_ct,
    sc_n_heterogeneous,
    sc_n_homogeneous,
    verify_zoc,
)

F, G = RayleighGain(1.0), NakagamiGain(5.0, 1.0)
hetero = [RayleighGain.from_db(10), NakagamiGain.from_db(5, 10)]
cases = [
    ("shifted-W t=0.9, MRC", ShiftedW(0.9), [F, F], Combiner.MRC, mrc_two_link_ct(F, F, 0.9).rate_bits),
    ("Clayton -0.75, MRC", Clayton(-0.75), [F, F], Combiner.MRC,
     generic_two_link(Clayton(-0.75), F, F, Combiner.MRC).rate_bits),
    ("arch lower n=5, MRC", ArchLowerCopula(5), [G] * 5, Combiner.MRC, mrc_inner_bound(G, 5)),
    ("rotation n=10, SC", "rotation", [G] * 10, Combiner.SC, sc_n_homogeneous(G, 10).rate_bits),
    ("heterogeneous SC", "hetero_sc", hetero, Combiner.SC, sc_n_heterogeneous(hetero).rate_bits),
]
for label, coupling, Fs, comb, claim in cases:
    v = verify_zoc(coupling, Fs, comb, claim, N=100_000)
    print(f"{label:22s} claim {claim:.4f} bits: outages {v.at_claim.outage_count:5d} at claim, "
          f"{v.above_claim.outage_count:6d} above -> {'pass' if v.passed else 'FAIL'}")
