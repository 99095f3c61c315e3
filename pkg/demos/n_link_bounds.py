"""Inner and outer bounds on the maximum ZOC of n homogeneous MRC links.

Run with ``python3 demos/n_link_bounds.py``.
"""

from zerocap import NakagamiGain, RayleighGain, WeibullGain, bounds_report, bsym_check_w, mrc_gap_limit

for name, F in (("Rayleigh 0 dB", RayleighGain(1.0)), ("Nakagami m=5, 0 dB", NakagamiGain(5.0, 1.0))):
    print(f"\n{name}: gap limit {mrc_gap_limit(F):.4f} bits")
    print("  n   inner  outer_W  outer_JM     gap")
    for r in bounds_report(F, range(2, 11)):
        print(f"{r.n:3d}  {r.inner_bits:6.4f}   {r.outer_w_bits:6.4f}    {r.outer_jm_bits:6.4f}  {r.gap_bits:6.4f}")

# %% The W-boundary outer bound needs f'(F^-1(1 - 1/n)) < 0. A peaked Weibull
# density is still rising at its median, so the check fails for n = 2.
v = bsym_check_w(WeibullGain(1.0, 6.0), 2)
print(f"\nWeibull(1, 6), n=2: f'(median) = {v.condition_value:.4f}, condition holds: {v.holds}")
