"""Maximum ZOC with selection combining.

Run with ``python3 demos/selection_combining.py``.
"""

from zerocap import NakagamiGain, RayleighGain, sc_n_heterogeneous, sc_n_homogeneous

# %% Homogeneous links at 10 dB: the rate is log2(1 + F^-1(1 - 1/n)).
families = {
    "Rayleigh": RayleighGain.from_db(10),
    "Nakagami m=2": NakagamiGain.from_db(2, 10),
    "Nakagami m=5": NakagamiGain.from_db(5, 10),
    "Nakagami m=10": NakagamiGain.from_db(10, 10),
}
print("  n  " + "  ".join(f"{k:>13}" for k in families))
for n in range(2, 11):
    print(f"{n:3d}  " + "  ".join(f"{sc_n_homogeneous(F, n).rate_bits:13.4f}" for F in families.values()))

# %% Two different marginals: solve F1(s) + F2(s) = 1.
res = sc_n_heterogeneous([RayleighGain.from_db(10), NakagamiGain.from_db(5, 10)])
print(f"\nRayleigh + Nakagami(5), both 10 dB: p*={res.p_star:.4f}, s*={res.snr_threshold:.4f}, "
      f"R={res.rate_bits:.4f} bits")
