"""Two dependent Rayleigh links with MRC, coupled by the shifted-W copula C_t.

Run with ``python3 demos/two_link_mrc.py``.
"""

import math

import numpy as np

from zerocap import RayleighGain, mrc_two_link_ct, mrc_two_link_rayleigh

# %% The symmetric case at t = 1 (countermonotone gains) reaches log2(1 + 2 ln 2).
F = RayleighGain(1.0)
best = mrc_two_link_ct(F, F, 1.0)
print(f"max ZOC, two 0 dB Rayleigh links: {best.rate_bits:.6f} bits")
print(f"log2(1 + 2 ln 2)                : {math.log2(1 + 2 * math.log(2)):.6f} bits")

# %% The numerical minimiser and the closed form agree for exponential gains.
for t in (0.25, 0.5, 0.9):
    num = mrc_two_link_ct(RayleighGain(1.0), RayleighGain(1 / 3.162), t)
    closed = mrc_two_link_rayleigh(1.0, 3.162, t)
    print(f"t={t:4}: s*={num.snr_threshold:.6f} ({num.chosen_candidate}), closed form {closed.snr_threshold:.6f}")

# %% Weak-link property: with one link at -5 dB, raising the other link from
# 5 dB to 10 dB changes nothing until t is close to 0.9.
ts = np.linspace(0, 1, 21)
weak_strong = [mrc_two_link_ct(RayleighGain.from_db(-5), RayleighGain.from_db(5), t).rate_bits for t in ts]
weak_stronger = [mrc_two_link_ct(RayleighGain.from_db(-5), RayleighGain.from_db(10), t).rate_bits for t in ts]
print("\n   t   -5/5 dB  -5/10 dB")
for t, a, b in zip(ts, weak_strong, weak_stronger):
    print(f"{t:4.2f}  {a:8.5f}  {b:8.5f}")
