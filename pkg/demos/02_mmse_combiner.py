# %% [markdown]
# # Quantization-aware MMSE combining
#
# The combiner `C = R_zz^{-1} R_zx` depends on the bit allocation through the
# AQNM gains.  Its error covariance trace is the cost `J(b)` used by every
# search.

# %%
import numpy as np

from mixadc.channel import gen_ill_conditioned
from mixadc.combiner import cost_j, mmse_combiner
from mixadc.quantization import INF
from mixadc.simulation import empirical_mse

# Scalar sanity check: with H = 1 and unit power J = 1 - alpha/2.
print("J([1]) =", cost_j(1.0, [1], 1.0), " J([2]) =", cost_j(1.0, [2], 1.0))

# %% [markdown]
# On an ill-conditioned 8x8 channel, compare a few allocations at 10 dB and
# check the closed form against a Monte-Carlo run with 64-QAM symbols.

# %%
ch = gen_ill_conditioned(8, kappa_target=1000, seed=5)
p_u = 10.0
print(f"condition number {ch.kappa:.1f}")
for bits in [(1,) * 8, (2,) * 8, (3, 2, 1, 1, 1, 2, 3, 1), (INF,) * 8]:
    j = cost_j(ch, bits, p_u)
    mc = empirical_mse(ch, bits, p_u, 1.0, 400, 100, np.random.default_rng(1))
    print(f"{str(bits):<40} J/N={j / 8:.4f}  Monte Carlo={mc:.4f}")

res = mmse_combiner(ch, (2,) * 8, p_u)
print("max |R_zz C - R_zx| =", np.abs(res.r_zz @ res.c - res.r_zx).max())
