# %% [markdown]
# # The additive quantization noise model
#
# A b-bit ADC is replaced by a gain `alpha = 1 - beta(b)` plus Gaussian noise
# uncorrelated with its input.  This script prints the distortion table and
# checks the model's first two moments by simulation.

# %%
import numpy as np

from mixadc.channel import gen_rayleigh
from mixadc.quantization import INF, alphas, beta, quant_noise_cov, quantize

for b in [1, 2, 3, 4, 5, 6, 8, INF]:
    print(f"b={b!s:>4}  beta={beta(b):.6g}  alpha={1 - beta(b):.6g}")

# %% [markdown]
# Push one fixed received vector through the quantizer many times.  The mean
# shrinks by alpha on each path and the residual variance matches the
# diagonal noise covariance.

# %%
rng = np.random.default_rng(0)
h = gen_rayleigh(4, seed=1).h
bits = [1, 2, 3, 4]
p_u, sigma2 = 10.0, 1.0
r = rng.standard_normal(4) + 1j * rng.standard_normal(4)
z = quantize(np.repeat(r[:, None], 200_000, axis=1), h, bits, p_u, sigma2, rng)

print("alpha          ", np.round(alphas(bits), 4))
print("mean(z)/r      ", np.round((z.mean(axis=1) / r).real, 4))
print("model noise var", np.round(np.diag(quant_noise_cov(h, bits, p_u, sigma2)), 4))
print("sample var     ", np.round(np.var(z, axis=1), 4))
