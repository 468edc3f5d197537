# %% [markdown]
# # MSE versus SNR for five receiver configurations
#
# One-bit, two-bit and ideal ADCs against the full-search and GA allocations,
# averaged over ill-conditioned channel draws.  Set TRIALS to 100 for the
# full-size run (about a minute for 8 paths).

# %%
from mixadc.simulation import SweepConfig, check_ordering, run_sweep

TRIALS = 20
cfg = SweepConfig(n=8, trials=TRIALS, seed=1)
report = run_sweep(cfg, workers=4)

schemes = cfg.schemes
print("snr_db " + " ".join(f"{s:>12}" for s in schemes))
for snr in cfg.snr_db_grid:
    vals = " ".join(f"{report.row(s, snr).mse_closed_form:>12.4f}" for s in schemes)
    print(f"{snr:>6g} {vals}")
print("ordering violations:", check_ordering(report) or "none")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for s in schemes:
        ax.semilogy(cfg.snr_db_grid, report.curve(s), marker="o", label=s)
    ax.set_xlabel("SNR (dB)")
    ax.set_ylabel("MSE per stream")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig("mse_vs_snr.png", dpi=120)
    print("wrote mse_vs_snr.png")
