"""Monte-Carlo link simulation and MSE-vs-SNR sweeps.

Each trial draws one channel, holds it fixed over a block of 64-QAM symbol
vectors, adds AWGN, applies the AQNM and combines with the MMSE combiner of
the scheme's allocation.  Closed-form and empirical MSE are both reported,
normalized per stream (divided by N).

Random streams are derived from the root seed by position (trial, scheme,
and SNR index for the GA), never from execution order, so results do not
depend on how the work is scheduled.  Channels, symbols and noise are
shared across SNR points so curves are compared at matched seeds.
"""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .allocation import GaParams, PowerModel, enumerate_bset, full_search, ga_search
from .channel import DEFAULT_KAPPA, gen_ill_conditioned, gen_rayleigh
from .combiner import _as_h, mmse_combiner
from .quantization import INF, quantize

SCHEMES = ("one-bit", "two-bit", "infinite", "full-search", "ga")
DEFAULT_SNR_DB = tuple(float(s) for s in range(-5, 31, 5))
QAM64_LEVELS = np.arange(-7, 8, 2) / np.sqrt(42.0)

_CHANNEL, _NOISE, _GA = 0, 1, 2


def qam64_constellation():
    """The 64 unit-average-energy points of square 64-QAM."""
    return (QAM64_LEVELS[:, None] + 1j * QAM64_LEVELS[None, :]).ravel()


def gen_qam64(n, count_symbols, rng):
    """Uniform random 64-QAM symbols, shape ``(n, count_symbols)``."""
    if n < 1 or count_symbols < 1:
        raise ValueError("counts must be >= 1")
    rng = np.random.default_rng(rng)
    i = rng.integers(0, 8, size=(n, count_symbols))
    q = rng.integers(0, 8, size=(n, count_symbols))
    return QAM64_LEVELS[i] + 1j * QAM64_LEVELS[q]


def empirical_mse(h, bits, p_u, sigma2, symbols, trials, rng):
    """Sample estimate of the per-stream MSE ``E||C^H z - x||^2 / N``.

    The combiner is computed once; each trial draws fresh symbols, AWGN and
    quantization noise through the same channel.
    """
    h = _as_h(h)
    n = h.shape[0]
    rng = np.random.default_rng(rng)
    c = mmse_combiner(h, bits, p_u, sigma2).c
    total = 0.0
    for _ in range(trials):
        x = gen_qam64(n, symbols, rng)
        noise = np.sqrt(sigma2 / 2.0) * (rng.standard_normal(x.shape)
                                         + 1j * rng.standard_normal(x.shape))
        r = np.sqrt(p_u) * (h @ x) + noise
        z = quantize(r, h, bits, p_u, sigma2, rng)
        err = c.conj().T @ z - x
        total += np.sum(np.abs(err) ** 2) / n
    return total / (trials * symbols)


@dataclass(frozen=True)
class SweepConfig:
    n: int = 8
    snr_db_grid: tuple = DEFAULT_SNR_DB
    symbols_per_trial: int = 400
    trials: int = 100
    channel_model: str = "synthetic-ill-conditioned"
    kappa_target: float = DEFAULT_KAPPA
    fixed_channel: bool = False
    schemes: tuple = SCHEMES
    ga: GaParams | None = None
    pm: PowerModel = field(default_factory=PowerModel)
    seed: int = 0

    def __post_init__(self):
        grid = tuple(float(s) for s in self.snr_db_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("snr_db_grid must be nonempty and strictly increasing")
        object.__setattr__(self, "snr_db_grid", grid)
        object.__setattr__(self, "schemes", tuple(self.schemes))
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.symbols_per_trial < 1 or self.trials < 1:
            raise ValueError("symbols_per_trial and trials must be >= 1")
        bad = set(self.schemes) - set(SCHEMES)
        if bad or not self.schemes:
            raise ValueError(f"unknown schemes {sorted(bad)}; choose from {SCHEMES}")
        if self.channel_model not in ("rayleigh", "synthetic-ill-conditioned"):
            raise ValueError(f"unknown channel model {self.channel_model!r}")
        if self.ga is None:
            object.__setattr__(self, "ga", GaParams.defaults(self.n))
        if "ga" in self.schemes:
            size = len(enumerate_bset(self.n, self.pm))
            if self.ga.k > size:
                raise ValueError(f"GA population k={self.ga.k} exceeds the {size} "
                                 f"feasible allocations for n={self.n}")


@dataclass(frozen=True)
class ReportRow:
    scheme: str
    snr_db: float
    mse_closed_form: float
    mse_empirical: float
    b_chosen: tuple
    evaluations: int
    channel_kappa: float
    seed: int


@dataclass
class MseReport:
    rows: list
    n: int
    seed: int
    normalization: str = "per-stream"
    details: dict = field(default_factory=dict)

    def row(self, scheme, snr_db):
        for r in self.rows:
            if r.scheme == scheme and r.snr_db == snr_db:
                return r
        raise KeyError((scheme, snr_db))

    def curve(self, scheme, column="mse_closed_form"):
        return np.array([getattr(r, column) for r in self.rows if r.scheme == scheme])


def _seed_int(*key):
    return int(np.random.SeedSequence(key[0], spawn_key=key[1:]).generate_state(1)[0])


def trial_channel(cfg, trial):
    """Channel used by ``trial`` (the same at every SNR point)."""
    seed = _seed_int(cfg.seed, _CHANNEL, 0 if cfg.fixed_channel else trial)
    if cfg.channel_model == "rayleigh":
        return gen_rayleigh(cfg.n, seed)
    return gen_ill_conditioned(cfg.n, cfg.kappa_target, seed)


def _fixed_bits(scheme, n):
    return {"one-bit": (1,) * n, "two-bit": (2,) * n, "infinite": (INF,) * n}[scheme]


def _run_snr_point(cfg, i_snr):
    snr_db = cfg.snr_db_grid[i_snr]
    p_u, sigma2 = 10.0 ** (snr_db / 10.0), 1.0
    pm = cfg.pm.for_paths(cfg.n)
    bset = None
    if {"full-search", "ga"} & set(cfg.schemes):
        bset = enumerate_bset(cfg.n, pm)
    acc = {s: {"cf": [], "emp": [], "bits": [], "evals": []} for s in cfg.schemes}
    kappas = []
    for t in range(cfg.trials):
        ch = trial_channel(cfg, t)
        kappas.append(ch.kappa)
        for i_s, scheme in enumerate(cfg.schemes):
            if scheme == "full-search":
                out = full_search(ch, p_u, sigma2, pm, bset=bset)
                bits, evals = out.b_star, out.evaluations
            elif scheme == "ga":
                ga = replace(cfg.ga, seed=_seed_int(cfg.seed, _GA, cfg.ga.seed, i_snr, t))
                out = ga_search(ch, p_u, sigma2, pm, ga, bset=bset)
                bits, evals = out.b_star, out.evaluations
            else:
                bits, evals = _fixed_bits(scheme, cfg.n), 0
            j = mmse_combiner(ch, bits, p_u, sigma2).mse
            # same symbol and noise draws at every SNR point (common random numbers)
            rng = np.random.default_rng(
                np.random.SeedSequence(cfg.seed, spawn_key=(_NOISE, t, i_s)))
            emp = empirical_mse(ch, bits, p_u, sigma2, cfg.symbols_per_trial, 1, rng)
            a = acc[scheme]
            a["cf"].append(j / cfg.n)
            a["emp"].append(emp)
            a["bits"].append(bits)
            a["evals"].append(evals)
    rows, details = [], {}
    kappa = float(np.mean(kappas))
    for scheme in cfg.schemes:
        a = acc[scheme]
        counts = Counter(a["bits"])
        top = max(counts.values())
        modal = min(b for b, c in counts.items() if c == top)
        rows.append(ReportRow(
            scheme=scheme,
            snr_db=snr_db,
            mse_closed_form=float(np.mean(a["cf"])),
            mse_empirical=float(np.mean(a["emp"])),
            b_chosen=modal,
            evaluations=int(round(np.mean(a["evals"]))),
            channel_kappa=kappa,
            seed=cfg.seed,
        ))
        details[(scheme, snr_db)] = list(a["bits"])
    return rows, details


def run_sweep(cfg, workers=1):
    """Run every scheme at every SNR point of ``cfg``.

    ``sigma2`` is fixed at 1 so the SNR is carried by ``p_u`` alone.  SNR
    points are independent and may be spread over ``workers`` processes; the
    report is identical for any worker count.
    """
    idx = range(len(cfg.snr_db_grid))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_snr_point, [cfg] * len(idx), idx))
    else:
        parts = [_run_snr_point(cfg, i) for i in idx]
    rows, details = [], {}
    for part_rows, part_details in parts:
        rows.extend(part_rows)
        details.update(part_details)
    order = {s: k for k, s in enumerate(cfg.schemes)}
    rows.sort(key=lambda r: (order[r.scheme], r.snr_db))
    return MseReport(rows=rows, n=cfg.n, seed=cfg.seed, details=details)


def check_ordering(report, tol=1e-9, column="mse_closed_form"):
    """List violations of infinite <= full-search <= ga <= two-bit <= one-bit.

    Only schemes present in the report are compared.  Returns a list of
    human-readable messages, empty when the ordering holds.
    """
    chain = ["infinite", "full-search", "ga", "two-bit", "one-bit"]
    present = {r.scheme for r in report.rows}
    chain = [s for s in chain if s in present]
    problems = []
    for snr in sorted({r.snr_db for r in report.rows}):
        vals = [getattr(report.row(s, snr), column) for s in chain]
        for (s1, v1), (s2, v2) in zip(zip(chain, vals), zip(chain[1:], vals[1:])):
            if v1 > v2 + tol:
                problems.append(f"snr {snr:g} dB: {s1} ({v1:.6g}) > {s2} ({v2:.6g})")
    return problems
