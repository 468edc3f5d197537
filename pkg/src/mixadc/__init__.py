"""Variable-resolution ADC receivers: AQNM, MMSE combining, bit allocation."""

from .allocation import (
    BudgetTooSmall,
    GaParams,
    PopulationExhausted,
    PowerModel,
    SearchOutcome,
    adc_power,
    enumerate_bset,
    full_search,
    ga_search,
    total_power,
)
from .channel import ChannelMatrix, gen_ill_conditioned, gen_rayleigh, load_channel, save_channel
from .combiner import CombinerResult, cost_j, cost_j_many, cov_zz, cross_cov_zx, mmse_combiner
from .linalg import condition_number, gaussian_cmatrix, hermitian_solve
from .quantization import INF, alpha_matrix, beta, quant_noise_cov, quantize
from .simulation import MseReport, SweepConfig, empirical_mse, gen_qam64, run_sweep

__version__ = "0.1.0"
