"""Online prediction with expert advice and stochastic sequential side information."""

from .bounds import (BoundReport, corollary1_upper, corollary2_lower, corollary3_upper,
                     corollary4_lower, lower_bound, upper_bound, xi_star)
from .channels import AdditiveGaussian, BinarySymmetric, FiniteConditional, c_s, load_finite_channel
from .core import absolute_loss, cumulative_loss, load_target_sequence
from .experts import ConstantExperts, FixedSequenceExperts, c_f, l_star_constant
from .forecaster import optimal_eta, run, run_plain_ewa, run_vectorized
from .harness import ExperimentConfig, RegretReport, run_experiment, sweep, verify_bounds
from .special import normal_cdf

__version__ = "0.1.0"
