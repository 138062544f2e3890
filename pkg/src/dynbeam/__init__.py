"""Beam training for multipath mmWave MIMO with dynamically nulled hierarchical codebooks."""

from .arraycore import beam_gain, inner_product, pattern_samples, steering_vector
from .channel import ChannelRealization, MeasurementModel, apply_channel, draw_channel, measure, snr_to_noise
from .codebook import CodebookState, Codeword, bottom_codeword, initial_index_set, make_codebook_state, synthesize
from .errors import ConfigError, ConfigParseError, ConstraintViolation, DegenerateCodebookError
from .training import (
    SearchTrace,
    TrainingOutcome,
    descend_one_path,
    estimate_gain,
    exhaustive_sweep,
    train_baseline_subtraction,
    train_dynamic,
)

__version__ = "0.1.0"
