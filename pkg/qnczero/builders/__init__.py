from qnczero.builders.builder import FAMILIES, build_circuit, build_family, canonical_family
from qnczero.builders.counting import build_counting, feedforward_value, measurement_angle
from qnczero.builders.fourier import (build_fourier_exp, build_or_exp, or_coefficients,
                                      parity_expansion)
from qnczero.builders.level import choose_level
from qnczero.builders.or_circuits import build_or, build_or_blocked
from qnczero.builders.parity import build_parity
from qnczero.builders.reduction import OrReductionSpec, ReductionVariant, build_or_reduction
from qnczero.builders.threshold import (Side, ThresholdSpec, build_exact, build_threshold_combined,
                                        build_threshold_exactsum, candidate_set)
