import os

LOGDIR = os.environ.get("QNCZERO_LOGDIR", ".")

# Numeric policy
SNAP_TOLERANCE = 1e-12
PRUNE_TOLERANCE = 1e-12
COMPARE_TOLERANCE = 1e-9

DENSE_QUBIT_LIMIT = 20
MATERIALIZE_TERM_LIMIT = 1 << 22

DEFAULT_SEED = 0

# Exhaustive verification bounds per family (input bits)
EXHAUSTIVE_BOUNDS = {
    "parity": 10,
    "or_reduction": 8,
    "or_exp": 4,
    "fourier_exp": 4,
    "or": 8,
    "and": 8,
    "or_blocked": 10,
    "exact": 7,
    "th_exactsum": 7,
    "counting": 7,
    "th_combined": 7,
    "threshold": 7,
}
GATE_LEVEL_OR_EXP_BOUND = 3
