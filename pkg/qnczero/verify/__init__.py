from qnczero.verify.harness import (VERIFY_MODES, VerificationReport, exhaustive_verify,
                                    report_to_frame)
from qnczero.verify.oracle import ClassicalFunction, classical_function, oracle_eval
from qnczero.verify.scaling import ScalingRow, rows_to_frame, scaling_flags, scaling_table
