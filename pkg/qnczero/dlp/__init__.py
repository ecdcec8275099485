from qnczero.dlp import oracles  # registers the oracle factories
from qnczero.dlp.circuits import (DlpLayout, build_a, build_dlp_circuit, build_phase_flag, build_q1,
                                  build_q2)
from qnczero.dlp.instance import (ReducedInstance, SafePrimeInstance, brute_force_log, dx_chain_map,
                                  make_instance, next_safe_prime, reduce_input)
from qnczero.dlp.oracles import (build_amplitude_split, build_arithmetic_oracle,
                                 build_fourier_oracle)
from qnczero.dlp.solver import DlpResult, solve_dlp
