from qnczero.simulator.analysis import (fidelity, inner_product, marginal_distribution,
                                        states_equal_up_to_global_phase)
from qnczero.simulator.dense import run_dense
from qnczero.simulator.runner import (BranchOutcome, BranchRun, SimulationConfig, coherent_run,
                                      initial_state, run_branches, run_unitary)
from qnczero.simulator.sparse import apply_gate
from qnczero.simulator.state import SparseState
