from qnczero import builders, circuit, dlp, simulator, verify
from qnczero.errors import CircuitError, DlpError, ParameterError, QncError, SimulationError
