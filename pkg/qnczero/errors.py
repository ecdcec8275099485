class QncError(Exception):
    """Base class for every error raised by qnczero."""


class CircuitError(QncError):
    pass


class SimulationError(QncError):
    pass


class ParameterError(QncError, ValueError):
    """A builder, instance or command received parameters outside its domain."""


class DlpError(QncError):
    pass
