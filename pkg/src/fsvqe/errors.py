"""Exception types shared across the package."""


class FsvqeError(Exception):
    """Base class for package errors."""


class DimensionMismatchError(FsvqeError, ValueError):
    """Operands act on different numbers of qubits or orbitals."""


class CapacityError(FsvqeError, ValueError):
    """Requested dense representation exceeds the supported size."""


class HermiticityError(FsvqeError, ValueError):
    """An operator expected to be Hermitian is not."""


class FcidumpError(FsvqeError, ValueError):
    """Malformed FCIDUMP input; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NoiseModelError(FsvqeError, ValueError):
    """Physically inconsistent noise parameters."""


class UnboundParameterError(FsvqeError, ValueError):
    """A circuit was executed with unresolved angle slots."""
