"""Exception hierarchy shared by the construction pipeline"""
from typing import Any, Dict, Optional


class ChudnovskyError(Exception):
    """Base class for every error raised by the package"""
    pass


class DomainError(ChudnovskyError, ValueError):
    """Mathematically invalid input (zero inverse, singular curve, pole...)"""
    pass


class UnsupportedOperationError(DomainError):
    """Operation not defined for this field, e.g. square roots in characteristic 2"""
    pass


class ValidationError(ChudnovskyError, ValueError):
    """Invalid command or configuration parameter"""
    pass


class ResourceError(ChudnovskyError):
    """Desk-scale bound exceeded (exhaustive enumeration too large)"""
    pass


class ConstructionError(ChudnovskyError):
    """A randomized construction ran out of retries"""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class InfeasibleShapeError(ConstructionError):
    """No divisor shape reaches the degree target with the available places"""

    def __init__(self, message: str, max_degree: int, target: int):
        super().__init__(message, {'max_degree': max_degree, 'target': target})
        self.max_degree = max_degree
        self.target = target


class VerificationError(ChudnovskyError):
    """A bilinear algorithm failed its exhaustive check"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(ChudnovskyError):
    """An asserted dimension or rank did not hold"""
    pass
