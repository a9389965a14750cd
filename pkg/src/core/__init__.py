"""Core module

Finite fields, elliptic curves and their function fields, the bound
optimizer and the interpolation builder.
"""

from .errors import (ChudnovskyError, ConstructionError, DomainError, InfeasibleShapeError,
                     InternalConsistencyError, ResourceError, UnsupportedOperationError, ValidationError,
                     VerificationError)
from .fields import ExtField, PrimeField, galois_field
from .curves import Curve, Point
from .catalog import catalog, parse_curve, select_curve
from .function_field import Divisor, FunctionElement, PlaceRef, local_expansion
from .riemann_roch import RiemannRochSpace, riemann_roch_basis
from .costs import CostTable, cost, log_star
from .optimizer import DivisorShape, best_curve, optimize_bound
from .inner import InnerAlgorithm, inner_algorithm
from .tensor import TensorDecomposition, verify
from .slp import SlpProgram, emit_slp
from .builder import BuildPlan, assemble_tensor, build, check_conditions

__all__ = [
    'ChudnovskyError', 'ConstructionError', 'DomainError', 'InfeasibleShapeError', 'InternalConsistencyError',
    'ResourceError', 'UnsupportedOperationError', 'ValidationError', 'VerificationError',
    'ExtField', 'PrimeField', 'galois_field', 'Curve', 'Point', 'catalog', 'parse_curve', 'select_curve',
    'Divisor', 'FunctionElement', 'PlaceRef', 'local_expansion', 'RiemannRochSpace', 'riemann_roch_basis',
    'CostTable', 'cost', 'log_star', 'DivisorShape', 'best_curve', 'optimize_bound',
    'InnerAlgorithm', 'inner_algorithm', 'TensorDecomposition', 'verify', 'SlpProgram', 'emit_slp',
    'BuildPlan', 'assemble_tensor', 'build', 'check_conditions'
]
