"""Small explicit bilinear algorithms used at each interpolation place

Each algorithm is a list of linear forms (one per product, used on both
operands) and a reconstruction matrix from the product vector to the
output coordinates. Forms are the classical Karatsuba-style sums; the
reconstruction is solved once from the forms and cached.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from . import linalg
from .errors import DomainError, InternalConsistencyError
from .fields import default_extension
from .riemann_roch import element_coords
from src.utils.cache import Cache

logger = logging.getLogger(__name__)

# products as sets of input indices summed on each side
TRUNCATED_FORMS: Dict[int, List[Sequence[int]]] = {
    1: [(0,)],
    2: [(0,), (1,), (0, 1)],
    3: [(0,), (1,), (2,), (0, 1), (0, 2)],
}

CONVOLUTION_FORMS: Dict[int, List[Sequence[int]]] = {
    1: [(0,)],
    2: [(0,), (1,), (0, 1)],
    3: [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2)],
    4: [(0,), (1,), (2,), (3,), (0, 1), (0, 2), (2, 3), (1, 3), (0, 1, 2, 3)],
}

_algorithms = Cache()


@dataclass(frozen=True, eq=False)
class InnerAlgorithm:
    """Symmetric bilinear map F_q^k x F_q^k -> F_q^m

    ``forms`` is r x k and ``reconstruction`` is m x r, both as code
    matrices over ``field``.
    """
    kind: str
    degree: int
    order: int
    field: Any
    forms: np.ndarray
    reconstruction: np.ndarray

    @property
    def size(self) -> int:
        return int(self.forms.shape[1])

    @property
    def rank(self) -> int:
        return int(self.forms.shape[0])

    @property
    def outputs(self) -> int:
        return int(self.reconstruction.shape[0])

    def products(self, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
        F = self.field
        left = linalg.matmul(self.forms, np.array(a, dtype=np.int64).reshape(-1, 1), F)[:, 0]
        right = linalg.matmul(self.forms, np.array(b, dtype=np.int64).reshape(-1, 1), F)[:, 0]
        return np.array([F.encode(F.mul(F.decode(int(x)), F.decode(int(y)))) for x, y in zip(left, right)],
                        dtype=np.int64)

    def apply(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        """Output codes for input code vectors a and b"""
        if len(a) != self.size or len(b) != self.size:
            raise DomainError(f"{self.kind} algorithm takes {self.size} coordinates per operand")
        m = self.products(a, b).reshape(-1, 1)
        return [int(c) for c in linalg.matmul(self.reconstruction, m, self.field)[:, 0]]

    def to_json(self) -> Dict[str, Any]:
        return {
            'kind': self.kind,
            'degree': self.degree,
            'order': self.order,
            'rank': self.rank,
            'forms': self.forms.tolist(),
            'reconstruction': self.reconstruction.tolist()
        }


def _form_matrix(field, forms: List[Sequence[int]], k: int) -> np.ndarray:
    out = np.zeros((len(forms), k), dtype=np.int64)
    one = field.encode(field.one)
    for j, indices in enumerate(forms):
        out[j, list(indices)] = one
    return out


def _solve_reconstruction(field, forms: np.ndarray, outputs: int) -> np.ndarray:
    """R with sum_j R[c, j] phi_j(a) phi_j(b) = sum_{i+l=c} a_i b_l for c < outputs"""
    T = linalg.tables(field)
    r, k = forms.shape
    # column j: vec(phi_j phi_j^T)
    system = np.zeros((k * k, r), dtype=np.int64)
    for j in range(r):
        if T.p:
            system[:, j] = np.outer(forms[j], forms[j]).reshape(-1) % T.p
        else:
            system[:, j] = T.mul[forms[j][:, None], forms[j][None, :]].reshape(-1)
    one = field.encode(field.one)
    target = np.zeros((k * k, outputs), dtype=np.int64)
    for i in range(k):
        for l in range(k):
            if i + l < outputs:
                target[i * k + l, i + l] = one
    try:
        X = linalg.solve(system, target, field)
    except DomainError as e:
        raise InternalConsistencyError(f"forms do not span the {outputs}-term product: {e}") from e
    return linalg.transpose(X)


def truncated_algorithm(field, order: int) -> InnerAlgorithm:
    """Product of two order-term series modulo t^order"""
    if order not in TRUNCATED_FORMS:
        raise DomainError(f"no explicit truncated algorithm for order {order}; have {sorted(TRUNCATED_FORMS)}")

    def compute() -> InnerAlgorithm:
        forms = _form_matrix(field, TRUNCATED_FORMS[order], order)
        return InnerAlgorithm('truncated', 1, order, field, forms, _solve_reconstruction(field, forms, order))

    return _algorithms.get_or_compute(('truncated', field, order), compute)


def convolution_algorithm(field, k: int) -> InnerAlgorithm:
    """Full product of two k-term polynomials (2k - 1 outputs)"""
    if k not in CONVOLUTION_FORMS:
        raise DomainError(f"no explicit product algorithm for {k} terms; have {sorted(CONVOLUTION_FORMS)}")

    def compute() -> InnerAlgorithm:
        forms = _form_matrix(field, CONVOLUTION_FORMS[k], k)
        return InnerAlgorithm('convolution', k, 1, field, forms, _solve_reconstruction(field, forms, 2 * k - 1))

    return _algorithms.get_or_compute(('convolution', field, k), compute)


def reduction_matrix(residue, base) -> np.ndarray:
    """d x (2d - 1): column c holds the coordinates of w^c in the residue field"""
    d = residue.degree
    columns = [element_coords(residue, base, residue.pow(residue.generator, c)) for c in range(2 * d - 1)]
    return linalg.transpose(linalg.as_matrix(columns))


def field_algorithm(field, degree: int, residue=None) -> InnerAlgorithm:
    """Multiplication in the degree-d residue field, in power-basis coordinates"""
    if degree == 1:
        return truncated_algorithm(field, 1)
    residue = residue or default_extension(field, degree)
    if residue.degree != degree:
        raise DomainError(f"residue field has degree {residue.degree}, expected {degree}")

    def compute() -> InnerAlgorithm:
        conv = convolution_algorithm(field, degree)
        reconstruction = linalg.matmul(reduction_matrix(residue, field), conv.reconstruction, field)
        return InnerAlgorithm('field', degree, 1, field, conv.forms, reconstruction)

    return _algorithms.get_or_compute(('field', field, degree, residue), compute)


def inner_algorithm(field, degree: int = 1, order: int = 1, residue=None) -> InnerAlgorithm:
    """Algorithm for jets of the given order at a place of the given degree

    Inputs are jet coordinates in coefficient-major order (index j*d + c).
    Jets of order u > 1 over a degree-d residue field compose the truncated
    algorithm with the field algorithm, costing mu(d) * M_hat(u) products.
    """
    if degree < 1 or order < 1:
        raise DomainError(f"degree and order must be positive, got {degree}, {order}")
    if order == 1:
        return field_algorithm(field, degree, residue)
    if degree == 1:
        return truncated_algorithm(field, order)

    def compute() -> InnerAlgorithm:
        outer = truncated_algorithm(field, order)
        inner = field_algorithm(field, degree, residue)
        forms = linalg.kron(outer.forms, inner.forms, field)
        reconstruction = linalg.kron(outer.reconstruction, inner.reconstruction, field)
        logger.debug(f"composite algorithm for degree {degree}, order {order}: {forms.shape[0]} products")
        return InnerAlgorithm('composite', degree, order, field, forms, reconstruction)

    return _algorithms.get_or_compute(('composite', field, degree, order, residue), compute)


def reference_product(field, residue, degree: int, order: int, a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Jet product computed directly in the residue field, for checking"""
    F = residue if degree > 1 else field

    def unpack(codes):
        if degree == 1:
            return [field.decode(int(c)) for c in codes]
        return [tuple(field.decode(int(c)) for c in codes[j * degree:(j + 1) * degree]) for j in range(order)]

    x, y = unpack(a), unpack(b)
    out = []
    for c in range(order):
        acc = F.zero
        for i in range(c + 1):
            acc = F.add(acc, F.mul(x[i], y[c - i]))
        out.extend(element_coords(F, field, acc))
    return out
