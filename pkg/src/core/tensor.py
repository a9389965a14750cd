"""Bilinear multiplication algorithms for F_{q^n} as flat tensors

    x * y = sum_j phi_j(x) psi_j(y) w_j

with phi_j, psi_j linear forms over F_q and w_j in F_{q^n}. Forms act on
coordinates in the algorithm basis; ``basis_change`` maps power-basis
coordinates (modulo ``modulus``) to that basis. Symmetric algorithms
store one form per product.
"""
import json
import logging
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from . import linalg
from .errors import DomainError, ValidationError, VerificationError
from .fields import ExtField, galois_field
from .poly import Poly

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    passed: bool
    rank: int
    n: int
    symmetric: bool
    basis_invertible: bool
    lower_bound: bool
    pairs_checked: int
    witness: Optional[Dict[str, Any]] = None

    def to_json(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'rank': self.rank,
            'n': self.n,
            'symmetric': self.symmetric,
            'basis_invertible': self.basis_invertible,
            'rank_at_least_2n_minus_1': self.lower_bound,
            'pairs_checked': self.pairs_checked,
            'witness': self.witness
        }


@dataclass(eq=False)
class TensorDecomposition:
    q: int
    n: int
    modulus: Poly
    basis_change: np.ndarray    # n x n
    phi: np.ndarray             # r x n
    w: np.ndarray               # r x n, power-basis coordinates
    psi: Optional[np.ndarray] = None
    provenance: Dict[str, Any] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        self.base = galois_field(self.q)
        r = self.phi.shape[0]
        if self.basis_change.shape != (self.n, self.n):
            raise DomainError(f"basis change must be {self.n}x{self.n}, got {self.basis_change.shape}")
        if self.phi.shape[1] != self.n or self.w.shape != (r, self.n):
            raise DomainError(f"forms {self.phi.shape} and elements {self.w.shape} do not fit n={self.n}")
        if self.psi is not None and self.psi.shape != self.phi.shape:
            raise DomainError(f"right forms {self.psi.shape} differ in shape from left forms {self.phi.shape}")

    @property
    def rank(self) -> int:
        return int(self.phi.shape[0])

    @property
    def symmetric(self) -> bool:
        return self.psi is None or self.psi.tobytes() == self.phi.tobytes()

    @property
    def right(self) -> np.ndarray:
        return self.phi if self.psi is None else self.psi

    @property
    def field(self) -> ExtField:
        return ExtField(self.base, self.modulus, check=False)

    def power_forms(self, right: bool = False) -> np.ndarray:
        """Forms acting directly on power-basis coordinates (r x n)"""
        forms = self.right if right else self.phi
        return linalg.matmul(forms, self.basis_change, self.base)

    @classmethod
    def from_inner(cls, algorithm, residue) -> 'TensorDecomposition':
        """The field-multiplication algorithm of ``inner`` as a tensor for F_{q^d}"""
        if algorithm.kind != 'field':
            raise DomainError(f"only field algorithms describe F_(q^d); got {algorithm.kind}")
        n = algorithm.degree
        return cls(residue.base.order, n, residue.modulus, linalg.identity(n), algorithm.forms,
                   linalg.transpose(algorithm.reconstruction), provenance={'inner': algorithm.kind})

    def multiply_coords(self, a: Sequence[int], b: Sequence[int]) -> List[int]:
        """Product of two power-basis code vectors; r base-field products"""
        if len(a) != self.n or len(b) != self.n:
            raise DomainError(f"operands must have {self.n} coordinates")
        F = self.base
        left = linalg.matmul(self.power_forms(), np.array(a, dtype=np.int64).reshape(-1, 1), F)
        right = linalg.matmul(self.power_forms(True), np.array(b, dtype=np.int64).reshape(-1, 1), F)
        m = linalg.hadamard(left, right, F)
        return [int(c) for c in linalg.matmul(linalg.transpose(self.w), m, F)[:, 0]]

    def apply(self, alpha, beta):
        """alpha * beta for elements of the reference field"""
        F = self.base
        a = [F.encode(c) for c in alpha]
        b = [F.encode(c) for c in beta]
        return tuple(F.decode(c) for c in self.multiply_coords(a, b))

    def to_json(self) -> Dict[str, Any]:
        products = []
        for j in range(self.rank):
            entry = {'phi': self.phi[j].tolist(), 'w': self.w[j].tolist()}
            if self.psi is not None:
                entry['psi'] = self.psi[j].tolist()
            products.append(entry)
        return {
            'q': self.q,
            'n': self.n,
            'modulus': self.modulus.to_json(),
            'basis_change': self.basis_change.tolist(),
            'products': products,
            'symmetric': self.symmetric,
            'rank': self.rank,
            'provenance': self.provenance
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'TensorDecomposition':
        try:
            q, n = int(data['q']), int(data['n'])
            base = galois_field(q)
            products = data['products']
            phi = linalg.as_matrix([p['phi'] for p in products]).reshape(len(products), n)
            w = linalg.as_matrix([p['w'] for p in products]).reshape(len(products), n)
            psi = None
            if any('psi' in p for p in products):
                psi = linalg.as_matrix([p.get('psi', p['phi']) for p in products]).reshape(len(products), n)
            tensor = cls(q, n, Poly.from_json(base, data['modulus']), linalg.as_matrix(data['basis_change']),
                         phi, w, psi, data.get('provenance', {}))
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"malformed bundle: {e}") from e
        if 'rank' in data and int(data['rank']) != tensor.rank:
            raise ValidationError(f"bundle declares rank {data['rank']} but lists {tensor.rank} products")
        return tensor

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1))
        logger.info(f"wrote rank-{self.rank} bundle to {path}")

    @classmethod
    def load(cls, path: Union[str, Path]) -> 'TensorDecomposition':
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ValidationError(f"cannot read bundle {path}: {e}") from e
        return cls.from_json(data)


def reference_powers(field: ExtField, count: int) -> np.ndarray:
    """Row k: power-basis codes of w^k"""
    base = field.base
    rows, current = [], field.one
    for _ in range(count):
        rows.append([base.encode(c) for c in current])
        current = field.mul(current, field.generator)
    return linalg.as_matrix(rows)


def verify(tensor: TensorDecomposition, raise_on_failure: bool = False,
           require_symmetric: bool = False) -> VerificationReport:
    """Exhaustive check of e_i * e_j for every pair of power-basis vectors

    By bilinearity this proves the algorithm multiplies correctly. A pass
    also needs an invertible basis change and at least 2n - 1 products;
    symmetry gates the result only with ``require_symmetric``.
    """
    n, F = tensor.n, tensor.base
    invertible = linalg.rank(tensor.basis_change, F) == n
    powers = reference_powers(tensor.field, 2 * n - 1)
    left, right = tensor.power_forms(), tensor.power_forms(True)
    w_t = linalg.transpose(tensor.w)
    witness, pairs = None, 0
    for i in range(n):
        # column j of got: e_i * e_j through the tensor
        m = linalg.hadamard(np.repeat(left[:, i:i + 1], n, axis=1), right, F)
        got = linalg.matmul(w_t, m, F)
        for j in range(n):
            pairs += 1
            expected = powers[i + j]
            if not np.array_equal(got[:, j], expected):
                witness = {'i': i, 'j': j, 'expected': expected.tolist(), 'got': got[:, j].tolist()}
                break
        if witness is not None:
            break
    lower_bound = tensor.rank >= 2 * n - 1
    report = VerificationReport(
        passed=(witness is None and invertible and lower_bound
                and (tensor.symmetric or not require_symmetric)),
        rank=tensor.rank,
        n=n,
        symmetric=tensor.symmetric,
        basis_invertible=invertible,
        lower_bound=lower_bound,
        pairs_checked=pairs,
        witness=witness
    )
    if report.passed:
        logger.info(f"verified rank-{tensor.rank} tensor for GF({tensor.q}^{n}) on {pairs} basis pairs")
    else:
        logger.warning(f"tensor for GF({tensor.q}^{n}) failed verification: witness={witness}, "
                       f"invertible={invertible}, rank={tensor.rank}, symmetric={tensor.symmetric}")
        if raise_on_failure:
            raise VerificationError("tensor does not multiply correctly", witness)
    return report
