"""Exact linear algebra over the small base fields

Matrices are numpy int64 arrays of element codes (``field.encode``).
Prime fields reduce modulo p; F_4 and F_9 go through precomputed
addition and multiplication tables indexed by codes.
"""
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DomainError


class _Tables:
    """Code-level arithmetic for one field"""

    def __init__(self, field):
        self.field = field
        self.order = field.order
        self.p = field.p if field.degree == 1 and hasattr(field, 'p') else 0
        if not self.p:
            q = field.order
            elements = [field.decode(c) for c in range(q)]
            self.add = np.zeros((q, q), dtype=np.int64)
            self.mul = np.zeros((q, q), dtype=np.int64)
            for i, a in enumerate(elements):
                for j, b in enumerate(elements):
                    self.add[i, j] = field.encode(field.add(a, b))
                    self.mul[i, j] = field.encode(field.mul(a, b))
            self.neg = np.array([field.encode(field.neg(a)) for a in elements], dtype=np.int64)
            self.inv_table = np.array(
                [0] + [field.encode(field.inv(a)) for a in elements[1:]], dtype=np.int64)

    def inv(self, code: int) -> int:
        if code == 0:
            raise DomainError("inversion of zero")
        if self.p:
            return pow(int(code), self.p - 2, self.p)
        return int(self.inv_table[code])

    def scale(self, c, v: np.ndarray) -> np.ndarray:
        if self.p:
            return (c * v) % self.p
        return self.mul[c, v]

    def axpy(self, v: np.ndarray, coeffs: np.ndarray, row: np.ndarray) -> np.ndarray:
        """v - coeffs[:, None] * row, elementwise over a block of rows"""
        if self.p:
            return (v - coeffs[:, None] * row[None, :]) % self.p
        return self.add[v, self.neg[self.mul[coeffs[:, None], row[None, :]]]]

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.p:
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for k in range(A.shape[1]):
            out = self.add[out, self.mul[A[:, k][:, None], B[k][None, :]]]
        return out


@lru_cache(maxsize=None)
def tables(field) -> _Tables:
    return _Tables(field)


def as_matrix(rows: Sequence[Sequence[int]]) -> np.ndarray:
    """Build an int64 code matrix from nested sequences"""
    matrix = np.array(rows, dtype=np.int64)
    if matrix.ndim == 1:
        matrix = matrix.reshape(1, -1) if matrix.size else np.zeros((0, 0), dtype=np.int64)
    return matrix


def transpose(A: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(A.T)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def encode_matrix(rows, field) -> np.ndarray:
    """Element matrix -> code matrix"""
    return as_matrix([[field.encode(v) for v in row] for row in rows])


def decode_vector(vector, field) -> List:
    return [field.decode(int(c)) for c in vector]


def rref(A: np.ndarray, field) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form; returns (R, pivot columns)"""
    T = tables(field)
    R = np.array(A, dtype=np.int64, copy=True)
    m, n = R.shape if R.ndim == 2 else (0, 0)
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        R[r] = T.scale(T.inv(int(R[r, c])), R[r])
        others = np.nonzero(R[:, c])[0]
        others = others[others != r]
        if others.size:
            R[others] = T.axpy(R[others], R[others, c], R[r])
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A: np.ndarray, field) -> int:
    if A.size == 0:
        return 0
    return len(rref(A, field)[1])


def nullspace(A: np.ndarray, field) -> np.ndarray:
    """Right kernel basis, one vector per row, in free-column order"""
    T = tables(field)
    n = A.shape[1]
    R, pivots = rref(A, field)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for row, pc in enumerate(pivots):
            value = int(R[row, f])
            if value:
                basis[k, pc] = (-value) % T.p if T.p else int(T.neg[value])
    return basis


def solve(A: np.ndarray, B: np.ndarray, field) -> np.ndarray:
    """One solution X of A X = B (free variables set to zero)"""
    m, n = A.shape
    aug = np.concatenate([A, B], axis=1)
    R, pivots = rref(aug, field)
    if any(pc >= n for pc in pivots):
        raise DomainError("linear system is inconsistent")
    X = np.zeros((n, B.shape[1]), dtype=np.int64)
    for row, pc in enumerate(pivots):
        X[pc] = R[row, n:]
    return X


def inverse(A: np.ndarray, field) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise DomainError(f"cannot invert a {A.shape[0]}x{A.shape[1]} matrix")
    R, pivots = rref(np.concatenate([A, identity(n)], axis=1), field)
    if pivots[:n] != list(range(n)):
        raise DomainError("matrix is singular")
    return np.ascontiguousarray(R[:, n:])


def matmul(A: np.ndarray, B: np.ndarray, field) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DomainError(f"shape mismatch {A.shape} @ {B.shape}")
    return tables(field).matmul(A, B)


def add(A: np.ndarray, B: np.ndarray, field) -> np.ndarray:
    T = tables(field)
    return (A + B) % T.p if T.p else T.add[A, B]


def kron(A: np.ndarray, B: np.ndarray, field) -> np.ndarray:
    """Kronecker product, row (i, k) -> i * rows(B) + k"""
    T = tables(field)
    if T.p:
        return np.kron(A, B) % T.p
    out = T.mul[A[:, None, :, None], B[None, :, None, :]]
    return out.reshape(A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])


def independent_columns(A: np.ndarray, field) -> List[int]:
    """Greedy left-to-right maximal set of independent columns"""
    return rref(A, field)[1]


def independent_rows(A: np.ndarray, field) -> List[int]:
    return rref(transpose(A), field)[1]


def left_inverse(A: np.ndarray, field) -> Tuple[np.ndarray, List[int]]:
    """For full column rank A: (L, rows) with L @ A = I and L supported on ``rows``"""
    m, n = A.shape
    rows = independent_rows(A, field)
    if len(rows) != n:
        raise DomainError(f"matrix has column rank {len(rows)} < {n}")
    square_inv = inverse(A[rows], field)
    L = np.zeros((n, m), dtype=np.int64)
    L[:, rows] = square_inv
    return L, rows


def hadamard(A: np.ndarray, B: np.ndarray, field) -> np.ndarray:
    """Entrywise product"""
    T = tables(field)
    return (A * B) % T.p if T.p else T.mul[A, B]
