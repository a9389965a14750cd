"""Riemann-Roch spaces L(D) of effective divisors on an elliptic curve

Every f in L(D) is written over one denominator u(x) built from the
x-minimal polynomials of the finite places of D:

    f = (sum a_i x^i + sum b_i x^i y) / u(x)

The monomial degrees are capped by the allowed pole at P_inf and the
remaining conditions v_P(f) >= -n_P are linear in the coefficients.
"""
import logging
from math import ceil
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .curves import Curve
from .errors import DomainError, InternalConsistencyError
from .function_field import (Divisor, FunctionElement, LocalSeries, PlaceRef, local_expansion,
                             series_inv, series_mul)
from .poly import Poly

logger = logging.getLogger(__name__)

Monomial = Tuple[str, int]


def element_coords(F, base, value) -> List[int]:
    """Base-field codes of a residue-field element"""
    if F == base:
        return [base.encode(value)]
    return [base.encode(c) for c in value]


def series_coords(F, base, series: Sequence) -> List[int]:
    out: List[int] = []
    for c in series:
        out.extend(element_coords(F, base, c))
    return out


def multiplication_matrix(F, base, series: Sequence, prec: int) -> np.ndarray:
    """Matrix of g -> series * g on F[t]/t^prec, in base-field coordinates"""
    d = 1 if F == base else F.degree
    blocks = []
    for s in series[:prec]:
        if F == base:
            blocks.append(np.array([[base.encode(s)]], dtype=np.int64))
            continue
        columns = []
        for c in range(d):
            unit = tuple(base.one if i == c else base.zero for i in range(d))
            columns.append(element_coords(F, base, F.mul(s, unit)))
        blocks.append(linalg.transpose(linalg.as_matrix(columns)))
    out = np.zeros((prec * d, prec * d), dtype=np.int64)
    for i in range(prec):
        for j in range(i + 1):
            out[i * d:(i + 1) * d, j * d:(j + 1) * d] = blocks[i - j]
    return out


class RiemannRochSpace:
    """A basis of L(D) for an effective divisor D of positive degree"""

    def __init__(self, curve: Curve, divisor: Divisor, extend: Optional['RiemannRochSpace'] = None):
        if not divisor.is_effective() or divisor.degree < 1:
            raise DomainError(f"L(D) is built for effective divisors of positive degree, got {divisor!r}")
        self.curve = curve
        self.divisor = divisor
        self.field = curve.field
        F = self.field

        self.n_inf = 0
        groups: Dict[Poly, List[PlaceRef]] = {}
        for place, mult in divisor.items():
            if place.is_infinity:
                self.n_inf = mult
                continue
            if place.x_minpoly.degree != place.degree:
                raise DomainError(f"{place!r} is not generated by its x-coordinate")
            groups.setdefault(place.x_minpoly, []).append(place)

        self.u = Poly.one(F)
        self.exponents: Dict[Poly, int] = {}
        for p, places in groups.items():
            k = max(ceil(divisor.multiplicity(P) / P.ramification) for P in places)
            self.exponents[p] = k
            self.u = self.u * p ** k
        deg_u = int(self.u.degree)
        self.max_a = (2 * deg_u + self.n_inf) // 2
        self.max_b = max(-1, (2 * deg_u + self.n_inf - 3) // 2)
        monomials = [('a', i) for i in range(self.max_a + 1)] + [('b', i) for i in range(self.max_b + 1)]
        self.monomials: List[Monomial] = sorted(monomials, key=self.pole_order)
        self._column = {m: j for j, m in enumerate(self.monomials)}

        conditions = self._conditions(groups)
        kernel = linalg.nullspace(conditions, F) if conditions.shape[0] else linalg.identity(len(self.monomials))
        if kernel.shape[0] != divisor.degree:
            raise InternalConsistencyError(
                f"dim L(D) = {kernel.shape[0]} but deg D = {divisor.degree} for D = {divisor!r}")
        graded = self._graded(kernel)
        if extend is not None:
            graded = self._extend(extend, graded)
        self.vectors = graded
        logger.debug(f"L(D) for deg D = {divisor.degree}: {len(self.monomials)} monomials, "
                     f"{conditions.shape[0]} conditions")

    @staticmethod
    def pole_order(monomial: Monomial) -> int:
        kind, i = monomial
        return 2 * i if kind == 'a' else 2 * i + 3

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[0])

    def _monomial_jets(self, series: LocalSeries) -> np.ndarray:
        """Columns: base-field jets of each monomial at the series' place"""
        F, base = series.field, self.field
        powers = series.powers(max(self.max_a, self.max_b, 0))
        columns = []
        for kind, i in self.monomials:
            s = powers[i] if kind == 'a' else series_mul(F, powers[i], series.y, series.prec)
            columns.append(series_coords(F, base, s))
        return linalg.transpose(linalg.as_matrix(columns))

    def _conditions(self, groups: Dict[Poly, List[PlaceRef]]) -> np.ndarray:
        rows = []
        for p, places in groups.items():
            k = self.exponents[p]
            above = {}
            for P in places:
                above[P] = None
                above[P.opposite()] = None
            for P in above:
                count = P.ramification * k - self.divisor.multiplicity(P)
                if count > 0:
                    rows.append(self._monomial_jets(LocalSeries(self.curve, P, count)))
        if not rows:
            return np.zeros((0, len(self.monomials)), dtype=np.int64)
        return np.concatenate(rows, axis=0)

    def _graded(self, kernel: np.ndarray) -> np.ndarray:
        """Echelon basis ordered by pole order at P_inf, each monic in its top monomial"""
        reduced, _ = linalg.rref(kernel[:, ::-1], self.field)
        return np.ascontiguousarray(reduced[:kernel.shape[0], ::-1][::-1])

    def _extend(self, prior: 'RiemannRochSpace', graded: np.ndarray) -> np.ndarray:
        F = self.field
        ratio = self.u.exact_div(prior.u)
        rows = []
        for f in prior.raw_functions():
            a, b = f.a * ratio, f.b * ratio
            row = np.zeros(len(self.monomials), dtype=np.int64)
            for kind, poly in (('a', a), ('b', b)):
                for i, c in enumerate(poly.coeffs):
                    if c != F.zero:
                        if (kind, i) not in self._column:
                            raise InternalConsistencyError(f"L(D) function exceeds the L(2D) ansatz at {kind}{i}")
                        row[self._column[(kind, i)]] = F.encode(c)
            rows.append(row)
        stacked = np.concatenate([np.array(rows, dtype=np.int64), graded], axis=0)
        chosen = linalg.independent_rows(stacked, F)
        if chosen[:prior.dimension] != list(range(prior.dimension)):
            raise InternalConsistencyError("supplied basis is not independent inside the larger space")
        return np.ascontiguousarray(stacked[chosen])

    def _polys(self, vector) -> Tuple[Poly, Poly]:
        F = self.field
        a = [F.zero] * (self.max_a + 1)
        b = [F.zero] * (self.max_b + 1)
        for (kind, i), code in zip(self.monomials, vector):
            (a if kind == 'a' else b)[i] = F.decode(int(code))
        return Poly(F, a), Poly(F, b)

    def raw_functions(self) -> List[FunctionElement]:
        """Basis functions over the common denominator u"""
        return [FunctionElement(self.curve, *self._polys(v), self.u, normalize=False) for v in self.vectors]

    def functions(self) -> List[FunctionElement]:
        return [FunctionElement(self.curve, *self._polys(v), self.u) for v in self.vectors]

    def jets(self, place: PlaceRef, order: int) -> np.ndarray:
        """(order * deg P) x dim matrix: column j holds the jet coordinates of basis function j"""
        base = self.field
        if not place.is_infinity and self.u.evaluate(place.point.x, place.field) != place.field.zero:
            series = LocalSeries(self.curve, place, order)
            monomial_jets = self._monomial_jets(series)
            numerators = linalg.matmul(monomial_jets, linalg.transpose(self.vectors), base)
            u_inv = series_inv(place.field, series.compose(self.u), order)
            return linalg.matmul(multiplication_matrix(place.field, base, u_inv, order), numerators, base)
        columns = [local_expansion(f, place, order).coords() for f in self.raw_functions()]
        return linalg.transpose(linalg.as_matrix(columns))


def riemann_roch_basis(curve: Curve, divisor: Divisor,
                       extend: Optional[RiemannRochSpace] = None) -> List[FunctionElement]:
    return RiemannRochSpace(curve, divisor, extend).functions()


def speciality_index(curve: Curve, divisor: Divisor) -> int:
    """i(D) = l(D) - deg D on a genus-1 curve"""
    degree = divisor.degree
    if degree < 0:
        return -degree
    if degree > 0:
        return 0
    return 1 if curve.sigma(divisor).is_infinity else 0
