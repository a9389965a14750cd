"""Elliptic curves in generalized Weierstrass form

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

over a base field F_q. Points may live over any single-step extension of
the base (the residue fields of places); the field is passed to every
arithmetic call so one curve serves all degrees.
"""
import logging
from dataclasses import dataclass
from math import lcm
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import divisors, factorint

from config.config import FIELD_CONFIG
from .errors import DomainError, ResourceError
from .fields import (ResidueFields, default_extension, galois_field, solve_artin_schreier, sqrt_char2,
                     sqrt_ext)
from .poly import Poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Point:
    """Affine point (x, y); both coordinates None for the point at infinity"""
    x: Any = None
    y: Any = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return "P_inf" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = Point()


@dataclass(frozen=True)
class ZetaData:
    q: int
    trace: int
    point_counts: Tuple[int, ...]   # N_1..N_dmax
    place_counts: Tuple[int, ...]    # B_1..B_dmax

    def N(self, d: int) -> int:
        return self.point_counts[d - 1]

    def B(self, d: int) -> int:
        return self.place_counts[d - 1]

    def to_json(self) -> Dict[str, Any]:
        return {
            'q': self.q,
            'trace': self.trace,
            'N': list(self.point_counts),
            'B': list(self.place_counts)
        }


@dataclass(frozen=True)
class CurveClass:
    case: str
    n1: int
    slack: int
    group: Tuple[int, ...]
    sigma_caveat: bool = False

    def to_json(self) -> Dict[str, Any]:
        return {
            'case': self.case,
            'N1': self.n1,
            'slack': self.slack,
            'group': list(self.group),
            'sigma_caveat': self.sigma_caveat
        }


def mobius(k: int) -> int:
    exponents = factorint(k).values()
    if any(e > 1 for e in exponents):
        return 0
    return -1 if len(exponents) % 2 else 1


class Curve:
    """Smooth generalized Weierstrass curve over ``field``"""

    def __init__(self, field, a1=None, a2=None, a3=None, a4=None, a6=None, equation: Optional[str] = None):
        zero = field.zero
        self.field = field
        self.a1, self.a2, self.a3, self.a4, self.a6 = (
            zero if c is None else c for c in (a1, a2, a3, a4, a6))
        self.equation = equation
        self._lifted: Dict[Any, Tuple[Any, ...]] = {field: self.coefficients}
        self._class: Optional[CurveClass] = None
        self._rational_points: Optional[List[Point]] = None
        if self.discriminant == zero:
            raise DomainError(f"singular curve: {self.normal_form()}")

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def coefficients(self) -> Tuple[Any, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and other.field == self.field and other.coefficients == self.coefficients

    def __hash__(self) -> int:
        return hash((self.field, self.coefficients))

    def __repr__(self) -> str:
        return f"Curve({self.normal_form()} over GF({self.q}))"

    def normal_form(self) -> str:
        F = self.field
        lhs, rhs = ["y^2"], ["x^3"]
        for c, term, side in ((self.a1, "x*y", lhs), (self.a3, "y", lhs), (self.a2, "x^2", rhs),
                              (self.a4, "x", rhs), (self.a6, "", rhs)):
            if c == F.zero:
                continue
            coeff = F.format(c)
            if not term:
                side.append(coeff)
            elif c == F.one:
                side.append(term)
            else:
                side.append(f"{coeff}*{term}")
        return f"{' + '.join(lhs)} = {' + '.join(rhs)}"

    @property
    def discriminant(self):
        F = self.field
        a1, a2, a3, a4, a6 = self.coefficients
        c = F.from_int
        m = F.mul
        b2 = F.add(m(a1, a1), m(c(4), a2))
        b4 = F.add(m(c(2), a4), m(a1, a3))
        b6 = F.add(m(a3, a3), m(c(4), a6))
        b8 = F.sub(F.add(F.add(m(m(a1, a1), a6), m(c(4), m(a2, a6))), m(a2, m(a3, a3))),
                   F.add(m(a1, m(a3, a4)), m(a4, a4)))
        disc = F.neg(m(m(b2, b2), b8))
        disc = F.sub(disc, m(c(8), m(b4, m(b4, b4))))
        disc = F.sub(disc, m(c(27), m(b6, b6)))
        return F.add(disc, m(c(9), m(b2, m(b4, b6))))

    # polynomial pieces used by the function field

    @property
    def rhs_poly(self) -> Poly:
        """x^3 + a2*x^2 + a4*x + a6"""
        return Poly(self.field, [self.a6, self.a4, self.a2, self.field.one])

    @property
    def h_poly(self) -> Poly:
        """a1*x + a3"""
        return Poly(self.field, [self.a3, self.a1])

    # point arithmetic over an extension

    def lifted(self, F) -> Tuple[Any, ...]:
        if F not in self._lifted:
            self._lifted[F] = tuple(F.lift(c) for c in self.coefficients)
        return self._lifted[F]

    def contains(self, P: Point, F=None) -> bool:
        if P.is_infinity:
            return True
        F = F or self.field
        a1, a2, a3, a4, a6 = self.lifted(F)
        x, y = P.x, P.y
        lhs = F.mul(y, F.add(y, F.add(F.mul(a1, x), a3)))
        rhs = F.add(F.mul(F.mul(x, x), F.add(x, a2)), F.add(F.mul(a4, x), a6))
        return lhs == rhs

    def _check(self, P: Point, F) -> None:
        if not self.contains(P, F):
            raise DomainError(f"point {P!r} is not on {self!r}")

    def neg(self, P: Point, F=None) -> Point:
        if P.is_infinity:
            return P
        F = F or self.field
        a1, _, a3, _, _ = self.lifted(F)
        return Point(P.x, F.sub(F.neg(P.y), F.add(F.mul(a1, P.x), a3)))

    def add(self, P: Point, Q: Point, F=None) -> Point:
        """Chord-tangent group law with identity P_inf"""
        F = F or self.field
        self._check(P, F)
        self._check(Q, F)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        a1, a2, a3, a4, _ = self.lifted(F)
        if P.x == Q.x:
            if F.add(F.add(P.y, Q.y), F.add(F.mul(a1, Q.x), a3)) == F.zero:
                return INFINITY
            x = P.x
            num = F.sub(F.add(F.mul(F.from_int(3), F.mul(x, x)), F.add(F.mul(F.from_int(2), F.mul(a2, x)), a4)),
                        F.mul(a1, P.y))
            den = F.add(F.add(F.mul(F.from_int(2), P.y), F.mul(a1, x)), a3)
        else:
            num = F.sub(Q.y, P.y)
            den = F.sub(Q.x, P.x)
        slope = F.div(num, den)
        nu = F.sub(P.y, F.mul(slope, P.x))
        x3 = F.sub(F.sub(F.add(F.mul(slope, slope), F.mul(a1, slope)), a2), F.add(P.x, Q.x))
        y3 = F.sub(F.neg(F.mul(F.add(slope, a1), x3)), F.add(nu, a3))
        return Point(x3, y3)

    def multiply(self, P: Point, k: int, F=None) -> Point:
        F = F or self.field
        if k < 0:
            P, k = self.neg(P, F), -k
        result, base = INFINITY, P
        while k > 0:
            if k & 1:
                result = self.add(result, base, F)
            base = self.add(base, base, F)
            k >>= 1
        return result

    def frobenius(self, P: Point, F, times: int = 1) -> Point:
        if P.is_infinity or F == self.field:
            return P
        return Point(F.frobenius(P.x, times), F.frobenius(P.y, times))

    def orbit(self, P: Point, F) -> List[Point]:
        """The Frobenius orbit of P over the base field"""
        orbit = [P]
        current = self.frobenius(P, F)
        while current != P:
            orbit.append(current)
            current = self.frobenius(current, F)
        return orbit

    def solve_y(self, x, F=None) -> List[Any]:
        """All y in F with (x, y) on the curve"""
        F = F or self.field
        a1, a2, a3, a4, a6 = self.lifted(F)
        b = F.add(F.mul(a1, x), a3)
        c = F.add(F.mul(F.mul(x, x), F.add(x, a2)), F.add(F.mul(a4, x), a6))
        if F.characteristic == 2:
            if b == F.zero:
                return [sqrt_char2(F, c)]
            z = solve_artin_schreier(F, F.div(c, F.mul(b, b)))
            if z is None:
                return []
            y = F.mul(b, z)
            return [y, F.add(y, b)]
        # (y + b/2)^2 = c + b^2/4
        half_b = F.div(b, F.from_int(2))
        s = sqrt_ext(F, F.add(c, F.mul(half_b, half_b)))
        if s is None:
            return []
        if s == F.zero:
            return [F.sub(s, half_b)]
        return [F.sub(s, half_b), F.sub(F.neg(s), half_b)]

    def extension(self, d: int):
        return default_extension(self.field, d)

    def enumerate_points(self, d: int = 1, F=None) -> List[Point]:
        """All points over the degree-d extension, P_inf first"""
        F = F or self.extension(d)
        if F.order > FIELD_CONFIG['enumeration_bound']:
            raise ResourceError(f"cannot enumerate {F.order} x-coordinates; sample places with random_place")
        points = [INFINITY]
        for x in F.elements():
            for y in self.solve_y(x, F):
                points.append(Point(x, y))
        return points

    def rational_points(self) -> List[Point]:
        if self._rational_points is None:
            self._rational_points = self.enumerate_points(1, self.field)
        return self._rational_points

    def point_order(self, P: Point, group_order: Optional[int] = None) -> int:
        group_order = group_order or len(self.rational_points())
        for k in divisors(group_order):
            if self.multiply(P, k).is_infinity:
                return k
        raise DomainError(f"order of {P!r} does not divide {group_order}")

    def group_structure(self) -> Tuple[int, ...]:
        """Invariant factors of C(F_q), e.g. (2, 2) or (3,)"""
        points = self.rational_points()
        n = len(points)
        exponent = 1
        for P in points:
            exponent = lcm(exponent, self.point_order(P, n))
        return (n,) if exponent == n else (n // exponent, exponent)

    def zeta_counts(self, dmax: int) -> ZetaData:
        q = self.q
        n1 = len(self.rational_points())
        trace = q + 1 - n1
        if trace * trace > 4 * q:
            raise DomainError(f"trace {trace} violates the Hasse bound for q={q}")
        sums = [2, trace]
        for _ in range(2, dmax + 1):
            sums.append(trace * sums[-1] - q * sums[-2])
        counts = [q ** d + 1 - sums[d] for d in range(1, dmax + 1)]
        places = []
        for d in range(1, dmax + 1):
            total = sum(mobius(d // e) * counts[e - 1] for e in divisors(d))
            places.append(total // d)
        return ZetaData(q, trace, tuple(counts), tuple(places))

    def count_places(self, d: int) -> int:
        """B_d by exhaustive orbit enumeration over the degree-d extension"""
        F = self.extension(d)
        exact = 0
        for P in self.enumerate_points(d, F):
            if not P.is_infinity and len(self.orbit(P, F)) == d:
                exact += 1
        if d == 1:
            exact += 1
        return exact // d

    def classify(self) -> CurveClass:
        if self._class is None:
            n1 = len(self.rational_points())
            group = self.group_structure()
            if n1 == 1:
                self._class = CurveClass('a', n1, 3, group)
            elif n1 == 2:
                self._class = CurveClass('b', n1, 1, group, sigma_caveat=True)
            elif self.field.characteristic != 2 and n1 == 4 and group == (2, 2):
                self._class = CurveClass('c', n1, 1, group)
            else:
                self._class = CurveClass('d', n1, 0, group)
        return self._class

    def rational(self, value, F):
        """The base-field element equal to ``value``, or None if it is not rational"""
        if F == self.field:
            return value
        if all(c == self.field.zero for c in value[1:]):
            return value[0]
        return None

    def sigma(self, divisor) -> Point:
        """The rational point P with D ~ P + (deg D - 1) P_inf

        ``divisor`` maps places to multiplicities. A place is summed over
        its Frobenius orbit; the sum must be fixed by Frobenius.
        """
        total = INFINITY
        for place, mult in divisor.items():
            if place.is_infinity:
                continue
            F = place.field
            acc = INFINITY
            for P in self.orbit(place.point, F):
                acc = self.add(acc, P, F)
            if not acc.is_infinity:
                x, y = self.rational(acc.x, F), self.rational(acc.y, F)
                if x is None or y is None:
                    raise DomainError(f"orbit sum of {place!r} is not rational")
                acc = Point(x, y)
            total = self.add(total, self.multiply(acc, mult))
        return total

    def to_json(self) -> Dict[str, Any]:
        F = self.field
        data = {'q': self.q}
        if F.degree > 1:
            data['modulus'] = F.modulus.to_json()
        for name, c in zip(('a1', 'a2', 'a3', 'a4', 'a6'), self.coefficients):
            data[name] = F.to_json(c)
        if self.equation:
            data['equation'] = self.equation
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> 'Curve':
        F = galois_field(int(data['q']))
        coeffs = [F.from_json(data.get(name, 0)) for name in ('a1', 'a2', 'a3', 'a4', 'a6')]
        return cls(F, *coeffs, equation=data.get('equation'))

    def residue_fields(self, presets: Optional[Dict[int, Poly]] = None) -> ResidueFields:
        return ResidueFields(self.field, presets)
