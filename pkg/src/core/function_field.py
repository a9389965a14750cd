"""The elliptic function field F_q(x)[y]/(W) of a curve

Functions are (a(x) + b(x)*y) / u(x). Places are Frobenius orbits of
curve points, stored by a canonical representative point, or the place
at infinity. Local expansions are truncated power series over the
residue field of the place.
"""
import logging
import random
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import factorint

from config.config import BUILD_CONFIG
from src.utils.cache import Cache
from .curves import INFINITY, Curve, Point
from .errors import ConstructionError, DomainError
from .fields import ExtField, minimal_polynomial
from .poly import NEG_INF, Poly, poly_gcd

logger = logging.getLogger(__name__)

_places = Cache()

Series = List[Any]


# truncated power series over a field

def pad(series: Sequence[Any], prec: int, zero) -> Series:
    series = list(series[:prec])
    return series + [zero] * (prec - len(series))


def series_add(F, a: Series, b: Series) -> Series:
    return [F.add(x, y) for x, y in zip(a, b)]


def series_mul(F, a: Series, b: Series, prec: int) -> Series:
    zero = F.zero
    out = [zero] * prec
    for i in range(min(len(a), prec)):
        ai = a[i]
        if ai == zero:
            continue
        for j in range(min(len(b), prec - i)):
            if b[j] != zero:
                out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
    return out


def series_inv(F, a: Series, prec: int) -> Series:
    if not a or a[0] == F.zero:
        raise DomainError("series with zero constant term is not invertible")
    inv0 = F.inv(a[0])
    out = [inv0] + [F.zero] * (prec - 1)
    for n in range(1, prec):
        acc = F.zero
        for k in range(1, min(n, len(a) - 1) + 1):
            if a[k] != F.zero:
                acc = F.add(acc, F.mul(a[k], out[n - k]))
        out[n] = F.neg(F.mul(acc, inv0))
    return out


def leading_index(series: Sequence[Any], zero) -> Optional[int]:
    for i, c in enumerate(series):
        if c != zero:
            return i
    return None


def multiplicity(p: Poly, g: Poly) -> int:
    """Largest k with p^k dividing g (g nonzero)"""
    k = 0
    while True:
        quot, rem = divmod(g, p)
        if not rem.is_zero():
            return k
        g, k = quot, k + 1


# function elements

class FunctionElement:
    """f = (a(x) + b(x)*y) / u(x) on a fixed curve"""

    __slots__ = ('curve', 'a', 'b', 'u')

    def __init__(self, curve: Curve, a: Poly, b: Optional[Poly] = None, u: Optional[Poly] = None,
                 normalize: bool = True):
        F = curve.field
        b = b if b is not None else Poly.zero(F)
        u = u if u is not None else Poly.one(F)
        if u.is_zero():
            raise DomainError("zero denominator")
        if normalize:
            g = poly_gcd(poly_gcd(a, b), u)
            if g.degree > 0:
                a, b, u = a // g, b // g, u // g
            lead = F.inv(u.lead)
            if lead != F.one:
                a, b, u = a.scale(lead), b.scale(lead), u.scale(lead)
        self.curve = curve
        self.a, self.b, self.u = a, b, u

    @classmethod
    def constant(cls, curve: Curve, c) -> 'FunctionElement':
        return cls(curve, Poly.constant(curve.field, c))

    @classmethod
    def x(cls, curve: Curve) -> 'FunctionElement':
        return cls(curve, Poly.x(curve.field))

    @classmethod
    def y(cls, curve: Curve) -> 'FunctionElement':
        F = curve.field
        return cls(curve, Poly.zero(F), Poly.one(F))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionElement) or other.curve != self.curve:
            return NotImplemented
        return self.a * other.u == other.a * self.u and self.b * other.u == other.b * self.u

    def __hash__(self) -> int:
        n = FunctionElement(self.curve, self.a, self.b, self.u)
        return hash((n.a, n.b, n.u))

    def __repr__(self) -> str:
        num = f"({self.a!r}) + ({self.b!r})*y" if not self.b.is_zero() else f"{self.a!r}"
        if self.u.degree == 0:
            return num
        return f"({num}) / ({self.u!r})"

    def __add__(self, other: 'FunctionElement') -> 'FunctionElement':
        return FunctionElement(self.curve, self.a * other.u + other.a * self.u,
                               self.b * other.u + other.b * self.u, self.u * other.u)

    def __neg__(self) -> 'FunctionElement':
        return FunctionElement(self.curve, -self.a, -self.b, self.u, normalize=False)

    def __sub__(self, other: 'FunctionElement') -> 'FunctionElement':
        return self + (-other)

    def __mul__(self, other: 'FunctionElement') -> 'FunctionElement':
        R, H = self.curve.rhs_poly, self.curve.h_poly
        bb = self.b * other.b
        a = self.a * other.a + bb * R
        b = self.a * other.b + other.a * self.b - bb * H
        return FunctionElement(self.curve, a, b, self.u * other.u)

    def scale(self, c) -> 'FunctionElement':
        return FunctionElement(self.curve, self.a.scale(c), self.b.scale(c), self.u)

    def conjugate(self) -> 'FunctionElement':
        """Image under y -> -y - a1*x - a3"""
        return FunctionElement(self.curve, self.a - self.b * self.curve.h_poly, -self.b, self.u)

    def numerator_norm(self) -> Poly:
        """N(a + b*y) = a^2 - a*b*(a1*x + a3) - b^2*(x^3 + a2*x^2 + a4*x + a6)"""
        a, b = self.a, self.b
        return a * a - a * b * self.curve.h_poly - b * b * self.curve.rhs_poly

    def inv(self) -> 'FunctionElement':
        if self.is_zero():
            raise DomainError("inversion of the zero function")
        norm = self.numerator_norm()
        return FunctionElement(self.curve, self.u * (self.a - self.b * self.curve.h_poly),
                               -(self.u * self.b), norm)

    def __truediv__(self, other: 'FunctionElement') -> 'FunctionElement':
        return self * other.inv()

    def to_json(self) -> Dict[str, Any]:
        return {'a': self.a.to_json(), 'b': self.b.to_json(), 'u': self.u.to_json()}

    @classmethod
    def from_json(cls, curve: Curve, data: Mapping[str, Any]) -> 'FunctionElement':
        F = curve.field
        return cls(curve, Poly.from_json(F, data['a']), Poly.from_json(F, data.get('b', [])),
                   Poly.from_json(F, data.get('u', [F.to_json(F.one)])))


# places and divisors

@dataclass(frozen=True)
class PlaceRef:
    """A closed point: canonical representative of a Frobenius orbit, or P_inf"""
    curve: Curve = dataclass_field(compare=False, repr=False)
    degree: int
    point: Point
    field: Any = dataclass_field(repr=False)

    @classmethod
    def infinity(cls, curve: Curve) -> 'PlaceRef':
        return cls(curve, 1, INFINITY, curve.field)

    @classmethod
    def from_point(cls, curve: Curve, point: Point, field) -> 'PlaceRef':
        if point.is_infinity:
            return cls.infinity(curve)
        if not curve.contains(point, field):
            raise DomainError(f"{point!r} is not on {curve!r}")
        d = 1 if field == curve.field else field.degree
        orbit = curve.orbit(point, field)
        if len(orbit) != d:
            raise DomainError(f"orbit of {point!r} has size {len(orbit)}, expected {d}")
        rep = min(orbit, key=lambda P: (field.encode(P.x), field.encode(P.y)))
        return cls(curve, d, rep, field)

    @property
    def is_infinity(self) -> bool:
        return self.point.is_infinity

    @property
    def sort_key(self) -> Tuple[int, int, int]:
        if self.is_infinity:
            return (self.degree, -1, -1)
        return (self.degree, self.field.encode(self.point.x), self.field.encode(self.point.y))

    @cached_property
    def ramification(self) -> int:
        """2 at places where dW/dy vanishes (t = y - y0 there), else 1"""
        if self.is_infinity:
            return 1
        F = self.field
        a1, _, a3, _, _ = self.curve.lifted(F)
        wy = F.add(F.add(F.add(self.point.y, self.point.y), F.mul(a1, self.point.x)), a3)
        return 2 if wy == F.zero else 1

    @cached_property
    def x_minpoly(self) -> Poly:
        if self.is_infinity:
            raise DomainError("the place at infinity has no x-coordinate")
        return minimal_polynomial(self.field, self.curve.field, self.point.x)

    def opposite(self) -> 'PlaceRef':
        """The place through (x0, -y0 - a1*x0 - a3)"""
        if self.is_infinity:
            return self
        return PlaceRef.from_point(self.curve, self.curve.neg(self.point, self.field), self.field)

    def __repr__(self) -> str:
        if self.is_infinity:
            return "P_inf"
        F = self.field
        return f"Place(deg={self.degree}, x0={F.format(self.point.x)}, y0={F.format(self.point.y)})"

    def to_json(self) -> Dict[str, Any]:
        if self.is_infinity:
            return {'infinity': True}
        F = self.field
        data = {'degree': self.degree, 'x0': F.to_json(self.point.x), 'y0': F.to_json(self.point.y)}
        if self.degree > 1:
            data['modulus'] = F.modulus.to_json()
        return data

    @classmethod
    def from_json(cls, curve: Curve, data: Mapping[str, Any]) -> 'PlaceRef':
        if data.get('infinity'):
            return cls.infinity(curve)
        base = curve.field
        if int(data['degree']) == 1:
            F = base
        else:
            F = ExtField(base, Poly.from_json(base, data['modulus']), check=False)
        return cls.from_point(curve, Point(F.from_json(data['x0']), F.from_json(data['y0'])), F)


class Divisor:
    """Finite formal sum of places with integer multiplicities"""

    def __init__(self, terms: Optional[Mapping[PlaceRef, int]] = None):
        self._terms: Dict[PlaceRef, int] = {p: m for p, m in (terms or {}).items() if m != 0}

    @classmethod
    def from_places(cls, places: Iterable[Tuple[PlaceRef, int]]) -> 'Divisor':
        terms: Dict[PlaceRef, int] = {}
        for place, mult in places:
            terms[place] = terms.get(place, 0) + mult
        return cls(terms)

    @property
    def degree(self) -> int:
        return sum(place.degree * mult for place, mult in self._terms.items())

    def items(self):
        return self._terms.items()

    @property
    def support(self) -> List[PlaceRef]:
        return sorted(self._terms, key=lambda p: p.sort_key)

    def multiplicity(self, place: PlaceRef) -> int:
        return self._terms.get(place, 0)

    def is_effective(self) -> bool:
        return all(m > 0 for m in self._terms.values())

    def is_disjoint(self, other: 'Divisor') -> bool:
        return not set(self._terms) & set(other._terms)

    def __add__(self, other: 'Divisor') -> 'Divisor':
        terms = dict(self._terms)
        for place, mult in other.items():
            terms[place] = terms.get(place, 0) + mult
        return Divisor(terms)

    def __neg__(self) -> 'Divisor':
        return Divisor({p: -m for p, m in self._terms.items()})

    def __sub__(self, other: 'Divisor') -> 'Divisor':
        return self + (-other)

    def __mul__(self, k: int) -> 'Divisor':
        return Divisor({p: k * m for p, m in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and other._terms == self._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PlaceRef]:
        return iter(self.support)

    def __repr__(self) -> str:
        return " + ".join(f"{m}*{p!r}" for p, m in ((p, self._terms[p]) for p in self.support)) or "0"

    def to_json(self) -> List[Dict[str, Any]]:
        return [{'place': p.to_json(), 'mult': self._terms[p]} for p in self.support]


@dataclass(frozen=True)
class JetVector:
    place: PlaceRef
    order: int
    coeffs: Tuple[Any, ...]

    def coords(self) -> List[int]:
        """Base-field codes, coefficient-major: index j*deg + c"""
        F, base = self.place.field, self.place.curve.field
        out = []
        for c in self.coeffs:
            parts = (c,) if F == base else c
            out.extend(base.encode(v) for v in parts)
        return out


# local expansions

class LocalSeries:
    """x and y as power series in the local parameter at a finite place

    t = x - x0 where dW/dy does not vanish, otherwise t = y - y0.
    """

    def __init__(self, curve: Curve, place: PlaceRef, prec: int):
        if place.is_infinity:
            raise DomainError("LocalSeries covers finite places only")
        F = place.field
        self.curve, self.place, self.field, self.prec = curve, place, F, prec
        a1, a2, a3, a4, _ = curve.lifted(F)
        x0, y0 = place.point.x, place.point.y
        zero = F.zero
        two, three = F.from_int(2), F.from_int(3)
        wy = F.add(F.add(F.mul(two, y0), F.mul(a1, x0)), a3)
        wx = F.sub(F.mul(a1, y0), F.add(F.add(F.mul(three, F.mul(x0, x0)), F.mul(two, F.mul(a2, x0))), a4))
        c2 = F.neg(F.add(F.mul(three, x0), a2))
        self.unramified = wy != zero
        if self.unramified:
            self.x = pad([x0, F.one], prec, zero)
            # W_x t + W_y z + z^2 + a1 t z + c2 t^2 - t^3 = 0 with y = y0 + z
            lin_inv = series_inv(F, [wy, a1], prec)
            known = pad([zero, wx, c2, F.neg(F.one)], prec, zero)
            z = [zero] * prec
            for _ in range(prec):
                rhs = series_add(F, known, series_mul(F, z, z, prec))
                z = [F.neg(c) for c in series_mul(F, rhs, lin_inv, prec)]
            self.y = [F.add(y0, z[0])] + z[1:] if prec else []
        else:
            self.y = pad([y0, F.one], prec, zero)
            # W_x s + t^2 + a1 s t + c2 s^2 - s^3 = 0 with x = x0 + s
            lin_inv = series_inv(F, [wx, a1], prec)
            t2 = pad([zero, zero, F.one], prec, zero)
            s = [zero] * prec
            for _ in range(prec):
                s2 = series_mul(F, s, s, prec)
                s3 = series_mul(F, s2, s, prec)
                rhs = series_add(F, t2, [F.sub(F.mul(c2, p), q) for p, q in zip(s2, s3)])
                s = [F.neg(c) for c in series_mul(F, rhs, lin_inv, prec)]
            self.x = [F.add(x0, s[0])] + s[1:] if prec else []

    def compose(self, poly: Poly) -> Series:
        """Series of poly(x)"""
        F, prec = self.field, self.prec
        acc = [F.zero] * prec
        if not prec:
            return acc
        if self.unramified:
            x0 = self.x[0]
            for c in reversed(poly.coeffs):
                shifted = [F.add(F.mul(x0, acc[0]), F.lift(c))]
                shifted.extend(F.add(F.mul(x0, acc[i]), acc[i - 1]) for i in range(1, prec))
                acc = shifted
            return acc
        for c in reversed(poly.coeffs):
            acc = series_mul(F, acc, self.x, prec)
            acc[0] = F.add(acc[0], F.lift(c))
        return acc

    def powers(self, k_max: int) -> List[Series]:
        """Series of x^0 .. x^k_max"""
        F, prec = self.field, self.prec
        current = pad([F.one], prec, F.zero)
        out = [current]
        for _ in range(k_max):
            if self.unramified:
                x0 = self.x[0]
                current = [F.mul(x0, current[0])] + [
                    F.add(F.mul(x0, current[i]), current[i - 1]) for i in range(1, prec)]
            else:
                current = series_mul(F, current, self.x, prec)
            out.append(current)
        return out

    def numerator(self, a: Poly, b: Poly) -> Series:
        series = self.compose(a)
        if not b.is_zero():
            series = series_add(self.field, series, series_mul(self.field, self.compose(b), self.y, self.prec))
        return series


class InfinitySeries:
    """x = t^-2 X(t), y = -t^-3 X(t) at P_inf with t = -x/y"""

    def __init__(self, curve: Curve, prec: int):
        F = curve.field
        a1, a2, a3, a4, a6 = curve.coefficients
        self.curve, self.field, self.prec = curve, F, prec
        n = prec + 3
        zero = F.zero
        z1 = pad([zero, F.one], n, zero)
        z2 = pad([zero, zero, F.one], n, zero)
        z3 = pad([zero, zero, zero, F.one], n, zero)
        # w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
        lin = series_add(F, [F.mul(a1, c) for c in z1], [F.mul(a2, c) for c in z2])
        w = list(z3)
        for _ in range(n):
            w2 = series_mul(F, w, w, n)
            w3 = series_mul(F, w2, w, n)
            nxt = series_add(F, z3, series_mul(F, lin, w, n))
            nxt = series_add(F, nxt, [F.mul(a3, c) for c in w2])
            nxt = series_add(F, nxt, [F.mul(a4, c) for c in series_mul(F, z1, w2, n)])
            nxt = series_add(F, nxt, [F.mul(a6, c) for c in w3])
            if nxt == w:
                break
            w = nxt
        self.X = series_inv(F, w[3:3 + prec], prec) if prec else []

    def powers(self, k_max: int) -> List[Series]:
        F = self.field
        current = pad([F.one], self.prec, F.zero)
        out = [current]
        for _ in range(k_max):
            current = series_mul(F, current, self.X, self.prec)
            out.append(current)
        return out


def _degree(p: Poly) -> int:
    return -1 if p.is_zero() else int(p.degree)


def infinity_valuation(f: FunctionElement) -> int:
    if f.is_zero():
        raise DomainError("valuation of the zero function")
    pole = max(2 * _degree(f.a) if not f.a.is_zero() else NEG_INF,
               2 * _degree(f.b) + 3 if not f.b.is_zero() else NEG_INF)
    return int(2 * _degree(f.u) - pole)


def _expand_at_infinity(f: FunctionElement, order: int) -> List[Any]:
    curve = f.curve
    F = curve.field
    v = infinity_valuation(f)
    if v < 0:
        raise DomainError(f"function has a pole of order {-v} at P_inf")
    prec = order - v
    if prec <= 0:
        return [F.zero] * order
    v_num = v - 2 * _degree(f.u)
    series = InfinitySeries(curve, prec)
    top = max(_degree(f.a), _degree(f.b) + 1, _degree(f.u))
    powers = series.powers(top)

    def shifted(k_shift: int, power: Series) -> Series:
        return pad([F.zero] * k_shift + power, prec, F.zero)

    num = [F.zero] * prec
    for k, c in enumerate(f.a.coeffs):
        if c != F.zero and -2 * k - v_num < prec:
            num = series_add(F, num, [F.mul(c, s) for s in shifted(-2 * k - v_num, powers[k])])
    for k, c in enumerate(f.b.coeffs):
        if c != F.zero and -2 * k - 3 - v_num < prec:
            num = series_add(F, num, [F.neg(F.mul(c, s)) for s in shifted(-2 * k - 3 - v_num, powers[k + 1])])
    den = [F.zero] * prec
    deg_u = _degree(f.u)
    for k, c in enumerate(f.u.coeffs):
        if c != F.zero and 2 * (deg_u - k) < prec:
            den = series_add(F, den, [F.mul(c, s) for s in shifted(2 * (deg_u - k), powers[k])])
    body = series_mul(F, num, series_inv(F, den, prec), prec)
    return [F.zero] * v + body


def _finite_pole_order(f: FunctionElement, place: PlaceRef) -> int:
    """v_P(u) for the denominator u"""
    return place.ramification * multiplicity(place.x_minpoly, f.u)


def local_expansion(f: FunctionElement, place: PlaceRef, order: int) -> JetVector:
    """The first ``order`` coefficients of f in the local parameter at ``place``"""
    if place.is_infinity:
        return JetVector(place, order, tuple(_expand_at_infinity(f, order)))
    F = place.field
    vu = _finite_pole_order(f, place)
    series = LocalSeries(f.curve, place, order + vu)
    num = series.numerator(f.a, f.b)
    lead = leading_index(num[:vu], F.zero)
    if lead is not None:
        raise DomainError(f"function has a pole of order {vu - lead} at {place!r}")
    den = series.compose(f.u)[vu:]
    coeffs = series_mul(F, num[vu:], series_inv(F, den, order), order) if order else []
    return JetVector(place, order, tuple(coeffs))


def valuation(f: FunctionElement, place: PlaceRef) -> int:
    if f.is_zero():
        raise DomainError("valuation of the zero function")
    if place.is_infinity:
        return infinity_valuation(f)
    e, p = place.ramification, place.x_minpoly
    vu = e * multiplicity(p, f.u)
    if f.b.is_zero():
        return e * multiplicity(p, f.a) - vu
    bound = e * multiplicity(p, f.numerator_norm()) + 1
    num = LocalSeries(f.curve, place, bound).numerator(f.a, f.b)
    lead = leading_index(num, place.field.zero)
    if lead is None:
        raise DomainError(f"valuation at {place!r} exceeds the norm bound")
    return lead - vu


def evaluate(f: FunctionElement, place: PlaceRef):
    """f(P) in the residue field at the representative point"""
    if not place.is_infinity and f.u.evaluate(place.point.x, place.field) != place.field.zero:
        F = place.field
        x0, y0 = place.point.x, place.point.y
        num = F.add(f.a.evaluate(x0, F), F.mul(f.b.evaluate(x0, F), y0))
        return F.div(num, f.u.evaluate(x0, F))
    return local_expansion(f, place, 1).coeffs[0]


def principal_divisor(f: FunctionElement, places: Iterable[PlaceRef]) -> Divisor:
    """The part of div(f) supported on ``places``"""
    return Divisor({place: valuation(f, place) for place in places})


# place sampling and enumeration

def _x_has_degree(F, x0, d: int) -> bool:
    return all(F.frobenius(x0, d // ell) != x0 for ell in factorint(d))


def random_place(curve: Curve, d: int, seed, fields=None, exclude: Iterable[PlaceRef] = ()) -> PlaceRef:
    """Sample a degree-d place whose x-coordinate generates the residue field"""
    F = fields.get(d) if fields is not None else curve.extension(d)
    excluded = set(exclude)
    rng = random.Random(f"place:{curve.q}:{d}:{seed}")
    attempts = BUILD_CONFIG['max_place_attempts']
    for attempt in range(attempts):
        x0 = F.random(rng)
        if d > 1 and not _x_has_degree(F, x0, d):
            continue
        ys = curve.solve_y(x0, F)
        if not ys:
            continue
        place = PlaceRef.from_point(curve, Point(x0, ys[rng.randrange(len(ys))]), F)
        if place in excluded:
            continue
        logger.debug(f"sampled degree-{d} place after {attempt + 1} attempts (seed {seed})")
        return place
    raise ConstructionError(f"no degree-{d} place found in {attempts} attempts",
                            {'degree': d, 'attempts': attempts, 'seed': seed})


def enumerate_places(curve: Curve, d: int, fields=None) -> List[PlaceRef]:
    """All degree-d places in canonical order (P_inf first among degree 1)"""
    F = fields.get(d) if fields is not None else curve.extension(d)

    def compute() -> List[PlaceRef]:
        found = set()
        for P in curve.enumerate_points(d, F):
            if P.is_infinity:
                if d == 1:
                    found.add(PlaceRef.infinity(curve))
                continue
            if len(curve.orbit(P, F)) == d:
                found.add(PlaceRef.from_point(curve, P, F))
        return sorted(found, key=lambda p: p.sort_key)

    return _places.get_or_compute((curve, d, F), compute)
