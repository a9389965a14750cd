"""Univariate polynomials over the finite fields of ``src.core.fields``

Coefficients are stored little-endian (constant term first) as canonical
field elements. The zero polynomial has an empty coefficient tuple and
degree ``NEG_INF``.
"""
import itertools
import random
from typing import Any, Iterable, List, Sequence, Tuple

from .errors import DomainError

NEG_INF = float('-inf')


def _prime_modulus(field) -> int:
    """Return p when ``field`` is a prime field, else 0"""
    return field.p if getattr(field, 'degree', None) == 1 and hasattr(field, 'p') else 0


class Poly:
    """Immutable polynomial over a finite field"""

    __slots__ = ('field', 'coeffs')

    def __init__(self, field, coeffs: Iterable[Any] = ()):
        coeffs = list(coeffs)
        zero = field.zero
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        self.field = field
        self.coeffs: Tuple[Any, ...] = tuple(coeffs)

    @classmethod
    def zero(cls, field) -> 'Poly':
        return cls(field)

    @classmethod
    def one(cls, field) -> 'Poly':
        return cls(field, [field.one])

    @classmethod
    def x(cls, field) -> 'Poly':
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, value) -> 'Poly':
        return cls(field, [value])

    @classmethod
    def monomial(cls, field, degree: int, coeff=None) -> 'Poly':
        coeff = field.one if coeff is None else coeff
        return cls(field, [field.zero] * degree + [coeff])

    @classmethod
    def from_ints(cls, field, values: Sequence[int]) -> 'Poly':
        return cls(field, [field.from_int(v) for v in values])

    @classmethod
    def from_json(cls, field, data: Sequence[Any]) -> 'Poly':
        return cls(field, [field.from_json(c) for c in data])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == self.field.zero:
                continue
            cs = self.field.format(c)
            if i == 0:
                terms.append(cs)
            elif c == self.field.one:
                terms.append("x" if i == 1 else f"x^{i}")
            else:
                terms.append(f"({cs})*x" if i == 1 else f"({cs})*x^{i}")
        return " + ".join(terms)

    def to_json(self) -> List[Any]:
        return [self.field.to_json(c) for c in self.coeffs]

    # arithmetic

    def __add__(self, other: 'Poly') -> 'Poly':
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> 'Poly':
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: 'Poly') -> 'Poly':
        return self + (-other)

    def scale(self, c) -> 'Poly':
        F = self.field
        if c == F.zero:
            return Poly(F)
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __mul__(self, other) -> 'Poly':
        if not isinstance(other, Poly):
            return self.scale(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F)
        p = _prime_modulus(F)
        if p:
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] += ai * bj
            return Poly(F, [v % p for v in out])
        out = [F.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == F.zero:
                continue
            for j, bj in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> 'Poly':
        result = Poly.one(self.field)
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: 'Poly') -> Tuple['Poly', 'Poly']:
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        F = self.field
        n, m = len(self.coeffs), len(other.coeffs)
        if n < m:
            return Poly(F), self
        inv_lead = F.inv(other.coeffs[-1])
        p = _prime_modulus(F)
        rem = list(self.coeffs)
        quot = [F.zero] * (n - m + 1)
        if p:
            d = other.coeffs
            for k in range(n - m, -1, -1):
                c = rem[k + m - 1] % p * inv_lead % p
                quot[k] = c
                if c:
                    for i, di in enumerate(d):
                        rem[k + i] -= c * di
            return Poly(F, quot), Poly(F, [v % p for v in rem[:m - 1]])
        for k in range(n - m, -1, -1):
            c = F.mul(rem[k + m - 1], inv_lead)
            quot[k] = c
            if c != F.zero:
                for i, di in enumerate(other.coeffs):
                    rem[k + i] = F.sub(rem[k + i], F.mul(c, di))
        return Poly(F, quot), Poly(F, rem[:m - 1])

    def __floordiv__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[0]

    def __mod__(self, other: 'Poly') -> 'Poly':
        return divmod(self, other)[1]

    def exact_div(self, other: 'Poly') -> 'Poly':
        """Quotient of an exact division; raises when a remainder is left"""
        quot, rem = divmod(self, other)
        if not rem.is_zero():
            raise DomainError(f"{other!r} does not divide {self!r}")
        return quot

    def monic(self) -> 'Poly':
        if not self.coeffs:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self) -> 'Poly':
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def pow_mod(self, e: int, modulus: 'Poly') -> 'Poly':
        result = Poly.one(self.field) % modulus
        base = self % modulus
        while e > 0:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def evaluate(self, value, target=None):
        """Horner evaluation at ``value``, an element of ``target``

        ``target`` defaults to the coefficient field; otherwise it must
        embed the coefficient field through ``target.lift``.
        """
        if target is None or target == self.field:
            F = self.field
            acc = F.zero
            for c in reversed(self.coeffs):
                acc = F.add(F.mul(acc, value), c)
            return acc
        acc = target.zero
        for c in reversed(self.coeffs):
            acc = target.add(target.mul(acc, value), target.lift(c))
        return acc

    __call__ = evaluate


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero when both inputs are zero)"""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> Tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g and g monic"""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        quot, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, s0 - quot * s1
        t0, t1 = t1, t0 - quot * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = F.inv(r0.lead)
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def is_irreducible(f: Poly) -> bool:
    """Distinct-degree test: f has no factor in common with x^{q^i} - x, i <= deg/2"""
    if f.is_zero() or f.degree < 1:
        raise DomainError("irreducibility is defined for polynomials of degree >= 1")
    f = f.monic()
    d = int(f.degree)
    if d == 1:
        return True
    q = f.field.order
    x = Poly.x(f.field)
    h = x % f
    for _ in range(d // 2):
        h = h.pow_mod(q, f)
        if poly_gcd(f, h - x).degree > 0:
            return False
    return True


def random_irreducible(field, d: int, seed) -> Poly:
    """Deterministic random monic irreducible polynomial of degree d"""
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    rng = random.Random(f"irreducible:{field.order}:{d}:{seed}")
    while True:
        f = Poly(field, [field.random(rng) for _ in range(d)] + [field.one])
        if is_irreducible(f):
            return f


def first_irreducible(field, d: int) -> Poly:
    """Lexicographically first monic irreducible polynomial of degree d"""
    if d < 1:
        raise DomainError(f"degree must be >= 1, got {d}")
    elements = list(field.elements())
    for low in itertools.product(elements, repeat=d):
        f = Poly(field, list(reversed(low)) + [field.one])
        if f.coeff(0) == field.zero and d > 1:
            continue
        if is_irreducible(f):
            return f
    raise DomainError(f"no irreducible polynomial of degree {d}")
