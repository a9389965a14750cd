"""Exact arithmetic in prime fields and their extensions

Field objects are stateless descriptions; elements are plain values.
Prime field elements are ints in [0, p). Extension elements are tuples of
base-field elements of length ``degree`` (constant term first).
"""
import itertools
import logging
import random
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import isprime

from config.config import FIELD_CONFIG
from .errors import DomainError, UnsupportedOperationError, ValidationError
from .poly import Poly, first_irreducible, is_irreducible, poly_xgcd, random_irreducible

logger = logging.getLogger(__name__)


class PrimeField:
    """The prime field F_p"""

    def __init__(self, p: int):
        if not isprime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.order = p
        self.characteristic = p
        self.degree = 1
        self.absolute_degree = 1
        self.zero = 0
        self.one = 1

    @property
    def prime_field(self) -> 'PrimeField':
        return self

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(('GF', self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DomainError("inversion of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def frobenius(self, a: int, times: int = 1) -> int:
        return a

    def lift(self, a: int) -> int:
        return a

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.p)

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def coords(self, a: int) -> Tuple[int, ...]:
        return (a,)

    def from_coords(self, coords: Sequence[int]) -> int:
        return coords[0] % self.p

    def encode(self, a: int) -> int:
        return a

    def decode(self, code: int) -> int:
        return int(code)

    def to_json(self, a: int) -> int:
        return int(a)

    def from_json(self, data) -> int:
        return int(data) % self.p

    def format(self, a: int) -> str:
        return str(a)


class ExtField:
    """The extension base[w]/(modulus) for a monic irreducible modulus"""

    def __init__(self, base, modulus: Poly, check: bool = True, name: str = 'w'):
        if modulus.field != base:
            raise DomainError("modulus must have coefficients in the base field")
        if modulus.is_zero() or modulus.degree < 1 or not modulus.is_monic():
            raise DomainError("modulus must be monic of degree >= 1")
        if check and not is_irreducible(modulus):
            raise DomainError(f"modulus {modulus!r} is reducible")
        self.base = base
        self.modulus = modulus
        self.name = name
        self.degree = int(modulus.degree)
        self.order = base.order ** self.degree
        self.characteristic = base.characteristic
        self.absolute_degree = base.absolute_degree * self.degree
        self.zero = tuple([base.zero] * self.degree)
        self.one = tuple([base.one] + [base.zero] * (self.degree - 1))
        # w^k = sum of reduction[i] * w^i
        self._reduction = [(i, base.neg(c)) for i, c in enumerate(modulus.coeffs[:-1]) if c != base.zero]
        self._p = base.p if isinstance(base, PrimeField) else 0

    @property
    def prime_field(self) -> PrimeField:
        return self.base.prime_field

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtField) and other.base == self.base and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(('GF', self.base, self.modulus.coeffs))

    def __repr__(self) -> str:
        return f"GF({self.order}) = {self.base!r}[{self.name}]/({self.modulus!r})"

    @property
    def generator(self) -> Tuple[Any, ...]:
        if self.degree == 1:
            return (self.base.neg(self.modulus.coeffs[0]),)
        return tuple([self.base.zero, self.base.one] + [self.base.zero] * (self.degree - 2))

    def __call__(self, coeffs: Sequence[Any]) -> Tuple[Any, ...]:
        """Reduce an arbitrary coefficient list into a canonical element"""
        rem = Poly(self.base, coeffs) % self.modulus
        return self.from_poly(rem)

    def from_poly(self, poly: Poly) -> Tuple[Any, ...]:
        if len(poly.coeffs) > self.degree:
            poly = poly % self.modulus
        return tuple(poly.coeffs) + tuple([self.base.zero] * (self.degree - len(poly.coeffs)))

    def to_poly(self, a: Sequence[Any]) -> Poly:
        return Poly(self.base, a)

    def from_int(self, n: int) -> Tuple[Any, ...]:
        return self.lift(self.base.from_int(n))

    def lift(self, c) -> Tuple[Any, ...]:
        """Embed an element of the base field"""
        return (c,) + self.zero[1:]

    def add(self, a, b):
        if self._p:
            p = self._p
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self._p:
            p = self._p
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        k = self.degree
        if self._p:
            p = self._p
            prod = [0] * (2 * k - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            for top in range(2 * k - 2, k - 1, -1):
                c = prod[top] % p
                if c:
                    shift = top - k
                    for i, r in self._reduction:
                        prod[shift + i] += c * r
            return tuple(v % p for v in prod[:k])
        F = self.base
        zero = F.zero
        prod = [zero] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    prod[i + j] = F.add(prod[i + j], F.mul(ai, bj))
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c != zero:
                shift = top - k
                for i, r in self._reduction:
                    prod[shift + i] = F.add(prod[shift + i], F.mul(c, r))
        return tuple(prod[:k])

    def scale(self, c, a):
        """Multiply by a base-field scalar"""
        return tuple(self.base.mul(c, x) for x in a)

    def inv(self, a):
        if a == self.zero:
            raise DomainError("inversion of zero")
        g, s, _ = poly_xgcd(Poly(self.base, a), self.modulus)
        if g.degree != 0:
            raise DomainError("element is not invertible")
        return self.from_poly(s % self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e > 0:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def frobenius(self, a, times: int = 1):
        """a -> a^(|base|^times)"""
        for _ in range(times):
            a = self.pow(a, self.base.order)
        return a

    def random(self, rng: random.Random):
        return tuple(self.base.random(rng) for _ in range(self.degree))

    def elements(self) -> Iterator[Tuple[Any, ...]]:
        for combo in itertools.product(list(self.base.elements()), repeat=self.degree):
            yield tuple(reversed(combo))

    def coords(self, a) -> Tuple[int, ...]:
        """Prime-field coordinates (flattened through any tower)"""
        out: List[int] = []
        for c in a:
            out.extend(self.base.coords(c))
        return tuple(out)

    def from_coords(self, coords: Sequence[int]):
        step = self.base.absolute_degree
        return tuple(self.base.from_coords(coords[i * step:(i + 1) * step]) for i in range(self.degree))

    def encode(self, a) -> int:
        code = 0
        for c in reversed(a):
            code = code * self.base.order + self.base.encode(c)
        return code

    def decode(self, code: int):
        out = []
        code = int(code)
        for _ in range(self.degree):
            code, digit = divmod(code, self.base.order)
            out.append(self.base.decode(digit))
        return tuple(out)

    def to_json(self, a) -> List[Any]:
        return [self.base.to_json(c) for c in a]

    def from_json(self, data):
        if isinstance(data, int):
            return self.lift(self.base.from_json(data))
        return self.from_poly(Poly(self.base, [self.base.from_json(c) for c in data]))

    def format(self, a) -> str:
        if self.degree == 1:
            return self.base.format(a[0])
        return f"[{', '.join(self.base.format(c) for c in a)}]"


# field registry

@lru_cache(maxsize=None)
def galois_field(q: int):
    """F_q for the supported q: a prime field, or F_4/F_9 via their Conway polynomials"""
    if q not in FIELD_CONFIG['supported_q']:
        raise ValidationError(f"unsupported q={q}; supported: {FIELD_CONFIG['supported_q']}")
    if isprime(q):
        return PrimeField(q)
    moduli = FIELD_CONFIG['moduli']
    if q not in moduli:
        raise ValidationError(f"no modulus configured for q={q}")
    for p in (2, 3, 5, 7):
        if q % p == 0:
            prime = PrimeField(p)
            break
    return ExtField(prime, Poly(prime, moduli[q]), name=FIELD_CONFIG['generator_symbol'])


@lru_cache(maxsize=None)
def default_extension(base, d: int):
    """A fixed degree-d extension of ``base`` (``base`` itself when d = 1)"""
    if d == 1:
        return base
    if d <= FIELD_CONFIG['first_irreducible_max_degree'] or base.order ** d <= 10 ** 6:
        modulus = first_irreducible(base, d)
    else:
        modulus = random_irreducible(base, d, seed=0)
    return ExtField(base, modulus, check=False)


class ResidueFields:
    """Degree -> residue field registry over one base field

    Degree 1 maps to the base itself. Presets pin the modulus used for a
    degree (the reference modulus of F_{q^n} in a build).
    """

    def __init__(self, base, presets: Optional[Dict[int, Poly]] = None):
        self.base = base
        self._fields: Dict[int, Any] = {}
        for d, modulus in (presets or {}).items():
            self._fields[d] = base if d == 1 else ExtField(base, modulus, check=False)

    def get(self, d: int):
        if d < 1:
            raise DomainError(f"degree must be >= 1, got {d}")
        if d == 1:
            return self.base
        if d not in self._fields:
            self._fields[d] = default_extension(self.base, d)
        return self._fields[d]

    def coords(self, field, value) -> Tuple[Any, ...]:
        """Coordinates of ``value`` over the base field"""
        return (value,) if field == self.base else tuple(value)

    def from_coords(self, field, coords: Sequence[Any]):
        return coords[0] if field == self.base else tuple(coords)


# square roots and Artin-Schreier equations

def is_square(field, a) -> bool:
    if field.characteristic == 2 or field.is_zero(a):
        return True
    return field.pow(a, (field.order - 1) // 2) == field.one


def _non_residue(field):
    rng = random.Random(f"non-residue:{field.order}")
    while True:
        z = field.random(rng)
        if not field.is_zero(z) and not is_square(field, z):
            return z


def sqrt_ext(field, a):
    """A square root of ``a`` or None; odd characteristic only"""
    if field.characteristic == 2:
        raise UnsupportedOperationError("sqrt_ext needs odd characteristic; use solve_artin_schreier")
    if field.is_zero(a):
        return field.zero
    if not is_square(field, a):
        return None
    order = field.order
    if order % 4 == 3:
        return field.pow(a, (order + 1) // 4)
    # Tonelli-Shanks
    t, s = order - 1, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    z = _non_residue(field)
    m, c = s, field.pow(z, t)
    r, u = field.pow(a, (t + 1) // 2), field.pow(a, t)
    while u != field.one:
        i, probe = 0, u
        while probe != field.one:
            probe = field.mul(probe, probe)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = field.mul(b, b)
        m, c = i, field.mul(b, b)
        r, u = field.mul(r, b), field.mul(u, c)
    return r


def sqrt_char2(field, a):
    """The unique square root in characteristic 2"""
    return field.pow(a, field.order // 2)


def absolute_trace(field, c):
    """Sum of the Galois conjugates of c over the prime field, as a prime-field int"""
    acc, term = c, c
    for _ in range(field.absolute_degree - 1):
        term = field.pow(term, field.characteristic)
        acc = field.add(acc, term)
    return field.coords(acc)[0]


def solve_artin_schreier(field, c):
    """A solution of y^2 + y = c in characteristic 2, or None when Tr(c) = 1"""
    if field.characteristic != 2:
        raise UnsupportedOperationError("Artin-Schreier equations are solved in characteristic 2")
    if field.is_zero(c):
        return field.zero
    if absolute_trace(field, c) != 0:
        return None
    k = field.absolute_degree
    if k % 2 == 1:
        # half-trace
        y, term = c, c
        for _ in range((k - 1) // 2):
            term = field.pow(term, 4)
            y = field.add(y, term)
        return y
    from . import linalg
    prime = field.prime_field
    columns = []
    for i in range(k):
        unit = [0] * k
        unit[i] = 1
        e = field.from_coords(unit)
        columns.append(field.coords(field.add(field.mul(e, e), e)))
    matrix = linalg.transpose(linalg.as_matrix(columns))
    solution = linalg.solve(matrix, linalg.as_matrix([[v] for v in field.coords(c)]), prime)
    return field.from_coords([int(v) for v in solution[:, 0]])


def minimal_polynomial(field, base, a) -> Poly:
    """Minimal polynomial of ``a`` over ``base`` from the first linear dependency among its powers"""
    from . import linalg
    if field == base:
        return Poly(base, [base.neg(a), base.one])
    k = field.degree
    powers, current = [], field.one
    for _ in range(k + 1):
        powers.append([base.encode(c) for c in current])
        current = field.mul(current, a)
    # columns are powers of a
    matrix = linalg.transpose(linalg.as_matrix(powers))
    _, pivots = linalg.rref(matrix, base)
    m = len(pivots)
    kernel = linalg.nullspace(matrix, base)
    for vector in kernel:
        nonzero = [i for i, v in enumerate(vector) if v]
        if nonzero[-1] == m:
            return Poly(base, [base.decode(v) for v in vector[:m + 1]])
    raise DomainError("minimal polynomial not found")
