"""Curve catalog and the equation parser

Equations are accepted as written in the literature, e.g.
``y^2 + 2x^3 + 2x^2 + 1 = 0`` or ``y^2 - (x^3 + 2x + 2) = 0``, and are
normalized to generalized Weierstrass form.
"""
import json
import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from config.config import FIELD_CONFIG
from .curves import Curve, CurveClass
from .errors import DomainError, ValidationError
from .fields import galois_field

logger = logging.getLogger(__name__)

# monomial (i, j) stands for x^i * y^j
Bivariate = Dict[Tuple[int, int], Any]

CATALOG: Dict[int, List[Tuple[str, str]]] = {
    2: [
        ('a', 'y^2 + y + (x^3 + x + 1) = 0'),
        ('b', 'y^2 + xy + x^3 + x^2 + 1 = 0'),
        ('d', 'y^2 + y + x^3 = 0'),
        ('d', 'y^2 + y + x^3 + x = 0'),
        ('d', 'y^2 + xy + x^3 + 1 = 0'),
    ],
    3: [
        ('a', 'y^2 - (x^3 + 2x + 2) = 0'),
        ('b', 'y^2 - (x^3 + 2x^2 + 2) = 0'),
        ('c', 'y^2 + y + 2x^3 + x + 1 = 0'),
        ('d', 'y^2 + 2x^3 + 2x = 0'),
        ('d', 'y^2 + 2x^3 + x + 2 = 0'),
        ('d', 'y^2 + 2x^3 + 2x^2 + 2 = 0'),
        ('d', 'y^2 + 2x^3 + 2x^2 + 1 = 0'),
        ('d', 'y^2 + 2x^3 + x^2 + 2 = 0'),
    ],
    4: [
        ('a', 'y^2 + y + (x^3 + a) = 0'),
        ('b', 'y^2 + xy + (x^3 + ax^2 + 1) = 0'),
    ],
    5: [
        ('b', 'y^2 - (x^3 + 2x) = 0'),
        ('c', 'y^2 + 4x^3 + 4x = 0'),
    ],
    7: [
        ('c', 'y^2 + 6x^3 + 1 = 0'),
    ],
    9: [
        ('c', 'y^2 + (x + 1)y + 2x^3 + x^2 + ax + 1 = 0'),
    ],
}


@dataclass(frozen=True)
class CatalogEntry:
    curve: Curve
    listed_case: str
    classification: CurveClass

    @property
    def equation(self) -> str:
        return self.curve.equation

    def to_json(self) -> Dict[str, Any]:
        data = {
            'equation': self.equation,
            'normal_form': self.curve.normal_form(),
            'listed_case': self.listed_case,
            'curve': self.curve.to_json()
        }
        data.update(self.classification.to_json())
        return data


class EquationParser:
    """Recursive-descent parser for bivariate polynomial equations in x, y"""

    TOKEN = re.compile(r"\s*(?:(\d+)|([xya])|(.))")

    def __init__(self, field, text: str):
        self.field = field
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[str]:
        symbol = FIELD_CONFIG['generator_symbol']
        cleaned = (text.replace('²', '^2').replace('³', '^3').replace('·', '*')
                   .replace('−', '-').replace(symbol, 'a'))
        tokens = []
        for number, name, other in self.TOKEN.findall(cleaned):
            token = number or name or other
            if token.strip():
                tokens.append(token)
        return tokens

    def _peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> str:
        token = self._peek()
        if token is None:
            raise ValidationError(f"unexpected end of equation {self.text!r}")
        self.pos += 1
        return token

    def _expect(self, token: str) -> None:
        got = self._take()
        if got != token:
            raise ValidationError(f"expected {token!r}, got {got!r} in {self.text!r}")

    # bivariate helpers

    def _add(self, f: Bivariate, g: Bivariate, sign: int = 1) -> Bivariate:
        F = self.field
        out = dict(f)
        for mono, c in g.items():
            c = c if sign > 0 else F.neg(c)
            out[mono] = F.add(out.get(mono, F.zero), c)
        return {m: c for m, c in out.items() if c != F.zero}

    def _mul(self, f: Bivariate, g: Bivariate) -> Bivariate:
        F = self.field
        out: Bivariate = {}
        for (i1, j1), c1 in f.items():
            for (i2, j2), c2 in g.items():
                mono = (i1 + i2, j1 + j2)
                out[mono] = F.add(out.get(mono, F.zero), F.mul(c1, c2))
        return {m: c for m, c in out.items() if c != F.zero}

    # grammar

    def parse(self) -> Bivariate:
        lhs = self._expr()
        rhs: Bivariate = {}
        if self._peek() == '=':
            self._take()
            rhs = self._expr()
        if self._peek() is not None:
            raise ValidationError(f"trailing input {self._peek()!r} in {self.text!r}")
        return self._add(lhs, rhs, -1)

    def _expr(self) -> Bivariate:
        sign = 1
        if self._peek() in ('+', '-'):
            sign = -1 if self._take() == '-' else 1
        total = self._add({}, self._term(), sign)
        while self._peek() in ('+', '-'):
            sign = -1 if self._take() == '-' else 1
            total = self._add(total, self._term(), sign)
        return total

    def _term(self) -> Bivariate:
        value = self._factor()
        while True:
            token = self._peek()
            if token == '*':
                self._take()
            elif token is None or not (token.isdigit() or token in ('x', 'y', 'a', '(')):
                return value
            value = self._mul(value, self._factor())

    def _factor(self) -> Bivariate:
        base = self._atom()
        if self._peek() == '^':
            self._take()
            exponent = self._take()
            if not exponent.isdigit():
                raise ValidationError(f"bad exponent {exponent!r} in {self.text!r}")
            result: Bivariate = {(0, 0): self.field.one}
            for _ in range(int(exponent)):
                result = self._mul(result, base)
            return result
        return base

    def _atom(self) -> Bivariate:
        F = self.field
        token = self._take()
        if token.isdigit():
            c = F.from_int(int(token))
            return {(0, 0): c} if c != F.zero else {}
        if token == 'x':
            return {(1, 0): F.one}
        if token == 'y':
            return {(0, 1): F.one}
        if token == 'a':
            if F.degree == 1:
                raise ValidationError(f"generator symbol used over the prime field GF({F.order})")
            return {(0, 0): F.generator}
        if token == '(':
            value = self._expr()
            self._expect(')')
            return value
        raise ValidationError(f"unexpected token {token!r} in {self.text!r}")


ALLOWED_MONOMIALS = {(0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)}


def parse_curve(q: int, text: str) -> Curve:
    """Parse an equation string over F_q into a normalized curve"""
    F = galois_field(q)
    poly = EquationParser(F, text).parse()
    extra = set(poly) - ALLOWED_MONOMIALS
    if extra:
        raise ValidationError(f"{text!r} is not a Weierstrass equation (monomials {sorted(extra)})")
    lead = poly.get((0, 2))
    if lead is None:
        raise ValidationError(f"{text!r} has no y^2 term")
    inv = F.inv(lead)
    c = {m: F.mul(v, inv) for m, v in poly.items()}

    def get(mono):
        return c.get(mono, F.zero)

    e = F.neg(get((3, 0)))
    if e == F.zero:
        raise ValidationError(f"{text!r} has no x^3 term")
    a1, a3 = get((1, 1)), get((0, 1))
    a2, a4, a6 = F.neg(get((2, 0))), F.neg(get((1, 0))), F.neg(get((0, 0)))
    if e != F.one:
        # x -> x/e, y -> y/e
        a3, a4, a6 = F.mul(a3, e), F.mul(a4, e), F.mul(a6, F.mul(e, e))
    return Curve(F, a1, a2, a3, a4, a6, equation=text)


def curve_from_coefficients(q: int, coefficients) -> Curve:
    """Curve from explicit a1, a2, a3, a4, a6 (ints or JSON coefficient arrays)"""
    F = galois_field(q)
    if len(coefficients) != 5:
        raise ValidationError("expected five coefficients a1, a2, a3, a4, a6")
    return Curve(F, *(F.from_json(c) for c in coefficients))


def catalog(q: int) -> List[CatalogEntry]:
    """Every listed curve over F_q with its classification"""
    if q not in CATALOG:
        raise DomainError(f"no catalog curves for q={q}; supported: {sorted(CATALOG)}")
    entries = []
    for case, equation in CATALOG[q]:
        curve = parse_curve(q, equation)
        entry = CatalogEntry(curve, case, curve.classify())
        if entry.classification.case != case:
            logger.warning(f"{equation} over GF({q}) listed as case {case}, classified {entry.classification.case}")
        entries.append(entry)
    return entries


def select_curve(q: int, selector) -> Curve:
    """Resolve a CLI curve selector: catalog index, equation string or coefficient list"""
    if isinstance(selector, (list, tuple)):
        return curve_from_coefficients(q, selector)
    text = str(selector).strip()
    if text.isdigit():
        entries = catalog(q)
        index = int(text)
        if not 0 <= index < len(entries):
            raise ValidationError(f"catalog index {index} out of range 0..{len(entries) - 1}")
        return entries[index].curve
    if text.startswith('['):
        return curve_from_coefficients(q, json.loads(text))
    return parse_curve(q, text)
