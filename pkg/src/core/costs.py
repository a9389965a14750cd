"""Bilinear multiplication counts used by the bound optimizer"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from config.config import COST_CONFIG
from .errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CostTable:
    """mu_q(d) for places of degree d and M_hat(u) for jets of order u"""
    q: int
    mu: Sequence[int]
    m_hat: Sequence[int]

    @classmethod
    def for_q(cls, q: int, overrides: Optional[Dict] = None) -> 'CostTable':
        config = dict(COST_CONFIG)
        config.update(overrides or {})
        rows = {int(k): v for k, v in config['mu'].items()}
        mu = rows.get(q, config['mu_explicit'])
        return cls(q, tuple(mu), tuple(config['m_hat']))

    @property
    def max_degree(self) -> int:
        return len(self.mu)

    @property
    def max_order(self) -> int:
        return len(self.m_hat)

    def cost(self, d: int, u: int = 1) -> int:
        """mu_q(d) * M_hat(u)"""
        if not 1 <= d <= self.max_degree:
            raise DomainError(f"no cost for degree {d} over GF({self.q}); table covers 1..{self.max_degree}")
        if not 1 <= u <= self.max_order:
            raise DomainError(f"no cost for jet order {u}; table covers 1..{self.max_order}")
        return self.mu[d - 1] * self.m_hat[u - 1]


def cost(q: int, d: int, u: int = 1) -> int:
    return CostTable.for_q(q).cost(d, u)


def log_star(q: int, n: int) -> int:
    """Least k with n <= q^^k (the height-k power tower, q^^0 = 1)"""
    if q < 2:
        raise DomainError("log* needs a base q >= 2")
    if n < 0:
        raise DomainError("log* is defined for n >= 0")
    k, tower = 0, 1
    while n > tower:
        if tower >= n.bit_length():
            return k + 1
        tower = q ** tower
        k += 1
    return k


def log_star_bound(q: int, n: int) -> int:
    """(2q)^(log*_q n)"""
    return (2 * q) ** log_star(q, n)


def log_star_ranges(q: int, levels: int = 5) -> List[Dict[str, int]]:
    """Intervals (q^^(k-1), q^^k] with their log* value; bounds above 2^64 are given by bit length"""
    rows, low = [], 1
    for k in range(1, levels + 1):
        high = q ** low
        row = {'log_star': k, 'bound': (2 * q) ** k}
        for name, value in (('low', low), ('high', high)):
            if value.bit_length() > 64:
                row[f'{name}_bits'] = value.bit_length()
            else:
                row[name] = value
        rows.append(row)
        low = high
    return rows


def place_exists(q: int, n: int) -> bool:
    """2g + 1 <= q^((n-1)/2) (q^(1/2) - 1) for g = 1, in exact integers"""
    if n < 1:
        return False
    x = q ** (n - 1)
    y = q ** n - x - 9
    return y >= 0 and 36 * x <= y * y


def default_max_degree(q: int, n: int, table: Optional[CostTable] = None) -> int:
    """Smallest d with 2q^d >= 3n, clipped to the cost table"""
    table = table or CostTable.for_q(q)
    d = 1
    while 2 * q ** d < 3 * n:
        d += 1
    return min(d, table.max_degree)
