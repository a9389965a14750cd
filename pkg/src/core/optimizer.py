"""Search for the cheapest interpolation divisor G on a curve

A shape gives, per degree d, the number N_d of degree-d places used and
one multiplicity u_d shared by all of them. Its cost is
sum N_d * mu_q(d) * M_hat(u_d) and its degree sum N_d * d * u_d must reach
2n + slack, where the slack depends on the curve's case.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.config import BUILD_CONFIG, COST_CONFIG
from .catalog import catalog
from .costs import CostTable, default_max_degree
from .curves import Curve
from .errors import DomainError, InfeasibleShapeError, ValidationError

logger = logging.getLogger(__name__)

INF = np.int64(1) << 50


@dataclass(frozen=True)
class DivisorShape:
    q: int
    n: int
    case: str
    slack: int
    target: int
    N: Tuple[int, ...]
    U: Tuple[int, ...]
    bound: int
    curve: Optional[Curve] = dataclass_field(default=None, compare=False, repr=False)

    @property
    def degree(self) -> int:
        return sum(count * d * u for d, (count, u) in enumerate(zip(self.N, self.U), start=1))

    @property
    def max_degree(self) -> int:
        return len(self.N)

    def terms(self, table: Optional[CostTable] = None) -> List[Dict[str, int]]:
        table = table or CostTable.for_q(self.q)
        return [{'degree': d, 'count': count, 'order': u, 'cost': table.cost(d, u)}
                for d, (count, u) in enumerate(zip(self.N, self.U), start=1) if count]

    def breakdown(self) -> str:
        """e.g. 3·5 + 6·3 + 11·6 + 15·9"""
        return ' + '.join(f"{t['count']}·{t['cost']}" for t in self.terms())

    def to_json(self) -> Dict[str, Any]:
        data = {
            'q': self.q,
            'n': self.n,
            'case': self.case,
            'slack': self.slack,
            'N': list(self.N),
            'U': list(self.U),
            'bound': self.bound,
            'degG': self.degree,
            'breakdown': self.breakdown()
        }
        if self.curve is not None:
            data['curve'] = self.curve.equation or self.curve.normal_form()
        return data


def shape_cost(table: CostTable, N: Sequence[int], U: Sequence[int]) -> int:
    return sum(count * table.cost(d, u) for d, (count, u) in enumerate(zip(N, U), start=1) if count)


def degree_target(curve: Curve, n: int, exact_case_b: Optional[bool] = None) -> Tuple[str, int, int]:
    """(case, slack, 2n + slack) for the curve's classification"""
    cls = curve.classify()
    if exact_case_b is None:
        exact_case_b = BUILD_CONFIG['case_b_exact']
    slack = 0 if (cls.case == 'b' and exact_case_b) else cls.slack
    return cls.case, slack, 2 * n + slack


def order_caps(dmax: int, buildable: bool) -> List[int]:
    """Highest multiplicity allowed per degree 1..dmax

    The bound search raises multiplicity on rational and quadratic places
    only; buildable shapes follow the explicit inner algorithms.
    """
    if buildable:
        orders = BUILD_CONFIG['explicit_max_order']
        return [int(orders.get(d, orders.get(str(d), 1))) for d in range(1, dmax + 1)]
    orders = COST_CONFIG['search_max_order']
    top = COST_CONFIG['max_multiplicity']
    return [min(top, int(orders.get(d, orders.get(str(d), 1)))) for d in range(1, dmax + 1)]


class _SuffixTable:
    """S[k][D]: least cost of reaching degree exactly D with degrees k..dmax"""

    def __init__(self, table: CostTable, places: Sequence[int], caps: Sequence[int], length: int):
        dmax = len(places)
        self.rows: List[np.ndarray] = [None] * (dmax + 2)
        last = np.full(length, INF, dtype=np.int64)
        last[0] = 0
        self.rows[dmax + 1] = last
        for k in range(dmax, 0, -1):
            nxt = self.rows[k + 1]
            row = nxt.copy()
            for u in range(1, caps[k - 1] + 1):
                step, c = k * u, table.cost(k, u)
                for count in range(1, places[k - 1] + 1):
                    shift = count * step
                    if shift >= length:
                        break
                    candidate = np.full(length, INF, dtype=np.int64)
                    candidate[shift:] = nxt[:length - shift] + count * c
                    np.minimum(row, candidate, out=row)
            np.minimum(row, INF, out=row)
            self.rows[k] = row


def _lex_least(table: CostTable, suffix: _SuffixTable, places: Sequence[int], caps: Sequence[int],
               degree: int) -> Tuple[List[int], List[int]]:
    """Lexicographically least N, then greatest U, among optimal shapes of exact degree"""
    dmax = len(places)
    # live states: remaining degree -> (lex-greatest U prefix, N prefix)
    states: Dict[int, Tuple[List[int], List[int]]] = {degree: ([], [])}
    for k in range(1, dmax + 1):
        best_count, nxt = None, {}
        for count in range(0, places[k - 1] + 1):
            for remaining, (U, N) in states.items():
                for u in ([1] if count == 0 else range(1, caps[k - 1] + 1)):
                    rest = remaining - count * k * u
                    if rest < 0:
                        continue
                    spent = count * table.cost(k, u) if count else 0
                    if spent + suffix.rows[k + 1][rest] != suffix.rows[k][remaining]:
                        continue
                    candidate = (U + [u], N + [count])
                    if rest not in nxt or candidate[0] > nxt[rest][0]:
                        nxt[rest] = candidate
            if nxt:
                best_count = count
                break
        if best_count is None:
            raise DomainError("optimal shape could not be reconstructed")
        states = nxt
    U, N = states[0]
    return N, U


def optimize_bound(q: int, n: int, curve: Curve, dmax: Optional[int] = None,
                   exact_case_b: Optional[bool] = None, buildable: bool = False,
                   reserved: Optional[Dict[int, int]] = None,
                   table: Optional[CostTable] = None) -> DivisorShape:
    """Exact minimizer of the interpolation cost over uniform-multiplicity shapes

    Ties go to the lower total degree, then the lexicographically least N,
    then the lexicographically greatest U (multiplicity on low degrees first).
    """
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if curve.q != q:
        raise ValidationError(f"curve is defined over GF({curve.q}), not GF({q})")
    table = table or CostTable.for_q(q)
    dmax = dmax or default_max_degree(q, n, table)
    if buildable:
        dmax = min(dmax, BUILD_CONFIG['explicit_max_degree'])
    if not 1 <= dmax <= table.max_degree:
        raise DomainError(f"dmax={dmax} outside the cost table range 1..{table.max_degree}")

    case, slack, target = degree_target(curve, n, exact_case_b)
    places = list(curve.zeta_counts(dmax).place_counts)
    for d, count in (reserved or {}).items():
        if 1 <= d <= dmax:
            places[d - 1] = max(0, places[d - 1] - count)
    caps = order_caps(dmax, buildable)
    max_degree = sum(places[d - 1] * d * caps[d - 1] for d in range(1, dmax + 1))
    if max_degree < target:
        raise InfeasibleShapeError(
            f"places of degree <= {dmax} reach degree {max_degree} < {target} on {curve!r}",
            max_degree, target)

    # a shape overshooting by a full place can drop it
    length = target + dmax * max(caps) + 1
    suffix = _SuffixTable(table, places, caps, length)
    head = suffix.rows[1][target:]
    best = int(head.min())
    if best >= INF:
        raise InfeasibleShapeError(f"no shape of degree >= {target} on {curve!r}", max_degree, target)
    degree = target + int(np.argmax(head == best))

    N, U = _lex_least(table, suffix, places, caps, degree)

    shape = DivisorShape(q, n, case, slack, target, tuple(N), tuple(U), best, curve)
    logger.debug(f"GF({q}^{n}) on {curve.equation or curve!r}: bound {best}, N={N}, U={U}, degG={degree}")
    return shape


def shape_from_counts(q: int, n: int, curve: Curve, N: Sequence[int], U: Sequence[int],
                      exact_case_b: Optional[bool] = None) -> DivisorShape:
    """Validate a user-supplied shape against the curve's place counts"""
    if len(N) != len(U):
        raise ValidationError(f"N and U differ in length: {len(N)} != {len(U)}")
    table = CostTable.for_q(q)
    case, slack, target = degree_target(curve, n, exact_case_b)
    places = curve.zeta_counts(len(N)).place_counts
    for d, (count, u) in enumerate(zip(N, U), start=1):
        if count < 0 or u < 1:
            raise ValidationError(f"degree {d}: need N >= 0 and U >= 1, got {count}, {u}")
        if count > places[d - 1]:
            raise ValidationError(f"degree {d}: {count} places requested, curve has {places[d - 1]}")
    U = [u if count else 1 for count, u in zip(N, U)]
    shape = DivisorShape(q, n, case, slack, target, tuple(N), tuple(U), shape_cost(table, N, U), curve)
    if shape.degree < target:
        raise ValidationError(f"shape degree {shape.degree} below the target {target}")
    return shape


def best_curve(q: int, n: int, dmax: Optional[int] = None,
               exact_case_b: Optional[bool] = None) -> Tuple[Curve, DivisorShape]:
    """Cheapest shape over every catalog curve; earlier catalog entries win ties"""
    best: Optional[DivisorShape] = None
    largest = 0
    for entry in catalog(q):
        try:
            shape = optimize_bound(q, n, entry.curve, dmax, exact_case_b)
        except InfeasibleShapeError as e:
            logger.debug(f"{entry.equation}: infeasible ({e})")
            largest = max(largest, e.max_degree)
            continue
        logger.debug(f"{entry.equation}: bound {shape.bound}")
        if best is None or shape.bound < best.bound:
            best = shape
    if best is None:
        raise InfeasibleShapeError(f"no catalog curve over GF({q}) admits a shape for n={n}", largest, 2 * n)
    logger.info(f"best curve for GF({q}^{n}): {best.curve.equation} with bound {best.bound}")
    return best.curve, best
