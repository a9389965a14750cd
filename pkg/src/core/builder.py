"""Interpolation plan for multiplication in F_{q^n} and its flat tensor

A plan fixes a degree-n place Q (so that O_Q/Q is F_{q^n}), a divisor D
made of one place away from Q, and interpolation places G with jet
orders. Inputs are lifted to L(D) through Ev_Q, multiplied place by place
with the small explicit algorithms of ``inner``, and the product in L(2D)
is recovered from its jets at G and evaluated back at Q.
"""
import logging
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from config.config import BUILD_CONFIG
from . import linalg
from .catalog import catalog
from .costs import place_exists
from .curves import Curve
from .errors import (ConstructionError, DomainError, InfeasibleShapeError, InternalConsistencyError,
                     ValidationError)
from .fields import ResidueFields
from .function_field import Divisor, PlaceRef, enumerate_places, random_place
from .inner import inner_algorithm
from .optimizer import DivisorShape, optimize_bound
from .poly import Poly, random_irreducible
from .riemann_roch import RiemannRochSpace, speciality_index
from .tensor import TensorDecomposition

logger = logging.getLogger(__name__)

# smallest n admitting a degree-n place for every curve over F_q
EXISTENCE_THRESHOLD = {2: 7, 3: 4}


@dataclass
class ConditionReport:
    """Each interpolation condition, checked independently"""
    injective: bool
    surjective: bool
    disjoint: bool
    zero_dimensional: bool
    non_special: bool
    evaluation_rank: int
    q_rank: int

    @property
    def passed(self) -> bool:
        return self.injective and self.surjective and self.disjoint

    @property
    def failures(self) -> List[str]:
        return [name for name in ('injective', 'surjective', 'disjoint', 'zero_dimensional', 'non_special')
                if not getattr(self, name)]

    @property
    def consistent(self) -> bool:
        """Rank checks agree with the divisor-class criteria"""
        return self.injective == self.zero_dimensional and self.surjective == self.non_special

    def to_json(self) -> Dict[str, Any]:
        return {
            'injective': self.injective,
            'surjective': self.surjective,
            'disjoint': self.disjoint,
            'zero_dimensional': self.zero_dimensional,
            'non_special': self.non_special,
            'evaluation_rank': self.evaluation_rank,
            'q_rank': self.q_rank,
            'passed': self.passed
        }


@dataclass
class BuildPlan:
    curve: Curve
    n: int
    shape: DivisorShape
    seed: Any
    seed_chain: List[str]
    fields: ResidueFields
    modulus: Poly
    Q: PlaceRef
    D: Divisor
    G: List[Tuple[PlaceRef, int]]
    space_D: RiemannRochSpace
    space_2D: RiemannRochSpace
    evaluation: np.ndarray          # deg G x dim L(2D), jets at G
    q_evaluation: np.ndarray        # n x dim L(2D), values at Q
    pivots: List[int]               # L(D) functions forming the basis e_i
    basis_change: np.ndarray        # power basis -> e-basis
    reduction: np.ndarray           # L(2D) coefficients -> e-basis coordinates of f(Q)
    left_inverse: np.ndarray
    selected_rows: List[int]
    blocks: List[Tuple[int, int]] = dataclass_field(default_factory=list)

    @property
    def base(self):
        return self.curve.field

    @property
    def g_divisor(self) -> Divisor:
        return Divisor.from_places(self.G)

    @property
    def degree_g(self) -> int:
        return self.g_divisor.degree

    def to_json(self) -> Dict[str, Any]:
        return {
            'q': self.curve.q,
            'n': self.n,
            'seed': self.seed,
            'seed_chain': self.seed_chain,
            'curve': self.curve.to_json(),
            'shape': self.shape.to_json(),
            'modulus': self.modulus.to_json(),
            'Q': self.Q.to_json(),
            'D': self.D.to_json(),
            'G': [{'place': P.to_json(), 'order': u} for P, u in self.G],
            'degG': self.degree_g,
            'pivots': self.pivots,
            'evaluation': self.evaluation.tolist(),
            'q_evaluation': self.q_evaluation.tolist(),
            'basis_change': self.basis_change.tolist(),
            'reduction': self.reduction.tolist()
        }


def check_existence(curve: Curve, n: int) -> None:
    q = curve.q
    if place_exists(q, n) or n >= EXISTENCE_THRESHOLD.get(q, 3):
        return
    if curve.zeta_counts(n).B(n) > 0:
        logger.warning(f"n={n} is below the existence threshold for q={q}; the curve still has degree-{n} places")
        return
    raise DomainError(f"{curve!r} has no place of degree {n}")


def _shape_for(curve: Curve, n: int, case_a: bool) -> DivisorShape:
    reserved = {n: 1, n + 1: 1} if case_a else {n: 2}
    return optimize_bound(curve.q, n, curve, buildable=True, reserved=reserved)


def buildable_curve(q: int, n: int) -> Tuple[Curve, DivisorShape]:
    """Catalog curve with the cheapest shape the explicit algorithms can realize"""
    best = None
    for entry in catalog(q):
        try:
            shape = _shape_for(entry.curve, n, entry.classification.case == 'a')
        except InfeasibleShapeError as e:
            logger.debug(f"{entry.equation}: no buildable shape ({e})")
            continue
        if best is None or shape.bound < best.bound:
            best = shape
    if best is None:
        raise InfeasibleShapeError(f"no catalog curve over GF({q}) has a buildable shape for n={n}", 0, 2 * n)
    return best.curve, best


def _check_buildable(shape: DivisorShape) -> None:
    explicit = BUILD_CONFIG['explicit_max_order']
    for d, (count, u) in enumerate(zip(shape.N, shape.U), start=1):
        if not count:
            continue
        cap = int(explicit.get(d, explicit.get(str(d), 0)))
        if d > BUILD_CONFIG['explicit_max_degree'] or u > cap:
            raise DomainError(f"no explicit algorithm for {count} places of degree {d} with order {u}")


def _select_g(curve: Curve, shape: DivisorShape, fields: ResidueFields,
              avoid: List[PlaceRef]) -> List[Tuple[PlaceRef, int]]:
    chosen = []
    for d, (count, u) in enumerate(zip(shape.N, shape.U), start=1):
        if not count:
            continue
        available = [P for P in enumerate_places(curve, d, fields) if P not in avoid]
        if len(available) < count:
            raise ConstructionError(f"only {len(available)} degree-{d} places left, shape needs {count}",
                                    {'degree': d, 'available': len(available), 'needed': count})
        chosen.extend((P, u) for P in available[:count])
    return chosen


def _sample_divisor(curve: Curve, n: int, deg_d: int, Q: PlaceRef, shape: DivisorShape,
                    fields: ResidueFields, seed: str) -> Tuple[PlaceRef, List[Tuple[PlaceRef, int]]]:
    """A place D of degree deg_d with i(D - Q) = 0 and l(2D - G) = 0 where decidable by sigma"""
    sigma_q = curve.sigma(Divisor({Q: 1}))
    attempts = BUILD_CONFIG['max_divisor_attempts']
    for j in range(attempts):
        D = random_place(curve, deg_d, f"D:{seed}:{j}", fields, exclude=[Q])
        if D.x_minpoly == Q.x_minpoly:
            continue
        G = _select_g(curve, shape, fields, [Q, D])
        divisor = Divisor({D: 1})
        if deg_d == n and curve.sigma(divisor) == sigma_q:
            logger.debug(f"D candidate {j} is equivalent to Q")
            continue
        g = Divisor.from_places(G)
        if g.degree == 2 * deg_d and curve.sigma(divisor * 2) == curve.sigma(g):
            logger.debug(f"D candidate {j} makes 2D - G principal")
            continue
        return D, G
    raise ConstructionError(f"no admissible divisor D in {attempts} attempts",
                            {'stage': 'divisor', 'attempts': attempts, 'seed': seed})


def _attempt(curve: Curve, n: int, shape: DivisorShape, fields: ResidueFields, modulus: Poly,
             seed: Any, attempt_seed: str, chain: List[str]) -> BuildPlan:
    base = curve.field
    case_a = shape.case == 'a'
    deg_d = n + 1 if case_a else n

    Q = random_place(curve, n, f"Q:{attempt_seed}", fields)
    D, G = _sample_divisor(curve, n, deg_d, Q, shape, fields, attempt_seed)
    logger.info(f"seed {attempt_seed}: Q={Q!r}, D={D!r}, {len(G)} interpolation places")

    divisor = Divisor({D: 1})
    space_D = RiemannRochSpace(curve, divisor)
    space_2D = RiemannRochSpace(curve, divisor * 2, extend=space_D)

    q_evaluation = space_2D.jets(Q, 1)
    pivots = linalg.independent_columns(q_evaluation[:, :space_D.dimension], base)
    blocks, rows = [], []
    for P, u in G:
        block = space_2D.jets(P, u)
        blocks.append((sum(r.shape[0] for r in rows), block.shape[0]))
        rows.append(block)
    evaluation = np.concatenate(rows, axis=0)

    basis_change = np.zeros((n, n), dtype=np.int64)
    reduction = np.zeros((n, space_2D.dimension), dtype=np.int64)
    if len(pivots) == n:
        basis_change = linalg.inverse(q_evaluation[:, pivots], base)
        reduction = linalg.matmul(basis_change, q_evaluation, base)
    try:
        left, selected = linalg.left_inverse(evaluation, base)
    except DomainError:
        left, selected = np.zeros((evaluation.shape[1], evaluation.shape[0]), dtype=np.int64), []

    return BuildPlan(curve, n, shape, seed, list(chain), fields, modulus, Q, divisor, G, space_D, space_2D,
                     evaluation, q_evaluation, pivots, basis_change, reduction, left, selected, blocks)


def check_conditions(plan: BuildPlan) -> ConditionReport:
    base = plan.base
    evaluation_rank = linalg.rank(plan.evaluation, base)
    q_rank = linalg.rank(plan.q_evaluation[:, :plan.space_D.dimension], base)
    g = plan.g_divisor
    disjoint = plan.D.is_disjoint(g + Divisor({plan.Q: 1}))

    residual = plan.D * 2 - g
    if residual.degree < 0:
        zero_dimensional = True
    elif residual.degree == 0:
        zero_dimensional = not plan.curve.sigma(residual).is_infinity
    else:
        zero_dimensional = False
    non_special = speciality_index(plan.curve, plan.D - Divisor({plan.Q: 1})) == 0

    return ConditionReport(
        injective=evaluation_rank == plan.space_2D.dimension,
        surjective=q_rank == plan.n,
        disjoint=disjoint,
        zero_dimensional=zero_dimensional,
        non_special=non_special,
        evaluation_rank=evaluation_rank,
        q_rank=q_rank
    )


def build(curve: Curve, n: int, shape: Optional[DivisorShape] = None, seed: Any = None) -> BuildPlan:
    """Sample Q, D and G for F_{q^n} on ``curve`` and check the interpolation conditions

    Failed conditions reseed with a derived seed; the seed chain is kept
    on the plan and logged.
    """
    q = curve.q
    if n < 2:
        raise ValidationError(f"n must be at least 2, got {n}")
    seed = BUILD_CONFIG['default_seed'] if seed is None else seed
    check_existence(curve, n)
    cls = curve.classify()
    shape = shape or _shape_for(curve, n, cls.case == 'a')
    _check_buildable(shape)
    if shape.curve is not None and shape.curve != curve:
        raise ValidationError("shape was computed for a different curve")

    base = curve.field
    modulus = random_irreducible(base, n, f"modulus:{q}:{n}:{seed}")
    fields = curve.residue_fields({n: modulus})
    logger.info(f"building GF({q}^{n}) on {curve.equation or curve!r}: N={list(shape.N)}, U={list(shape.U)}, "
                f"bound {shape.bound}, seed {seed}")

    chain: List[str] = []
    diagnostics: Dict[str, Any] = {'seed': seed, 'attempts': []}
    started = time.monotonic()
    for attempt in range(BUILD_CONFIG['max_build_retries']):
        attempt_seed = str(seed) if attempt == 0 else f"{seed}.{attempt}"
        chain.append(attempt_seed)
        try:
            plan = _attempt(curve, n, shape, fields, modulus, seed, attempt_seed, chain)
        except ConstructionError as e:
            logger.warning(f"seed {attempt_seed}: {e}")
            diagnostics['attempts'].append({'seed': attempt_seed, 'error': str(e), **e.diagnostics})
            continue
        report = check_conditions(plan)
        if not report.consistent:
            raise InternalConsistencyError(f"rank checks disagree with the divisor criteria: {report.to_json()}")
        if report.passed:
            logger.info(f"plan ready after {attempt + 1} attempt(s) in {time.monotonic() - started:.2f}s; "
                        f"seed chain {chain}")
            return plan
        logger.warning(f"seed {attempt_seed}: failed {', '.join(report.failures)}; reseeding")
        diagnostics['attempts'].append({'seed': attempt_seed, **report.to_json()})
    raise ConstructionError(f"no valid plan for GF({q}^{n}) after {len(chain)} attempts", diagnostics)


def assemble_tensor(plan: BuildPlan) -> TensorDecomposition:
    """Flatten a plan into forms phi_j (e-basis) and elements w_j (power basis)"""
    report = check_conditions(plan)
    if not report.passed:
        raise ConstructionError("plan does not satisfy the interpolation conditions", report.to_json())
    base = plan.base
    phis, reconstructions = [], []
    for (P, u), (start, size) in zip(plan.G, plan.blocks):
        algorithm = inner_algorithm(base, P.degree, u, residue=P.field)
        block = plan.evaluation[start:start + size]
        phis.append(linalg.matmul(algorithm.forms, block[:, plan.pivots], base))
        reconstructions.append(algorithm.reconstruction)

    rank = sum(r.shape[1] for r in reconstructions)
    if rank != plan.shape.bound:
        raise InternalConsistencyError(f"assembled {rank} products, shape declares {plan.shape.bound}")
    phi = np.concatenate(phis, axis=0)
    spread = np.zeros((plan.evaluation.shape[0], rank), dtype=np.int64)
    row, col = 0, 0
    for r in reconstructions:
        spread[row:row + r.shape[0], col:col + r.shape[1]] = r
        row, col = row + r.shape[0], col + r.shape[1]
    coefficients = linalg.matmul(plan.left_inverse, spread, base)
    w = linalg.transpose(linalg.matmul(plan.q_evaluation, coefficients, base))

    provenance = {
        'curve': plan.curve.to_json(),
        'shape': plan.shape.to_json(),
        'seed': plan.seed,
        'seed_chain': plan.seed_chain,
        'Q': plan.Q.to_json(),
        'D': plan.D.to_json(),
        'bound': plan.shape.bound
    }
    logger.info(f"assembled symmetric tensor of rank {rank} for GF({plan.curve.q}^{plan.n})")
    return TensorDecomposition(plan.curve.q, plan.n, plan.modulus, plan.basis_change, phi, w,
                               provenance=provenance)
