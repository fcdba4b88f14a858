"""
V(lambda) realized inside tensor products of exterior powers of C^{n+1}.

The root vector f_{i,j} acts as the matrix unit w_i -> w_{j+1}; on wedges as a
derivation and on tensor products through the coproduct f -> f x 1 + 1 x f.
All linear algebra is exact over the rationals.
"""

import logging
import os
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

from dotenv import load_dotenv

from fflv_polytope import ExponentVector, ff_degree, lattice_points, length_degree, minimal_non_members
from hall_algebra import DirectedOrder, directed_enumeration
from quiver import WeightFunction
from root_system import (
    PositiveRoot,
    Weight,
    check_weight,
    format_weight,
    positive_roots,
    weight_minus_roots_bound,
    weyl_dim,
)

load_dotenv()

logger = logging.getLogger(__name__)

MAX_MODULE_DIM = int(os.getenv('PBW_MAX_MODULE_DIM', '3000'))

WedgeBasisIndex = Tuple[int, ...]
TensorBasisIndex = Tuple[WedgeBasisIndex, ...]
DegreeFunction = Callable[[ExponentVector], int]


class ModuleBudgetError(RuntimeError):
    """Module too large for the configured budget"""


class InvalidWedgeIndexError(ValueError):
    """Wedge index not strictly increasing or out of range"""


def check_wedge_index(idx: Sequence[int], n: int) -> WedgeBasisIndex:
    idx = tuple(idx)
    if not idx:
        raise InvalidWedgeIndexError("a wedge index needs at least one entry")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise InvalidWedgeIndexError(f"wedge index {idx} is not strictly increasing")
    if idx[0] < 1 or idx[-1] > n + 1:
        raise InvalidWedgeIndexError(f"wedge index {idx} has entries outside 1..{n + 1}")
    if len(idx) > n:
        raise InvalidWedgeIndexError(f"wedge index {idx} is not in a fundamental representation of rank {n}")
    return idx


class ModuleVector:
    """Sparse rational vector over tensor basis indices."""

    __slots__ = ('_entries',)

    def __init__(self, entries: Dict[TensorBasisIndex, Fraction] = None):
        self._entries = {key: Fraction(value) for key, value in (entries or {}).items() if value}

    @classmethod
    def basis(cls, index: TensorBasisIndex, coeff=1) -> 'ModuleVector':
        return cls({index: coeff})

    def items(self):
        return self._entries.items()

    def __getitem__(self, index: TensorBasisIndex) -> Fraction:
        return self._entries.get(index, Fraction(0))

    def is_zero(self) -> bool:
        return not self._entries

    def __add__(self, other: 'ModuleVector') -> 'ModuleVector':
        entries = dict(self._entries)
        for key, value in other._entries.items():
            entries[key] = entries.get(key, 0) + value
        return ModuleVector(entries)

    def __neg__(self) -> 'ModuleVector':
        return ModuleVector({key: -value for key, value in self._entries.items()})

    def __sub__(self, other: 'ModuleVector') -> 'ModuleVector':
        return self + (-other)

    def scale(self, c) -> 'ModuleVector':
        return ModuleVector({key: value * c for key, value in self._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def to_json(self) -> Dict[str, str]:
        return {render_index(key): str(value) for key, value in sorted(self._entries.items())}

    def __repr__(self):
        terms = [f"{value}*{render_index(key)}" for key, value in sorted(self._entries.items())]
        return f"ModuleVector({' + '.join(terms) or '0'})"


def render_index(index: TensorBasisIndex) -> str:
    return ' x '.join('^'.join(f"w{a}" for a in wedge) for wedge in index)


def leading_index(v: ModuleVector) -> TensorBasisIndex:
    return min(index for index, _ in v.items())


@lru_cache(maxsize=None)
def _wedge_image(source: int, target: int, wedge: WedgeBasisIndex) -> Optional[Tuple[int, WedgeBasisIndex]]:
    """(sign, wedge) for w_source -> w_target applied to one wedge, None if it vanishes."""
    if source not in wedge or target in wedge:
        return None
    crossed = sum(1 for a in wedge if source < a < target)
    image = tuple(sorted([a for a in wedge if a != source] + [target]))
    return (-1) ** crossed, image


@lru_cache(maxsize=None)
def _basis_action(alpha: PositiveRoot, index: TensorBasisIndex) -> Tuple[Tuple[TensorBasisIndex, int], ...]:
    terms = []
    for pos, wedge in enumerate(index):
        hit = _wedge_image(alpha.i, alpha.j + 1, wedge)
        if hit is not None:
            sign, image = hit
            terms.append((index[:pos] + (image,) + index[pos + 1:], sign))
    return tuple(terms)


def root_vector_action(alpha: PositiveRoot, v: ModuleVector) -> ModuleVector:
    entries: Dict[TensorBasisIndex, Fraction] = {}
    for index, coeff in v.items():
        for image, sign in _basis_action(alpha, index):
            entries[image] = entries.get(image, 0) + sign * coeff
    return ModuleVector(entries)


def factor_shapes(weight: Weight) -> Tuple[int, ...]:
    """Exterior power of each tensor factor: varpi_1 m_1 times, then varpi_2 m_2 times, ..."""
    return tuple(k for k, m in enumerate(weight, start=1) for _ in range(m))


def highest_weight_vector(weight: Weight) -> ModuleVector:
    weight = check_weight(weight)
    return highest_vector_for_shapes(factor_shapes(weight))


def highest_vector_for_shapes(shapes: Sequence[int]) -> ModuleVector:
    return ModuleVector.basis(tuple(tuple(range(1, k + 1)) for k in shapes))


def ordered_monomial_action(s: ExponentVector, v: ModuleVector, roots: Sequence[PositiveRoot]) -> ModuleVector:
    """Apply f_{roots[0]}^{s} ... f_{roots[-1]}^{s}; the last factor acts first."""
    result = v
    for root in reversed(tuple(roots)):
        for _ in range(s[root]):
            result = root_vector_action(root, result)
            if result.is_zero():
                return result
    return result


def monomial_action(s: ExponentVector, v: ModuleVector, order: DirectedOrder) -> ModuleVector:
    """f^s v with the factors of f^s in the directed order."""
    return ordered_monomial_action(s, v, order.roots)


class EchelonBasis:
    """
    Row echelon basis over Q. Each row is keyed by its pivot, the smallest
    tensor index in its support, and normalized to pivot coefficient 1.
    """

    def __init__(self):
        self.rows: Dict[TensorBasisIndex, Dict[TensorBasisIndex, Fraction]] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: ModuleVector) -> Dict[TensorBasisIndex, Fraction]:
        residual = dict(v.items())
        while True:
            pivots = [key for key in residual if key in self.rows]
            if not pivots:
                return residual
            pivot = min(pivots)
            factor = residual[pivot]
            for key, value in self.rows[pivot].items():
                updated = residual.get(key, 0) - factor * value
                if updated:
                    residual[key] = updated
                else:
                    residual.pop(key, None)

    def contains(self, v: ModuleVector) -> bool:
        return not self.reduce(v)

    def add(self, v: ModuleVector) -> bool:
        """Insert v; True if it was independent of the current rows."""
        residual = self.reduce(v)
        if not residual:
            return False
        pivot = min(residual)
        lead = residual[pivot]
        self.rows[pivot] = {key: value / lead for key, value in residual.items()}
        return True


class GradedReport(NamedTuple):
    weight: Weight
    degree_mode: str
    order: Tuple[str, ...]
    degree_dims: Dict[int, int]
    basis_ok: bool
    monomial_ideal_ok: bool
    violations: Tuple[ExponentVector, ...]

    @property
    def total_dim(self) -> int:
        return sum(self.degree_dims.values())

    def to_dict(self) -> dict:
        return {
            'lambda': format_weight(self.weight),
            'degree': self.degree_mode,
            'order': list(self.order),
            'degree_dims': {str(d): dim for d, dim in sorted(self.degree_dims.items())},
            'dim': self.total_dim,
            'basis_ok': self.basis_ok,
            'monomial_ideal_ok': self.monomial_ideal_ok,
            'violations': [s.to_json() for s in self.violations],
        }


def monomial_domain(weight: Weight) -> List[ExponentVector]:
    """Every s with sum_alpha s_alpha alpha <= lambda - w0(lambda) in simple-root coordinates."""
    weight = check_weight(weight)
    n = len(weight)
    bound = list(weight_minus_roots_bound(weight))
    roots = positive_roots(n)
    found: List[ExponentVector] = []
    mults = [0] * len(roots)

    def descend(idx: int):
        if idx == len(roots):
            found.append(ExponentVector.from_sequence(mults, n))
            return
        root = roots[idx]
        limit = min(bound[root.i - 1:root.j])
        for k in range(limit + 1):
            mults[idx] = k
            for t in range(root.i - 1, root.j):
                bound[t] -= k
            descend(idx + 1)
            for t in range(root.i - 1, root.j):
                bound[t] += k
        mults[idx] = 0

    descend(0)
    return found


def degree_function(mode: str, n: int, w: Optional[WeightFunction] = None) -> DegreeFunction:
    if mode == 'ff':
        return lambda s: ff_degree(s, n)
    if mode == 'length':
        return length_degree
    if mode == 'custom':
        if w is None:
            raise ValueError("custom degree mode needs a weight function")
        return w
    raise ValueError(f"unknown degree mode '{mode}' (expected ff, length or custom)")


class ModuleEngine:
    """Images f^s v for one highest weight vector, memoized along the directed order."""

    def __init__(self, shapes: Sequence[int], n: int, order: Optional[DirectedOrder] = None):
        self.n = n
        self.shapes = tuple(shapes)
        self.order = order or directed_enumeration(n)
        self.vector = highest_vector_for_shapes(self.shapes)
        self._images: Dict[ExponentVector, ModuleVector] = {ExponentVector.zero(): self.vector}
        self._lock = threading.Lock()

    def image(self, s: ExponentVector) -> ModuleVector:
        """f^s v, peeling the leftmost factor: f^s = f_beta f^(s - e_beta)."""
        with self._lock:
            if s in self._images:
                return self._images[s]
        leftmost = next(root for root in self.order.roots if s[root])
        rest = s - ExponentVector.unit(leftmost)
        result = root_vector_action(leftmost, self.image(rest))
        with self._lock:
            return self._images.setdefault(s, result)


def set_module_budget(max_dim: int):
    """Override PBW_MAX_MODULE_DIM for the rest of the process."""
    global MAX_MODULE_DIM
    if max_dim < 1:
        raise ValueError(f"module budget must be positive, got {max_dim}")
    MAX_MODULE_DIM = max_dim


def _check_budget(weight: Weight):
    dim = weyl_dim(weight)
    if dim > MAX_MODULE_DIM:
        raise ModuleBudgetError(f"dim V({format_weight(weight)}) = {dim} exceeds budget {MAX_MODULE_DIM}")


_engines: Dict[tuple, ModuleEngine] = {}
_engine_lock = threading.Lock()


def get_engine(weight: Weight, order: Optional[DirectedOrder] = None) -> ModuleEngine:
    weight = check_weight(weight)
    _check_budget(weight)
    order = order or directed_enumeration(len(weight))
    key = (weight, order.roots)
    with _engine_lock:
        if key not in _engines:
            _engines[key] = ModuleEngine(factor_shapes(weight), len(weight), order)
        return _engines[key]


def filtration_space(weight: Weight, d: int, degfun: DegreeFunction,
                     order: Optional[DirectedOrder] = None) -> EchelonBasis:
    """Row-reduced basis of F_d V(lambda)."""
    engine = get_engine(weight, order)
    basis = EchelonBasis()
    for s in monomial_domain(weight):
        if degfun(s) <= d:
            basis.add(engine.image(s))
    return basis


def graded_analysis(weight: Weight, degfun: DegreeFunction, mode: str = 'ff',
                    order: Optional[DirectedOrder] = None) -> GradedReport:
    """
    Walk the filtration degree by degree. Before degree d is added the
    running basis is F_{d-1}, which is where every monomial of degree d
    outside S(lambda) must land.
    """
    weight = check_weight(weight)
    engine = get_engine(weight, order)
    points = frozenset(lattice_points(weight))
    domain = monomial_domain(weight)

    by_degree: Dict[int, List[ExponentVector]] = {}
    for s in set(domain) | points:
        by_degree.setdefault(degfun(s), []).append(s)

    full = EchelonBasis()
    from_points = EchelonBasis()
    degree_dims: Dict[int, int] = {}
    basis_ok = True
    violations: List[ExponentVector] = []

    for d in sorted(by_degree):
        monomials = sorted(by_degree[d])
        for s in monomials:
            if s not in points and not full.contains(engine.image(s)):
                violations.append(s)
        before = full.dim
        for s in monomials:
            if s in points and not from_points.add(engine.image(s)):
                basis_ok = False
            full.add(engine.image(s))
        if from_points.dim != full.dim:
            basis_ok = False
        if full.dim > before:
            degree_dims[d] = full.dim - before

    if full.dim != weyl_dim(weight):
        logger.warning(f"span of monomials has dim {full.dim}, expected {weyl_dim(weight)}")
        basis_ok = False

    report = GradedReport(
        weight=weight,
        degree_mode=mode,
        order=tuple(engine.order.to_json()),
        degree_dims=degree_dims,
        basis_ok=basis_ok,
        monomial_ideal_ok=not violations,
        violations=tuple(violations),
    )
    logger.info(f"graded analysis of V({format_weight(weight)}) [{mode}]: "
                f"basis_ok={basis_ok}, violations={len(violations)}")
    return report


def verify_basis(weight: Weight, degfun: DegreeFunction, mode: str = 'ff') -> bool:
    return graded_analysis(weight, degfun, mode).basis_ok


def verify_monomial_ideal(weight: Weight, degfun: DegreeFunction, mode: str = 'ff') -> GradedReport:
    return graded_analysis(weight, degfun, mode)


def ideal_generators(weight: Weight) -> List[ExponentVector]:
    """Minimal monomials (under divisibility) outside S(lambda)."""
    return minimal_non_members(check_weight(weight))


def fundamental_basis_formula(idx: Sequence[int], n: int) -> ExponentVector:
    """
    Exponent of the monomial producing w_{i_1} ^ ... ^ w_{i_k} from w_1 ^ ... ^ w_k.

    The indices missing from 1..k are paired increasingly with the entries
    above k taken decreasingly: j_t goes to alpha_{j_t, i_{k-t+1} - 1}.
    """
    idx = check_wedge_index(idx, n)
    k = len(idx)
    missing = [j for j in range(1, k + 1) if j not in idx]
    above = [i for i in idx if i > k]
    pairs = {}
    for t, j in enumerate(missing):
        pairs[PositiveRoot(j, above[len(above) - 1 - t] - 1)] = 1
    return ExponentVector(pairs)


def cartan_component_check(weight: Weight, other: Weight, order: Optional[DirectedOrder] = None) -> bool:
    """f^s (v_lambda x v_mu) for s in S(lambda) + S(mu) are independent and as many as dim V(lambda + mu)."""
    weight, other = check_weight(weight), check_weight(other, len(weight))
    total = tuple(a + b for a, b in zip(weight, other))
    _check_budget(total)
    n = len(weight)
    engine = ModuleEngine(factor_shapes(weight) + factor_shapes(other), n, order)
    exponents = {s + t for s in lattice_points(weight) for t in lattice_points(other)}
    basis = EchelonBasis()
    independent = all(basis.add(engine.image(s)) for s in sorted(exponents))
    return independent and len(exponents) == weyl_dim(total)


def content(index: TensorBasisIndex, n: int) -> Tuple[int, ...]:
    """Weight of a basis tensor in epsilon coordinates: how often each w_a occurs."""
    counts = Counter(a for wedge in index for a in wedge)
    return tuple(counts[a] for a in range(1, n + 2))


def weight_multiplicities(weight: Weight) -> Dict[Tuple[int, ...], int]:
    """
    Weight space dimensions of V(lambda) by closing v_lambda under the simple
    root vectors, one echelon basis per weight.
    """
    weight = check_weight(weight)
    _check_budget(weight)
    n = len(weight)
    start = highest_weight_vector(weight)
    spaces: Dict[Tuple[int, ...], EchelonBasis] = {}
    queue = [start]
    spaces.setdefault(content(leading_index(start), n), EchelonBasis()).add(start)
    simples = [PositiveRoot(i, i) for i in range(1, n + 1)]
    while queue:
        v = queue.pop()
        for alpha in simples:
            image = root_vector_action(alpha, v)
            if image.is_zero():
                continue
            key = content(leading_index(image), n)
            if spaces.setdefault(key, EchelonBasis()).add(image):
                queue.append(image)
    return {key: basis.dim for key, basis in spaces.items()}


def lattice_weight_counts(weight: Weight) -> Dict[Tuple[int, ...], int]:
    """#{s in S(lambda)} per weight of f^s v_lambda, in epsilon coordinates."""
    weight = check_weight(weight)
    n = len(weight)
    top = content(leading_index(highest_weight_vector(weight)), n)
    counts: Counter = Counter()
    for s in lattice_points(weight):
        shifted = list(top)
        for root, mult in s.items():
            shifted[root.i - 1] -= mult
            shifted[root.j] += mult
        counts[tuple(shifted)] += 1
    return dict(counts)


def order_independence_check(weight: Weight, s: ExponentVector, roots: Sequence[PositiveRoot],
                             degfun: DegreeFunction) -> bool:
    """f^s v_lambda taken in two factor orders agree modulo F_{deg(s) - 1}."""
    engine = get_engine(weight)
    other = ordered_monomial_action(s, engine.vector, roots)
    difference = engine.image(s) - other
    if difference.is_zero():
        return True
    return filtration_space(weight, degfun(s) - 1, degfun).contains(difference)

