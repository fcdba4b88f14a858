"""
Hall algebra of the equioriented A_n quiver over Q(q).

Structure constants are obtained by counting subrepresentations over small
prime fields and interpolating the counts into Hall polynomials in u; products
substitute u -> q^2 and twist by q^<dim M, dim N>.
"""

import itertools
import logging
import os
import threading
from collections import Counter
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from dotenv import load_dotenv

from exact_arith import (
    ONE,
    ZERO,
    InexactDivisionError,
    LaurentPoly,
    Q,
    interpolate_integer_polynomial,
    laurent_divide_exact,
    laurent_eval,
    q_factorial,
    substitute_power,
)
from fflv_polytope import ExponentVector
from quiver import (
    WeightFunction,
    ADMISSIBLE_STRONG,
    classify_weight_function,
    degeneration_leq,
    dimension_vector,
    directed_roots,
    euler_form,
    ext_dim_reps,
    hom_dim,
    hom_dim_reps,
    mu0,
    rep_classes_of_dim,
)
from root_system import PositiveRoot, RankMismatchError, check_rank, root_pairing

load_dotenv()

logger = logging.getLogger(__name__)

# A degree-d attempt samples d + 1 primes and checks the next one, so the
# usable degree is capped at len(PRIMES) - 2; eight primes reach MAX_DEGREE_BOUND.
PRIMES = tuple(int(p) for p in os.getenv('PBW_PRIMES', '2,3,5,7,11,13,17,19').split(','))
MAX_TOTAL_DIM = int(os.getenv('PBW_MAX_TOTAL_DIM', '6'))
MAX_DEGREE_BOUND = int(os.getenv('PBW_MAX_DEGREE_BOUND', '6'))
MAX_PRIME = 19


class BudgetExceededError(RuntimeError):
    """Enumeration would exceed the configured budget"""


class VerificationFailureError(RuntimeError):
    """An interpolated Hall polynomial disagreed with a held-out count"""


class NotStronglyAdmissibleError(ValueError):
    """A check that needs a strongly admissible weight function got another one"""


class FiniteFieldRep(NamedTuple):
    """maps[t] is the matrix of the arrow t+1 -> t+2, shape dims[t+1] x dims[t]."""
    p: int
    dims: Tuple[int, ...]
    maps: Tuple[np.ndarray, ...]


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def check_field(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise BudgetExceededError(f"field size {p} is above the limit {MAX_PRIME}")
    return p


def make_rep(p: int, dims: Sequence[int], maps: Sequence[Sequence[Sequence[int]]]) -> FiniteFieldRep:
    check_field(p)
    dims = tuple(int(d) for d in dims)
    if len(maps) != len(dims) - 1:
        raise ValueError(f"{len(dims)} vertices need {len(dims) - 1} arrow maps, got {len(maps)}")
    arrays = []
    for t, matrix in enumerate(maps):
        array = np.array(matrix, dtype=np.int64).reshape(dims[t + 1], dims[t]) % p
        arrays.append(array)
    return FiniteFieldRep(p, dims, tuple(arrays))


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over GF(p) by Gaussian elimination."""
    work = np.array(matrix, dtype=np.int64) % p
    if work.size == 0:
        return 0
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = np.nonzero(work[rank:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = rank + int(nonzero[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        inverse = pow(int(work[rank, col]), -1, p)
        work[rank] = (work[rank] * inverse) % p
        for r in range(rows):
            if r != rank and work[r, col]:
                work[r] = (work[r] - work[r, col] * work[rank]) % p
        rank += 1
    return rank


@lru_cache(maxsize=None)
def subspaces(dim: int, k: int, p: int) -> Tuple[np.ndarray, ...]:
    """Every k-dimensional subspace of GF(p)^dim, as k x dim matrices in reduced row echelon form."""
    found = []
    for pivots in itertools.combinations(range(dim), k):
        free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, dim) if c not in pivots]
        for values in itertools.product(range(p), repeat=len(free)):
            basis = np.zeros((k, dim), dtype=np.int64)
            for r, pc in enumerate(pivots):
                basis[r, pc] = 1
            for (r, c), value in zip(free, values):
                basis[r, c] = value
            basis.setflags(write=False)
            found.append(basis)
    return tuple(found)


def _composites(rep: FiniteFieldRep) -> Dict[Tuple[int, int], np.ndarray]:
    """Composite maps from vertex i to vertex j (1-based, i < j)."""
    n = len(rep.dims)
    composites = {}
    for i in range(1, n + 1):
        current = np.eye(rep.dims[i - 1], dtype=np.int64)
        for j in range(i + 1, n + 1):
            current = (rep.maps[j - 2] @ current) % rep.p
            composites[(i, j)] = current
    return composites


def _classes_from_ranks(ranks: Dict[Tuple[int, int], int], n: int) -> ExponentVector:
    def r(i: int, j: int) -> int:
        if i < 1 or j > n:
            return 0
        return ranks[(i, j)]

    mults = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
            if m < 0:
                raise ArithmeticError(f"negative multiplicity {m} at ({i},{j}); rank table inconsistent")
            mults[PositiveRoot(i, j)] = m
    return ExponentVector(mults)


def classify_rep(rep: FiniteFieldRep) -> ExponentVector:
    """Krull-Schmidt decomposition from the ranks of composite arrow maps."""
    n = len(rep.dims)
    composites = _composites(rep)
    ranks = {}
    for i in range(1, n + 1):
        ranks[(i, i)] = rep.dims[i - 1]
        for j in range(i + 1, n + 1):
            ranks[(i, j)] = rank_mod_p(composites[(i, j)], rep.p)
    return _classes_from_ranks(ranks, n)


def model_rep(x: ExponentVector, n: int, p: int) -> FiniteFieldRep:
    """Direct sum of interval modules with identity arrow maps."""
    summands: List[PositiveRoot] = []
    for root, mult in x.items():
        summands.extend([root] * mult)
    at_vertex = [[s for s, root in enumerate(summands) if root.i <= t <= root.j] for t in range(1, n + 1)]
    dims = tuple(len(basis) for basis in at_vertex)
    maps = []
    for t in range(n - 1):
        matrix = np.zeros((dims[t + 1], dims[t]), dtype=np.int64)
        for col, s in enumerate(at_vertex[t]):
            if s in at_vertex[t + 1]:
                matrix[at_vertex[t + 1].index(s), col] = 1
        maps.append(matrix)
    return FiniteFieldRep(p, dims, tuple(maps))


class HallElement:
    """Finite Q(q)-combination of basis elements u[m]."""

    __slots__ = ('_terms',)

    def __init__(self, terms: Dict[ExponentVector, LaurentPoly] = None):
        terms = terms or {}
        self._terms = {m: c for m, c in sorted(terms.items(), key=lambda kv: kv[0]) if not c.is_zero()}

    @classmethod
    def basis(cls, m: ExponentVector, coeff: LaurentPoly = ONE) -> 'HallElement':
        return cls({m: coeff})

    @classmethod
    def unit(cls) -> 'HallElement':
        return cls.basis(ExponentVector.zero())

    def items(self):
        return self._terms.items()

    def coefficient(self, m: ExponentVector) -> LaurentPoly:
        return self._terms.get(m, ZERO)

    def support(self) -> Tuple[ExponentVector, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: 'HallElement') -> 'HallElement':
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, ZERO) + c
        return HallElement(terms)

    def __neg__(self) -> 'HallElement':
        return HallElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: 'HallElement') -> 'HallElement':
        return self + (-other)

    def scale(self, c: LaurentPoly) -> 'HallElement':
        return HallElement({m: coeff * c for m, coeff in self._terms.items()})

    def divide_exact(self, c: LaurentPoly) -> 'HallElement':
        return HallElement({m: laurent_divide_exact(coeff, c) for m, coeff in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HallElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def render(self) -> List[str]:
        return [f"{c} * u[{_json_key(m)}]" for m, c in self._terms.items()]

    def to_json(self) -> List[dict]:
        return [{'class': m.to_json(), 'coefficient': str(c)} for m, c in self._terms.items()]

    def __repr__(self):
        return f"HallElement({' + '.join(self.render()) or '0'})"


def _json_key(m: ExponentVector) -> str:
    inner = ', '.join(f'"{key}": {value}' for key, value in m.to_json().items())
    return '{' + inner + '}'


class DirectedOrder(NamedTuple):
    """beta_1 < ... < beta_N with Hom(beta_k, beta_l) = 0 for k > l."""
    n: int
    roots: Tuple[PositiveRoot, ...]

    def position(self, root: PositiveRoot) -> int:
        """1-based position of a root."""
        return self.roots.index(root) + 1

    def root(self, k: int) -> PositiveRoot:
        return self.roots[k - 1]

    def violations(self) -> List[str]:
        problems = []
        for k, u in enumerate(self.roots):
            for l, v in enumerate(self.roots):
                if k > l and hom_dim(u, v):
                    problems.append(f"Hom({u.key}, {v.key}) != 0 with {u.key} after {v.key}")
                if k <= l and ext_dim_reps(ExponentVector.unit(u), ExponentVector.unit(v), self.n):
                    problems.append(f"Ext({u.key}, {v.key}) != 0 with {u.key} not after {v.key}")
        return problems

    def to_json(self) -> List[str]:
        return [root.key for root in self.roots]


def directed_enumeration(n: int) -> DirectedOrder:
    order = DirectedOrder(n, directed_roots(check_rank(n)))
    problems = order.violations()
    if problems:
        raise VerificationFailureError(f"directed order for rank {n} is invalid: {problems[0]}")
    return order


class StraightenReport(NamedTuple):
    k: int
    l: int
    beta_k: PositiveRoot
    beta_l: PositiveRoot
    exponent: int
    corrections: Tuple[Tuple[ExponentVector, LaurentPoly], ...]
    equality_ok: bool
    support_ok: bool
    degree_ok: bool

    @property
    def passed(self) -> bool:
        return self.equality_ok and self.support_ok and self.degree_ok

    def classical_limit(self) -> Dict[ExponentVector, int]:
        """Correction coefficients at q = 1."""
        limit = {}
        for m, c in self.corrections:
            value = laurent_eval(c, 1)
            if value.denominator != 1:
                raise ArithmeticError(f"non-integral classical limit {value}")
            limit[m] = value.numerator
        return limit

    def render(self) -> str:
        left = f"F_{_short(self.beta_l)} F_{_short(self.beta_k)}"
        twist = '' if self.exponent == 0 else f"q^{self.exponent} "
        text = f"{left} = {twist}F_{_short(self.beta_k)} F_{_short(self.beta_l)}"
        for m, c in self.corrections:
            text += f" + ({c}) F^{{{m}}}"
        return text

    def to_dict(self) -> dict:
        return {
            'k': self.k,
            'l': self.l,
            'beta_k': self.beta_k.key,
            'beta_l': self.beta_l.key,
            'exponent': self.exponent,
            'corrections': [{'class': m.to_json(), 'coefficient': str(c)} for m, c in self.corrections],
            'equality': self.equality_ok,
            'support': self.support_ok,
            'degree': self.degree_ok,
            'identity': self.render(),
        }


def _short(root: PositiveRoot) -> str:
    return ''.join(str(t) for t in range(root.i, root.j + 1))


class IdentityReport(NamedTuple):
    lhs: HallElement
    rhs: HallElement
    holds: bool
    text: str

    def to_dict(self) -> dict:
        return {'identity': self.text, 'holds': self.holds,
                'lhs': self.lhs.to_json(), 'rhs': self.rhs.to_json()}


class ScanReport(NamedTuple):
    weak: bool
    strict: bool
    normalized: bool
    checked: int
    witnesses: Tuple[dict, ...]

    def to_dict(self) -> dict:
        return {'weak': self.weak, 'strict': self.strict, 'normalized': self.normalized,
                'checked': self.checked, 'witnesses': list(self.witnesses)}


class HallAlgebra:
    """Hall algebra of one rank, with memo tables shared by all checks."""

    def __init__(self, n: int, primes: Sequence[int] = PRIMES, max_total_dim: int = MAX_TOTAL_DIM,
                 max_degree_bound: int = MAX_DEGREE_BOUND, store=None):
        self.n = check_rank(n)
        self.primes = tuple(check_field(p) for p in primes)
        self.max_total_dim = max_total_dim
        self.max_degree_bound = max_degree_bound
        self.store = store
        self._lock = threading.Lock()
        self._census: Dict[tuple, Counter] = {}
        self._polynomials: Dict[tuple, LaurentPoly] = {}
        self._products: Dict[tuple, HallElement] = {}
        logger.info(f"Hall algebra for rank {n} ready (primes {self.primes})")

    # subrepresentation counting

    def _check_budget(self, x: ExponentVector):
        if not x.fits_rank(self.n):
            raise RankMismatchError(f"{x} does not fit rank {self.n}")
        total = sum(dimension_vector(x, self.n))
        if total > self.max_total_dim:
            raise BudgetExceededError(f"total dimension {total} of {x} exceeds budget {self.max_total_dim}")

    def subrep_census(self, x: ExponentVector, p: int, sub_dims: Optional[Sequence[int]] = None) -> Counter:
        """
        Count arrow-stable subspace tuples of the model of X, keyed by
        (class of the subrepresentation, class of the quotient).
        """
        self._check_budget(x)
        check_field(p)
        key = (x, p, tuple(sub_dims) if sub_dims is not None else None)
        with self._lock:
            if key in self._census:
                return self._census[key]

        rep = model_rep(x, self.n, p)
        n = self.n
        composites_t = {ij: matrix.T.copy() for ij, matrix in _composites(rep).items()}
        arrows_t = [matrix.T.copy() for matrix in rep.maps]
        choices = []
        for t in range(n):
            dims_here = [sub_dims[t]] if sub_dims is not None else range(rep.dims[t] + 1)
            options = []
            for k in dims_here:
                if 0 <= k <= rep.dims[t]:
                    options.extend(subspaces(rep.dims[t], k, p))
            choices.append(options)

        counts: Counter = Counter()
        chosen: List[np.ndarray] = []

        def descend(t: int):
            if t == n:
                counts[self._classify_pair(rep, chosen, composites_t)] += 1
                return
            for basis in choices[t]:
                if t > 0 and chosen[t - 1].shape[0]:
                    image = (chosen[t - 1] @ arrows_t[t - 1]) % p
                    if rank_mod_p(np.vstack([basis, image]), p) != basis.shape[0]:
                        continue
                chosen.append(basis)
                descend(t + 1)
                chosen.pop()

        descend(0)
        with self._lock:
            self._census.setdefault(key, counts)
        logger.debug(f"census of {x} over GF({p}) with sub dims {sub_dims}: {sum(counts.values())} subreps")
        return counts

    def _classify_pair(self, rep: FiniteFieldRep, bases: List[np.ndarray], composites_t) -> tuple:
        n, p = self.n, rep.p
        sub_ranks, quotient_ranks = {}, {}
        for i in range(1, n + 1):
            k_i = bases[i - 1].shape[0]
            sub_ranks[(i, i)] = k_i
            quotient_ranks[(i, i)] = rep.dims[i - 1] - k_i
            for j in range(i + 1, n + 1):
                composite_t = composites_t[(i, j)]
                sub_ranks[(i, j)] = rank_mod_p(bases[i - 1] @ composite_t, p) if k_i else 0
                k_j = bases[j - 1].shape[0]
                quotient_ranks[(i, j)] = rank_mod_p(np.vstack([composite_t, bases[j - 1]]), p) - k_j
        return _classes_from_ranks(sub_ranks, n), _classes_from_ranks(quotient_ranks, n)

    def subrep_count(self, x: ExponentVector, n_class: ExponentVector, m_class: ExponentVector, p: int) -> int:
        """Number of subrepresentations U of X with U ~ N and X/U ~ M over GF(p)."""
        dx = dimension_vector(x, self.n)
        dn = dimension_vector(n_class, self.n)
        dm = dimension_vector(m_class, self.n)
        if any(a != b + c for a, b, c in zip(dx, dn, dm)):
            return 0
        return self.subrep_census(x, p, dn)[(n_class, m_class)]

    # Hall polynomials

    def hall_polynomial(self, m_class: ExponentVector, n_class: ExponentVector, x: ExponentVector) -> LaurentPoly:
        """F^X_{M,N}(u), interpolated through counts at successive primes."""
        key = (m_class, n_class, x)
        with self._lock:
            if key in self._polynomials:
                return self._polynomials[key]

        dx = dimension_vector(x, self.n)
        if any(a != b + c for a, b, c in
               zip(dx, dimension_vector(m_class, self.n), dimension_vector(n_class, self.n))):
            return ZERO
        self._check_budget(x)

        cached = self.store.get(self.n, m_class, n_class, x) if self.store is not None else None
        if cached is not None:
            polynomial = cached
        else:
            polynomial, degree, held_out = self._interpolate(m_class, n_class, x)
            if self.store is not None:
                self.store.put(self.n, m_class, n_class, x, polynomial, degree, held_out)

        with self._lock:
            self._polynomials.setdefault(key, polynomial)
        return polynomial

    @property
    def degree_cap(self) -> int:
        return min(self.max_degree_bound, len(self.primes) - 2)

    def _interpolate(self, m_class, n_class, x) -> Tuple[LaurentPoly, int, int]:
        cap = self.degree_cap
        if cap < 0:
            raise BudgetExceededError("Hall polynomial interpolation needs at least two primes")
        degree = min(ext_dim_reps(n_class, m_class, self.n) + 1, cap)
        while True:
            sample = self.primes[:degree + 1]
            held_out = self.primes[degree + 1]
            points = [(p, self.subrep_count(x, n_class, m_class, p)) for p in sample]
            try:
                polynomial = interpolate_integer_polynomial(points)
            except InexactDivisionError:
                polynomial = None
            expected = self.subrep_count(x, n_class, m_class, held_out)
            if polynomial is not None and laurent_eval(polynomial, held_out) == expected:
                return polynomial, degree, held_out
            if degree >= cap:
                raise VerificationFailureError(
                    f"F^{x}_{{{m_class},{n_class}}} is not a polynomial of degree <= {degree} "
                    f"on primes {self.primes[:degree + 2]}"
                )
            logger.warning(f"degree bound {degree} too small for F^{x}_{{{m_class},{n_class}}}; escalating")
            degree = min(degree + 2, cap)

    # multiplication

    def extension_candidates(self, m_class: ExponentVector, n_class: ExponentVector,
                             prune: bool = True) -> List[ExponentVector]:
        """Classes X with dim X = dim M + dim N; pruned to those degenerating to M + N."""
        dims = tuple(a + b for a, b in zip(dimension_vector(m_class, self.n), dimension_vector(n_class, self.n)))
        candidates = rep_classes_of_dim(dims, self.n)
        if prune:
            split = m_class + n_class
            candidates = [x for x in candidates if degeneration_leq(x, split, self.n)]
        return candidates

    def basis_product(self, m_class: ExponentVector, n_class: ExponentVector, prune: bool = True) -> HallElement:
        """u[M] u[N] = q^<dim M, dim N> sum_X F^X_{M,N}(q^2) u[X]"""
        if m_class.is_zero():
            return HallElement.basis(n_class)
        if n_class.is_zero():
            return HallElement.basis(m_class)
        key = (m_class, n_class, prune)
        with self._lock:
            if key in self._products:
                return self._products[key]

        twist = euler_form(dimension_vector(m_class, self.n), dimension_vector(n_class, self.n))
        terms = {}
        for x in self.extension_candidates(m_class, n_class, prune):
            polynomial = self.hall_polynomial(m_class, n_class, x)
            if polynomial.is_zero():
                continue
            terms[x] = substitute_power(polynomial, 2).shift(twist)
        product = HallElement(terms)

        with self._lock:
            self._products.setdefault(key, product)
        return product

    def mult(self, a: HallElement, b: HallElement) -> HallElement:
        result = HallElement()
        for m_class, c in a.items():
            for n_class, d in b.items():
                result = result + self.basis_product(m_class, n_class).scale(c * d)
        return result

    def power(self, a: HallElement, k: int) -> HallElement:
        result = HallElement.unit()
        for _ in range(k):
            result = self.mult(result, a)
        return result

    # PBW basis

    def pbw_element(self, m_class: ExponentVector) -> HallElement:
        """F_[M] = q^(dim End M - dim M) u[M]"""
        exponent = hom_dim_reps(m_class, m_class) - sum(dimension_vector(m_class, self.n))
        return HallElement.basis(m_class, LaurentPoly.monomial(exponent))

    def divided_power(self, root: PositiveRoot, k: int) -> HallElement:
        return self.power(self.pbw_element(ExponentVector.unit(root)), k).divide_exact(q_factorial(k))

    def ordered_divided_power_product(self, m_class: ExponentVector, order: DirectedOrder) -> HallElement:
        result = HallElement.unit()
        for root in order.roots:
            if m_class[root]:
                result = self.mult(result, self.divided_power(root, m_class[root]))
        return result

    def divided_power_check(self, m_class: ExponentVector, order: DirectedOrder) -> bool:
        return self.pbw_element(m_class) == self.ordered_divided_power_product(m_class, order)

    def expand_in_pbw(self, element: HallElement) -> Dict[ExponentVector, LaurentPoly]:
        """Coefficients with respect to the basis F_[M]."""
        expansion = {}
        for x, c in element.items():
            exponent = sum(dimension_vector(x, self.n)) - hom_dim_reps(x, x)
            expansion[x] = c.shift(exponent)
        return expansion

    def straighten(self, k: int, l: int, order: DirectedOrder) -> StraightenReport:
        """Rewrite F_{beta_l} F_{beta_k} as q^(beta_k, beta_l) F_{beta_k} F_{beta_l} plus PBW corrections."""
        if not 1 <= k < l <= len(order.roots):
            raise ValueError(f"straightening needs 1 <= k < l <= {len(order.roots)}, got k={k}, l={l}")
        beta_k, beta_l = order.root(k), order.root(l)
        f_k = self.pbw_element(ExponentVector.unit(beta_k))
        f_l = self.pbw_element(ExponentVector.unit(beta_l))
        exponent = root_pairing(beta_k, beta_l, self.n)

        lhs = self.mult(f_l, f_k)
        leading = self.mult(f_k, f_l).scale(LaurentPoly.monomial(exponent))
        corrections = self.expand_in_pbw(lhs - leading)

        rebuilt = leading
        for m_class, c in corrections.items():
            rebuilt = rebuilt + self.ordered_divided_power_product(m_class, order).scale(c)
        between = set(order.roots[k:l - 1])
        bound = mu0(ExponentVector.unit(beta_k), self.n) + mu0(ExponentVector.unit(beta_l), self.n)

        return StraightenReport(
            k=k,
            l=l,
            beta_k=beta_k,
            beta_l=beta_l,
            exponent=exponent,
            corrections=tuple(corrections.items()),
            equality_ok=rebuilt == lhs,
            support_ok=all(set(m_class.support()) <= between for m_class in corrections),
            degree_ok=all(mu0(m_class, self.n) < bound for m_class in corrections),
        )

    def commutation_identity(self) -> IdentityReport:
        """F_23 F_12 = F_12 F_23 - (q - q^-1) F_2 F_123, as an equality of Hall algebra elements."""
        if self.n < 3:
            raise RankMismatchError("the commutation identity involves alpha_1 + alpha_2 + alpha_3; needs n >= 3")
        f = {root: self.pbw_element(ExponentVector.unit(root))
             for root in (PositiveRoot(1, 2), PositiveRoot(2, 3), PositiveRoot(2, 2), PositiveRoot(1, 3))}
        lhs = self.mult(f[PositiveRoot(2, 3)], f[PositiveRoot(1, 2)])
        q_minus = Q - LaurentPoly.monomial(-1)
        rhs = (self.mult(f[PositiveRoot(1, 2)], f[PositiveRoot(2, 3)])
               - self.mult(f[PositiveRoot(2, 2)], f[PositiveRoot(1, 3)]).scale(q_minus))
        text = f"F_23 F_12 = F_12 F_23 - ({q_minus}) F_2 F_123"
        return IdentityReport(lhs, rhs, lhs == rhs, text)

    # filtrations and admissibility

    def graded_relation_failures(self, order: DirectedOrder, w: WeightFunction) -> List[dict]:
        failures = []
        for k in range(1, len(order.roots) + 1):
            for l in range(k + 1, len(order.roots) + 1):
                report = self.straighten(k, l, order)
                bound = w(ExponentVector.unit(report.beta_k)) + w(ExponentVector.unit(report.beta_l))
                for m_class, _ in report.corrections:
                    if w(m_class) >= bound:
                        failures.append({'beta_k': report.beta_k.key, 'beta_l': report.beta_l.key,
                                         'term': m_class.to_json(), 'degree': w(m_class), 'bound': bound})
        return failures

    def scan_weight_function(self, w: WeightFunction, max_total_dim: int, p: int = 2) -> ScanReport:
        """
        Check w(X) <= w(M) + w(N) on every short exact sequence 0 -> N -> X -> M -> 0
        with total dim X <= max_total_dim, strictly for non-split X.
        """
        if max_total_dim > self.max_total_dim:
            raise BudgetExceededError(f"scan dimension {max_total_dim} exceeds budget {self.max_total_dim}")
        weak, strict, normalized = True, True, True
        checked = 0
        witnesses = []
        for dims in itertools.product(range(max_total_dim + 1), repeat=self.n):
            if not 0 < sum(dims) <= max_total_dim:
                continue
            for x in rep_classes_of_dim(dims, self.n):
                if w(x) == 0:
                    normalized = False
                for (n_class, m_class), count in self.subrep_census(x, p).items():
                    if not count:
                        continue
                    checked += 1
                    total = w(m_class) + w(n_class)
                    if w(x) > total:
                        weak = False
                        witnesses.append({'kind': 'weak', 'X': x.to_json(), 'M': m_class.to_json(),
                                          'N': n_class.to_json()})
                    elif w(x) == total and x != m_class + n_class:
                        strict = False
                        if len(witnesses) < 10:
                            witnesses.append({'kind': 'strict', 'X': x.to_json(), 'M': m_class.to_json(),
                                              'N': n_class.to_json()})
        logger.info(f"scanned {checked} sequences for {w}: weak={weak}, strict={strict}, normalized={normalized}")
        return ScanReport(weak, weak and strict, normalized, checked, tuple(witnesses))


_algebras: Dict[tuple, HallAlgebra] = {}
_registry_lock = threading.Lock()


def get_hall_algebra(n: int) -> HallAlgebra:
    """Shared HallAlgebra per rank, backed by the persistent store when HALL_DATABASE_URL is set."""
    key = (n, PRIMES, MAX_TOTAL_DIM, MAX_DEGREE_BOUND)
    with _registry_lock:
        if key not in _algebras:
            store = None
            url = os.getenv('HALL_DATABASE_URL')
            if url:
                from hall_store import init_store
                store = init_store(url)
            _algebras[key] = HallAlgebra(n, store=store)
        return _algebras[key]


def subrep_count(x: ExponentVector, n_class: ExponentVector, m_class: ExponentVector, p: int, n: int) -> int:
    return get_hall_algebra(n).subrep_count(x, n_class, m_class, p)


def hall_polynomial(m_class: ExponentVector, n_class: ExponentVector, x: ExponentVector, n: int) -> LaurentPoly:
    return get_hall_algebra(n).hall_polynomial(m_class, n_class, x)


def hall_mult(a: HallElement, b: HallElement, n: int) -> HallElement:
    return get_hall_algebra(n).mult(a, b)


def pbw_element(m_class: ExponentVector, n: int) -> HallElement:
    return get_hall_algebra(n).pbw_element(m_class)


def divided_power_check(m_class: ExponentVector, order: DirectedOrder) -> bool:
    return get_hall_algebra(order.n).divided_power_check(m_class, order)


def straighten_check(k: int, l: int, order: DirectedOrder) -> StraightenReport:
    return get_hall_algebra(order.n).straighten(k, l, order)


def straighten_pair(first: PositiveRoot, second: PositiveRoot, order: DirectedOrder) -> StraightenReport:
    """Straighten two roots given in either order."""
    k, l = sorted((order.position(first), order.position(second)))
    return straighten_check(k, l, order)


def commutation_identity_check(n: int = 3) -> IdentityReport:
    return get_hall_algebra(n).commutation_identity()


def graded_relation_check(order: DirectedOrder, w: WeightFunction, require_strong: bool = True) -> bool:
    """
    True iff every straightening correction has w-degree strictly below the
    degree of the leading product, i.e. gr is the q-commutative algebra.
    """
    if w.n != order.n:
        raise RankMismatchError(f"weight function has rank {w.n}, order has rank {order.n}")
    if require_strong and classify_weight_function(w) != ADMISSIBLE_STRONG:
        raise NotStronglyAdmissibleError(f"{w} is not strongly admissible")
    return not get_hall_algebra(order.n).graded_relation_failures(order, w)


def weak_admissibility_scan(w: WeightFunction, max_total_dim: int, strict: bool = False) -> bool:
    report = get_hall_algebra(w.n).scan_weight_function(w, max_total_dim)
    return report.strict if strict else report.weak
