"""
Representations of the equioriented quiver 1 -> 2 -> ... -> n.

Indecomposables are the interval modules M_{i,j}, identified with the
positive roots alpha_{i,j}; representation classes are ExponentVectors.
"""

import json
import logging
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from fflv_polytope import ExponentVector
from root_system import PositiveRoot, RankMismatchError, check_rank, parse_root_key, positive_roots

logger = logging.getLogger(__name__)

Indecomposable = PositiveRoot
RepClass = ExponentVector
DimVector = Tuple[int, ...]

ADMISSIBLE_STRONG = 'admissible-strong'
ADMISSIBLE = 'admissible'
NOT_ADMISSIBLE = 'not-admissible'


class ProjectiveInputError(ValueError):
    """AR sequence requested for a projective indecomposable"""


class DimensionMismatchError(ValueError):
    """Representation classes with different dimension vectors were compared"""


class SingularSystemError(RuntimeError):
    """The Hom system could not be inverted; never expected for Dynkin quivers"""


class ARSequence(NamedTuple):
    left: Indecomposable
    middle: RepClass
    right: Indecomposable


def hom_dim(source: Indecomposable, target: Indecomposable) -> int:
    """dim Hom(M_{r,s}, M_{i,j}) is 1 iff i <= r <= j <= s."""
    r, s = source
    i, j = target
    return 1 if i <= r <= j <= s else 0


def hom_dim_reps(m: RepClass, other: RepClass) -> int:
    return sum(a * b * hom_dim(u, v) for u, a in m.items() for v, b in other.items())


def dimension_vector(m: RepClass, n: int) -> DimVector:
    if not m.fits_rank(n):
        raise RankMismatchError(f"{m} does not fit rank {n}")
    dims = [0] * n
    for root, mult in m.items():
        for t in range(root.i, root.j + 1):
            dims[t - 1] += mult
    return tuple(dims)


def euler_form(d: Sequence[int], e: Sequence[int]) -> int:
    """<d, e> = sum_i d_i e_i - sum_{i -> i+1} d_i e_{i+1}"""
    if len(d) != len(e):
        raise RankMismatchError(f"dimension vectors {tuple(d)} and {tuple(e)} have different ranks")
    diagonal = sum(a * b for a, b in zip(d, e))
    arrows = sum(d[t] * e[t + 1] for t in range(len(d) - 1))
    return diagonal - arrows


def ext_dim_reps(m: RepClass, other: RepClass, n: int) -> int:
    return hom_dim_reps(m, other) - euler_form(dimension_vector(m, n), dimension_vector(other, n))


def mu0(m: RepClass, n: int) -> int:
    """dim Hom(V0, M) where V0 is the sum of one copy of every indecomposable."""
    return sum(hom_dim_reps(ExponentVector.unit(root), m) for root in positive_roots(n))


def is_projective(u: Indecomposable, n: int) -> bool:
    return u.j == n


def is_injective(u: Indecomposable, n: int) -> bool:
    return u.i == 1


def ar_translate(u: Indecomposable, n: int) -> Optional[Indecomposable]:
    if is_projective(u, n):
        return None
    return PositiveRoot(u.i + 1, u.j + 1)


def ar_cotranslate(u: Indecomposable, n: int) -> Optional[Indecomposable]:
    if is_injective(u, n):
        return None
    return PositiveRoot(u.i - 1, u.j - 1)


def ar_sequence(u: Indecomposable, n: int) -> ARSequence:
    """0 -> tau U -> M_{i+1,j} + M_{i,j+1} -> U -> 0 for U = M_{i,j}."""
    check_rank(n)
    if is_projective(u, n):
        raise ProjectiveInputError(f"M_{u.key} is projective; no AR sequence ends in it")
    middle = {}
    for root in (PositiveRoot(u.i + 1, u.j), PositiveRoot(u.i, u.j + 1)):
        if root.i <= root.j:
            middle[root] = 1
    return ARSequence(ar_translate(u, n), ExponentVector(middle), u)


@lru_cache(maxsize=None)
def directed_roots(n: int) -> Tuple[PositiveRoot, ...]:
    """
    Topological sort of "Hom(U, V) != 0 puts U before V", smallest available
    root (lexicographically) first.
    """
    roots = positive_roots(n)
    pending = list(roots)
    placed: List[PositiveRoot] = []
    while pending:
        ready = [v for v in pending
                 if all(u == v or u in placed or not hom_dim(u, v) for u in roots)]
        if not ready:
            raise SingularSystemError(f"Hom relation on rank {n} has a cycle")
        choice = min(ready)
        placed.append(choice)
        pending.remove(choice)
    return tuple(placed)


@lru_cache(maxsize=None)
def hom_matrix(n: int) -> np.ndarray:
    """H[a, b] = dim Hom(root_a, root_b) in the canonical root order."""
    roots = positive_roots(n)
    matrix = np.array([[hom_dim(u, v) for v in roots] for u in roots], dtype=np.int64)
    matrix.setflags(write=False)
    return matrix


def hom_table_frame(n: int) -> pd.DataFrame:
    keys = [root.key for root in positive_roots(n)]
    frame = pd.DataFrame(hom_matrix(n), index=keys, columns=keys)
    frame.index.name = 'source'
    return frame


def rep_classes_of_dim(dims: Sequence[int], n: int) -> List[RepClass]:
    """Every isomorphism class with the given dimension vector."""
    dims = tuple(dims)
    if len(dims) != n:
        raise RankMismatchError(f"dimension vector {dims} does not have {n} entries")
    roots = positive_roots(n)
    found: List[RepClass] = []
    mults = [0] * len(roots)

    def descend(idx: int, remaining: List[int]):
        if idx == len(roots):
            if not any(remaining):
                found.append(ExponentVector.from_sequence(mults, n))
            return
        root = roots[idx]
        limit = min(remaining[root.i - 1:root.j])
        for k in range(limit + 1):
            mults[idx] = k
            reduced = list(remaining)
            for t in range(root.i - 1, root.j):
                reduced[t] -= k
            descend(idx + 1, reduced)
        mults[idx] = 0

    descend(0, list(dims))
    return sorted(found, key=lambda m: m.as_sequence(n))


class WeightFunction:
    """Additive function on representations, fixed by its values on indecomposables."""

    def __init__(self, values: Dict[PositiveRoot, int], n: int, name: str = 'custom'):
        check_rank(n)
        missing = [root.key for root in positive_roots(n) if root not in values]
        if missing:
            raise ValueError(f"weight function is missing values for {', '.join(missing)}")
        self.n = n
        self.name = name
        self.values = {root: int(values[root]) for root in positive_roots(n)}

    @classmethod
    def mu0(cls, n: int) -> 'WeightFunction':
        return cls({root: mu0(ExponentVector.unit(root), n) for root in positive_roots(n)}, n, 'mu0')

    @classmethod
    def constant(cls, n: int, value: int = 1) -> 'WeightFunction':
        return cls({root: value for root in positive_roots(n)}, n, f'constant-{value}')

    @classmethod
    def hom_from(cls, v: RepClass, n: int) -> 'WeightFunction':
        return cls({root: hom_dim_reps(v, ExponentVector.unit(root)) for root in positive_roots(n)},
                   n, f'hom({v})')

    @classmethod
    def from_json(cls, data: Dict[str, int], n: int) -> 'WeightFunction':
        if not isinstance(data, dict):
            raise ValueError(f"weight function must be an object {{\"i,j\": value}}, got {type(data).__name__}")
        values = {}
        for key, value in data.items():
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"weight function value at {key} must be an integer, got {value!r}")
            root = parse_root_key(key)
            if root.j > n:
                raise RankMismatchError(f"root {key} does not belong to rank {n}")
            values[root] = int(value)
        return cls(values, n)

    @classmethod
    def from_file(cls, path: str, n: int) -> 'WeightFunction':
        with open(path, 'r', encoding='utf-8') as handle:
            return cls.from_json(json.load(handle), n)

    def to_json(self) -> Dict[str, int]:
        return {root.key: value for root, value in self.values.items()}

    def __call__(self, m: RepClass) -> int:
        return sum(mult * self.values[root] for root, mult in m.items())

    def __repr__(self):
        return f"WeightFunction({self.name}, n={self.n})"


def decompose_weight_function(w: WeightFunction) -> Dict[PositiveRoot, int]:
    """
    Coefficients a with w(M) = sum_V a_V dim Hom(V, M).

    Back-substitution along the directed order, where the Hom matrix is
    unitriangular.
    """
    order = directed_roots(w.n)
    coefficients: Dict[PositiveRoot, int] = {}
    for pos, target in enumerate(order):
        earlier = sum(coefficients[v] * hom_dim(v, target) for v in order[:pos])
        coefficients[target] = w.values[target] - earlier

    recomposed = compose_weight_function(coefficients, w.n)
    if recomposed.values != w.values:
        raise SingularSystemError(f"back-substitution did not invert the Hom system for {w}")
    return {root: coefficients[root] for root in positive_roots(w.n)}


def compose_weight_function(coefficients: Dict[PositiveRoot, int], n: int) -> WeightFunction:
    """sum_V a_V hom(V, -)"""
    values = {
        target: sum(a * hom_dim(v, target) for v, a in coefficients.items())
        for target in positive_roots(n)
    }
    return WeightFunction(values, n, 'composed')


def classify_coefficients(coefficients: Dict[PositiveRoot, int], n: int) -> str:
    if any(a < 0 for a in coefficients.values()):
        return NOT_ADMISSIBLE
    required = [v for v in positive_roots(n) if not is_projective(v, n)]
    required.append(PositiveRoot(n, n))
    if all(coefficients[v] >= 1 for v in required):
        return ADMISSIBLE_STRONG
    return ADMISSIBLE


def classify_weight_function(w: WeightFunction) -> str:
    label = classify_coefficients(decompose_weight_function(w), w.n)
    logger.info(f"{w} classified as {label}")
    return label


def degeneration_leq(m: RepClass, other: RepClass, n: int) -> bool:
    """M <= N iff dim Hom(V, M) <= dim Hom(V, N) for every indecomposable V."""
    if dimension_vector(m, n) != dimension_vector(other, n):
        raise DimensionMismatchError(f"{m} and {other} have different dimension vectors")
    for v in positive_roots(n):
        indecomposable = ExponentVector.unit(v)
        if hom_dim_reps(indecomposable, m) > hom_dim_reps(indecomposable, other):
            return False
    return True
