"""
Dyck paths, the polytope P(lambda) and its lattice points S(lambda).

ExponentVector is the shared currency of the package: a lattice point of
P(lambda), the exponent of a PBW monomial, and the isomorphism class of a
quiver representation are all the same object.
"""

import logging
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from root_system import (
    PositiveRoot,
    Weight,
    check_rank,
    check_weight,
    parse_root_key,
    positive_roots,
    RankMismatchError,
)

logger = logging.getLogger(__name__)


class DyckPathError(ValueError):
    """Invalid Dyck path or endpoints"""


class ExponentVector:
    """
    Finitely supported map PositiveRoot -> nonnegative integer.

    Immutable and hashable; zero entries are dropped on construction.
    """

    __slots__ = ('_items', '_hash')

    def __init__(self, mapping: Dict[PositiveRoot, int] = None):
        mapping = mapping or {}
        items = []
        for root, mult in mapping.items():
            root = PositiveRoot(*root)
            if mult < 0:
                raise ValueError(f"negative multiplicity {mult} at {root.key}")
            if root.i < 1 or root.i > root.j:
                raise ValueError(f"{root} is not a positive root")
            if mult:
                items.append((root, int(mult)))
        self._items = tuple(sorted(items))
        self._hash = hash(self._items)

    @classmethod
    def zero(cls) -> 'ExponentVector':
        return cls()

    @classmethod
    def unit(cls, root: PositiveRoot, mult: int = 1) -> 'ExponentVector':
        return cls({root: mult})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[PositiveRoot, int]]) -> 'ExponentVector':
        collected: Dict[PositiveRoot, int] = {}
        for root, mult in pairs:
            collected[root] = collected.get(root, 0) + mult
        return cls(collected)

    @classmethod
    def from_sequence(cls, mults: Sequence[int], n: int) -> 'ExponentVector':
        """Build from multiplicities listed in the canonical root order."""
        roots = positive_roots(n)
        if len(mults) != len(roots):
            raise RankMismatchError(f"expected {len(roots)} multiplicities for rank {n}, got {len(mults)}")
        return cls(dict(zip(roots, mults)))

    @classmethod
    def from_json(cls, data: Dict[str, int]) -> 'ExponentVector':
        if not isinstance(data, dict):
            raise ValueError(f"expected an object of root multiplicities, got {type(data).__name__}")
        mults = {}
        for key, value in data.items():
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"multiplicity at {key} must be an integer, got {value!r}")
            mults[parse_root_key(key)] = value
        return cls(mults)

    def to_json(self) -> Dict[str, int]:
        return {root.key: mult for root, mult in self._items}

    def __getitem__(self, root) -> int:
        root = PositiveRoot(*root)
        for r, mult in self._items:
            if r == root:
                return mult
        return 0

    def items(self) -> Tuple[Tuple[PositiveRoot, int], ...]:
        return self._items

    def support(self) -> Tuple[PositiveRoot, ...]:
        return tuple(root for root, _ in self._items)

    def total(self) -> int:
        return sum(mult for _, mult in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def max_index(self) -> int:
        return max((root.j for root, _ in self._items), default=0)

    def fits_rank(self, n: int) -> bool:
        return self.max_index() <= n

    def as_sequence(self, n: int) -> Tuple[int, ...]:
        if not self.fits_rank(n):
            raise RankMismatchError(f"{self} does not fit rank {n}")
        return tuple(self[root] for root in positive_roots(n))

    def divides(self, other: 'ExponentVector') -> bool:
        return all(other[root] >= mult for root, mult in self._items)

    def __add__(self, other: 'ExponentVector') -> 'ExponentVector':
        return ExponentVector.from_pairs(self._items + other._items)

    def __sub__(self, other: 'ExponentVector') -> 'ExponentVector':
        return ExponentVector.from_pairs(self._items + tuple((r, -m) for r, m in other._items))

    def scale(self, k: int) -> 'ExponentVector':
        return ExponentVector({root: k * mult for root, mult in self._items})

    def __eq__(self, other):
        if not isinstance(other, ExponentVector):
            return NotImplemented
        return self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other: 'ExponentVector'):
        return self._items < other._items

    def __repr__(self):
        return f"ExponentVector({self})"

    def __str__(self):
        if not self._items:
            return '0'
        parts = []
        for root, mult in self._items:
            name = f"e{root.i}{root.j}" if root.j < 10 else f"e({root.i},{root.j})"
            parts.append(name if mult == 1 else f"{mult}*{name}")
        return ' + '.join(parts)


class DyckPath(NamedTuple):
    roots: Tuple[PositiveRoot, ...]

    @property
    def start(self) -> int:
        return self.roots[0].i

    @property
    def end(self) -> int:
        return self.roots[-1].j

    def to_json(self) -> List[List[int]]:
        return [[root.i, root.j] for root in self.roots]


class PolytopeDescription(NamedTuple):
    rank: int
    weight: Weight
    inequalities: Tuple[Tuple[DyckPath, int], ...]

    def to_json(self) -> List[dict]:
        return [{'path': path.to_json(), 'bound': bound} for path, bound in self.inequalities]


def validate_dyck_path(roots: Sequence[PositiveRoot]) -> DyckPath:
    roots = tuple(PositiveRoot(*r) for r in roots)
    if not roots:
        raise DyckPathError("a Dyck path needs at least one root")
    if not roots[0].is_simple or not roots[-1].is_simple:
        raise DyckPathError("Dyck paths start and end at simple roots")
    for prev, cur in zip(roots, roots[1:]):
        if cur not in (PositiveRoot(prev.i, prev.j + 1), PositiveRoot(prev.i + 1, prev.j)):
            raise DyckPathError(f"illegal step {prev.key} -> {cur.key}")
    if any(r.i > r.j for r in roots):
        raise DyckPathError("every entry of a Dyck path must satisfy i <= j")
    return DyckPath(roots)


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


@lru_cache(maxsize=None)
def dyck_paths(i: int, j: int, n: int) -> Tuple[DyckPath, ...]:
    """All Dyck paths from alpha_i to alpha_j, walking the (t, r) grid with t <= r."""
    check_rank(n)
    if i > j:
        raise DyckPathError(f"no Dyck paths from {i} to {j}: need i <= j")
    if i < 1 or j > n:
        raise DyckPathError(f"endpoints {i}, {j} outside rank {n}")

    paths: List[DyckPath] = []

    def walk(t: int, r: int, trail: List[PositiveRoot]):
        trail.append(PositiveRoot(t, r))
        if t == j and r == j:
            paths.append(DyckPath(tuple(trail)))
        else:
            if r < j:
                walk(t, r + 1, trail)
            if t < r:
                walk(t + 1, r, trail)
        trail.pop()

    walk(i, i, [])
    return tuple(paths)


@lru_cache(maxsize=None)
def polytope(weight: Weight) -> PolytopeDescription:
    weight = check_weight(weight)
    n = len(weight)
    inequalities = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            bound = sum(weight[i - 1:j])
            for path in dyck_paths(i, j, n):
                inequalities.append((path, bound))
    return PolytopeDescription(n, weight, tuple(inequalities))


def in_polytope(s: ExponentVector, weight: Weight) -> bool:
    description = polytope(tuple(weight))
    if not s.fits_rank(description.rank):
        return False
    return all(sum(s[root] for root in path.roots) <= bound for path, bound in description.inequalities)


@lru_cache(maxsize=None)
def lattice_points(weight: Weight) -> Tuple[ExponentVector, ...]:
    """
    S(lambda) by depth-first search over the canonical root order.

    Each coordinate is capped by its singleton-path bound and every partial
    assignment is checked against all inequalities that touch it.
    """
    description = polytope(tuple(weight))
    n = description.rank
    roots = positive_roots(n)
    position = {root: idx for idx, root in enumerate(roots)}

    bounds = [bound for _, bound in description.inequalities]
    touching: List[List[int]] = [[] for _ in roots]
    for k, (path, _) in enumerate(description.inequalities):
        for root in path.roots:
            touching[position[root]].append(k)
    caps = [sum(weight[root.i - 1:root.j]) for root in roots]

    sums = [0] * len(bounds)
    current = [0] * len(roots)
    points: List[ExponentVector] = []

    def descend(idx: int):
        if idx == len(roots):
            points.append(ExponentVector.from_sequence(current, n))
            return
        for value in range(caps[idx] + 1):
            if value:
                if any(sums[k] + 1 > bounds[k] for k in touching[idx]):
                    break
                for k in touching[idx]:
                    sums[k] += 1
            current[idx] = value
            descend(idx + 1)
        for k in touching[idx]:
            sums[k] -= current[idx]
        current[idx] = 0

    descend(0)
    logger.info(f"S({weight}) has {len(points)} points")
    return tuple(points)


def sum_set(left: Iterable[ExponentVector], right: Iterable[ExponentVector]) -> frozenset:
    right = list(right)
    return frozenset(s + t for s in left for t in right)


def minkowski_check(weight: Weight, other: Weight) -> bool:
    if len(weight) != len(other):
        raise RankMismatchError("minkowski_check needs weights of the same rank")
    total = tuple(a + b for a, b in zip(weight, other))
    return sum_set(lattice_points(tuple(weight)), lattice_points(tuple(other))) == frozenset(lattice_points(total))


def root_ff_degree(root: PositiveRoot, n: int) -> int:
    return (root.j - root.i + 1) * (n - root.j + 1)


def ff_degree(s: ExponentVector, n: int) -> int:
    if not s.fits_rank(n):
        raise RankMismatchError(f"{s} does not fit rank {n}")
    return sum(mult * root_ff_degree(root, n) for root, mult in s.items())


def length_degree(s: ExponentVector) -> int:
    return s.total()


def generator_sort_key(s: ExponentVector, n: int):
    return (s.total(), tuple(-m for m in s.as_sequence(n)))


def minimal_non_members(weight: Weight) -> List[ExponentVector]:
    """
    Minimal exponent vectors (under divisibility) outside S(lambda).

    S(lambda) is closed under taking divisors, so every minimal outsider is
    t + e_alpha for some t in S(lambda) and all of its divisors lie inside.
    """
    weight = check_weight(weight)
    n = len(weight)
    points = frozenset(lattice_points(weight))
    found = set()
    for t in points:
        for alpha in positive_roots(n):
            candidate = t + ExponentVector.unit(alpha)
            if candidate in points or candidate in found:
                continue
            if all(candidate - ExponentVector.unit(beta) in points for beta in candidate.support()):
                found.add(candidate)
    return sorted(found, key=lambda s: generator_sort_key(s, n))
