"""
Type A_n root and weight combinatorics.

Weights are tuples of fundamental-weight coordinates, root vectors are tuples
of simple-root coordinates. Conversions between the two are explicit.
"""

import itertools
import logging
import os
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

MAX_RANK = int(os.getenv('PBW_MAX_RANK', '8'))

Weight = Tuple[int, ...]
RootVector = Tuple[int, ...]


class RankError(ValueError):
    """Rank outside 1..PBW_MAX_RANK"""


class WeightError(ValueError):
    """Malformed or non-dominant weight"""


class RankMismatchError(ValueError):
    """Objects of different ranks were combined"""


class PositiveRoot(NamedTuple):
    """alpha_{i,j} = alpha_i + ... + alpha_j"""
    i: int
    j: int

    @property
    def key(self) -> str:
        return f"{self.i},{self.j}"

    @property
    def is_simple(self) -> bool:
        return self.i == self.j

    def __str__(self):
        return f"a{self.i}{self.j}" if self.j < 10 else f"a({self.i},{self.j})"


def check_rank(n: int) -> int:
    if not isinstance(n, int) or n < 1 or n > MAX_RANK:
        raise RankError(f"rank must be an integer in 1..{MAX_RANK}, got {n!r}")
    return n


def check_weight(weight: Sequence[int], n: int = None) -> Weight:
    weight = tuple(weight)
    if not weight:
        raise WeightError("a weight needs at least one coordinate")
    if any(not isinstance(m, int) or m < 0 for m in weight):
        raise WeightError(f"weight {weight} is not dominant integral")
    if n is not None and len(weight) != n:
        raise RankMismatchError(f"weight {weight} has {len(weight)} coordinates, rank is {n}")
    check_rank(len(weight))
    return weight


def parse_root_key(key: str) -> PositiveRoot:
    """Parse the ``"i,j"`` encoding used in JSON objects."""
    try:
        i, j = (int(part) for part in key.split(','))
    except ValueError:
        raise WeightError(f"cannot parse positive root key '{key}'")
    if i < 1 or i > j:
        raise WeightError(f"'{key}' is not a positive root (need 1 <= i <= j)")
    return PositiveRoot(i, j)


@lru_cache(maxsize=None)
def positive_roots(n: int) -> Tuple[PositiveRoot, ...]:
    """All n(n+1)/2 positive roots, lexicographic by (i, j)."""
    check_rank(n)
    return tuple(PositiveRoot(i, j) for i in range(1, n + 1) for j in range(i, n + 1))


def check_root(alpha: PositiveRoot, n: int) -> PositiveRoot:
    if not (1 <= alpha.i <= alpha.j <= n):
        raise RankMismatchError(f"root {alpha.key} does not belong to rank {n}")
    return alpha


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> np.ndarray:
    check_rank(n)
    matrix = 2 * np.eye(n, dtype=np.int64)
    for t in range(n - 1):
        matrix[t, t + 1] = matrix[t + 1, t] = -1
    matrix.setflags(write=False)
    return matrix


def root_to_vector(alpha: PositiveRoot, n: int) -> RootVector:
    check_root(alpha, n)
    return tuple(1 if alpha.i <= t <= alpha.j else 0 for t in range(1, n + 1))


def height(vector: Sequence[int]) -> int:
    return sum(vector)


def root_pairing(alpha: PositiveRoot, beta: PositiveRoot, n: int = None) -> int:
    """
    Symmetrized Cartan form (alpha, beta).

    Without an explicit rank the smallest rank containing both roots is used;
    the value does not depend on the ambient rank.
    """
    if n is None:
        n = max(alpha.j, beta.j)
    else:
        check_root(alpha, n)
        check_root(beta, n)
    a = np.array(root_to_vector(alpha, n), dtype=np.int64)
    b = np.array(root_to_vector(beta, n), dtype=np.int64)
    return int(a @ cartan_matrix(n) @ b)


def fundamental_to_root(weight: Sequence[int]) -> Tuple[Fraction, ...]:
    """
    Express sum m_i varpi_i in simple roots using the inverse Cartan matrix,
    (C^-1)_{ij} = min(i, j) (n + 1 - max(i, j)) / (n + 1).
    """
    n = len(weight)
    coords = []
    for j in range(1, n + 1):
        total = Fraction(0)
        for i, m in enumerate(weight, start=1):
            total += Fraction(m * min(i, j) * (n + 1 - max(i, j)), n + 1)
        coords.append(total)
    return tuple(coords)


def weyl_dim(weight: Sequence[int]) -> int:
    """
    Weyl dimension formula in type A: the product over i <= j of
    (m_i + ... + m_j + j - i + 1) / (j - i + 1).
    """
    weight = check_weight(weight)
    n = len(weight)
    result = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            result *= Fraction(sum(weight[i - 1:j]) + (j - i + 1), j - i + 1)
    if result.denominator != 1:
        raise ArithmeticError(f"Weyl dimension of {weight} is not integral: {result}")
    return result.numerator


def dual_weight(weight: Sequence[int]) -> Weight:
    """-w0(lambda): coordinates reversed."""
    return tuple(reversed(tuple(weight)))


def weight_minus_roots_bound(weight: Sequence[int]) -> RootVector:
    """lambda - w0(lambda) in simple-root coordinates."""
    weight = check_weight(weight)
    summed = tuple(a + b for a, b in zip(weight, dual_weight(weight)))
    coords = fundamental_to_root(summed)
    if any(c.denominator != 1 for c in coords):
        raise ArithmeticError(f"lambda - w0(lambda) not in the root lattice for {weight}")
    return tuple(c.numerator for c in coords)


def dominant_weights(n: int, max_height: int) -> List[Weight]:
    """All dominant weights with m_1 + ... + m_n <= max_height, by height then lexicographically."""
    check_rank(n)
    weights = [w for w in itertools.product(range(max_height + 1), repeat=n) if sum(w) <= max_height]
    return sorted(weights, key=lambda w: (sum(w), tuple(-m for m in w)))


def fundamental_weight(k: int, n: int) -> Weight:
    if not 1 <= k <= n:
        raise WeightError(f"fundamental weight index {k} out of range for rank {n}")
    return tuple(1 if t == k else 0 for t in range(1, n + 1))


def parse_weight(text: str, n: int = None) -> Weight:
    """Parse ``1,0,2`` into a weight."""
    try:
        coords = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise WeightError(f"cannot parse weight '{text}'; expected comma-separated integers")
    return check_weight(coords, n)


def format_weight(weight: Sequence[int]) -> str:
    return ','.join(str(m) for m in weight)
