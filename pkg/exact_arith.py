"""
Exact scalars: rationals and integer Laurent polynomials in q.

Every Hall algebra structure constant and every module coefficient produced
by this package is built from the helpers below; nothing is ever a float.
"""

import logging
import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Fraction


class ZeroEvaluationPointError(ValueError):
    """Raised when a Laurent polynomial is evaluated at q = 0"""


class InexactDivisionError(ArithmeticError):
    """Raised when a Laurent polynomial division leaves a remainder"""


class LaurentPoly:
    """
    Integer Laurent polynomial in q, stored sparsely as {exponent: coefficient}.

    Zero coefficients are never stored, so the empty map is 0 and two equal
    polynomials always have equal maps. Instances are immutable.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Union[Dict[int, int], Iterable[Tuple[int, int]], None] = None):
        if terms is None:
            terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        collected: Dict[int, int] = {}
        for exponent, coeff in items:
            collected[int(exponent)] = collected.get(int(exponent), 0) + int(coeff)
        self._terms = tuple(sorted((e, c) for e, c in collected.items() if c != 0))
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> 'LaurentPoly':
        return cls({0: c})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> 'LaurentPoly':
        return cls({exponent: coeff})

    @property
    def terms(self) -> Dict[int, int]:
        return dict(self._terms)

    def items(self) -> Tuple[Tuple[int, int], ...]:
        return self._terms

    def coefficient(self, exponent: int) -> int:
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no valuation")
        return self._terms[0][0]

    def __add__(self, other):
        other = _coerce(other)
        return LaurentPoly(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        product: Dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(product)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are only defined for monomials; use shift()")
        result = LaurentPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> 'LaurentPoly':
        """Multiply by q^k."""
        return LaurentPoly((e + k, c) for e, c in self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return render_laurent(self)


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    raise TypeError(f"cannot treat {value!r} as a Laurent polynomial")


Q = LaurentPoly.monomial(1)
ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def laurent_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a - b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def laurent_pow(a: LaurentPoly, k: int) -> LaurentPoly:
    return a ** k


def laurent_eval(a: LaurentPoly, x) -> Fraction:
    """
    Evaluate a Laurent polynomial exactly at a nonzero rational point.

    Args:
        a: the polynomial
        x: evaluation point (int or Fraction)

    Returns:
        Fraction value
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroEvaluationPointError("cannot evaluate a Laurent polynomial at 0")
    return sum((Fraction(c) * x ** e for e, c in a.items()), Fraction(0))


def laurent_divide_exact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """
    Exact division in Z[q, q^-1].

    Long division from the top degree down; any remainder (or a non-integral
    quotient coefficient) raises InexactDivisionError.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if a.is_zero():
        return ZERO

    top_b, lead_b = b.items()[-1]
    low_bound = a.min_exponent() - b.min_exponent()
    remainder = a
    quotient: Dict[int, int] = {}
    while not remainder.is_zero():
        top_r, lead_r = remainder.items()[-1]
        exponent = top_r - top_b
        if exponent < low_bound or lead_r % lead_b != 0:
            raise InexactDivisionError(f"{a} is not divisible by {b}")
        coeff = lead_r // lead_b
        quotient[exponent] = quotient.get(exponent, 0) + coeff
        remainder = remainder - b.shift(exponent) * coeff
    return LaurentPoly(quotient)


def substitute_power(a: LaurentPoly, k: int) -> LaurentPoly:
    """Substitute the variable by q^k, e.g. u -> q^2 for Hall polynomials."""
    return LaurentPoly((e * k, c) for e, c in a.items())


def bar_involution(a: LaurentPoly) -> LaurentPoly:
    """q -> q^-1"""
    return substitute_power(a, -1)


@lru_cache(maxsize=None)
def q_integer(m: int) -> LaurentPoly:
    """Symmetric quantum integer [m]_q = q^(m-1) + q^(m-3) + ... + q^(1-m)."""
    if m < 0:
        raise ValueError(f"quantum integers are defined for m >= 0, got {m}")
    return LaurentPoly({m - 1 - 2 * t: 1 for t in range(m)})


@lru_cache(maxsize=None)
def q_factorial(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError(f"quantum factorial needs m >= 0, got {m}")
    result = ONE
    for t in range(1, m + 1):
        result = result * q_integer(t)
    return result


@lru_cache(maxsize=None)
def q_binomial(m: int, k: int) -> LaurentPoly:
    """
    Symmetric Gaussian binomial via the division-free recurrence

        [m, k] = q^k [m-1, k] + q^(k-m) [m-1, k-1].
    """
    if k < 0 or k > m:
        raise ValueError(f"q_binomial needs 0 <= k <= m, got m={m}, k={k}")
    if k == 0 or k == m:
        return ONE
    return q_binomial(m - 1, k).shift(k) + q_binomial(m - 1, k - 1).shift(k - m)


def interpolate_integer_polynomial(points: List[Tuple[int, int]]) -> LaurentPoly:
    """
    Exact Lagrange interpolation through integer points.

    Returns the unique polynomial of degree < len(points) as a LaurentPoly with
    nonnegative exponents. Raises InexactDivisionError when a coefficient is
    not an integer, which for Hall counts means the degree bound was too small.
    """
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")

    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        # basis polynomial prod_{j != i} (u - x_j) / (x_i - x_j), low degree first
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            shifted = [Fraction(0)] + basis
            for t in range(len(basis)):
                shifted[t] -= xj * basis[t]
            basis = shifted
            denom *= Fraction(xi) - xj
        scale = Fraction(yi) / denom
        for t, b in enumerate(basis):
            coeffs[t] += scale * b

    result = {}
    for t, c in enumerate(coeffs):
        if c.denominator != 1:
            raise InexactDivisionError(f"non-integral interpolation coefficient {c} at u^{t}")
        if c:
            result[t] = c.numerator
    return LaurentPoly(result)


def render_laurent(a: LaurentPoly, var: str = 'q') -> str:
    """
    Canonical text form: decreasing exponents, e.g. ``q^2 - q^-2`` or
    ``q^3 + 2*q + 2*q^-1 + q^-3``.
    """
    if a.is_zero():
        return '0'
    pieces = []
    for exponent, coeff in reversed(a.items()):
        sign = '-' if coeff < 0 else '+'
        magnitude = abs(coeff)
        if exponent == 0:
            body = str(magnitude)
        else:
            power = var if exponent == 1 else f"{var}^{exponent}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        pieces.append((sign, body))

    first_sign, first_body = pieces[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r'^(\d*)\*?(?:([a-z])(?:\^(-?\d+))?)?$')


def parse_laurent(text: str, var: str = 'q') -> LaurentPoly:
    """Inverse of render_laurent."""
    text = text.strip()
    if text == '0':
        return ZERO
    tokens = text.replace(' - ', ' + -').split(' + ')
    terms: Dict[int, int] = {}
    for token in tokens:
        token = token.strip()
        sign = 1
        if token.startswith('-'):
            sign, token = -1, token[1:]
        match = _TERM.match(token)
        if not match or (match.group(2) and match.group(2) != var):
            raise ValueError(f"cannot parse Laurent term '{token}'")
        digits, name, power = match.groups()
        if name is None:
            exponent, coeff = 0, int(digits)
        else:
            exponent = int(power) if power is not None else 1
            coeff = int(digits) if digits else 1
        terms[exponent] = terms.get(exponent, 0) + sign * coeff
    return LaurentPoly(terms)
