"""Exact integer polynomials, truncated power series and rational sums.

Everything here is exact. Polynomials are sparse (exponent -> coefficient),
truncated series are dense coefficient tuples of length ``order + 1``.
Rationals are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import OrderMismatchError

BigRational = Fraction


class IntPolynomial:
    """Sparse polynomial in one indeterminate with integer coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            if exp < 0:
                raise ValueError(f"negative exponent {exp}")
            acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def _from_dict(cls, acc: dict[int, int]) -> IntPolynomial:
        # acc is owned by the new instance; exponents are already non-negative
        poly = cls.__new__(cls)
        poly._terms = {e: acc[e] for e in sorted(acc) if acc[e]}
        poly._hash = None
        return poly

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> IntPolynomial:
        return cls({exp: coeff})

    @classmethod
    def binomial(cls, exp: int, sign: int) -> IntPolynomial:
        """``1 + sign * t**exp``."""
        return cls([(0, 1), (exp, sign)])

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Largest exponent, or -1 for the zero polynomial."""
        return max(self._terms) if self._terms else -1

    @property
    def low_degree(self) -> int:
        """Smallest exponent with a non-zero coefficient, or -1 for zero."""
        return min(self._terms) if self._terms else -1

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return IntPolynomial._from_dict(acc)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial._from_dict({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        return poly_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "IntPolynomial(0)"
        parts = []
        for e, c in self._terms.items():
            parts.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return "IntPolynomial(" + " + ".join(parts) + ")"


def poly_mul(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    acc: dict[int, int] = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in q._terms.items():
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return IntPolynomial._from_dict(acc)


def poly_product(factors: Iterable[IntPolynomial]) -> IntPolynomial:
    result = IntPolynomial({0: 1})
    for f in factors:
        result = poly_mul(result, f)
    return result


class TruncatedSeries:
    """Power series in ``t`` known up to and including degree ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[int] = ()):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        cs = list(coeffs)[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls(order, [1])

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, order: int) -> TruncatedSeries:
        cs = [0] * (order + 1)
        for e, c in p._terms.items():
            if e <= order:
                cs[e] = c
        return cls(order, cs)

    def __getitem__(self, degree: int) -> int:
        return self.coeffs[degree]

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        _check_orders(self, other)
        return TruncatedSeries(self.order, [x + y for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        _check_orders(self, other)
        return TruncatedSeries(self.order, [x - y for x, y in zip(self.coeffs, other.coeffs)])

    def scale(self, k: int) -> TruncatedSeries:
        return TruncatedSeries(self.order, [k * x for x in self.coeffs])

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        return series_mul(self, other)

    def mul_weight_factor(self, w: int) -> TruncatedSeries:
        """Multiply by ``(1 + t**w) / (1 - t**w)`` in O(order) steps.

        Same result as ``series_mul(self, weight_factor_series(w, self.order))``.
        """
        if w < 1:
            raise ValueError("weight must be positive")
        cs = list(self.coeffs)
        # divide by (1 - t^w): running sums with stride w
        for i in range(w, len(cs)):
            cs[i] += cs[i - w]
        # multiply by (1 + t^w): descending so each step reads the old value
        for i in range(len(cs) - 1, w - 1, -1):
            cs[i] += cs[i - w]
        return TruncatedSeries(self.order, cs)

    def first_nonzero_positive_degree(self) -> int | None:
        for d in range(1, self.order + 1):
            if self.coeffs[d]:
                return d
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, coeffs={list(self.coeffs)})"


def _check_orders(s: TruncatedSeries, u: TruncatedSeries) -> None:
    if s.order != u.order:
        raise OrderMismatchError(f"truncation orders differ: {s.order} != {u.order}")


def weight_factor_series(w: int, order: int) -> TruncatedSeries:
    """Truncation of ``(1 + t**w) / (1 - t**w)``: 1 plus 2 at each positive multiple of w."""
    if w < 1:
        raise ValueError("weight must be positive")
    cs = [0] * (order + 1)
    cs[0] = 1
    for d in range(w, order + 1, w):
        cs[d] = 2
    return TruncatedSeries(order, cs)


def series_mul(s: TruncatedSeries, u: TruncatedSeries) -> TruncatedSeries:
    _check_orders(s, u)
    n = s.order
    out = [0] * (n + 1)
    # iterate over the sparser operand's non-zeros
    if sum(1 for c in s.coeffs if c) > sum(1 for c in u.coeffs if c):
        s, u = u, s
    ucs = u.coeffs
    for i, ci in enumerate(s.coeffs):
        if not ci:
            continue
        for j in range(n + 1 - i):
            cj = ucs[j]
            if cj:
                out[i + j] += ci * cj
    return TruncatedSeries(n, out)


def rational_sum(values: Iterable[Fraction | int]) -> Fraction:
    total = Fraction(0)
    for v in values:
        total += v
    return total
