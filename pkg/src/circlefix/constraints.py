"""Necessary conditions on fixed point data of circle actions.

Data-level checks (signature, sign sum, weight balance/parity, localization
sums, Pontryagin restrictions) work for any number of fixed points. The
pattern-level checks and the dimension-12 refutation pipeline work on
:class:`~circlefix.fpdata.TriplePattern` in the ``(+, +, -)`` convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import prod
from typing import Any, Sequence

from .errors import ConstraintViolation, DegreeError, StageOrderError
from .exact import IntPolynomial, TruncatedSeries, poly_product, rational_sum
from .fpdata import FixedPoint, FixedPointData, TriplePattern, data_from_pattern

# stage keys of the dimension-12 pipeline, in order; also the report keys
PROP42 = "prop42"
PONTRYAGIN_EQUAL = "pontryagin-equal"
BIGGEST_WEIGHT = "biggest-weight"
NORMAL_BUNDLE = "normal-bundle"
FINAL = "final"
DIM12_STAGES = (PROP42, PONTRYAGIN_EQUAL, BIGGEST_WEIGHT, NORMAL_BUNDLE, FINAL)
DIM8_RELATION = "dim8-relation"

ADMISSIBLE = "admissible"


# ---------------------------------------------------------------- signature


@dataclass(frozen=True)
class SignatureResult:
    constant: bool
    value: int | None = None
    first_nonconstant_degree: int | None = None
    series: TruncatedSeries | None = field(default=None, compare=False, repr=False)


def default_truncation(data: FixedPointData) -> int:
    return 4 * data.max_weight + 1


def signature_sum_series(data: FixedPointData, order: int) -> TruncatedSeries:
    """``sum_p eps(p) prod_i (1 + t^w) / (1 - t^w)`` truncated at ``order``."""
    total = TruncatedSeries(order)
    for p in data.points:
        s = TruncatedSeries.one(order)
        for w in p.weights:
            s = s.mul_weight_factor(w)
        total = total + s.scale(p.sign)
    return total


def signature_series(data: FixedPointData, order: int | None = None) -> SignatureResult:
    if order is None:
        order = default_truncation(data)
    if order < 1:
        raise ValueError("truncation order must be at least 1")
    s = signature_sum_series(data, order)
    d = s.first_nonzero_positive_degree()
    if d is None:
        return SignatureResult(True, value=s[0], series=s)
    return SignatureResult(False, first_nonconstant_degree=d, series=s)


def eq1_polynomial(p: TriplePattern) -> IntPolynomial:
    """Signed sum of the four products whose vanishing is the signature identity."""

    def term(sa: int, sb: int, sc: int) -> IntPolynomial:
        factors = []
        for x in p.a:
            factors.append(IntPolynomial.binomial(x, sa))
        for x in p.b:
            factors.append(IntPolynomial.binomial(x, sb))
        for x in p.c:
            factors.append(IntPolynomial.binomial(x, sc))
        return poly_product(factors)

    return -term(-1, -1, -1) + term(1, 1, -1) + term(1, -1, 1) - term(-1, 1, 1)


def signature_exact_3pt(p: TriplePattern) -> bool:
    return eq1_polynomial(p).is_zero()


# ------------------------------------------------------- data-level checks


def sign_sum(data: FixedPointData) -> int:
    """Sum of signs; raises :class:`ConstraintViolation` if it breaks ``|sum| <= k - 2``."""
    total = sum(p.sign for p in data.points)
    k = data.k
    if data.half_dim > 0:
        if k == 1:
            raise ConstraintViolation("sign-sum", "a single fixed point forces dimension 0")
        if abs(total) > k - 2:
            raise ConstraintViolation("sign-sum", f"|{total}| exceeds k - 2 = {k - 2}")
    return total


def min_weight_balance(data: FixedPointData) -> bool:
    w = min(x for p in data.points for x in p.weights)
    plus = sum(p.weights.count(w) for p in data.points if p.sign > 0)
    minus = sum(p.weights.count(w) for p in data.points if p.sign < 0)
    return plus == minus


def weight_parity(data: FixedPointData) -> bool:
    counts = Counter(w for p in data.points for w in p.weights)
    return all(m % 2 == 0 for m in counts.values())


def dim_mod4_check(data: FixedPointData) -> bool:
    return data.k % 2 == 0 or data.dim % 4 == 0


def localization_value(data: FixedPointData, class_values: Sequence[int | Fraction]) -> Fraction:
    if len(class_values) != data.k:
        raise ValueError("need exactly one class value per fixed point")
    return rational_sum(
        Fraction(p.sign * v) / prod(p.weights) for p, v in zip(data.points, class_values)
    )


def integral_of_one(data: FixedPointData) -> Fraction:
    return localization_value(data, [1] * data.k)


def elementary_symmetric(xs: Sequence[int], m: int) -> int:
    e = [1] + [0] * m
    for x in xs:
        for j in range(m, 0, -1):
            e[j] += e[j - 1] * x
    return e[m]


def pontryagin_restriction(point: FixedPoint, m: int) -> int:
    """m-th elementary symmetric polynomial of the squared weights at ``point``."""
    if m < 1:
        raise DegreeError("Pontryagin degree must be positive")
    if m > len(point.weights):
        raise DegreeError(f"degree {m} exceeds number of weights {len(point.weights)}")
    return elementary_symmetric([w * w for w in point.weights], m)


@dataclass(frozen=True)
class VandermondeResult:
    groups: dict[int, Fraction]
    moments: tuple[Fraction, ...]
    all_zero: bool
    forced: bool  # dim >= 4km, so realizable data must have all_zero

    @property
    def violated(self) -> bool:
        return self.forced and not self.all_zero


def vandermonde_vanishing(data: FixedPointData, m: int) -> VandermondeResult:
    """Group points by their m-th Pontryagin restriction and sum ``eps / prod(w)`` per group."""
    groups: dict[int, Fraction] = {}
    for p in data.points:
        key = pontryagin_restriction(p, m)
        groups[key] = groups.get(key, Fraction(0)) + Fraction(p.sign, prod(p.weights))
    groups = dict(sorted(groups.items()))
    s = len(groups)
    moments = tuple(rational_sum(bv**l * av for bv, av in groups.items()) for l in range(s))
    return VandermondeResult(
        groups=groups,
        moments=moments,
        all_zero=all(v == 0 for v in groups.values()),
        forced=data.dim >= 4 * data.k * m,
    )


# --------------------------------------------------- pattern-level checks


def _subset_sums(xs: Sequence[int]) -> list[Counter]:
    """Counters of subset sums of ``xs`` split by subset-size parity."""
    by_parity = [Counter(), Counter()]
    for bits in product((0, 1), repeat=len(xs)):
        by_parity[sum(bits) % 2][sum(x for x, b in zip(xs, bits) if b)] += 1
    return by_parity


def _convolve(*counters: Counter) -> Counter:
    out = Counter({0: 1})
    for c in counters:
        nxt = Counter()
        for s1, m1 in out.items():
            for s2, m2 in c.items():
                nxt[s1 + s2] += m1 * m2
        out = nxt
    return out


def multisets_AB(p: TriplePattern) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two parity-constrained sum multisets, each as a sorted tuple."""
    sa, sb, sc = _subset_sums(p.a), _subset_sums(p.b), _subset_sums(p.c)
    A = _convolve(sa[1], sb[0], sc[0])
    B = _convolve(sa[0], sb[1], sc[1])
    return tuple(sorted(A.elements())), tuple(sorted(B.elements()))


def prop42_checks(p: TriplePattern) -> bool:
    a, b, c = p.a, p.b, p.c
    if a[0] != b[0] + c[0]:
        return False
    if p.n >= 2 and a[1] not in (b[0] + c[1], b[1] + c[0]):
        return False
    A, B = multisets_AB(p)
    return A == B


def dim8_relation(p: TriplePattern) -> bool:
    """Vanishing of the integral of 1 for an 8-dimensional pattern.

    ``c1 c2 + b1 b2 - a1 a2`` is symmetric in ``b <-> c``, so both ways of
    normalising ``a2 = b1 + c2`` give the same answer.
    """
    if p.n != 2:
        raise StageOrderError("dim8_relation needs a pattern with n = 2")
    a, b, c = p.a, p.b, p.c
    if a[0] != b[0] + c[0] or a[1] not in (b[0] + c[1], b[1] + c[0]):
        raise StageOrderError("dim8_relation requires a1 = b1 + c1 and the a2 rule")
    return c[0] * c[1] + b[0] * b[1] - a[0] * a[1] == 0


def sums_of_squares(p: TriplePattern) -> tuple[int, int, int]:
    return (sum(x * x for x in p.a), sum(x * x for x in p.b), sum(x * x for x in p.c))


def biggest_weight_rule(p: TriplePattern) -> bool:
    """False iff ``a3`` is strictly larger than every entry of ``b`` and ``c``."""
    if p.n != 3:
        raise StageOrderError("biggest_weight_rule needs n = 3")
    return max(p.b[-1], p.c[-1]) >= p.a[-1]


Witness = tuple[tuple[int, int, int], tuple[int, int, int]]


def lemma66_witnesses(p: TriplePattern) -> list[Witness]:
    """All permutation pairs (i, j) (0-based) with
    ``a[i0] + c[j0] = b3``, ``a[i1] + c[j1] = b3``, ``a[i2] = c[j2]`` and ``c[0] != c[j2]``.
    """
    if p.n != 3:
        raise StageOrderError("normal-bundle filter needs n = 3")
    b3 = p.b[-1]
    if b3 < max(p.entries):
        raise StageOrderError("normal-bundle filter needs b3 to be the biggest weight")
    a, c = p.a, p.c
    out = []
    for i in permutations(range(3)):
        for j in permutations(range(3)):
            if (
                a[i[0]] + c[j[0]] == b3
                and a[i[1]] + c[j[1]] == b3
                and a[i[2]] == c[j[2]]
                and c[0] != c[j[2]]
            ):
                out.append((i, j))
    return out


def lemma66_filter(p: TriplePattern) -> bool:
    return bool(lemma66_witnesses(p))


def witness_contradiction(p: TriplePattern, witness: Witness) -> str | None:
    """Why ``witness`` is impossible, or None if no contradiction is found."""
    (i1, i2, i3), (j1, j2, j3) = witness
    a, c = p.a, p.c
    b3 = p.b[-1]
    sa, sc = sum(x * x for x in a), sum(x * x for x in c)
    # the witness identities fix c, so sum c^2 = (b3-a_i1)^2 + (b3-a_i2)^2 + a_i3^2
    assert sc == (b3 - a[i1]) ** 2 + (b3 - a[i2]) ** 2 + a[i3] ** 2
    if sa != sc:
        return "sum of squares of a and c differ"
    if a[i1] + a[i2] != b3:
        return f"a{i1 + 1} + a{i2 + 1} != b3 although sums of squares agree"
    if c[j1] != a[i2] or c[j2] != a[i1]:
        return "forced identities c_j1 = a_i2, c_j2 = a_i1 fail"
    if c[0] == c[j3]:
        return "c1 equals c_j3"
    # c1 is one of c_j1, c_j2, i.e. one of a_i1, a_i2 >= a1
    if c[0] < a[0]:
        return f"c1 = {c[0]} would equal some a_i >= a1 = {a[0]}"
    return None


def final_contradiction(p: TriplePattern, witnesses: Sequence[Witness]) -> bool:
    """True iff every witness is contradicted."""
    if not witnesses:
        raise StageOrderError("final stage needs at least one normal-bundle witness")
    return all(witness_contradiction(p, w) is not None for w in witnesses)


# ----------------------------------------------------------- certificates


@dataclass(frozen=True)
class StageOutcome:
    name: str
    passed: bool
    witness: Any = None

    def as_dict(self) -> dict:
        return {"stage": self.name, "outcome": "pass" if self.passed else "fail", "witness": self.witness}


@dataclass(frozen=True)
class Certificate:
    candidate: TriplePattern
    stages: tuple[StageOutcome, ...]
    verdict: str
    admissible_witness: Any = None

    @property
    def admissible(self) -> bool:
        return self.verdict == ADMISSIBLE

    @property
    def refuted_at(self) -> str | None:
        if self.admissible:
            return None
        return self.verdict.removeprefix("refuted-at:")

    def as_dict(self) -> dict:
        return {
            "candidate": self.candidate.as_dict(),
            "stages": [s.as_dict() for s in self.stages],
            "verdict": self.verdict,
        }


def _refuted(stage: str) -> str:
    return f"refuted-at:{stage}"


def _finish(p: TriplePattern, stages: list[StageOutcome], witness: Any = None) -> Certificate:
    for s in stages:
        if not s.passed:
            return Certificate(p, tuple(stages), _refuted(s.name))
    return Certificate(p, tuple(stages), ADMISSIBLE, witness)


def _tail_stages(q: TriplePattern, stop_stage: str | None) -> tuple[list[StageOutcome], Any]:
    """Normal-bundle filter and final contradiction on a normalised pattern."""
    wits = lemma66_witnesses(q)
    stages = [StageOutcome(NORMAL_BUNDLE, bool(wits), [list(map(list, w)) for w in wits] or None)]
    if not wits or stop_stage == NORMAL_BUNDLE:
        return stages, None
    open_wits = [w for w in wits if witness_contradiction(q, w) is None]
    reasons = [witness_contradiction(q, w) for w in wits]
    passed = bool(open_wits)
    stages.append(StageOutcome(FINAL, passed, open_wits if passed else reasons))
    return stages, (open_wits[0] if passed else None)


def dim12_chain(p: TriplePattern, stop_stage: str | None = None) -> Certificate:
    """Run the dimension-12 refutation pipeline on an n = 3 pattern.

    Stages run in :data:`DIM12_STAGES` order and stop at the first failure,
    or after ``stop_stage`` when given. Before the normal-bundle filter the
    pattern is normalised so that ``b3`` is the biggest weight; if ``b3 ==
    c3`` both orientations are evaluated and must agree.
    """
    if p.n != 3:
        raise StageOrderError("dim12_chain needs n = 3")
    if stop_stage is not None and stop_stage not in DIM12_STAGES:
        raise ValueError(f"unknown stage {stop_stage!r}")
    stages = [StageOutcome(PROP42, prop42_checks(p))]
    if not stages[-1].passed or stop_stage == PROP42:
        return _finish(p, stages)

    squares = sums_of_squares(p)
    stages.append(StageOutcome(PONTRYAGIN_EQUAL, len(set(squares)) == 1, list(squares)))
    if not stages[-1].passed or stop_stage == PONTRYAGIN_EQUAL:
        return _finish(p, stages)

    stages.append(StageOutcome(BIGGEST_WEIGHT, biggest_weight_rule(p), [p.a[-1], p.b[-1], p.c[-1]]))
    if not stages[-1].passed or stop_stage == BIGGEST_WEIGHT:
        return _finish(p, stages)

    if p.c[-1] > p.b[-1]:
        tail, witness = _tail_stages(p.swapped(), stop_stage)
    elif p.c[-1] < p.b[-1]:
        tail, witness = _tail_stages(p, stop_stage)
    else:
        tail, witness = _tail_stages(p, stop_stage)
        alt, alt_witness = _tail_stages(p.swapped(), stop_stage)
        outcome = [(s.name, s.passed) for s in tail]
        if outcome != [(s.name, s.passed) for s in alt]:
            raise AssertionError(f"b3 = c3 normalisations disagree for {p}: {outcome} vs {alt}")
    return _finish(p, stages + tail, witness)


def dim8_certificate(p: TriplePattern) -> Certificate:
    stages = [StageOutcome(PROP42, prop42_checks(p))]
    if stages[-1].passed:
        stages.append(StageOutcome(DIM8_RELATION, dim8_relation(p)))
    return _finish(p, stages)


def dim4_certificate(p: TriplePattern) -> Certificate:
    return _finish(p, [StageOutcome(PROP42, prop42_checks(p))])


def pattern_signature_constant(p: TriplePattern, order: int | None = None) -> bool:
    return signature_series(data_from_pattern(p), order).constant
