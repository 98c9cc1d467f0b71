"""Fixed point data, triple patterns and describing multigraphs.

A circle action with isolated fixed points is summarised by, for every fixed
point, a sign and a multiset of positive integer weights. With three fixed
points the data always has the shape

    p1 = {+, a ⊎ b},  p2 = {+, a ⊎ c},  p3 = {-, b ⊎ c}

for sorted arrays ``a``, ``b``, ``c`` of equal length; such a triple is a
:class:`TriplePattern`. Signs are canonicalised to ``(+, +, -)``; use
:meth:`FixedPointData.flipped` for the opposite orientation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidDataError, NotDescribableError, UnsupportedShapeError


@dataclass(frozen=True)
class FixedPoint:
    sign: int
    weights: tuple[int, ...]

    def __init__(self, sign: int, weights: Iterable[int]):
        object.__setattr__(self, "sign", int(sign))
        object.__setattr__(self, "weights", tuple(sorted(int(w) for w in weights)))

    def flipped(self) -> FixedPoint:
        return FixedPoint(-self.sign, self.weights)

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        return "{" + s + ";" + ",".join(map(str, self.weights)) + "}"


@dataclass(frozen=True)
class FixedPointData:
    """Signs and weights of ``k`` isolated fixed points on a ``2 * half_dim`` manifold.

    Construction never rejects input; call :func:`validate` for the
    structural checks.
    """

    half_dim: int
    points: tuple[FixedPoint, ...]

    def __init__(self, half_dim: int, points: Iterable[FixedPoint]):
        object.__setattr__(self, "half_dim", int(half_dim))
        object.__setattr__(self, "points", tuple(points))

    @classmethod
    def from_lists(cls, half_dim: int, spec: Iterable[tuple[int, Iterable[int]]]) -> FixedPointData:
        return cls(half_dim, [FixedPoint(s, ws) for s, ws in spec])

    @property
    def dim(self) -> int:
        return 2 * self.half_dim

    @property
    def k(self) -> int:
        return len(self.points)

    @property
    def max_weight(self) -> int:
        return max((w for p in self.points for w in p.weights), default=0)

    def flipped(self) -> FixedPointData:
        return FixedPointData(self.half_dim, [p.flipped() for p in self.points])

    def canonical_key(self) -> tuple:
        """Order-independent key: sorted (sign, weights) pairs."""
        return tuple(sorted((p.sign, p.weights) for p in self.points))

    def same_up_to_reorder(self, other: FixedPointData) -> bool:
        return self.half_dim == other.half_dim and self.canonical_key() == other.canonical_key()

    def __str__(self) -> str:
        return ", ".join(str(p) for p in self.points)


def _sorted_tuple(xs: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in xs))


@dataclass(frozen=True, order=True)
class TriplePattern:
    """Edge labels of the three-vertex describing multigraph.

    ``a`` labels edges p1-p2, ``b`` edges p1-p3 and ``c`` edges p2-p3.
    Ordering compares ``(a, b, c)`` lexicographically.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __init__(self, a: Iterable[int], b: Iterable[int], c: Iterable[int]):
        a, b, c = _sorted_tuple(a), _sorted_tuple(b), _sorted_tuple(c)
        if not (len(a) == len(b) == len(c)) or not a:
            raise InvalidDataError("pattern arrays must be non-empty and of equal length")
        if min(a + b + c) < 1:
            raise InvalidDataError("pattern entries must be positive integers")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def entries(self) -> tuple[int, ...]:
        return self.a + self.b + self.c

    @property
    def max_entry(self) -> int:
        return max(self.a[-1], self.b[-1], self.c[-1])

    def swapped(self) -> TriplePattern:
        """Exchange the roles of p1 and p2 (``b`` <-> ``c``)."""
        return TriplePattern(self.a, self.c, self.b)

    def scaled(self, lam: int) -> TriplePattern:
        return TriplePattern([lam * x for x in self.a], [lam * x for x in self.b], [lam * x for x in self.c])

    def as_dict(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "c": list(self.c)}

    def __str__(self) -> str:
        def j(xs):
            return ",".join(map(str, xs))

        return f"({j(self.a)}; {j(self.b)}; {j(self.c)})"


def validate(data: FixedPointData) -> list[str]:
    """Structural checks only. Returns the violations; empty means ok."""
    problems = []
    if data.half_dim < 1:
        problems.append(f"half dimension must be positive, got {data.half_dim}")
    if not data.points:
        problems.append("no fixed points")
    for i, p in enumerate(data.points, 1):
        if p.sign not in (1, -1):
            problems.append(f"point {i}: invalid sign {p.sign}")
        if any(w < 1 for w in p.weights):
            problems.append(f"point {i}: non-positive weight")
        if len(p.weights) != data.half_dim:
            problems.append(
                f"point {i}: size mismatch ({len(p.weights)} weights, expected {data.half_dim})"
            )
    return problems


def data_from_pattern(p: TriplePattern) -> FixedPointData:
    return FixedPointData(
        2 * p.n,
        [FixedPoint(1, p.a + p.b), FixedPoint(1, p.a + p.c), FixedPoint(-1, p.b + p.c)],
    )


def _submultisets(ws: Sequence[int], size: int):
    seen = set()
    for combo in combinations(ws, size):
        if combo not in seen:
            seen.add(combo)
            yield combo


def _decompositions(data: FixedPointData) -> list[tuple[TriplePattern, tuple[int, int, int]]]:
    """All (pattern, (i1, i2, i3)) with point i1 -> p1, i2 -> p2, i3 -> p3."""
    if data.k != 3:
        raise UnsupportedShapeError(f"triple patterns need exactly 3 fixed points, got {data.k}")
    signs = [p.sign for p in data.points]
    odd = [i for i in range(3) if signs.count(signs[i]) == 1]
    if len(odd) != 1:
        return []
    i3 = odd[0]
    i1, i2 = [i for i in range(3) if i != i3]
    weights = [p.weights for p in data.points]
    if len({len(w) for w in weights}) != 1 or len(weights[0]) % 2:
        return []
    n = len(weights[0]) // 2
    if n == 0:
        return []
    third = Counter(weights[i3])
    found = []
    for first, second in ((i1, i2), (i2, i1)):
        w1, w2 = Counter(weights[first]), Counter(weights[second])
        for a in _submultisets(weights[first], n):
            ca = Counter(a)
            if ca - w2:
                continue
            b = w1 - ca
            c = w2 - ca
            if b + c != third:
                continue
            pat = TriplePattern(a, b.elements(), c.elements())
            found.append((pat, (first, second, i3)))
    found.sort()
    return found


def pattern_from_data(data: FixedPointData) -> list[TriplePattern]:
    """Every triple pattern whose multiset unions reproduce ``data``, sorted.

    Both assignments of the two same-sign points to p1/p2 are tried. Data
    whose odd-sign point is negative is read in the ``(+, +, -)`` convention
    directly; data with signs ``(-, -, +)`` yields the patterns of its flip.
    """
    return sorted({pat for pat, _ in _decompositions(data)})


def hp2_family(a: int, b: int, c: int) -> FixedPointData:
    for name, v in (("a", a), ("b", b), ("c", c)):
        if v < 1:
            raise InvalidDataError(f"{name} must be a positive integer")
    return FixedPointData.from_lists(
        4,
        [
            (1, [a + b, a + c, a, a + b + c]),
            (1, [a + b, a + c, b, c]),
            (-1, [a, a + b + c, b, c]),
        ],
    )


def hp2_from_projective(d, e, f) -> FixedPointData:
    """Fixed point data of the circle action ``[g^d x0 : g^e x1 : g^f x2]`` on HP^2.

    ``d, e, f`` must be all integers or all half-integers with ``0 <= d < e < f``.
    ``d = 0`` is accepted: every weight is still non-zero.
    """
    d, e, f = Fraction(d), Fraction(e), Fraction(f)
    dens = {x.denominator for x in (d, e, f)}
    if dens not in ({1}, {2}):
        raise InvalidDataError("d, e, f must be all integers or all half-integers")
    if not (0 <= d < e < f):
        raise InvalidDataError("need 0 <= d < e < f")

    def ws(*vals):
        out = [abs(v) for v in vals]
        assert all(v.denominator == 1 and v > 0 for v in out)
        return [int(v) for v in out]

    return FixedPointData.from_lists(
        4,
        [
            (1, ws(e + d, e - d, f + d, f - d)),
            (-1, ws(d + e, d - e, f + e, f - e)),
            (1, ws(d + f, d - f, e + f, e - f)),
        ],
    )


def cp2_family(b: int, c: int) -> FixedPointData:
    if b < 1 or c < 1:
        raise InvalidDataError("b and c must be positive integers")
    return FixedPointData.from_lists(2, [(1, [b + c, b]), (1, [b + c, c]), (-1, [b, c])])


def sphere_rotation(weights: Iterable[int]) -> FixedPointData:
    ws = [int(w) for w in weights]
    if not ws:
        raise InvalidDataError("need at least one weight")
    if min(ws) < 1:
        raise InvalidDataError("weights must be positive integers")
    return FixedPointData.from_lists(len(ws), [(1, ws), (-1, ws)])


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    label: int


@dataclass(frozen=True)
class Multigraph:
    """Signed, labeled multigraph; vertex ids are point indices starting at 1."""

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[Edge, ...] = field(default=())

    def incident_labels(self, vid: int) -> tuple[int, ...]:
        return tuple(sorted(e.label for e in self.edges if vid in (e.u, e.v)))

    def has_self_loops(self) -> bool:
        return any(e.u == e.v for e in self.edges)

    def describes(self, data: FixedPointData) -> bool:
        """Vertex signs and incident label multisets agree with ``data``."""
        if len(self.vertices) != data.k:
            return False
        for (vid, sign), p in zip(self.vertices, data.points):
            if sign != p.sign or self.incident_labels(vid) != p.weights:
                return False
        return True


def build_multigraph(data: FixedPointData) -> Multigraph:
    vertices = tuple((i + 1, p.sign) for i, p in enumerate(data.points))
    if data.k == 2:
        p, q = data.points
        if p.sign != -q.sign or p.weights != q.weights:
            raise NotDescribableError("two fixed points need opposite signs and equal weights")
        edges = tuple(Edge(1, 2, w) for w in p.weights)
        return Multigraph(vertices, edges)
    if data.k != 3:
        raise UnsupportedShapeError(f"multigraphs are only built for 2 or 3 fixed points, got {data.k}")
    decs = _decompositions(data)
    if not decs:
        raise NotDescribableError("no triple-pattern decomposition exists")
    pat, (i1, i2, i3) = decs[0]
    edges = []
    for (x, y), labels in (((i1, i2), pat.a), ((i1, i3), pat.b), ((i2, i3), pat.c)):
        u, v = sorted((x + 1, y + 1))
        edges.extend(Edge(u, v, w) for w in labels)
    edges.sort(key=lambda e: (e.u, e.v, e.label))
    return Multigraph(vertices, tuple(edges))
