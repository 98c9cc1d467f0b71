from collections import Counter
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from circlefix.errors import InvalidDataError, NotDescribableError, UnsupportedShapeError
from circlefix.fpdata import (
    FixedPoint,
    FixedPointData,
    TriplePattern,
    build_multigraph,
    cp2_family,
    data_from_pattern,
    hp2_family,
    hp2_from_projective,
    pattern_from_data,
    sphere_rotation,
    validate,
)


def fpd(half_dim, *points):
    return FixedPointData.from_lists(half_dim, points)


def brute_force_patterns(data):
    """Try every way of splitting each same-sign point's weights into two halves."""
    signs = [p.sign for p in data.points]
    i3 = next(i for i in range(3) if signs.count(signs[i]) == 1)
    others = [i for i in range(3) if i != i3]
    n = data.half_dim // 2
    found = set()
    for i1, i2 in (others, others[::-1]):
        w1, w2, w3 = (data.points[i].weights for i in (i1, i2, i3))
        for mask in product((0, 1), repeat=2 * n):
            if sum(mask) != n:
                continue
            a = sorted(w for w, m in zip(w1, mask) if m)
            b = sorted(w for w, m in zip(w1, mask) if not m)
            rest = Counter(w2) - Counter(a)
            if sum(rest.values()) != n or Counter(a) + rest != Counter(w2):
                continue
            c = sorted(rest.elements())
            if sorted(b + c) == list(w3):
                found.add(TriplePattern(a, b, c))
    return found


def test_validate_examples():
    assert validate(sphere_rotation([1, 2])) == []
    bad = fpd(2, (1, [0, 1]), (-1, [1, 1]))
    assert any("non-positive weight" in v for v in validate(bad))
    mismatch = fpd(2, (1, [1, 1]), (1, [1, 1]), (-1, [1, 1, 1]))
    assert any("size mismatch" in v for v in validate(mismatch))


def test_validate_bad_sign():
    assert any("sign" in v for v in validate(fpd(1, (2, [1]), (-1, [1]))))


def test_data_from_pattern_examples():
    d = data_from_pattern(TriplePattern([2, 2], [1, 3], [1, 1]))
    assert d.half_dim == 4
    assert [str(p) for p in d.points] == ["{+;1,2,2,3}", "{+;1,1,2,2}", "{-;1,1,1,3}"]
    d = data_from_pattern(TriplePattern([2], [1], [1]))
    assert [str(p) for p in d.points] == ["{+;1,2}", "{+;1,2}", "{-;1,1}"]


@pytest.mark.parametrize("b, c", [(1, 1), (1, 2), (2, 3), (4, 7)])
def test_data_from_pattern_matches_cp2_family(b, c):
    assert data_from_pattern(TriplePattern([b + c], [b], [c])) == cp2_family(b, c)


def test_pattern_from_data_examples():
    assert TriplePattern([2, 2], [1, 3], [1, 1]) in pattern_from_data(hp2_family(1, 1, 1))
    assert pattern_from_data(fpd(2, (1, [1, 1]), (1, [1, 1]), (-1, [2, 2]))) == []
    assert TriplePattern([2], [1], [1]) in pattern_from_data(cp2_family(1, 1))


def test_pattern_from_data_wrong_point_count():
    with pytest.raises(UnsupportedShapeError):
        pattern_from_data(sphere_rotation([1, 2]))


def test_pattern_from_data_all_same_sign_is_empty():
    assert pattern_from_data(fpd(2, (1, [1, 2]), (1, [1, 2]), (1, [1, 1]))) == []


patterns = st.integers(1, 3).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(1, 7), min_size=n, max_size=n)] * 3)
).map(lambda abc: TriplePattern(*abc))


@given(patterns)
def test_round_trip_and_brute_force(p):
    data = data_from_pattern(p)
    found = pattern_from_data(data)
    assert p in found
    assert set(found) == brute_force_patterns(data)


@given(patterns)
def test_pattern_from_flipped_data(p):
    assert p in pattern_from_data(data_from_pattern(p).flipped())


@given(patterns)
def test_every_label_has_even_total_multiplicity(p):
    counts = Counter(w for pt in data_from_pattern(p).points for w in pt.weights)
    assert all(m % 2 == 0 for m in counts.values())


@pytest.mark.parametrize(
    "abc, expected",
    [
        ((1, 1, 1), [(1, [2, 2, 1, 3]), (1, [2, 2, 1, 1]), (-1, [1, 3, 1, 1])]),
        ((1, 1, 2), [(1, [2, 3, 1, 4]), (1, [2, 3, 1, 2]), (-1, [1, 4, 1, 2])]),
        ((2, 1, 1), [(1, [3, 3, 2, 4]), (1, [3, 3, 1, 1]), (-1, [2, 4, 1, 1])]),
    ],
)
def test_hp2_family(abc, expected):
    assert hp2_family(*abc) == fpd(4, *expected)


def test_hp2_from_projective_examples():
    assert hp2_from_projective(1, 2, 3) == fpd(4, (1, [3, 1, 4, 2]), (-1, [3, 1, 5, 1]), (1, [4, 2, 5, 1]))
    half = Fraction(1, 2)
    assert hp2_from_projective(half, 3 * half, 5 * half) == fpd(
        4, (1, [2, 1, 3, 2]), (-1, [2, 1, 4, 1]), (1, [3, 2, 4, 1])
    )


def _substituted(a, b, c):
    return Fraction(c - b, 2), Fraction(b + c, 2), a + Fraction(b + c, 2)


def test_hp2_projective_matches_family_for_113():
    proj = hp2_from_projective(*_substituted(1, 1, 3))
    fam = hp2_family(1, 1, 3)
    assert proj.same_up_to_reorder(fam) or proj.flipped().same_up_to_reorder(fam)


def test_hp2_projective_matches_family_up_to_20():
    for a in range(1, 21):
        for b in range(1, 21):
            for c in range(b, 21):
                proj = hp2_from_projective(*_substituted(a, b, c))
                fam = hp2_family(a, b, c)
                assert proj.same_up_to_reorder(fam) or proj.flipped().same_up_to_reorder(fam), (a, b, c)


@pytest.mark.parametrize(
    "def_",
    [(2, 1, 3), (1, 1, 2), (1, Fraction(3, 2), 2), (Fraction(1, 3), 1, 2), (-1, 1, 2)],
)
def test_hp2_from_projective_rejects_bad_input(def_):
    with pytest.raises(InvalidDataError):
        hp2_from_projective(*def_)


@pytest.mark.parametrize(
    "bc, expected",
    [
        ((1, 1), [(1, [2, 1]), (1, [2, 1]), (-1, [1, 1])]),
        ((1, 2), [(1, [3, 1]), (1, [3, 2]), (-1, [1, 2])]),
        ((2, 3), [(1, [5, 2]), (1, [5, 3]), (-1, [2, 3])]),
    ],
)
def test_cp2_family(bc, expected):
    assert cp2_family(*bc) == fpd(2, *expected)


@pytest.mark.parametrize("ws", [[1], [1, 2], [3, 3, 3]])
def test_sphere_rotation(ws):
    d = sphere_rotation(ws)
    assert d == fpd(len(ws), (1, ws), (-1, ws))


def test_family_parameter_errors():
    with pytest.raises(InvalidDataError):
        hp2_family(0, 1, 1)
    with pytest.raises(InvalidDataError):
        cp2_family(1, 0)
    with pytest.raises(InvalidDataError):
        sphere_rotation([])


def _edges(g):
    out = {}
    for e in g.edges:
        out.setdefault((e.u, e.v), []).append(e.label)
    return {k: sorted(v) for k, v in out.items()}


def test_build_multigraph_examples():
    g = build_multigraph(hp2_family(1, 1, 1))
    assert _edges(g) == {(1, 2): [2, 2], (1, 3): [1, 3], (2, 3): [1, 1]}
    assert _edges(build_multigraph(sphere_rotation([1, 2]))) == {(1, 2): [1, 2]}
    assert _edges(build_multigraph(cp2_family(1, 2))) == {(1, 2): [3], (1, 3): [1], (2, 3): [2]}


def test_build_multigraph_errors():
    with pytest.raises(NotDescribableError):
        build_multigraph(fpd(2, (1, [1, 1]), (1, [1, 1]), (-1, [2, 2])))
    with pytest.raises(NotDescribableError):
        build_multigraph(fpd(2, (1, [1, 2]), (1, [1, 2])))
    with pytest.raises(UnsupportedShapeError):
        build_multigraph(fpd(1, (1, [1]), (-1, [1]), (1, [1]), (-1, [1])))


@given(patterns, st.permutations(range(3)))
def test_multigraph_describes_data(p, order):
    data = data_from_pattern(p)
    data = FixedPointData(data.half_dim, [data.points[i] for i in order])
    g = build_multigraph(data)
    assert g.describes(data)
    assert not g.has_self_loops()


def test_build_multigraph_is_deterministic():
    d = hp2_family(2, 3, 5)
    assert build_multigraph(d) == build_multigraph(FixedPointData(d.half_dim, list(d.points)))


def test_fixed_point_weights_are_order_insensitive():
    assert FixedPoint(1, [3, 1, 2]) == FixedPoint(1, [1, 2, 3])


def test_triple_pattern_rejects_bad_arrays():
    with pytest.raises(InvalidDataError):
        TriplePattern([1, 2], [1], [1])
    with pytest.raises(InvalidDataError):
        TriplePattern([0], [1], [1])
