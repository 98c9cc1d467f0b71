"""Exhaustive enumeration of triple patterns and the classification runs.

Candidates are canonical triple patterns: arrays sorted, ``b <= c``
lexicographically, signs ``(+, +, -)``. The generator already enforces
``a1 = b1 + c1`` and the ``a2`` rule, so those never show up as kills.
Work is partitioned by the ``a`` array; partial reports are merged in
prefix order, so results do not depend on the number of workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations_with_replacement
from math import gcd
from typing import Iterable, Iterator

from . import constraints as C
from .errors import ClassificationFailure, TheoremContradiction
from .fpdata import TriplePattern, data_from_pattern, hp2_family

DIMENSIONS = {4: 1, 8: 2, 12: 3}


def canonicalize(p: TriplePattern) -> TriplePattern:
    return p.swapped() if p.c < p.b else p


def is_canonical(p: TriplePattern) -> bool:
    return p.b <= p.c


def is_primitive(p: TriplePattern) -> bool:
    return reduce(gcd, p.entries) == 1


def patterns_with_prefix(a: tuple[int, ...], bound: int, primitive_only: bool = False) -> Iterator[TriplePattern]:
    """Canonical patterns with the given ``a`` array, in lexicographic order."""
    n = len(a)
    for b1 in range(1, a[0]):
        c1 = a[0] - b1
        for b_rest in combinations_with_replacement(range(b1, bound + 1), n - 1):
            b = (b1,) + b_rest
            for c_rest in combinations_with_replacement(range(c1, bound + 1), n - 1):
                c = (c1,) + c_rest
                if b > c:
                    continue
                if n >= 2 and a[1] != b1 + c[1] and a[1] != b[1] + c1:
                    continue
                p = TriplePattern(a, b, c)
                if primitive_only and not is_primitive(p):
                    continue
                yield p


def a_prefixes(n: int, bound: int) -> list[tuple[int, ...]]:
    # a1 = b1 + c1 >= 2
    return [a for a in combinations_with_replacement(range(1, bound + 1), n) if a[0] >= 2]


def enumerate_patterns(n: int, bound: int, primitive_only: bool = False) -> Iterator[TriplePattern]:
    """Every canonical pattern with entries in ``[1, bound]`` passing the generator prune.

    Output is strictly increasing in ``(a, b, c)`` order.
    """
    if n not in (1, 2, 3):
        raise ValueError("n must be 1, 2 or 3")
    for a in a_prefixes(n, bound):
        yield from patterns_with_prefix(a, bound, primitive_only)


# ----------------------------------------------------------------- reports


@dataclass
class SearchReport:
    dim: int
    bound: int
    n: int
    total_generated: int
    kills_per_stage: dict[str, int]
    survivors: list[C.Certificate]
    stop_stage: str | None = None
    primitive_only: bool = False
    wall_time: float = field(default=0.0, compare=False)
    workers: int = field(default=1, compare=False)

    @property
    def survivor_patterns(self) -> list[TriplePattern]:
        return [cert.candidate for cert in self.survivors]

    def check_invariants(self) -> None:
        assert self.total_generated == sum(self.kills_per_stage.values()) + len(self.survivors)
        assert all(cert.admissible for cert in self.survivors)

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "bound": self.bound,
            "n": self.n,
            "total": self.total_generated,
            "kills": dict(self.kills_per_stage),
            "survivors": [
                dict(cert.candidate.as_dict(), certificate=cert.as_dict()) for cert in self.survivors
            ],
            "stop_stage": self.stop_stage,
            "primitive_only": self.primitive_only,
            "wall_time": round(self.wall_time, 3),
        }


def stage_names(dim: int) -> tuple[str, ...]:
    if dim == 4:
        return (C.PROP42,)
    if dim == 8:
        return (C.PROP42, C.DIM8_RELATION)
    if dim == 12:
        return C.DIM12_STAGES
    raise ValueError(f"unsupported dimension {dim}")


@dataclass(frozen=True)
class SearchSpace:
    """A pattern search: dimension, weight bound and pipeline options."""

    dim: int
    bound: int
    stop_stage: str | None = None
    primitive_only: bool = False

    @property
    def n(self) -> int:
        return DIMENSIONS[self.dim]

    def prefixes(self) -> list[tuple[int, ...]]:
        return a_prefixes(self.n, self.bound)

    def certify(self, p: TriplePattern) -> C.Certificate:
        if self.dim == 4:
            return C.dim4_certificate(p)
        if self.dim == 8:
            cert = C.dim8_certificate(p)
            oracle = C.signature_exact_3pt(p) and C.integral_of_one(data_from_pattern(p)) == 0
            if cert.admissible != oracle:
                raise ClassificationFailure(f"pipeline and exact oracle disagree on {p}")
            return cert
        return C.dim12_chain(p, self.stop_stage)

    def evaluate(self, prefix: tuple[int, ...]) -> tuple[int, dict[str, int], list[C.Certificate]]:
        total = 0
        kills = dict.fromkeys(stage_names(self.dim), 0)
        survivors = []
        for p in patterns_with_prefix(prefix, self.bound, self.primitive_only):
            total += 1
            cert = self.certify(p)
            if cert.admissible:
                survivors.append(cert)
            else:
                kills[cert.refuted_at] += 1
        return total, kills, survivors


def _evaluate(job: tuple[SearchSpace, tuple[int, ...]]):
    space, prefix = job
    return space.evaluate(prefix)


def parallel_partition(space: SearchSpace, workers: int = 1) -> SearchReport:
    """Evaluate ``space`` split by ``a`` prefix over ``workers`` processes and merge."""
    if workers < 1:
        raise ValueError("workers must be >= 1")
    start = time.perf_counter()
    jobs = [(space, a) for a in space.prefixes()]
    if workers == 1 or len(jobs) <= 1:
        parts = map(_evaluate, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        chunk = max(1, len(jobs) // (4 * workers))
        parts = pool.map(_evaluate, jobs, chunksize=chunk)
    total = 0
    kills = dict.fromkeys(stage_names(space.dim), 0)
    survivors: list[C.Certificate] = []
    try:
        for t, k, s in parts:
            total += t
            for name, v in k.items():
                kills[name] += v
            survivors.extend(s)
    finally:
        if workers > 1 and len(jobs) > 1:
            pool.shutdown()
    report = SearchReport(
        dim=space.dim,
        bound=space.bound,
        n=space.n,
        total_generated=total,
        kills_per_stage=kills,
        survivors=survivors,
        stop_stage=space.stop_stage,
        primitive_only=space.primitive_only,
        wall_time=time.perf_counter() - start,
        workers=workers,
    )
    report.check_invariants()
    return report


# ---------------------------------------------------- classification runs


def cp2_patterns(bound: int) -> set[TriplePattern]:
    return {
        TriplePattern([b + c], [b], [c])
        for b in range(1, bound + 1)
        for c in range(b, bound + 1)
        if b + c <= bound
    }


def hp2_pattern(a: int, b: int, c: int) -> TriplePattern:
    """Canonical pattern of ``hp2_family(a, b, c)``."""
    p = TriplePattern([a + b, a + c], [a, a + b + c], [b, c])
    assert data_from_pattern(p).same_up_to_reorder(hp2_family(a, b, c))
    return canonicalize(p)


def hp2_patterns(bound: int) -> set[TriplePattern]:
    return {
        hp2_pattern(a, b, c)
        for a in range(1, bound + 1)
        for b in range(1, bound + 1)
        for c in range(1, bound + 1)
        if a + b + c <= bound
    }


def compare_survivors(found: Iterable[TriplePattern], expected: set[TriplePattern], what: str) -> None:
    found = set(found)
    if found != expected:
        extra = sorted(found - expected)[:5]
        missing = sorted(expected - found)[:5]
        raise ClassificationFailure(f"{what}: unexpected {extra}, missing {missing}")


def expected_survivors(dim: int, bound: int, primitive_only: bool = False) -> set[TriplePattern]:
    """Canonical patterns the classification predicts for a full pipeline run."""
    if dim == 4:
        expected = cp2_patterns(bound)
    elif dim == 8:
        expected = hp2_patterns(bound)
    else:
        expected = set()
    if primitive_only:
        expected = {p for p in expected if is_primitive(p)}
    return expected


def check_classification(report: SearchReport) -> None:
    """Raise unless a full-pipeline report matches the known classification."""
    if report.stop_stage is not None:
        raise ValueError("only full-pipeline reports can be checked")
    if report.dim == 12 and report.survivors:
        cert = report.survivors[0]
        raise TheoremContradiction(f"admissible dim-12 candidate {cert.candidate}", cert)
    compare_survivors(
        report.survivor_patterns,
        expected_survivors(report.dim, report.bound, report.primitive_only),
        f"dim {report.dim}",
    )
    if report.dim == 8:
        for cert in report.survivors:
            _check_fully_consistent(cert.candidate)


def _check_fully_consistent(p: TriplePattern) -> None:
    data = data_from_pattern(p)
    ok = (
        C.signature_series(data).constant
        and C.weight_parity(data)
        and C.min_weight_balance(data)
        and C.integral_of_one(data) == 0
        and C.sign_sum(data) == 1
    )
    if not ok:
        raise ClassificationFailure(f"survivor {p} violates a data-level constraint")


def classify_dim4(bound: int, workers: int = 1, primitive_only: bool = False) -> SearchReport:
    report = parallel_partition(SearchSpace(4, bound, primitive_only=primitive_only), workers)
    check_classification(report)
    return report


def classify_dim8(bound: int, workers: int = 1, primitive_only: bool = False) -> SearchReport:
    report = parallel_partition(SearchSpace(8, bound, primitive_only=primitive_only), workers)
    check_classification(report)
    return report


def refute_dim12(
    bound: int, stop_stage: str | None = None, workers: int = 1, primitive_only: bool = False
) -> SearchReport:
    report = parallel_partition(SearchSpace(12, bound, stop_stage, primitive_only), workers)
    if stop_stage is None:
        check_classification(report)
    return report
