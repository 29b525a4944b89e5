"""Degree and multiplicity-count level checks for line arrangements.

All arithmetic is exact: values are Python integers, so there is no
overflow at any accepted degree. Residues are always reduced to the
canonical range 0..modulus-1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping

from .errors import CapExceededError, EvenMultiplicityError, NonIntegralTripleCountError
from .verdicts import Status, Verdict

CONGRUENCE_MODULUS = 16
DEGREE_GATE_MODULUS = 24
DEGREE_GATE_RESIDUES = frozenset({1, 3, 9, 19})

DEFAULT_VECTOR_CAP = 200


def _as_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")
    return value


class WeakCombinatorics:
    """A degree d together with the number of singular points of each
    multiplicity, with no incidence pattern.

    Multiplicities lie in 2..degree and zero counts are dropped on
    construction, so stored counts are always strictly positive. Even
    multiplicities are representable; operations that require odd
    multiplicities enforce that hypothesis themselves.
    """

    __slots__ = ("_degree", "_items")

    def __init__(self, degree: int, counts: Mapping[int, int] | None = None):
        degree = _as_int(degree, "degree")
        if degree < 0:
            raise ValueError(f"degree must be non-negative, got {degree}")
        items = []
        for m in sorted(counts or {}):
            n = counts[m]
            m = _as_int(m, "multiplicity")
            n = _as_int(n, "count")
            if n == 0:
                continue
            if n < 0:
                raise ValueError(f"count for multiplicity {m} must be positive, got {n}")
            if m < 2 or m > degree:
                raise ValueError(f"multiplicity {m} outside 2..{degree}")
            items.append((m, n))
        self._degree = degree
        self._items = tuple(items)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def counts(self) -> dict[int, int]:
        """Counts as a fresh dict keyed by multiplicity, ascending."""
        return dict(self._items)

    def items(self) -> tuple[tuple[int, int], ...]:
        return self._items

    def count(self, multiplicity: int) -> int:
        for m, n in self._items:
            if m == multiplicity:
                return n
        return 0

    @property
    def num_points(self) -> int:
        return sum(n for _, n in self._items)

    @property
    def covered_pairs(self) -> int:
        """Number of unordered line pairs accounted for by the points."""
        return sum(comb(m, 2) * n for m, n in self._items)

    @property
    def total_pairs(self) -> int:
        return comb(self._degree, 2)

    @property
    def incidence_sum(self) -> int:
        """Total line-point incidences, summed over points."""
        return sum(m * n for m, n in self._items)

    def is_trivial(self) -> bool:
        """Pencil/trivial reporting label: fewer than 3 lines or fewer than
        two distinct singular points. A labeling convention only; no check
        changes meaning because of it."""
        return self._degree < 3 or self.num_points < 2

    def describe(self) -> str:
        body = ",".join(f"{m}:{n}" for m, n in self._items) or "-"
        return f"d={self._degree} counts={body}"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeakCombinatorics):
            return NotImplemented
        return self._degree == other._degree and self._items == other._items

    def __hash__(self) -> int:
        return hash((self._degree, self._items))

    def __repr__(self) -> str:
        return f"WeakCombinatorics({self._degree}, {dict(self._items)!r})"


@dataclass(frozen=True)
class PairCountCheck:
    passed: bool
    covered: int
    required: int


def pair_count_identity(wc: WeakCombinatorics) -> PairCountCheck:
    """Every unordered pair of lines meets in exactly one singular point,
    so the multiplicity counts must cover exactly binom(d, 2) pairs."""
    covered = wc.covered_pairs
    required = wc.total_pairs
    return PairCountCheck(covered == required, covered, required)


def all_multiplicities_odd(wc: WeakCombinatorics) -> bool:
    return all(m % 2 == 1 for m, _ in wc.items())


def line_parity_check(wc: WeakCombinatorics) -> Status:
    """With odd multiplicities only, each line meets an even number of
    others, forcing d odd. Not applicable when an even multiplicity is
    present; vacuously passing for the empty arrangement."""
    if not all_multiplicities_odd(wc):
        return Status.NOT_APPLICABLE
    if wc.degree == 0:
        return Status.PASS
    return Status.PASS if wc.degree % 2 == 1 else Status.FAIL


def odd_multiplicity_congruence(wc: WeakCombinatorics) -> int:
    """Residue of sum((m-1) t_m) - (d-1) mod 16, in 0..15; zero is a pass.

    Raises EvenMultiplicityError when an even multiplicity is stored, since
    the congruence only constrains odd-multiplicity arrangements. The empty
    arrangement (d = 0) is trivially unobstructed and reports residue 0.
    """
    for m, _ in wc.items():
        if m % 2 == 0:
            raise EvenMultiplicityError(m)
    if wc.degree == 0:
        return 0
    weighted = sum((m - 1) * n for m, n in wc.items())
    return (weighted - (wc.degree - 1)) % CONGRUENCE_MODULUS


def triple_count_from_degree(degree: int) -> int:
    """Number of triple points an only-triple-point arrangement of the
    given degree must have: d(d-1)/6, when integral."""
    degree = _as_int(degree, "degree")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    pairs2 = degree * (degree - 1)
    if pairs2 % 6 != 0:
        raise NonIntegralTripleCountError(degree)
    return pairs2 // 6


@dataclass(frozen=True)
class DegreeGate:
    passed: bool
    residue: int  # degree mod 24


def triple_only_degree_gate(degree: int) -> DegreeGate:
    """Feasibility gate for only-triple-point arrangements: the degree must
    be 1, 3, 9 or 19 mod 24 (divisibility of d(d-1)/6 combined with the
    mod-16 congruence)."""
    degree = _as_int(degree, "degree")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    residue = degree % DEGREE_GATE_MODULUS
    return DegreeGate(residue in DEGREE_GATE_RESIDUES, residue)


class RealizationClass(str, enum.Enum):
    PSEUDOLINE = "pseudoline"
    COMPLEX = "complex"
    LOCALLY_FLAT = "locally_flat"


def classical_filters(wc: WeakCombinatorics, realization_class: RealizationClass | str) -> list[Verdict]:
    """Optional classical inequality filters, applied per realization class.

    Melchior: for non-pencil pseudoline arrangements,
        t_2 >= 3 + sum_{m>=4} (m-3) t_m.
    Hirzebruch: for complex arrangements with d >= 6 and t_d = t_{d-1} = 0,
        t_2 + (3/4) t_3 >= d + sum_{m>=5} (m-4) t_m,
    evaluated as 4 t_2 + 3 t_3 >= 4 d + 4 sum(...) to stay in integers.

    These are classical results about realizable arrangements, documented
    in README; they are advisory filters outside the congruence suite.
    Outside their guards the verdict is not-applicable, never a pass.
    """
    rc = RealizationClass(realization_class)
    d = wc.degree
    verdicts = []

    if rc is not RealizationClass.PSEUDOLINE:
        verdicts.append(Verdict("melchior", Status.NOT_APPLICABLE,
                                reason=f"stated for pseudoline arrangements, not {rc.value}"))
    elif wc.is_trivial():
        verdicts.append(Verdict("melchior", Status.NOT_APPLICABLE,
                                reason="pencil or trivial arrangement is excluded"))
    else:
        lhs = wc.count(2)
        rhs = 3 + sum((m - 3) * n for m, n in wc.items() if m >= 4)
        status = Status.PASS if lhs >= rhs else Status.FAIL
        verdicts.append(Verdict("melchior", status, witness=f"{lhs}>={rhs}",
                                reason="t_2 >= 3 + sum (m-3) t_m over m >= 4"))

    if rc is not RealizationClass.COMPLEX:
        verdicts.append(Verdict("hirzebruch", Status.NOT_APPLICABLE,
                                reason=f"stated for complex arrangements, not {rc.value}"))
    elif d < 6 or wc.count(d) > 0 or wc.count(d - 1) > 0:
        verdicts.append(Verdict("hirzebruch", Status.NOT_APPLICABLE,
                                reason="requires d >= 6 and no point of multiplicity d or d-1"))
    else:
        lhs4 = 4 * wc.count(2) + 3 * wc.count(3)
        rhs4 = 4 * d + 4 * sum((m - 4) * n for m, n in wc.items() if m >= 5)
        status = Status.PASS if lhs4 >= rhs4 else Status.FAIL
        verdicts.append(Verdict("hirzebruch", status, witness=f"{lhs4}>={rhs4} (x4)",
                                reason="t_2 + (3/4) t_3 >= d + sum (m-4) t_m over m >= 5"))

    return verdicts


def feasible_count_vectors(degree: int, odd_only: bool = False,
                           cap: int = DEFAULT_VECTOR_CAP) -> Iterator[WeakCombinatorics]:
    """Yield every multiplicity-count vector satisfying the pair identity.

    Order is deterministic: vectors are emitted in descending lexicographic
    order of their count tuples read at decreasing multiplicity, so the
    pencil {d: 1} comes first and the all-triples vector last. The stream
    partitions cleanly by the count at the largest multiplicity, which is
    what a chunked parallel driver would shard on.
    """
    degree = _as_int(degree, "degree")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree > cap:
        raise CapExceededError(degree, cap)

    lowest = 3 if odd_only else 2
    step = -2 if odd_only else -1
    start = degree if not odd_only or degree % 2 == 1 else degree - 1
    multiplicities = list(range(start, lowest - 1, step)) if degree >= lowest else []
    weights = [comb(m, 2) for m in multiplicities]
    target = comb(degree, 2)

    stack: list[tuple[int, int]] = []  # (multiplicity, count) with count > 0

    def emit() -> WeakCombinatorics:
        return WeakCombinatorics(degree, dict(stack))

    def recurse(index: int, remaining: int) -> Iterator[WeakCombinatorics]:
        if remaining == 0:
            yield emit()
            return
        if index == len(multiplicities):
            return
        m, w = multiplicities[index], weights[index]
        if index == len(multiplicities) - 1:
            # last multiplicity must absorb the remainder exactly
            if remaining % w == 0:
                stack.append((m, remaining // w))
                yield emit()
                stack.pop()
            return
        for count in range(remaining // w, -1, -1):
            if count:
                stack.append((m, count))
                yield from recurse(index + 1, remaining - count * w)
                stack.pop()
            else:
                yield from recurse(index + 1, remaining)

    if target == 0:
        yield WeakCombinatorics(degree, {})
        return
    yield from recurse(0, target)
