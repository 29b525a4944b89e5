"""Exact integer model of the second homology of a blown-up plane.

The lattice is a fixed diagonal form diag(+1, -1, ..., -1) in the basis
(line class; one exceptional class per blown-up point). Nothing here is
topology: every operation is total integer arithmetic on coordinates, and
the mod-16 verdicts it produces are re-derivations of the multiplicity
level congruence from concrete incidence data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable

from .combinatorics import CONGRUENCE_MODULUS, WeakCombinatorics
from .errors import DimensionMismatchError, HypothesisNotMetError


class IncidenceStructure:
    """d labeled lines plus an ordered list of singular points.

    Each point is the set of lines through it (size >= 2); any unordered
    pair of lines may appear in at most one point. Point order fixes the
    blow-up order, i.e. the coordinate order of exceptional classes; all
    residues computed here are invariant under reordering.

    Pairs covered by no listed point are implicit double points. A
    structure is ``fully_covered`` when no pair is implicit, which is the
    situation the odd-multiplicity machinery requires.
    """

    __slots__ = ("_degree", "_points", "_per_line", "_covered_count")

    def __init__(self, degree: int, points: Iterable[Iterable[int]] = ()):
        if isinstance(degree, bool) or not isinstance(degree, int):
            raise TypeError("degree must be an int")
        if degree < 1:
            raise ValueError(f"degree must be >= 1, got {degree}")
        normalized: list[tuple[int, ...]] = []
        for index, raw in enumerate(points):
            members = list(raw)
            if len(set(members)) != len(members):
                raise ValueError(f"point {index} repeats a line index: {sorted(members)}")
            if len(members) < 2:
                raise ValueError(f"point {index} has fewer than 2 lines")
            for line in members:
                if isinstance(line, bool) or not isinstance(line, int):
                    raise TypeError(f"point {index} contains a non-integer line label")
                if not 0 <= line < degree:
                    raise ValueError(f"point {index} references line {line}, outside 0..{degree - 1}")
            normalized.append(tuple(sorted(members)))

        per_line = [0] * degree
        for point in normalized:
            for line in point:
                per_line[line] += 1

        # Pair uniqueness: two points sharing two lines would cover a pair
        # twice. Pairwise set intersection is cheap for sparse structures;
        # fall back to a pair map when points are numerous.
        if len(normalized) <= 64:
            sets = [frozenset(p) for p in normalized]
            for i in range(len(sets)):
                for j in range(i + 1, len(sets)):
                    shared = sets[i] & sets[j]
                    if len(shared) > 1:
                        a, b = sorted(shared)[:2]
                        raise ValueError(
                            f"pair ({a}, {b}) appears in points {i} and {j}; "
                            "two lines meet at most once")
        else:
            seen: dict[tuple[int, int], int] = {}
            for index, point in enumerate(normalized):
                for pair in combinations(point, 2):
                    if pair in seen:
                        raise ValueError(
                            f"pair {pair} appears in points {seen[pair]} and {index}; "
                            "two lines meet at most once")
                    seen[pair] = index

        self._degree = degree
        self._points = tuple(normalized)
        self._per_line = tuple(per_line)
        self._covered_count = sum(comb(len(p), 2) for p in normalized)

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def points(self) -> tuple[tuple[int, ...], ...]:
        return self._points

    @property
    def num_points(self) -> int:
        return len(self._points)

    def points_through(self, line: int) -> int:
        """Number of listed singular points on the given line."""
        if not 0 <= line < self._degree:
            raise IndexError(f"line {line} outside 0..{self._degree - 1}")
        return self._per_line[line]

    @property
    def covered_pair_count(self) -> int:
        return self._covered_count

    @property
    def fully_covered(self) -> bool:
        return self._covered_count == comb(self._degree, 2)

    def uncovered_pairs(self) -> list[tuple[int, int]]:
        """All implicit double points, ascending. Costs O(d^2); intended
        for witnesses and for completing small structures."""
        if self.fully_covered:
            return []
        covered = {pair for p in self._points for pair in combinations(p, 2)}
        return [pair for pair in combinations(range(self._degree), 2)
                if pair not in covered]

    def all_multiplicities_odd(self) -> bool:
        return all(len(p) % 2 == 1 for p in self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return self._degree == other._degree and self._points == other._points

    def __hash__(self) -> int:
        return hash((self._degree, self._points))

    def __repr__(self) -> str:
        return f"IncidenceStructure({self._degree}, {[list(p) for p in self._points]!r})"


@dataclass(frozen=True)
class HomologyClass:
    """Coordinates (h; e_1..e_t) in the preferred blow-up basis."""

    h: int
    e: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(self.e))

    @property
    def blowup_count(self) -> int:
        return len(self.e)


def intersect(a: HomologyClass, b: HomologyClass) -> int:
    """Intersection pairing: a.h*b.h - sum(a.e[i]*b.e[i])."""
    if len(a.e) != len(b.e):
        raise DimensionMismatchError(
            f"classes live in different blow-ups: {len(a.e)} vs {len(b.e)} exceptional classes")
    return a.h * b.h - sum(x * y for x, y in zip(a.e, b.e))


def self_intersection(c: HomologyClass) -> int:
    return intersect(c, c)


def add_classes(a: HomologyClass, b: HomologyClass) -> HomologyClass:
    if len(a.e) != len(b.e):
        raise DimensionMismatchError(
            f"classes live in different blow-ups: {len(a.e)} vs {len(b.e)} exceptional classes")
    return HomologyClass(a.h + b.h, tuple(x + y for x, y in zip(a.e, b.e)))


def strict_transform_class(inc: IncidenceStructure, line: int) -> HomologyClass:
    """Class of a line after blowing up every listed point: h = 1 and one
    exceptional coefficient per point containing the line. Its
    self-intersection is 1 minus the number of points on the line."""
    if not 0 <= line < inc.degree:
        raise IndexError(f"line {line} outside 0..{inc.degree - 1}")
    return HomologyClass(1, tuple(1 if line in p else 0 for p in inc.points))


def total_transform_sum(inc: IncidenceStructure) -> HomologyClass:
    """Sum of all strict-transform classes: (d; m_1, ..., m_t) where m_i is
    the multiplicity of point i."""
    return HomologyClass(inc.degree, tuple(len(p) for p in inc.points))


def is_characteristic(c: HomologyClass) -> bool:
    """All coefficients odd in the preferred basis."""
    return c.h % 2 == 1 and all(x % 2 == 1 for x in c.e)


def characteristic_by_pairing(c: HomologyClass) -> bool:
    """The equivalent pairing criterion, checked literally against every
    basis class b: c.b == b.b mod 2. Kept independent of the coefficient
    test so the two can be played against each other."""
    t = len(c.e)
    basis = [HomologyClass(1, (0,) * t)]
    basis += [HomologyClass(0, tuple(1 if j == i else 0 for j in range(t))) for i in range(t)]
    return all((intersect(c, b) - intersect(b, b)) % 2 == 0 for b in basis)


def signature(blowup_count: int) -> int:
    """Signature of the intersection form after that many blow-ups: 1 - t."""
    if blowup_count < 0:
        raise ValueError("blow-up count must be >= 0")
    return 1 - blowup_count


def complete_with_double_points(inc: IncidenceStructure) -> IncidenceStructure:
    """Append every implicit double point as an explicit 2-line point, in
    ascending pair order. The result is fully covered."""
    if inc.fully_covered:
        return inc
    return IncidenceStructure(inc.degree, list(inc.points) + inc.uncovered_pairs())


def _require_odd_and_covered(inc: IncidenceStructure) -> None:
    for index, point in enumerate(inc.points):
        if len(point) % 2 == 0:
            raise HypothesisNotMetError(
                "a point of even multiplicity breaks the characteristic-class argument",
                f"point {index} has multiplicity {len(point)}")
    if not inc.fully_covered:
        pair = inc.uncovered_pairs()[0]
        raise HypothesisNotMetError(
            "uncovered line pairs are implicit double points, which are even",
            f"pair {pair} is covered by no listed point")


def lemma_km_residue(inc: IncidenceStructure) -> int:
    """Residue in 0..15 of sum_k (1 - p_k) - (1 - t) where p_k counts points
    on line k and t is the number of points.

    Zero is a pass and is necessary for a locally-flat realization; any
    nonzero residue certifies non-existence. Requires full coverage and
    odd multiplicities throughout (HypothesisNotMetError otherwise, naming
    the violating pair or point).
    """
    _require_odd_and_covered(inc)
    self_sum = sum(1 - inc.points_through(k) for k in range(inc.degree))
    return (self_sum - signature(inc.num_points)) % CONGRUENCE_MODULUS


@dataclass(frozen=True)
class PerLineParity:
    passed: bool
    failures: tuple[str, ...]


def per_line_parity(inc: IncidenceStructure) -> PerLineParity:
    """Cross-check that on each line the other d-1 lines split into even
    groups, one per point. This is a theorem under the preconditions, so a
    failure here flags an internal inconsistency, not bad input."""
    _require_odd_and_covered(inc)
    failures = []
    for line in range(inc.degree):
        groups = [len(p) - 1 for p in inc.points if line in p]
        if sum(groups) != inc.degree - 1:
            failures.append(f"line {line}: neighbor count {sum(groups)} != {inc.degree - 1}")
        for g in groups:
            if g % 2 != 0:
                failures.append(f"line {line}: odd group of size {g}")
    return PerLineParity(not failures, tuple(failures))


def weak_combinatorics_of(inc: IncidenceStructure) -> WeakCombinatorics:
    """Project the incidence pattern to multiplicity counts. Implicit
    double points are tallied into the multiplicity-2 count."""
    counts: dict[int, int] = {}
    for point in inc.points:
        size = len(point)
        counts[size] = counts.get(size, 0) + 1
    implicit = implicit_double_count(inc)
    if implicit:
        counts[2] = counts.get(2, 0) + implicit
    return WeakCombinatorics(inc.degree, counts)


def implicit_double_count(inc: IncidenceStructure) -> int:
    return comb(inc.degree, 2) - inc.covered_pair_count
