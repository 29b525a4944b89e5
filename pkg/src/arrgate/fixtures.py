"""Reference incidence structures, constructed rather than hardcoded.

Each named fixture is built from its defining geometry so the tests can
validate the constructions themselves, and each also ships as a bundled
incidence file that must agree with its constructor.
"""

from __future__ import annotations

from importlib import resources

from .lattice import IncidenceStructure

FIXTURE_FILES = (
    "pencil3.inc",
    "fano.inc",
    "dual_hesse.inc",
    "d13_class_0.inc",
    "d13_class_1.inc",
)


def pencil(degree: int) -> IncidenceStructure:
    """All lines through a single common point. For one line there is no
    singular point at all."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree == 1:
        return IncidenceStructure(1, [])
    return IncidenceStructure(degree, [list(range(degree))])


def fano() -> IncidenceStructure:
    """The 7 lines of the order-2 projective plane: lines are the nonzero
    vectors of a 3-dimensional binary space, and three lines meet at a
    point exactly when the vectors sum to zero."""
    points = set()
    for u in range(1, 8):
        for v in range(u + 1, 8):
            w = u ^ v
            points.add(tuple(sorted((u - 1, v - 1, w - 1))))
    return IncidenceStructure(7, sorted(points))


def dual_hesse() -> IncidenceStructure:
    """9 lines with 12 triple points and no double points: lines are the
    points of the order-3 affine plane, indexed 3x + y, and the triple
    points are its 12 affine lines (4 directions, 3 parallels each)."""
    directions = [(0, 1), (1, 0), (1, 1), (1, 2)]
    points = set()
    for dx, dy in directions:
        for bx in range(3):
            for by in range(3):
                cells = tuple(sorted(((bx + t * dx) % 3) * 3 + (by + t * dy) % 3
                                     for t in range(3)))
                points.add(cells)
    return IncidenceStructure(9, sorted(points))


def build_fixture(name: str, degree: int | None = None) -> IncidenceStructure:
    """Construct a fixture by name. ``pencil`` needs a degree; the rest
    ignore it."""
    if name == "pencil":
        if degree is None:
            raise ValueError("pencil requires a degree")
        return pencil(degree)
    if name == "fano":
        return fano()
    if name == "dual_hesse":
        return dual_hesse()
    raise ValueError(f"unknown fixture {name!r}")


def fixture_file_text(filename: str) -> str:
    """Raw text of a bundled incidence file."""
    if filename not in FIXTURE_FILES:
        raise ValueError(f"unknown fixture file {filename!r}")
    return (resources.files("arrgate") / "fixtures" / filename).read_text(encoding="utf-8")
