"""Exhaustive enumeration of only-triple-point incidence structures.

These are exactly the pair-balanced triple systems on d lines. The
generator is an orderly search: blocks are appended in increasing order by
always covering the least uncovered pair, and a partial system is pruned
unless it is canonical, i.e. lexicographically least among all line
relabelings of itself. Removing the last block of a canonical system
leaves a canonical system, so every canonical complete system survives the
pruning, and each isomorphism class is emitted exactly once, already in
canonical form.

The canonicity test exploits a structural fact: a relabeled image that is
not larger must agree with the fixed initial star {(0,1,2), (0,3,4), ...}
on its first (d-1)/2 positions, which forces the preimage of line 0 to be
a line lying in that many blocks and pins the remaining lines into
partner pairs. Seeding the test with those star maps keeps it cheap even
while a partial system still has thousands of star symmetries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Callable, Iterable, Sequence

from .errors import BudgetExceededError, DegreeMismatchError
from .lattice import IncidenceStructure

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_MAX_DEGREE = 15

Block = tuple[int, int, int]


# ---------------------------------------------------------------------------
# canonicity of star-prefixed block lists


def canonical_star(degree: int) -> list[Block]:
    """Blocks through line 0 in canonical position: (0,1,2), (0,3,4), ..."""
    return [(0, odd, odd + 1) for odd in range(1, degree - 1, 2)]


def _star_partners(blocks: Sequence[Block], center: int, degree: int) -> list[int] | None:
    """partner[x] = third line of the block {center, x, .}, or None unless
    the center lies in exactly (degree-1)/2 blocks."""
    partner = [-1] * degree
    count = 0
    for b in blocks:
        if center in b:
            count += 1
            rest = [x for x in b if x != center]
            partner[rest[0]] = rest[1]
            partner[rest[1]] = rest[0]
    if count != (degree - 1) // 2:
        return None
    return partner


class _StarSeededSearch:
    """Shared machinery for canonicity testing and lex-minimisation of
    sorted triple-block lists that begin with the canonical star.

    A relabeling sigma is built lazily while walking image positions past
    the star. Assigning sigma[x] = v forces sigma[partner(x)] onto v's
    star partner (v+1 for odd v, v-1 for even v), which encodes agreement
    with the canonical star without enumerating its symmetries up front.
    """

    def __init__(self, blocks: Sequence[Block], degree: int, center: int,
                 partner: Sequence[int]):
        self.degree = degree
        self.partner = partner
        self.rest = [b for b in blocks if center not in b]
        self.sigma = [-1] * degree
        self.used = [False] * degree
        self.sigma[center] = 0
        self.used[0] = True

    # -- assignment with partner propagation ------------------------------

    def assign(self, x: int, v: int, trail: list[int]) -> bool:
        sigma, used = self.sigma, self.used
        if v <= 0 or v >= self.degree or used[v]:
            return False
        if sigma[x] != -1:
            return sigma[x] == v
        y = self.partner[x]
        w = v + 1 if v % 2 == 1 else v - 1
        if sigma[y] != -1:
            if sigma[y] != w:
                return False
        elif used[w]:
            return False
        sigma[x] = v
        used[v] = True
        trail.append(x)
        if sigma[y] == -1:
            sigma[y] = w
            used[w] = True
            trail.append(y)
        return True

    def undo(self, trail: list[int]) -> None:
        sigma, used = self.sigma, self.used
        for x in reversed(trail):
            used[sigma[x]] = False
            sigma[x] = -1
        trail.clear()

    def assign_many(self, pairs: Iterable[tuple[int, int]], trail: list[int]) -> bool:
        for x, v in pairs:
            if not self.assign(x, v, trail):
                return False
        return True

    # -- candidate images for one block ------------------------------------

    def exact_trails(self, block: Block, target: Block):
        """Yield trails making the sorted image of ``block`` equal target.
        The caller must undo each yielded trail before resuming."""
        sigma = self.sigma
        mapped = [sigma[x] for x in block if sigma[x] != -1]
        if any(v not in target for v in mapped):
            return
        free = [x for x in block if sigma[x] == -1]
        need = [v for v in target if v not in mapped]
        if len(need) != len(free):
            return
        if not free:
            yield []
            return
        for perm in permutations(need):
            trail: list[int] = []
            if self.assign_many(zip(free, perm), trail):
                yield trail
            else:
                self.undo(trail)

    def smaller_trail_exists(self, block: Block, target: Block) -> bool:
        """True when some assignment gives this block a sorted image
        strictly below ``target``. Leaves the state untouched."""
        sigma = self.sigma
        mapped = sorted(sigma[x] for x in block if sigma[x] != -1)
        free = [x for x in block if sigma[x] == -1]
        if not free:
            return tuple(mapped) < target
        unused = [v for v in range(1, self.degree) if not self.used[v]]
        # value combinations ascend lexicographically and merging with the
        # fixed mapped values preserves that order, so the first image at
        # or past the target ends the scan
        for values in combinations(unused, len(free)):
            image = tuple(sorted(mapped + list(values)))
            if image >= target:
                break
            for perm in permutations(values):
                trail: list[int] = []
                if self.assign_many(zip(free, perm), trail):
                    self.undo(trail)
                    return True
                self.undo(trail)
        return False


def _smaller_image_exists(blocks: Sequence[Block], degree: int) -> bool:
    """True when some relabeling makes the sorted block list strictly
    smaller. ``blocks`` must be sorted and start with the canonical star."""
    s = (degree - 1) // 2
    tail = list(blocks[s:])
    if not tail:
        return False

    line_degree = [0] * degree
    for b in blocks:
        for x in b:
            line_degree[x] += 1

    for center in range(degree):
        if line_degree[center] != s:
            continue
        partner = _star_partners(blocks, center, degree)
        if partner is None:
            continue
        search = _StarSeededSearch(blocks, degree, center, partner)
        if _seeded_dfs(search, tail, 0, [False] * len(search.rest)):
            return True
    return False


def _seeded_dfs(search: _StarSeededSearch, tail: list[Block], pos: int,
                consumed: list[bool]) -> bool:
    """Walk image positions past the star. A strictly smaller image block
    wins outright: whatever the remaining blocks map to, the sorted image
    list is then smaller than the reference. Equal blocks recurse."""
    if pos == len(tail):
        return False  # ran the whole list in equality: an automorphism
    target = tail[pos]
    rest = search.rest
    for bi in range(len(rest)):
        if consumed[bi]:
            continue
        block = rest[bi]
        if search.smaller_trail_exists(block, target):
            return True
        for trail in search.exact_trails(block, target):
            consumed[bi] = True
            hit = _seeded_dfs(search, tail, pos + 1, consumed)
            consumed[bi] = False
            search.undo(trail)
            if hit:
                return True
    return False


def is_canonical_blocks(blocks: Sequence[Block], degree: int) -> bool:
    """Canonicity of a sorted block list beginning with the canonical
    star: no relabeling produces a strictly smaller sorted list."""
    return not _smaller_image_exists(blocks, degree)


# ---------------------------------------------------------------------------
# orderly generation


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    complete_candidates: int
    wall_time: float


@dataclass(frozen=True)
class EnumerationCertificate:
    """All isomorphism classes of only-triple-point structures for one
    degree, in canonical form, plus how the search went. ``reason`` is set
    when the listing is empty for an arithmetic reason."""

    degree: int
    structures: tuple[IncidenceStructure, ...]
    stats: SearchStats
    reason: str | None = None


class _Budget:
    __slots__ = ("node_limit", "time_limit", "deadline", "nodes")

    def __init__(self, node_limit: int, time_limit: float | None):
        self.node_limit = node_limit
        self.time_limit = time_limit
        self.deadline = time.monotonic() + time_limit if time_limit else None
        self.nodes = 0

    def spend(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise BudgetExceededError("node", self.node_limit, self.nodes)
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceededError("time", self.time_limit, self.nodes)


def _pair_index_table(degree: int) -> list[list[int]]:
    table = [[0] * degree for _ in range(degree)]
    idx = 0
    for i in range(degree):
        for j in range(i + 1, degree):
            table[i][j] = table[j][i] = idx
            idx += 1
    return table


def _pair_from_index(degree: int, idx: int) -> tuple[int, int]:
    for i in range(degree):
        row = degree - 1 - i
        if idx < row:
            return i, i + 1 + idx
        idx -= row
    raise IndexError(idx)


def _covered_mask(blocks: Iterable[Block], pair_index: list[list[int]]) -> int:
    mask = 0
    for a, b, c in blocks:
        mask |= (1 << pair_index[a][b]) | (1 << pair_index[a][c]) | (1 << pair_index[b][c])
    return mask


def _search(degree: int, blocks: list[Block], covered: int, start_hint: int,
            pair_index: list[list[int]], budget: _Budget,
            sink: Callable[[list[Block]], None]) -> None:
    """Depth-first orderly extension: cover the least uncovered pair every
    way that stays canonical. Complete systems reaching ``sink`` are
    canonical representatives of their class."""
    total = comb(degree, 2)
    idx = start_hint
    while idx < total and (covered >> idx) & 1:
        idx += 1
    if idx == total:
        budget.spend()
        sink(list(blocks))
        return
    x, y = _pair_from_index(degree, idx)
    row_x = pair_index[x]
    row_y = pair_index[y]
    for z in range(y + 1, degree):
        if (covered >> row_x[z]) & 1 or (covered >> row_y[z]) & 1:
            continue
        budget.spend()
        blocks.append((x, y, z))
        if is_canonical_blocks(blocks, degree):
            child = covered | (1 << idx) | (1 << row_x[z]) | (1 << row_y[z])
            _search(degree, blocks, child, idx + 1, pair_index, budget, sink)
        blocks.pop()


def _explore_root(args: tuple[int, list[Block], int, float | None]
                  ) -> tuple[list[list[Block]], int]:
    """Worker entry point: exhaust the subtree under one canonical partial
    system, returning the complete systems found and nodes spent."""
    degree, root, node_limit, time_limit = args
    pair_index = _pair_index_table(degree)
    covered = _covered_mask(root, pair_index)
    budget = _Budget(node_limit, time_limit)
    found: list[list[Block]] = []
    _search(degree, list(root), covered, 0, pair_index, budget, found.append)
    return found, budget.nodes


def enumerate_triple_systems(degree: int, node_budget: int = DEFAULT_NODE_BUDGET,
                             time_budget: float | None = None, workers: int = 1,
                             max_degree: int = DEFAULT_MAX_DEGREE) -> EnumerationCertificate:
    """All isomorphism classes of fully covered all-triple incidence
    structures of the given degree, canonical forms in sorted order.

    Degrees not congruent to 1 or 3 mod 6 yield an empty certificate with
    reason "divisibility". Results and node counts are identical for any
    worker count; workers only split the subtrees under the star. Budgets
    bound each subtree exploration and raise BudgetExceededError without
    emitting partial listings.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if degree > max_degree:
        raise ValueError(f"degree {degree} beyond supported cap {max_degree}")
    started = time.perf_counter()

    def finish(structures: tuple[IncidenceStructure, ...], nodes: int,
               candidates: int, reason: str | None = None) -> EnumerationCertificate:
        stats = SearchStats(nodes=nodes, complete_candidates=candidates,
                            wall_time=time.perf_counter() - started)
        return EnumerationCertificate(degree, structures, stats, reason=reason)

    if degree % 6 not in (1, 3):
        return finish((), 0, 0, reason="divisibility")
    if degree == 1:
        return finish((IncidenceStructure(1, []),), 1, 1)

    pair_index = _pair_index_table(degree)
    star = canonical_star(degree)
    covered = _covered_mask(star, pair_index)
    nodes = 1  # the star root

    if covered == (1 << comb(degree, 2)) - 1:
        # degree 3: the star alone is already complete
        return finish((IncidenceStructure(degree, star),), nodes, 1)

    # expand the first level here so node accounting and work splitting are
    # identical for every worker count
    idx = 0
    while (covered >> idx) & 1:
        idx += 1
    x, y = _pair_from_index(degree, idx)
    roots: list[list[Block]] = []
    for z in range(y + 1, degree):
        if (covered >> pair_index[x][z]) & 1 or (covered >> pair_index[y][z]) & 1:
            continue
        nodes += 1
        candidate = star + [(x, y, z)]
        if is_canonical_blocks(candidate, degree):
            roots.append(candidate)

    all_blocks: list[list[Block]] = []
    jobs = [(degree, root, node_budget, time_budget) for root in roots]
    if workers <= 1 or len(jobs) <= 1:
        results = map(_explore_root, jobs)
        for found, spent in results:
            all_blocks.extend(found)
            nodes += spent
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            for found, spent in pool.map(_explore_root, jobs):
                all_blocks.extend(found)
                nodes += spent

    all_blocks.sort()
    structures = tuple(IncidenceStructure(degree, blocks) for blocks in all_blocks)
    return finish(structures, nodes, len(all_blocks))


# ---------------------------------------------------------------------------
# isomorphism and canonical forms


def _line_profile(inc: IncidenceStructure, line: int) -> tuple[int, ...]:
    return tuple(sorted(len(p) for p in inc.points if line in p))


def are_isomorphic(a: IncidenceStructure, b: IncidenceStructure) -> tuple[int, ...] | None:
    """A line relabeling carrying a's points onto b's, or None.

    Backtracks over line images, pruned by per-line point-size profiles
    and pair-cover consistency against already-mapped lines. Intended for
    small degrees.
    """
    if a.degree != b.degree:
        raise DegreeMismatchError(f"degrees differ: {a.degree} vs {b.degree}")
    if sorted(len(p) for p in a.points) != sorted(len(p) for p in b.points):
        return None
    d = a.degree
    profiles_a = [_line_profile(a, k) for k in range(d)]
    profiles_b = [_line_profile(b, k) for k in range(d)]
    if sorted(profiles_a) != sorted(profiles_b):
        return None

    points_b = {tuple(p) for p in b.points}
    pair_size_a: dict[tuple[int, int], int] = {}
    for p in a.points:
        for i, j in combinations(p, 2):
            pair_size_a[(i, j)] = len(p)
    pair_size_b: dict[tuple[int, int], int] = {}
    for p in b.points:
        for i, j in combinations(p, 2):
            pair_size_b[(i, j)] = len(p)

    # rarer profiles first shrinks the branching factor
    rarity = {prof: sum(1 for q in profiles_a if q == prof) for prof in set(profiles_a)}
    order = sorted(range(d), key=lambda k: (rarity[profiles_a[k]], k))
    sigma = [-1] * d
    used = [False] * d

    def consistent(k: int) -> bool:
        sk = sigma[k]
        for other in range(d):
            so = sigma[other]
            if so == -1 or other == k:
                continue
            key = (other, k) if other < k else (k, other)
            img = (so, sk) if so < sk else (sk, so)
            if pair_size_a.get(key, 0) != pair_size_b.get(img, 0):
                return False
        return True

    def backtrack(depth: int) -> bool:
        if depth == d:
            image = {tuple(sorted(sigma[x] for x in p)) for p in a.points}
            return image == points_b
        k = order[depth]
        prof = profiles_a[k]
        for v in range(d):
            if used[v] or profiles_b[v] != prof:
                continue
            sigma[k] = v
            used[v] = True
            if consistent(k) and backtrack(depth + 1):
                return True
            sigma[k] = -1
            used[v] = False
        return False

    if backtrack(0):
        return tuple(sigma)
    return None


def _apply_relabeling(sigma: Sequence[int],
                      points: Iterable[tuple[int, ...]]) -> list[tuple[int, ...]]:
    return sorted(tuple(sorted(sigma[x] for x in p)) for p in points)


def canonical_form(inc: IncidenceStructure) -> IncidenceStructure:
    """Relabel lines so the point list (points sorted, each point sorted)
    is lexicographically least over all relabelings.

    Fully covered all-triple structures use the star-seeded machinery;
    other shapes go through a generic branch and bound meant for small
    structures. Canonicalizing is idempotent.
    """
    if not inc.points:
        return inc
    d = inc.degree
    if inc.fully_covered and d >= 3 and all(len(p) == 3 for p in inc.points):
        blocks = sorted(tuple(p) for p in inc.points)  # type: ignore[arg-type]
        current = _star_aligned_form(blocks, d)
        while _smaller_image_exists(current, d):
            current = _best_star_image(current, d)
        return IncidenceStructure(d, current)
    return IncidenceStructure(d, _lexmin_generic(inc))


def _star_aligned_form(blocks: list[Block], degree: int) -> list[Block]:
    """Some relabeling whose sorted image starts with the canonical star."""
    line_degree = [0] * degree
    for b in blocks:
        for x in b:
            line_degree[x] += 1
    s = (degree - 1) // 2
    center = next(k for k in range(degree) if line_degree[k] == s)
    sigma = [-1] * degree
    sigma[center] = 0
    label = 1
    for b in blocks:
        if center in b:
            for x in b:
                if x != center:
                    sigma[x] = label
                    label += 1
    for x in range(degree):
        if sigma[x] == -1:
            sigma[x] = label
            label += 1
    return _apply_relabeling(sigma, blocks)  # type: ignore[return-value]


def _best_star_image(blocks: list[Block], degree: int) -> list[Block]:
    """The least image over relabelings sending one full star onto the
    canonical star, provided it improves on ``blocks``. Exhaustive over
    centers, pair orderings and pair flips; fine for small degrees."""
    s = (degree - 1) // 2
    line_degree = [0] * degree
    for b in blocks:
        for x in b:
            line_degree[x] += 1
    best = list(blocks)
    improved = False
    for center in range(degree):
        if line_degree[center] != s:
            continue
        partner = _star_partners(blocks, center, degree)
        if partner is None:
            continue
        pairs = []
        seen = set()
        for x in range(degree):
            if x == center or x in seen:
                continue
            seen.add(x)
            seen.add(partner[x])
            pairs.append((x, partner[x]))
        for ordering in permutations(range(len(pairs))):
            for flips in range(1 << len(pairs)):
                sigma = [-1] * degree
                sigma[center] = 0
                label = 1
                for slot, pi in enumerate(ordering):
                    x, y = pairs[pi]
                    if (flips >> slot) & 1:
                        x, y = y, x
                    sigma[x] = label
                    sigma[y] = label + 1
                    label += 2
                image = _apply_relabeling(sigma, blocks)
                if image < best:
                    best = image  # type: ignore[assignment]
                    improved = True
        if improved:
            break  # strict descent; the caller loops until canonical
    return best  # type: ignore[return-value]


def _lexmin_generic(inc: IncidenceStructure) -> list[tuple[int, ...]]:
    """Branch-and-bound lex-least image for small mixed structures.

    Positions of the sorted image list are filled in nondecreasing order
    while comparing against the best complete image found so far. Lines
    appearing in a single point only contribute a value set, never an
    ordering, which keeps one-block structures like pencils trivial.
    """
    d = inc.degree
    blocks = [tuple(p) for p in inc.points]
    n = len(blocks)
    appearances = [0] * d
    for b in blocks:
        for x in b:
            appearances[x] += 1

    best = [_apply_relabeling(list(range(d)), blocks)]
    sigma = [-1] * d
    used = [False] * d

    def options(block: tuple[int, ...], floor: tuple[int, ...] | None,
                bound: tuple[int, ...] | None):
        """Sorted images of ``block`` with floor <= image (and <= bound
        when bound is set), each with the assignments that realize it."""
        mapped = sorted(sigma[x] for x in block if sigma[x] != -1)
        shared = [x for x in block if sigma[x] == -1 and appearances[x] > 1]
        solitary = [x for x in block if sigma[x] == -1 and appearances[x] == 1]
        k = len(shared) + len(solitary)
        unused_vals = [v for v in range(d) if not used[v]]
        for values in combinations(unused_vals, k):
            image = tuple(sorted(mapped + list(values)))
            if bound is not None and image > bound:
                break  # combinations ascend and so do their images
            if floor is not None and image < floor:
                continue
            if not shared:
                yield image, list(zip(solitary, values))
                continue
            emitted = set()
            for chosen in permutations(values, len(shared)):
                if chosen in emitted:
                    continue
                emitted.add(chosen)
                leftover = [v for v in values if v not in chosen]
                yield image, list(zip(shared, chosen)) + list(zip(solitary, leftover))

    def dfs(pos: int, consumed: list[bool], prefix: list[tuple[int, ...]],
            tight: bool) -> None:
        if pos == n:
            if prefix < best[0]:
                best[0] = list(prefix)
            return
        floor = prefix[-1] if prefix else None
        for bi in range(n):
            if consumed[bi]:
                continue
            bound = best[0][pos] if tight else None
            for image, trail in options(blocks[bi], floor, bound):
                still_tight = tight and image == bound
                for x, v in trail:
                    sigma[x] = v
                    used[v] = True
                consumed[bi] = True
                prefix.append(image)
                dfs(pos + 1, consumed, prefix, still_tight)
                prefix.pop()
                consumed[bi] = False
                for x, v in trail:
                    sigma[x] = -1
                    used[v] = False

    dfs(0, [False] * n, [], True)
    return best[0]
