"""Exact minimum identifying codes by branch and bound, plus the closed
forms for paths and cycles and the optimal chorded odd cycle construction.

The solver works on closed-neighbourhood bitmasks. It branches on the first
violation of the current partial code (lowest undominated vertex, else
lexicographically first unseparated pair), trying each candidate resolver in
ascending order with sibling exclusion, and prunes with a greedy packing of
pairwise disjoint resolver sets (each one needs its own new code vertex).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .checks import is_identifying
from .errors import (
    EdgeAdditionError,
    NotIdentifiableError,
    NotYIdentifiableError,
    SearchBudgetError,
)
from .graphs import Graph, closed_neighborhood_masks, find_closed_twins, linear_order

DEFAULT_NODE_BUDGET = 50_000_000


@dataclass(frozen=True)
class ExactResult:
    """Outcome of an exact search.

    optimal is False only when the node budget ran out; the code is then the
    best one found so far (never invalid).
    """

    size: int
    code: tuple[int, ...]
    nodes_explored: int
    optimal: bool


class _OutOfBudget(Exception):
    pass


class _FoundEnough(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class _Search:
    """One branch-and-bound run over a fixed (X, Y) instance."""

    def __init__(self, masks: list[int], xs: list[int], allowed: int):
        self.masks = masks
        self.xs = xs
        self.allowed = allowed
        self.nodes = 0
        self.budget = DEFAULT_NODE_BUDGET
        self.best_size = 0
        self.best_mask: int | None = None
        self.stop_first = False

    # -- violation bookkeeping -------------------------------------------

    def _violation_resolvers(self, code: int) -> list[int]:
        """Resolver masks of all current violations, in branching order.

        Undominated vertices come first (ascending), then unseparated pairs
        (lexicographic). Resolvers are not yet restricted to unused allowed
        vertices; callers intersect as needed.
        """
        masks = self.masks
        out = []
        groups: dict[int, list[int]] = {}
        for x in self.xs:
            sig = masks[x] & code
            if sig == 0:
                out.append(masks[x])
            groups.setdefault(sig, []).append(x)
        pairs = []
        for members in groups.values():
            for i in range(len(members)):
                for j in range(i + 1, len(members)):
                    pairs.append((members[i], members[j]))
        pairs.sort()
        out.extend(masks[a] ^ masks[b] for a, b in pairs)
        return out

    def greedy_code(self, start: int) -> int | None:
        """Complete `start` to a feasible code greedily, or None if stuck.

        Feasible completions exist whenever the full allowed set works, in
        which case this always terminates: fixed violations stay fixed as
        vertices are added.
        """
        code = start
        while True:
            resolvers = [
                r & self.allowed & ~code
                for r in self._violation_resolvers(code)
            ]
            if not resolvers:
                return code
            if any(r == 0 for r in resolvers):
                return None
            # Score every candidate by how many violations it settles.
            counts: dict[int, int] = {}
            for r in resolvers:
                for w in _bits(r):
                    counts[w] = counts.get(w, 0) + 1
            w = min(counts, key=lambda c: (-counts[c], c))
            code |= 1 << w
        # unreachable

    def _node(self, code: int, banned: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        resolvers = self._violation_resolvers(code)
        if not resolvers:
            size = code.bit_count()
            if self.best_mask is None or size < self.best_size:
                self.best_size = size
                self.best_mask = code
                if self.stop_first:
                    raise _FoundEnough
            return
        usable = self.allowed & ~code & ~banned
        first = resolvers[0] & usable
        if first == 0:
            return
        # Lower bound: greedily pack pairwise disjoint resolver sets.
        lb = 0
        used = 0
        for r in resolvers:
            r &= usable
            if r == 0:
                return
            if r & used == 0:
                lb += 1
                used |= r
        if code.bit_count() + lb >= self.best_size:
            return
        for w in _bits(first):
            self._node(code | (1 << w), banned)
            banned |= 1 << w

    def run(
        self,
        required: int,
        budget: int,
        cap: int | None = None,
        stop_first: bool = False,
    ) -> tuple[int | None, bool]:
        """Search below the cap (exclusive upper start). Returns
        (best_mask_or_None, completed_without_budget_exhaustion)."""
        self.budget = budget
        self.nodes = 0
        self.stop_first = stop_first
        self.best_mask = None
        if cap is None:
            greedy = self.greedy_code(required)
            if greedy is None:
                raise AssertionError("greedy stuck on a feasible instance")
            self.best_size = greedy.bit_count()
            self.best_mask = greedy
            if self.best_size == required.bit_count():
                return self.best_mask, True
        else:
            self.best_size = cap + 1
            greedy = self.greedy_code(required)
            if greedy is not None and greedy.bit_count() <= cap:
                return greedy, True
        try:
            self._node(required, 0)
        except _OutOfBudget:
            return self.best_mask, False
        except _FoundEnough:
            return self.best_mask, True
        return self.best_mask, True


def _feasibility_witness(
    masks: list[int], xs: list[int], allowed: int
) -> tuple[str, int | tuple[int, int]] | None:
    """Why even the full candidate set fails, or None when it works."""
    sigs = {}
    for x in xs:
        sig = masks[x] & allowed
        if sig == 0:
            return ("undominated", x)
        if sig in sigs:
            return ("unseparated", (sigs[sig], x))
        sigs[sig] = x
    return None


def _prepare(
    g: Graph, x: Iterable[int] | None, y: Iterable[int] | None
) -> tuple[list[int], list[int], int]:
    masks = closed_neighborhood_masks(g)
    xs = sorted(set(range(g.n) if x is None else x))
    ys = sorted(set(range(g.n) if y is None else y))
    for v in xs + ys:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    return masks, xs, _mask_of(ys)


def gamma_id_exact(
    g: Graph, node_budget: int = DEFAULT_NODE_BUDGET
) -> ExactResult:
    """Minimum identifying code of g.

    Raises NotIdentifiableError (with a witness twin pair) when none exists.
    A blown node budget yields ExactResult(optimal=False) holding the best
    verified code found.
    """
    twins = find_closed_twins(g)
    if twins:
        raise NotIdentifiableError(twins[0])
    masks, xs, allowed = _prepare(g, None, None)
    search = _Search(masks, xs, allowed)
    best, done = search.run(0, node_budget)
    assert best is not None
    return ExactResult(best.bit_count(), tuple(_bits(best)), search.nodes, done)


def min_xy_identifying_exact(
    g: Graph,
    x: Iterable[int],
    y: Iterable[int],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ExactResult:
    """Minimum code drawn from Y that identifies X.

    Raises NotYIdentifiableError (with a witness vertex or pair) when Y
    cannot identify X at all.
    """
    masks, xs, allowed = _prepare(g, x, y)
    why = _feasibility_witness(masks, xs, allowed)
    if why is not None:
        kind, witness = why
        reason = (
            "no candidate dominates the witness"
            if kind == "undominated"
            else "no candidate separates the witness pair"
        )
        raise NotYIdentifiableError(witness, reason)
    search = _Search(masks, xs, allowed)
    best, done = search.run(0, node_budget)
    assert best is not None
    return ExactResult(best.bit_count(), tuple(_bits(best)), search.nodes, done)


def min_identifying_containing(
    g: Graph,
    required: Iterable[int],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> ExactResult:
    """Minimum identifying code forced to contain the given vertices."""
    twins = find_closed_twins(g)
    if twins:
        raise NotIdentifiableError(twins[0])
    masks, xs, allowed = _prepare(g, None, None)
    search = _Search(masks, xs, allowed)
    best, done = search.run(_mask_of(required), node_budget)
    assert best is not None
    return ExactResult(best.bit_count(), tuple(_bits(best)), search.nodes, done)


def identifying_code_at_most(
    g: Graph, cap: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[int, ...] | None:
    """Some identifying code of size <= cap, or None when none exists.

    Raises SearchBudgetError when the budget runs out undecided, and
    NotIdentifiableError when the graph has closed twins.
    """
    twins = find_closed_twins(g)
    if twins:
        raise NotIdentifiableError(twins[0])
    masks, xs, allowed = _prepare(g, None, None)
    search = _Search(masks, xs, allowed)
    best, done = search.run(0, node_budget, cap=cap, stop_first=True)
    if best is None and not done:
        raise SearchBudgetError(
            f"undecided after {search.nodes} nodes (cap {cap})"
        )
    return None if best is None else tuple(_bits(best))


def gamma_id_closed_form(g: Graph) -> int:
    """Minimum identifying code size for a path or cycle, by formula.

    Paths: 1 for n=1, floor(n/2)+1 for n>=3 (n=2 has closed twins). Cycles:
    3 for n in {4, 5}, n/2 for even n>=6, (n+3)/2 for odd n>=7 (n=3 has
    closed twins). Raises ValueError for any other graph.
    """
    shape = linear_order(g)
    if shape is None:
        raise ValueError("closed form exists only for paths and cycles")
    kind, _ = shape
    n = g.n
    if kind == "path":
        if n == 1:
            return 1
        if n == 2:
            raise NotIdentifiableError((0, 1))
        return n // 2 + 1
    if n == 3:
        raise NotIdentifiableError((0, 1))
    if n in (4, 5):
        return 3
    if n % 2 == 0:
        return n // 2
    return (n + 3) // 2


def path_identifying_code(n: int) -> tuple[int, ...]:
    """An optimal identifying code of the path 0-1-...-(n-1).

    Size matches gamma_id_closed_form. Even vertices for odd n; for even
    n >= 6 one extra vertex near the far end replaces the pattern's slack;
    n=4 needs three consecutive vertices.
    """
    if n == 1:
        return (0,)
    if n == 2:
        raise NotIdentifiableError((0, 1))
    if n < 1:
        raise ValueError(f"path order must be >= 1, got {n}")
    if n % 2 == 1:
        return tuple(range(0, n, 2))
    if n == 4:
        return (0, 1, 2)
    return tuple(sorted(set(range(0, n, 2)) | {n - 3}))


def cycle_identifying_code(n: int) -> tuple[int, ...]:
    """An optimal identifying code of the cycle 0-1-...-(n-1)-0."""
    if n < 4:
        if n == 3:
            raise NotIdentifiableError((0, 1))
        raise ValueError(f"cycle order must be >= 3, got {n}")
    if n in (4, 5):
        return (0, 1, 2)
    if n % 2 == 0:
        return tuple(range(0, n, 2))
    return tuple(sorted(set(range(0, n, 2)) | {1}))


def _validate_chord(n: int, chord: tuple[int, int]) -> int:
    a, b = chord
    if not (0 <= a < n and 0 <= b < n) or a == b:
        raise EdgeAdditionError("range", f"chord {chord} invalid for n={n}")
    j = (b - a) % n
    dist = min(j, n - j)
    if dist == 1:
        raise EdgeAdditionError("exists", f"chord {chord} is a cycle edge")
    if dist == 2:
        raise EdgeAdditionError(
            "triangle", f"chord {chord} closes a triangle on the cycle"
        )
    return j


def odd_cycle_plus_chord_code(n: int, chord: tuple[int, int]) -> tuple[int, ...]:
    """An identifying code of size (n+1)/2 for an odd cycle plus one chord.

    The chord splits the cycle into an even and an odd subcycle. After
    normalising the chord to (0, j) with j odd, the code takes both chord
    ends, every second interior vertex of the even side starting next to 0,
    and every second interior vertex of the odd side starting one past j.
    The result is verified before being returned.
    """
    if n < 7 or n % 2 == 0:
        raise ValueError(f"need an odd cycle on >= 7 vertices, got n={n}")
    a, b = chord
    j = _validate_chord(n, chord)
    if j % 2 == 1:
        back = lambda x: (x + a) % n  # noqa: E731  rotation only
    else:
        j = n - j
        back = lambda x: (a - x) % n  # noqa: E731  rotation plus reflection
    pattern = {0, j}
    pattern.update(range(1, j - 1, 2))
    pattern.update(range(j + 2, n - 1, 2))
    code = tuple(sorted(back(x) for x in pattern))
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges.append((a, b))
    g = Graph(n, edges)
    if not is_identifying(g, code):
        raise AssertionError(
            f"chorded odd cycle pattern failed for n={n}, chord={chord}"
        )
    if len(code) > (n + 1) // 2:
        raise AssertionError("chorded odd cycle pattern exceeded (n+1)/2")
    return code
