"""Validity checking for identifying codes and their (X, Y) generalisation.

A code C dominates x when N[x] meets C, and separates x from y when some
code vertex lies in exactly one of the two closed neighbourhoods. C is an
identifying code when every vertex is dominated and every pair separated;
the (X, Y) variant restricts the vertices to identify to X (the code, drawn
from Y, must dominate X and separate all pairs inside X).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import VertexRangeError
from .graphs import Graph, VertexSet, closed_neighborhood_masks

UNDOMINATED = "undominated"
UNSEPARATED = "unseparated"


@dataclass(frozen=True)
class Violation:
    """One reason a candidate code fails.

    kind is "undominated" (vertices holds the lone vertex) or "unseparated"
    (vertices holds the offending pair, sorted).
    """

    kind: str
    vertices: tuple[int, ...]

    def __str__(self) -> str:
        if self.kind == UNDOMINATED:
            return f"undominated {self.vertices[0]}"
        return f"unseparated {self.vertices[0]} {self.vertices[1]}"


def _as_mask(vertices: Iterable[int], n: int, what: str) -> int:
    mask = 0
    for v in vertices:
        if not (0 <= v < n):
            raise VertexRangeError(f"{what} vertex {v} out of range for n={n}")
        mask |= 1 << v
    return mask


def code_neighborhood(g: Graph, code: Iterable[int], v: int) -> VertexSet:
    """N[v] restricted to the code: the signature of v under the code."""
    return g.closed_neighborhood(v) & frozenset(code)


def _signatures(g: Graph, code: Iterable[int], xs: list[int]) -> list[int]:
    code_mask = _as_mask(code, g.n, "code")
    masks = closed_neighborhood_masks(g)
    return [masks[x] & code_mask for x in xs]


def _target_list(g: Graph, x: Iterable[int] | None) -> list[int]:
    if x is None:
        return list(range(g.n))
    xs = sorted(set(x))
    _as_mask(xs, g.n, "target")
    return xs


def is_dominating(g: Graph, code: Iterable[int], x: Iterable[int] | None = None) -> bool:
    """True when every target vertex has a code vertex in its closed
    neighbourhood. Target defaults to all of V."""
    xs = _target_list(g, x)
    return all(sig != 0 for sig in _signatures(g, code, xs))


def unseparated_pairs(
    g: Graph, code: Iterable[int], x: Iterable[int] | None = None
) -> tuple[tuple[int, int], ...]:
    """All target pairs with identical signatures, sorted lexicographically."""
    xs = _target_list(g, x)
    sigs = _signatures(g, code, xs)
    groups: dict[int, list[int]] = {}
    for v, sig in zip(xs, sigs):
        groups.setdefault(sig, []).append(v)
    pairs = []
    for members in groups.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                pairs.append((members[i], members[j]))
    return tuple(sorted(pairs))


def violations(
    g: Graph, code: Iterable[int], x: Iterable[int] | None = None
) -> tuple[Violation, ...]:
    """Every failure of the code on the target set, undominated vertices
    first, each group in ascending order."""
    xs = _target_list(g, x)
    sigs = _signatures(g, code, xs)
    out = [
        Violation(UNDOMINATED, (v,))
        for v, sig in zip(xs, sigs)
        if sig == 0
    ]
    out.extend(
        Violation(UNSEPARATED, pair) for pair in unseparated_pairs(g, code, xs)
    )
    return tuple(out)


def is_identifying(g: Graph, code: Iterable[int]) -> bool:
    """True when the code is a full identifying code of g."""
    return len(violations(g, code)) == 0


def is_xy_identifying(
    g: Graph, x: Iterable[int], y: Iterable[int], code: Iterable[int]
) -> bool:
    """True when `code` identifies X using only candidates from Y.

    The code must be a subset of Y; anything else is a caller bug, reported
    as ValueError rather than a plain False.
    """
    code_set = sorted(set(code))
    y_set = set(y)
    stray = [c for c in code_set if c not in y_set]
    if stray:
        raise ValueError(f"code vertices {stray} are not in the candidate set Y")
    return len(violations(g, code_set, x)) == 0
