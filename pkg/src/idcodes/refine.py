"""Greedy (X, Y)-codes by partition refinement.

The target set X starts as one block; every chosen candidate splits at
least one block (vertices inside vs outside its closed neighbourhood).
|X| - 1 splits suffice to reach singletons, which bounds the separating
code; at most one vertex of a fully separated X can still be undominated,
so one more candidate bounds the identifying variant by |X|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotSeparableError, NotYIdentifiableError
from .graphs import Graph, closed_neighborhood_masks


@dataclass(frozen=True)
class Partition:
    """Blocks of X grouped by code signature, each sorted, ordered lexicographically."""

    parts: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.parts)


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _grouped(masks: list[int], xs: list[int], code_mask: int) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for v in xs:
        groups.setdefault(masks[v] & code_mask, []).append(v)
    return sorted(groups.values())


def partition_by_code(
    g: Graph, x: Iterable[int], code: Iterable[int]
) -> Partition:
    """Partition of X into classes of equal code signature."""
    xs = sorted(set(x))
    masks = closed_neighborhood_masks(g)
    parts = _grouped(masks, xs, _mask_of(code))
    return Partition(tuple(tuple(p) for p in parts))


def _separating_steps(g: Graph, x: Iterable[int], y: Iterable[int]) -> list[int]:
    """Chronological separator choices; raises on an inseparable pair.

    Selection rule: take the lexicographically smallest non-singleton block,
    then the smallest candidate separating its two smallest members.
    """
    xs = sorted(set(x))
    y_mask = _mask_of(sorted(set(y)))
    masks = closed_neighborhood_masks(g)
    code_mask = 0
    chosen: list[int] = []
    while True:
        blocks = [p for p in _grouped(masks, xs, code_mask) if len(p) > 1]
        if not blocks:
            return chosen
        u1, u2 = blocks[0][0], blocks[0][1]
        cands = (masks[u1] ^ masks[u2]) & y_mask
        if cands == 0:
            raise NotSeparableError((u1, u2))
        w = (cands & -cands).bit_length() - 1
        chosen.append(w)
        code_mask |= 1 << w


def greedy_separating(
    g: Graph, x: Iterable[int], y: Iterable[int]
) -> tuple[int, ...]:
    """A Y-subset separating all pairs of X, of size at most |X| - 1.

    Raises NotSeparableError with a witness pair when X is not Y-separable.
    """
    xs = sorted(set(x))
    chosen = _separating_steps(g, xs, y)
    assert len(chosen) <= max(0, len(xs) - 1), "refinement exceeded |X|-1 picks"
    return tuple(sorted(chosen))


def greedy_xy_identifying(
    g: Graph, x: Iterable[int], y: Iterable[int]
) -> tuple[int, ...]:
    """A Y-subset identifying X (separating and dominating), size <= |X|.

    After full separation the signatures are pairwise distinct, so at most
    one X-vertex has the empty signature; one more candidate covers it.
    Raises NotSeparableError / NotYIdentifiableError with witnesses.
    """
    xs = sorted(set(x))
    chosen = _separating_steps(g, xs, y)
    masks = closed_neighborhood_masks(g)
    code_mask = _mask_of(chosen)
    bare = [v for v in xs if masks[v] & code_mask == 0]
    assert len(bare) <= 1, "two undominated vertices after separation"
    if bare:
        cands = masks[bare[0]] & _mask_of(sorted(set(y)))
        if cands == 0:
            raise NotYIdentifiableError(
                bare[0], "no candidate dominates the witness"
            )
        chosen.append((cands & -cands).bit_length() - 1)
    assert len(chosen) <= len(xs), "identifying refinement exceeded |X| picks"
    return tuple(sorted(chosen))
