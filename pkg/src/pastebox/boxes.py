"""Axis-aligned integer boxes and the two elementary box operations.

A box is a pair of integer points (lo, hi) of the same arity with
lo[a] <= hi[a] in every direction.  Directions where lo[a] < hi[a] are
"strict"; the number of strict directions is the box's dimension.  A vertex
is a box of dimension 0.

The two operations everything else is built from:

* corner faces: boxes obtained by independently pinning each strict
  direction to its low end, its high end, or leaving it alone.  A box of
  dimension k has 3**k corner faces, itself included.

* joins: two boxes of equal dimension that agree on all degenerate
  coordinates and on all strict extents except one, where the first ends
  exactly where the second begins, can be merged end to end.
"""

from __future__ import annotations

import itertools
from typing import Iterator, NamedTuple, Optional

Vertex = tuple[int, ...]


class Box(NamedTuple):
    lo: Vertex
    hi: Vertex

    @property
    def arity(self) -> int:
        return len(self.lo)

    @property
    def dim(self) -> int:
        """Number of strict directions."""
        return sum(1 for l, h in zip(self.lo, self.hi) if l < h)

    def strict_dirs(self) -> tuple[int, ...]:
        return tuple(a for a, (l, h) in enumerate(zip(self.lo, self.hi)) if l < h)

    def degenerate_dirs(self) -> tuple[int, ...]:
        return tuple(a for a, (l, h) in enumerate(zip(self.lo, self.hi)) if l == h)

    def is_vertex(self) -> bool:
        return self.lo == self.hi


def check_box(box: Box, arity: int) -> None:
    """Raise ValueError unless box is a well formed box of the given arity."""
    if len(box.lo) != arity or len(box.hi) != arity:
        raise ValueError(f"box {box} does not have arity {arity}")
    for a, (l, h) in enumerate(zip(box.lo, box.hi)):
        if not (isinstance(l, int) and isinstance(h, int)):
            raise ValueError(f"box {box} has non-integer coordinates")
        if l < 0 or h < 0:
            raise ValueError(f"box {box} has negative coordinates")
        if l > h:
            raise ValueError(f"box {box} is inverted in direction {a}")


def vertex_box(v: Vertex) -> Box:
    return Box(v, v)


def corner_faces(box: Box) -> Iterator[Box]:
    """All corner faces of box, itself included (3**dim of them).

    A corner face picks, independently per strict direction, one of the three
    intervals (lo, lo), (lo, hi), (hi, hi).  Degenerate directions are left
    untouched.
    """
    strict = box.strict_dirs()
    lo, hi = box.lo, box.hi
    for choice in itertools.product(range(3), repeat=len(strict)):
        new_lo = list(lo)
        new_hi = list(hi)
        for a, c in zip(strict, choice):
            if c == 0:
                new_hi[a] = lo[a]
            elif c == 2:
                new_lo[a] = hi[a]
        yield Box(tuple(new_lo), tuple(new_hi))


def facets(box: Box) -> Iterator[Box]:
    """The 2*dim faces obtained by pinning exactly one strict direction."""
    for a in box.strict_dirs():
        lo, hi = list(box.lo), list(box.hi)
        hi[a] = box.lo[a]
        yield Box(tuple(lo), tuple(hi))
        lo2, hi2 = list(box.lo), list(box.hi)
        lo2[a] = box.hi[a]
        yield Box(tuple(lo2), tuple(hi2))


def try_join(first: Box, second: Box) -> Optional[Box]:
    """Join two boxes end to end, or return None if they are not adjacent.

    Adjacency requires equal dimension, identical degenerate coordinates
    (same directions, same values), identical strict extents except in at
    most one stacking direction where first ends exactly where second
    begins.  With zero stacking directions the boxes are equal and the join
    is the box itself.
    """
    if first.arity != second.arity:
        return None
    stacking = None
    for a, (l1, h1, l2, h2) in enumerate(
        zip(first.lo, first.hi, second.lo, second.hi)
    ):
        if l1 == h1 or l2 == h2:
            # degenerate in one must be degenerate in both, with equal value
            if not (l1 == h1 == l2 == h2):
                return None
        elif (l1, h1) == (l2, h2):
            continue
        elif h1 == l2:
            if stacking is not None:
                return None
            stacking = a
        else:
            return None
    if stacking is None:
        return first  # first == second
    return Box(first.lo, second.hi)


def within(box: Box, window: Box) -> bool:
    """True if box sits inside window, componentwise."""
    return all(
        wl <= l and h <= wh
        for l, h, wl, wh in zip(box.lo, box.hi, window.lo, window.hi)
    )
