"""Grids: shapes laid out on a rectangular lattice of coordinate lines.

A shape is a grid when an injective map from a standard rectangular block
(or from its boundary-and-below part, for the open case) exhibits it as a
lattice: all lattice boxes are present, every full-dimensional box of the
shape lies on the lattice, and every lower-dimensional box sits inside the
corner span pinned on at least one lattice line.

The witness is fully determined by the per-direction line values, and
detect_grid recovers it or proves there is none.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .boxes import Box, Vertex
from .shapes import PastingShape, ShapeError, ShapeMap, close, restrict, truncate


@dataclass(frozen=True)
class GridWitness:
    """Per-direction line values plus whether the grid is closed."""

    lines: tuple[tuple[int, ...], ...]
    closed: bool

    def __post_init__(self):
        for ls in self.lines:
            if len(ls) < 2:
                raise ShapeError(f"direction with fewer than two lines: {ls}")
            if list(ls) != sorted(set(ls)):
                raise ShapeError(f"line values not strictly increasing: {ls}")

    @property
    def dim(self) -> int:
        return len(self.lines)

    @property
    def extents(self) -> tuple[int, ...]:
        return tuple(len(ls) - 1 for ls in self.lines)

    @property
    def corners(self) -> Box:
        return Box(tuple(ls[0] for ls in self.lines), tuple(ls[-1] for ls in self.lines))

    def cell_windows(self) -> Iterator[Box]:
        for index in itertools.product(*(range(n) for n in self.extents)):
            lo = tuple(ls[j] for ls, j in zip(self.lines, index))
            hi = tuple(ls[j + 1] for ls, j in zip(self.lines, index))
            yield Box(lo, hi)

    def lattice_boxes(self, include_full: bool) -> Iterator[Box]:
        """All boxes over line value pairs; pinned somewhere unless include_full."""
        pairs = [
            [(u, v) for u, v in itertools.combinations_with_replacement(ls, 2)]
            for ls in self.lines
        ]
        for combo in itertools.product(*pairs):
            box = Box(tuple(c[0] for c in combo), tuple(c[1] for c in combo))
            if include_full or box.dim < self.dim:
                yield box


def standard_grid(extents: tuple[int, ...]) -> PastingShape:
    """The closed rectangular block: all boxes with 0 <= lo <= hi <= extents.

    Extent 0 directions are allowed (the block is then degenerate there);
    grid witnesses themselves always require extent at least 1.
    """
    if any(n < 0 for n in extents):
        raise ShapeError(f"extents must be non-negative, got {extents}")
    pairs = [
        [(u, v) for u in range(n + 1) for v in range(u, n + 1)] for n in extents
    ]
    boxes = (
        Box(tuple(c[0] for c in combo), tuple(c[1] for c in combo))
        for combo in itertools.product(*pairs)
    )
    return PastingShape.from_boxes(len(extents), boxes, validate=False)


def open_standard_grid(extents: tuple[int, ...]) -> PastingShape:
    return truncate(standard_grid(extents), len(extents) - 1)


def detect_grid(shape: PastingShape) -> Optional[GridWitness]:
    """Recover the unique grid witness, or None when the shape is not a grid.

    Candidate line values in direction a are the values carried by boxes
    degenerate in a and strict everywhere else; for a valid witness these
    are exactly the lines, so it suffices to validate the candidate.
    """
    d = shape.dim
    if not shape.boxes:
        return None
    if d == 0:
        only_vertex = PastingShape.from_boxes(0, [Box((), ())], validate=False)
        return GridWitness((), True) if shape == only_vertex else None

    all_dirs = tuple(range(d))
    candidates: list[set[int]] = [set() for _ in range(d)]
    for box in shape.boxes:
        strict = box.strict_dirs()
        if len(strict) == d - 1:
            missing = next(a for a in all_dirs if a not in strict)
            candidates[missing].add(box.lo[missing])
    if any(len(c) < 2 for c in candidates):
        return None
    lines = tuple(tuple(sorted(c)) for c in candidates)
    closed = any(box.dim == d for box in shape.boxes)
    witness = GridWitness(lines, closed)
    return witness if _witness_fits(shape, witness) else None


def _witness_fits(shape: PastingShape, witness: GridWitness) -> bool:
    d = shape.dim
    lines = witness.lines
    line_sets = [set(ls) for ls in lines]
    corners = witness.corners
    for box in shape.boxes:
        for a in range(d):
            if not (corners.lo[a] <= box.lo[a] and box.hi[a] <= corners.hi[a]):
                return False
        if box.dim == d:
            if not witness.closed:
                return False
            if not all(
                box.lo[a] in line_sets[a] and box.hi[a] in line_sets[a]
                for a in range(d)
            ):
                return False
        else:
            if not any(
                box.lo[a] == box.hi[a] and box.lo[a] in line_sets[a]
                for a in range(d)
            ):
                return False
    for lattice_box in witness.lattice_boxes(include_full=witness.closed):
        if lattice_box not in shape.box_set:
            return False
    return True


def grid_boundary(shape: PastingShape, witness: GridWitness) -> PastingShape:
    """Subshape of boxes pinned at an extreme line in some direction."""
    picked = []
    for box in shape.boxes:
        for a, ls in enumerate(witness.lines):
            if box.lo[a] == box.hi[a] and box.lo[a] in (ls[0], ls[-1]):
                picked.append(box)
                break
    return PastingShape.from_boxes(shape.dim, picked, validate=False)


def grid_cells(
    shape: PastingShape, witness: GridWitness
) -> list[tuple[Box, PastingShape]]:
    """Each unit cell window together with the shape's restriction to it."""
    return [(w, restrict(shape, w)) for w in witness.cell_windows()]


@dataclass(frozen=True)
class BoxdotSpec:
    """A rectangular block together with a marked inner window.

    extents give the block, window the marked sub-block in the same
    coordinates; the window must be strict in every direction.
    """

    extents: tuple[int, ...]
    window: Box

    def __post_init__(self):
        if len(self.window.lo) != len(self.extents):
            raise ShapeError("window arity does not match extents")
        for a, n in enumerate(self.extents):
            if not 0 <= self.window.lo[a] < self.window.hi[a] <= n:
                raise ShapeError(
                    f"window must be strict and inside the block, got {self.window}"
                )

    @property
    def dim(self) -> int:
        return len(self.extents)

    def complement_contains(self, box: Box) -> bool:
        """Membership in the window complement: clears the window on some axis."""
        return any(
            box.hi[a] <= self.window.lo[a] or box.lo[a] >= self.window.hi[a]
            for a in range(self.dim)
        )


@dataclass(frozen=True)
class BoxdotFamily:
    spec: BoxdotSpec
    ambient: PastingShape
    complement: PastingShape
    inner: PastingShape
    inner_boundary: PastingShape
    low_parts: tuple[PastingShape, ...]
    high_parts: tuple[PastingShape, ...]


def boxdot_family(spec: BoxdotSpec) -> BoxdotFamily:
    """The window complement inside a block, its halves, and the inner block.

    complement holds the boxes clearing the window on some axis; per axis the
    low (resp. high) part holds the boxes entirely on the low (resp. high)
    side; inner is everything within the window, and inner_boundary its
    window-frame-pinned part.
    """
    ambient = standard_grid(spec.extents)
    d = spec.dim
    complement_boxes = [b for b in ambient.boxes if spec.complement_contains(b)]
    low, high = [], []
    for a in range(d):
        low.append(
            PastingShape.from_boxes(
                d,
                (b for b in ambient.boxes if b.hi[a] <= spec.window.lo[a]),
                validate=False,
            )
        )
        high.append(
            PastingShape.from_boxes(
                d,
                (b for b in ambient.boxes if b.lo[a] >= spec.window.hi[a]),
                validate=False,
            )
        )
    inner = restrict(ambient, spec.window)
    frame_pinned = [
        b
        for b in inner.boxes
        if any(
            b.lo[a] == b.hi[a] and b.lo[a] in (spec.window.lo[a], spec.window.hi[a])
            for a in range(d)
        )
    ]
    return BoxdotFamily(
        spec=spec,
        ambient=ambient,
        complement=PastingShape.from_boxes(d, complement_boxes, validate=False),
        inner=inner,
        inner_boundary=PastingShape.from_boxes(d, frame_pinned, validate=False),
        low_parts=tuple(low),
        high_parts=tuple(high),
    )


@dataclass(frozen=True)
class GridMap:
    """Injective map out of a standard block, given per direction by values.

    images[a] lists the strictly increasing values taken in direction a; the
    source block has extent len(images[a]) - 1 there.  The vertex assignment
    is componentwise lookup.
    """

    images: tuple[tuple[int, ...], ...]
    target: PastingShape

    def __post_init__(self):
        if len(self.images) != self.target.dim:
            raise ShapeError("images arity does not match target dimension")
        for vals in self.images:
            if not vals or list(vals) != sorted(set(vals)):
                raise ShapeError(f"image values must be strictly increasing: {vals}")

    @property
    def extents(self) -> tuple[int, ...]:
        return tuple(len(vals) - 1 for vals in self.images)

    def apply_index(self, index: tuple[int, ...]) -> Vertex:
        return tuple(vals[i] for vals, i in zip(self.images, index))

    def lattice_boxes(self) -> Iterator[Box]:
        pairs = [
            [(u, v) for u, v in itertools.combinations_with_replacement(vals, 2)]
            for vals in self.images
        ]
        for combo in itertools.product(*pairs):
            yield Box(tuple(c[0] for c in combo), tuple(c[1] for c in combo))

    @cached_property
    def is_valid(self) -> bool:
        """True when every lattice box lands in the target."""
        return all(b in self.target.box_set for b in self.lattice_boxes())

    def covers_top_boxes(self) -> bool:
        d = self.target.dim
        value_sets = [set(vals) for vals in self.images]
        return all(
            all(b.lo[a] in value_sets[a] and b.hi[a] in value_sets[a] for a in range(d))
            for b in self.target.boxes
            if b.dim == d
        )

    def as_shape_map(self) -> ShapeMap:
        source = standard_grid(self.extents)
        mapping = {
            idx: self.apply_index(idx)
            for idx in itertools.product(*(range(n + 1) for n in self.extents))
        }
        return ShapeMap.from_dict(source, self.target, mapping)

    def image_shape(self) -> PastingShape:
        return close(self.target.dim, self.lattice_boxes())


def is_d_shaping(f: GridMap) -> bool:
    """Valid injective block map whose lattice carries every top box."""
    if any(n < 1 for n in f.extents):
        return False
    return f.is_valid and f.covers_top_boxes()


@dataclass(frozen=True)
class GridPullback:
    """Levelwise pullback square of two injective block maps."""

    first: GridMap
    second: GridMap
    common_values: tuple[tuple[int, ...], ...]
    apex_extents: tuple[int, ...]
    into_first: GridMap
    into_second: GridMap

    @property
    def diagonal(self) -> GridMap:
        return GridMap(self.common_values, self.first.target)


def grid_pullback(first: GridMap, second: GridMap) -> GridPullback:
    """Intersect two block maps direction by direction.

    Raises ShapeError when some direction has no common value, since the
    apex would not be a block.
    """
    if first.target != second.target:
        raise ShapeError("pullback of maps into different shapes")
    common = []
    for a, (fv, gv) in enumerate(zip(first.images, second.images)):
        shared = tuple(sorted(set(fv) & set(gv)))
        if not shared:
            raise ShapeError(f"no common values in direction {a}")
        common.append(shared)
    common_values = tuple(common)
    into_first = GridMap(
        tuple(
            tuple(fv.index(value) for value in shared)
            for fv, shared in zip(first.images, common_values)
        ),
        standard_grid(first.extents),
    )
    into_second = GridMap(
        tuple(
            tuple(gv.index(value) for value in shared)
            for gv, shared in zip(second.images, common_values)
        ),
        standard_grid(second.extents),
    )
    return GridPullback(
        first=first,
        second=second,
        common_values=common_values,
        apex_extents=tuple(len(shared) - 1 for shared in common_values),
        into_first=into_first,
        into_second=into_second,
    )
