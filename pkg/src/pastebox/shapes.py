"""Pasting shapes: finite box sets closed under corner faces and joins.

A pasting shape of ambient dimension d is a finite set of arity-d boxes that
contains every corner face of each of its boxes and the join of every
adjacent pair.  The empty set qualifies.  Shapes are immutable; every
operation returns a new shape.

Boxes are stored sorted, so two shapes are equal exactly when they have the
same dimension and the same box set, and hashing is canonical.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .boxes import Box, Vertex, check_box, corner_faces, try_join, within


class ShapeError(ValueError):
    """A box set that violates the closure conditions, or a bad operation."""


def _group_key(box: Box):
    # Joins can only happen between boxes with the same strict directions and
    # the same values on degenerate directions.
    strict = box.strict_dirs()
    degen = tuple((a, box.lo[a]) for a in box.degenerate_dirs())
    return strict, degen


@dataclass(frozen=True)
class PastingShape:
    """An immutable pasting shape.  Use close() or from_boxes() to build one."""

    dim: int
    boxes: tuple[Box, ...]

    @staticmethod
    def from_boxes(dim: int, boxes: Iterable[Box], validate: bool = True) -> "PastingShape":
        box_tuple = tuple(sorted(set(boxes)))
        shape = PastingShape(dim, box_tuple)
        if validate:
            shape.validate()
        return shape

    def validate(self) -> None:
        """Raise ShapeError unless the box set is closed under faces and joins."""
        if self.dim < 0:
            raise ShapeError("negative dimension")
        present = set(self.boxes)
        if len(present) != len(self.boxes):
            raise ShapeError("duplicate boxes")
        if list(self.boxes) != sorted(self.boxes):
            raise ShapeError("boxes are not in canonical order")
        groups: dict = {}
        for box in self.boxes:
            check_box(box, self.dim)
            for face in corner_faces(box):
                if face not in present:
                    raise ShapeError(f"missing corner face {face} of {box}")
            groups.setdefault(_group_key(box), []).append(box)
        for members in groups.values():
            for a, b in itertools.permutations(members, 2):
                joined = try_join(a, b)
                if joined is not None and joined not in present:
                    raise ShapeError(f"missing join {joined} of {a} and {b}")

    @cached_property
    def box_set(self) -> frozenset[Box]:
        return frozenset(self.boxes)

    @cached_property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(b.lo for b in self.boxes if b.is_vertex())

    @cached_property
    def vertex_set(self) -> frozenset[Vertex]:
        return frozenset(self.vertices)

    @cached_property
    def used_values(self) -> tuple[tuple[int, ...], ...]:
        """Per direction, the sorted coordinate values occurring in vertices."""
        cols: list[set[int]] = [set() for _ in range(self.dim)]
        for v in self.vertices:
            for a, value in enumerate(v):
                cols[a].add(value)
        return tuple(tuple(sorted(c)) for c in cols)

    @cached_property
    def max_box_dim(self) -> int:
        return max((b.dim for b in self.boxes), default=-1)

    def boxes_of_dim(self, k: int) -> tuple[Box, ...]:
        return tuple(b for b in self.boxes if b.dim == k)

    @cached_property
    def bounding_window(self) -> Optional[Box]:
        if not self.boxes:
            return None
        lo = tuple(min(v[a] for v in self.vertices) for a in range(self.dim))
        hi = tuple(max(v[a] for v in self.vertices) for a in range(self.dim))
        return Box(lo, hi)

    def canonical_digest(self) -> str:
        """Stable hex digest of the canonical box list, for reports."""
        payload = json.dumps([self.dim, [[list(b.lo), list(b.hi)] for b in self.boxes]])
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __contains__(self, box: Box) -> bool:
        return box in self.box_set

    def __len__(self) -> int:
        return len(self.boxes)


def close(dim: int, generators: Iterable[Box]) -> PastingShape:
    """Smallest pasting shape containing the given boxes."""
    present: set[Box] = set()
    groups: dict = {}
    queue: list[Box] = []

    def add(box: Box) -> None:
        if box in present:
            return
        check_box(box, dim)
        present.add(box)
        groups.setdefault(_group_key(box), []).append(box)
        queue.append(box)

    for g in generators:
        add(g)
    while queue:
        box = queue.pop()
        for face in corner_faces(box):
            add(face)
        for other in list(groups.get(_group_key(box), ())):
            for joined in (try_join(box, other), try_join(other, box)):
                if joined is not None:
                    add(joined)
    return PastingShape(dim, tuple(sorted(present)))


def union(*shapes: PastingShape) -> PastingShape:
    """Shape union: the closure of the combined box sets."""
    if not shapes:
        raise ShapeError("union of no shapes")
    dims = {s.dim for s in shapes}
    if len(dims) != 1:
        raise ShapeError(f"union across dimensions {sorted(dims)}")
    return close(dims.pop(), itertools.chain.from_iterable(s.boxes for s in shapes))


def intersect(first: PastingShape, second: PastingShape) -> PastingShape:
    """Plain box-set intersection.  Always closed, no re-closure needed."""
    if first.dim != second.dim:
        raise ShapeError("intersection across dimensions")
    common = first.box_set & second.box_set
    return PastingShape.from_boxes(first.dim, common, validate=False)


def truncate(shape: PastingShape, k: int) -> PastingShape:
    """Subshape of all boxes of dimension at most k."""
    return PastingShape.from_boxes(
        shape.dim, (b for b in shape.boxes if b.dim <= k), validate=False
    )


def restrict(shape: PastingShape, window: Box) -> PastingShape:
    """Subshape of all boxes lying inside the window (closed automatically)."""
    return PastingShape.from_boxes(
        shape.dim, (b for b in shape.boxes if within(b, window)), validate=False
    )


def hyperplane_slice(shape: PastingShape, pins: Mapping[int, int]) -> PastingShape:
    """Subshape of boxes pinned to the given value in each given direction."""
    for a in pins:
        if not 0 <= a < shape.dim:
            raise ShapeError(f"direction {a} out of range for dimension {shape.dim}")
    picked = (
        b
        for b in shape.boxes
        if all(b.lo[a] == b.hi[a] == value for a, value in pins.items())
    )
    return PastingShape.from_boxes(shape.dim, picked, validate=False)


def embed_axes(shape: PastingShape, target_dim: int, axes: tuple[int, ...]) -> PastingShape:
    """Re-express a shape in a larger ambient dimension.

    axes[i] names the target direction carrying source direction i; all other
    target coordinates are set to zero.
    """
    if len(axes) != shape.dim or len(set(axes)) != len(axes):
        raise ShapeError("axes must name each source direction once")
    if any(not 0 <= a < target_dim for a in axes):
        raise ShapeError("axis out of range")

    def send(v: Vertex) -> Vertex:
        out = [0] * target_dim
        for i, a in enumerate(axes):
            out[a] = v[i]
        return tuple(out)

    return PastingShape.from_boxes(
        target_dim, (Box(send(b.lo), send(b.hi)) for b in shape.boxes), validate=False
    )


def project_axes(shape: PastingShape, axes: tuple[int, ...]) -> PastingShape:
    """Drop all directions not named in axes.

    Every box must be degenerate in the dropped directions and all boxes must
    share the same values there, so the operation is inverse to embed_axes.
    """
    dropped = [a for a in range(shape.dim) if a not in axes]
    pinned_values: dict[int, int] = {}
    for box in shape.boxes:
        for a in dropped:
            if box.lo[a] != box.hi[a]:
                raise ShapeError(f"box {box} is strict in dropped direction {a}")
            if pinned_values.setdefault(a, box.lo[a]) != box.lo[a]:
                raise ShapeError(f"dropped direction {a} is not constant")

    def send(v: Vertex) -> Vertex:
        return tuple(v[a] for a in axes)

    return PastingShape.from_boxes(
        len(axes), (Box(send(b.lo), send(b.hi)) for b in shape.boxes), validate=False
    )


@dataclass(frozen=True)
class ShapeMap:
    """A map of pasting shapes, recorded on vertices.

    The vertex assignment must send every box of the source to a box of the
    target (taking lo and hi pointwise) and must preserve degeneracy: if a
    box is degenerate in direction a, so is its image.  Collapsing strict
    directions is allowed.
    """

    source: PastingShape
    target: PastingShape
    assignment: tuple[tuple[Vertex, Vertex], ...]

    @staticmethod
    def from_dict(
        source: PastingShape, target: PastingShape, mapping: Mapping[Vertex, Vertex]
    ) -> "ShapeMap":
        return ShapeMap(source, target, tuple(sorted(mapping.items())))

    @cached_property
    def _table(self) -> dict[Vertex, Vertex]:
        return dict(self.assignment)

    def apply(self, v: Vertex) -> Vertex:
        return self._table[v]

    def apply_box(self, box: Box) -> Box:
        return Box(self.apply(box.lo), self.apply(box.hi))

    def violations(self) -> list[str]:
        """Empty list when the map is valid, else human-readable reasons."""
        problems = []
        table = self._table
        for v in self.source.vertices:
            if v not in table:
                problems.append(f"vertex {v} has no image")
        if problems:
            return problems
        for box in self.source.boxes:
            image_lo, image_hi = table[box.lo], table[box.hi]
            for a, (l, h, il, ih) in enumerate(
                zip(box.lo, box.hi, image_lo, image_hi)
            ):
                if l == h and il != ih:
                    problems.append(
                        f"box {box} is degenerate in direction {a}, image is not"
                    )
                if il > ih:
                    problems.append(f"box {box} maps to inverted pair in direction {a}")
            image = Box(image_lo, image_hi)
            if image not in self.target.box_set and not problems:
                problems.append(f"box {box} maps to {image}, not a target box")
        return problems

    @cached_property
    def is_valid(self) -> bool:
        return not self.violations()

    def is_injective(self) -> bool:
        images = [self._table[v] for v in self.source.vertices]
        return len(set(images)) == len(images)

    def compose(self, other: "ShapeMap") -> "ShapeMap":
        """self after other (other's target must be self's source)."""
        if other.target != self.source:
            raise ShapeError("composition mismatch")
        mapping = {v: self.apply(other.apply(v)) for v in other.source.vertices}
        return ShapeMap.from_dict(other.source, self.target, mapping)


def identity_map(shape: PastingShape) -> ShapeMap:
    return ShapeMap.from_dict(shape, shape, {v: v for v in shape.vertices})


def inclusion_map(sub: PastingShape, ambient: PastingShape) -> ShapeMap:
    if not sub.box_set <= ambient.box_set:
        raise ShapeError("not a subshape")
    return ShapeMap.from_dict(sub, ambient, {v: v for v in sub.vertices})


def validate_shape_map(
    source: PastingShape, target: PastingShape, mapping: Mapping[Vertex, Vertex]
) -> ShapeMap:
    """Build a ShapeMap and raise ShapeError with the first violation, if any."""
    m = ShapeMap.from_dict(source, target, mapping)
    problems = m.violations()
    if problems:
        raise ShapeError(problems[0])
    return m
