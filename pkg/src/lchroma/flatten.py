"""Partition a collection into at most omega flat classes.

Shapes are partially ordered by "projection nested inside a strictly lower
shape".  Any chain in that order is pairwise intersecting, so its length is
at most the clique number; assigning every shape the length of the longest
chain ending at it splits the collection into antichains, and an antichain
is exactly a flat collection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ChainExceedsOmega
from .geometry import LCollection, LShape, validate_collection


def nested_below(inner: LShape, outer: LShape) -> bool:
    """True iff inner's projection sits strictly inside outer's while inner
    is strictly taller (the comparable pairs of the containment order)."""
    return (
        outer.left < inner.left
        and inner.right < outer.right
        and inner.height > outer.height
    )


@dataclass(frozen=True)
class FlattenResult:
    classes: tuple[LCollection, ...]
    class_of: dict[str, int]


def flatten_partition(collection: LCollection, omega: int) -> FlattenResult:
    """Split `collection` into at most `omega` flat classes.

    Levels are computed by dynamic programming over shapes sorted by
    projection width: a nested shape is strictly narrower than its host, so
    all predecessors of a shape are processed before it.
    """
    shapes = list(collection.shapes)
    order = sorted(
        range(len(shapes)),
        key=lambda i: (shapes[i].right - shapes[i].left, shapes[i].left),
    )
    level = {}
    for i in order:
        best = 0
        for j in order:
            if j == i:
                break
            if nested_below(shapes[j], shapes[i]) and level[j] > best:
                best = level[j]
        level[i] = best + 1
    depth = max(level.values(), default=0)
    if depth > omega:
        raise ChainExceedsOmega(
            f"containment chain of length {depth} exceeds supplied omega={omega}"
        )
    buckets: list[list[LShape]] = [[] for _ in range(depth)]
    class_of = {}
    for i, s in enumerate(shapes):
        buckets[level[i] - 1].append(s)
        class_of[s.id] = level[i] - 1
    classes = tuple(validate_collection(bucket) for bucket in buckets)
    for cls in classes:
        assert cls.flat, "antichain of the containment order must be flat"
    return FlattenResult(classes=classes, class_of=class_of)
