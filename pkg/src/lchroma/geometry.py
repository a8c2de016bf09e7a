"""Exact-coordinate grounded L-shapes and their collections.

A shape is an upside-down "L": a vertical segment from (left, 0) up to the
corner (left, height), joined to a horizontal segment from the corner to
(right, height).  All coordinates are exact rationals (`int` or
`fractions.Fraction`); nothing in the package ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import DistinctnessViolation, InputError, NonPositiveHeight

Coord = Union[int, Fraction]


def as_coord(value) -> Coord:
    """Normalize a number (or an {"n":..,"d":..} mapping) to an exact coordinate."""
    if isinstance(value, bool):
        raise InputError(f"not a coordinate: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, dict):
        try:
            return as_coord(Fraction(int(value["n"]), int(value["d"])))
        except (KeyError, ZeroDivisionError, TypeError) as exc:
            raise InputError(f"bad rational object: {value!r}") from exc
    if isinstance(value, str):
        return as_coord(Fraction(value))
    raise InputError(f"not an exact coordinate: {value!r}")


def coord_to_json(value: Coord):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return {"n": value.numerator, "d": value.denominator}
    return value


def midpoint(a: Coord, b: Coord) -> Coord:
    if isinstance(a, int) and isinstance(b, int):
        s = a + b
        return s // 2 if s % 2 == 0 else Fraction(s, 2)
    return as_coord((Fraction(a) + Fraction(b)) / 2)


@dataclass(frozen=True)
class LShape:
    """One grounded L-shape; `left < right` and `height > 0`."""

    id: str
    left: Coord
    right: Coord
    height: Coord

    def __post_init__(self):
        if not self.height > 0:
            raise NonPositiveHeight(self.id)
        if not self.left < self.right:
            raise InputError(f"shape {self.id!r}: left must be < right")

    @property
    def projection(self):
        """The closed interval the shape occupies on the grounding line."""
        return (self.left, self.right)

    @property
    def corner(self):
        return (self.left, self.height)


def intersects(a: LShape, b: LShape) -> bool:
    """Exact closed-set intersection test for two shapes in general position.

    One shape's vertical segment meets the other's horizontal segment iff the
    vertical's x lies strictly inside the other projection and rises strictly
    above the other height.  Identical coordinate triples (the same shape)
    intersect trivially; any other shared coordinate is ambiguous touching and
    is rejected.
    """
    if a.left == b.left and a.right == b.right and a.height == b.height:
        return True
    if len({a.left, a.right, b.left, b.right}) < 4:
        raise DistinctnessViolation(
            f"shapes {a.id!r} and {b.id!r} share an endpoint coordinate",
            pair=(a.id, b.id),
        )
    if a.height == b.height:
        raise DistinctnessViolation(
            f"shapes {a.id!r} and {b.id!r} share a height", pair=(a.id, b.id)
        )
    if a.left < b.left < a.right and b.height > a.height:
        return True
    if b.left < a.left < b.right and a.height > b.height:
        return True
    return False


def _is_flat(shapes: Sequence[LShape]) -> bool:
    # Flat: no projection nested inside another while sitting strictly higher.
    for a in shapes:
        for b in shapes:
            if a is b:
                continue
            if b.left < a.left and a.right < b.right and a.height > b.height:
                return False
    return True


@dataclass(frozen=True)
class LCollection:
    """An immutable general-position collection of grounded L-shapes."""

    shapes: tuple[LShape, ...]
    flat: bool

    def __len__(self):
        return len(self.shapes)

    def __iter__(self):
        return iter(self.shapes)

    @cached_property
    def _index(self) -> dict:
        return {s.id: s for s in self.shapes}

    def by_id(self, shape_id: str) -> LShape:
        return self._index[shape_id]

    def ids(self):
        return tuple(s.id for s in self.shapes)

    def restrict(self, keep_ids) -> "LCollection":
        keep = set(keep_ids)
        return validate_collection([s for s in self.shapes if s.id in keep])


def validate_collection(shapes: Iterable[LShape]) -> LCollection:
    """Check general position and return the collection with its flat flag.

    Rejects duplicate ids, any shared value among the 2n endpoint
    coordinates, and any shared height, naming the offending pair.
    """
    shapes = tuple(shapes)
    seen_ids = {}
    for s in shapes:
        if s.id in seen_ids:
            raise InputError(f"duplicate shape id {s.id!r}")
        seen_ids[s.id] = s
    endpoints = {}
    heights = {}
    for s in shapes:
        for value in (s.left, s.right):
            key = Fraction(value)
            if key in endpoints:
                raise DistinctnessViolation(
                    f"shapes {endpoints[key]!r} and {s.id!r} share endpoint {value}",
                    pair=(endpoints[key], s.id),
                )
            endpoints[key] = s.id
        hkey = Fraction(s.height)
        if hkey in heights:
            raise DistinctnessViolation(
                f"shapes {heights[hkey]!r} and {s.id!r} share height {s.height}",
                pair=(heights[hkey], s.id),
            )
        heights[hkey] = s.id
    return LCollection(shapes=shapes, flat=_is_flat(shapes))


def canonicalize(raw: Iterable[tuple]) -> LCollection:
    """Remap raw (id, left, right, height) tuples onto distinct small integers.

    Strict order among distinct input values is preserved; collisions are
    broken by (coordinate, id) lexicographic order, so the result is
    deterministic.  Valid inputs keep their intersection graph.
    """
    raw = [(str(i), as_coord(l), as_coord(r), as_coord(h)) for (i, l, r, h) in raw]
    for shape_id, l, r, _h in raw:
        if not l < r:
            raise InputError(f"shape {shape_id!r}: left must be < right")

    x_keys = []
    h_keys = []
    for shape_id, l, r, h in raw:
        x_keys.append((Fraction(l), shape_id, 0))
        x_keys.append((Fraction(r), shape_id, 1))
        h_keys.append((Fraction(h), shape_id))
    x_map = {key: 2 * rank for rank, key in enumerate(sorted(x_keys))}
    h_map = {key: rank + 1 for rank, key in enumerate(sorted(h_keys))}

    shapes = []
    for shape_id, l, r, h in raw:
        shapes.append(
            LShape(
                id=shape_id,
                left=x_map[(Fraction(l), shape_id, 0)],
                right=x_map[(Fraction(r), shape_id, 1)],
                height=h_map[(Fraction(h), shape_id)],
            )
        )
    return validate_collection(shapes)


def collection_to_json(collection: LCollection) -> dict:
    return {
        "shapes": [
            {
                "id": s.id,
                "l": coord_to_json(s.left),
                "r": coord_to_json(s.right),
                "h": coord_to_json(s.height),
            }
            for s in collection.shapes
        ]
    }


def collection_from_json(payload: dict) -> LCollection:
    try:
        entries = payload["shapes"]
    except (KeyError, TypeError) as exc:
        raise InputError("instance JSON must have a 'shapes' list") from exc
    shapes = []
    for entry in entries:
        try:
            shapes.append(
                LShape(
                    id=str(entry["id"]),
                    left=as_coord(entry["l"]),
                    right=as_coord(entry["r"]),
                    height=as_coord(entry["h"]),
                )
            )
        except KeyError as exc:
            raise InputError(f"shape entry missing field: {entry!r}") from exc
    return validate_collection(shapes)
