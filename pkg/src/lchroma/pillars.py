"""Pillar drawing, shape-to-pillar assignment, and segment degree machinery.

A pillar is a staircase curve grown from a base point on the grounding line.
It rises vertically; when its tip meets the horizontal segment of a shape
whose projection contains the base (not at that shape's corner), it slides
left along that segment to the corner and resumes rising.  The moment the
tip touches any point of an earlier pillar it stops for good.  An unblocked
pillar ends with an upward infinite ray.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, InvalidBase, JNotInSegment, NotCascading, ShapeNotOnPillar
from .geometry import Coord, LCollection, LShape, coord_to_json, intersects, midpoint
from .graph import PermutationInstance

# Pillar pieces, in drawing order:
#   ("v", x, y_lo, y_hi)    vertical, drawn upward
#   ("h", y, x_hi, x_lo)    horizontal, drawn leftward (x_lo <= x_hi)
#   ("ray", x, y_lo)        final infinite vertical ray
VERTICAL = "v"
HORIZONTAL = "h"
RAY = "ray"


@dataclass(frozen=True)
class Pillar:
    base: Coord
    pieces: tuple[tuple, ...]
    supports: tuple[str, ...]  # ids of shapes that contributed a horizontal step
    terminated_on: Optional[int]  # index of the earlier pillar it stopped on
    stop_point: Optional[tuple]

    @property
    def infinite(self) -> bool:
        return self.terminated_on is None

    def corners(self):
        """Breakpoints of the staircase, starting at (base, 0)."""
        pts = [(self.base, 0)]
        for piece in self.pieces:
            if piece[0] == VERTICAL:
                pts.append((piece[1], piece[3]))
            elif piece[0] == HORIZONTAL:
                pts.append((piece[3], piece[1]))
        return pts

    def contains_point(self, x, y) -> bool:
        for piece in self.pieces:
            if piece[0] == VERTICAL:
                if x == piece[1] and piece[2] <= y <= piece[3]:
                    return True
            elif piece[0] == HORIZONTAL:
                if y == piece[1] and piece[3] <= x <= piece[2]:
                    return True
            else:
                if x == piece[1] and y >= piece[2]:
                    return True
        return False

    def to_json(self) -> dict:
        return {
            "base": coord_to_json(self.base),
            "corners": [[coord_to_json(x), coord_to_json(y)] for x, y in self.corners()],
            "top": "infinite"
            if self.infinite
            else {
                "on": self.terminated_on,
                "point": [coord_to_json(self.stop_point[0]), coord_to_json(self.stop_point[1])],
            },
            "supports": list(self.supports),
        }


def _first_contact_above(pillars: Sequence[Pillar], x, y):
    """Lowest point strictly above (x, y) lying on any of `pillars`.

    Returns (y', pillar_index) or None.  Assumes (x, y) itself is on none of
    them, so vertical pieces at this x either start above y or end below it.
    """
    best = None
    for idx, pillar in enumerate(pillars):
        for piece in pillar.pieces:
            kind = piece[0]
            if kind == VERTICAL:
                if piece[1] == x and piece[2] > y:
                    cand = piece[2]
                else:
                    continue
            elif kind == HORIZONTAL:
                if piece[1] > y and piece[3] <= x <= piece[2]:
                    cand = piece[1]
                else:
                    continue
            else:
                if piece[1] == x and piece[2] > y:
                    cand = piece[2]
                else:
                    continue
            if best is None or cand < best[0]:
                best = (cand, idx)
    return best


def _first_contact_left(pillars: Sequence[Pillar], y, x_start, x_min):
    """Rightmost point (x', y) with x_min <= x' < x_start on any pillar."""
    best = None
    for idx, pillar in enumerate(pillars):
        for piece in pillar.pieces:
            kind = piece[0]
            if kind == VERTICAL:
                if piece[2] <= y <= piece[3] and x_min <= piece[1] < x_start:
                    cand = piece[1]
                else:
                    continue
            elif kind == HORIZONTAL:
                if piece[1] == y and piece[2] < x_start and piece[2] >= x_min:
                    cand = piece[2]
                else:
                    continue
            else:
                if y >= piece[2] and x_min <= piece[1] < x_start:
                    cand = piece[1]
                else:
                    continue
            if best is None or cand > best[0]:
                best = (cand, idx)
    return best


def draw_pillar(collection: LCollection, existing: Sequence[Pillar], base: Coord) -> Pillar:
    """Grow one pillar from `base` against the already-drawn `existing` ones."""
    for s in collection.shapes:
        if base == s.left or base == s.right:
            raise InvalidBase(f"base {base} is an endpoint of shape {s.id!r}")
    for p in existing:
        if p.base == base:
            raise InvalidBase(f"base {base} already carries a pillar")

    pieces = []
    supports = []
    x, y = base, 0
    terminated_on = None
    stop_point = None
    while True:
        # Next shape whose horizontal the rising tip can turn onto: its
        # projection must strictly contain both the current x and the base.
        turn = None
        for s in collection.shapes:
            if s.height > y and s.left < x and base < s.right:
                if turn is None or s.height < turn.height:
                    turn = s
        hit = _first_contact_above(existing, x, y)
        if hit is not None and (turn is None or hit[0] <= turn.height):
            pieces.append((VERTICAL, x, y, hit[0]))
            terminated_on, stop_point = hit[1], (x, hit[0])
            break
        if turn is None:
            pieces.append((RAY, x, y))
            break
        pieces.append((VERTICAL, x, y, turn.height))
        y = turn.height
        supports.append(turn.id)
        block = _first_contact_left(existing, y, x, turn.left)
        if block is not None:
            pieces.append((HORIZONTAL, y, x, block[0]))
            terminated_on, stop_point = block[1], (block[0], y)
            break
        pieces.append((HORIZONTAL, y, x, turn.left))
        x = turn.left
    return Pillar(
        base=base,
        pieces=tuple(pieces),
        supports=tuple(supports),
        terminated_on=terminated_on,
        stop_point=stop_point,
    )


def draw_all(collection: LCollection, bases: Sequence[Coord]) -> list[Pillar]:
    """Draw pillars for `bases` in placement order."""
    pillars: list[Pillar] = []
    for base in bases:
        pillars.append(draw_pillar(collection, pillars, base))
    return pillars


def shape_pillar_intersects(shape: LShape, pillar: Pillar) -> bool:
    """Exact test between the shape's two closed segments and every piece."""
    l, r, h = shape.left, shape.right, shape.height
    for piece in pillar.pieces:
        kind = piece[0]
        if kind == VERTICAL:
            _, px, y0, y1 = piece
            if px == l and y0 <= h:
                return True  # vertical-on-vertical overlap (same x)
            if l <= px <= r and y0 <= h <= y1:
                return True
        elif kind == HORIZONTAL:
            _, py, x_hi, x_lo = piece
            if x_lo <= l <= x_hi and py <= h:
                return True
            if py == h and x_lo <= r and x_hi >= l:
                return True
        else:
            _, px, y0 = piece
            if px == l and y0 <= h:
                return True
            if l <= px <= r and y0 <= h:
                return True
    return False


def box_meets_pillar(shape: LShape, pillar: Pillar) -> bool:
    """Does the rectangle projection x [0, height] under the shape contain a
    point of the pillar?"""
    l, r, h = shape.left, shape.right, shape.height
    for piece in pillar.pieces:
        kind = piece[0]
        if kind == VERTICAL:
            _, px, y0, _y1 = piece
            if l <= px <= r and y0 <= h:
                return True
        elif kind == HORIZONTAL:
            _, py, x_hi, x_lo = piece
            if py <= h and x_lo <= r and x_hi >= l:
                return True
        else:
            _, px, y0 = piece
            if l <= px <= r and y0 <= h:
                return True
    return False


def assign_shapes(collection: LCollection, pillars: Sequence[Pillar]) -> dict[str, Optional[int]]:
    """Map each shape to the placement-earliest pillar it intersects."""
    phi: dict[str, Optional[int]] = {}
    for s in collection.shapes:
        phi[s.id] = None
        for idx, pillar in enumerate(pillars):
            if shape_pillar_intersects(s, pillar):
                phi[s.id] = idx
                break
    return phi


def check_assignment_order(collection: LCollection, pillars: Sequence[Pillar], phi=None):
    """Assert the assignment-order property: whenever the box under a shape
    contains a point of some pillar, the shape is assigned to a pillar placed
    no later than that one.  Returns the number of (shape, pillar) pairs for
    which the property was exercised."""
    if phi is None:
        phi = assign_shapes(collection, pillars)
    checked = 0
    for s in collection.shapes:
        for idx, pillar in enumerate(pillars):
            if box_meets_pillar(s, pillar):
                checked += 1
                assigned = phi[s.id]
                if assigned is None or assigned > idx:
                    raise AssertionError(
                        f"shape {s.id!r}: box meets pillar {idx} but assignment is {assigned}"
                    )
    return checked


def assign_and_check_order(collection: LCollection, pillars: Sequence[Pillar]):
    """Assignment map plus the assignment-order check in one scan.

    For each shape, the placement-earliest pillar whose under-box contains a
    pillar point must itself intersect the shape; that makes it the assigned
    pillar and settles the order property against every later pillar (a
    shape intersects a pillar only if its box does).
    """
    phi: dict[str, Optional[int]] = {}
    for s in collection.shapes:
        phi[s.id] = None
        for idx, pillar in enumerate(pillars):
            if box_meets_pillar(s, pillar):
                if not shape_pillar_intersects(s, pillar):
                    raise AssertionError(
                        f"shape {s.id!r}: box meets pillar {idx} first, but the"
                        " shape does not intersect it"
                    )
                phi[s.id] = idx
                break
    return phi


@dataclass
class PillarAssignment:
    """Ordered pillars with a pillar coloring and the induced shape map."""

    collection: LCollection
    bases: list  # placement order
    pillars: list[Pillar]
    colors: list[int]  # parallel to pillars
    phi: dict[str, Optional[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.phi:
            self.phi = assign_shapes(self.collection, self.pillars)

    @property
    def complete(self) -> bool:
        return all(idx is not None for idx in self.phi.values())

    def colored_count(self) -> int:
        return sum(1 for idx in self.phi.values() if idx is not None)

    def shape_color(self, shape_id: str) -> Optional[int]:
        idx = self.phi[shape_id]
        return None if idx is None else self.colors[idx]

    def assigned_to(self, pillar_index: int) -> list[str]:
        return [s.id for s in self.collection.shapes if self.phi[s.id] == pillar_index]

    def is_valid(self) -> bool:
        """No two intersecting shapes on distinct pillars of equal color."""
        shapes = self.collection.shapes
        for i, a in enumerate(shapes):
            pa = self.phi[a.id]
            if pa is None:
                continue
            for b in shapes[i + 1 :]:
                pb = self.phi[b.id]
                if pb is None or pa == pb:
                    continue
                if self.colors[pa] == self.colors[pb] and intersects(a, b):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "bases": [coord_to_json(b) for b in self.bases],
            "pillars": [p.to_json() for p in self.pillars],
            "colors": list(self.colors),
            "assignment": {sid: idx for sid, idx in sorted(self.phi.items())},
        }


@dataclass(frozen=True)
class Segment:
    """Open interval between consecutive bases; None stands for +-infinity."""

    lo: Optional[Coord]
    hi: Optional[Coord]

    def contains(self, x) -> bool:
        if self.lo is not None and not x > self.lo:
            return False
        if self.hi is not None and not x < self.hi:
            return False
        return True

    def contains_interval(self, lo, hi) -> bool:
        ok_lo = self.lo is None or (lo is not None and lo >= self.lo)
        ok_hi = self.hi is None or (hi is not None and hi <= self.hi)
        return ok_lo and ok_hi


def segments(bases: Sequence[Coord]) -> list[Segment]:
    """The |bases|+1 maximal open intervals of the line avoiding all bases."""
    cuts = sorted(bases)
    bounds = [None] + cuts + [None]
    return [Segment(lo=bounds[i], hi=bounds[i + 1]) for i in range(len(bounds) - 1)]


def segment_of(bases: Sequence[Coord], x) -> Segment:
    for seg in segments(bases):
        if seg.contains(x):
            return seg
    raise InputError(f"{x} coincides with a base")


@dataclass(frozen=True)
class DegreeReport:
    dl: int
    da: int
    dr: int
    Nl: frozenset[int]
    Na: frozenset[int]
    Nr: frozenset[int]

    @property
    def degree(self) -> int:
        return self.dl + self.dr


def compute_degrees(state: PillarAssignment, S: Segment, J=None, adjacency=None) -> DegreeReport:
    """Left-, additional- and right-degree of the open interval J inside S.

    A pillar based at or left of S counts toward the left degree when some
    shape assigned to it intersects a shape whose projection sits inside J;
    toward the additional degree when the partner shape starts in J, ends in
    S, and no shape's left endpoint falls in the part of its projection right
    of J.  A pillar based at or right of S counts toward the right degree
    when some shape assigned to it starts inside J.
    """
    if J is None:
        J = S
    if not S.contains_interval(J.lo, J.hi):
        raise JNotInSegment(f"interval {J} not inside segment {S}")
    shapes = state.collection.shapes
    if adjacency is None:
        adjacency = {}
        for i, a in enumerate(shapes):
            for b in shapes[i + 1 :]:
                if intersects(a, b):
                    adjacency.setdefault(a.id, set()).add(b.id)
                    adjacency.setdefault(b.id, set()).add(a.id)
    left_pillars = {
        idx
        for idx, p in enumerate(state.pillars)
        if S.lo is not None and p.base <= S.lo
    }
    right_pillars = {
        idx
        for idx, p in enumerate(state.pillars)
        if S.hi is not None and p.base >= S.hi
    }
    left_ends = sorted(s.left for s in shapes)

    def no_left_endpoint_in(lo, hi) -> bool:
        # closed interval [lo, hi]; lo may exceed hi (empty)
        if lo > hi:
            return True
        import bisect

        i = bisect.bisect_left(left_ends, lo)
        return i >= len(left_ends) or left_ends[i] > hi

    Nl, Na, Nr = set(), set(), set()
    for s in shapes:
        idx = state.phi[s.id]
        if idx is None:
            continue
        if idx in right_pillars and J.contains(s.left):
            Nr.add(idx)
        if idx in left_pillars:
            for other_id in adjacency.get(s.id, ()):
                other = state.collection.by_id(other_id)
                if J.contains(other.left) and J.contains(other.right):
                    Nl.add(idx)
                if (
                    J.contains(other.left)
                    and S.contains(other.right)
                    and (J.hi is None or no_left_endpoint_in(J.hi, other.right))
                ):
                    Na.add(idx)
    return DegreeReport(
        dl=len(Nl), da=len(Na), dr=len(Nr),
        Nl=frozenset(Nl), Na=frozenset(Na), Nr=frozenset(Nr),
    )


def segment_degree_pairs(state: PillarAssignment, adjacency: dict) -> list[tuple[int, int]]:
    """(left-degree, right-degree) of every segment of the state's bases, in
    left-to-right segment order, computed in one pass over shapes and edges.

    Matches compute_degrees(state, S, S) for each segment S: a projection
    lies inside a segment iff both endpoints fall in the same base gap, and
    with the interval equal to the whole segment the additional-degree
    condition collapses to the left-degree one.
    """
    import bisect

    cuts = sorted(state.bases)
    m = len(cuts)
    nl: list[set] = [set() for _ in range(m + 1)]
    nr: list[set] = [set() for _ in range(m + 1)]
    shapes = state.collection.shapes
    for s in shapes:
        idx = state.phi[s.id]
        if idx is None:
            continue
        base = state.pillars[idx].base
        j = bisect.bisect_right(cuts, s.left)
        if j < m and base >= cuts[j]:
            nr[j].add(idx)
        for other_id in adjacency.get(s.id, ()):
            other = state.collection.by_id(other_id)
            j1 = bisect.bisect_right(cuts, other.left)
            if j1 > 0 and base <= cuts[j1 - 1]:
                j2 = bisect.bisect_right(cuts, other.right)
                if j1 == j2:
                    nl[j1].add(idx)
    return [(len(nl[j]), len(nr[j])) for j in range(m + 1)]


def split_pillar_class(collection: LCollection, pillar: Pillar, shape_ids):
    """Split shapes meeting one pillar into the two permutation instances.

    The first instance holds shapes touching a horizontal piece of the
    pillar, the second all remaining shapes that touch it.  Both are ordered
    left-to-right by left endpoint and top-to-bottom by height.
    """
    first, second = [], []
    for sid in shape_ids:
        s = collection.by_id(sid)
        if not shape_pillar_intersects(s, pillar):
            raise ShapeNotOnPillar(f"shape {sid!r} does not intersect the pillar")
        on_horizontal = False
        for piece in pillar.pieces:
            if piece[0] != HORIZONTAL:
                continue
            _, py, x_hi, x_lo = piece
            if (x_lo <= s.left <= x_hi and py <= s.height) or (
                py == s.height and x_lo <= s.right and x_hi >= s.left
            ):
                on_horizontal = True
                break
        (first if on_horizontal else second).append(s)

    def to_instance(group):
        ids = tuple(s.id for s in group)
        order1 = tuple(s.id for s in sorted(group, key=lambda s: s.left))
        order2 = tuple(s.id for s in sorted(group, key=lambda s: -s.height))
        return PermutationInstance(elements=ids, order1=order1, order2=order2)

    return to_instance(first), to_instance(second)


# --- cascading configurations -------------------------------------------------

def is_cascading(state: PillarAssignment, shape_ids, pillar_indices) -> bool:
    """Re-check the three cascading conditions for the given tuple."""
    t = len(shape_ids)
    if t == 0 or len(pillar_indices) != t:
        return False
    shapes = [state.collection.by_id(sid) for sid in shape_ids]
    pillars = [state.pillars[i] for i in pillar_indices]
    bases = [p.base for p in pillars]
    for i in range(t - 1):
        if not shapes[i].left < shapes[i + 1].left:
            return False
        if not bases[i] < bases[i + 1]:
            return False
        if not shapes[i].height > shapes[i + 1].height:
            return False
        if not pillar_indices[i] > pillar_indices[i + 1]:
            return False
    if not shapes[-1].left < bases[0]:
        return False
    if shape_ids[-1] not in pillars[-1].supports:
        return False
    for i in range(t - 1):
        if state.phi[shape_ids[i]] != pillar_indices[i]:
            return False
    return True


def find_cascading(state: PillarAssignment, t: int, budget: int = 200_000):
    """Bounded search for a cascading tuple of size t; None when none found
    within the budget.  Test-support only; not on the coloring path."""
    if t <= 0:
        return None
    n_p = len(state.pillars)
    by_base = sorted(range(n_p), key=lambda i: state.pillars[i].base)
    assigned_to: dict[int, list[str]] = {}
    for sid, idx in state.phi.items():
        if idx is not None:
            assigned_to.setdefault(idx, []).append(sid)
    steps = 0

    def extend(pillar_seq: list[int], shape_seq: list[str]):
        nonlocal steps
        if len(pillar_seq) == t:
            if is_cascading(state, shape_seq, pillar_seq):
                return shape_seq, pillar_seq
            return None
        pos = len(pillar_seq)
        last = pillar_seq[-1] if pillar_seq else None
        for idx in by_base:
            if last is not None and (
                state.pillars[idx].base <= state.pillars[last].base or idx >= last
            ):
                continue
            if pos == t - 1:
                candidates = list(state.pillars[idx].supports)
            else:
                candidates = assigned_to.get(idx, [])
            for sid in candidates:
                steps += 1
                if steps > budget:
                    return None
                s = state.collection.by_id(sid)
                prev = state.collection.by_id(shape_seq[-1]) if shape_seq else None
                if prev is not None and not (
                    s.left > prev.left and s.height < prev.height
                ):
                    continue
                first_base = state.pillars[pillar_seq[0] if pillar_seq else idx].base
                if not s.left < first_base:
                    continue
                result = extend(pillar_seq + [idx], shape_seq + [sid])
                if result is not None:
                    return result
        return None

    # Pillars are chosen latest-first in placement order and leftmost-first in
    # base order; the recursion above fills positions 1..t of the tuple.
    return extend([], [])


def _pillar_first_contact(pillar: Pillar, shape: LShape):
    """First point along the pillar's drawing path that lies on the shape.

    Returns (piece_index, (x, y)); None when they do not meet.
    """
    l, r, h = shape.left, shape.right, shape.height
    for k, piece in enumerate(pillar.pieces):
        kind = piece[0]
        if kind == VERTICAL or kind == RAY:
            px = piece[1]
            y0 = piece[2]
            y1 = piece[3] if kind == VERTICAL else None
            hits = []
            if px == l:  # runs along the shape's vertical
                if y0 <= h:
                    hits.append(y0)
            if l <= px <= r and h >= y0 and (y1 is None or h <= y1):
                hits.append(h)
            if hits:
                return k, (px, min(hits))
        else:
            _, py, x_hi, x_lo = piece
            hits = []
            if py == h:  # runs along the shape's horizontal
                if x_lo <= r and x_hi >= l:
                    hits.append(min(x_hi, r))
            if x_lo <= l <= x_hi and py <= h:
                hits.append(l)
            if hits:
                return k, (max(hits), py)  # leftward motion: larger x comes first
    return None


def extract_clique_from_cascading(state: PillarAssignment, shape_ids, pillar_indices):
    """Turn a cascading tuple into a clique of the same size.

    Walks the construction: the next-to-last pillar first meets the last
    shape on that shape's vertical segment while sliding along one of its own
    supports; that support replaces the next-to-last shape, and the argument
    recurses on the shortened tuple.
    """
    if not is_cascading(state, shape_ids, pillar_indices):
        raise NotCascading(f"tuple {shape_ids} / {pillar_indices} is not cascading")
    shape_ids = list(shape_ids)
    pillar_indices = list(pillar_indices)
    t = len(shape_ids)
    if t == 1:
        return [shape_ids[0]]

    last_shape = state.collection.by_id(shape_ids[-1])
    prev_pillar = state.pillars[pillar_indices[-2]]
    contact = _pillar_first_contact(prev_pillar, last_shape)
    if contact is None:
        raise NotCascading("next-to-last pillar misses the last shape")
    piece_index, (cx, cy) = contact
    piece = prev_pillar.pieces[piece_index]
    if not (cx == last_shape.left and cy < last_shape.height and piece[0] == HORIZONTAL):
        raise NotCascading("first contact is not on the last shape's vertical segment")
    horizontal_rank = sum(
        1 for p in prev_pillar.pieces[:piece_index] if p[0] == HORIZONTAL
    )
    support_id = prev_pillar.supports[horizontal_rank]
    support = state.collection.by_id(support_id)
    if not support.left < last_shape.left:
        raise NotCascading("support does not start left of the last shape")

    reduced = shape_ids[:-2] + [support_id]
    clique = extract_clique_from_cascading(state, reduced, pillar_indices[:-1])
    return clique + [shape_ids[-1]]


@dataclass(frozen=True)
class ExtremalReport:
    sum_da: int
    left_bound: int
    sum_dr: int
    right_bound: int

    @property
    def ok(self) -> bool:
        return self.sum_da <= self.left_bound and self.sum_dr <= self.right_bound


def check_extremal_bounds(state: PillarAssignment, S: Segment, intervals, omega: int,
                          adjacency=None) -> ExtremalReport:
    """Evaluate both degree inequalities for disjoint intervals inside S.

    The bounds are theorems for correct inputs, so a violation is a fatal
    implementation-bug signal; callers assert `report.ok`.
    """
    intervals = list(intervals)
    if not intervals:
        return ExtremalReport(sum_da=0, left_bound=0, sum_dr=0, right_bound=0)
    seg_report = compute_degrees(state, S, S, adjacency=adjacency)
    sum_da = 0
    sum_dr = 0
    for J in intervals:
        rep = compute_degrees(state, S, J, adjacency=adjacency)
        sum_da += rep.da
        sum_dr += rep.dr
    m = len(intervals)
    left_bound = omega * (m + seg_report.dl - 1)
    right_bound = 2 * omega * (2 * omega - 1) * (m + seg_report.dr - 1)
    return ExtremalReport(
        sum_da=sum_da, left_bound=left_bound, sum_dr=sum_dr, right_bound=right_bound
    )
