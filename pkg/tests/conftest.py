"""Shared helpers: independent oracles and state builders for the suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

import lchroma as lc
from lchroma.extend import ExtensionState, extend_assignment
from lchroma.pillars import HORIZONTAL, RAY, VERTICAL, PillarAssignment


# --- independent geometric oracle --------------------------------------------

def _seg_intersect(p1, p2, q1, q2) -> bool:
    """Closed-segment intersection for axis-parallel segments, by interval
    overlap per axis after orientation-normalising each segment."""

    def norm(a, b):
        (x1, y1), (x2, y2) = a, b
        return (min(x1, x2), max(x1, x2), min(y1, y2), max(y1, y2))

    ax1, ax2, ay1, ay2 = norm(p1, p2)
    bx1, bx2, by1, by2 = norm(q1, q2)
    return ax1 <= bx2 and bx1 <= ax2 and ay1 <= by2 and by1 <= ay2


def oracle_intersects(a: lc.LShape, b: lc.LShape) -> bool:
    """Brute-force point-set test: all four segment pairs of the two shapes."""
    segs_a = [((a.left, 0), (a.left, a.height)), ((a.left, a.height), (a.right, a.height))]
    segs_b = [((b.left, 0), (b.left, b.height)), ((b.left, b.height), (b.right, b.height))]
    return any(_seg_intersect(p1, p2, q1, q2) for p1, p2 in segs_a for q1, q2 in segs_b)


# --- literal degree oracle ----------------------------------------------------

def _in_open(x, lo, hi) -> bool:
    return (lo is None or x > lo) and (hi is None or x < hi)


def oracle_degrees(state: PillarAssignment, S, J=None):
    """Degree sets computed by the rawest possible enumeration over all
    (pillar, shape, shape) triples, straight from the definitions."""
    if J is None:
        J = S
    shapes = state.collection.shapes
    Nl, Na, Nr = set(), set(), set()
    for idx, pillar in enumerate(state.pillars):
        left_side = S.lo is not None and pillar.base <= S.lo
        right_side = S.hi is not None and pillar.base >= S.hi
        for L in shapes:
            if state.phi[L.id] != idx:
                continue
            if right_side and _in_open(L.left, J.lo, J.hi):
                Nr.add(idx)
            if not left_side:
                continue
            for Lp in shapes:
                if Lp.id == L.id or not lc.intersects(L, Lp):
                    continue
                if _in_open(Lp.left, J.lo, J.hi) and _in_open(Lp.right, J.lo, J.hi):
                    Nl.add(idx)
                if _in_open(Lp.left, J.lo, J.hi) and _in_open(Lp.right, S.lo, S.hi):
                    if J.hi is None:
                        Na.add(idx)
                    else:
                        blocked = any(
                            J.hi <= M.left <= Lp.right for M in shapes
                        ) and Lp.right >= J.hi
                        if not blocked:
                            Na.add(idx)
    return Nl, Na, Nr


# --- pillar point-set helpers ---------------------------------------------------

def piece_point_set_overlap(p, q):
    """Intersection of two pillar pieces: None, a point, or a segment tag."""

    def as_box(piece):
        kind = piece[0]
        if kind == VERTICAL:
            return piece[1], piece[1], piece[2], piece[3]
        if kind == HORIZONTAL:
            return piece[3], piece[2], piece[1], piece[1]
        return piece[1], piece[1], piece[2], None  # ray: open top

    ax1, ax2, ay1, ay2 = as_box(p)
    bx1, bx2, by1, by2 = as_box(q)
    x1, x2 = max(ax1, bx1), min(ax2, bx2)
    if x1 > x2:
        return None
    y1 = max(ay1, by1)
    tops = [t for t in (ay2, by2) if t is not None]
    y2 = min(tops) if tops else None
    if y2 is not None and y1 > y2:
        return None
    if x1 == x2 and y2 is not None and y1 == y2:
        return ("point", (x1, y1))
    return ("segment", (x1, y1), (x2, y2))


def pillars_overlap_points(a, b):
    """All piece-pair overlaps between two pillars."""
    out = []
    for p in a.pieces:
        for q in b.pieces:
            hit = piece_point_set_overlap(p, q)
            if hit is not None:
                out.append(hit)
    return out


# --- state builders ------------------------------------------------------------

def flat_instances(count, n, base_seed=7000, min_omega=1):
    """Deterministic flat collections with their exact clique numbers."""
    out = []
    seed = base_seed
    while len(out) < count:
        col = lc.random_collection(n, seed, "flat")
        omega, _ = lc.clique_number(lc.build_intersection_graph(col))
        if omega >= min_omega:
            out.append((col, omega))
        seed += 1
    return out


def pipeline_states(col, omega):
    """All intermediate extension states (after each round) plus the final."""
    assignment = PillarAssignment(collection=col, bases=[], pillars=[], colors=[])
    state = ExtensionState(assignment=assignment, omega=omega)
    snapshots = []
    if omega == 1:
        final = lc.complete_pillar_assignment(col, omega)
        return [final]
    while not assignment.complete:
        extend_assignment(state)
        snapshot = PillarAssignment(
            collection=col,
            bases=list(assignment.bases),
            pillars=list(assignment.pillars),
            colors=list(assignment.colors),
            phi=dict(assignment.phi),
        )
        snapshots.append(snapshot)
    return snapshots


@pytest.fixture(scope="session")
def small_flat_states():
    """A pool of mid-pipeline states over seeded flat instances."""
    states = []
    for col, omega in flat_instances(12, 18, base_seed=7100, min_omega=2):
        states.extend(pipeline_states(col, omega))
    return states
