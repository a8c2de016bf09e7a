import itertools

import pytest

import lchroma as lc
from lchroma.errors import TooManyBases
from lchroma.extend import (
    ExtensionState,
    _base_under_shape,
    ceil_4_log2,
    choose_bases,
    degree_cap,
    extend_assignment,
    palette_size,
    reserve_colors,
    sweep_degree_cap,
)
from lchroma.pillars import PillarAssignment, Segment

from conftest import flat_instances, oracle_degrees


def test_parameter_arithmetic():
    assert [ceil_4_log2(w) for w in (1, 2, 3, 4)] == [0, 4, 7, 8]
    assert [palette_size(w) for w in (1, 2, 3, 4)] == [14, 33, 58, 87]
    assert [degree_cap(w) for w in (2, 3, 4)] == [24, 46, 74]
    for w in (2, 3, 4, 5, 9):
        assert palette_size(w) - degree_cap(w) == reserve_colors(w)
        assert 2**reserve_colors(w) - 1 >= 32 * w**4 - 1


def test_divide_and_conquer_worked_example():
    order, colors = lc.divide_and_conquer_order([1, 2, 3], 2)
    assert order == [2, 1, 3]
    assert colors == {2: 2, 1: 1, 3: 1}

    order, colors = lc.divide_and_conquer_order([7], 1)
    assert order == [7] and colors == {7: 1}

    with pytest.raises(TooManyBases):
        lc.divide_and_conquer_order(list(range(4)), 2)


def separation_holds(bases, order, colors):
    pos = {b: i for i, b in enumerate(order)}
    for b1, b2 in itertools.combinations(sorted(bases), 2):
        if colors[b1] != colors[b2]:
            continue
        if not any(
            b1 < b < b2 and pos[b] < pos[b1] and pos[b] < pos[b2]
            for b in bases
            if b1 < b < b2
        ):
            return False
    return True


def test_divide_and_conquer_separation_property():
    rng = lc.SplitMix64(5)
    for trial in range(300):
        k = 1 + rng.below(7)
        size = 1 + rng.below(2**k - 1)
        pool = set()
        while len(pool) < size:
            pool.add(rng.below(10_000))
        bases = sorted(pool)
        order, colors = lc.divide_and_conquer_order(bases, k)
        assert sorted(order) == bases
        assert set(colors) == set(bases)
        assert max(colors.values()) <= k
        assert separation_holds(bases, order, colors)


# --- choose_bases ---------------------------------------------------------------

def test_choose_bases_on_empty_state_returns_anchor_midpoint():
    col = lc.validate_collection(
        [lc.LShape("a", 0, 10, 5), lc.LShape("b", 20, 30, 7)]
    )
    assignment = PillarAssignment(collection=col, bases=[], pillars=[], colors=[])
    state = ExtensionState(assignment=assignment, omega=2)
    seg = Segment(None, None)
    target = col.by_id("a")
    got = choose_bases(state, seg, target)
    assert got == [5]  # midpoint of the target's projection between events


def crafted_right_degree_state():
    """A state whose segment sweep must drop exactly one base.

    Sixteen stair shapes T live between the far-right bases; each pillar
    climbs its own stair and is stopped by the previous pillar, leaving one
    column per pillar.  Sixteen small witness shapes M sit far left, each
    crossing exactly its own pillar's column, so the sweep's right-degree
    grows by one per witness until it tops the cap.  A tiny crossing pair
    fixes the clique number at two, and one extra shape is the target.
    """
    m = 16
    shapes = [
        lc.LShape("X1", 10, 14, 3),
        lc.LShape("X2", 12, 16, 4),
        lc.LShape("Lstar", 30, 40, 6),
    ]
    bases = []
    for i in range(1, m + 1):
        l_m = 60 + 20 * i
        shapes.append(lc.LShape(f"M{i:02d}", l_m, l_m + 10, 3010 - 20 * i))
        shapes.append(
            lc.LShape(f"T{i:02d}", l_m + 5, 10020 - 100 * i, 3000 - 20 * i)
        )
        bases.append(10000 - 100 * i)
    col = lc.validate_collection(shapes)
    assert col.flat
    graph = lc.build_intersection_graph(col)
    omega, _ = lc.clique_number(graph)
    assert omega == 2
    pillars = lc.draw_all(col, bases)
    assignment = PillarAssignment(
        collection=col, bases=bases, pillars=pillars, colors=list(range(1, m + 1))
    )
    return ExtensionState(assignment=assignment, omega=omega)


def test_crafted_state_geometry():
    state = crafted_right_degree_state()
    assignment = state.assignment
    for i in range(1, 17):
        assert assignment.phi[f"M{i:02d}"] == i - 1
        assert assignment.phi[f"T{i:02d}"] == i - 1
        assert f"T{i:02d}" in assignment.pillars[i - 1].supports
    assert assignment.phi["Lstar"] is None
    assert assignment.phi["X1"] is None and assignment.phi["X2"] is None


def test_choose_bases_places_one_base_at_the_sweep_point():
    state = crafted_right_degree_state()
    assignment = state.assignment
    seg = lc.segment_of(assignment.bases, 30)
    assert seg == Segment(None, 8400)
    target = assignment.collection.by_id("Lstar")
    got = choose_bases(state, seg, target)
    # anchor under the target plus exactly one sweep base between the
    # fifteenth and sixteenth witness left endpoints
    assert got == [35, 375]
    sweep_base = got[1]
    J = Segment(None, sweep_base)
    rep = lc.compute_degrees(assignment, seg, J)
    nl, na, nr = oracle_degrees(assignment, seg, J)
    assert rep.dr == len(nr) == 15
    assert rep.dr >= 4 * state.omega**2 - 2 * state.omega + 1
    assert rep.degree <= sweep_degree_cap(state.omega)


def test_choose_bases_keeps_subsegment_degrees_capped():
    checked = 0
    for col, omega in flat_instances(10, 16, base_seed=8200, min_omega=2):
        assignment = PillarAssignment(collection=col, bases=[], pillars=[], colors=[])
        state = ExtensionState(assignment=assignment, omega=omega)
        while not assignment.complete:
            uncolored = state.uncolored()
            target = min(uncolored, key=lambda s: s.left)
            seg = lc.segment_of(assignment.bases, target.left)
            new_bases = choose_bases(state, seg, target)
            cap = sweep_degree_cap(omega)
            cuts = [seg.lo] + sorted(new_bases) + [seg.hi]
            for lo, hi in zip(cuts, cuts[1:]):
                rep = lc.compute_degrees(assignment, seg, Segment(lo, hi))
                assert rep.degree <= cap
                checked += 1
            extend_assignment(state)
    assert checked >= 200


def test_base_under_shape_picks_protected_midpoint():
    col = lc.validate_collection(
        [lc.LShape("a", 0, 100, 5), lc.LShape("b", 10, 20, 9)]
    )
    assignment = PillarAssignment(collection=col, bases=[], pillars=[], colors=[])
    state = ExtensionState(assignment=assignment, omega=2)
    seg = Segment(None, None)
    assert _base_under_shape(state, seg, col.by_id("a")) == 50
    assert _base_under_shape(state, seg, col.by_id("b")) == 15
    # a midpoint that collides with an endpoint gets nudged into the next gap
    col2 = lc.validate_collection(
        [lc.LShape("a", 0, 100, 5), lc.LShape("b", 50, 60, 9)]
    )
    state2 = ExtensionState(
        assignment=PillarAssignment(collection=col2, bases=[], pillars=[], colors=[]),
        omega=2,
    )
    assert _base_under_shape(state2, seg, col2.by_id("a")) == 55


# --- full extension loop ----------------------------------------------------------

def test_single_shape_collection_completes_with_one_color():
    col = lc.validate_collection([lc.LShape("only", 0, 10, 5)])
    assignment = lc.complete_pillar_assignment(col, 1)
    assert assignment.complete
    assert assignment.colors == [1]
    assert assignment.phi["only"] == 0


def test_omega_one_disjoint_shapes_use_one_color():
    shapes = [lc.LShape(f"s{i}", 20 * i, 20 * i + 5, 3 + i) for i in range(5)]
    col = lc.validate_collection(shapes)
    omega, _ = lc.clique_number(lc.build_intersection_graph(col))
    assert omega == 1
    assignment = lc.complete_pillar_assignment(col, omega)
    assert assignment.complete
    assert set(assignment.colors) == {1}


def test_example_instance_completes_in_one_round():
    col = lc.validate_collection(
        [lc.LShape("L1", 0, 10, 5), lc.LShape("L2", 2, 12, 7), lc.LShape("L3", 4, 6, 3)]
    )
    omega, _ = lc.clique_number(lc.build_intersection_graph(col))
    assert omega == 2 and col.flat
    assignment = lc.complete_pillar_assignment(col, omega)
    assert assignment.complete
    assert len(assignment.pillars) == 1  # the single anchor pillar catches all


def test_empty_collection_completes_trivially():
    assignment = lc.complete_pillar_assignment(lc.validate_collection([]), 1)
    assert assignment.complete and assignment.pillars == []


def test_random_flat_instances_complete_within_bounds():
    for col, omega in flat_instances(20, 24, base_seed=9100, min_omega=1):
        assignment = lc.complete_pillar_assignment(col, omega)
        assert assignment.complete
        assert assignment.is_valid()
        if omega == 1:
            assert set(assignment.colors) == {1}
        else:
            assert max(assignment.colors) <= palette_size(omega)
        lc.check_assignment_order(col, assignment.pillars, assignment.phi)


def test_progress_is_strict_each_round():
    for col, omega in flat_instances(6, 26, base_seed=9400, min_omega=2):
        assignment = PillarAssignment(collection=col, bases=[], pillars=[], colors=[])
        state = ExtensionState(assignment=assignment, omega=omega)
        counts = [assignment.colored_count()]
        rounds = 0
        while not assignment.complete:
            extend_assignment(state)
            counts.append(assignment.colored_count())
            rounds += 1
        assert rounds <= len(col)
        assert all(b > a for a, b in zip(counts, counts[1:]))
