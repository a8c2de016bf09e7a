import pytest

import lchroma as lc
from lchroma.errors import ChainExceedsOmega
from lchroma.flatten import nested_below

CHAIN = lc.validate_collection(
    [lc.LShape("L1", 20, 30, 30), lc.LShape("L2", 10, 40, 20), lc.LShape("L3", 0, 60, 10)]
)


def test_chain_of_three_gives_singletons():
    result = lc.flatten_partition(CHAIN, omega=3)
    assert len(result.classes) == 3
    assert sorted(len(c) for c in result.classes) == [1, 1, 1]
    # the innermost-tallest shape starts chains, the outermost-lowest ends them
    assert result.class_of["L1"] == 0 and result.class_of["L3"] == 2


def test_already_flat_gives_one_class():
    col = lc.validate_collection(
        [lc.LShape("a", 0, 10, 5), lc.LShape("b", 2, 12, 7), lc.LShape("c", 4, 6, 3)]
    )
    assert col.flat
    result = lc.flatten_partition(col, omega=2)
    assert len(result.classes) == 1
    assert set(result.classes[0].ids()) == set(col.ids())


def test_random_partition_postconditions():
    col = lc.random_collection(30, 11, "uniform")
    omega, _ = lc.clique_number(lc.build_intersection_graph(col))
    result = lc.flatten_partition(col, omega)
    assert len(result.classes) <= omega
    seen = []
    for cls in result.classes:
        assert lc.validate_collection(list(cls.shapes)).flat
        seen.extend(cls.ids())
    assert sorted(seen) == sorted(col.ids())


def test_chain_exceeds_omega_signals_caller_bug():
    with pytest.raises(ChainExceedsOmega):
        lc.flatten_partition(CHAIN, omega=2)


def test_order_relation_sanity():
    rng = lc.SplitMix64(99)
    cols = [lc.random_collection(12, 400 + s, "uniform") for s in range(8)]
    for col in cols:
        shapes = col.shapes
        for _ in range(200):
            a = shapes[rng.below(len(shapes))]
            b = shapes[rng.below(len(shapes))]
            c = shapes[rng.below(len(shapes))]
            if a is b or b is c or a is c:
                continue
            # antisymmetry and transitivity of the containment order
            assert not (nested_below(a, b) and nested_below(b, a))
            if nested_below(a, b) and nested_below(b, c):
                assert nested_below(a, c)
