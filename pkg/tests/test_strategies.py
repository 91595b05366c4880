import pytest

from conftest import edges_of

from kfactor.blocks import d_partition, matching
from kfactor.core import Instance, mod_interval
from kfactor.strategies import (
    ClassSelection,
    ColorAssignment,
    FactorsNotDisjointError,
    PropertyAViolatedError,
    PropertyBViolatedError,
    SymbolCollisionError,
    default_s,
    default_t,
    strategy_a,
    strategy_b,
)
from kfactor.verify import FactorKind, verify_factor

K4_FACTORS = [
    matching(4, [(1, 2), (3, 4)]),
    matching(4, [(1, 3), (2, 4)]),
    matching(4, [(1, 4), (2, 3)]),
]


def test_strategy_a_known_output():
    inst = Instance(4, 4)
    got = strategy_a(inst, K4_FACTORS, ColorAssignment(3, lambda r, x: r))
    assert got.edge_set() == frozenset(edges_of("1_1 2_1  3_1 4_1  1_2 3_2  2_2 4_2  1_3 4_3  2_3 3_3"))
    assert verify_factor(got, FactorKind.AR_GRAPH).ok


def test_strategy_a_reproduces_odar_a1():
    inst = Instance(4, 4)
    got = strategy_a(inst, K4_FACTORS, ColorAssignment(3, lambda r, x: mod_interval(1 + r, 1, 4)))
    assert got.edge_set() == frozenset(edges_of("1_2 2_2  3_2 4_2  1_3 3_3  2_3 4_3  1_4 4_4  2_4 3_4"))


def test_strategy_a_property_violation():
    inst = Instance(4, 4)
    with pytest.raises(PropertyAViolatedError) as exc:
        strategy_a(inst, K4_FACTORS, ColorAssignment(3, lambda r, x: 1))
    assert exc.value.z == 1 and exc.value.symbol == 1


def test_strategy_a_disjointness_check():
    inst = Instance(4, 4)
    overlapping = [K4_FACTORS[0], K4_FACTORS[0]]
    with pytest.raises(FactorsNotDisjointError):
        strategy_a(inst, overlapping, ColorAssignment(2, lambda r, x: r))


def test_strategy_b_known_output():
    inst = Instance(4, 4)
    dp = d_partition(4)
    got = strategy_b(inst, dp, ClassSelection((1, 2), ((1, 2), (3, 4))))
    assert got.edge_set() == frozenset(edges_of("1_1 2_2  2_1 3_2  3_1 4_2  4_1 1_2  1_3 3_4  2_3 4_4"))
    assert verify_factor(got, FactorKind.AR_GRAPH).ok


def test_strategy_b_forbidden_pair():
    inst = Instance(4, 4)
    dp = d_partition(4)
    with pytest.raises(PropertyBViolatedError) as exc:
        strategy_b(inst, dp, ClassSelection((1, 3), ((1, 2), (3, 4))))
    assert set(exc.value.pair) == {1, 3}


def test_strategy_b_symbol_collision():
    inst = Instance(4, 4)
    dp = d_partition(4)
    with pytest.raises(SymbolCollisionError):
        strategy_b(inst, dp, ClassSelection((1, 2), ((1, 2), (2, 3))))


def test_strategy_outputs_are_deterministic():
    inst = Instance(4, 4)
    a1 = strategy_a(inst, K4_FACTORS, ColorAssignment(3, lambda r, x: r))
    a2 = strategy_a(inst, K4_FACTORS, ColorAssignment(3, lambda r, x: r))
    assert a1.edges == a2.edges


def test_default_counts():
    assert default_s(Instance(6, 4)) == 4
    assert default_s(Instance(4, 6)) == 3
    assert default_s(Instance(5, 6)) == 5
    assert default_s(Instance(5, 4)) is None
    assert default_t(Instance(4, 6)) == 2
    assert default_t(Instance(5, 6)) == 2
    assert default_t(Instance(5, 4)) == 2
    assert default_t(Instance(6, 3)) is None


def test_strategy_b_edge_count_matches_class_sizes():
    inst = Instance(6, 6)
    dp = d_partition(6)
    sel = ClassSelection((1, 2, 3), ((1, 2), (3, 4), (5, 6)))
    got = strategy_b(inst, dp, sel)
    assert len(got.edges) == sum(len(dp.classes[i]) for i in sel.indices)
    assert verify_factor(got, FactorKind.AR_GRAPH).ok
