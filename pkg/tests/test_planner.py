import pytest

from kfactor.constructions import ConstructionId
from kfactor.core import Instance
from kfactor.planner import (
    Direct,
    Double,
    PlanKind,
    Product,
    Seed,
    execute,
    plan,
    render,
)
from kfactor.verify import verify_decomposition


def test_plan_d2_d4():
    st = plan(5, 3, 2)
    assert st.kind is PlanKind.PLANNED
    assert st.recipe.construction is ConstructionId.D2
    st = plan(5, 3, 4)
    assert st.recipe.construction is ConstructionId.D4


def test_plan_examples_from_catalog():
    st = plan(5, 2, 3)
    assert st.kind is PlanKind.PLANNED
    assert st.recipe.construction is ConstructionId.OF_ODD_N_EVEN_G

    st = plan(6, 4, 3)
    assert st.kind is PlanKind.OPEN_GAP and st.clause.index == 2

    st = plan(5, 3, 3)
    assert st.kind is PlanKind.NON_EXISTENT

    st = plan(8, 3, 3)
    assert isinstance(st.recipe, Double)
    assert st.recipe.child.construction is ConstructionId.OF_QPLUS1_PRIME_POWER
    assert dict(st.recipe.child.params)["q"] == 3

    st = plan(3, 7, 3)
    assert st.recipe.construction is ConstructionId.ODAR_ODD_N


def test_plan_seed_and_gplus1():
    assert plan(4, 2, 3).recipe.construction is ConstructionId.OF_SEED_4_2
    assert plan(3, 2, 3).recipe.construction is ConstructionId.OF_GPLUS1_EVEN_G


def test_plan_is_deterministic():
    assert plan(14, 4, 3) == plan(14, 4, 3)
    assert plan(12, 2, 3) == plan(12, 2, 3)


def test_plan_does_not_double_into_gaps():
    # OF(5,4) exists and doubles to 10 parts, but (10,4) sits inside the
    # unsettled even-n window, so it must stay open
    st = plan(10, 4, 3)
    assert st.kind is PlanKind.OPEN_GAP and st.clause.index == 2


def test_plan_g1():
    st = plan(6, 1, 3)
    assert st.kind is PlanKind.PLANNED
    dec = execute(st.recipe)
    assert dec.distance == 3
    assert verify_decomposition(dec).ok
    assert plan(5, 1, 3).kind is PlanKind.NON_EXISTENT


def test_execute_seed_node():
    dec = execute(Seed("of_4_2"))
    assert dec.instance == Instance(4, 2)
    with pytest.raises(ValueError):
        execute(Seed("nope"))


def test_execute_plan_4_2():
    dec = execute(plan(4, 2, 3).recipe)
    assert verify_decomposition(dec).ok
    assert len(dec.factors) == 6


def test_execute_plan_12_2():
    dec = execute(plan(12, 2, 3).recipe)
    assert len(dec.factors) == 22
    assert verify_decomposition(dec).ok


def test_execute_product_node():
    left = plan(3, 2, 3).recipe
    right = plan(4, 2, 3).recipe
    dec = execute(Product(left, right))
    assert dec.instance.n == 12
    assert verify_decomposition(dec).ok


def test_execute_double_bad_child():
    # doubling a child with n <= g propagates the applicability error
    from kfactor.constructions import ApplicabilityError

    child = Direct(ConstructionId.ODAR_ODD_N, (("g", 3), ("n", 3)))
    with pytest.raises(ApplicabilityError):
        execute(Double(child))


def test_render_strings():
    assert render(plan(8, 3, 3).recipe) == "Double <- Direct OF(q+1,q), q=3"
    assert render(plan(4, 2, 3).recipe) == "Direct OF(4,2) seed"
    assert "ODAR" in render(plan(3, 7, 3).recipe)


def test_plan_d2_d4_always_planned():
    for g in range(1, 17):
        for n in range(2, 17):
            for d in (2, 4):
                st = plan(n, g, d)
                assert st.kind is PlanKind.PLANNED
                want = ConstructionId.D2 if d == 2 else ConstructionId.D4
                assert st.recipe.construction is want


def test_plan_validates_d():
    with pytest.raises(ValueError):
        plan(4, 2, 5)
