import math

import pytest

from conftest import edges_of

from kfactor.constructions import (
    ApplicabilityError,
    decompose_d2,
    decompose_d4,
    odar,
    of_2n_even_g_even_n,
    of_2n_odd_g_even_n,
    of_2n_odd_g_odd_n,
    of_gplus1_even_g,
    of_odd_n_even_g,
    of_qplus1_prime_power,
    of_seed_4_2,
)
from kfactor.core import Instance, mod_interval, Edge
from kfactor.verify import verify_decomposition


def assert_verified(dec, factors=None, size=None):
    report = verify_decomposition(dec)
    assert report.ok, report.first()
    if factors is not None:
        assert len(dec.factors) == factors
    if size is not None:
        assert all(len(f.edges) == size for f in dec.factors)


def test_d2_class_counts():
    dec = decompose_d2(Instance(3, 2))
    assert len(dec.factors) == 2
    assert all(len(f.edges) == 6 for f in dec.factors)
    assert_verified(dec)
    dec = decompose_d2(Instance(2, 1))
    assert len(dec.factors) == 1
    assert dec.factors[0].edges == (Edge.make(1, 1, 2, 1),)
    assert_verified(dec)


def test_d2_sweep_small():
    for n in range(2, 7):
        for g in range(1, 7):
            assert_verified(decompose_d2(Instance(n, g)), factors=g, size=math.comb(n, 2) * g)


def test_d4_counts():
    assert_verified(decompose_d4(Instance(4, 2)), factors=12, size=2)
    assert_verified(decompose_d4(Instance(3, 2)), factors=12, size=1)
    assert_verified(decompose_d4(Instance(2, 3)), factors=9, size=1)


def test_d4_supports_disjoint():
    dec = decompose_d4(Instance(5, 3))
    for f in dec.factors:
        supports = [(e.u.part, e.v.part) for e in f.edges]
        flat = [p for s in supports for p in s]
        assert len(flat) == len(set(flat))


def test_seed_4_2_exact(seed_rows):
    dec = of_seed_4_2()
    assert len(dec.factors) == 6
    for f, row in zip(dec.factors, seed_rows):
        assert f.edges == edges_of(row)
    assert_verified(dec)


ODAR_4_4_GOLDEN = {
    "A_1": "1_2 2_2  3_2 4_2  1_3 3_3  2_3 4_3  1_4 4_4  2_4 3_4",
    "A_2": "1_3 2_3  3_3 4_3  1_4 3_4  2_4 4_4  1_1 4_1  2_1 3_1",
    "A_3": "1_4 2_4  3_4 4_4  1_1 3_1  2_1 4_1  1_2 4_2  2_2 3_2",
    "A_4": "1_1 2_1  3_1 4_1  1_2 3_2  2_2 4_2  1_3 4_3  2_3 3_3",
    "B^1_{1,1}": "1_3 2_4  2_3 3_4  3_3 4_4  4_3 1_4  1_1 3_2  2_1 4_2",
    "B^1_{1,2}": "1_1 2_2  2_1 3_2  3_1 4_2  4_1 1_2  1_3 3_4  2_3 4_4",
    "B^1_{2,1}": "1_2 2_4  2_2 3_4  3_2 4_4  4_2 1_4  1_1 3_3  2_1 4_3",
    "B^1_{2,2}": "1_1 2_3  2_1 3_3  3_1 4_3  4_1 1_3  1_2 3_4  2_2 4_4",
    "B^1_{3,1}": "1_2 2_3  2_2 3_3  3_2 4_3  4_2 1_3  1_1 3_4  2_1 4_4",
    "B^1_{3,2}": "1_1 2_4  2_1 3_4  3_1 4_4  4_1 1_4  1_2 3_3  2_2 4_3",
    "B^2_{1,1}": "1_3 4_4  2_3 1_4  3_3 2_4  4_3 3_4  3_1 1_2  4_1 2_2",
    "B^2_{1,2}": "1_1 4_2  2_1 1_2  3_1 2_2  4_1 3_2  3_3 1_4  4_3 2_4",
    "B^2_{2,1}": "1_2 4_4  2_2 1_4  3_2 2_4  4_2 3_4  3_1 1_3  4_1 2_3",
    "B^2_{2,2}": "1_1 4_3  2_1 1_3  3_1 2_3  4_1 3_3  3_2 1_4  4_2 2_4",
    "B^2_{3,1}": "1_2 4_3  2_2 1_3  3_2 2_3  4_2 3_3  3_1 1_4  4_1 2_4",
    "B^2_{3,2}": "1_1 4_4  2_1 1_4  3_1 2_4  4_1 3_4  3_2 1_3  4_2 2_3",
}


def test_odar_4_4_matches_golden():
    dec = odar(Instance(4, 4))
    assert [f.label for f in dec.factors] == list(ODAR_4_4_GOLDEN)
    for label, row in ODAR_4_4_GOLDEN.items():
        assert dec.factor_by_label(label).edge_set() == frozenset(edges_of(row)), label
    assert len(dec.factors) == 16
    assert sum(len(f.edges) for f in dec.factors) == 96
    assert_verified(dec)


def test_odar_3_5():
    assert_verified(odar(Instance(3, 5)), factors=25, size=3)


def test_odar_rejects_n_gt_g():
    with pytest.raises(ApplicabilityError):
        odar(Instance(5, 3))


def test_of_gplus1_even_g_counts():
    assert_verified(of_gplus1_even_g(2), factors=4, size=3)
    assert_verified(of_gplus1_even_g(4), factors=16, size=10)
    with pytest.raises(ApplicabilityError):
        of_gplus1_even_g(3)


def test_of_gplus1_removed_factor_is_the_duplicate():
    g = 4
    n = g + 1
    dec = of_gplus1_even_g(g)
    labels = {f.label for f in dec.factors}
    half = (n - 1) // 2
    assert f"C^1_{{1,{half}}}" not in labels
    assert f"C^2_{{1,{half}}}" in labels
    duplicate = frozenset(
        Edge.make(mod_interval(r + w, 1, n), w, mod_interval(r - w, 1, n), n - w)
        for w in range(1, half + 1)
        for r in range(1, n + 1)
    )
    assert all(f.edge_set() != duplicate for f in dec.factors)


def test_of_qplus1_counts():
    assert_verified(of_qplus1_prime_power(3), factors=9, size=6)
    assert_verified(of_qplus1_prime_power(5), factors=25, size=15)
    with pytest.raises(ApplicabilityError):
        of_qplus1_prime_power(4)
    with pytest.raises(ApplicabilityError):
        of_qplus1_prime_power(15)


def test_of_qplus1_extension_field():
    assert_verified(of_qplus1_prime_power(9), factors=81, size=45)


def test_of_odd_n_even_g():
    assert_verified(of_odd_n_even_g(5, 2), factors=8, size=5)
    assert_verified(of_odd_n_even_g(7, 4), factors=24, size=14)
    with pytest.raises(ApplicabilityError):
        of_odd_n_even_g(5, 4)


def test_of_2n_odd_g_odd_n():
    assert_verified(of_2n_odd_g_odd_n(3, 3), factors=15, size=9)
    assert_verified(of_2n_odd_g_odd_n(5, 3), factors=27, size=15)
    assert_verified(of_2n_odd_g_odd_n(5, 5), factors=45, size=25)
    with pytest.raises(ApplicabilityError):
        of_2n_odd_g_odd_n(3, 5)


def test_of_2n_even_g_even_n():
    assert_verified(of_2n_even_g_even_n(4, 2), factors=14, size=8)
    assert_verified(of_2n_even_g_even_n(8, 4), factors=60, size=32)
    with pytest.raises(ApplicabilityError):
        of_2n_even_g_even_n(6, 4)


def test_of_2n_odd_g_even_n():
    assert_verified(of_2n_odd_g_even_n(6, 3), factors=33, size=18)
    assert_verified(of_2n_odd_g_even_n(10, 5), factors=95, size=50)
    with pytest.raises(ApplicabilityError):
        of_2n_odd_g_even_n(4, 3)


def test_edge_conservation_before_partition():
    dec = odar(Instance(5, 6))
    inst = dec.instance
    assert sum(len(f.edges) for f in dec.factors) == inst.edge_count


def test_construction_determinism():
    a = of_qplus1_prime_power(3)
    b = of_qplus1_prime_power(3)
    assert [f.edges for f in a.factors] == [f.edges for f in b.factors]
