"""Building-block axiom checks on small special linear groups."""

import pytest

from kmsylow.affine import (
    borel_subgroup,
    enumerate_special_linear,
    monomial_subgroup,
    weyl_representatives,
)
from kmsylow.fields import FqConfig
from kmsylow.pgroup import FiniteGroupTable, GroupOracle, is_perfect, verify_tits_axioms

F2 = FqConfig(2)
F3 = FqConfig(3)
F4 = FqConfig(2, 2)


def sl_data(m, fq):
    group, table = enumerate_special_linear(m, fq)
    B = borel_subgroup(group, table)
    N = monomial_subgroup(group, table)
    return group, table, B, N, weyl_representatives(group)


def test_sl_orders():
    _, t22, b22, n22, _ = sl_data(2, F2)
    assert (t22.order, b22.order, n22.order) == (6, 2, 2)
    _, t23, b23, n23, _ = sl_data(2, F3)
    assert (t23.order, b23.order, n23.order) == (24, 6, 4)
    _, t32, b32, n32, _ = sl_data(3, F2)
    assert (t32.order, b32.order, n32.order) == (168, 8, 6)


@pytest.mark.parametrize(
    "m,fq", [(2, F2), (2, F3), (3, F2)], ids=["sl2f2", "sl2f3", "sl3f2"]
)
def test_tits_axioms_hold(m, fq):
    _, G, B, N, s_reps = sl_data(m, fq)
    report = verify_tits_axioms(G, B, N, s_reps)
    assert report == {
        "T1": True,
        "T2": True,
        "T3": True,
        "T4": True,
        "bruhat_partition": True,
    }


def test_tits_axioms_fail_for_bad_borel():
    # N alone does not generate SL_2(F_3) together with the torus
    _, G, B, N, s_reps = sl_data(2, F3)
    torus = FiniteGroupTable(
        G.oracle,
        (),
        tuple(k for k in N.elements if k in B.element_set),
        p=G.p,
    )
    report = verify_tits_axioms(G, torus, N, s_reps)
    assert not report["T1"]


def test_trivial_group_edge_case():
    oracle = GroupOracle(
        identity=b"e", mul=lambda a, b: b"e", inv=lambda a: b"e"
    )
    G = FiniteGroupTable(oracle, (), (b"e",))
    report = verify_tits_axioms(G, G, G, [])
    assert report["T1"] and report["T2"] and report["T3"]
    assert report["bruhat_partition"]


def test_perfection():
    _, t22, _, _, _ = sl_data(2, F2)
    assert not is_perfect(t22)
    _, t23, _, _, _ = sl_data(2, F3)
    assert not is_perfect(t23)
    _, t24, _, _, _ = sl_data(2, F4)
    assert t24.order == 60
    assert is_perfect(t24)
    _, t32, _, _, _ = sl_data(3, F2)
    assert is_perfect(t32)
