"""Tests for the black-box group engine on synthetic oracles."""

import itertools
import random

import pytest

from kmsylow.errors import ChainNotNested, EnumerationCapExceeded, NotAPGroup
from kmsylow.pgroup import (
    FiniteGroupTable,
    GroupOracle,
    check_filtration_lemma,
    closure,
    commutator,
    derived_subgroup,
    frattini_quotient_dimension,
    frattini_subgroup,
    is_perfect,
    normal_closure,
    orders_are_p_powers,
    subgroup_index,
)


def vector_oracle(p, d):
    def mul(a, b):
        return bytes((x + y) % p for x, y in zip(a, b))

    def inv(a):
        return bytes((-x) % p for x in a)

    return GroupOracle(identity=bytes(d), mul=mul, inv=inv)


def cyclic_oracle(n):
    def mul(a, b):
        return bytes([(a[0] + b[0]) % n])

    def inv(a):
        return bytes([(-a[0]) % n])

    return GroupOracle(identity=bytes([0]), mul=mul, inv=inv)


def heisenberg_oracle(p):
    # triples (a, b, c): (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
    def mul(x, y):
        return bytes(
            (
                (x[0] + y[0]) % p,
                (x[1] + y[1]) % p,
                (x[2] + y[2] + x[0] * y[1]) % p,
            )
        )

    def inv(x):
        return bytes(((-x[0]) % p, (-x[1]) % p, (x[0] * x[1] - x[2]) % p))

    return GroupOracle(identity=bytes(3), mul=mul, inv=inv)


def symmetric_oracle():
    # permutations of (0,1,2); mul(a,b) applies a then b
    def mul(a, b):
        return bytes(b[a[i]] for i in range(3))

    def inv(a):
        out = [0] * 3
        for i in range(3):
            out[a[i]] = i
        return bytes(out)

    return GroupOracle(identity=bytes((0, 1, 2)), mul=mul, inv=inv)


def test_closure_trivial_and_cyclic():
    oracle = vector_oracle(5, 1)
    assert closure([], oracle).order == 1
    assert closure([bytes([1])], oracle).order == 5


def test_closure_full_vector_group():
    oracle = vector_oracle(3, 2)
    table = closure([bytes((1, 0)), bytes((0, 1))], oracle, p=3)
    assert table.order == 9
    assert orders_are_p_powers(table, 3)


def test_closure_is_generator_order_independent():
    oracle = heisenberg_oracle(3)
    gens = [bytes((1, 0, 0)), bytes((0, 1, 0)), bytes((1, 1, 2))]
    rng = random.Random(8)
    reference = set(closure(gens, oracle).elements)
    for _ in range(10):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert set(closure(shuffled, oracle).elements) == reference


def test_closure_cap():
    oracle = vector_oracle(5, 2)
    with pytest.raises(EnumerationCapExceeded):
        closure([bytes((1, 0)), bytes((0, 1))], oracle, cap=10)


def test_normal_closure_of_transposition_in_s3():
    oracle = symmetric_oracle()
    swap = bytes((1, 0, 2))
    cycle = bytes((1, 2, 0))
    plain = closure([swap], oracle)
    assert plain.order == 2
    normal = normal_closure([swap], [swap, cycle], oracle)
    assert normal.order == 6


def test_derived_subgroups():
    oracle = vector_oracle(5, 3)
    table = closure([bytes((1, 0, 0)), bytes((0, 1, 0)), bytes((0, 0, 1))], oracle, p=5)
    assert derived_subgroup(table).order == 1

    h = heisenberg_oracle(5)
    table = closure([bytes((1, 0, 0)), bytes((0, 1, 0))], h, p=5)
    assert table.order == 125
    derived = derived_subgroup(table)
    assert derived.order == 5
    assert set(derived.elements) == {bytes((0, 0, c)) for c in range(5)}

    s3 = symmetric_oracle()
    table = closure([bytes((1, 0, 2)), bytes((1, 2, 0))], s3)
    assert derived_subgroup(table).order == 3


def test_derived_subgroup_is_normal_and_quotient_abelian():
    h = heisenberg_oracle(3)
    gens = [bytes((1, 0, 0)), bytes((0, 1, 0))]
    table = closure(gens, h, p=3)
    derived = derived_subgroup(table)
    for g in table.elements:
        for d in derived.elements:
            assert h.mul(h.mul(g, d), h.inv(g)) in derived.element_set
    # commutator of any two elements lands in the derived subgroup
    for a in table.elements:
        for b in table.elements:
            assert commutator(h, a, b) in derived.element_set


def test_frattini_dimensions():
    oracle = vector_oracle(3, 4)
    gens = [bytes([1 if i == j else 0 for j in range(4)]) for i in range(4)]
    assert frattini_quotient_dimension(closure(gens, oracle, p=3)) == 4

    z9 = cyclic_oracle(9)
    table = closure([bytes([1])], z9, p=3)
    assert frattini_quotient_dimension(table) == 1
    assert frattini_subgroup(table).order == 3

    h = heisenberg_oracle(5)
    table = closure([bytes((1, 0, 0)), bytes((0, 1, 0))], h, p=5)
    assert frattini_quotient_dimension(table) == 2


def test_frattini_requires_prime():
    oracle = vector_oracle(3, 2)
    table = closure([bytes((1, 0))], oracle)
    with pytest.raises(NotAPGroup):
        frattini_quotient_dimension(table)


def test_orders_are_p_powers():
    z6 = cyclic_oracle(6)
    table = closure([bytes([1])], z6, p=2)
    assert not orders_are_p_powers(table, 2)
    z8 = cyclic_oracle(8)
    table = closure([bytes([1])], z8, p=2)
    assert orders_are_p_powers(table, 2)


def test_frattini_dimension_is_minimal_generator_count():
    def minimal_generating_size(table):
        for size in range(len(table.elements) + 1):
            for combo in itertools.combinations(table.elements, size):
                if closure(combo, table.oracle).order == table.order:
                    return size
        raise AssertionError("unreachable")

    cases = []
    v32 = vector_oracle(3, 2)
    cases.append(closure([bytes((1, 0)), bytes((0, 1))], v32, p=3))
    cases.append(closure([bytes([1])], cyclic_oracle(9), p=3))
    h3 = heisenberg_oracle(3)
    cases.append(closure([bytes((1, 0, 0)), bytes((0, 1, 0))], h3, p=3))
    for table in cases:
        assert frattini_quotient_dimension(table) == minimal_generating_size(table)


def test_subgroup_index():
    oracle = vector_oracle(5, 2)
    sub = closure([bytes((1, 0))], oracle)
    assert subgroup_index(sub, [bytes((1, 0)), bytes((0, 1))], oracle) == 5

    h = heisenberg_oracle(3)
    center = closure([bytes((0, 0, 1))], h)
    assert subgroup_index(center, [bytes((1, 0, 0)), bytes((0, 1, 0))], h) == 9

    # right cosets are counted without any normality assumption
    s3 = symmetric_oracle()
    sub = closure([bytes((1, 0, 2))], s3)
    assert subgroup_index(sub, [bytes((1, 0, 2)), bytes((1, 2, 0))], s3) == 3


def test_is_perfect():
    trivial = closure([], vector_oracle(2, 1))
    assert is_perfect(trivial)
    z5 = closure([bytes([1])], cyclic_oracle(5), p=5)
    assert not is_perfect(z5)
    h = heisenberg_oracle(3)
    assert not is_perfect(closure([bytes((1, 0, 0)), bytes((0, 1, 0))], h, p=3))


def test_filtration_lemma_positive_cases():
    oracle = vector_oracle(3, 3)
    e1, e2, e3 = bytes((1, 0, 0)), bytes((0, 1, 0)), bytes((0, 0, 1))
    G = closure([e1, e2, e3], oracle, p=3)
    K1 = closure([e2, e3], oracle)
    K2 = closure([e3], oracle)
    K3 = closure([], oracle)

    report = check_filtration_lemma(G, [K1, K2, K3], G)
    assert report["hypothesis_holds"]
    assert report["conclusion_holds"]
    assert all(report["normal"])

    V = closure([e2, e3], oracle)
    report = check_filtration_lemma(G, [K1, K2, K3], V)
    assert report["inclusions"] == [True, True]
    assert report["conclusion_holds"]


def test_filtration_lemma_failing_hypothesis():
    oracle = vector_oracle(3, 2)
    e1, e2 = bytes((1, 0)), bytes((0, 1))
    G = closure([e1, e2], oracle, p=3)
    K1 = closure([e1], oracle)
    K2 = closure([], oracle)
    V = closure([e2], oracle)
    report = check_filtration_lemma(G, [K1, K2], V)
    assert report["inclusions"] == [False]
    assert not report["hypothesis_holds"]
    assert report["conclusion_holds"] is None


def test_filtration_lemma_chain_validation():
    oracle = vector_oracle(3, 2)
    e1, e2 = bytes((1, 0)), bytes((0, 1))
    G = closure([e1, e2], oracle, p=3)
    A = closure([e1], oracle)
    B = closure([e2], oracle)
    with pytest.raises(ChainNotNested):
        check_filtration_lemma(G, [A, B], G)
    with pytest.raises(ChainNotNested):
        check_filtration_lemma(G, [G, A], G)


def test_characteristic_subgroups_under_conjugation():
    # conjugating the generating set must not change derived or Frattini
    h = heisenberg_oracle(5)
    gens = [bytes((1, 0, 0)), bytes((0, 1, 0))]
    table = closure(gens, h, p=5)
    rng = random.Random(17)
    derived_ref = set(derived_subgroup(table).elements)
    frattini_ref = set(frattini_subgroup(table).elements)
    for _ in range(5):
        c = table.elements[rng.randrange(table.order)]
        conj_gens = [h.mul(h.mul(c, g), h.inv(c)) for g in gens]
        conj_table = closure(conj_gens, h, p=5)
        assert set(conj_table.elements) == set(table.elements)
        assert set(derived_subgroup(conj_table).elements) == derived_ref
        assert set(frattini_subgroup(conj_table).elements) == frattini_ref
