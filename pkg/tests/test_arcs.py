import itertools

import pytest

from nnscf import (
    NN,
    Field,
    all_posets,
    antichain,
    atomic_factorization,
    big_partition,
    count_polynomial,
    crossing_set,
    disjoint_union,
    enumerate_diagrams,
    is_atomic,
    is_nonnesting,
    linear_order,
    nst,
    poset_from_covers,
    proj,
    restrict,
    sml_partition,
    validate,
)
from nnscf.arcs import empty_diagram, reassemble, shape_arc_counts
from nnscf.errors import (
    ArcNotComparable,
    DuplicateArc,
    NotLinearOrder,
    NotNonnesting,
    OverlappingGroundSets,
    PartitionConditionViolated,
    UnknownElement,
    ZeroLabel,
)
from nnscf.serialize import diagram_from_json

from oracles import all_count_rgs, brute_diagrams, nn_count_rgs


def arcset(d):
    return {(a, b, lab.code) for a, b, lab in d.arcs}


def test_validate_examples(F2):
    L8 = linear_order(8)
    nu = validate(L8, F2, [(1, 3, 1), (3, 7, 1), (4, 5, 1), (5, 8, 1)])
    assert len(nu) == 4
    with pytest.raises(PartitionConditionViolated) as err:
        validate(linear_order(3), F2, [(1, 2, 1), (1, 3, 1)])
    assert err.value.witness == ("1", "2", "3")
    assert len(validate(linear_order(3), F2, [])) == 0


def test_validate_errors(F2, F3):
    L3 = linear_order(3)
    with pytest.raises(ArcNotComparable):
        validate(L3, F2, [(3, 1, 1)])
    with pytest.raises(ZeroLabel):
        validate(L3, F3, [(1, 2, 0)])
    with pytest.raises(DuplicateArc):
        validate(L3, F3, [(1, 2, 1), (1, 2, 2)])
    with pytest.raises(PartitionConditionViolated):
        validate(L3, F2, [(1, 3, 1), (2, 3, 1)])
    with pytest.raises(UnknownElement):
        validate(L3, F2, [(1, 9, 1)])


def test_poset_diagram_example(F2):
    P = poset_from_covers([str(i) for i in range(1, 7)],
                          [("1", "5"), ("2", "5"), ("6", "2"), ("6", "3"), ("3", "5"), ("4", "5")])
    # two arcs leave 6 towards incomparable targets; two arcs enter 5 from incomparable sources
    d = validate(P, F2, [(6, 2, 1), (6, 3, 1), (1, 5, 1), (4, 5, 1)])
    assert len(d) == 4


def test_nonnesting_examples(F2):
    L8 = linear_order(8)
    eta = validate(L8, F2, [(1, 3, 1), (3, 7, 1), (2, 5, 1), (5, 8, 1)])
    nu = validate(L8, F2, [(1, 3, 1), (3, 7, 1), (4, 5, 1), (5, 8, 1)])
    assert is_nonnesting(eta)
    assert not is_nonnesting(nu)
    assert is_nonnesting(empty_diagram(L8, F2))


def test_enumerate_linear3(F2):
    got = [sorted((a, b) for a, b, _ in d.arcs) for d in NN(linear_order(3), F2)]
    # lexicographic by arc list, empty first
    assert got == [[], [("1", "2")], [("1", "2"), ("2", "3")], [("1", "3")], [("2", "3")]]


def test_enumeration_counts(F2):
    assert len(NN(linear_order(4), F2)) == 14
    assert len(enumerate_diagrams(linear_order(4), F2, nonnesting_only=False)) == 15


@pytest.mark.parametrize("q", [2, 3])
def test_enumeration_matches_subset_oracle(q):
    F = Field(q)
    panels = [linear_order(4)] + all_posets(["a", "b", "c"]) + [
        poset_from_covers("abcd", [("a", "c"), ("b", "c"), ("c", "d")])]
    for P in panels:
        for nonnesting in (True, False):
            ours = enumerate_diagrams(P, F, nonnesting)
            assert len(set(ours)) == len(ours)
            got = {frozenset(arcset(d)) for d in ours}
            assert got == set(brute_diagrams(P, q, nonnesting))
            assert len(ours) == count_polynomial(P, q, nonnesting)
            assert [d.raw for d in ours] == sorted(d.raw for d in ours)


def test_counts_against_set_partitions():
    for n in range(6):
        for q in (2, 3, 5):
            assert count_polynomial(linear_order(n), q) == nn_count_rgs(n, q)
            assert count_polynomial(linear_order(n), q, False) == all_count_rgs(n, q)
    assert [sum(shape_arc_counts(linear_order(n)).values()) for n in range(6)] == [1, 1, 2, 5, 14, 42]


def test_sml_big_example():
    F7 = Field(7)
    L12 = linear_order(12)
    eta = validate(L12, F7, [(1, 3, 1), (3, 7, 2), (4, 5, 3), (6, 11, 4), (8, 9, 5), (10, 12, 6)])
    assert sml_partition(eta) == validate(L12, F7, [(1, 3, 1), (4, 5, 3), (8, 9, 5), (10, 12, 6)])
    assert big_partition(eta) == validate(L12, F7, [(1, 3, 1), (3, 7, 2), (6, 11, 4), (10, 12, 6)])
    assert restrict(eta, ["1", "2", "3"]) == validate(linear_order(3), F7, [(1, 3, 1)])


@pytest.mark.parametrize("q", [2, 3])
def test_sml_big_properties(q):
    F = Field(q)
    for P in [linear_order(4)] + all_posets(["a", "b", "c"]):
        nn = set(NN(P, F))
        images_s, images_b = set(), set()
        for eta in enumerate_diagrams(P, F, nonnesting_only=False):
            s, b = sml_partition(eta), big_partition(eta)
            assert is_nonnesting(s) and is_nonnesting(b)
            assert s.issubset(eta) and b.issubset(eta)
            assert sml_partition(s) == s and big_partition(b) == b
            images_s.add(s)
            images_b.add(b)
            if eta in nn:
                assert s == eta == b
        assert images_s == nn == images_b


def test_restrict_and_union(F2):
    L4 = linear_order(4)
    a = validate(linear_order(["1", "4"]), F2, [(1, 4, 1)])
    b = validate(linear_order(["2", "3"]), F2, [(2, 3, 1)])
    u = disjoint_union(a, b, L4)
    assert u == validate(L4, F2, [(1, 4, 1), (2, 3, 1)])
    assert not is_nonnesting(u)
    with pytest.raises(OverlappingGroundSets):
        disjoint_union(a, a)
    eta = validate(L4, F2, [(1, 2, 1), (3, 4, 1)])
    assert restrict(eta, L4.elements) == eta
    assert len(restrict(eta, [])) == 0
    for r in range(5):
        for S in itertools.combinations(L4.elements, r):
            T = [x for x in L4.elements if x not in S]
            assert disjoint_union(restrict(eta, S), restrict(eta, T), L4).issubset(eta)


def test_crossings(F2):
    L8 = linear_order(8)
    eta = validate(L8, F2, [(1, 3, 1), (3, 7, 1), (2, 5, 1), (5, 8, 1)])
    assert crossing_set(eta) == {(("1", "3"), ("2", "5")), (("2", "5"), ("3", "7")),
                                 (("3", "7"), ("5", "8"))}
    assert len(crossing_set(validate(linear_order(4), F2, [(1, 3, 1), (2, 4, 1)]))) == 1
    assert crossing_set(validate(linear_order(4), F2, [(1, 2, 1), (3, 4, 1)])) == set()
    with pytest.raises(NotLinearOrder):
        crossing_set(empty_diagram(antichain(2), F2))


def test_nst(F2):
    L4, L6 = linear_order(4), linear_order(6)
    assert nst(validate(L4, F2, [(2, 3, 1)]), validate(L4, F2, [(1, 4, 1)])) == 1
    assert nst(empty_diagram(L4, F2), empty_diagram(L4, F2)) == 0
    assert nst(validate(L6, F2, [(2, 3, 1), (5, 6, 1)]), validate(L6, F2, [(1, 4, 1)])) == 1
    with pytest.raises(NotLinearOrder):
        nst(empty_diagram(antichain(2), F2), empty_diagram(antichain(2), F2))


@pytest.mark.parametrize("q", [2, 3, 5])
def test_proj_example(q):
    F = Field(q)
    L5 = linear_order(5)
    eta = validate(L5, F, [(1, 2, 1), (3, 5, 1)])
    S = ["1", "2", "3", "4"]
    sub = linear_order(S)
    want = {validate(sub, F, [(1, 2, 1)])} | {validate(sub, F, [(1, 2, 1), (3, 4, c)]) for c in range(1, q)}
    assert set(proj(eta, S)) == want


def test_proj_trivial_cases(F2):
    L4 = linear_order(4)
    for eta in NN(L4, F2):
        assert proj(eta, L4.elements) == [eta]
    assert proj(empty_diagram(L4, F2), ["1", "3"]) == [empty_diagram(linear_order(["1", "3"]), F2)]
    with pytest.raises(NotNonnesting):
        proj(validate(L4, F2, [(1, 4, 1), (2, 3, 1)]), ["1"])


def test_atomic(F2):
    L2 = linear_order(2)
    assert is_atomic(validate(L2, F2, [(1, 2, 1)]))
    assert not is_atomic(empty_diagram(L2, F2))
    L4 = linear_order(4)
    eta = validate(L4, F2, [(1, 2, 1), (3, 4, 1)])
    assert atomic_factorization(eta) == [
        (("1", "2"), validate(linear_order(["1", "2"]), F2, [(1, 2, 1)])),
        (("3", "4"), validate(linear_order(["3", "4"]), F2, [(3, 4, 1)]))]
    for d in NN(antichain(3), F2):
        assert is_atomic(d)


@pytest.mark.parametrize("q", [2, 3])
def test_factorization_reassembles(q):
    F = Field(q)
    for P in [linear_order(4)] + all_posets(["a", "b", "c"]):
        for eta in NN(P, F):
            factors = atomic_factorization(eta)
            assert all(is_atomic(f) for _, f in factors)
            glued = reassemble(factors)
            assert glued == eta and glued.poset == P


def test_json_roundtrip(F3):
    L4 = linear_order(4)
    for eta in NN(L4, F3):
        assert diagram_from_json(eta.to_json(), L4, F3) == eta
    F4 = Field(2, 2, [1, 1, 1])
    d = validate(L4, F4, [(1, 3, [0, 1])])
    assert d.to_json() == {"arcs": [{"from": "1", "to": "3", "label": [0, 1]}]}
    assert diagram_from_json(d.to_json(), L4, F4) == d
