import pytest

from nnscf import (
    NN,
    Field,
    algebra_dim_linear,
    algebra_supercharacter_linear,
    all_posets,
    coarsen_from_algebra,
    coarsen_superclass,
    disjoint_union,
    enumerate_diagrams,
    ind_res_character,
    inner_product,
    linear_order,
    superclass_members,
    supercharacter_dim,
    supercharacter_table,
    supercharacter_value,
    validate,
    verify_sct,
)
from nnscf.arcs import empty_diagram
from nnscf.errors import NotLinearOrder, NotNonnesting
from nnscf.pattern_group import pattern_group, u_eta_subgroup
from nnscf.supercharacters import (
    ClassFunction,
    _point,
    algebra_orbit_character,
    algebra_superclass,
    algebra_table,
    big_fiber_character,
    big_fiber_characters,
    nonnesting_character,
)


def test_dim_examples(F2, L3):
    assert supercharacter_dim(empty_diagram(L3, F2)) == 1
    assert supercharacter_dim(validate(L3, F2, [(1, 3, 1)])) == 4
    assert sum(supercharacter_dim(eta) for eta in NN(L3, F2)) == 8


@pytest.mark.parametrize("q", [2, 3])
def test_dim_equals_index(q):
    F = Field(q)
    for P in [linear_order(3), linear_order(4)] + all_posets(["a", "b", "c"])[::4]:
        order = pattern_group(P, F).order
        for eta in NN(P, F):
            assert supercharacter_dim(eta) * len(u_eta_subgroup(eta)) == order


def test_value_examples(F2, L3):
    e13 = validate(L3, F2, [(1, 3, 1)])
    e23 = validate(L3, F2, [(2, 3, 1)])
    for nu in NN(L3, F2):
        assert supercharacter_value(empty_diagram(L3, F2), nu) == 1
    assert supercharacter_value(e13, e23).is_zero()
    assert supercharacter_value(e13, e13) == -4
    with pytest.raises(NotNonnesting):
        supercharacter_value(validate(linear_order(4), F2, [(1, 4, 1), (2, 3, 1)]), empty_diagram(linear_order(4), F2))


def test_ind_res_examples(F2, L3):
    G = pattern_group(L3, F2)
    assert ind_res_character(empty_diagram(L3, F2)) == ClassFunction.constant(G)
    chi = ind_res_character(validate(L3, F2, [(1, 3, 1)]))
    by_element = {x: v for x, v in zip(G.codes(), chi.values)}
    pos13 = G.pos[(0, 2)]
    for x, v in by_element.items():
        if not any(x):
            assert v == 4
        elif x[pos13] and sum(1 for c in x if c) == 1:
            assert v == -4
        else:
            assert v.is_zero()


@pytest.mark.parametrize("q", [2, 3])
def test_ind_res_equals_big_fiber_and_formula(q):
    F = Field(q)
    panels = [linear_order(3)] + all_posets(["a", "b", "c"])[::3]
    if q == 2:
        panels += [linear_order(4), all_posets(["a", "b", "c", "d"])[60]]
    for P in panels:
        fibers = big_fiber_characters(P, F)
        assert set(fibers) == set(NN(P, F))
        for eta in NN(P, F):
            chi = ind_res_character(eta)
            assert chi == fibers[eta]
            assert chi == nonnesting_character(eta)
    eta = validate(linear_order(3), F, [(1, 2, 1)])
    assert big_fiber_character(eta) == ind_res_character(eta)


def test_inner_products(F2, L3):
    G = pattern_group(L3, F2)
    one = ClassFunction.constant(G)
    assert inner_product(one, one) == 1
    assert inner_product(ClassFunction.regular(G), one) == 1
    a = ind_res_character(validate(L3, F2, [(1, 2, 1)]))
    b = ind_res_character(validate(L3, F2, [(2, 3, 1)]))
    assert inner_product(a, b).is_zero()


def test_table(F2, L3):
    T = supercharacter_table(L3, F2)
    assert T.dims == [1, 1, 1, 4, 1]
    assert len(T.rows) == len(T.cols) == 5
    assert [row[0] for row in T.values] == T.dims
    assert T.class_sizes == [1, 2, 2, 1, 2]


def test_verify_examples(F2, F3, hasse6):
    r = verify_sct(linear_order(3), F2)
    assert r["passed"] and r["supercharacters"] == 5
    r = verify_sct(linear_order(2), F3)
    assert r["passed"] and r["supercharacters"] == 3
    assert verify_sct(hasse6, F2, big_fiber=True)["passed"]
    r = verify_sct(linear_order(0), F2)
    assert r["passed"] and r["supercharacters"] == 1


def test_dims_multiply_across_split(F2):
    L4 = linear_order(4)
    left, right = linear_order(["1", "2"]), linear_order(["3", "4"])
    for a in NN(left, F2):
        for b in NN(right, F2):
            u = disjoint_union(a, b, L4)
            assert supercharacter_dim(u) == supercharacter_dim(a) * supercharacter_dim(b)


# algebra-group theory on chains

def test_algebra_examples(F2):
    L3, L4 = linear_order(3), linear_order(4)
    assert algebra_dim_linear(validate(L3, F2, [(1, 3, 1)])) == 4
    assert algebra_supercharacter_linear(validate(L3, F2, [(1, 3, 1)]), validate(L3, F2, [(1, 2, 1)])).is_zero()
    assert algebra_supercharacter_linear(validate(L4, F2, [(1, 4, 1)]), validate(L4, F2, [(2, 3, 1)])) == 8
    with pytest.raises(NotLinearOrder):
        algebra_dim_linear(empty_diagram(all_posets(["a", "b"])[0], F2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_algebra_formula_vs_orbit_sums(n, F2):
    P = linear_order(n)
    G = pattern_group(P, F2)
    diagrams = enumerate_diagrams(P, F2, nonnesting_only=False)
    for eta in diagrams:
        chi = algebra_orbit_character(eta)
        assert chi.values[0] == algebra_dim_linear(eta)
        assert algebra_supercharacter_linear(eta, empty_diagram(P, F2)) == algebra_dim_linear(eta)
        for nu in diagrams:
            assert chi(_point(G, nu)) == algebra_supercharacter_linear(eta, nu)


def test_algebra_table_sizes(F2):
    T = algebra_table(linear_order(3), F2)
    assert [len(algebra_superclass(nu)) for nu in T.cols] == T.class_sizes
    assert sum(T.class_sizes) == 8


def test_coarsening_ut4_dimension(F2):
    L4 = linear_order(4)
    eta = validate(L4, F2, [(1, 4, 1)])
    fiber = [nu for nu in enumerate_diagrams(L4, F2, False)
             if nu.arc_map.get(("1", "4")) and len(nu) <= 2 and (len(nu) == 1 or ("2", "3") in nu.arc_map)]
    assert sum(algebra_dim_linear(nu) for nu in fiber) == 32
    assert coarsen_from_algebra(eta).values[0] == 32 == supercharacter_dim(eta)


@pytest.mark.parametrize("q", [2, 3])
def test_coarsening_matches_pattern_group(q):
    F = Field(q)
    for n in range(4):
        P = linear_order(n)
        for eta in NN(P, F):
            assert coarsen_from_algebra(eta) == ind_res_character(eta)
            assert coarsen_superclass(eta) == [g.codes for g in superclass_members(P, F, eta)]
