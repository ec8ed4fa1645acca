import pytest
from hypothesis import given, settings, strategies as st

from baerlab.errors import CapExceeded
from baerlab.group import (
    Group,
    Subgroup,
    centraliser,
    centraliser_order,
    class_index,
    class_index_via_centraliser,
    closure,
    conjugacy_class,
)
from baerlab.perm import identity, parse_cycles


def sym3():
    return Group(3, [parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)")], name="sym3")


def brute_class(G, x):
    """Oracle: conjugate x by every element of the materialised group."""
    return {x.conjugate(g) for g in G.elements}


def brute_centraliser(G, xs):
    return [g for g in G.elements if all(g * x == x * g for x in xs)]


def test_closure_empty_is_identity():
    assert closure([], 10, degree=4) == [identity(4)]


def test_closure_sym3():
    els = closure([parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)")], 10)
    assert len(els) == 6
    assert els[0] == identity(3)


def test_closure_seven_cycle():
    els = closure([parse_cycles("(0 1 2 3 4 5 6)")], 100)
    assert len(els) == 7


def test_closure_cap_exceeded():
    with pytest.raises(CapExceeded) as exc:
        closure([parse_cycles("(0 1)", 3), parse_cycles("(0 1 2)")], 4)
    assert exc.value.cap == 4
    assert exc.value.partial is not None


def test_closure_deterministic_and_idempotent():
    gens = [parse_cycles("(0 1)", 4), parse_cycles("(0 1 2 3)")]
    once = closure(gens, 100)
    assert closure(once, 100, degree=4) == closure(gens, 100)
    assert closure(gens, 100) == once


def test_conjugacy_class_identity():
    G = sym3()
    assert conjugacy_class(G, identity(3)) == [identity(3)]


def test_conjugacy_class_transposition_sym3():
    G = sym3()
    t = parse_cycles("(0 1)", 3)
    cls = conjugacy_class(G, t)
    assert len(cls) == 3
    assert set(cls) == brute_class(G, t)


def test_conjugacy_class_cap():
    G = sym3()
    with pytest.raises(CapExceeded):
        conjugacy_class(G, parse_cycles("(0 1)", 3), cap=2)


def test_class_index_central_element():
    C4 = Group(4, [parse_cycles("(0 1 2 3)")], name="c4")
    g = parse_cycles("(0 2)(1 3)")
    assert class_index(C4, g) == 1


def test_class_index_paths_agree_sym3():
    G = sym3()
    for x in G.elements:
        orbit = class_index(G, x)
        assert orbit == class_index_via_centraliser(G, x)
        assert orbit == len(brute_class(G, x))


def test_centraliser_examples():
    G = sym3()
    assert centraliser(G, [identity(3)]).order == G.order
    c3 = parse_cycles("(0 1 2)")
    cent = centraliser(G, [c3])
    assert cent.order == 3
    assert set(cent.members()) == set(brute_centraliser(G, [c3]))


def test_class_index_times_centraliser_is_order():
    G = sym3()
    for x in G.elements:
        assert class_index(G, x) * centraliser_order(G, [x]) == G.order


def test_element_store_sorted_and_indexed():
    G = sym3()
    els = G.elements
    assert list(els) == sorted(els)
    assert els[0] == identity(3)
    for i, e in enumerate(els):
        assert G.element_id(e) == i


def test_order_hint_checked():
    from baerlab.errors import InternalInvariantViolation

    G = Group(3, [parse_cycles("(0 1 2)")], order_hint=5)
    with pytest.raises(InternalInvariantViolation):
        G.materialize()


def test_materialize_refuses_past_cap():
    G = Group(3, [parse_cycles("(0 1 2)")], order_hint=10**9)
    with pytest.raises(CapExceeded):
        G.materialize()
    assert G.order == 10**9  # order still known without enumeration


def test_membership():
    G = sym3()
    assert parse_cycles("(0 2)", 3) in G
    assert identity(3) in G
    assert parse_cycles("(0 1)", 4) not in G


def test_subgroup_basics():
    G = sym3()
    S = Subgroup.from_generators(G, [parse_cycles("(0 1 2)")])
    assert S.order == 3
    assert identity(3) in S
    assert parse_cycles("(0 1)", 3) not in S
    assert Subgroup.trivial(G).order == 1
    assert Subgroup.full(G).order == 6
    # Lagrange holds for every cyclic subgroup.
    for x in G.elements:
        sub = Subgroup.from_generators(G, [x])
        assert G.order % sub.order == 0


def test_subgroup_intersection_and_product_order():
    G = sym3()
    A = Subgroup.from_generators(G, [parse_cycles("(0 1 2)")])
    B = Subgroup.from_generators(G, [parse_cycles("(0 1)", 3)])
    inter = A.intersection(B)
    assert inter.order == 1
    assert A.product_order(B) == 6


def test_subgroup_generating_set_regenerates():
    G = sym3()
    full = Subgroup.full(G)
    regen = Subgroup.from_generators(G, full.generating_set())
    assert regen.order == 6


def test_subgroup_conjugate():
    G = sym3()
    B = Subgroup.from_generators(G, [parse_cycles("(0 1)", 3)])
    conj = B.conjugate(parse_cycles("(0 1 2)"))
    assert conj.order == 2
    assert parse_cycles("(1 2)", 3) in conj


def test_as_group_view():
    G = sym3()
    A = Subgroup.from_generators(G, [parse_cycles("(0 1 2)")])
    view = A.as_group()
    assert view.order == 3
    assert view.degree == 3


@st.composite
def generator_sets(draw):
    degree = draw(st.integers(min_value=2, max_value=5))
    k = draw(st.integers(min_value=1, max_value=2))
    gens = [draw(st.permutations(range(degree))) for _ in range(k)]
    from baerlab.perm import Permutation

    return degree, [Permutation(g) for g in gens]


@settings(max_examples=40, deadline=None)
@given(generator_sets())
def test_closure_is_a_group(data):
    degree, gens = data
    els = closure(gens, 500, degree=degree)
    seen = set(els)
    assert identity(degree) in seen
    for a in els:
        assert a.inverse() in seen
        for b in els:
            assert a * b in seen


@settings(max_examples=25, deadline=None)
@given(generator_sets())
def test_class_index_paths_agree_random(data):
    degree, gens = data
    G = Group(degree, gens)
    if G.order > 200:
        return
    for x in G.elements:
        assert class_index(G, x) == class_index_via_centraliser(G, x)
