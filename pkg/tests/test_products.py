import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cartdec.group import PermGroup, generate_elements_bruteforce
from cartdec.perm import Perm
from cartdec.products import (
    Lifter,
    WreathProduct,
    act_on_tuple,
    coordinate_arrays,
    direct_product,
    factor_action_group,
    index_tuple,
    is_minimal_normal,
    is_simple_nonabelian,
    mu,
    product_action_images,
    tuple_index,
    tuple_stabilizer,
    verify_plinth,
)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_tuple_index_roundtrip(sizes, data):
    n = int(np.prod(sizes))
    i = data.draw(st.integers(0, n - 1))
    t = index_tuple(i, sizes)
    assert tuple_index(t, sizes) == i
    assert tuple(coordinate_arrays(sizes)[i]) == t


def test_direct_product(A5, A6):
    M = direct_product([A5, A6])
    assert M.order() == 60 * 360 and M.ambient.order() == 21600
    assert M.domains == ((0, 5), (5, 6))
    assert [M.owner(p) for p in (0, 4, 5, 10)] == [0, 0, 1, 1]
    assert M.sigma_order([1], M.ambient) == 360
    assert M.complement([0]) == [1]


def test_wreath_product_action(A5, S2):
    W = WreathProduct(A5, S2)
    assert W.order() == 7200
    P = W.product_group()
    assert P.degree == 25 and P.order() == 7200 and P.is_transitive()
    assert tuple_stabilizer(W.union_group, W.coordinate_ranges(), (0, 0)).order() == 7200 // 25


def test_product_action_matches_tuple_action(A5, S2):
    W = WreathProduct(A5, S2)
    ranges = W.coordinate_ranges()
    for g in W.union_group.gens:
        img = product_action_images(g.a, ranges)
        for t in itertools.product(range(5), repeat=2):
            assert index_tuple(int(img[tuple_index(t, [5, 5])]), [5, 5]) == act_on_tuple(g, ranges, t)


def test_product_action_is_a_homomorphism(A5, S2):
    W = WreathProduct(A5, S2)
    g, h = W.union_group.gens[0], W.union_group.gens[-1]
    assert W.materialize(g * h) == W.materialize(g) * W.materialize(h)


def test_mu_projection(A5, S2):
    W = WreathProduct(A5, S2)
    base = PermGroup(W.union_group.gens[:-1], degree=10)
    assert mu(W.union_group, W.coordinate_ranges(), 1, base).order() == 60
    with pytest.raises(ValueError):
        mu(W.union_group, W.coordinate_ranges(), 0, W.union_group)


def test_simplicity(A5, A6, S6):
    assert is_simple_nonabelian(A5) and is_simple_nonabelian(A6)
    assert is_simple_nonabelian(S6) is False
    C5 = PermGroup([Perm([1, 2, 3, 4, 0])])
    assert is_simple_nonabelian(C5) is False
    assert is_simple_nonabelian(A6, limit=100) is None


def test_lifter_reconstructs_elements(A5, S2):
    W = WreathProduct(A5, S2)
    # extend the union action by the product action, keep the union as factor domains
    gens = [Perm(np.concatenate([g.a, W.materialize(g).a + 10])) for g in W.union_group.gens]
    G = PermGroup(gens, degree=35)
    L = Lifter(G, 10)
    for x in list(generate_elements_bruteforce(G, 10**4))[:50]:
        assert L.lift(Perm(x.a[:10])) == x
    with pytest.raises(ValueError):
        L.lift(Perm([1, 0] + list(range(2, 10))))


def test_plinth_certificates(A5, S2):
    W = WreathProduct(A5, S2)
    M = direct_product([A5, A5])
    G = W.union_group
    assert is_minimal_normal(G, M)
    assert factor_action_group(G, M).order() == 2
    P = verify_plinth(G, M, True)
    assert P.ok and P.summary()["verified"]
    # M alone does not permute its two factors transitively
    assert not is_minimal_normal(M.ambient, M)
