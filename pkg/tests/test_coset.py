from hypothesis import given, settings
from hypothesis import strategies as st

from cartdec.coset import BatchCanonizer, CosetSpace, conjugate_rows
from cartdec.group import PermGroup, generate_elements_bruteforce, point_stabilizer
from cartdec.perm import Perm

from conftest import small_groups

import numpy as np


def brute_cosets(G, K):
    Ke = generate_elements_bruteforce(K)
    seen, cosets = set(), []
    for g in generate_elements_bruteforce(G):
        if g in seen:
            continue
        c = frozenset(k * g for k in Ke)
        seen |= c
        cosets.append(c)
    return cosets


@settings(max_examples=30, deadline=None)
@given(small_groups(n_max=6), st.integers(0, 5))
def test_coset_space_against_bruteforce(G, x):
    K = point_stabilizer(G, x % G.degree)
    cs = CosetSpace(G, K)
    cosets = brute_cosets(G, K)
    assert len(cs) == len(cosets)
    which = {}
    for i, r in enumerate(cs.reps):
        c = next(j for j, C in enumerate(cosets) if Perm(r) in C)
        which[i] = c
    assert len(set(which.values())) == len(cosets)
    for gi, g in enumerate(G.gens):
        for i, r in enumerate(cs.reps):
            j = int(cs.action[gi][i])
            assert Perm(r) * g in cosets[which[j]]
        assert np.array_equal(cs.image_under(g), cs.action[gi])


@settings(max_examples=30, deadline=None)
@given(small_groups(n_max=6))
def test_batch_canonizer_matches_chain(G):
    K = PermGroup(G.gens[:1], degree=G.degree)
    canon = BatchCanonizer(K.chain)
    rows = np.array([g.a for g in list(G.elements())[:30]])
    out = canon(rows)
    for r, o in zip(rows, out):
        assert Perm(o) == K.canonical_coset_rep(Perm(r))


def test_conjugate_rows():
    c = Perm([1, 2, 0, 3])
    R = np.array([Perm([1, 0, 2, 3]).a, Perm([0, 1, 3, 2]).a])
    out = conjugate_rows(R, c)
    for r, o in zip(R, out):
        assert Perm(o) == Perm(r).conj(c)


def test_a6_on_cosets_of_a5(a6_classes):
    T, A = a6_classes["T"], a6_classes["A"]
    cs = CosetSpace(T, A)
    assert len(cs) == 6
    act = PermGroup([Perm(a) for a in cs.action], degree=6)
    assert act.order() == 360
