import random

import numpy as np
import pytest

from cartdec.blocks import Partition
from cartdec.cartesian import (
    CartesianDecomposition,
    ClassifyError,
    Layout,
    Setting,
    classify,
    compute_F_profile,
    decomposition_to_system,
    diagonal_type,
    enumerate_invariant_decompositions,
    is_G_invariant,
    is_transitive_decomposition,
    natural_decomposition,
    system_to_decomposition,
    validate_decomposition,
)
from cartdec.config import Budget
from cartdec.group import PermGroup
from cartdec.perm import Perm
from cartdec.products import WreathProduct

EXPECTED = {"ex2": "2!~", "case-a": "1", "compound-diagonal": "S", "simple-plinth": "2~", "ex3-toy": "3"}
F_SIZES = {"ex2": 2, "case-a": 1, "simple-plinth": 2, "ex3-toy": 3}


def test_natural_decompositions_are_valid(materialized_instances):
    for inst in materialized_instances.values():
        S = inst.setting
        E = natural_decomposition(S)
        assert validate_decomposition(E)
        assert is_G_invariant(E, S) and is_transitive_decomposition(E, S)
        assert S.plinth().ok


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_classify_labels(name, materialized_instances):
    S = materialized_instances[name].setting
    assert classify(natural_decomposition(S), S).label == EXPECTED[name]


@pytest.mark.parametrize("name", sorted(F_SIZES))
def test_F_profile_constant(name, materialized_instances):
    S = materialized_instances[name].setting
    K = decomposition_to_system(natural_decomposition(S), S)
    F = compute_F_profile(K)
    assert set(F.sizes) == {F_SIZES[name]} and all(F.simple_factorization)


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_round_trip(name, materialized_instances):
    S = materialized_instances[name].setting
    E = natural_decomposition(S)
    K = decomposition_to_system(E, S)
    assert K.verify()["ok"]
    E2 = system_to_decomposition(K, S)
    assert E2.same_as(E)
    assert decomposition_to_system(E2, S).same_as(K)


@pytest.mark.parametrize("seed", range(3))
def test_label_independent_of_base_point(seed, ex2_inst, simple_plinth_inst):
    rng = random.Random(seed)
    for inst in (ex2_inst, simple_plinth_inst):
        S = inst.setting
        m = _random_word(rng, S.M_comb)
        S2 = S.translate(m)
        assert S2.omega_abs == int(m.a[S.omega_abs])
        assert S2.G_omega.same_as(S.G_omega.conjugate(S.to_small(m)))
        E = natural_decomposition(S)
        assert classify(E, S2).label == classify(E, S).label


def _random_word(rng, G, length=12):
    g = G.identity
    for _ in range(length):
        g = g * rng.choice(G.gens)
    return g


def test_invalid_decomposition():
    P = Partition(4, [0, 0, 1, 1])
    assert not validate_decomposition(CartesianDecomposition(4, (P, P)))
    Q = Partition(4, [0, 1, 0, 1])
    assert validate_decomposition(CartesianDecomposition(4, (P, Q)))


def _bare_product(A5):
    """A5 × A5 on 25 points: the natural decomposition is invariant but the partitions are not swapped."""
    W = WreathProduct(A5, PermGroup([Perm([0, 1])], degree=2))
    gens = W.union_group.gens[:-1]
    G = [Perm(np.concatenate([g.a, W.materialize(g).a + 10])) for g in gens]
    fg = [G[: len(A5.gens)], G[len(A5.gens) :]]
    lay = Layout(35, ((0, 5), (5, 5)), ((0, 5), (5, 5)), (10, 25), 25)
    return Setting(lay, G, fg, omega=0)


def test_classify_rejects_intransitive_action(A5):
    S = _bare_product(A5)
    E = natural_decomposition(S)
    assert is_G_invariant(E, S) and not is_transitive_decomposition(E, S)
    with pytest.raises(ClassifyError):
        classify(E, S)


def test_non_invariant_decomposition(ex2_inst):
    S = ex2_inst.setting
    E = natural_decomposition(S)
    rng = np.random.default_rng(0)
    perm = rng.permutation(E.omega_size)
    scrambled = CartesianDecomposition(E.omega_size, tuple(Partition(P.n, P.labels[perm]) for P in E.partitions))
    assert validate_decomposition(scrambled)
    assert not is_G_invariant(scrambled, S)
    with pytest.raises(ClassifyError):
        classify(scrambled, S)


def test_diagonal_types(simple_diag, compound_inst, ex2_inst):
    assert diagonal_type(simple_diag) == "simple-diagonal"
    assert diagonal_type(compound_inst.setting) == "compound-diagonal"
    assert diagonal_type(ex2_inst.setting) == "not-diagonal"


def test_enumerate_finds_natural(materialized_instances):
    for name in ("ex2", "case-a", "simple-plinth"):
        S = materialized_instances[name].setting
        res = enumerate_invariant_decompositions(S)
        assert not res.truncated
        nat = natural_decomposition(S)
        hits = [lab.label for E, _, lab in res.items if E is not None and E.same_as(nat)]
        assert hits == [EXPECTED[name]]


def test_enumerate_simple_diagonal_is_empty(simple_diag):
    res = enumerate_invariant_decompositions(simple_diag)
    assert res.items == [] and not res.truncated


def test_enumerate_budget_truncates(ex2_inst):
    res = enumerate_invariant_decompositions(ex2_inst.setting, Budget(blocks=2))
    assert res.truncated


def test_lazy_requires_stabilizer():
    lay = Layout(5 + 10, ((0, 5),), ((5, 5), (10, 5)), None, 25)
    g = [Perm(list(range(15)))]
    with pytest.raises(ValueError):
        Setting(lay, g, [g], omega=(0, 0))
