import random

import pytest
from hypothesis import strategies as st

from cartdec import catalog
from cartdec.group import PermGroup
from cartdec.perm import Perm


def perms(n_min=1, n_max=9):
    """Hypothesis strategy for permutations of small degree."""
    return st.integers(n_min, n_max).flatmap(lambda n: st.permutations(range(n)).map(Perm))


def perm_pairs(n_min=1, n_max=9):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.tuples(st.permutations(range(n)).map(Perm), st.permutations(range(n)).map(Perm))
    )


def small_groups(n_min=2, n_max=7, max_gens=3):
    """Groups generated by a few random permutations of a common degree."""
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.permutations(range(n)).map(Perm), min_size=1, max_size=max_gens).map(
            lambda gs: PermGroup(gs, degree=n)
        )
    )


def random_perm(rng: random.Random, n: int) -> Perm:
    a = list(range(n))
    rng.shuffle(a)
    return Perm(a)


@pytest.fixture(scope="session")
def A5():
    return catalog.load("a5_natural")["G"]


@pytest.fixture(scope="session")
def A6():
    return catalog.load("a6_natural")["G"]


@pytest.fixture(scope="session")
def S6():
    return catalog.load("s6_natural")["G"]


@pytest.fixture(scope="session")
def a6_classes():
    return catalog.load("a6_a5_classes")


@pytest.fixture(scope="session")
def pgl29():
    return catalog.load("a6_pgl29")


@pytest.fixture(scope="session")
def S2():
    return PermGroup([Perm([1, 0])], degree=2)


@pytest.fixture(scope="session")
def z2cubed():
    """Z2^3 acting regularly, with three order-4 subgroups satisfying the product identities."""

    def tr(v):
        return Perm([x ^ v for x in range(8)])

    T = PermGroup([tr(1), tr(2), tr(4)], degree=8)
    A = PermGroup([tr(1), tr(2)], degree=8)
    B = PermGroup([tr(2), tr(4)], degree=8)
    C = PermGroup([tr(1), tr(4)], degree=8)
    return T, A, B, C


# --- built instances, shared across modules ---------------------------------------


@pytest.fixture(scope="session")
def ex2_inst(a6_classes):
    from cartdec.constructions import build_ex2

    return build_ex2(a6_classes["T"], a6_classes["A"], a6_classes["B"], "A6")


@pytest.fixture(scope="session")
def case_a_inst(a6_classes, A6, S2):
    from cartdec.constructions import build_case_a

    return build_case_a(a6_classes["B"], A6, S2, "A5", "A6")


@pytest.fixture(scope="session")
def compound_inst(A5, S2):
    from cartdec.constructions import build_compound_diagonal

    return build_compound_diagonal(A5, S2, "A5")


@pytest.fixture(scope="session")
def simple_diag(A5):
    from cartdec.constructions import build_simple_diagonal

    return build_simple_diagonal(A5)[0]


@pytest.fixture(scope="session")
def simple_plinth_inst(pgl29):
    from cartdec.constructions import build_simple_plinth

    return build_simple_plinth(pgl29["T"], pgl29["A"], pgl29["B"], pgl29["theta"], "A6")


@pytest.fixture(scope="session")
def ex3_toy(z2cubed):
    from cartdec.constructions import build_ex3

    return build_ex3(*z2cubed, trusted=True)


@pytest.fixture(scope="session")
def materialized_instances(ex2_inst, case_a_inst, compound_inst, simple_plinth_inst, ex3_toy):
    return {
        "ex2": ex2_inst,
        "case-a": case_a_inst,
        "compound-diagonal": compound_inst,
        "simple-plinth": simple_plinth_inst,
        "ex3-toy": ex3_toy,
    }
