import pytest

from cartdec.config import Budget
from cartdec.constructions import (
    CASE_B_PAIRS,
    BuildError,
    analyze_embedding,
    build_case_a,
    build_compound_diagonal,
    build_ex1s,
    build_ex2,
    build_ex3,
    verify_sdcor,
)
from cartdec.group import PermGroup
from cartdec.perm import Perm
from cartdec.products import is_minimal_normal


def test_ex2_certificates(ex2_inst):
    c = ex2_inst.certificates
    assert c["coordinate_sizes"] == [36, 36] and c["omega_size"] == 1296
    assert c["M_order"] == 360**2 and c["M_transitive"] and c["G_transitive"]
    assert c["pi_involution"] and c["pi_normalizes_M"] and c["pi_swaps_factors"]
    assert c["gamma_expected"] == 36


def test_ex2_requires_proper_factors(a6_classes):
    T = a6_classes["T"]
    with pytest.raises(BuildError):
        build_ex2(T, T, a6_classes["B"])


def test_ex3_toy(ex3_toy):
    c = ex3_toy.certificates
    assert c["pi_order"] == 3 and c["pi_cycles_coordinates"]
    assert c["rotated_factorizations"] == [True, True, True]
    assert c["omega_size"] == 512 and c["M_transitive"]


def test_ex3_reports_failed_identity(a6_classes):
    T, A, B = a6_classes["T"], a6_classes["A"], a6_classes["B"]
    with pytest.raises(BuildError, match=r"A\(B∩C\) != T"):
        build_ex3(T, A, B, A)


def test_ex1s_rejects_non_swapping_theta(pgl29):
    T, A, B = pgl29["T"], pgl29["A"], pgl29["B"]
    with pytest.raises(BuildError, match="swap"):
        build_ex1s(T, A, B, Perm.identity(10))


def test_plinths_are_minimal_normal(materialized_instances):
    for name, inst in materialized_instances.items():
        S = inst.setting
        if S.trusted:
            continue
        assert is_minimal_normal(S.G_D, S.M), name


def test_case_a(case_a_inst):
    rep = analyze_embedding(case_a_inst)
    assert rep.case == "a" and rep.M_le_N and rep.G_in_W
    assert rep.incidence == [[1, 0], [0, 1]]
    assert case_a_inst.certificates["omega_size"] == 36


def test_case_a_same_group(A5):
    C2 = PermGroup([Perm([1, 0])])
    inst = build_case_a(A5, A5, C2, "A5", "A5")
    assert analyze_embedding(inst).case == "a"


def test_case_a_preconditions(A5, A6, a6_classes):
    C2 = PermGroup([Perm([1, 0])])
    with pytest.raises(BuildError):
        build_case_a(A6, a6_classes["A"], C2)
    with pytest.raises(BuildError):
        build_case_a(a6_classes["A"], A6, PermGroup([Perm([0, 1])]))


def test_ex2_is_case_c(ex2_inst):
    rep = analyze_embedding(ex2_inst)
    assert rep.case == "c" and rep.M_le_N and rep.alt_check is True
    assert rep.s == [2, 2]


def test_simple_plinth_is_case_b(simple_plinth_inst):
    rep = analyze_embedding(simple_plinth_inst)
    assert rep.case == "b" and rep.pair_row == 1 and rep.pair_match == "matched"
    assert CASE_B_PAIRS[0] == ("A6", "A6")


def test_case_b_unlisted_without_tags(simple_plinth_inst):
    from dataclasses import replace

    inst = replace(simple_plinth_inst, tags={})
    rep = analyze_embedding(inst)
    assert rep.case == "b" and rep.pair_match == "unlisted"


def test_compound_diagonal(compound_inst):
    rep = analyze_embedding(compound_inst)
    assert rep.case == "c" and rep.s == [2, 2] and rep.alt_check
    d = rep.diagonal
    assert d["type"] == "compound-diagonal" and d["k"] == 4 and d["m"] == 2
    assert d["k_equals_m_ell"] and d["grouping"] == [[0, 1], [2, 3]] and d["grouping_ok"]
    assert compound_inst.certificates["omega_size"] == 3600


def test_compound_requires_transitive_top(A5):
    with pytest.raises(BuildError):
        build_compound_diagonal(A5, PermGroup([Perm([0, 1])]))


def test_cases_exclusive(materialized_instances):
    for inst in materialized_instances.values():
        rep = analyze_embedding(inst)
        assert rep.transitive_projection
        assert rep.case in ("a", "b", "c")


def test_sdcor(simple_diag, compound_inst):
    rep = verify_sdcor(simple_diag)
    assert rep["found"] == 0 and rep["conclusive"] and not rep["red_flag"]
    with pytest.raises(BuildError):
        verify_sdcor(compound_inst.setting)
    truncated = verify_sdcor(simple_diag, Budget(blocks=1))
    assert truncated["truncated"] and not truncated["conclusive"]
