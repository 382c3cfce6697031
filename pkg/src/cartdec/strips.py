"""Strips of a direct product of simple groups and factorisation checks.

A subgroup ``X`` of ``M = T_1 × … × T_k`` is a strip when every nontrivial
coordinate projection of ``X`` has the same order as ``X``. All tests here are
order arithmetic on projections and intersections, so nothing is ever
enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .group import PermGroup, intersect
from .perm import Perm
from .products import FactoredGroup, embed


class StripError(ValueError):
    """A precondition on a strip computation failed."""


class ConsistencyError(RuntimeError):
    """An internal certificate did not hold; reported instead of ignored."""


@dataclass
class Strip:
    support: tuple[int, ...]
    group: PermGroup
    image_orders: dict[int, int]
    full: bool

    @property
    def nontrivial(self) -> bool:
        return len(self.support) >= 2

    def disjoint_from(self, other: "Strip") -> bool:
        return not set(self.support) & set(other.support)


@dataclass
class StripDecomposition:
    strips: list[Strip]
    order_certified: bool

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [s.support for s in self.strips]


def _check_inside(M: FactoredGroup, X: PermGroup) -> None:
    if not X.is_subgroup_of(M.ambient):
        raise StripError("subgroup is not inside M")


def support_of(M: FactoredGroup, X: PermGroup, check: bool = True) -> tuple[int, ...]:
    if check:
        _check_inside(M, X)
    pts = [M.domain_points([i]) for i in range(M.k)]
    out = []
    for i, p in enumerate(pts):
        if any((g.a[p] != p).any() for g in X.gens):
            out.append(i)
    return tuple(out)


def as_strip(M: FactoredGroup, X: PermGroup, check: bool = True) -> Strip | None:
    """The strip record for ``X``, or None when ``X`` is not a strip."""
    supp = support_of(M, X, check)
    n = X.order()
    orders = {i: M.sigma_order([i], X) for i in supp}
    if any(o != n for o in orders.values()):
        return None
    full = all(orders[i] == M.factor_order(i) for i in supp)
    return Strip(supp, X, orders, full)


def is_strip(M: FactoredGroup, X: PermGroup) -> bool:
    return as_strip(M, X) is not None


def is_full_strip(M: FactoredGroup, X: PermGroup) -> bool:
    s = as_strip(M, X)
    return s is not None and s.full


def is_subdirect(M: FactoredGroup, H: PermGroup) -> bool:
    return all(M.sigma_order([i], H) == M.factor_order(i) for i in range(M.k))


def scott_decompose(M: FactoredGroup, H: PermGroup) -> StripDecomposition:
    """Split a subdirect subgroup into pairwise disjoint full strips.

    Factors ``i`` and ``j`` share a strip exactly when the projection onto
    both has the order of a single factor.
    """
    if not is_subdirect(M, H):
        raise StripError("H is not subdirect in M")
    k = M.k
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for j in range(i + 1, k):
            if find(i) == find(j):
                continue
            if M.sigma_order([i, j], H) == M.factor_order(i):
                parent[find(j)] = find(i)
    classes: dict[int, list[int]] = {}
    for i in range(k):
        classes.setdefault(find(i), []).append(i)
    strips = []
    for supp in sorted(classes.values()):
        X = M.sigma(supp, H)
        s = as_strip(M, X, check=False)
        if s is None or not s.full or not X.is_subgroup_of(H):
            raise ConsistencyError(f"projection onto {supp} is not a full strip inside H")
        strips.append(s)
    certified = prod(s.group.order() for s in strips) == H.order()
    if not certified:
        raise ConsistencyError("strip orders do not multiply to |H|")
    return StripDecomposition(strips, certified)


def involved_full_strip(M: FactoredGroup, K: PermGroup, m: int) -> Strip:
    """The unique full strip covering factor ``m`` that splits off ``K`` as a direct factor."""
    tm = M.factor_order(m)
    if M.sigma_order([m], K) != tm:
        raise StripError(f"projection of K onto factor {m} is not the whole factor")
    supp = [m]
    for t in range(M.k):
        if t == m:
            continue
        if M.sigma_order([t], K) == M.factor_order(t) and M.sigma_order([m, t], K) == tm:
            supp.append(t)
    supp.sort()
    X = M.sigma(supp, K)
    s = as_strip(M, X, check=False)
    if s is None or not s.full or tuple(supp) != s.support:
        raise ConsistencyError(f"projection onto {supp} is not a full strip")
    if not X.is_subgroup_of(K):
        raise ConsistencyError("strip is not contained in K")
    comp = M.complement(supp)
    c_order = M.sigma_order(comp, K) if comp else 1
    if X.order() * c_order != K.order():
        raise ConsistencyError("strip is not a direct complement in K")
    return s


def strips_involved_in(M: FactoredGroup, K: PermGroup) -> list[Strip]:
    """All nontrivial full strips involved in ``K``, one per support."""
    out: dict[tuple[int, ...], Strip] = {}
    for m in range(M.k):
        if any(m in s for s in out):
            continue
        if M.sigma_order([m], K) != M.factor_order(m):
            continue
        s = involved_full_strip(M, K, m)
        if s.nontrivial:
            out[s.support] = s
    return [out[k] for k in sorted(out)]


# --- factorisations --------------------------------------------------------


def _product_order(A: PermGroup, B: PermGroup) -> int:
    return A.order() * B.order() // intersect(A, B).order()


def check_factorization(T: PermGroup, A: PermGroup, B: PermGroup) -> bool:
    """``T = AB`` with both factors proper."""
    if not (A.is_subgroup_of(T) and B.is_subgroup_of(T)):
        raise StripError("A and B must be subgroups of T")
    n = T.order()
    if A.order() == n or B.order() == n:
        return False
    return _product_order(A, B) == n


@dataclass
class SMFReport:
    ok: bool
    identities: list[bool] = field(default_factory=list)
    proper: bool = False
    distinct: bool = False
    first_failure: str | None = None


def check_strong_multiple_factorization(T: PermGroup, A: PermGroup, B: PermGroup, C: PermGroup) -> SMFReport:
    n = T.order()
    groups = (A, B, C)
    names = "ABC"
    for X in groups:
        if not X.is_subgroup_of(T):
            raise StripError("all three groups must be subgroups of T")
    proper = all(X.order() < n for X in groups)
    distinct = not (A.same_as(B) or A.same_as(C) or B.same_as(C))
    ids = []
    failure = None
    for r in range(3):
        X, Y, Z = groups[r], groups[(r + 1) % 3], groups[(r + 2) % 3]
        YZ = intersect(Y, Z)
        holds = _product_order(X, YZ) == n
        ids.append(holds)
        if not holds and failure is None:
            x, y, z = names[r], names[(r + 1) % 3], names[(r + 2) % 3]
            failure = f"{x}({y}∩{z}) != T"
    if failure is None and not proper:
        failure = "a subgroup is not proper"
    if failure is None and not distinct:
        failure = "subgroups are not pairwise distinct"
    return SMFReport(all(ids) and proper and distinct, ids, proper, distinct, failure)


@dataclass
class FSFReport:
    k: int
    product_is_M: bool
    intersection_order: int
    smf: SMFReport | None = None
    red_flag: bool = False


def check_fsf_instance(M: FactoredGroup, K: PermGroup, D: PermGroup) -> FSFReport:
    """Does a full diagonal strip times ``K`` give ``M`` when every projection of ``K`` is proper?"""
    s = as_strip(M, D)
    if s is None or not s.full or len(s.support) != M.k:
        raise StripError("D must be a full strip supported on every factor")
    _check_inside(M, K)
    for i in range(M.k):
        if M.sigma_order([i], K) == M.factor_order(i):
            raise StripError(f"projection of K onto factor {i} is not proper")
    DK = intersect(D, K)
    full = D.order() * K.order() // DK.order() == M.order()
    report = FSFReport(M.k, full, DK.order())
    if full and M.k == 3:
        pulled = [M.sigma([0], K)]
        for i in (1, 2):
            Si = M.sigma([i], K)
            pre = PermGroup(list(M.full_factors(M.complement([i])).gens) + list(Si.gens), degree=M.degree)
            pulled.append(M.sigma([0], intersect(D, pre)))
        report.smf = check_strong_multiple_factorization(M.factors[0], *pulled)
        report.red_flag = not report.smf.ok
    elif full and M.k > 3:
        report.red_flag = True
    return report


def _validate_strip_family(M: FactoredGroup, strips: Sequence[PermGroup]) -> list[Strip]:
    out = []
    for X in strips:
        s = as_strip(M, X)
        if s is None or not s.nontrivial:
            raise StripError("every member must be a nontrivial strip")
        out.append(s)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            if not out[i].disjoint_from(out[j]):
                raise StripError("strips must be pairwise disjoint")
    return out


def no_strip_product_factorization_probe(
    M: FactoredGroup, A_strips: Sequence[PermGroup], B_strips: Sequence[PermGroup]
) -> bool:
    """True when ``|AB| < |M|`` for the two strip products, as the theory predicts."""
    _validate_strip_family(M, A_strips)
    _validate_strip_family(M, B_strips)
    A = M.product_of(A_strips)
    B = M.product_of(B_strips)
    return _product_order(A, B) < M.order()


# --- construction helpers ---------------------------------------------------


def diagonal_strip(M: FactoredGroup, T: PermGroup, support: Sequence[int], twists: Sequence[Perm] | None = None) -> PermGroup:
    """``{(t^{c_1}, …, t^{c_r})}`` placed on the factors in ``support``.

    ``M`` must be a direct product of copies of ``T``; ``twists[i]`` is a
    permutation of ``T``'s points normalizing ``T`` (identity when omitted).
    """
    if twists is None:
        twists = [Perm.identity(T.degree)] * len(support)
    gens = []
    for g in T.gens:
        x = None
        for i, c in zip(support, twists):
            e = embed(g.conj(c), M.domains[i][0], M.degree)
            x = e if x is None else x * e
        gens.append(x)
    return PermGroup(gens, degree=M.degree)


def embed_subgroup(M: FactoredGroup, i: int, H: PermGroup, conj: Perm | None = None) -> PermGroup:
    """A subgroup of ``T`` placed on factor ``i``."""
    gens = [embed(h if conj is None else h.conj(conj), M.domains[i][0], M.degree) for h in H.gens]
    return PermGroup(gens, degree=M.degree)
