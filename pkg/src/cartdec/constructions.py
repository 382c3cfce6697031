"""Builders for concrete embeddings into wreath products and the analyzer that
decides which case of the embedding theorem a given instance falls into."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, prod
from typing import Sequence

import numpy as np

from .cartesian import (
    Layout,
    Setting,
    diagonal_type,
    enumerate_invariant_decompositions,
    natural_decomposition,
)
from .config import Budget
from .coset import CosetSpace, conjugate_rows
from .group import PermGroup, intersect
from .perm import Perm
from .products import (
    MATERIALIZE_LIMIT,
    FactoredGroup,
    coordinate_permutation,
    direct_product,
    intersect_all,
    product_action_images,
)
from .strips import check_factorization, check_strong_multiple_factorization, diagonal_strip, embed_subgroup


class BuildError(ValueError):
    """Inputs to a builder fail their preconditions, or a certificate fails."""


# The (T, U) pairs allowed when each simple factor spans two coordinates.
CASE_B_PAIRS = (
    ("A6", "A6"),
    ("M12", "M12"),
    ("M12", "A12"),
    ("POmega8+(q)", "POmega8+(q)"),
    ("POmega8+(q)", "A_n, n=|POmega8+(q):Omega7(q)|"),
    ("POmega8+(2)", "Sp8(2)"),
    ("Sp4(2^a), a>=2", "Sp4b(2^(a/b)), b|a"),
    ("Sp4(2^a), a>=2", "A_n, n=|Sp4(2^a):Sp2(2^2a).2|"),
)

# The T = AB factorisations with A ≅ B reconstructible from the bundled data.
ISOMORPHIC_FACTORIZATIONS = (("A6", "A5", "A5 twisted by an outer automorphism"),)


@dataclass
class Component:
    """The wreath component group: ``H`` on Γ with socle ``U``.

    ``kind`` is ``"alt"`` or ``"sym"`` for the full alternating or symmetric
    group on Γ, or ``"group"`` with explicit generators.
    """

    kind: str
    degree: int
    gens: list[Perm] = field(default_factory=list)
    tag: str | None = None
    _group: PermGroup | None = None

    @property
    def group(self) -> PermGroup:
        if self._group is None:
            self._group = PermGroup(self.gens, degree=self.degree)
        return self._group

    def contains(self, g: Perm) -> bool:
        if self.kind == "sym":
            return True
        if self.kind == "alt":
            return g.parity() == 0
        return g in self.group

    def is_alt(self) -> bool:
        if self.kind == "alt":
            return True
        if self.kind == "sym":
            return self.degree <= 1
        return all(g.parity() == 0 for g in self.gens) and self.group.order() == factorial(self.degree) // 2

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "degree": self.degree, "tag": self.tag}
        if self.kind == "group":
            d["generators"] = [g.tolist() for g in self.gens]
        return d


@dataclass
class EmbeddingInstance:
    setting: Setting
    H: Component
    U: Component
    tags: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    example: str = ""

    @property
    def ell(self) -> int:
        return len(self.setting.layout.coords)


# --- the coset-product builder ---------------------------------------------------


@dataclass
class Top:
    """An element acting on the plinth by conjugation with ``c`` and on coordinates by ``tau``.

    It sends the coset ``K_j r`` in coordinate ``j`` to ``K_{tau(j)} c^-1 r c``.
    """

    c: Perm
    tau: Sequence[int]


def domain_map(M: FactoredGroup, dest: Sequence[int], twist: Perm | None = None) -> Perm:
    """Permutation of the factor domains sending domain ``i`` to domain ``dest[i]``.

    With ``twist`` each point is also moved by that permutation of one domain, so
    conjugation applies the corresponding automorphism to every factor.
    """
    a = np.arange(M.degree, dtype=np.int32)
    for i, (s, n) in enumerate(M.domains):
        ds, dn = M.domains[dest[i]]
        if dn != n:
            raise BuildError("domains of different sizes")
        local = np.arange(n) if twist is None else twist.a
        a[s : s + n] = ds + local
    return Perm(a)


def coset_product(
    M: FactoredGroup,
    K: Sequence[PermGroup],
    tops: Sequence[Top],
    materialize_limit: int = MATERIALIZE_LIMIT,
    name: str = "",
    trusted: bool = False,
) -> tuple[Setting, dict]:
    """``M`` acting on ``[M:K_1] × … × [M:K_ℓ]`` by right multiplication, extended by ``tops``."""
    ell = len(K)
    spaces = [CosetSpace(M.ambient, Kj) for Kj in K]
    sizes = [len(cs) for cs in spaces]
    d = M.degree
    offsets = np.cumsum([0] + sizes[:-1]).tolist()
    union_size = sum(sizes)
    omega_size = prod(sizes)
    materialize = omega_size <= materialize_limit
    rel = [(o, n) for o, n in zip(offsets, sizes)]
    coords = tuple((d + o, n) for o, n in rel)
    omega = (d + union_size, omega_size) if materialize else None
    degree = d + union_size + (omega_size if materialize else 0)
    layout = Layout(degree, tuple(M.domains), coords, omega, omega_size)

    def combine(small: Perm, union: np.ndarray) -> Perm:
        parts = [small.a, union + d]
        if materialize:
            parts.append(product_action_images(union, rel) + d + union_size)
        return Perm(np.concatenate(parts).astype(np.int32), check=False)

    def plinth_element(m: Perm) -> Perm:
        union = np.concatenate([cs.image_under(m) + o for cs, o in zip(spaces, offsets)])
        return combine(m, union)

    certs: dict = {}
    for t in tops:
        for j in range(ell):
            if not K[j].conjugate(t.c).same_as(K[t.tau[j]]):
                raise BuildError(f"top element does not carry K_{j + 1} onto K_{t.tau[j] + 1}")
        if not all(g.conj(t.c) in M.ambient for g in M.ambient.gens):
            raise BuildError("top element does not normalize M")

    def top_element(t: Top) -> Perm:
        union = np.empty(union_size, dtype=np.int32)
        for j, cs in enumerate(spaces):
            dest = t.tau[j]
            idx = spaces[dest].locate(conjugate_rows(cs.reps, t.c))
            union[offsets[j] : offsets[j] + sizes[j]] = idx + offsets[dest]
        return combine(t.c, union)

    factor_gens = [[plinth_element(g) for g in T.gens] for T in M.factors]
    top_gens = [top_element(t) for t in tops]
    G_gens = [g for f in factor_gens for g in f] + top_gens
    M_omega = intersect_all(list(K))
    G_omega_gens = [plinth_element(g) for g in M_omega.gens] + top_gens
    S = Setting(layout, G_gens, factor_gens, omega=(0,) * ell, G_omega_gens=G_omega_gens, name=name, trusted=trusted)
    certs["coordinate_sizes"] = sizes
    certs["omega_size"] = omega_size
    certs["materialized"] = materialize
    certs["M_order"] = M.order()
    certs["M_omega_order"] = M_omega.order()
    certs["M_transitive"] = M.order() == M_omega.order() * omega_size
    certs["G_order"] = S.G_D.order()
    if materialize:
        GO = S.omega_action(S.G)
        certs["faithful"] = S.G.order() == S.G_D.order() == GO.order()
        certs["G_transitive"] = GO.is_transitive()
    else:
        # the coordinate copies carry a faithful action of the wreath product, and
        # each top element is determined by its conjugation action on M
        certs["faithful"] = None
    return S, certs


def _alt_component(size: int) -> tuple[Component, Component]:
    return Component("sym", size, tag=f"S{size}"), Component("alt", size, tag=f"A{size}")


def _swap_check(S: Setting, g: Perm) -> list[int]:
    return S.M.factor_permutation(S.to_small(g))


def build_ex2(T: PermGroup, A: PermGroup, B: PermGroup, tag_T: str | None = None) -> EmbeddingInstance:
    """``T²`` on ``[T²:A×B] × [T²:B×A]`` with the involution swapping coordinates and factors."""
    if not check_factorization(T, A, B):
        raise BuildError("T = AB fails or a factor is not proper")
    M = direct_product([T, T])
    K1 = M.product_of([embed_subgroup(M, 0, A), embed_subgroup(M, 1, B)])
    K2 = M.product_of([embed_subgroup(M, 0, B), embed_subgroup(M, 1, A)])
    pi = Top(domain_map(M, [1, 0]), [1, 0])
    S, certs = coset_product(M, [K1, K2], [pi], name="ex2")
    pi_c = S.G.gens[-1]
    certs["pi_involution"] = (pi_c * pi_c).is_identity() and not pi_c.is_identity()
    certs["pi_normalizes_M"] = all(g.conj(pi_c) in S.M_comb for g in S.M_comb.gens)
    certs["pi_swaps_factors"] = _swap_check(S, pi_c) == [1, 0]
    certs["gamma_expected"] = T.order() // intersect(A, B).order()
    H, U = _alt_component(certs["coordinate_sizes"][0])
    return EmbeddingInstance(S, H, U, {"T": tag_T}, certs, "ex2")


def build_ex3(T: PermGroup, A: PermGroup, B: PermGroup, C: PermGroup, trusted: bool = False) -> EmbeddingInstance:
    """``T³`` on three coset spaces permuted cyclically by an element of order 3.

    ``trusted`` marks the plinth as given, so the construction can be exercised
    on factor groups that are not simple. The factorisation is always checked.
    """
    rep = check_strong_multiple_factorization(T, A, B, C)
    if not rep.ok:
        raise BuildError(f"not a strong multiple factorisation: {rep.first_failure}")
    M = direct_product([T, T, T])
    parts = {"A": A, "B": B, "C": C}

    def K(order: str) -> PermGroup:
        return M.product_of([embed_subgroup(M, i, parts[x]) for i, x in enumerate(order)])

    Ks = [K("ABC"), K("BCA"), K("CAB")]
    # (t1,t2,t3) -> (t2,t3,t1): domain i goes to domain i-1
    pi = Top(domain_map(M, [2, 0, 1]), [1, 2, 0])
    S, certs = coset_product(M, Ks, [pi], name="ex3", trusted=trusted)
    pi_c = S.G.gens[-1]
    certs["pi_order"] = pi_c.order()
    certs["pi_cycles_coordinates"] = coordinate_permutation(pi_c, S.layout.coords) == [1, 2, 0]
    m = M.order()
    fac = []
    for i in range(3):
        others = [Ks[j] for j in range(3) if j != i]
        inter = intersect(*others)
        fac.append(Ks[i].order() * inter.order() // intersect(Ks[i], inter).order() == m)
    certs["rotated_factorizations"] = fac
    H, U = _alt_component(certs["coordinate_sizes"][0])
    return EmbeddingInstance(S, H, U, {}, certs, "ex3")


def build_ex1s(T: PermGroup, A: PermGroup, B: PermGroup, theta: Perm, tag_T: str | None = None) -> EmbeddingInstance:
    """``T⁴`` on ``[T⁴:K_1] × [T⁴:K_2]`` where each ``K_j`` mixes ``A × B`` with a diagonal."""
    if not check_factorization(T, A, B):
        raise BuildError("T = AB fails or a factor is not proper")
    if A.order() != B.order():
        raise BuildError("A and B must have the same order")
    if not all(g.conj(theta) in T for g in T.gens):
        raise BuildError("theta does not normalize T")
    if not (A.conjugate(theta).same_as(B) and B.conjugate(theta).same_as(A)):
        raise BuildError("theta does not swap A and B")
    M = direct_product([T] * 4)
    K1 = M.product_of([embed_subgroup(M, 0, A), embed_subgroup(M, 1, B), diagonal_strip(M, T, [2, 3])])
    K2 = M.product_of([diagonal_strip(M, T, [0, 1]), embed_subgroup(M, 2, A), embed_subgroup(M, 3, B)])
    pi1 = Top(domain_map(M, [1, 0, 3, 2], twist=theta), [0, 1])
    pi2 = Top(domain_map(M, [2, 3, 0, 1]), [1, 0])
    S, certs = coset_product(M, [K1, K2], [pi1, pi2], name="ex1s")
    certs["K_orders"] = [K1.order(), K2.order()]
    inter = intersect(K1, K2)
    certs["K_intersection_order"] = inter.order()
    certs["K1K2_is_M"] = K1.order() * K2.order() // inter.order() == M.order()
    act = PermGroup([Perm(_swap_check(S, g)) for g in S.G.gens[-2:]], degree=4)
    certs["Pi_transitive_on_factors"] = act.is_transitive()
    H, U = _alt_component(certs["coordinate_sizes"][0])
    return EmbeddingInstance(S, H, U, {"T": tag_T}, certs, "ex1s")


def build_simple_plinth(
    T: PermGroup, A: PermGroup, B: PermGroup, theta: Perm, tag_T: str | None = None
) -> EmbeddingInstance:
    """A simple plinth ``T`` on ``[T:A] × [T:B]`` extended by an automorphism swapping ``A`` and ``B``."""
    if not check_factorization(T, A, B):
        raise BuildError("T = AB fails or a factor is not proper")
    M = direct_product([T])
    KA = embed_subgroup(M, 0, A)
    KB = embed_subgroup(M, 0, B)
    top = Top(domain_map(M, [0], twist=theta), [1, 0])
    S, certs = coset_product(M, [KA, KB], [top], name="simple-plinth")
    size = certs["coordinate_sizes"][0]
    # the plinth acts on each coordinate as T on the cosets of A; its image is the socle
    comp = [_coordinate_component(S, j) for j in range(2)]
    U = Component("group", size, gens=list(comp[0].gens), tag=tag_T)
    if not all(g in U.group for g in comp[1].gens):
        U = Component("group", size, gens=list(comp[0].gens) + list(comp[1].gens), tag=None)
    H = Component("sym", size, tag=f"S{size}")
    return EmbeddingInstance(S, H, U, {"T": tag_T, "U": U.tag}, certs, "simple-plinth")


def _coordinate_component(S: Setting, j: int) -> PermGroup:
    s, n = S.layout.coords[j]
    gens = []
    for g in S.M_comb.gens:
        gens.append(Perm((g.a[s : s + n] - s).astype(np.int32), check=False))
    return PermGroup(gens, degree=n)


# --- the wreath builder -------------------------------------------------------------


def wreath_setting(
    L_gens: Sequence[Perm],
    L_factor_gens: Sequence[Sequence[Perm]],
    L_domains: Sequence[tuple[int, int]],
    dL: int,
    Q: PermGroup,
    name: str = "",
) -> tuple[Setting, dict]:
    """``L wr Q`` in product action, with ``L`` given on ``[D_L | Γ]``.

    ``L_domains`` are the factor domains of ``L``'s plinth inside ``D_L``.
    """
    ell = Q.degree
    nL = L_gens[0].degree if L_gens else L_factor_gens[0][0].degree
    gamma = nL - dL
    d = dL * ell
    omega_size = gamma**ell
    if omega_size > MATERIALIZE_LIMIT:
        raise BuildError("product set too large to materialize")
    rel = [(j * gamma, gamma) for j in range(ell)]
    coords = tuple((d + j * gamma, gamma) for j in range(ell))
    union_size = gamma * ell
    degree = d + union_size + omega_size
    domains = tuple((j * dL + s, n) for j in range(ell) for (s, n) in L_domains)
    layout = Layout(degree, domains, coords, (d + union_size, omega_size), omega_size)

    def combine(small: np.ndarray, union: np.ndarray) -> Perm:
        omega = product_action_images(union, rel) + d + union_size
        return Perm(np.concatenate([small, union + d, omega]).astype(np.int32), check=False)

    def base(g: Perm, j: int) -> Perm:
        small = np.arange(d, dtype=np.int32)
        small[j * dL : (j + 1) * dL] = g.a[:dL] + j * dL
        union = np.arange(union_size, dtype=np.int32)
        union[j * gamma : (j + 1) * gamma] = g.a[dL:] - dL + j * gamma
        return combine(small, union)

    def top(h: Perm) -> Perm:
        small = np.empty(d, dtype=np.int32)
        union = np.empty(union_size, dtype=np.int32)
        for j in range(ell):
            t = int(h.a[j])
            small[j * dL : (j + 1) * dL] = np.arange(dL) + t * dL
            union[j * gamma : (j + 1) * gamma] = np.arange(gamma) + t * gamma
        return combine(small, union)

    factor_gens = [[base(g, j) for g in f] for j in range(ell) for f in L_factor_gens]
    G_gens = [base(g, j) for j in range(ell) for g in L_gens] + [top(h) for h in Q.gens]
    S = Setting(layout, G_gens, factor_gens, omega=0, name=name)
    GO = S.omega_action(S.G)
    certs = {
        "omega_size": omega_size,
        "coordinate_sizes": [gamma] * ell,
        "G_order": S.G_D.order(),
        "faithful": S.G.order() == S.G_D.order() == GO.order(),
        "G_transitive": GO.is_transitive(),
        "M_transitive": S.omega_action(S.M_comb).is_transitive(),
    }
    return S, certs


def build_case_a(T: PermGroup, U: PermGroup, K: PermGroup, tag_T: str | None = None, tag_U: str | None = None) -> EmbeddingInstance:
    """``T wr K`` inside ``U wr Sℓ`` for ``T ≤ U`` on Γ and transitive ``K``."""
    if not T.is_subgroup_of(U):
        raise BuildError("T is not a subgroup of U")
    if not K.is_transitive():
        raise BuildError("the top group must be transitive")
    n = T.degree
    # the factor domain is a private copy of Γ
    L = [Perm(np.concatenate([g.a, g.a + n]).astype(np.int32)) for g in T.gens]
    S, certs = wreath_setting(L, [L], [(0, n)], n, K, name="case-a")
    comp = Component("group", n, gens=list(U.gens), tag=tag_U)
    H = Component("group", n, gens=list(U.gens), tag=tag_U)
    return EmbeddingInstance(S, H, comp, {"T": tag_T, "U": tag_U}, certs, "case-a")


def a5_elements(T: PermGroup) -> list[Perm]:
    return sorted(T.elements(), key=lambda p: p.tolist())


def simple_diagonal_group(T: PermGroup) -> tuple[list[Perm], list[list[Perm]], list[tuple[int, int]], int]:
    """``(T × T) ⋊ ⟨ι⟩`` acting on ``T`` by ``t ↦ x⁻¹ t y`` and ``ι: t ↦ t⁻¹``, on ``[D | T]``.

    Returns the generators, the factor generators, the factor domains and the
    size of the factor-domain prefix.
    """
    elems = a5_elements(T)
    idx = {e: i for i, e in enumerate(elems)}
    n = T.degree
    N = len(elems)
    dL = 2 * n

    def perm(dpart: np.ndarray, f) -> Perm:
        gam = np.array([idx[f(t)] for t in elems], dtype=np.int32) + dL
        return Perm(np.concatenate([dpart, gam]).astype(np.int32))

    ident = np.arange(n, dtype=np.int32)
    f1 = [perm(np.concatenate([x.a, ident + n]), lambda t, x=x: ~x * t) for x in T.gens]
    f2 = [perm(np.concatenate([ident, y.a + n]), lambda t, y=y: t * y) for y in T.gens]
    iota = perm(np.concatenate([ident + n, ident]), lambda t: ~t)
    assert N == T.order()
    return f1 + f2 + [iota], [f1, f2], [(0, n), (n, n)], dL


def build_simple_diagonal(T: PermGroup) -> tuple[Setting, dict]:
    """The simple-diagonal group ``(T × T) ⋊ ⟨ι⟩`` on the ``|T|`` points of ``T``."""
    gens, fgens, domains, dL = simple_diagonal_group(T)
    n = gens[0].degree
    layout = Layout(n, tuple(domains), (), (dL, n - dL), n - dL)
    S = Setting(layout, gens, fgens, omega=elements_index_of_identity(T), name="simple-diagonal")
    certs = {"omega_size": n - dL, "faithful": S.G.order() == S.G_D.order()}
    return S, certs


def elements_index_of_identity(T: PermGroup) -> int:
    return a5_elements(T).index(T.identity)


def build_compound_diagonal(T: PermGroup, Q: PermGroup, tag_T: str | None = None) -> EmbeddingInstance:
    """``K wr Q`` for the simple-diagonal group ``K`` built from ``T``."""
    if not Q.is_transitive():
        raise BuildError("the top group must be transitive")
    gens, fgens, domains, dL = simple_diagonal_group(T)
    Ks, _ = build_simple_diagonal(T)
    if diagonal_type(Ks) != "simple-diagonal":
        raise BuildError("the component group is not of simple diagonal type")
    e = elements_index_of_identity(T)
    S, certs = wreath_setting(gens, fgens, domains, dL, Q, name="compound-diagonal")
    S = _with_base(S, (e,) * Q.degree)
    size = certs["coordinate_sizes"][0]
    H, U = _alt_component(size)
    return EmbeddingInstance(S, H, U, {"T": tag_T}, certs, "compound-diagonal")


def _with_base(S: Setting, point: tuple[int, ...]) -> Setting:
    from .products import tuple_index

    out = Setting.__new__(Setting)
    out.__dict__.update(S.__dict__)
    out.omega = tuple_index(point, S.layout.coord_sizes)
    out._G_omega = None
    out._M_omega = None
    return out


# --- embedding analysis --------------------------------------------------------------


@dataclass
class MainCaseReport:
    M_le_N: bool
    transitive_projection: bool
    incidence: list[list[int]]
    s: list[int]
    case: str | None
    pair_row: int | None = None
    pair_match: str | None = None
    alt_check: bool | None = None
    diagonal: dict | None = None
    G_in_W: bool | None = None

    def to_dict(self) -> dict:
        return {
            "M_le_N": self.M_le_N,
            "G_in_W": self.G_in_W,
            "transitive_projection": self.transitive_projection,
            "incidence": self.incidence,
            "s": self.s,
            "case": self.case,
            "pair_row": self.pair_row,
            "pair_match": self.pair_match,
            "U_is_alt": self.alt_check,
            "diagonal": self.diagonal,
        }


def _components(g: Perm, coords) -> tuple[list[int], list[Perm]]:
    tau = coordinate_permutation(g, coords)
    comps = []
    for j, (s, n) in enumerate(coords):
        ds = coords[tau[j]][0]
        img = g.a[s : s + n]
        if img.min() < ds or img.max() >= ds + n:
            raise ValueError("element does not map coordinate copies onto copies")
        comps.append(Perm((img - ds).astype(np.int32), check=False))
    return tau, comps


def analyze_embedding(inst: EmbeddingInstance) -> MainCaseReport:
    S = inst.setting
    coords = S.layout.coords
    ell = len(coords)
    k = S.M.k
    M_le_N = True
    for g in S.M_comb.gens:
        tau, comps = _components(g, coords)
        if tau != list(range(ell)) or not all(inst.U.contains(c) for c in comps):
            M_le_N = False
    G_in_W = True
    taus = []
    for g in S.G.gens:
        tau, comps = _components(g, coords)
        taus.append(tau)
        if not all(inst.H.contains(c) for c in comps):
            G_in_W = False
    top = PermGroup([Perm(t) for t in taus], degree=ell) if ell else None
    transitive = bool(top is not None and top.is_transitive())
    inc = [[0] * ell for _ in range(k)]
    for i, fg in enumerate(S.factor_gens):
        for j, (s, n) in enumerate(coords):
            if any((g.a[s : s + n] != np.arange(s, s + n)).any() for g in fg):
                inc[i][j] = 1
    s_j = [sum(inc[i][j] for i in range(k)) for j in range(ell)]
    rep = MainCaseReport(M_le_N, transitive, inc, s_j, None, G_in_W=G_in_W)
    if not transitive:
        return rep
    rows = [sum(r) for r in inc]
    if k == ell and all(r == 1 for r in rows) and all(c == 1 for c in s_j):
        rep.case = "a"
    elif ell == 2 * k and all(r == 2 for r in rows) and all(c == 1 for c in s_j):
        pair = (inst.tags.get("T"), inst.U.tag)
        rep.pair_row = next((i + 1 for i, row in enumerate(CASE_B_PAIRS) if row == pair), None)
        rep.pair_match = "matched" if rep.pair_row else "unlisted"
        rep.case = "b"
    else:
        rep.case = "c"
    rep.alt_check = inst.U.is_alt() if (rep.case == "c" or max(s_j, default=0) >= 2) else None
    try:
        dt = diagonal_type(S)
    except ValueError:
        dt = None
    if dt in ("simple-diagonal", "compound-diagonal"):
        m, rem = divmod(k, ell)
        groups = []
        for j in range(ell):
            groups.append(sorted(i for i in range(k) if inc[i][j]))
        rep.diagonal = {
            "type": dt,
            "k": k,
            "ell": ell,
            "m": m if rem == 0 else None,
            "k_equals_m_ell": rem == 0 and m >= 2,
            "grouping": groups,
            "grouping_ok": rem == 0 and all(len(gp) == m for gp in groups)
            and sorted(i for gp in groups for i in gp) == list(range(k)),
        }
    return rep


# --- the corollary check -----------------------------------------------------------------


def verify_sdcor(S: Setting, budget: Budget | None = None) -> dict:
    """A simple-diagonal group preserves no Cartesian decomposition with ℓ ≥ 2 and |Γ| ≥ 2."""
    dt = diagonal_type(S)
    if dt != "simple-diagonal":
        raise BuildError(f"expected simple diagonal type, got {dt}")
    res = enumerate_invariant_decompositions(S, budget)
    found = [E for E, _, _ in res.items if E is None or E.ell >= 2]
    return {
        "diagonal_type": dt,
        "found": len(found),
        "truncated": res.truncated,
        "conclusive": not res.truncated,
        "red_flag": bool(found),
        "block_systems": res.block_systems,
    }


def natural(inst: EmbeddingInstance):
    return natural_decomposition(inst.setting)
