"""Cartesian decompositions, Cartesian systems, F-profiles, the six-class classifier
and enumeration of invariant decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Iterable, Iterator, Sequence

import numpy as np

from .blocks import Partition, all_block_systems
from .config import Budget
from .coset import CosetSpace
from .group import PermGroup, conjugate_subgroup_search, intersect, stabilizer_from_orbit
from .perm import Perm
from .products import (
    FactoredGroup,
    Range,
    VerifiedPlinth,
    coordinate_arrays,
    coordinate_permutation,
    factor_action_group,
    index_tuple,
    intersect_all,
    restrict_to,
    tuple_index,
    verify_plinth,
)
from .strips import (
    Strip,
    check_strong_multiple_factorization,
    is_subdirect,
    scott_decompose,
    strips_involved_in,
)


class TheoryViolation(AssertionError):
    """A structural fact that must hold for every valid input failed; a red flag."""


class DecompositionError(ValueError):
    """The decomposition or system does not satisfy its defining properties."""


# --- the acting groups -----------------------------------------------------


@dataclass(frozen=True)
class Layout:
    """Where the factor domains, the coordinate copies and Ω sit in the combined domain."""

    degree: int
    factor_domains: tuple[Range, ...]
    coords: tuple[Range, ...] = ()
    omega: Range | None = None
    omega_size: int = 0

    @property
    def d(self) -> int:
        return max((s + n for s, n in self.factor_domains), default=0)

    @property
    def materialized(self) -> bool:
        return self.omega is not None

    @property
    def coord_sizes(self) -> list[int]:
        return [n for _, n in self.coords]


class Setting:
    """An innately transitive group ``G`` with plinth ``M`` and a base point ω.

    Generators are permutations of the combined domain described by
    ``layout``; the plinth is given by generators of each simple factor.
    ``G_omega`` may be supplied, and must be when Ω is not materialized.
    """

    def __init__(
        self,
        layout: Layout,
        G_gens: Sequence[Perm],
        factor_gens: Sequence[Sequence[Perm]],
        omega: int | Sequence[int] = 0,
        G_omega_gens: Sequence[Perm] | None = None,
        name: str = "",
        trusted: bool = False,
    ):
        self.layout = layout
        self.name = name
        self.trusted = trusted
        n = layout.degree
        self.G = PermGroup(G_gens, degree=n)
        self.factor_gens = [list(f) for f in factor_gens]
        self.M_comb = PermGroup([g for f in self.factor_gens for g in f], degree=n)
        d = layout.d
        dom = np.arange(d)

        def small(g: Perm) -> Perm:
            return restrict_to(g, dom, None) if d else g

        self._small = small
        factors = tuple(PermGroup([small(g) for g in f], degree=d) for f in self.factor_gens)
        self.M = FactoredGroup(d, tuple(layout.factor_domains), factors)
        self.M_D = PermGroup([small(g) for g in self.M_comb.gens], degree=d)
        self.G_D = PermGroup([small(g) for g in self.G.gens], degree=d)
        if len(self.M_D.gens) != len(self.M_comb.gens) or len(self.G_D.gens) != len(self.G.gens):
            raise ValueError("a generator acts trivially on the factor domains")
        if layout.materialized:
            self.omega = int(omega) if not isinstance(omega, (tuple, list)) else self._tuple_to_index(omega)
        else:
            if not isinstance(omega, (tuple, list)):
                omega = index_tuple(int(omega), layout.coord_sizes)
            self.omega = tuple(int(x) for x in omega)
        self._G_omega = PermGroup([small(g) for g in G_omega_gens], degree=d) if G_omega_gens is not None else None
        if self._G_omega is None and not layout.materialized:
            raise ValueError("the base point stabilizer must be supplied when Ω is not materialized")
        self._M_omega: PermGroup | None = None
        self._plinth: VerifiedPlinth | None = None

    # points and coordinates

    def _tuple_to_index(self, t: Sequence[int]) -> int:
        return tuple_index(t, self.layout.coord_sizes)

    def omega_tuple(self) -> tuple[int, ...]:
        if isinstance(self.omega, tuple):
            return self.omega
        return index_tuple(self.omega, self.layout.coord_sizes)

    @property
    def omega_abs(self) -> int:
        return self.layout.omega[0] + self.omega

    def omega_action(self, H: PermGroup) -> PermGroup:
        """Restriction of a combined group to Ω, renumbered from 0."""
        s, n = self.layout.omega
        pts = np.arange(s, s + n)
        return PermGroup([restrict_to(g, pts) for g in H.gens], degree=n)

    def to_small(self, g: Perm) -> Perm:
        return self._small(g)

    # stabilizers

    @property
    def G_omega(self) -> PermGroup:
        if self._G_omega is None:
            gens = self.G.gens
            H, _ = stabilizer_from_orbit(self.G_D, self.omega_abs, lambda p, i: int(gens[i].a[p]))
            self._G_omega = H
        return self._G_omega

    @property
    def M_omega(self) -> PermGroup:
        if self._M_omega is None:
            if self.layout.materialized:
                gens = self.M_comb.gens
                H, _ = stabilizer_from_orbit(self.M_D, self.omega_abs, lambda p, i: int(gens[i].a[p]))
            else:
                H = intersect_all(coordinate_stabilizers(self))
            self._M_omega = H
        return self._M_omega

    def M_transitive(self) -> bool:
        if self.layout.materialized:
            return self.omega_action(self.M_comb).is_transitive()
        return self.M_D.order() == self.M_omega.order() * prod(self.layout.coord_sizes)

    def plinth(self) -> VerifiedPlinth:
        if self._plinth is None:
            self._plinth = verify_plinth(self.G_D, self.M, self.M_transitive(), trusted=self.trusted)
        return self._plinth

    def faithful_on_factor_domains(self) -> bool | None:
        """Whether restriction to the factor domains loses nothing; None when not checkable."""
        if not self.layout.materialized:
            return None
        return self.G.order() == self.G_D.order()

    def translate(self, m: Perm) -> "Setting":
        """The same groups with base point ω·m for an element ``m`` of the plinth."""
        lay = self.layout
        if lay.materialized:
            new_omega: int | tuple = int(m.a[self.omega_abs]) - lay.omega[0]
        else:
            pts = [r[0] + x for r, x in zip(lay.coords, self.omega)]
            new = [0] * len(pts)
            for p in pts:
                y = int(m.a[p])
                j = _coord_of(y, lay.coords)
                new[j] = y - lay.coords[j][0]
            new_omega = tuple(new)
        s = Setting.__new__(Setting)
        s.__dict__.update(self.__dict__)
        s.omega = new_omega
        s._M_omega = None
        ms = self.to_small(m)
        s._G_omega = self._G_omega.conjugate(ms) if self._G_omega is not None else None
        return s


def _coord_of(x: int, ranges: Sequence[Range]) -> int:
    for j, (s, n) in enumerate(ranges):
        if s <= x < s + n:
            return j
    raise ValueError(f"point {x} is not in a coordinate copy")


def coordinate_stabilizers(S: Setting) -> list[PermGroup]:
    """Stabilizers in M of the coordinates of ω, computed on the factor domains."""
    gens = S.M_comb.gens
    out = []
    for (start, _), x in zip(S.layout.coords, S.omega_tuple()):
        H, _ = stabilizer_from_orbit(S.M_D, start + x, lambda p, i: int(gens[i].a[p]))
        out.append(H)
    return out


# --- decompositions and systems ---------------------------------------------


@dataclass
class CartesianDecomposition:
    """Either explicit partitions of a materialized Ω, or the coordinate structure of a lazy one."""

    omega_size: int
    partitions: tuple[Partition, ...] | None = None
    coords: tuple[Range, ...] | None = None

    @property
    def ell(self) -> int:
        return len(self.partitions) if self.partitions is not None else len(self.coords or ())

    @property
    def lazy(self) -> bool:
        return self.partitions is None

    def key(self) -> tuple:
        if self.partitions is not None:
            return tuple(sorted(P.key() for P in self.partitions))
        return ("coords",) + tuple(self.coords or ())

    def same_as(self, other: "CartesianDecomposition") -> bool:
        return self.omega_size == other.omega_size and self.key() == other.key()


def natural_decomposition(S: Setting) -> CartesianDecomposition:
    lay = S.layout
    if not lay.coords:
        raise DecompositionError("the layout has no coordinate structure")
    if lay.materialized:
        C = coordinate_arrays(lay.coord_sizes)
        return CartesianDecomposition(lay.omega_size, tuple(Partition(lay.omega_size, C[:, j]) for j in range(C.shape[1])))
    return CartesianDecomposition(lay.omega_size, coords=tuple(lay.coords))


def validate_decomposition(E: CartesianDecomposition) -> bool:
    """Every choice of one block per partition meets in exactly one point."""
    if E.partitions is None:
        # a lazy Ω is the product of its coordinate sets by construction
        return prod(n for _, n in E.coords) == E.omega_size
    n = E.omega_size
    if any(P.n != n for P in E.partitions):
        raise DecompositionError("partitions are on different sets")
    if not E.partitions:
        return n == 1
    if prod(P.num_blocks for P in E.partitions) != n:
        return False
    meet = E.partitions[0]
    for P in E.partitions[1:]:
        meet = meet.meet(P)
    return meet.num_blocks == n


@dataclass
class CartesianSystem:
    M: FactoredGroup
    K: tuple[PermGroup, ...]
    M_omega: PermGroup

    @property
    def ell(self) -> int:
        return len(self.K)

    def verify(self) -> dict:
        """Intersection and factorisation identities, by order arithmetic."""
        full = intersect_all(self.K)
        inter = full.same_as(self.M_omega)
        m = self.M.order()
        fac = []
        for i in range(self.ell):
            others = [self.K[j] for j in range(self.ell) if j != i]
            rest = intersect_all(others) if others else self.M.ambient
            fac.append(self.K[i].order() * rest.order() // full.order() == m)
        proper = all(K.order() < m for K in self.K)
        return {"intersection": inter, "factorization": fac, "proper": proper, "ok": inter and all(fac) and proper}

    def same_as(self, other: "CartesianSystem") -> bool:
        if self.ell != other.ell:
            return False
        used = set()
        for A in self.K:
            hit = next((j for j, B in enumerate(other.K) if j not in used and A.same_as(B)), None)
            if hit is None:
                return False
            used.add(hit)
        return True


def _induced_partition(P: Partition, g: np.ndarray) -> Partition:
    lab = np.empty_like(P.labels)
    lab[g] = P.labels
    return Partition(P.n, lab)


def decomposition_to_system(E: CartesianDecomposition, S: Setting) -> CartesianSystem:
    """Stabilizers in M of the blocks containing ω."""
    lay = S.layout
    if E.partitions is None:
        if tuple(E.coords) != tuple(lay.coords):
            raise DecompositionError("lazy decompositions must use the layout's coordinates")
        K = tuple(coordinate_stabilizers(S))
        return CartesianSystem(S.M, K, S.M_omega)
    MO = S.omega_action(S.M_comb)
    Ks = []
    for P in E.partitions:
        if not P.is_invariant(MO):
            raise DecompositionError("a partition is not invariant under the plinth")
        reps = [b[0] for b in P.blocks]
        lab = P.labels
        gens = MO.gens
        start = P.block_of(S.omega)
        H, _ = stabilizer_from_orbit(S.M_D, start, lambda b, i: int(lab[gens[i].a[reps[b]]]))
        Ks.append(H)
    return CartesianSystem(S.M, tuple(Ks), S.M_omega)


def system_to_decomposition(K: CartesianSystem, S: Setting, check: bool = True) -> CartesianDecomposition:
    """Partitions whose blocks are the M-translates of the ``K_i``-orbit of ω."""
    if check:
        v = K.verify()
        if not v["ok"]:
            raise DecompositionError(f"not a Cartesian system: {v}")
    lay = S.layout
    if not lay.materialized:
        _match_coordinates(K, S)
        return CartesianDecomposition(lay.omega_size, coords=tuple(lay.coords))
    MO = S.omega_action(S.M_comb)
    n = lay.omega_size
    parts = []
    for Ki in K.K:
        orbit = _orbit_in_omega(S, Ki)
        lab = np.full(n, -1, dtype=np.int64)
        lab[orbit] = 0
        blocks = [orbit]
        for B in blocks:
            for g in MO.gens:
                img = g.a[B]
                l0 = lab[img[0]]
                if l0 == -1:
                    if (lab[img] != -1).any():
                        raise DecompositionError("translates of the orbit overlap")
                    lab[img] = len(blocks)
                    blocks.append(img)
                elif (lab[img] != l0).any():
                    raise DecompositionError("translates of the orbit are not blocks")
        if (lab == -1).any():
            raise DecompositionError("the plinth is not transitive on Ω")
        parts.append(Partition(n, lab))
    return CartesianDecomposition(n, tuple(parts))


def _orbit_in_omega(S: Setting, H_small: PermGroup) -> np.ndarray:
    """Orbit of ω under a subgroup of M given on the factor domains."""
    gens = [_lift_to_omega(S, h) for h in H_small.gens]
    seen = {S.omega}
    out = [S.omega]
    for x in out:
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                out.append(y)
    return np.array(sorted(out), dtype=np.int64)


def _lift_to_omega(S: Setting, h: Perm) -> np.ndarray:
    """Ω-images of the plinth element with factor-domain part ``h``."""
    lifter = getattr(S, "_lifter", None)
    if lifter is None:
        from .products import Lifter

        lifter = Lifter(S.M_comb, S.layout.d)
        S._lifter = lifter
    g = lifter.lift(h)
    s, n = S.layout.omega
    return g.a[s : s + n] - s


def _match_coordinates(K: CartesianSystem, S: Setting) -> None:
    """Check that M acts on each coordinate copy exactly as on the cosets of ``K_j``."""
    gens = S.M_comb.gens
    for j, ((start, size), x) in enumerate(zip(S.layout.coords, S.omega_tuple())):
        cs = CosetSpace(S.M_D, K.K[j])
        if len(cs) != size:
            raise DecompositionError(f"coordinate {j} has {size} points but {len(cs)} cosets")
        mapping = np.full(len(cs), -1, dtype=np.int64)
        mapping[0] = start + x
        queue = [0]
        for c in queue:
            p = mapping[c]
            for i, g in enumerate(gens):
                c2 = int(cs.action[i][c])
                p2 = int(g.a[p])
                if mapping[c2] == -1:
                    mapping[c2] = p2
                    queue.append(c2)
                elif mapping[c2] != p2:
                    raise DecompositionError(f"coordinate {j} is not the coset action of its stabilizer")
        if len(set(mapping.tolist())) != size:
            raise DecompositionError(f"coordinate {j} is not matched bijectively")


# --- invariance -------------------------------------------------------------


def induced_action_on_decomposition(E: CartesianDecomposition, S: Setting) -> list[list[int]] | None:
    """Permutation of the ℓ partitions induced by each generator of G, or None if not invariant."""
    return decomposition_action(E, S.G.gens, S.layout.omega)


def decomposition_action(
    E: CartesianDecomposition, gens: Sequence[Perm], omega: Range | None
) -> list[list[int]] | None:
    """Like :func:`induced_action_on_decomposition` for bare generators of the combined domain."""
    out = []
    if E.partitions is None:
        for g in gens:
            try:
                perm = coordinate_permutation(g, E.coords)
            except ValueError:
                return None
            for j, (s, n) in enumerate(E.coords):
                ds, dn = E.coords[perm[j]]
                img = g.a[s : s + n]
                if img.min() < ds or img.max() >= ds + dn:
                    return None
            if sorted(perm) != list(range(E.ell)):
                return None
            out.append(perm)
        return out
    if omega is None:
        raise DecompositionError("partitions need a materialized Ω")
    s, n = omega
    if n != E.omega_size:
        raise DecompositionError(f"decomposition is on {E.omega_size} points but Ω has {n}")
    index = {P: j for j, P in enumerate(E.partitions)}
    for g in gens:
        img = g.a[s : s + n] - s
        if img.min() < 0 or img.max() >= n:
            return None
        perm = []
        for P in E.partitions:
            j = index.get(_induced_partition(P, img))
            if j is None:
                return None
            perm.append(j)
        out.append(perm)
    return out


def is_G_invariant(E: CartesianDecomposition, S: Setting) -> bool:
    return induced_action_on_decomposition(E, S) is not None


def is_transitive_decomposition(E: CartesianDecomposition, S: Setting) -> bool:
    act = induced_action_on_decomposition(E, S)
    if act is None:
        return False
    if E.ell <= 1:
        return True
    H = PermGroup([Perm(p) for p in act], degree=E.ell)
    return H.is_transitive()


# --- F-profile and classification -------------------------------------------


@dataclass
class FProfile:
    members: list[list[tuple[int, PermGroup]]]
    simple_factorization: list[bool]

    @property
    def sizes(self) -> list[int]:
        return [len(m) for m in self.members]


def compute_F_profile(K: CartesianSystem) -> FProfile:
    M = K.M
    members = []
    checks = []
    for i in range(M.k):
        Ti = M.factor_order(i)
        proj = [M.sigma([i], Kj) for Kj in K.K]
        Fi = []
        for j, P in enumerate(proj):
            if P.order() == Ti:
                continue
            Fi.append((j, P))
            others = [proj[jj] for jj in range(K.ell) if jj != j]
            rest = intersect_all(others) if others else M.factors[i]
            checks.append(P.order() * rest.order() // intersect(P, rest).order() == Ti)
        members.append(Fi)
    return FProfile(members, checks)


LABELS = ("S", "1", "1S", "2~", "2!~", "3")


@dataclass
class ClassLabel:
    label: str | None
    evidence: dict = field(default_factory=dict)
    truncated: bool = False


class ClassifyError(ValueError):
    """Preconditions for classification are not met."""


def classify(
    E: CartesianDecomposition,
    S: Setting,
    budget: Budget | None = None,
    system: CartesianSystem | None = None,
) -> ClassLabel:
    """Class of a transitive G-invariant Cartesian decomposition."""
    budget = budget or Budget()
    if not validate_decomposition(E):
        raise ClassifyError("not a Cartesian decomposition")
    if not is_G_invariant(E, S):
        raise ClassifyError("decomposition is not G-invariant")
    if not is_transitive_decomposition(E, S):
        raise ClassifyError("G does not act transitively on the decomposition")
    plinth = S.plinth()
    if not plinth.ok:
        raise ClassifyError(f"plinth not verified: {plinth.summary()}")
    K = system or decomposition_to_system(E, S)
    return classify_system(K, S, budget)


def classify_system(K: CartesianSystem, S: Setting, budget: Budget | None = None) -> ClassLabel:
    budget = budget or Budget()
    M = K.M
    ev: dict = {"ell": K.ell, "k": M.k}
    v = K.verify()
    ev["system"] = v
    if not v["ok"]:
        raise ClassifyError(f"not a Cartesian system: {v}")
    if all(is_subdirect(M, Kj) for Kj in K.K):
        strips = [scott_decompose(M, Kj).supports for Kj in K.K]
        ev["subdirect_strip_supports"] = [[list(s) for s in ss] for ss in strips]
        return ClassLabel("S", ev)
    F = compute_F_profile(K)
    sizes = F.sizes
    ev["F_sizes"] = sizes
    ev["F_members"] = [[j for j, _ in m] for m in F.members]
    ev["F_orders"] = [[P.order() for _, P in m] for m in F.members]
    if not all(F.simple_factorization):
        raise TheoryViolation("a proper projection fails σ_i(K_j)·∩σ_i(K_j') = T_i")
    if len(set(sizes)) != 1:
        raise TheoryViolation(f"|F_i| is not constant: {sizes}")
    f = sizes[0]
    if f > 3:
        raise TheoryViolation(f"|F_i| = {f} exceeds 3")
    involved = involved_strips(K)
    ev["strips"] = [{"K": j, "support": list(s.support)} for j, s in involved]
    _check_strip_theory(K, S, involved, f)
    if f == 1:
        return ClassLabel("1S" if involved else "1", ev)
    if f == 2:
        (_, A), (_, B) = F.members[0]
        res = conjugate_subgroup_search(S.G_omega, A, B, max_orbit=budget.orbit)
        ev["conjugacy_orbit"] = res.orbit_size
        if res.truncated:
            return ClassLabel(None, ev, truncated=True)
        ev["conjugate"] = res.conjugate
        if res.conjugate:
            ev["witness"] = res.element.tolist()
        return ClassLabel("2~" if res.conjugate else "2!~", ev)
    if f == 3:
        (_, A), (_, B), (_, C) = F.members[0]
        smf = check_strong_multiple_factorization(M.factors[0], A, B, C)
        ev["smf"] = smf.ok
        if not smf.ok:
            raise TheoryViolation(f"three proper projections that are not a strong multiple factorisation: {smf.first_failure}")
        return ClassLabel("3", ev)
    raise TheoryViolation("no proper projections but the system is not subdirect")


def involved_strips(K: CartesianSystem) -> list[tuple[int, Strip]]:
    out = []
    for j, Kj in enumerate(K.K):
        for s in strips_involved_in(K.M, Kj):
            out.append((j, s))
    return out


def _check_strip_theory(K: CartesianSystem, S: Setting, involved: list[tuple[int, Strip]], f: int) -> None:
    if not involved:
        return
    for (_, a), (_, b) in combinations(involved, 2):
        if a.support != b.support and not a.disjoint_from(b):
            raise TheoryViolation("two involved strips overlap")
    if f not in (0, 1):
        raise TheoryViolation(f"strips are involved but |F_i| = {f}")
    if f == 1 and any(len(s.support) != 2 for _, s in involved):
        raise TheoryViolation("strips with |F_i| = 1 must have support of size 2")
    supports = {s.support for _, s in involved}
    covered = sorted(i for sup in supports for i in sup)
    if covered != list(range(K.M.k)):
        raise TheoryViolation("strip supports do not partition the factors")
    act = factor_action_group(S.G_D, K.M)
    for g in act.gens:
        for sup in supports:
            if tuple(sorted(int(g.a[i]) for i in sup)) not in supports:
                raise TheoryViolation("strip supports are not permuted by G")


def strip_support_partition(K: CartesianSystem) -> list[tuple[int, ...]]:
    return sorted({s.support for _, s in involved_strips(K)})


# --- diagonal type -----------------------------------------------------------


def diagonal_type(S: Setting) -> str:
    M = S.M
    Mw = S.M_omega
    if not is_subdirect(M, Mw):
        return "not-diagonal"
    s = len(scott_decompose(M, Mw).strips)
    return "simple-diagonal" if s == 1 else "compound-diagonal"


# --- enumeration --------------------------------------------------------------


def set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """All set partitions, blocks in order of their least element."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1 :]


def enumerate_via_factor_partitions(S: Setting, max_factors: int = 10) -> list[CartesianSystem]:
    """Systems ``K_i = σ_{P_i}(M_ω) × ∏_{j∉P_i} T_j`` over G-invariant partitions of the factors."""
    M = S.M
    if M.k > max_factors:
        raise ValueError("too many factors for set-partition enumeration")
    act = factor_action_group(S.G_D, M)
    Mw = S.M_omega
    out = []
    for parts in set_partitions(range(M.k)):
        if len(parts) < 2:
            continue
        blocks = {tuple(sorted(b)) for b in parts}
        if not all(tuple(sorted(int(g.a[i]) for i in b)) in blocks for g in act.gens for b in blocks):
            continue
        projs = [M.sigma(b, Mw) for b in parts]
        if prod(P.order() for P in projs) != Mw.order():
            continue
        Ks = []
        for b, P in zip(parts, projs):
            rest = M.complement(b)
            Ks.append(PermGroup(list(P.gens) + list(M.full_factors(rest).gens), degree=M.degree))
        sysm = CartesianSystem(M, tuple(Ks), Mw)
        if not sysm.verify()["ok"]:
            continue
        if not _system_invariant(sysm, S.G_omega):
            continue
        out.append(sysm)
    return out


def _system_invariant(K: CartesianSystem, H: PermGroup) -> bool:
    for g in H.gens:
        for A in K.K:
            B = A.conjugate(g)
            if not any(B.same_as(C) for C in K.K):
                return False
    return True


@dataclass
class EnumerationResult:
    items: list[tuple[CartesianDecomposition | None, CartesianSystem, ClassLabel]]
    truncated: bool
    block_systems: int | None = None


def enumerate_invariant_decompositions(S: Setting, budget: Budget | None = None) -> EnumerationResult:
    """All G-invariant Cartesian decompositions with at least two partitions."""
    budget = budget or Budget()
    if not S.plinth().ok:
        raise ClassifyError(f"plinth not verified: {S.plinth().summary()}")
    found: dict[tuple, tuple] = {}
    truncated = False
    nsys = None
    for sysm in enumerate_via_factor_partitions(S):
        E = system_to_decomposition(sysm, S, check=False) if S.layout.materialized else None
        key = E.key() if E is not None else tuple(sorted(_system_key(K) for K in sysm.K))
        found.setdefault(key, (E, sysm))
    if S.layout.materialized:
        MO = S.omega_action(S.M_comb)
        systems, trunc = all_block_systems(MO, budget.blocks)
        truncated |= trunc
        nsys = len(systems)
        for E in _cartesian_subsets(systems, S.layout.omega_size):
            if not is_G_invariant(E, S):
                continue
            found.setdefault(E.key(), (E, None))
    items = []
    for key in sorted(found):
        E, sysm = found[key]
        if sysm is None:
            sysm = decomposition_to_system(E, S)
        if E is not None and not is_transitive_decomposition(E, S):
            label = ClassLabel(None, {"transitive": False})
        else:
            label = classify_system(sysm, S, budget)
        truncated |= label.truncated
        items.append((E, sysm, label))
    return EnumerationResult(items, truncated, nsys)


def _system_key(K: PermGroup) -> tuple:
    return (K.order(), tuple(sorted(g.key() for g in K.chain.strong)))


def _cartesian_subsets(systems: Sequence[Partition], n: int) -> Iterator[CartesianDecomposition]:
    cands = [P for P in systems if not P.is_trivial()]
    cands.sort(key=Partition.key)

    def rec(start: int, chosen: list[Partition], meet: Partition | None, size: int) -> Iterator[CartesianDecomposition]:
        if size == n and len(chosen) >= 2:
            yield CartesianDecomposition(n, tuple(chosen))
            return
        for i in range(start, len(cands)):
            P = cands[i]
            new_size = size * P.num_blocks
            if n % new_size:
                continue
            new_meet = P if meet is None else meet.meet(P)
            if new_meet.num_blocks != new_size:
                continue
            yield from rec(i + 1, chosen + [P], new_meet, new_size)

    yield from rec(0, [], None, 1)
