"""Direct products with coordinate projections, wreath products in product action,
and the combined point layout used throughout the package.

Every group that acts on a product set is stored as permutations of one
combined domain laid out as

    [ factor domains D | coordinate copies Γ_1 ⊔ … ⊔ Γ_ℓ | Ω ]

The factor domains carry a faithful action of the plinth, one domain per
simple factor, and all subgroup algebra (projections, strips, intersections)
runs there because it is small. The coordinate copies hold the faithful
action of a wreath product on the disjoint union. Ω is present only when it
is small enough to materialize.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .group import (
    PermGroup,
    StabilizerChain,
    intersect,
    is_normal,
    normal_closure,
    set_stabilizer,
    stabilizer_from_orbit,
)
from .perm import Perm

MATERIALIZE_LIMIT = 100_000

Range = tuple[int, int]  # (start, size)


def _points(r: Range) -> np.ndarray:
    return np.arange(r[0], r[0] + r[1])


def restrict_to(g: Perm, pts: np.ndarray, degree: int | None = None) -> Perm:
    """Restriction of ``g`` to the invariant set ``pts``.

    With ``degree`` the result lives on ``[0, degree)`` with ``pts`` kept in
    place, otherwise ``pts`` must be a contiguous range and is renumbered from 0.
    """
    if degree is None:
        lo = int(pts[0])
        return Perm._raw((g.a[pts] - lo).astype(np.int32))
    a = np.arange(degree, dtype=np.int32)
    a[pts] = g.a[pts]
    return Perm._raw(a)


def restrict_group(G: PermGroup, pts: np.ndarray, degree: int | None = None) -> PermGroup:
    deg = degree if degree is not None else len(pts)
    return PermGroup([restrict_to(g, pts, degree) for g in G.gens], degree=deg)


# --- factored groups -------------------------------------------------------


@dataclass
class FactoredGroup:
    """A direct product ``T_1 × … × T_k`` acting on consecutive factor domains.

    Factor ``i`` acts on ``domains[i]`` and fixes every other point. The
    ambient group is generated by the factor generators.
    """

    degree: int
    domains: tuple[Range, ...]
    factors: tuple[PermGroup, ...]
    simplicity_checked: bool = False
    _ambient: PermGroup | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if len(self.domains) != len(self.factors):
            raise ValueError("one domain per factor")
        covered = np.zeros(self.degree, dtype=np.int8)
        for r in self.domains:
            covered[r[0] : r[0] + r[1]] += 1
        if (covered > 1).any():
            raise ValueError("factor domains overlap")
        for r, T in zip(self.domains, self.factors):
            for g in T.gens:
                if np.any(g.support() < r[0]) or np.any(g.support() >= r[0] + r[1]):
                    raise ValueError("factor generator moves points outside its domain")
        self._owner = np.full(self.degree, -1, dtype=np.int64)
        for i, r in enumerate(self.domains):
            self._owner[r[0] : r[0] + r[1]] = i

    @property
    def k(self) -> int:
        return len(self.factors)

    @property
    def ambient(self) -> PermGroup:
        if self._ambient is None:
            gens = [g for T in self.factors for g in T.gens]
            self._ambient = PermGroup(gens, degree=self.degree)
        return self._ambient

    def order(self) -> int:
        return prod(T.order() for T in self.factors)

    def factor_order(self, i: int) -> int:
        return self.factors[i].order()

    def domain_points(self, I: Iterable[int]) -> np.ndarray:
        idx = sorted(set(I))
        if not idx:
            return np.zeros(0, dtype=np.intp)
        return np.concatenate([_points(self.domains[i]) for i in idx])

    def owner(self, point: int) -> int:
        return int(self._owner[point])

    def sigma(self, I: Iterable[int], K: PermGroup, check: bool = False) -> PermGroup:
        """Projection of ``K`` onto the factors in ``I``, as a subgroup of the ambient product."""
        if check and not K.is_subgroup_of(self.ambient):
            raise ValueError("K is not a subgroup of M")
        pts = self.domain_points(I)
        gens = [restrict_to(g, pts, self.degree) for g in K.gens]
        return PermGroup(gens, degree=self.degree)

    def sigma_order(self, I: Iterable[int], K: PermGroup) -> int:
        return self.sigma(I, K).order()

    def complement(self, I: Iterable[int]) -> list[int]:
        s = set(I)
        return [i for i in range(self.k) if i not in s]

    def product_of(self, subgroups: Sequence[PermGroup]) -> PermGroup:
        """Internal product of subgroups with pairwise disjoint supports."""
        gens = [g for H in subgroups for g in H.gens]
        return PermGroup(gens, degree=self.degree)

    def full_factors(self, I: Iterable[int]) -> PermGroup:
        return self.product_of([self.factors[i] for i in sorted(set(I))])

    def factor_permutation(self, g: Perm) -> list[int]:
        """Image of each factor index under conjugation by ``g`` (which must normalize M)."""
        out = []
        for r in self.domains:
            img = g.a[r[0] : r[0] + r[1]]
            owners = np.unique(self._owner[img])
            if owners.size != 1 or owners[0] < 0:
                raise ValueError("element does not permute the factor domains")
            out.append(int(owners[0]))
        return out


def direct_product(groups: Sequence[PermGroup]) -> FactoredGroup:
    """External direct product, each group placed on its own consecutive domain."""
    if not groups:
        raise ValueError("need at least one group")
    degree = sum(G.degree for G in groups)
    domains = []
    factors = []
    offset = 0
    for G in groups:
        gens = []
        for g in G.gens:
            a = np.arange(degree, dtype=np.int32)
            a[offset : offset + G.degree] = g.a + offset
            gens.append(Perm._raw(a))
        domains.append((offset, G.degree))
        factors.append(PermGroup(gens, degree=degree))
        offset += G.degree
    return FactoredGroup(degree, tuple(domains), tuple(factors))


def embed(g: Perm, offset: int, degree: int) -> Perm:
    a = np.arange(degree, dtype=np.int32)
    a[offset : offset + g.degree] = g.a + offset
    return Perm._raw(a)


# --- simplicity ------------------------------------------------------------


def conjugacy_class_reps(T: PermGroup, limit: int = 100_000) -> list[Perm]:
    """One representative per conjugacy class, by enumerating the group."""
    if T.order() > limit:
        raise ValueError("group too large to enumerate classes")
    elems = list(T.elements())
    seen: set[Perm] = set()
    reps = []
    for x in elems:
        if x in seen:
            continue
        reps.append(x)
        cls = [x]
        seen.add(x)
        for y in cls:
            for g in T.gens:
                z = y.conj(g)
                if z not in seen:
                    seen.add(z)
                    cls.append(z)
    return reps


def is_simple_nonabelian(T: PermGroup, limit: int = 100_000) -> bool | None:
    """Exact simplicity test through normal closures of class representatives.

    Returns None when the group is too large to check.
    """
    n = T.order()
    if n == 1:
        return False
    if n > limit:
        return None
    if all(a * b == b * a for a in T.gens for b in T.gens):
        return False
    for x in conjugacy_class_reps(T, limit):
        if x.is_identity():
            continue
        if normal_closure(T, [x]).order() != n:
            return False
    return True


# --- wreath products -------------------------------------------------------


class WreathProduct:
    """``L wr H`` with its faithful action on ``ℓ`` copies of Γ and the product action on Γ^ℓ."""

    def __init__(self, L: PermGroup, H: PermGroup):
        self.L = L
        self.H = H
        self.gamma = L.degree
        self.ell = H.degree
        n = self.gamma * self.ell
        gens = []
        for j in range(self.ell):
            for g in L.gens:
                gens.append(embed(g, j * self.gamma, n))
        for h in H.gens:
            gens.append(self.top_element(h))
        self.union_group = PermGroup(gens, degree=n)

    def top_element(self, h: Perm) -> Perm:
        """Coordinate permutation moving copy ``j`` to copy ``j h``."""
        g = self.gamma
        a = np.empty(g * self.ell, dtype=np.int32)
        for j in range(self.ell):
            dest = int(h.a[j])
            a[j * g : (j + 1) * g] = np.arange(g) + dest * g
        return Perm._raw(a)

    def order(self) -> int:
        return self.L.order() ** self.ell * self.H.order()

    def coordinate_ranges(self) -> list[Range]:
        return [(j * self.gamma, self.gamma) for j in range(self.ell)]

    @property
    def omega_size(self) -> int:
        return self.gamma**self.ell

    def act_on_tuple(self, g: Perm, point: Sequence[int]) -> tuple[int, ...]:
        return act_on_tuple(g, self.coordinate_ranges(), point)

    def materialize(self, g: Perm) -> Perm:
        if self.omega_size > MATERIALIZE_LIMIT:
            raise ValueError("product set too large to materialize")
        return Perm._raw(product_action_images(g.a, self.coordinate_ranges()))

    def product_group(self) -> PermGroup:
        return PermGroup([self.materialize(g) for g in self.union_group.gens], degree=self.omega_size)


def act_on_tuple(g: Perm, ranges: Sequence[Range], point: Sequence[int]) -> tuple[int, ...]:
    """Product action read off the action on the disjoint union of coordinate copies."""
    out = [0] * len(ranges)
    starts = [r[0] for r in ranges]
    for j, (start, _) in enumerate(ranges):
        y = int(g.a[start + point[j]])
        dest = _coordinate_of(y, ranges)
        out[dest] = y - starts[dest]
    return tuple(out)


def _coordinate_of(x: int, ranges: Sequence[Range]) -> int:
    for j, (start, size) in enumerate(ranges):
        if start <= x < start + size:
            return j
    raise ValueError(f"point {x} is outside the coordinate copies")


def coordinate_arrays(sizes: Sequence[int]) -> np.ndarray:
    """All tuples of the product in row-major order, shape ``(∏ sizes, ℓ)``."""
    grids = np.meshgrid(*[np.arange(s) for s in sizes], indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def strides(sizes: Sequence[int]) -> np.ndarray:
    out = np.ones(len(sizes), dtype=np.int64)
    for j in range(len(sizes) - 2, -1, -1):
        out[j] = out[j + 1] * sizes[j + 1]
    return out


def tuple_index(point: Sequence[int], sizes: Sequence[int]) -> int:
    return int(np.dot(np.asarray(point, dtype=np.int64), strides(sizes)))


def index_tuple(index: int, sizes: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(x) for x in np.unravel_index(index, tuple(sizes)))


def product_action_images(a: np.ndarray, ranges: Sequence[Range]) -> np.ndarray:
    """Image table on Γ_1 × … × Γ_ℓ of an element given by its union images ``a``.

    The element must map each copy onto a whole copy; coordinate ``j`` of a
    tuple then lands in the coordinate of the copy it is sent to.
    """
    sizes = [r[1] for r in ranges]
    coords = coordinate_arrays(sizes)
    new = np.empty_like(coords)
    for j, (start, size) in enumerate(ranges):
        img = a[start : start + size]
        dest = _coordinate_of(int(img[0]), ranges)
        dstart, dsize = ranges[dest]
        if dsize != size or img.min() < dstart or img.max() >= dstart + dsize:
            raise ValueError("element does not map coordinate copies onto copies")
        new[:, dest] = img[coords[:, j]] - dstart
    return (new @ strides(sizes)).astype(np.int32)


def coordinate_permutation(g: Perm, ranges: Sequence[Range]) -> list[int]:
    return [_coordinate_of(int(g.a[r[0]]), ranges) for r in ranges]


def tuple_stabilizer(G: PermGroup, ranges: Sequence[Range], point: Sequence[int]) -> PermGroup:
    """Stabilizer of a product point, computed on the disjoint-union action.

    A tuple ``(γ_1, …, γ_ℓ)`` is fixed exactly when the set
    ``{(1, γ_1), …, (ℓ, γ_ℓ)}`` of union points is fixed setwise.
    """
    pts = [r[0] + int(x) for r, x in zip(ranges, point)]
    return set_stabilizer(G, pts)


def mu(G: PermGroup, ranges: Sequence[Range], j: int, X: PermGroup) -> PermGroup:
    """Projection onto the ``j``-th wreath base component: the action of ``X`` on copy ``j``."""
    start, size = ranges[j]
    pts = np.arange(start, start + size)
    gens = []
    for g in X.gens:
        img = g.a[pts]
        if img.min() < start or img.max() >= start + size:
            raise ValueError("X does not preserve the coordinate copy")
        gens.append(Perm._raw((img - start).astype(np.int32)))
    return PermGroup(gens, degree=size)


# --- lifting from the factor domains ---------------------------------------


class Lifter:
    """Lift elements given on the first ``d`` points back to a group acting on more points.

    Requires the action on ``[0, d)`` to be faithful, so that every base
    point of the chain lies there.
    """

    def __init__(self, G: PermGroup, d: int):
        self.G = G
        self.d = d
        self.chain: StabilizerChain = G.chain
        if any(b >= d for b in self.chain.base):
            raise ValueError("the action on the factor domains is not faithful")
        self._small_inv: dict[tuple[int, int], np.ndarray] = {}

    def lift(self, x: Perm) -> Perm:
        d = self.d
        r = x.a[:d].copy()
        us = []
        for l, lvl in enumerate(self.chain.levels):
            y = int(r[lvl.point])
            u = lvl.trans.get(y)
            if u is None:
                raise ValueError("element is not in the group")
            us.append(u)
            if y != lvl.point:
                inv = self._small_inv.get((l, y))
                if inv is None:
                    inv = lvl.inv(y).a[:d].copy()
                    self._small_inv[(l, y)] = inv
                r = inv[r]
        if not np.array_equal(r, np.arange(d)):
            raise ValueError("element is not in the group")
        out = self.chain.identity
        for u in reversed(us):
            out = out * u
        return out

    def lift_group(self, H: PermGroup) -> PermGroup:
        return PermGroup([self.lift(h) for h in H.gens], degree=self.G.degree)


# --- normality and plinth certificates -------------------------------------


def conjugation_action_on_factors(G: PermGroup, M: FactoredGroup, check: bool = True) -> list[Perm]:
    """The permutation of factor indices induced by each generator of ``G``."""
    if check and not is_normal(G, M.ambient):
        raise ValueError("M is not normal in G")
    return [Perm(M.factor_permutation(g)) for g in G.gens] if M.k > 0 else []


def factor_action_group(G: PermGroup, M: FactoredGroup) -> PermGroup:
    gens = conjugation_action_on_factors(G, M, check=False)
    return PermGroup(gens, degree=M.k)


def is_minimal_normal(G: PermGroup, M: FactoredGroup) -> bool:
    """Minimality certified by transitivity of ``G`` on the simple factors."""
    if not is_normal(G, M.ambient):
        return False
    if not all(is_simple_nonabelian(T) for T in M.factors):
        return False
    return factor_action_group(G, M).is_transitive()


@dataclass
class VerifiedPlinth:
    """Evidence that ``M`` is a transitive minimal normal subgroup of ``G``."""

    M: FactoredGroup
    normal: bool
    factors_simple: bool | None
    factor_action_transitive: bool
    transitive_on_omega: bool
    trusted: bool = False

    @property
    def ok(self) -> bool:
        if self.trusted:
            return True
        return bool(self.normal and self.factors_simple and self.factor_action_transitive and self.transitive_on_omega)

    def summary(self) -> dict:
        return {
            "normal": self.normal,
            "factors_simple": self.factors_simple,
            "factor_action_transitive": self.factor_action_transitive,
            "transitive_on_omega": self.transitive_on_omega,
            "trusted": self.trusted,
            "verified": self.ok,
        }


def verify_plinth(
    G_D: PermGroup, M: FactoredGroup, transitive_on_omega: bool, trusted: bool = False
) -> VerifiedPlinth:
    normal = is_normal(G_D, M.ambient) if M.ambient.is_subgroup_of(G_D) else False
    simple = None
    if not trusted:
        checks = [is_simple_nonabelian(T) for T in _distinct_factor_shapes(M)]
        simple = None if any(c is None for c in checks) else all(checks)
    transitive = factor_action_group(G_D, M).is_transitive() if normal else False
    M.simplicity_checked = bool(simple)
    return VerifiedPlinth(M, normal, simple, transitive, transitive_on_omega, trusted)


def _distinct_factor_shapes(M: FactoredGroup) -> list[PermGroup]:
    """Factors up to relabelling of their domain; conjugate copies need one check."""
    seen = {}
    for r, T in zip(M.domains, M.factors):
        key = tuple(sorted(restrict_to(g, _points(r)).key() for g in T.gens))
        seen.setdefault(key, T)
    return list(seen.values())


def subgroup_product_order(A: PermGroup, B: PermGroup) -> int:
    """``|AB|`` as a set, by order arithmetic."""
    return A.order() * B.order() // intersect(A, B).order()


def intersect_all(groups: Sequence[PermGroup]) -> PermGroup:
    return reduce(intersect, groups)


def transitive_on_omega_lazy(M_D: PermGroup, M_omega_D: PermGroup, omega_size: int) -> bool:
    return M_D.order() == M_omega_D.order() * omega_size


def coset_orbit_stabilizer(G: PermGroup, act, start) -> PermGroup:
    H, _ = stabilizer_from_orbit(G, start, act)
    return H
