"""Permutation groups given by generators, backed by a deterministic stabilizer chain."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Callable, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .perm import Perm


class _Level:
    __slots__ = ("point", "gens", "trans", "_inv", "_orbit")

    def __init__(self, point: int, gens: list[Perm], identity: Perm):
        self.point = point
        self.gens = gens
        trans = {point: identity}
        queue = [point]
        for x in queue:
            ux = trans[x]
            for g in gens:
                y = int(g.a[x])
                if y not in trans:
                    trans[y] = ux * g
                    queue.append(y)
        self.trans = trans
        self._inv: dict[int, Perm] = {}
        self._orbit = None

    def inv(self, y: int) -> Perm:
        u = self._inv.get(y)
        if u is None:
            u = ~self.trans[y]
            self._inv[y] = u
        return u

    @property
    def orbit(self) -> np.ndarray:
        if self._orbit is None:
            self._orbit = np.fromiter(self.trans, dtype=np.intp, count=len(self.trans))
        return self._orbit


class StabilizerChain:
    """Base, strong generators and transversals built by deterministic Schreier-Sims.

    Base points are the ``base_prefix`` followed by smallest moved points of
    strong generators, in the order they are needed.
    """

    def __init__(self, degree: int, gens: Iterable[Perm], base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.identity = Perm.identity(degree)
        self.base: list[int] = list(base_prefix)
        self.strong: list[Perm] = []
        seen = set()
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if g.is_identity() or g in seen:
                continue
            seen.add(g)
            self.strong.append(g)
        for g in self.strong:
            if self._fixes_base(g, len(self.base)):
                self.base.append(g.smallest_moved_point())
        self.levels: list[_Level] = [self._make_level(i) for i in range(len(self.base))]
        self._run()

    def _fixes_base(self, g: Perm, upto: int) -> bool:
        if upto == 0:
            return True
        pts = self.base[:upto]
        return bool(np.array_equal(g.a[pts], pts))

    def _make_level(self, i: int) -> _Level:
        gens = [s for s in self.strong if self._fixes_base(s, i)]
        return _Level(self.base[i], gens, self.identity)

    def sift(self, h: Perm, start: int = 0) -> tuple[Perm, int]:
        """Sift ``h`` from level ``start``; return the residue and the level where it stopped."""
        for l in range(start, len(self.base)):
            lvl = self.levels[l]
            y = int(h.a[lvl.point])
            if y not in lvl.trans:
                return h, l
            if y != lvl.point:
                h = h * lvl.inv(y)
        return h, len(self.base)

    def _run(self) -> None:
        i = len(self.base) - 1
        while i >= 0:
            lvl = self.levels[i]
            restart = None
            for p in list(lvl.trans):
                up = lvl.trans[p]
                for s in lvl.gens:
                    q = int(s.a[p])
                    ups = up * s
                    uq = lvl.trans[q]
                    if np.array_equal(ups.a, uq.a):
                        continue
                    res, j = self.sift(ups * lvl.inv(q), i + 1)
                    if res.is_identity():
                        continue
                    self.strong.append(res)
                    if j == len(self.base):
                        self.base.append(res.smallest_moved_point())
                        self.levels.append(None)  # type: ignore[arg-type]
                    for l in range(i + 1, j + 1):
                        self.levels[l] = self._make_level(l)
                    restart = j
                    break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart

    def order(self) -> int:
        return prod(len(l.trans) for l in self.levels)

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        res, j = self.sift(g)
        return j == len(self.base) and res.is_identity()

    def canonical_coset_rep(self, h: Perm) -> Perm:
        """The element of the right coset ``H h`` whose base images are lexicographically least."""
        for lvl in self.levels:
            orb = lvl.orbit
            y = int(orb[int(np.argmin(h.a[orb]))])
            if y != lvl.point:
                h = lvl.trans[y] * h
        return h

    def level_generators(self, i: int) -> list[Perm]:
        return [s for s in self.strong if self._fixes_base(s, i)]

    def elements(self) -> Iterator[Perm]:
        def rec(l: int, acc: Perm) -> Iterator[Perm]:
            if l < 0:
                yield acc
                return
            for u in self.levels[l].trans.values():
                yield from rec(l - 1, acc * u)

        yield from rec(len(self.levels) - 1, self.identity)


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on first use; the generator list is fixed
    at construction so the group is immutable afterwards.
    """

    def __init__(self, gens: Iterable[Perm | Sequence[int]], degree: int | None = None, name: str | None = None):
        perms = [g if isinstance(g, Perm) else Perm(g) for g in gens]
        if degree is None:
            if not perms:
                raise ValueError("degree required for a group with no generators")
            degree = perms[0].degree
        if any(p.degree != degree for p in perms):
            raise ValueError("all generators must share the group degree")
        self.degree = degree
        self.gens: tuple[Perm, ...] = tuple(p for p in perms if not p.is_identity())
        self.name = name
        self._chain: StabilizerChain | None = None

    @classmethod
    def trivial(cls, degree: int) -> "PermGroup":
        return cls([], degree=degree)

    @classmethod
    def from_chain(cls, chain: StabilizerChain) -> "PermGroup":
        g = cls(chain.strong, degree=chain.degree)
        g._chain = chain
        return g

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain(self.degree, self.gens)
        return self._chain

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def order(self) -> int:
        return self.chain.order()

    def __contains__(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def contains(self, g: Perm) -> bool:
        return self.chain.contains(g)

    def is_trivial(self) -> bool:
        return not self.gens

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.gens)

    def same_as(self, other: "PermGroup") -> bool:
        """Equal as sets: same order and mutual generator membership."""
        if self.degree != other.degree or self.order() != other.order():
            return False
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def orbit(self, x: int) -> frozenset[int]:
        return frozenset(_orbit_list(self.gens, x))

    def orbits(self) -> list[list[int]]:
        labels = orbit_labels(self.gens, self.degree)
        out: dict[int, list[int]] = {}
        for p, l in enumerate(labels.tolist()):
            out.setdefault(l, []).append(p)
        return list(out.values())

    def is_transitive(self, points: Sequence[int] | None = None) -> bool:
        if points is None:
            return len(_orbit_list(self.gens, 0)) == self.degree
        pts = list(points)
        return set(_orbit_list(self.gens, pts[0])) == set(pts)

    def elements(self) -> Iterator[Perm]:
        return self.chain.elements()

    def conjugate(self, g: Perm) -> "PermGroup":
        return PermGroup([s.conj(g) for s in self.gens], degree=self.degree)

    def closure(self, extra: Iterable[Perm]) -> "PermGroup":
        extra = [e for e in extra if e not in self]
        if not extra:
            return self
        return PermGroup(list(self.chain.strong) + extra, degree=self.degree)

    def canonical_coset_rep(self, h: Perm) -> Perm:
        return self.chain.canonical_coset_rep(h)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<PermGroup{label} degree={self.degree} gens={len(self.gens)}>"


def _orbit_list(gens: Sequence[Perm], x: int) -> list[int]:
    seen = {x}
    out = [x]
    for y in out:
        for g in gens:
            z = int(g.a[y])
            if z not in seen:
                seen.add(z)
                out.append(z)
    return out


def orbit_labels(gens: Sequence[Perm], degree: int) -> np.ndarray:
    """Label each point by the smallest point of its orbit."""
    parent = np.arange(degree)

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for g in gens:
        for x in np.flatnonzero(g.a != np.arange(degree)).tolist():
            a, b = find(x), find(int(g.a[x]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return np.array([find(x) for x in range(degree)])


def orbit(G: PermGroup, x: int) -> frozenset[int]:
    if not 0 <= x < G.degree:
        raise ValueError(f"point {x} outside degree {G.degree}")
    return G.orbit(x)


def build_chain(G: PermGroup) -> StabilizerChain:
    return G.chain


def order(G: PermGroup) -> int:
    return G.order()


def is_member(G: PermGroup, p: Perm) -> bool:
    return G.contains(p)


def stabilizer_from_orbit(
    G: PermGroup,
    start: Hashable,
    act: Callable[[Hashable, int], Hashable],
    max_orbit: int | None = None,
) -> tuple[PermGroup, list]:
    """Stabilizer of ``start`` together with its orbit.

    ``act(p, i)`` is the image of ``p`` under the ``i``-th generator of ``G``.
    The action may come from another representation of the same group, as long
    as generators correspond by index. Schreier generators are added in a fixed order until the stabilizer reaches
    the order forced by the orbit-stabilizer theorem, so the result is exact.
    """
    parent: dict = {start: None}
    points = [start]
    for p in points:
        for gi in range(len(G.gens)):
            q = act(p, gi)
            if q not in parent:
                parent[q] = (p, gi)
                points.append(q)
                if max_orbit is not None and len(points) > max_orbit:
                    raise OrbitTooLarge(len(points))
    target, rem = divmod(G.order(), len(points))
    if rem:
        raise ArithmeticError("orbit length does not divide the group order")

    reps: dict = {start: G.identity}

    def rep(p):
        path = []
        while p not in reps:
            prev, gi = parent[p]
            path.append((p, gi))
            p = prev
        u = reps[p]
        for q, gi in reversed(path):
            u = u * G.gens[gi]
            reps[q] = u
        return u

    H = PermGroup.trivial(G.degree)
    if target == 1:
        return H, points
    for p in points:
        up = rep(p)
        for gi, g in enumerate(G.gens):
            q = act(p, gi)
            s = up * g * ~rep(q)
            if s.is_identity() or s in H:
                continue
            H = PermGroup(list(H.chain.strong) + [s], degree=G.degree)
            if H.order() == target:
                return H, points
    raise AssertionError("Schreier generators failed to reach the stabilizer order")


class OrbitTooLarge(RuntimeError):
    """An orbit exceeded its budget."""


def point_stabilizer(G: PermGroup, x: int) -> PermGroup:
    gens = G.gens
    H, _ = stabilizer_from_orbit(G, x, lambda p, i: int(gens[i].a[p]))
    return H


def set_stabilizer(G: PermGroup, S: Iterable[int]) -> PermGroup:
    """Setwise stabilizer by backtrack over a chain whose base starts with ``S``.

    Each branch fixes the images of the base prefix; a branch is pruned as soon
    as one prefix point is sent outside ``S``.
    """
    pts = sorted(set(S))
    if not pts or len(pts) == G.degree or G.is_trivial():
        return G
    in_set = np.zeros(G.degree, dtype=bool)
    in_set[pts] = True
    if all(bool(in_set[g.a[pts]].all()) for g in G.gens):
        return G
    chain = StabilizerChain(G.degree, G.gens, base_prefix=pts)
    s = len(pts)
    H = PermGroup(chain.level_generators(s), degree=G.degree)
    # an element is h * u_{s-1} ... u_0 with h fixing the prefix; b_l goes to y^(u_{l-1} ... u_0)
    def search(l: int, prefix: Perm) -> None:
        nonlocal H
        if l == s:
            if prefix not in H:
                H = H.closure([prefix])
            return
        lvl = chain.levels[l]
        for y, u in lvl.trans.items():
            if in_set[prefix.a[y]]:
                search(l + 1, u * prefix)

    search(0, G.identity)
    return H


def intersect(A: PermGroup, B: PermGroup) -> PermGroup:
    """``A ∩ B`` as the stabilizer of the trivial coset in the action of the smaller group on cosets of the other."""
    if A.degree != B.degree:
        raise ValueError("degree mismatch")
    if A.is_trivial() or B.is_trivial():
        return PermGroup.trivial(A.degree)
    if A.order() > B.order():
        A, B = B, A
    if A.is_subgroup_of(B):
        return A
    chain = B.chain
    start = chain.canonical_coset_rep(A.identity)
    gens = A.gens
    H, _ = stabilizer_from_orbit(A, start, lambda c, i: chain.canonical_coset_rep(c * gens[i]))
    return H


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    if not N.is_subgroup_of(G):
        raise ValueError("N is not a subgroup of G")
    return all(n.conj(g) in N for g in G.gens for n in N.gens)


def normal_closure(G: PermGroup, S: Iterable[Perm] | PermGroup) -> PermGroup:
    gens = list(S.gens) if isinstance(S, PermGroup) else list(S)
    H = PermGroup(gens, degree=G.degree)
    queue = list(H.gens)
    for h in queue:
        for g in G.gens:
            c = h.conj(g)
            if c not in H:
                H = H.closure([c])
                queue.append(c)
    return H


def core(M: PermGroup, K: PermGroup) -> PermGroup:
    """Largest normal subgroup of ``M`` inside ``K``, by intersecting conjugates until stable."""
    if not K.is_subgroup_of(M):
        raise ValueError("K is not a subgroup of M")
    C = K
    while True:
        changed = False
        for g in M.gens:
            D = C.conjugate(g)
            if not C.is_subgroup_of(D):
                C = intersect(C, D)
                changed = True
        if not changed:
            return C


def subgroup_fingerprint(H: PermGroup) -> tuple:
    labels = orbit_labels(H.gens, H.degree)
    return (H.order(), labels.tobytes())


@dataclass
class ConjugacyResult:
    conjugate: bool | None
    element: Perm | None
    orbit_size: int
    truncated: bool = False


def conjugate_subgroup_search(
    H: PermGroup, A: PermGroup, B: PermGroup, max_orbit: int = 100_000
) -> ConjugacyResult:
    """Find ``h`` in ``H`` with ``A^h = B`` by exploring the conjugation orbit of ``A``."""
    if A.order() != B.order():
        return ConjugacyResult(False, None, 0)
    target = subgroup_fingerprint(B)
    buckets: dict[tuple, list[tuple[PermGroup, Perm]]] = {}
    start = (A, H.identity)
    buckets.setdefault(subgroup_fingerprint(A), []).append(start)
    queue = [start]
    count = 1
    for X, x in queue:
        fp = subgroup_fingerprint(X)
        if fp == target and X.same_as(B):
            return ConjugacyResult(True, x, count)
        for g in H.gens:
            Y = X.conjugate(g)
            fy = subgroup_fingerprint(Y)
            bucket = buckets.setdefault(fy, [])
            if any(Y.same_as(Z) for Z, _ in bucket):
                continue
            entry = (Y, x * g)
            bucket.append(entry)
            queue.append(entry)
            count += 1
            if count > max_orbit:
                return ConjugacyResult(None, None, count, truncated=True)
    return ConjugacyResult(False, None, count)


def generate_elements_bruteforce(G: PermGroup, limit: int = 10**5) -> set[Perm]:
    """Closure under generator multiplication, independent of the chain."""
    elems = {G.identity}
    queue = [G.identity]
    for x in queue:
        for g in G.gens:
            y = x * g
            if y not in elems:
                elems.add(y)
                queue.append(y)
                if len(elems) > limit:
                    raise OrbitTooLarge(len(elems))
    return elems
