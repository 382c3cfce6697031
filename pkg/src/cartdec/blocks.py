"""Set partitions and block systems of transitive groups."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .group import PermGroup, point_stabilizer


class Partition:
    """A partition of ``{0, ..., n-1}`` with blocks ordered by their least element."""

    __slots__ = ("n", "labels", "_blocks")

    def __init__(self, n: int, labels: Sequence[int] | np.ndarray):
        lab = np.asarray(labels, dtype=np.int64)
        if lab.shape != (n,):
            raise ValueError("one label per point required")
        _, first, inv = np.unique(lab, return_index=True, return_inverse=True)
        # renumber blocks by the least point they contain
        rank = np.argsort(np.argsort(first))
        self.n = n
        self.labels = rank[inv].astype(np.int64)
        self.labels.setflags(write=False)
        self._blocks = None

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        lab = np.full(n, -1, dtype=np.int64)
        for i, b in enumerate(blocks):
            b = list(b)
            if not b or (lab[b] != -1).any():
                raise ValueError("blocks must be nonempty and disjoint")
            lab[b] = i
        if (lab == -1).any():
            raise ValueError("blocks do not cover every point")
        return cls(n, lab)

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        if self._blocks is None:
            out: list[list[int]] = [[] for _ in range(self.num_blocks)]
            for p, l in enumerate(self.labels.tolist()):
                out[l].append(p)
            self._blocks = [tuple(b) for b in out]
        return self._blocks

    @property
    def num_blocks(self) -> int:
        return int(self.labels.max()) + 1 if self.n else 0

    def block_of(self, x: int) -> int:
        return int(self.labels[x])

    def block_size(self) -> int | None:
        """Common block size, or None when sizes differ."""
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def is_trivial(self) -> bool:
        return self.num_blocks in (1, self.n)

    def is_invariant(self, G: PermGroup) -> bool:
        lab = self.labels
        for g in G.gens:
            img = np.empty_like(lab)
            img[g.a] = lab
            # g maps blocks to blocks iff the relabelled partition equals the original
            pairs = np.unique(np.stack([lab, img]), axis=1)
            if pairs.shape[1] != self.num_blocks:
                return False
        return True

    def block_action(self, g) -> list[int]:
        """Image block index of each block under ``g`` (assumes invariance)."""
        return [int(self.labels[g.a[b[0]]]) for b in self.blocks]

    def join(self, other: "Partition") -> "Partition":
        uf = _UnionFind(self.n)
        for lab in (self.labels, other.labels):
            first: dict[int, int] = {}
            for p, l in enumerate(lab.tolist()):
                if l in first:
                    uf.union(first[l], p)
                else:
                    first[l] = p
        return Partition(self.n, uf.labels())

    def meet(self, other: "Partition") -> "Partition":
        combined = self.labels * (other.num_blocks + 1) + other.labels
        return Partition(self.n, combined)

    def refines(self, other: "Partition") -> bool:
        return self.meet(other) == self

    def key(self) -> tuple:
        return (self.num_blocks, self.labels.tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.labels, other.labels))

    def __hash__(self) -> int:
        return hash((self.n, self.labels.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 40:
            return "Partition(" + "|".join(" ".join(map(str, b)) for b in self.blocks) + ")"
        return f"Partition(n={self.n}, blocks={self.num_blocks})"


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def labels(self) -> list[int]:
        return [self.find(x) for x in range(len(self.parent))]


def block_system_from_seed(G: PermGroup, x: int, y: int) -> Partition:
    """Finest block system of the transitive group ``G`` with ``x`` and ``y`` in one block."""
    if not G.is_transitive():
        raise ValueError("block systems are only defined for transitive groups")
    return minimal_invariant_partition(G, [x, y])


def minimal_invariant_partition(G: PermGroup, seed: Iterable[int]) -> Partition:
    """Finest ``G``-invariant partition with all of ``seed`` in one block (Atkinson's closure)."""
    pts = sorted(set(seed))
    if not pts:
        raise ValueError("empty seed")
    uf = _UnionFind(G.degree)
    pending: list[tuple[int, int]] = []
    for p in pts[1:]:
        if uf.union(pts[0], p):
            pending.append((pts[0], p))
    gens = [g.a for g in G.gens]
    while pending:
        a, b = pending.pop()
        for g in gens:
            x, y = int(g[a]), int(g[b])
            rx, ry = uf.find(x), uf.find(y)
            if rx != ry:
                uf.union(rx, ry)
                pending.append((rx, ry))
    return Partition(G.degree, uf.labels())


def all_block_systems(G: PermGroup, budget: int | None = None) -> tuple[list[Partition], bool]:
    """All block systems of a transitive group, including the two trivial ones.

    Minimal systems come from seeds ``{0, y}`` with ``y`` running over
    representatives of the orbits of the stabilizer of 0; every other system
    is a join of those. Returns the systems sorted by (number of blocks,
    labels) and a flag that is set when ``budget`` cut the search short.
    """
    n = G.degree
    if not G.is_transitive():
        raise ValueError("block systems are only defined for transitive groups")
    if budget is not None and budget <= 0:
        return [], True
    found: dict[Partition, None] = {}
    truncated = False

    def add(P: Partition) -> bool:
        nonlocal truncated
        if P in found:
            return False
        if budget is not None and len(found) >= budget:
            truncated = True
            return False
        found[P] = None
        return True

    add(Partition(n, np.arange(n)))
    add(Partition(n, np.zeros(n, dtype=np.int64)))
    if n > 1:
        stab = point_stabilizer(G, 0)
        seen = {0}
        minimal: list[Partition] = []
        for y in range(1, n):
            if y in seen:
                continue
            orb = stab.orbit(y)
            seen |= orb
            P = minimal_invariant_partition(G, [0, y])
            if P not in minimal:
                minimal.append(P)
            add(P)
        frontier = list(found)
        while frontier and not truncated:
            new = []
            for P in frontier:
                for Q in minimal:
                    J = P.join(Q)
                    if add(J):
                        new.append(J)
            frontier = new
    return sorted(found, key=Partition.key), truncated
