"""Right coset spaces ``[G : K]`` with canonical representatives, computed in batches."""

from __future__ import annotations

import numpy as np

from .group import PermGroup, StabilizerChain
from .perm import Perm


class BatchCanonizer:
    """Canonical right-coset representatives for many elements at once.

    Rows of the input array are image tables. The result row for ``r`` is the
    element of ``K r`` whose base images are lexicographically least, the same
    choice as :meth:`StabilizerChain.canonical_coset_rep`.
    """

    def __init__(self, chain: StabilizerChain):
        self.levels = []
        for lvl in chain.levels:
            orb = lvl.orbit
            U = np.stack([lvl.trans[int(y)].a for y in orb]).astype(np.int32)
            self.levels.append((orb, U))

    def __call__(self, H: np.ndarray) -> np.ndarray:
        H = np.asarray(H, dtype=np.int32)
        if H.ndim == 1:
            return self(H[None, :])[0]
        for orb, U in self.levels:
            idx = np.argmin(H[:, orb], axis=1)
            # row n becomes u_{y_n} * h_n, i.e. h_n[u_{y_n}]
            H = np.take_along_axis(H, U[idx], axis=1)
        return H


class CosetSpace:
    """The right cosets of ``K`` in ``G``, numbered in breadth-first order from ``K`` itself.

    ``action[i]`` is the permutation of coset indices induced by the ``i``-th
    generator of ``G``.
    """

    def __init__(self, G: PermGroup, K: PermGroup, limit: int | None = None):
        if G.degree != K.degree:
            raise ValueError("degree mismatch")
        self.G = G
        self.K = K
        self.canon = BatchCanonizer(K.chain)
        d = G.degree
        start = self.canon(np.arange(d, dtype=np.int32))
        reps = [start]
        index = {start.tobytes(): 0}
        frontier = start[None, :]
        frontier_ids = np.array([0])
        edges: list[list[tuple[np.ndarray, np.ndarray]]] = [[] for _ in G.gens]
        while frontier.shape[0]:
            new_rows = []
            new_ids = []
            for gi, g in enumerate(G.gens):
                imgs = self.canon(g.a[frontier])
                dest = np.empty(len(imgs), dtype=np.int64)
                for n, row in enumerate(imgs):
                    key = row.tobytes()
                    j = index.get(key)
                    if j is None:
                        j = len(reps)
                        index[key] = j
                        reps.append(row)
                        new_rows.append(row)
                        new_ids.append(j)
                        if limit is not None and len(reps) > limit:
                            raise OverflowError("coset space exceeds its budget")
                    dest[n] = j
                edges[gi].append((frontier_ids, dest))
            frontier = np.array(new_rows, dtype=np.int32).reshape(-1, d)
            frontier_ids = np.array(new_ids, dtype=np.int64)
        self.reps = np.array(reps, dtype=np.int32)
        self.index = index
        n = len(reps)
        self.action = []
        for gi in range(len(G.gens)):
            a = np.empty(n, dtype=np.int32)
            for src, dst in edges[gi]:
                a[src] = dst
            self.action.append(a)
        if G.order() != K.order() * n:
            raise ArithmeticError("coset count does not match the index")

    def __len__(self) -> int:
        return len(self.reps)

    def lookup(self, rows: np.ndarray) -> np.ndarray:
        """Coset indices of (already canonical) representative rows."""
        out = np.empty(len(rows), dtype=np.int64)
        for n, row in enumerate(rows):
            j = self.index.get(row.tobytes())
            if j is None:
                raise KeyError("element is not in the enumerated coset space")
            out[n] = j
        return out

    def locate(self, rows: np.ndarray) -> np.ndarray:
        """Coset index of ``K r`` for each row ``r``."""
        return self.lookup(self.canon(rows))

    def image_under(self, g: Perm) -> np.ndarray:
        """Permutation of coset indices induced by right multiplication with ``g`` in ``G``."""
        return self.locate(g.a[self.reps]).astype(np.int32)


def conjugate_rows(R: np.ndarray, c: Perm) -> np.ndarray:
    """Rows of ``c^-1 r c`` for every row ``r``."""
    cinv = (~c).a
    return c.a[R[:, cinv]]
