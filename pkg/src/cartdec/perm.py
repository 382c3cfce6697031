"""Permutations on {0, ..., n-1} acting on the right.

``x * (p * q) == (x * p) * q``; in array terms ``(p * q).a == q.a[p.a]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

_IDENTITY_CACHE: dict[int, np.ndarray] = {}


def _arange(n: int) -> np.ndarray:
    a = _IDENTITY_CACHE.get(n)
    if a is None:
        a = np.arange(n, dtype=np.int32)
        a.setflags(write=False)
        _IDENTITY_CACHE[n] = a
    return a


class Perm:
    """An immutable permutation stored as its image table."""

    __slots__ = ("a", "_hash")

    def __init__(self, images: Sequence[int] | np.ndarray, check: bool = True):
        a = np.asarray(images, dtype=np.int32)
        if check:
            if a.ndim != 1 or a.size == 0:
                raise ValueError("a permutation needs degree >= 1")
            seen = np.zeros(a.size, dtype=bool)
            if a.min() < 0 or a.max() >= a.size:
                raise ValueError(f"point out of range in {a.tolist()}")
            seen[a] = True
            if not seen.all():
                raise ValueError(f"not a bijection: {a.tolist()}")
        if a.flags.writeable:
            if a is images:
                a = a.copy()
            a.setflags(write=False)
        self.a = a
        self._hash = None

    @classmethod
    def _raw(cls, a: np.ndarray) -> "Perm":
        a.setflags(write=False)
        p = cls.__new__(cls)
        p.a = a
        p._hash = None
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(_arange(n), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Perm":
        a = np.arange(n, dtype=np.int32)
        for cyc in cycles:
            cyc = list(cyc)
            if len(set(cyc)) != len(cyc):
                raise ValueError(f"repeated point in cycle {cyc}")
            for i, x in enumerate(cyc):
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls(a)

    @property
    def degree(self) -> int:
        return int(self.a.size)

    def __call__(self, x: int) -> int:
        return int(self.a[x])

    def __mul__(self, other: "Perm") -> "Perm":
        if self.a.size != other.a.size:
            raise ValueError(f"degree mismatch: {self.a.size} vs {other.a.size}")
        return Perm._raw(other.a[self.a])

    def __invert__(self) -> "Perm":
        inv = np.empty_like(self.a)
        inv[self.a] = _arange(self.a.size)
        return Perm._raw(inv)

    inverse = __invert__

    def __pow__(self, e: int) -> "Perm":
        if e < 0:
            return (~self) ** (-e)
        result = Perm.identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self, g: "Perm") -> "Perm":
        """``self^g = g^-1 * self * g``."""
        inv = np.empty_like(g.a)
        inv[g.a] = _arange(g.a.size)
        return Perm._raw(g.a[self.a[inv]])

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.a, _arange(self.a.size)))

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.a != _arange(self.a.size))

    def smallest_moved_point(self) -> int | None:
        moved = self.support()
        return int(moved[0]) if moved.size else None

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def parity(self) -> int:
        """0 for even, 1 for odd."""
        return sum(len(c) - 1 for c in self.cycles()) % 2

    def cycles(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.a.size, dtype=bool)
        out = []
        a = self.a
        for start in self.support().tolist():
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(a[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(a[x])
            out.append(tuple(cyc))
        return out

    def key(self) -> bytes:
        return self.a.tobytes()

    def tolist(self) -> list[int]:
        return self.a.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.a.size == other.a.size and bool(np.array_equal(self.a, other.a))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.a.tobytes())
        return self._hash

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Perm<{self.degree}>{body}"


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` then ``q``."""
    return p * q


def concat(parts: Sequence[np.ndarray | Sequence[int]]) -> Perm:
    """Join permutations of consecutive point ranges into one permutation."""
    out = []
    offset = 0
    for part in parts:
        arr = np.asarray(part, dtype=np.int32)
        out.append(arr + offset)
        offset += arr.size
    return Perm(np.concatenate(out))


def restrict(p: Perm, points: Sequence[int] | np.ndarray) -> Perm:
    """Keep ``p`` on ``points`` (assumed ``p``-invariant) and fix everything else."""
    pts = np.asarray(points, dtype=np.intp)
    a = np.arange(p.degree, dtype=np.int32)
    a[pts] = p.a[pts]
    return Perm._raw(a)
