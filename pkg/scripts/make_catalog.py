"""Regenerate the bundled catalog of small groups and subgroups.

Every entry is derived from first principles here (explicit cycles or the
projective line over GF(9)) and re-verified when the package loads it.

    python3 scripts/make_catalog.py [--out PATH]
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

from cartdec.group import PermGroup, conjugate_subgroup_search, intersect, point_stabilizer
from cartdec.perm import Perm

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "cartdec" / "data" / "catalog.json"


def cyc(n, *cycles):
    return Perm.from_cycles(n, cycles).tolist()


# GF(9) = GF(3)[i] with i^2 = -1; the element a + b i is encoded as a + 3b.
def f9_add(x, y):
    return (x % 3 + y % 3) % 3 + 3 * ((x // 3 + y // 3) % 3)


def f9_mul(x, y):
    a, b, c, d = x % 3, x // 3, y % 3, y // 3
    return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)


def f9_inv(x):
    return next(y for y in range(1, 9) if f9_mul(x, y) == 1)


INF = 9


def mobius(a, b, c, d):
    """z -> (a z + b) / (c z + d) on the projective line, infinity encoded as 9."""
    images = []
    for z in range(10):
        if z == INF:
            num, den = a, c
        else:
            num = f9_add(f9_mul(a, z), b)
            den = f9_add(f9_mul(c, z), d)
        images.append(INF if den == 0 else f9_mul(num, f9_inv(den)))
    return images


def primitive_element():
    for w in range(1, 9):
        x, k = w, 1
        while x != 1:
            x, k = f9_mul(x, w), k + 1
        if k == 8:
            return w
    raise AssertionError


def find_a5(T: PermGroup) -> PermGroup:
    """First subgroup of order 60 generated by an involution and an element of order 3."""
    elems = sorted(T.elements(), key=lambda p: p.tolist())
    twos = [x for x in elems if x.order() == 2]
    threes = [x for x in elems if x.order() == 3]
    for a, b in itertools.product(twos, threes):
        H = PermGroup([a, b])
        if H.order() == 60:
            return H
    raise AssertionError("no A5 found")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    args = ap.parse_args()

    a5 = [cyc(5, (0, 1, 2)), cyc(5, (0, 1, 2, 3, 4))]
    a6 = [cyc(6, (0, 1, 2)), cyc(6, (1, 2, 3, 4, 5))]
    s6 = [cyc(6, (0, 1)), cyc(6, (0, 1, 2, 3, 4, 5))]
    A6 = PermGroup([Perm(g) for g in a6])
    A = point_stabilizer(A6, 5)
    # PSL(2,5) on the projective line of GF(5), infinity = 5
    B = PermGroup([Perm(cyc(6, (0, 1, 2, 3, 4))), Perm(cyc(6, (0, 5), (1, 4)))])
    assert A.order() == B.order() == 60 and intersect(A, B).order() == 10
    assert conjugate_subgroup_search(A6, A, B).conjugate is False

    w = primitive_element()
    one = 1
    T10 = PermGroup(
        [
            Perm(mobius(one, one, 0, one)),
            Perm(mobius(f9_mul(w, w), 0, 0, one)),
            Perm(mobius(0, 2, one, 0)),  # z -> -1/z
        ]
    )
    assert T10.order() == 360
    theta = Perm(mobius(0, w, one, 0))  # z -> w/z, determinant -w is a non-square
    assert theta.order() == 2 and theta not in T10
    assert all(g.conj(theta) in T10 for g in T10.gens)
    A10 = find_a5(T10)
    B10 = A10.conjugate(theta)
    assert intersect(A10, B10).order() == 10
    assert conjugate_subgroup_search(T10, A10, B10).conjugate is False

    def gens(H):
        return [g.tolist() for g in H.gens]

    catalog = {
        "format": "cartdec-catalog/1",
        "entries": {
            "a5_natural": {
                "kind": "group",
                "name": "A5",
                "degree": 5,
                "points": "0-based",
                "generators": a5,
                "order": 60,
                "provenance": "alternating group generated by (0 1 2) and (0 1 2 3 4)",
            },
            "a6_natural": {
                "kind": "group",
                "name": "A6",
                "degree": 6,
                "points": "0-based",
                "generators": a6,
                "order": 360,
                "provenance": "alternating group generated by (0 1 2) and (1 2 3 4 5)",
            },
            "s6_natural": {
                "kind": "group",
                "name": "S6",
                "degree": 6,
                "points": "0-based",
                "generators": s6,
                "order": 720,
                "provenance": "symmetric group generated by (0 1) and (0 1 2 3 4 5)",
            },
            "a6_a5_classes": {
                "kind": "subgroups",
                "name": "A5 classes in A6",
                "degree": 6,
                "points": "0-based",
                "groups": {"T": a6, "A": gens(A), "B": gens(B)},
                "orders": {"T": 360, "A": 60, "B": 60, "A&B": 10},
                "tags": {"T": "A6", "A": "A5", "B": "A5"},
                "provenance": "A is the stabilizer of point 5; B is PSL(2,5) on the projective line of GF(5) "
                "(infinity = 5). They are not conjugate in A6 and A6 = AB. No permutation of 6 points "
                "swaps the two classes, so the swapping automorphism is bundled in a6_pgl29.",
            },
            "a6_pgl29": {
                "kind": "subgroups",
                "name": "A6 as PSL(2,9) with an outer involution",
                "degree": 10,
                "points": "0-based",
                "groups": {"T": gens(T10), "A": gens(A10), "B": gens(B10)},
                "theta": theta.tolist(),
                "orders": {"T": 360, "A": 60, "B": 60, "A&B": 10},
                "tags": {"T": "A6", "A": "A5", "B": "A5"},
                "provenance": "projective line over GF(9)=GF(3)[i], a+bi encoded as a+3b, infinity = 9. "
                "T is generated by z+1, w^2 z and -1/z for a primitive w; theta is z -> w/z, in PGL(2,9) "
                "but not PSL(2,9). A is the first order-60 subgroup generated by an involution and an "
                "element of order 3 in lexicographic search; B = A^theta.",
            },
        },
    }
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(catalog, indent=1, sort_keys=True) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
