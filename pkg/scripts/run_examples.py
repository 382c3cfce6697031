"""Build every bundled example, classify its natural decomposition and analyze the embedding.

Usage: python3 scripts/run_examples.py [--skip-large] [--json]
"""

from __future__ import annotations

import argparse
import json
import time

from cartdec import catalog
from cartdec.cartesian import classify, enumerate_invariant_decompositions, natural_decomposition
from cartdec.constructions import (
    analyze_embedding,
    build_case_a,
    build_compound_diagonal,
    build_ex1s,
    build_ex2,
    build_ex3,
    build_simple_diagonal,
    build_simple_plinth,
    verify_sdcor,
)
from cartdec.group import PermGroup
from cartdec.perm import Perm


def s2() -> PermGroup:
    return PermGroup([Perm([1, 0])], degree=2)


def toy_ex3():
    def tr(v):
        return Perm([x ^ v for x in range(8)])

    T = PermGroup([tr(1), tr(2), tr(4)], degree=8)
    parts = [PermGroup([tr(a), tr(b)], degree=8) for a, b in ((1, 2), (2, 4), (1, 4))]
    return build_ex3(T, *parts, trusted=True)


def examples(skip_large: bool):
    cls = catalog.load("a6_a5_classes")
    pgl = catalog.load("a6_pgl29")
    a5 = catalog.load("a5_natural")["G"]
    a6 = catalog.load("a6_natural")["G"]
    yield "ex2", lambda: build_ex2(cls["T"], cls["A"], cls["B"], "A6")
    if not skip_large:
        yield "ex1s", lambda: build_ex1s(pgl["T"], pgl["A"], pgl["B"], pgl["theta"], "A6")
    yield "ex3 (Z2^3 toy, trusted plinth)", toy_ex3
    yield "simple plinth A6", lambda: build_simple_plinth(pgl["T"], pgl["A"], pgl["B"], pgl["theta"], "A6")
    yield "case a: A5 wr S2 in A6 wr S2", lambda: build_case_a(cls["B"], a6, s2(), "A5", "A6")
    yield "compound diagonal A5, S2", lambda: build_compound_diagonal(a5, s2(), "A5")


def _describe(E, lab) -> str:
    ell = f"l={E.ell}" if E is not None else "lazy"
    if lab.label is not None:
        return f"{lab.label} ({ell})"
    return f"intransitive ({ell})" if lab.evidence.get("transitive") is False else f"truncated ({ell})"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--skip-large", action="store_true", help="leave out the lazy ex1s instance")
    ap.add_argument("--json", action="store_true", help="print one JSON object per example")
    args = ap.parse_args()
    rows = []
    for name, make in examples(args.skip_large):
        t0 = time.perf_counter()
        inst = make()
        S = inst.setting
        label = classify(natural_decomposition(S), S).label
        rep = analyze_embedding(inst)
        row = {
            "example": name,
            "omega": S.layout.omega_size,
            "G_order": S.G_D.order(),
            "label": label,
            "case": rep.case,
            "s": rep.s,
            "pair_match": rep.pair_match,
            "seconds": round(time.perf_counter() - t0, 2),
        }
        # a trusted toy plinth is abelian, with far too many block systems to list
        if S.layout.materialized and not S.trusted:
            res = enumerate_invariant_decompositions(S)
            row["invariant_decompositions"] = sorted(_describe(E, lab) for E, _, lab in res.items)
        rows.append(row)
    t0 = time.perf_counter()
    sd, _ = build_simple_diagonal(catalog.load("a5_natural")["G"])
    cor = verify_sdcor(sd)
    rows.append({"example": "simple diagonal A5 on 60 points", "omega": 60, "found": cor["found"],
                 "conclusive": cor["conclusive"], "seconds": round(time.perf_counter() - t0, 2)})
    if args.json:
        for r in rows:
            print(json.dumps(r, sort_keys=True))
        return
    for r in rows:
        rest = ", ".join(f"{k}={v}" for k, v in r.items() if k != "example")
        print(f"{r['example']}: {rest}")


if __name__ == "__main__":
    main()
