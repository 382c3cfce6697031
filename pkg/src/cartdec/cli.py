"""Command line interface.

Exit codes: 0 success, 1 validation or invariant failure, 2 usage error,
3 a search hit its budget and the results are partial.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from . import catalog
from .cartesian import (
    CartesianDecomposition,
    ClassifyError,
    DecompositionError,
    TheoryViolation,
    classify,
    decomposition_action,
    enumerate_invariant_decompositions,
    natural_decomposition,
    validate_decomposition,
)
from .config import Budget
from .constructions import (
    BuildError,
    EmbeddingInstance,
    analyze_embedding,
    build_case_a,
    build_compound_diagonal,
    build_ex1s,
    build_ex2,
    build_ex3,
    build_simple_diagonal,
    build_simple_plinth,
    verify_sdcor,
    Component,
)
from .group import PermGroup
from .io import (
    FormatError,
    GroupFile,
    Report,
    decomposition_to_dict,
    emit_instance,
    emit_report,
    input_hash,
    parse_decomposition,
    parse_group_file,
    parse_instance,
    setting_from_files,
)
from .perm import Perm
from .strips import StripError

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_TRUNCATED = 0, 1, 2, 3

EXAMPLES = ("ex2", "ex3", "ex1s", "case-a", "compound-diagonal", "simple-diagonal", "simple-plinth")

DEFAULTS = {
    "ex2": {"group": "catalog:a6_a5_classes.T", "A": "catalog:a6_a5_classes.A", "B": "catalog:a6_a5_classes.B"},
    "ex1s": {
        "group": "catalog:a6_pgl29.T",
        "A": "catalog:a6_pgl29.A",
        "B": "catalog:a6_pgl29.B",
        "theta": "catalog:a6_pgl29.theta",
    },
    "simple-plinth": {
        "group": "catalog:a6_pgl29.T",
        "A": "catalog:a6_pgl29.A",
        "B": "catalog:a6_pgl29.B",
        "theta": "catalog:a6_pgl29.theta",
    },
    "case-a": {"group": "catalog:a6_a5_classes.B", "U": "catalog:a6_natural", "top": "sym:2"},
    "compound-diagonal": {"group": "catalog:a5_natural", "top": "sym:2"},
    "simple-diagonal": {"group": "catalog:a5_natural"},
}


class UsageError(Exception):
    pass


class Truncated(Exception):
    def __init__(self, report: Report):
        self.report = report


# --- argument resolution ---------------------------------------------------------


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _small_group(spec: str, degree: int) -> PermGroup:
    kind, _, n = spec.partition(":")
    if not n.isdigit() or int(n) < 1:
        raise UsageError(f"bad group shorthand {spec!r}")
    n_ = int(n)
    if kind == "sym":
        gens = [Perm.from_cycles(n_, [list(range(n_))])] + ([Perm.from_cycles(n_, [[0, 1]])] if n_ > 2 else [])
    else:
        gens = [Perm.from_cycles(n_, [list(range(n_))])]
    return PermGroup(gens, degree=n_)


def resolve_group(ref: str) -> PermGroup:
    """A catalog reference, ``sym:N`` / ``cyclic:N``, or a group file path."""
    if ref.startswith("catalog:"):
        g = catalog.resolve(ref)
        if not isinstance(g, PermGroup):
            raise UsageError(f"{ref} is not a group")
        return g
    if ref.startswith(("sym:", "cyclic:")):
        return _small_group(ref, 0)
    return parse_group_file(_read(ref)).group()


def resolve_perm(ref: str) -> Perm:
    if ref.startswith("catalog:"):
        p = catalog.resolve(ref)
        if not isinstance(p, Perm):
            raise UsageError(f"{ref} is not a permutation")
        return p
    gf = parse_group_file(_read(ref))
    if len(gf.generators) != 1:
        raise UsageError("a permutation file must hold exactly one generator")
    return gf.generators[0]


def ref_tag(ref: str | None) -> str | None:
    if not ref or not ref.startswith("catalog:"):
        return None
    name, _, role = ref[len("catalog:") :].partition(".")
    e = catalog.entry(name)
    if e["kind"] == "group":
        return e.get("name")
    return catalog.tags(name).get(role or "T")


def _hashes(refs: Sequence[str | None]) -> dict[str, str]:
    out = {}
    for r in refs:
        if r and not r.startswith(("sym:", "cyclic:")):
            out[r] = input_hash(r)
    return out


def _budget(args) -> Budget:
    b = Budget.from_env()
    if getattr(args, "budget", None) is not None:
        b = replace(b, blocks=args.budget)
    return b


def _budget_dict(b: Budget) -> dict:
    return {"materialize": b.materialize, "blocks": b.blocks, "orbit": b.orbit}


def _load_setting(args):
    """Setting from ``--instance`` or ``--group`` with ``--plinth``; also returns the input refs."""
    if args.instance:
        inst = parse_instance(_read(args.instance))
        S = inst.setting
        if args.base_point is not None:
            S = _rebase(S, args.base_point)
        return S, inst, [args.instance]
    if not (args.group and args.plinth):
        raise UsageError("give --instance, or both --group and --plinth")
    G = parse_group_file(_read(args.group))
    M = parse_group_file(_read(args.plinth))
    base = args.base_point if args.base_point is not None else 0
    S = setting_from_files(G, M, base, trusted=args.trusted)
    return S, None, [args.group, args.plinth]


def _rebase(S, point: int):
    from .cartesian import Setting

    if not S.layout.materialized:
        raise UsageError("--base-point needs a materialized Ω")
    if not 0 <= point < S.layout.omega_size:
        raise UsageError("base point out of range")
    out = Setting.__new__(Setting)
    out.__dict__.update(S.__dict__)
    out.omega = point
    out._G_omega = None
    out._M_omega = None
    return out


# --- commands ----------------------------------------------------------------------


def cmd_validate(args) -> Report:
    G = parse_group_file(_read(args.group))
    grp = G.group()
    res: dict = {"degree": G.degree, "generators": len(G.generators), "order": grp.order()}
    refs = [args.group]
    ok = True
    if G.factors is not None:
        res["factor_domains"] = [len(f) for f in G.factors]
    omega = G.omega
    if omega is None and G.factors is not None and not G.coords:
        d = sum(len(f) for f in G.factors)
        if G.degree > d:
            omega = (d, G.degree - d)
    if omega is None and G.factors is None and not G.coords:
        omega = (0, G.degree)
    if omega is not None:
        s, n = omega
        imgs = [g.a[s : s + n] - s for g in G.generators]
        if all(i.min() >= 0 and i.max() < n for i in imgs):
            GO = PermGroup([Perm(i) for i in imgs], degree=n)
            res["transitive_on_omega"] = GO.is_transitive()
        else:
            res["omega_invariant"] = False
            ok = False
        res["omega"] = [s, n]
    if args.plinth:
        M = parse_group_file(_read(args.plinth))
        refs.append(args.plinth)
        S = setting_from_files(G, M, trusted=args.trusted)
        P = S.plinth()
        res["plinth"] = P.summary()
        ok &= bool(P.ok)
    if args.decomposition:
        E = parse_decomposition(_read(args.decomposition))
        refs.append(args.decomposition)
        valid = validate_decomposition(E)
        act = decomposition_action(E, G.generators, omega) if valid else None
        res["decomposition"] = {
            "ell": E.ell,
            "valid": valid,
            "G_invariant": act is not None,
            "transitive": bool(act is not None and (E.ell <= 1 or PermGroup([Perm(p) for p in act], degree=E.ell).is_transitive())),
        }
        ok &= valid and act is not None
    res["ok"] = ok
    rep = Report(_echo(args), _hashes(refs), res)
    if not ok:
        raise Invalid(rep)
    return rep


class Invalid(Exception):
    def __init__(self, report: Report):
        self.report = report


def _label_dict(lab) -> dict:
    return {"label": lab.label, "truncated": lab.truncated, "evidence": lab.evidence}


def _decomposition(args, S) -> tuple[CartesianDecomposition, list[str]]:
    if args.decomposition:
        return parse_decomposition(_read(args.decomposition)), [args.decomposition]
    return natural_decomposition(S), []


def cmd_classify(args) -> Report:
    S, _, refs = _load_setting(args)
    E, more = _decomposition(args, S)
    b = _budget(args)
    lab = classify(E, S, b)
    rep = Report(_echo(args), _hashes(refs + more), _label_dict(lab), _budget_dict(b), lab.truncated)
    if lab.truncated:
        raise Truncated(rep)
    return rep


def cmd_enumerate(args) -> Report:
    S, _, refs = _load_setting(args)
    b = _budget(args)
    res = enumerate_invariant_decompositions(S, b)
    items = []
    for E, sysm, lab in res.items:
        items.append(
            {
                "ell": sysm.ell,
                "label": lab.label,
                "system_orders": [K.order() for K in sysm.K],
                "decomposition": decomposition_to_dict(E) if E is not None else None,
            }
        )
    out = {"count": len(items), "decompositions": items, "block_systems": res.block_systems}
    rep = Report(_echo(args), _hashes(refs), out, _budget_dict(b), res.truncated)
    if res.truncated:
        raise Truncated(rep)
    return rep


def cmd_build(args) -> Report:
    ex = args.example
    refs = dict(DEFAULTS.get(ex, {}))
    for key in ("group", "A", "B", "C", "theta", "U", "top"):
        v = getattr(args, key)
        if v is not None:
            refs[key] = v

    def need(key: str) -> str:
        if key not in refs:
            raise UsageError(f"--{key} is required for {ex}")
        return refs[key]

    T = resolve_group(need("group"))
    tag_T = ref_tag(refs.get("group"))
    if ex == "ex2":
        inst = build_ex2(T, resolve_group(need("A")), resolve_group(need("B")), tag_T)
    elif ex == "ex3":
        inst = build_ex3(T, resolve_group(need("A")), resolve_group(need("B")), resolve_group(need("C")), trusted=args.trusted)
    elif ex == "ex1s":
        inst = build_ex1s(T, resolve_group(need("A")), resolve_group(need("B")), resolve_perm(need("theta")), tag_T)
    elif ex == "simple-plinth":
        inst = build_simple_plinth(T, resolve_group(need("A")), resolve_group(need("B")), resolve_perm(need("theta")), tag_T)
    elif ex == "case-a":
        inst = build_case_a(T, resolve_group(need("U")), resolve_group(need("top")), tag_T, ref_tag(refs.get("U")))
    elif ex == "compound-diagonal":
        inst = build_compound_diagonal(T, resolve_group(need("top")), tag_T)
    else:
        S, certs = build_simple_diagonal(T)
        n = S.layout.omega_size
        inst = EmbeddingInstance(S, Component("sym", n), Component("sym", n), {"T": tag_T}, certs, "simple-diagonal")
    text = emit_instance(inst)
    results = {"example": ex, "certificates": inst.certificates, "order": inst.setting.G_D.order()}
    if args.output:
        Path(args.output).write_text(text)
        results["output"] = args.output
    else:
        sys.stdout.write(text)
        return None  # the instance itself is the output
    return Report(_echo(args), _hashes(list(refs.values())), results)


def cmd_analyze(args) -> Report:
    inst = parse_instance(_read(args.instance))
    rep = analyze_embedding(inst)
    out = rep.to_dict()
    if inst.example == "simple-diagonal" or (inst.setting.layout.coords == () and inst.setting.layout.materialized):
        out["corollary"] = verify_sdcor(inst.setting, _budget(args))
    return Report(_echo(args), _hashes([args.instance]), out)


def cmd_catalog(args) -> Report:
    if args.action == "list":
        return Report(_echo(args), {}, {"entries": catalog.names()})
    if not args.name:
        raise UsageError("catalog show needs a NAME")
    e = catalog.entry(args.name)
    data = catalog.load(args.name)
    summary = {
        k: ({"degree": v.degree, "generators": len(v.gens), "order": v.order()} if isinstance(v, PermGroup) else v.tolist())
        for k, v in data.items()
    }
    return Report(_echo(args), {f"catalog:{args.name}": input_hash(f"catalog:{args.name}")}, {"entry": e, "verified": summary})


# --- parser ------------------------------------------------------------------------


def _echo(args) -> list[str]:
    return list(args._argv)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cartdec", description="Cartesian decompositions preserved by innately transitive groups.")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    sub = p.add_subparsers(dest="command", required=True)

    def setting_args(sp):
        sp.add_argument("--instance", help="instance file written by build")
        sp.add_argument("--group", help="group file")
        sp.add_argument("--plinth", help="plinth file with factor domains")
        sp.add_argument("--base-point", type=int, help="index of the base point in Ω")
        sp.add_argument("--trusted", action="store_true", help="skip the simplicity checks on the plinth")

    sp = sub.add_parser("validate", help="check a group file and optionally a decomposition")
    sp.add_argument("--group", required=True)
    sp.add_argument("--plinth")
    sp.add_argument("--decomposition")
    sp.add_argument("--trusted", action="store_true")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="class of an invariant decomposition")
    setting_args(sp)
    sp.add_argument("--decomposition", help="decomposition file; defaults to the natural one")
    sp.add_argument("--budget", type=int)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("enumerate", help="all invariant decompositions")
    setting_args(sp)
    sp.add_argument("--budget", type=int, help="cap on block systems")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("build", help="construct an example embedding")
    sp.add_argument("--example", required=True, choices=EXAMPLES)
    for key in ("group", "A", "B", "C", "theta", "U", "top"):
        sp.add_argument(f"--{key}")
    sp.add_argument("--trusted", action="store_true")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("analyze-embedding", help="case of an embedding into a wreath product")
    sp.add_argument("--instance", required=True)
    sp.add_argument("--budget", type=int)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("catalog", help="bundled group data")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    args._argv = argv
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        rep = args.func(args)
    except UsageError as e:
        print(f"cartdec: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (Truncated, Invalid) as e:
        rep = e.report
        code = EXIT_TRUNCATED if isinstance(e, Truncated) else EXIT_INVALID
    except (FormatError, BuildError, ClassifyError, DecompositionError, TheoryViolation, StripError, catalog.CatalogError, ValueError) as e:
        print(f"cartdec: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVALID
    if rep is None:
        return code
    if args.timing:
        rep.timing = time.perf_counter() - t0
    sys.stdout.write(emit_report(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
