"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

from . import corpus, kernels
from .errors import ParseError, PermhomError, PermutationError
from .chains import homology_groups
from .io import load
from .lattice import FGAbelianGroup
from .perm import (
    Permutation,
    Perversity,
    d_table,
    is_allowable,
    is_filtration_allowable,
    is_v_shaped,
    permutation_to_perversity,
    perversity_to_permutation,
    reduce,
)
from .perm_homology import perm_homology, require_principal, subdivision_invariance_check
from .stratify import (
    EXPERIMENTAL,
    Filtration,
    check_h_stratification,
    intrinsic_stratification,
    local_perm_homology,
    stratification_report,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


class Report:
    def __init__(self, argv: Sequence[str], primes: bool):
        self.command = list(argv)
        self.primes = primes
        self.lines: list[str] = []
        self.results: dict[str, Any] = {}
        self.warnings: list[str] = []
        self.exit_code = EXIT_OK

    def group(self, g: FGAbelianGroup) -> str:
        return g.render(self.primes)

    def groups_line(self, label: str, groups: Sequence[FGAbelianGroup]) -> str:
        return ", ".join(f"{label}_{i} = {self.group(g)}" for i, g in enumerate(groups))

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "results": self.results,
            "warnings": self.warnings,
            "exit_code": self.exit_code,
        }


def _groups_json(groups: Sequence[FGAbelianGroup], primes: bool) -> list[dict]:
    out = []
    for i, g in enumerate(groups):
        d = g.as_dict()
        d["text"] = g.render(primes)
        d["degree"] = i
        out.append(d)
    return out


def _permutation_arg(args) -> tuple[Permutation, Perversity | None]:
    if args.perm and args.perversity:
        raise ParseError("give either --perm or --perversity, not both")
    if args.perversity:
        p = Perversity.parse(args.perversity)
        return perversity_to_permutation(p), p
    if args.perm:
        return Permutation.parse(args.perm), None
    raise ParseError("a permutation (--perm) or perversity (--perversity) is required")


# ---------------------------------------------------------------------------
# commands


def cmd_homology(args, rep: Report) -> None:
    doc = load(args.source)
    K = doc.complex()
    groups = homology_groups(K, reduced=args.reduced)
    label = "H~" if args.reduced else "H"
    rep.lines.append(rep.groups_line(label, groups))
    rep.results = {
        "name": doc.name,
        "f_vector": K.f_vector(),
        "reduced": args.reduced,
        "groups": _groups_json(groups, rep.primes),
    }


def _allowability_warnings(K, pi: Permutation) -> list[str]:
    ok = is_allowable(pi)
    if ok:
        return []
    occ = intrinsic_stratification(K).occupancy()
    fok = is_filtration_allowable(pi, occ)
    i, j = ok.witness
    if fok:
        return [
            f"permutation {pi} is not allowable (witness i={i} j={j}) but is allowable "
            f"for the intrinsic strata {sorted(occ)}"
        ]
    i, j = fok.witness
    return [
        f"permutation {pi} is not allowable for the intrinsic strata {sorted(occ)} "
        f"(witness i={i} j={j}); results not invariance-protected"
    ]


def cmd_perm_homology(args, rep: Report) -> None:
    doc = load(args.source)
    K = doc.complex()
    require_principal(K)
    pi, p = _permutation_arg(args)
    if pi.n != K.dimension:
        raise PermutationError(f"permutation {pi} has length {pi.n + 1}, expected {K.dimension + 1}")
    rep.warnings.extend(_allowability_warnings(K, pi))
    label = "IH" if p is not None else "H^pi"
    methods = ["image", "chain"] if args.method == "both" else [args.method]
    results = {m: perm_homology(K, pi, m, doc.name) for m in methods}
    first = results[methods[0]]
    rep.lines.append(rep.groups_line(label, first.groups))
    rep.results = {
        "name": doc.name,
        "permutation": list(pi.values),
        "perversity": list(p.values) if p is not None else None,
        "methods": {m: _groups_json(r.groups, rep.primes) for m, r in results.items()},
    }
    if len(methods) == 2:
        agree = results["image"].groups == results["chain"].groups
        rep.results["agree"] = agree
        rep.lines.append(f"methods agree: {'yes' if agree else 'no'}")
        if not agree:
            rep.lines.append(rep.groups_line(label + "(chain)", results["chain"].groups))
            rep.exit_code = EXIT_MISMATCH


def _profile_text(rep: Report, prof) -> str:
    return "(" + ", ".join(rep.group(g) for g in prof) + ")"


def cmd_stratify(args, rep: Report) -> None:
    doc = load(args.source)
    K = doc.complex()
    r = stratification_report(K, strong=args.check_strong, very_strong=args.check_very_strong)
    F = r.filtration
    for j in range(F.n, -1, -1):
        lv = F[j]
        body = " ".join("[" + ",".join(map(str, s)) + "]" for s in lv.maximal_simplices())
        rep.lines.append(f"X_{j}: {body if body else '(empty)'}")
    for j, items in r.profiles.items():
        for prof, count in items:
            rep.lines.append(f"stratum {j}: {count} simplexes with local homology {_profile_text(rep, prof)}")
        verdict = "yes" if r.stratum_manifold[j] else "no"
        rep.lines.append(f"stratum {j} homology {j}-manifold: {verdict}")
    rep.lines.append(f"homology manifold: {'yes' if r.homology_manifold else 'no'}")
    rep.lines.append(f"h-stratification: {'yes' if r.is_h_stratification else 'no'}")
    if r.is_strong is not None:
        rep.lines.append(f"strong: {'yes' if r.is_strong else 'no'}")
    if r.is_very_strong is not None:
        rep.lines.append(f"very strong: {'yes' if r.is_very_strong else 'no'}")
    rep.warnings.extend(r.notes)
    rep.results = {
        "name": doc.name,
        "filtration": F.as_lists(),
        "occupancy": sorted(F.occupancy()),
        "profiles": {
            str(j): [{"profile": [g.as_dict() for g in prof], "count": c} for prof, c in items]
            for j, items in r.profiles.items()
        },
        "stratum_homology_manifold": {str(j): v for j, v in r.stratum_manifold.items()},
        "homology_manifold": r.homology_manifold,
        "h_stratification": r.is_h_stratification,
        "strong": r.is_strong,
        "very_strong": r.is_very_strong,
    }
    if doc.filtration is not None:
        given = Filtration.from_lists(K, doc.filtration)
        ok = check_h_stratification(K, given)
        rep.lines.append(f"document filtration is an h-stratification: {'yes' if ok else 'no'}")
        rep.results["document_filtration_h_stratification"] = ok
    if not r.is_h_stratification:
        rep.exit_code = EXIT_MISMATCH


def cmd_invariance(args, rep: Report) -> None:
    doc = load(args.source)
    K = doc.complex()
    require_principal(K)
    pi, _ = _permutation_arg(args)
    if pi.n != K.dimension:
        raise PermutationError(f"permutation {pi} has length {pi.n + 1}, expected {K.dimension + 1}")
    if not is_allowable(pi):
        occ = intrinsic_stratification(K).occupancy()
        fok = is_filtration_allowable(pi, occ)
        if not fok and not args.force:
            raise PermutationError(
                f"permutation {pi} is not allowable for the intrinsic strata {sorted(occ)} "
                f"(witness i={fok.witness[0]} j={fok.witness[1]}); pass --force to compare anyway"
            )
        rep.warnings.extend(_allowability_warnings(K, pi))
    r = subdivision_invariance_check(K, pi, args.depth)
    for i, (a, b) in enumerate(zip(r.base_groups, r.subdivided_groups)):
        mark = "agree" if a == b else "DIFFER"
        rep.lines.append(f"degree {i}: {rep.group(a)} vs {rep.group(b)}  {mark}")
    rep.lines.append("all degrees agree" if r.ok else f"mismatch in degrees {r.mismatches}")
    rep.results = {
        "name": doc.name,
        "permutation": list(pi.values),
        "depth": args.depth,
        "base": _groups_json(r.base_groups, rep.primes),
        "subdivided": _groups_json(r.subdivided_groups, rep.primes),
        "subdivided_size": r.subdivided_size,
        "agree": r.ok,
    }
    if not r.ok:
        rep.exit_code = EXIT_MISMATCH


def cmd_perm_calc(args, rep: Report) -> None:
    pi, p = _permutation_arg(args)
    op = args.operation
    rep.results = {"permutation": list(pi.values), "operation": op}
    if op == "dtable":
        table = d_table(pi)
        width = max(len(str(v)) for row in table for v in row)
        for row in table:
            rep.lines.append(" ".join(str(v).rjust(width) for v in row))
        rep.results["dtable"] = [list(r) for r in table]
    elif op == "allowable":
        v = is_allowable(pi)
        rep.lines.append(str(v))
        rep.results["allowable"] = v.ok
        rep.results["witness"] = list(v.witness) if v.witness else None
    elif op == "vshape":
        v = is_v_shaped(pi)
        if v:
            d = v.data
            rep.lines.append(
                f"true, pivot u={d.pivot}, S={{{','.join(map(str, sorted(d.S)))}}}, "
                f"q=({','.join(map(str, d.q))})"
            )
            rep.results.update(v_shaped=True, pivot=d.pivot, S=sorted(d.S), q=list(d.q))
        else:
            rep.lines.append("false")
            rep.results["v_shaped"] = False
    elif op == "reduce":
        r = reduce(pi)
        rep.lines.append(str(r))
        rep.results["reduced"] = list(r.values)
    elif op == "convert":
        if p is not None:
            rep.lines.append(str(pi))
            rep.results["perversity"] = list(p.values)
        else:
            q = permutation_to_perversity(pi)
            rep.lines.append(str(q))
            rep.results["perversity"] = list(q.values)


def cmd_local(args, rep: Report) -> None:
    doc = load(args.source)
    K = doc.complex()
    pi, _ = _permutation_arg(args)
    sigma = tuple(sorted(int(t) for t in args.simplex.replace(" ", "").split(",") if t))
    groups = [local_perm_homology(K, pi, sigma, i, args.method) for i in range(K.dimension + 1)]
    rep.warnings.append(EXPERIMENTAL)
    rep.lines.append("[experimental] " + rep.groups_line("H^pi_loc", groups))
    rep.results = {
        "experimental": True,
        "name": doc.name,
        "simplex": list(sigma),
        "permutation": list(pi.values),
        "groups": _groups_json(groups, rep.primes),
    }


def cmd_builtins(args, rep: Report) -> None:
    for name in corpus.names():
        K = corpus.builtin(name)
        rep.lines.append(f"{name}: dim {K.dimension}, f = {K.f_vector()}")
    rep.results = {"builtins": corpus.names()}


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a machine-readable report")
    common.add_argument("--primes", action="store_true", help="render torsion as prime powers")
    common.add_argument("--timing", action="store_true", help="report wall time")

    parser = argparse.ArgumentParser(
        prog="permhom",
        description="Permutation and intersection homology of simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def perm_opts(p):
        p.add_argument("--perm", help='one-line permutation, e.g. "3,1,0,2"')
        p.add_argument("--perversity", help='perversity, e.g. "0,0,1,1"')

    p = sub.add_parser("homology", parents=[common], help="integral homology")
    p.add_argument("source", help="JSON/text file or builtin name")
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("perm-homology", parents=[common], help="permutation / intersection homology")
    p.add_argument("source")
    perm_opts(p)
    p.add_argument("--method", choices=["image", "chain", "both"], default="image")
    p.set_defaults(func=cmd_perm_homology)

    p = sub.add_parser("stratify", parents=[common], help="intrinsic homology stratification")
    p.add_argument("source")
    p.add_argument("--check-strong", action="store_true")
    p.add_argument("--check-very-strong", action="store_true")
    p.set_defaults(func=cmd_stratify)

    p = sub.add_parser("invariance", parents=[common], help="compare with an iterated subdivision")
    p.add_argument("source")
    perm_opts(p)
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--force", action="store_true", help="compare even for non-allowable permutations")
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("perm-calc", parents=[common], help="permutation and perversity calculus")
    perm_opts(p)
    p.add_argument("operation", choices=["dtable", "allowable", "vshape", "reduce", "convert"])
    p.set_defaults(func=cmd_perm_calc)

    p = sub.add_parser("local", parents=[common], help="local permutation homology (experimental)")
    p.add_argument("source")
    perm_opts(p)
    p.add_argument("--simplex", required=True, help='e.g. "0,1"')
    p.add_argument("--method", choices=["image", "chain"], default="image")
    p.set_defaults(func=cmd_local)

    p = sub.add_parser("builtins", parents=[common], help="list the built-in complexes")
    p.set_defaults(func=cmd_builtins)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    rep = Report(argv, args.primes)
    start = time.perf_counter()
    try:
        args.func(args, rep)
    except PermhomError as exc:
        rep.exit_code = exc.exit_code
        rep.results = {"error": type(exc).__name__, "message": str(exc)}
        rep.lines = [f"error: {exc}"]
    except AssertionError as exc:
        rep.exit_code = EXIT_MISMATCH
        rep.results = {"error": "AssertionError", "message": str(exc)}
        rep.lines = [f"verification failed: {exc}"]
    elapsed = time.perf_counter() - start
    if args.json:
        out = rep.as_dict()
        if args.timing:
            out["timing"] = {"seconds": round(elapsed, 6), "backend": kernels.BACKEND}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        stream = sys.stderr if rep.results.get("error") else sys.stdout
        for w in rep.warnings:
            print(f"warning: {w}", file=sys.stderr)
        for line in rep.lines:
            print(line, file=stream)
        if args.timing:
            print(f"time: {elapsed:.3f}s ({kernels.BACKEND} kernel)", file=sys.stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
