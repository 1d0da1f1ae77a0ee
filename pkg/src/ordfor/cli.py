"""Command line front end.

Every command prints one JSON report and exits 0 on pass, 1 when a
mathematical check fails, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from ordfor import checks, records
from ordfor.category import compose as compose_morphisms
from ordfor.category import enumerate_hom
from ordfor.errors import OrdForError, UnknownCommand
from ordfor.forest import decompose, height, to_dot
from ordfor.kan import (
    detect_fibration,
    detect_weak_equivalence,
    pullback_map,
    pushforward_functor,
    representable_presheaf,
)
from ordfor.linalg import homology_dims
from ordfor.morphism import raw_graft, reduce, unary_vertices
from ordfor.normalization import (
    from_epi_map,
    is_fibration,
    is_weak_equivalence,
    normalize,
    normalize_map,
    validate_ssm,
)
from ordfor.shadow import enumerate_surjections, is_height_one, sigma_of

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _morphism_file(path):
    return records.parse_morphism(records.load(path))


def cmd_validate(args):
    F = records.parse_forest(records.load(args.file))
    return {"pass": True, "forest": F, "height": height(F),
            "components": len(decompose(F).components),
            "minima": list(F.minima), "maxima": list(F.maxima)}


def cmd_decompose(args):
    F = records.parse_forest(records.load(args.file))
    dec = decompose(F)
    return {"pass": True,
            "components": [{"root": r, "ranks": [lo, hi]} for r, lo, hi in dec.components],
            "trees": dec.trees(F)}


def cmd_compose(args):
    f, g = _morphism_file(args.f), _morphism_file(args.g)
    res = raw_graft(f, g)
    return {"pass": True, "dom": g.dom, "cod": f.cod, "raw": res.h,
            "composite": compose_morphisms(f, g)}


def cmd_reduce(args):
    F = records.parse_forest(records.load(args.file))
    return {"pass": True, "reduced": reduce(F), "contractions": len(unary_vertices(F))}


def cmd_enum_hom(args):
    hom = enumerate_hom(args.m, args.n)
    out = {"pass": True, "counts": {"morphisms": len(hom)}, "morphisms": list(hom)}
    if args.oracle:
        rep = checks.check_hom(max(args.m, args.n))
        out["pass"] = rep["pass"]
        out["counterexamples"] = rep["counterexamples"]
    return out


def cmd_enum_epi(args):
    surj = enumerate_surjections(args.n, args.m)
    return {"pass": True, "counts": {"surjections": len(surj)}, "surjections": surj}


def cmd_shadow(args):
    f = _morphism_file(args.file)
    return {"pass": True, "shadow": sigma_of(f), "height_one": is_height_one(f)}


def cmd_check(args):
    what = args.what
    if what == "axioms":
        return checks.check_axioms(args.max, args.assoc_max)
    if what == "confluence":
        return checks.check_confluence(args.max_size)
    if what == "pi":
        return checks.check_pi(args.max)
    if what == "decomposition":
        return checks.check_decomposition(args.max_size)
    if what == "graft":
        return checks.check_graft(args.max_size)
    if what == "universal":
        return checks.check_universal(args.max_size, args.max_target)
    if what == "hom":
        return checks.check_hom(args.max)
    if what == "shadow":
        return checks.check_shadow(args.max_n, args.max_count)
    raise AssertionError(what)


def _presheaf_arg(args):
    if args.file:
        return records.parse_presheaf(records.load(args.file)).check()
    return representable_presheaf(args.representable, args.trunc).check()


def cmd_kan(args):
    if args.action == "push":
        X = _presheaf_arg(args)
        A, limits = pushforward_functor(X)
        k = args.n if args.n is not None else X.truncation
        return {"pass": True, "dims": [L.dim for L in limits[: k + 1]], "functor": records.epi_functor_record(A)}
    if args.action == "unit":
        return checks.kan_unit(args.seed, args.trials, args.trunc)
    if args.action == "counit":
        return checks.kan_counit(_presheaf_arg(args))
    if args.action == "weq":
        if args.file:
            u = records.parse_epi_map(records.load(args.file))
            f = pullback_map(u)
            expected = is_weak_equivalence(from_epi_map(u))
            got = detect_weak_equivalence(f)
            return {"pass": got == expected, "weak_equivalence": got, "expected": expected,
                    "fibration": detect_fibration(f)}
        return checks.kan_weq(args.seed, args.trials)
    raise AssertionError(args.action)


def cmd_nk(args):
    return checks.nk_check(args.seed, args.trials, args.max_dim, args.max_top)


def cmd_homology(args):
    obj = records.load(args.file)
    if isinstance(obj, dict) and "faces" in obj:
        C = normalize(validate_ssm(records.parse_ssm(obj)))
    else:
        C = records.parse_complex(obj).check()
    return {"pass": True, "normalized_dims": list(C.dims), "homology": homology_dims(C)}


def cmd_weq(args):
    f = records.parse_ssm_map(records.load(args.file))
    validate_ssm(f.source)
    validate_ssm(f.target)
    g = normalize_map(f)
    return {"pass": True, "weak_equivalence": is_weak_equivalence(f),
            "fibration": is_fibration(f), "normalized": list(g.components)}


def cmd_export_dot(args):
    F = records.parse_forest(records.load(args.file))
    text = to_dot(F)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    return {"pass": True, "out": args.out}


class _Parser(argparse.ArgumentParser):
    # report usage problems as JSON like any other input error
    def error(self, message):
        raise UnknownCommand(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordfor", description="Ordered forests and their shadows.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in [("validate", cmd_validate, "validate a forest file"),
                            ("decompose", cmd_decompose, "split a forest into trees"),
                            ("reduce", cmd_reduce, "contract unary vertices"),
                            ("shadow", cmd_shadow, "surjection underlying a morphism")]:
        s = sub.add_parser(name, help=help_)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("compose", help="graft then reduce: f after g")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("enum-hom", help="reduced morphisms [M] -> [N]")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    s.set_defaults(func=cmd_enum_hom)

    s = sub.add_parser("enum-epi", help="order-preserving surjections [N] ->> [M]")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(func=cmd_enum_epi)

    s = sub.add_parser("check", help="exhaustive verification sweeps")
    s.add_argument("what", choices=["axioms", "confluence", "pi", "decomposition", "graft",
                                    "universal", "hom", "shadow"])
    s.add_argument("--max", type=int, default=3)
    s.add_argument("--assoc-max", type=int, default=2)
    s.add_argument("--max-size", type=int, default=None)
    s.add_argument("--max-target", type=int, default=4)
    s.add_argument("--max-n", type=int, default=5)
    s.add_argument("--max-count", type=int, default=6)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("kan", help="right Kan extension along the shadow")
    s.add_argument("action", choices=["push", "unit", "counit", "weq"])
    s.add_argument("file", nargs="?")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--representable", type=int, default=0)
    s.add_argument("--trunc", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=20)
    s.set_defaults(func=cmd_kan)

    s = sub.add_parser("nk-check", help="normalization undoes the inverse construction")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--max-dim", type=int, default=3)
    s.add_argument("--max-top", type=int, default=3)
    s.set_defaults(func=cmd_nk)

    s = sub.add_parser("homology", help="homology of a normalized module or a complex")
    s.add_argument("file")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("weq", help="classify a map of semisimplicial modules")
    s.add_argument("file")
    s.set_defaults(func=cmd_weq)

    s = sub.add_parser("export-dot", help="Graphviz rendering of a forest")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export_dot)
    return p


_SIZE_DEFAULTS = {"confluence": 8, "decomposition": 7, "graft": 5, "universal": 5}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UnknownCommand as exc:
        report = {"command": None, "parameters": {"argv": list(sys.argv[1:] if argv is None else argv)},
                  "pass": False, "counterexamples": [], "counts": {},
                  "error": "UnknownCommand", "message": str(exc), "elapsed": 0.0}
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return EXIT_INPUT
    if getattr(args, "what", None) in _SIZE_DEFAULTS and args.max_size is None:
        args.max_size = _SIZE_DEFAULTS[args.what]
    params = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    start = time.perf_counter()
    try:
        result = args.func(args)
        code = EXIT_PASS if result.get("pass") else EXIT_FAIL
    except (OrdForError, ValueError, OSError) as exc:
        result = {"pass": False, "error": type(exc).__name__, "message": str(exc)}
        code = EXIT_INPUT
    report = {
        "command": args.command,
        "parameters": params,
        "pass": result.pop("pass"),
        "counterexamples": result.pop("counterexamples", []),
        "counts": result.pop("counts", {}),
    }
    report.update(result)
    report["elapsed"] = round(time.perf_counter() - start, 4)
    json.dump(records.to_jsonable(report), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
