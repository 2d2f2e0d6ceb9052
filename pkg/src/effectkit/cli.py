"""Command-line driver: ``effectkit <command> [options] <files...>``.

Every report is plain text, one ``key = value`` per line, in a fixed order.
Exit codes: 0 success / verdict true, 1 verdict false, 2 input error,
3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import re
import sys
from collections import Counter
from fractions import Fraction
from typing import Iterable, List, Tuple

from .core import (EffectAlgebraTable, center, classify, validate_axioms, verify_basic_laws)
from .errors import CapExceeded, EffectKitError
from .formats import AlgebraDocument, parse_file, serialize
from .structures import MVTable, mv_to_ea, validate_mv

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

Lines = List[Tuple[str, object]]

COMMANDS = ("validate", "classify", "center", "measures", "unigroup", "compress", "harness87",
            "enumerate", "zoo")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "n/a"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, tuple):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, (frozenset, set)):
        return "{" + ", ".join(_fmt(v) for v in sorted(value)) + "}"
    return str(value)


def _slug(name: str) -> str:
    name = name.replace("<->", " iff ").replace("->", " implies ")
    return re.sub(r"\W+", "_", name).strip("_")


def render(lines: Lines) -> str:
    return "".join(f"{k} = {_fmt(v)}\n" for k, v in lines)


def _bounded(value: bool, k: int) -> str:
    return f"true (up to k={k})" if value else "false"


def _table(doc: AlgebraDocument) -> EffectAlgebraTable:
    from .unigroup import interval_of
    p = doc.payload
    if isinstance(p, EffectAlgebraTable):
        return p
    if isinstance(p, MVTable):
        return mv_to_ea(p)
    return interval_of(p)


def _presentation(doc: AlgebraDocument):
    from .unigroup import GroupPresentation, universal_group
    if isinstance(doc.payload, GroupPresentation):
        return doc.payload
    return universal_group(_table(doc))


def _names(t: EffectAlgebraTable, xs: Iterable[int]) -> list:
    return [t.label(x) for x in sorted(xs)]


# --------------------------------------------------------------------------
# reports

def report_validate(doc: AlgebraDocument, args) -> Tuple[Lines, bool]:
    lines: Lines = [("subject", doc.name), ("kind", doc.kind)]
    p = doc.payload
    if isinstance(p, MVTable):
        res = validate_mv(p)
        lines += [("valid", res.ok), ("violations", sorted(set(res.axioms())))]
        return lines, res.ok
    if isinstance(p, EffectAlgebraTable):
        res = validate_axioms(p)
        lines += [("valid", res.ok), ("violations", sorted(set(res.axioms())))]
        if res.ok:
            laws = verify_basic_laws(p)
            lines.append(("laws", laws.ok))
            return lines, laws.ok
        return lines, False
    from .unigroup import cone_of
    C = cone_of(p)
    ok = C.pointed and C.contains(p.unit) if C.pointed else False
    lines += [("pointed_cone", C.pointed), ("unit_in_cone", ok), ("valid", ok)]
    return lines, ok


def report_classify(doc, args) -> Tuple[Lines, bool]:
    t = _table(doc)
    c = classify(t)
    lines: Lines = [("subject", doc.name), ("size", t.n)]
    lines += list(c.flags().items())
    lines += [("principal", _names(t, c.principal_elements)), ("center", _names(t, c.center))]
    return lines, True


def report_center(doc, args) -> Tuple[Lines, bool]:
    t = _table(doc)
    return [("subject", doc.name), ("center", _names(t, center(t)))], True


def report_measures(doc, args) -> Tuple[Lines, bool]:
    from .measures import extreme_points, is_order_determining, probability_polytope
    t = _table(doc)
    P = probability_polytope(t)
    verts = extreme_points(P)
    ok, witness = is_order_determining(t, verts)
    lines: Lines = [("subject", doc.name), ("equalities", len(P.equalities)),
                    ("empty", not verts), ("vertices", len(verts))]
    for i, v in enumerate(verts):
        lines.append((f"vertex.{i}", ", ".join(f"{t.label(x)}:{v(x)}" for x in range(t.n))))
    lines.append(("order_determining", ok))
    if witness:
        lines.append(("order_witness", tuple(t.label(x) for x in witness)))
    return lines, True


def report_unigroup(doc, args) -> Tuple[Lines, bool]:
    from .unigroup import (GroupPresentation, correspondence_checks, group_predicates,
                           is_interval_realization)
    k = args.box
    P = _presentation(doc)
    lines: Lines = [("subject", doc.name), ("rank", P.rank), ("torsion", list(P.torsion)),
                    ("unit", P.unit)]
    if P.images is not None:
        for label, v in zip(P.image_labels, P.images):
            lines.append((f"image.{label}", v))
    if not isinstance(doc.payload, GroupPresentation):
        t = _table(doc)
        ok, _ = is_interval_realization(t)
        lines.append(("interval_realization", ok))
        if ok:
            rep = correspondence_checks(t, k)
            for name, a, g, agree in rep.rows:
                key = _slug(name)
                lines.append((f"correspondence.{key}", f"{_fmt(a)} / {_fmt(g)} "
                              f"agree={_fmt(agree)} (k={k})"))
        if not ok or P.torsion:
            return lines, True
    gp = group_predicates(P, k)
    lines += [("order_unit", gp.is_order_unit), ("generative", gp.is_generative),
              ("interpolation", _bounded(gp.has_interpolation, k)),
              ("lattice_ordered", _bounded(gp.is_lattice_ordered, k)),
              ("totally_ordered", _bounded(gp.is_totally_ordered, k)),
              ("archimedean", gp.is_archimedean)]
    for key, w in sorted(gp.witnesses.items()):
        lines.append((f"witness.{key}", w))
    return lines, True


def report_compress(doc, args) -> Tuple[Lines, bool]:
    from .compress import find_projections, general_comparability, rickart_map
    k = args.box
    P = _presentation(doc)
    R = find_projections(P, k)
    lines: Lines = [("subject", doc.name), ("projections", len(R.projections)),
                    ("projection_set", [p for p in R.projections]),
                    ("compressible", str(R.is_compressible))]
    if R.is_compressible.witness is not None:
        lines.append(("witness.compressible", R.is_compressible.witness))
    if R.is_compressible:
        rick = rickart_map(P, k)
        gc = general_comparability(P, k)
        lines += [("rickart", str(rick.verdict)), ("general_comparability", str(gc)),
                  ("rgc", _bounded(rick.mapping is not None and bool(gc), k))]
        if rick.witness is not None:
            lines.append(("witness.rickart", rick.witness))
        if gc.witness is not None:
            lines.append(("witness.general_comparability", gc.witness))
    return lines, True


def report_harness(doc, args) -> Tuple[Lines, bool]:
    from .compress import hmv_equivalence_harness
    payload = doc.payload if not isinstance(doc.payload, MVTable) else mv_to_ea(doc.payload)
    rep = hmv_equivalence_harness(payload, args.box)
    lines: Lines = [("subject", doc.name)]
    lines += [(f"condition.{name}", str(v)) for name, v in rep.conditions.items()]
    lines += [("agree", rep.agree), ("heyting_formula", rep.heyting_formula)]
    for key, w in sorted(rep.witnesses.items()):
        lines.append((f"witness.{key}", w))
    return lines, rep.ok


REPORTS = {
    "validate": report_validate,
    "classify": report_classify,
    "center": report_center,
    "measures": report_measures,
    "unigroup": report_unigroup,
    "compress": report_compress,
    "harness87": report_harness,
}


# --------------------------------------------------------------------------
# census

CENSUS_FLAGS = (("omp", "is_omp"), ("mv", "is_mv_effect"), ("boolean", "is_boolean_ea"),
                ("hmv", "is_hmv"), ("riesz", "has_riesz"))


def emit_census(n_max: int, workers: int = 1) -> str:
    """Per-size isomorphism-class counts, then counts by flag and flag pattern."""
    from .enumeration import enumerate_all
    by_size: dict = {}
    for t in enumerate_all(n_max, workers):
        by_size.setdefault(t.n, []).append(t)
    out = []
    for n in range(2, n_max + 1):
        out.append(f"n={n}: {len(by_size.get(n, []))}")
    names = [a for a, _ in CENSUS_FLAGS]
    out.append("")
    out.append("# counts by flag: " + " ".join(names))
    for n in range(2, n_max + 1):
        reports = [classify(t) for t in by_size.get(n, [])]
        counts = " ".join(f"{a}={sum(getattr(r, f) for r in reports)}" for a, f in CENSUS_FLAGS)
        out.append(f"n={n} {counts}")
    out.append("")
    out.append("# counts by flag pattern (" + ",".join(names) + ")")
    for n in range(2, n_max + 1):
        pats = Counter("".join("1" if getattr(classify(t), f) else "0" for _, f in CENSUS_FLAGS)
                       for t in by_size.get(n, []))
        for pat in sorted(pats, reverse=True):
            out.append(f"n={n} {pat}: {pats[pat]}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# driver

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="effectkit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("files", nargs="*", help="input documents (zoo: construction specs)")
    ap.add_argument("--workers", type=int, default=1, help="parallel workers for enumeration")
    ap.add_argument("--box", type=int, default=2, help="bound k for box-verified predicates")
    ap.add_argument("--max", type=int, default=4, dest="max_n", help="largest enumerated size")
    return ap


def run(argv: List[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_intermixed_args(argv)
    try:
        if args.command == "enumerate":
            out.write(emit_census(args.max_n, args.workers))
            return EXIT_OK
        if args.command == "zoo":
            from .zoo import zoo
            if not args.files:
                raise EffectKitError("zoo needs at least one construction spec")
            out.write("\n".join(serialize(zoo(spec)) for spec in args.files))
            return EXIT_OK
        if not args.files:
            raise EffectKitError(f"{args.command} needs at least one input file")
        code = EXIT_OK
        blocks = []
        for path in args.files:
            doc = parse_file(path)
            lines, verdict = REPORTS[args.command](doc, args)
            blocks.append(render(lines))
            if not verdict:
                code = EXIT_FALSE
        out.write("\n".join(blocks))
        return code
    except CapExceeded as exc:
        err.write(f"effectkit: cap exceeded: {exc}\n")
        return EXIT_CAP
    except (EffectKitError, ValueError, OSError) as exc:
        err.write(f"effectkit: {exc}\n")
        return EXIT_INPUT


def main(argv=None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
