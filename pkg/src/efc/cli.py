"""Command-line front end: ``efc <verb> [flags]``.

Verbs: ``build``, ``verify``, ``decompose``, ``stats``, ``circuit-dominant``.
Exit status is 0 on success, 1 when a verification fails and 2 on usage or
input errors.
"""
import argparse
import os
import sys
from typing import List, Optional, Tuple

from .decomposition import DecompositionTree, centroid, compose_tree, read_tree, star_decompose
from .errors import EfcError, TooLarge
from .formulations.circuit import circuit_dominant_ef
from .formulations.pairs import pair_formulation_cographic, pair_formulation_graphic
from .formulations.pipeline import ledger_line, part_ef, regular_pipeline
from .graph import read_graph
from .lp.model import ExtendedFormulation
from .lp.textio import read_lp, write_lp
from .matroid import BinaryMatroid, read_matrix
from .parts import Part
from .verify import VerificationReport, check_circuit_dominant, check_projection_equality, check_size_bounds

KIND_CHOICES = ("graphic", "cographic", "binary", "dectree", "r10")


class UsageError(Exception):
    pass


def infer_kind(path: str) -> str:
    """Guess the input kind from the extension, then from the first record."""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".dectree":
        return "dectree"
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("elements:"):
                return "binary"
            head = line.split()[0]
            if head in ("node", "edge"):
                return "dectree"
            if head == "e":
                return "graphic"
            break
    raise UsageError("cannot infer the kind of %s; pass --kind" % path)


def load_input(kind: Optional[str], path: Optional[str]):
    """Return ``(obj, matroid, kind)``; obj is a Part or a DecompositionTree."""
    if kind == "r10" and path in (None, "-"):
        p = Part.r10()
        return p, p.matroid, "r10"
    if path is None:
        raise UsageError("--input is required for kind %s" % (kind or "auto"))
    if not os.path.exists(path):
        raise UsageError("no such file: %s" % path)
    kind = kind or infer_kind(path)
    name = os.path.splitext(os.path.basename(path))[0]
    if kind == "dectree":
        t = read_tree(path)
        return t, compose_tree(t), kind
    if kind in ("graphic", "cographic"):
        p = Part.from_graph(name, kind, read_graph(path), source=path)
    else:
        p = Part(name, kind, read_matrix(path), source=path)
    return p, p.matroid, kind


def _triangles(args) -> List[Tuple[str, ...]]:
    out = []
    for spec in args.triangle or []:
        tri = tuple(x for x in spec.replace(",", " ").split() if x)
        if len(tri) != 3:
            raise UsageError("--triangle needs three element names, got %r" % spec)
        out.append(tri)
    return out


def build_ef(obj, triangles=()) -> ExtendedFormulation:
    """Independence EF of the input; with triangles, the pair formulation."""
    if isinstance(obj, DecompositionTree):
        return regular_pipeline(obj)
    if triangles:
        if obj.kind == "graphic":
            ef = pair_formulation_graphic(obj.graph, triangles)
        elif obj.kind == "cographic":
            g = obj.graph
            inc = g.incident()
            stars = []
            for tri in triangles:
                hit = [v for v in g.vertices if g.degree(v) == 3 and set(inc[v]) == set(tri)]
                if not hit:
                    raise UsageError("triangle %s is not the star of a degree-3 vertex" % (tri,))
                stars.append(hit[0])
            ef = pair_formulation_cographic(g, stars, triangles=triangles)
        else:
            raise UsageError("--triangle applies to graphic and cographic inputs only")
        ef.tags["ledger"] = [ledger_line(0, obj.id + "/R", ef)]
        return ef
    ef = part_ef(obj)
    ef.tags["ledger"] = [ledger_line(0, obj.id, ef)]
    return ef


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _report_text(rep: VerificationReport, fmt: str) -> str:
    if fmt == "json-lines":
        return rep.json_lines()
    tail = "instance=%s ok=%s trials=%d seed=%d elapsed=%.2fs\n" % (
        rep.instance, "yes" if rep.ok else "no", rep.trials, rep.seed, rep.elapsed)
    return rep.text() + tail


def _check_cap(m: BinaryMatroid, cap: int):
    if m.n > cap:
        raise TooLarge("%d elements exceed the enumeration cap %d" % (m.n, cap))


def variable_groups(ef: ExtendedFormulation) -> dict:
    """Variable counts by name prefix, read off the LP."""
    groups = {"x": 0, "c": 0, "phi": 0, "delta": 0, "other": 0}
    prefix = {"x": "x", "xp": "x", "xpp": "x", "c": "c", "cp": "c", "cpp": "c", "phi": "phi", "delta": "delta"}
    for v in ef.lp.variables:
        groups[prefix.get(v.split(".", 1)[0], "other")] += 1
    return groups


def cmd_build(args) -> int:
    obj, m, _ = load_input(args.kind, args.input)
    ef = build_ef(obj, _triangles(args))
    ledger = ef.tags.get("ledger", [])
    body = "".join("# %s\n" % ln for ln in ledger) + write_lp(ef)
    _emit(body, args.out)
    if args.out:
        sys.stdout.write("".join(ln + "\n" for ln in ledger))
    return 0


def cmd_verify(args) -> int:
    obj, m, kind = load_input(args.kind, args.input)
    _check_cap(m, args.cap)
    if args.lp:
        with open(args.lp, encoding="utf-8") as fh:
            ef = read_lp(fh.read())
        if not isinstance(ef, ExtendedFormulation):
            raise UsageError("%s has no projection lines" % args.lp)
    else:
        ef = build_ef(obj)
    name = args.input or kind
    rep = check_projection_equality(ef, m, args.trials, args.seed, instance=os.path.basename(name), jobs=args.jobs)
    if isinstance(obj, DecompositionTree) and not args.lp:
        rep.extend(check_size_bounds(ef))
    _emit(_report_text(rep, args.format), args.out)
    return 0 if rep.ok else 1


def cmd_decompose(args) -> int:
    obj, m, kind = load_input(args.kind or "dectree", args.input)
    if not isinstance(obj, DecompositionTree):
        raise UsageError("decompose needs a decomposition tree")
    sd = star_decompose(obj)
    sd.check()
    lines = ["nodes=%d edges=%d elements=%d rank=%d" % (len(obj.nodes), len(obj.edges), m.n, m.rank),
             "centroid=%s" % centroid(obj)]
    lines += sd.summary().rstrip("\n").splitlines()
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_stats(args) -> int:
    obj, m, kind = load_input(args.kind, args.input)
    tris = _triangles(args)
    ef = build_ef(obj, tris)
    v, ineq, eq = ef.size_report()
    lines = ["vars=%d ineqs=%d eqs=%d" % (v, ineq, eq)]
    if isinstance(obj, Part) and obj.kind in ("graphic", "cographic"):
        g = obj.graph
        grp = variable_groups(ef)
        nv, ne, k = len(g.vertices), len(g.edges), len(tris)
        e0 = ne - 3 * k
        roots = nv - 1 - (k if obj.kind == "cographic" else 0)
        want = {"x": e0 + 6 * k, "c": 2 * e0 + 12 * k, "phi": roots * 2 * ne,
                "delta": (nv - 1) * 6 * k if obj.kind == "graphic" else 0}
        lines.append("graph |V|=%d |E|=%d k=%d" % (nv, ne, k))
        for key in ("x", "c", "phi", "delta"):
            lines.append("%s_vars=%d expected=%d %s" % (key, grp[key], want[key],
                                                        "match" if grp[key] == want[key] else "MISMATCH"))
        lines.append("phi formula: (%d-1)*2*%d = %d" % (nv, ne, (nv - 1) * 2 * ne)
                     if obj.kind == "graphic" else
                     "phi formula: (%d-1-%d)*2*%d = %d" % (nv, k, ne, roots * 2 * ne))
    lines += ef.tags.get("ledger", [])
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_circuit(args) -> int:
    obj, m, kind = load_input(args.kind, args.input)
    if isinstance(obj, DecompositionTree):
        if len(obj.nodes) != 1:
            raise UsageError("circuit-dominant needs a single part")
        (obj,) = obj.nodes.values()
    ef = circuit_dominant_ef(obj)
    lines = [ledger_line(0, obj.id, ef), "pieces=%d" % ef.tags["pieces"]]
    code = 0
    if args.verify:
        _check_cap(m, args.cap)
        rep = check_circuit_dominant(ef, m, args.trials, args.seed, instance=obj.id)
        rep.extend(check_size_bounds(ef, obj.id, m))
        sys.stdout.write(_report_text(rep, args.format))
        code = 0 if rep.ok else 1
    if args.out:
        _emit("".join("# %s\n" % ln for ln in lines) + write_lp(ef), args.out)
    if not args.verify:
        sys.stdout.write("\n".join(lines) + "\n")
    return code


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind", choices=KIND_CHOICES, help="input kind (inferred when omitted)")
    common.add_argument("--input", help="graph, matrix or dectree file ('-' with --kind r10)")
    common.add_argument("--trials", type=int, default=200, help="random objectives (default 200)")
    common.add_argument("--seed", type=int, default=42, help="seed for all randomness (default 42)")
    common.add_argument("--cap", type=int, default=24, help="enumeration cap on |E| (default 24)")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--format", choices=("text", "json-lines"), default="text")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="parallel workers")
    common.add_argument("--triangle", action="append",
                        help="element triple a,b,c (repeatable); selects the pair formulation")
    p = argparse.ArgumentParser(prog="efc", description="Extended formulations for regular matroids.")
    sub = p.add_subparsers(dest="verb", required=True)
    sub.add_parser("build", parents=[common], help="emit the LP of an extended formulation")
    v = sub.add_parser("verify", parents=[common], help="check projection equality against oracles")
    v.add_argument("--lp", help="verify this LP file instead of building the formulation")
    sub.add_parser("decompose", parents=[common], help="print the star decomposition of a tree")
    sub.add_parser("stats", parents=[common], help="print variable and row counts")
    c = sub.add_parser("circuit-dominant", parents=[common], help="circuit dominant EF")
    c.add_argument("--verify", action="store_true", help="also run the circuit checks")
    return p


COMMANDS = {"build": cmd_build, "verify": cmd_verify, "decompose": cmd_decompose, "stats": cmd_stats,
            "circuit-dominant": cmd_circuit}


def main(argv: Optional[List[str]] = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.verb](args)
    except (UsageError, EfcError, OSError) as exc:
        sys.stderr.write("efc: %s: %s\n" % (exc.__class__.__name__, exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
