"""Command-line surface: parse digraphs, run pipelines, emit JSON reports.

Every command writes exactly one JSON object.  The object doubles as the
pipeline document: ``gen`` output carries the digraph keys, ``complex``
output the complex keys, so commands chain over standard streams.  Reports
are byte-identical across runs on identical input (sorted keys, no
timestamps).

Exit codes: 0 success, 1 domain error (structured error report on stdout),
2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from . import __version__
from .complexes import SimplicialComplex, build_complex, f_vector, restrict_to
from .digraph import Digraph, InputError
from .fxmap import continuity_certificate, sampled_continuity_check
from .generators import circulant, digital_image, figure_digraph, random_digraph
from .homology import (
    abelianization,
    homology_field,
    homology_integer,
    les_exactness_check,
    pi1_presentation,
    relative_homology,
)

SCHEMA = "1"


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _digest(obj):
    return hashlib.sha256(_canonical(obj).encode("utf-8")).hexdigest()


def _digraph_doc(g):
    labels = [g.label_of(v) for v in range(g.n)]
    edges = sorted([labels[u], labels[v]] for u, v in g.edges())
    return {"schema": SCHEMA, "vertices": labels, "edges": edges}


def _digraph_from_doc(doc):
    labels = [str(x) for x in doc.get("vertices", [])]
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise InputError("vertex labels must be unique")
    edges = []
    for pair in doc.get("edges", []):
        if len(pair) != 2:
            raise InputError(f"edge {pair!r} is not a pair")
        resolved = []
        for entry in pair:
            if isinstance(entry, str) and entry in index:
                resolved.append(index[entry])
            elif isinstance(entry, int) and 0 <= entry < len(labels):
                resolved.append(entry)
            elif str(entry) in index:
                resolved.append(index[str(entry)])
            else:
                raise InputError(f"unknown vertex label {entry!r}")
        edges.append(tuple(resolved))
    return Digraph.from_edge_list(len(labels), edges, labels=labels or None)


def _parse_edgelist(text):
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1 or not fields[0].isdigit():
                raise InputError(f"line {lineno}: expected the vertex count")
            n = int(fields[0])
            continue
        if len(fields) != 2:
            raise InputError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise InputError(f"line {lineno}: expected two integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(
                f"line {lineno}: edge ({u}, {v}) out of range for {n} vertices"
            )
        edges.append((u, v))
    if n is None:
        raise InputError("empty edgelist input")
    return Digraph.from_edge_list(n, edges)


def parse_digraph(source, format="json"):
    """Parse a digraph document ('json') or an edgelist ('edgelist')."""
    if format == "edgelist":
        return _parse_edgelist(source)
    if format == "json":
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as e:
            raise InputError(f"malformed json input: {e}") from None
        return _digraph_from_doc(doc)
    raise InputError(f"unknown input format {format!r}")


def _complex_doc(k):
    simplices = [
        {"verts": list(s), "witness": list(k.witness[s])} for s in k.simplices()
    ]
    return {
        "schema": SCHEMA,
        "f_vector": list(f_vector(k)),
        "simplices": simplices,
        "truncated": k.truncated,
    }


def _complex_from_doc(doc):
    witnesses = {}
    faces = []
    for item in doc.get("simplices", []):
        verts = tuple(item["verts"])
        faces.append(verts)
        if "witness" in item:
            witnesses[tuple(sorted(verts))] = tuple(item["witness"])
    k = SimplicialComplex.from_simplices(faces, witnesses=witnesses)
    k.truncated = bool(doc.get("truncated", False))
    return k


def _load_input(args, stdin):
    """Read stdin into (kind, object, canonicalized document for hashing)."""
    text = stdin.read()
    if getattr(args, "format", "json") == "edgelist":
        g = _parse_edgelist(text)
        return "digraph", g, _strip_meta(_digraph_doc(g))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed json input: {e}") from None
    if "simplices" in doc:
        k = _complex_from_doc(doc)
        return "complex", k, _strip_meta(_complex_doc(k), kind="complex")
    if "edges" in doc or "vertices" in doc:
        g = _digraph_from_doc(doc)
        return "digraph", g, _strip_meta(_digraph_doc(g))
    raise InputError("input json is neither a digraph nor a complex document")


def _strip_meta(doc, kind="digraph"):
    # The digest covers the canonical reconstruction, so reordered edges or
    # an edgelist spelling of the same digraph hash identically.
    keys = ("vertices", "edges") if kind == "digraph" else ("f_vector", "simplices")
    return {k: doc[k] for k in keys if k in doc}


def _require_digraph(kind, obj):
    if kind != "digraph":
        raise InputError("this command needs a digraph document as input")
    return obj


def _complex_of(kind, obj, max_dim=None):
    if kind == "digraph":
        return build_complex(obj, max_dim)
    if max_dim is not None:
        raise InputError("--max-dim applies to digraph input only")
    return obj


def _groups_json(groups):
    return [
        {"dim": n, "betti": g.betti, "torsion": list(g.torsion)}
        for n, g in enumerate(groups)
    ]


def _parse_coeff(spec, allow_integer=True):
    spec = spec.lower()
    if spec == "z":
        if not allow_integer:
            raise InputError("this command needs field coefficients (q or zp:<p>)")
        return "z"
    if spec == "q":
        return "q"
    if spec.startswith("zp:"):
        try:
            return int(spec[3:])
        except ValueError:
            raise InputError(f"bad coefficient spec {spec!r}") from None
    raise InputError(f"bad coefficient spec {spec!r}")


def _parse_subset(text):
    try:
        return tuple(sorted({int(x) for x in text.split(",") if x.strip() != ""}))
    except ValueError:
        raise InputError(f"bad subset {text!r}; expected comma-separated integers") from None


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational number {text!r}") from None


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="dvrhom",
        description="Homology of finite digraphs via directed Vietoris-Rips complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated digraph document")
    gsub = gen.add_subparsers(dest="generator", required=True)
    g_circ = gsub.add_parser("circulant")
    g_circ.add_argument("--n", type=int, required=True)
    g_circ.add_argument("--m", type=int, required=True)
    g_dig = gsub.add_parser("digital")
    g_dig.add_argument(
        "--points",
        required=True,
        help="semicolon-separated lattice points, e.g. '1,0;0,1;-1,0'",
    )
    g_fig = gsub.add_parser("figure")
    g_fig.add_argument("--which", choices=("left", "middle", "right"), required=True)
    g_rand = gsub.add_parser("random")
    g_rand.add_argument("--n", type=int, required=True)
    g_rand.add_argument("--p", type=float, required=True)
    g_rand.add_argument("--seed", type=int, default=0)
    for p in (g_circ, g_dig, g_fig, g_rand):
        p.add_argument("--out")

    def io_command(name, **kwargs):
        c = sub.add_parser(name, **kwargs)
        c.add_argument("--format", choices=("json", "edgelist"), default="json")
        c.add_argument("--out")
        return c

    cx = io_command("complex", help="build the complex, emit f-vector and witnesses")
    cx.add_argument("--max-dim", type=int, default=None)

    hom = io_command("homology", help="homology groups of the complex")
    hom.add_argument("--coeff", default="z")
    hom.add_argument("--reduced", action="store_true")
    hom.add_argument("--max-dim", type=int, default=None)

    pair = io_command("pair", help="relative homology against a vertex subset")
    pair.add_argument("--subset", required=True)

    les = io_command("les-check", help="long-exact-sequence exactness report")
    les.add_argument("--subset", required=True)
    les.add_argument("--coeff", default="q")

    pi1 = io_command("pi1", help="fundamental group presentation")
    pi1.add_argument("--basepoint", type=int, default=0)

    io_command("fx-certify", help="combinatorial continuity certificate")

    fxs = io_command("fx-sample", help="sampled continuity check")
    fxs.add_argument("--samples", type=int, default=1000)
    fxs.add_argument("--delta", default="1/1000")
    fxs.add_argument("--seed", type=int, default=0)
    return parser


def _run_gen(args):
    if args.generator == "circulant":
        g = circulant(args.n, args.m)
        params = {"generator": "circulant", "n": args.n, "m": args.m}
        seed = None
    elif args.generator == "digital":
        points = []
        for chunk in args.points.split(";"):
            chunk = chunk.strip()
            if chunk:
                try:
                    points.append(tuple(int(c) for c in chunk.split(",")))
                except ValueError:
                    raise InputError(f"bad lattice point {chunk!r}") from None
        g = digital_image(points)
        params = {"generator": "digital", "points": [list(p) for p in points]}
        seed = None
    elif args.generator == "figure":
        g = figure_digraph(args.which)
        params = {"generator": "figure", "which": args.which}
        seed = None
    else:
        g = random_digraph(args.n, args.p, args.seed)
        params = {"generator": "random", "n": args.n, "p": args.p, "seed": args.seed}
        seed = args.seed
    return _digraph_doc(g), _digest(params), seed


def _apply_reduced(betti, reduced):
    if reduced and betti:
        betti = [betti[0] - 1] + betti[1:]
    return betti


def _run_homology(args, kind, obj):
    coeff = _parse_coeff(args.coeff)
    k = _complex_of(kind, obj, args.max_dim)
    if coeff == "z":
        result = homology_integer(k, reduced=args.reduced)
        groups = _groups_json(result.groups)
        truncated = result.truncated
    else:
        betti = _apply_reduced(homology_field(k, coeff), args.reduced)
        groups = [
            {"dim": n, "betti": b, "torsion": []} for n, b in enumerate(betti)
        ]
        truncated = k.truncated
    return {
        "coefficients": args.coeff.lower(),
        "groups": groups,
        "reduced": bool(args.reduced),
        "truncated": truncated,
    }


def _subset_subcomplex(k, subset_text):
    subset = _parse_subset(subset_text)
    vertex_ids = {s[0] for s in k.by_dimension[0]} if k.by_dimension else set()
    for v in subset:
        if v not in vertex_ids:
            raise InputError(f"subset vertex {v} is not a vertex of the complex")
    return subset, restrict_to(k, subset)


def _run_pair(args, kind, obj):
    k = _complex_of(kind, obj)
    subset, sub = _subset_subcomplex(k, args.subset)
    result = relative_homology(k, sub)
    return {"subset": list(subset), "groups": _groups_json(result.groups)}


def _run_les(args, kind, obj):
    coeff = _parse_coeff(args.coeff, allow_integer=False)
    k = _complex_of(kind, obj)
    subset, sub = _subset_subcomplex(k, args.subset)
    report = les_exactness_check(k, sub, coeff)
    nodes = [
        {
            "name": n.name,
            "dim": n.dim,
            "rank_in": n.rank_in,
            "rank_out": n.rank_out,
            "exact": n.exact,
        }
        for n in report.nodes
    ]
    return {
        "coefficients": report.field,
        "subset": list(subset),
        "nodes": nodes,
        "exact": report.exact,
    }


def _run_pi1(args, kind, obj):
    k = _complex_of(kind, obj)
    pres = pi1_presentation(k, args.basepoint)
    ab = abelianization(pres)
    return {
        "basepoint": args.basepoint,
        "generators": list(pres.generators),
        "relators": [list(w) for w in pres.relators],
        "abelianization": {"betti": ab.betti, "torsion": list(ab.torsion)},
    }


def _run_fx_certify(args, kind, obj):
    g = _require_digraph(kind, obj)
    k = build_complex(g)
    rep = continuity_certificate(k, g)
    counterexample = None
    if rep.counterexample is not None:
        s, tau, v, target = rep.counterexample
        counterexample = {
            "simplex": list(s),
            "tie": list(tau),
            "vertex": v,
            "target": target,
        }
    return {
        "passed": rep.passed,
        "simplices": rep.simplices,
        "checks": rep.checks,
        "counterexample": counterexample,
    }


def _run_fx_sample(args, kind, obj):
    g = _require_digraph(kind, obj)
    k = build_complex(g)
    delta = _parse_fraction(args.delta)
    rep = sampled_continuity_check(k, g, args.samples, delta, args.seed)
    failures = [
        {
            "index": f.index,
            "carrier": list(f.carrier),
            "base": f.base_value,
            "perturbed": f.perturbed_value,
            "pass_delta": None if f.pass_delta is None else str(f.pass_delta),
        }
        for f in rep.failures
    ]
    return {
        "samples": rep.samples,
        "delta": str(rep.delta),
        "checked": rep.checked,
        "failure_count": rep.failure_count,
        "failure_rate": str(rep.failure_rate),
        "failures": failures,
    }


def _emit(report, out_path, stdout):
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run_command(argv, stdin=None, stdout=None):
    """Execute one subcommand; returns the report written to the stream."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    args = _build_parser().parse_args(argv)
    command = " ".join(argv)
    seed = None
    if args.command == "gen":
        extra, digest, seed = _run_gen(args)
    else:
        kind, obj, doc = _load_input(args, stdin)
        digest = _digest(doc)
        if args.command == "complex":
            g = _require_digraph(kind, obj)
            extra = _complex_doc(build_complex(g, args.max_dim))
        elif args.command == "homology":
            extra = _run_homology(args, kind, obj)
        elif args.command == "pair":
            extra = _run_pair(args, kind, obj)
        elif args.command == "les-check":
            extra = _run_les(args, kind, obj)
        elif args.command == "pi1":
            extra = _run_pi1(args, kind, obj)
        elif args.command == "fx-certify":
            extra = _run_fx_certify(args, kind, obj)
        elif args.command == "fx-sample":
            extra = _run_fx_sample(args, kind, obj)
            seed = args.seed
        else:  # pragma: no cover - argparse rejects unknown commands
            raise InputError(f"unknown command {args.command!r}")
    report = {
        "schema": SCHEMA,
        "command": command,
        "input_digest": digest,
        "tool": {"name": "dvrhom", "version": __version__},
    }
    if seed is not None:
        report["seed"] = seed
    report.update(extra)
    _emit(report, getattr(args, "out", None), stdout)
    return report


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        run_command(argv)
    except InputError as exc:
        error = {
            "schema": SCHEMA,
            "command": " ".join(argv),
            "error": {"message": str(exc)},
        }
        sys.stdout.write(json.dumps(error, sort_keys=True, indent=2) + "\n")
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
