"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
import warnings
from pathlib import Path
from typing import Iterable, Optional

from .canon import canonize
from .catalog import run_catalog
from .classify import classify_family, orbits_under_point_relabeling, sample_classes
from .construct1 import (
    C1Options,
    GroupedDesign,
    NonInjectiveMapWarning,
    build_c1,
    enumerate_b1_relaxed,
    expected_params_c1,
)
from .construct2 import ConstructionError, antiflag_digraph, blow_up, build_d1, build_d2, expected_params_c2
from .designs import (
    ParameterError,
    PointwiseFamily,
    chunked_pointwise_family,
    enumerate_pointwise_partitions,
    projective_plane_family,
)
from .formats import FIXTURE_NAMES, FormatError, load_fixture, parse_graphs, read_graph, write_graph, write_stream
from .graphs import Digraph, StructuralError, VerificationError, verify_dsrg
from .perms import recognize_group
from .schemes import SchemeError, feasible_fusions, orbital_scheme, relation_decomposition

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
JOBS_ENV = "DSRG_JOBS"
CANON_LIMIT = 400


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


# -- reports -------------------------------------------------------------------

def graph_report(g: Digraph, argv: list[str], parameters: dict, expected=None, canon: bool = True,
                 started: Optional[float] = None) -> tuple[dict, bool]:
    """RunReport: command, parameters, verifier output, certificate, Aut, timing."""
    t0 = time.perf_counter()
    report: dict = {"command": argv, "parameters": parameters, "vertices": g.n}
    ok = True
    try:
        p = verify_dsrg(g)
        report["verify"] = {"ok": True, "params": list(p.as_tuple()), "advisories": list(p.advisories)}
        if expected is not None:
            report["verify"]["expected"] = list(expected.as_tuple())
            if p != expected:
                ok = False
                report["verify"]["ok"] = False
                report["verify"]["error"] = "parameters differ from the closed form"
    except VerificationError as exc:
        ok = False
        report["verify"] = {"ok": False, "error": str(exc), "witness": exc.witness}
    except StructuralError as exc:
        ok = False
        report["verify"] = {"ok": False, "error": str(exc), "witness": {"kind": "structure"}}
    t1 = time.perf_counter()
    if canon and g.n <= CANON_LIMIT:
        res = canonize(g)
        report["certificate"] = res.hex
        report["aut_order"] = res.automorphisms.order()
        report["aut_name"] = recognize_group(res.automorphisms)
    t2 = time.perf_counter()
    report["timing"] = {
        "verify_s": round(t1 - t0, 4),
        "canon_s": round(t2 - t1, 4),
    }
    if started is not None:
        report["timing"]["total_s"] = round(t2 - started, 4)
    return report, ok


_FLAT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def _emit(obj, fh=None):
    """Indented JSON with flat integer lists kept on one line."""
    fh = fh or sys.stdout
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    fh.write(text + "\n")


def _output_graph(g: Digraph, args) -> bool:
    """Write the graph; True when it went to stdout (report then goes to stderr)."""
    if args.out:
        write_graph(g, args.out, args.format)
        return False
    write_stream([g], sys.stdout, args.format)
    return True


# -- construct -----------------------------------------------------------------

def _c1(args, argv) -> int:
    started = time.perf_counter()
    design = None
    if args.input:
        data = json.loads(Path(args.input).read_text())
        if "families" in data:
            fam = PointwiseFamily.from_json(data)
            g = antiflag_digraph(fam)
            if args.m > 1:
                g = blow_up(g, "d1", args.m)
            to_stdout = _output_graph(g, args)
            rep, ok = graph_report(g, argv, {"input": args.input, "m": args.m}, None, not args.no_canon, started)
            _emit(rep, sys.stderr if to_stdout else sys.stdout)
            return EXIT_OK if ok else EXIT_VERIFY
        design = GroupedDesign.from_json(data)
    if args.r is None or args.q is None:
        if design is None:
            raise UsageError("construct c1 needs --r and --q (or --input)")
        args.r, args.q, args.a, args.b = design.r, design.q, design.a, design.b
    if args.enumerate:
        if args.mode != "b1" or args.pairing != "relaxed":
            raise UsageError("--enumerate is available for --mode b1 --pairing relaxed")
        count = 0
        bad = 0
        expected = expected_params_c1("b1", args.r, args.q)
        fh = open(args.out, "w") if args.out else sys.stdout
        try:
            for _, g in enumerate_b1_relaxed(args.r, args.q):
                if verify_dsrg(g) != expected:
                    bad += 1
                write_stream([g], fh, args.format)
                count += 1
        finally:
            if args.out:
                fh.close()
        summary = {"command": argv, "graphs": count, "params": list(expected.as_tuple()), "failed": bad,
                   "timing": {"total_s": round(time.perf_counter() - started, 4)}}
        _emit(summary, sys.stderr if not args.out else sys.stdout)
        return EXIT_OK if bad == 0 else EXIT_VERIFY
    opts = C1Options(args.mode, args.r, args.q, args.a, args.b, args.pairing,
                     args.choices, args.pi, design)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NonInjectiveMapWarning)
        g = build_c1(opts)
    if args.m > 1:
        g = blow_up(g, "d1", args.m)
    expected = expected_params_c1(args.mode, args.r, args.q, opts.a, opts.b, args.m)
    params = {"construction": "c1", "mode": args.mode, "r": args.r, "q": args.q, "a": opts.a, "b": opts.b,
              "m": args.m, "pairing": args.pairing}
    to_stdout = _output_graph(g, args)
    rep, ok = graph_report(g, argv, params, expected, not args.no_canon, started)
    if caught:
        rep["warnings"] = [str(w.message) for w in caught]
    _emit(rep, sys.stderr if to_stdout else sys.stdout)
    return EXIT_OK if ok else EXIT_VERIFY


def _c2(args, argv) -> int:
    started = time.perf_counter()
    expected = None
    if args.projective:
        fam = projective_plane_family(args.projective)
        params = {"construction": "c2", "source": f"PG(2,{args.projective})"}
    elif args.input:
        fam = PointwiseFamily.from_json(json.loads(Path(args.input).read_text()))
        params = {"construction": "c2", "input": args.input}
    else:
        if None in (args.n, args.s, args.l, args.d):
            raise UsageError("construct c2 needs --n --s --l --d, --projective or --input")
        fam = chunked_pointwise_family(args.n, args.s, args.l, args.d)
        params = {"construction": "c2", "n": args.n, "s": args.s, "l": args.l, "d": args.d}
    spl = fam.per_point_params
    if spl is not None:
        s, l, d = spl
        expected = expected_params_c2(fam.n_points, s, l, d, args.variant, args.m)
    g = build_d1(fam) if args.variant == "d1" else build_d2(fam)
    if args.m > 1:
        g = blow_up(g, args.variant, args.m)
    params.update({"variant": args.variant, "m": args.m})
    to_stdout = _output_graph(g, args)
    rep, ok = graph_report(g, argv, params, expected, not args.no_canon, started)
    _emit(rep, sys.stderr if to_stdout else sys.stdout)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_construct(args, argv) -> int:
    return _c1(args, argv) if args.which == "c1" else _c2(args, argv)


# -- verify / classify ---------------------------------------------------------

def _read_input(spec: str) -> list[Digraph]:
    if spec == "-":
        return list(parse_graphs(sys.stdin.read(), "<stdin>"))
    path = Path(spec)
    if spec in FIXTURE_NAMES and not path.exists():
        return [load_fixture(spec)]
    if path.is_dir():
        graphs = []
        for f in sorted(path.iterdir()):
            if f.name.endswith(".labels.json") or f.suffix not in (".txt", ".json", ".g01"):
                continue
            graphs.extend(parse_graphs(f.read_text(), str(f)))
        return graphs
    if not path.exists():
        raise UsageError(f"no such file: {spec}")
    if path.name.endswith(".json") or path.name.endswith(".txt"):
        graphs = list(parse_graphs(path.read_text(), str(path)))
        if len(graphs) == 1:
            return [read_graph(path)]  # picks up a label sidecar
        return graphs
    return list(parse_graphs(path.read_text(), str(path)))


def cmd_verify(args, argv) -> int:
    graphs = _read_input(args.file)
    if not graphs:
        raise UsageError("no graphs in input")
    status = EXIT_OK
    reports = []
    for g in graphs:
        rep, ok = graph_report(g, argv, {"input": args.file}, None, not args.no_canon)
        reports.append(rep)
        if not ok:
            status = EXIT_VERIFY
    _emit(reports[0] if len(reports) == 1 else reports)
    return status


def cmd_classify(args, argv) -> int:
    t0 = time.perf_counter()
    graphs = _read_input(args.source)
    rep = classify_family(graphs, jobs=args.jobs)
    out = rep.to_json()
    if not args.full:
        for c in out["classes"]:
            c.pop("members")
    out["command"] = argv
    out["timing"] = {"total_s": round(time.perf_counter() - t0, 4)}
    _emit(out)
    return EXIT_OK


# -- enumerate / orbits --------------------------------------------------------

def cmd_enumerate(args, argv) -> int:
    if args.sample:
        rep = sample_classes(args.n, args.s, args.l, args.sample, seed=args.seed, jobs=args.jobs)
        data = rep.to_json()
        data["command"] = argv
        _emit(data)
        return EXIT_OK
    fams = enumerate_pointwise_partitions(args.n, args.s, args.l)
    build = build_d1 if args.variant == "d1" else build_d2
    fh = open(args.out, "w") if args.out else sys.stdout
    count = 0
    try:
        for fam in fams:
            write_stream([build(fam)], fh, args.format)
            count += 1
    finally:
        if args.out:
            fh.close()
    _emit({"command": argv, "families": count}, sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_orbits(args, argv) -> int:
    if args.input:
        data = json.loads(Path(args.input).read_text())
        items = data if isinstance(data, list) else list(data.values()) if "families" not in data else [data]
        fams = [PointwiseFamily.from_json(x) for x in items]
        n = fams[0].n_points
    else:
        fams = list(enumerate_pointwise_partitions(args.n, args.s, args.l))
        n = args.n
    records = orbits_under_point_relabeling(fams, n)
    _emit({
        "command": argv,
        "families": len(fams),
        "orbits": [r.to_json() for r in records],
    })
    return EXIT_OK


# -- scheme --------------------------------------------------------------------

def cmd_scheme(args, argv) -> int:
    graphs = _read_input(args.graph)
    if len(graphs) != 1:
        raise UsageError("scheme needs exactly one graph")
    g = graphs[0]
    res = canonize(g)
    grp = res.automorphisms
    scheme = orbital_scheme(grp)
    dec = relation_decomposition(scheme, g)
    fusions = feasible_fusions(scheme)
    out = {
        "command": argv,
        "aut_order": grp.order(),
        "aut_name": recognize_group(grp),
        "scheme": scheme.to_json() if args.full else {
            "classes": scheme.c, "valencies": scheme.valencies(),
            "commutative": scheme.is_commutative(), "symmetric": scheme.is_symmetric(),
        },
        "graph_classes": sorted(dec) if isinstance(dec, frozenset) else dec,
        "fusions": [
            {"grouping": [list(x) for x in f.grouping], "classes": f.scheme.c, "symmetric": f.scheme.is_symmetric()}
            for f in fusions
        ],
    }
    if args.out:
        Path(args.out).write_text(scheme.to_text())
    _emit(out)
    return EXIT_OK


# -- catalog -------------------------------------------------------------------

def cmd_catalog(args, argv) -> int:
    results = run_catalog(include_sampling=args.sampling, jobs=args.jobs)
    for r in results:
        print(r.line())
        for note in r.notes:
            print(f"    note: {note}")
    if args.report:
        Path(args.report).write_text(json.dumps([r.to_json() for r in results], indent=2, ensure_ascii=False) + "\n")
    return EXIT_VERIFY if any(r.status == "FAIL" for r in results) else EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dsrg", description="Construct, verify and classify directed strongly regular graphs.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def out_opts(sp):
        sp.add_argument("--out", help="write the graph here instead of stdout")
        sp.add_argument("--format", choices=["digraph01", "json"], default="digraph01")
        sp.add_argument("--no-canon", action="store_true", help="skip certificate and automorphism group")

    c = sub.add_parser("construct", help="build a graph")
    csub = c.add_subparsers(dest="which", parser_class=_Parser)
    csub.required = True
    c1 = csub.add_parser("c1", help="grouped construction (general, b1 or a1 form)")
    c1.add_argument("--mode", choices=["general", "b1", "a1"], default="general")
    c1.add_argument("--r", type=int)
    c1.add_argument("--q", type=int)
    c1.add_argument("--a", type=int)
    c1.add_argument("--b", type=int)
    c1.add_argument("--m", type=int, default=1, help="m-copy blow-up")
    c1.add_argument("--pairing", choices=["strict", "relaxed"], default="strict")
    c1.add_argument("--choices", type=_int_list, help="relaxed pairing choice per point")
    c1.add_argument("--pi", type=_int_list, help="a1 part selection per point (values 1..q^(r-2))")
    c1.add_argument("--input", help="GroupedDesign or PointwiseFamily JSON")
    c1.add_argument("--enumerate", action="store_true", help="stream every relaxed b1 graph")
    out_opts(c1)
    c2 = csub.add_parser("c2", help="antiflag construction over per-point families")
    c2.add_argument("--n", type=int)
    c2.add_argument("--s", type=int)
    c2.add_argument("--l", type=int)
    c2.add_argument("--d", type=int)
    c2.add_argument("--variant", choices=["d1", "d2"], default="d1")
    c2.add_argument("--m", type=int, default=1)
    c2.add_argument("--projective", type=int, metavar="ORDER", help="use the projective plane of prime ORDER")
    c2.add_argument("--input", help="PointwiseFamily JSON")
    out_opts(c2)

    v = sub.add_parser("verify", help="check the DSRG identities")
    v.add_argument("file", help="graph file, directory, fixture name or - for stdin")
    v.add_argument("--no-canon", action="store_true")

    e = sub.add_parser("enumerate", help="all per-point partition families (d = 1), or a seeded sample")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--s", type=int, required=True)
    e.add_argument("--l", type=int, required=True)
    e.add_argument("--variant", choices=["d1", "d2"], default="d1")
    e.add_argument("--sample", type=int, help="number of random families; reports distinct certificates")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--jobs", type=int, default=_default_jobs())
    e.add_argument("--out")
    e.add_argument("--format", choices=["digraph01", "json"], default="digraph01")

    cl = sub.add_parser("classify", help="group graphs into isomorphism classes")
    cl.add_argument("source", help="directory, stream file or - for stdin")
    cl.add_argument("--jobs", type=int, default=_default_jobs())
    cl.add_argument("--full", action="store_true", help="include member indices")

    o = sub.add_parser("orbits", help="orbits of point relabelings on families")
    o.add_argument("--n", type=int)
    o.add_argument("--s", type=int)
    o.add_argument("--l", type=int)
    o.add_argument("--input", help="JSON family, list of families or name -> family map")

    s = sub.add_parser("scheme", help="orbital scheme of the automorphism group")
    s.add_argument("graph")
    s.add_argument("--out", help="write the relation matrix grid here")
    s.add_argument("--full", action="store_true", help="include relation matrix and intersection numbers")

    cat = sub.add_parser("catalog", help="recompute every reference value")
    cat.add_argument("--sampling", action="store_true", help="include the (n=7,s=2,l=3) sampling run (~30 s)")
    cat.add_argument("--jobs", type=int, default=_default_jobs())
    cat.add_argument("--report", help="write JSON results here")
    return p


COMMANDS = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "orbits": cmd_orbits,
    "scheme": cmd_scheme,
    "catalog": cmd_catalog,
}


def run(argv: Optional[Iterable[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "orbits" and not args.input and None in (args.n, args.s, args.l):
            raise UsageError("orbits needs --n --s --l or --input")
        return COMMANDS[args.command](args, ["dsrg"] + argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParameterError, ConstructionError, FormatError, SchemeError, KeyError, json.JSONDecodeError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else 0
    sys.exit(code)


if __name__ == "__main__":
    main()
