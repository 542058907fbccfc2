"""Command-line front door.

Machine-readable results go to stdout (JSON by default, stable key order);
diagnostics go to stderr.  Exit codes: 0 success or property confirmed,
1 violation found (or batch errors), 2 usage error, 3 capacity error.

Graph sources accepted anywhere a graph argument appears:

* a graph6 string, optionally with the '>>graph6<<' header;
* ``file:PATH``     -- edge-list text if the file starts with an "n m"
                       header, otherwise the first line as graph6;
* a constructor expression: ``h:N,A``  ``l:N,S``  ``clique_join:S,[n1,n2,...]``
  ``complete:N``  ``cycle:N``  ``path:N``  ``kst:S,T``  ``empty:N``  ``petersen``
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, exact, factors, formats, graphs, harness, spectral

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def parse_graph_source(src: str) -> graphs.Graph:
    if src.startswith("file:"):
        text = Path(src[5:]).read_text()
        head = text.lstrip().split("\n", 1)[0].split()
        if len(head) == 2 and all(tok.isdigit() for tok in head):
            return formats.parse_edge_list(text)
        return formats.parse_graph6(text.lstrip().split("\n", 1)[0])
    if ":" in src or src == "petersen":
        name, _, arg = src.partition(":")
        try:
            if name == "h":
                n, a = (int(x) for x in arg.split(","))
                return graphs.h_extremal(n, a)
            if name == "l":
                n, s = (int(x) for x in arg.split(","))
                return graphs.l_graph(n, s)
            if name == "clique_join":
                pieces = arg.split(",", 1)
                s = int(pieces[0])
                parts_text = pieces[1].strip()
                if not (parts_text.startswith("[") and parts_text.endswith("]")):
                    raise UsageError(f"clique_join parts must be [..], got {parts_text!r}")
                parts = [int(x) for x in parts_text[1:-1].split(",") if x.strip()]
                return graphs.clique_join(s, parts)
            if name == "complete":
                return graphs.complete(int(arg))
            if name == "cycle":
                return graphs.cycle(int(arg))
            if name == "path":
                return graphs.path(int(arg))
            if name == "kst":
                s, t = (int(x) for x in arg.split(","))
                return graphs.complete_bipartite(s, t)
            if name == "empty":
                return graphs.empty(int(arg))
            if name == "petersen":
                return graphs.petersen()
        except (ValueError, IndexError) as err:
            raise UsageError(f"bad constructor expression {src!r}: {err}") from err
        raise UsageError(f"unknown constructor {name!r}")
    return formats.parse_graph6(src)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="specfactor", description=__doc__.split("\n\n")[0])
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p_factor = sub.add_parser("factor", help="parity-factor decisions")
    fsub = p_factor.add_subparsers(dest="sub", required=True)
    p_check = fsub.add_parser("check", help="decide whether a parity factor exists")
    p_check.add_argument("--graph", required=True)
    p_check.add_argument("-a", type=int, required=True)
    p_check.add_argument("-b", type=int, required=True)
    p_check.add_argument("--method", choices=["lovasz", "matching", "enum"], default="matching")
    p_check.add_argument("--certificate", action="store_true", help="include the deficiency certificate")
    p_check.add_argument("--format", choices=["json", "text"], default="json")

    p_spec = sub.add_parser("spectral", help="spectral computations")
    ssub = p_spec.add_subparsers(dest="sub", required=True)
    for name, helptext in [
        ("radius", "certified spectral-radius enclosure"),
        ("spectrum", "all adjacency eigenvalues (descending)"),
        ("charpoly", "exact integer characteristic polynomial"),
    ]:
        p = ssub.add_parser(name, help=helptext)
        p.add_argument("--graph", required=True)
        p.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
        p.add_argument("--format", choices=["json", "text"], default="json")
    p_cmp = ssub.add_parser("compare", help="order two spectral radii (exact on ties)")
    p_cmp.add_argument("--graph", required=True)
    p_cmp.add_argument("--against", required=True)

    p_con = sub.add_parser("construct", help="emit graph6 for a named family")
    csub = p_con.add_subparsers(dest="sub", required=True)
    p_h = csub.add_parser("h", help="clique joined to a solo vertex plus a clique")
    p_h.add_argument("--n", type=int, required=True)
    p_h.add_argument("--a", type=int, required=True)
    p_l = csub.add_parser("l", help="clique joined to a big clique plus three singles")
    p_l.add_argument("--n", type=int, required=True)
    p_l.add_argument("--s", type=int, required=True)
    p_cj = csub.add_parser("clique-join", help="K_s joined to a union of cliques")
    p_cj.add_argument("--s", type=int, required=True)
    p_cj.add_argument("--parts", required=True, help="comma-separated clique orders, e.g. 4,1,1")

    p_ver = sub.add_parser("verify", help="verification sweeps")
    vsub = p_ver.add_subparsers(dest="sub", required=True)
    p_thm = vsub.add_parser("theorem", help="scan for counterexamples to the radius condition")
    p_thm.add_argument("-a", type=int, required=True)
    p_thm.add_argument("-b", type=int, required=True)
    p_thm.add_argument("-n", type=int, required=True)
    p_thm.add_argument("--mode", choices=["exhaustive", "sample"], default="exhaustive")
    p_thm.add_argument("--seed", type=int, default=0)
    p_thm.add_argument("--samples", type=int, default=10_000)
    p_thm.add_argument("--jobs", type=int, default=1)
    p_thm.add_argument("--no-runtime", action="store_true", help="omit the runtime field")
    p_lem = vsub.add_parser("lemma", help="lemma sweeps")
    p_lem.add_argument("--which", choices=["nofactor", "zhw", "spectral"], required=True)
    p_lem.add_argument("-a", type=int)
    p_lem.add_argument("-b", type=int)
    p_lem.add_argument("--n-list", help="comma-separated orders (nofactor)")
    p_lem.add_argument("--s", type=int, help="clique order (zhw)")
    p_lem.add_argument("--n", type=int, help="total order (zhw)")
    p_lem.add_argument("--q-max", type=int, default=4)
    p_lem.add_argument("--s-max", type=int, default=8, help="largest clique order (spectral)")
    p_lem.add_argument("--n-width", type=int, default=40, help="orders per clique size (spectral)")
    p_lem.add_argument("--l7-max", type=int, default=60, help="largest order of the companion family")
    p_lem.add_argument("--format", choices=["json", "csv"], default="json")
    p_lem.add_argument("--no-runtime", action="store_true")

    p_batch = sub.add_parser("batch", help="one JSON record per graph6 line of a file")
    p_batch.add_argument("--file", required=True)
    p_batch.add_argument("--op", choices=["radius", "spectrum", "charpoly", "check"], required=True)
    p_batch.add_argument("-a", type=int)
    p_batch.add_argument("-b", type=int)
    p_batch.add_argument("--method", choices=["lovasz", "matching", "enum"], default="matching")
    p_batch.add_argument("--tol", type=float, default=spectral.DEFAULT_TOL)
    return top


def _factor_decider(method: str):
    return {
        "lovasz": factors.decide_lovasz,
        "matching": factors.decide_matching,
        "enum": factors.decide_enum,
    }[method]


def _run_factor_check(args) -> int:
    g = parse_graph_source(args.graph)
    spec = factors.FactorSpec(args.a, args.b)
    method = args.method
    if args.certificate and method != "lovasz":
        method = "lovasz"
        print("note: certificates come from the criterion scan; using --method lovasz", file=sys.stderr)
    res = _factor_decider(method)(g, spec)
    out = res.to_json()
    if not args.certificate:
        out.pop("certificate", None)
    if args.format == "text":
        line = f"{out['decision']} ({method})"
        if "certificate" in out:
            c = out["certificate"]
            line += f" S={c['S']} T={c['T']} eta={c['eta']} q={c['q']}"
        sys.stdout.write(line + "\n")
    else:
        _emit(out)
    return EXIT_OK


def _run_spectral(args) -> int:
    g = parse_graph_source(args.graph)
    if args.sub == "radius":
        enc = spectral.spectral_radius(g, args.tol)
        if args.format == "text":
            sys.stdout.write(f"[{enc.lo:.12g}, {enc.hi:.12g}] ({enc.method}, {enc.iterations} iterations)\n")
        else:
            _emit({"lo": enc.lo, "hi": enc.hi, "method": enc.method, "iterations": enc.iterations})
    elif args.sub == "spectrum":
        spec = spectral.full_spectrum(g, args.tol)
        if args.format == "text":
            sys.stdout.write(" ".join(f"{v:.10g}" for v in spec.values) + "\n")
        else:
            _emit({"values": list(spec.values), "tol": spec.tol})
    elif args.sub == "charpoly":
        poly = exact.char_poly_exact(g)
        if args.format == "text":
            sys.stdout.write(poly.pretty() + "\n")
        else:
            _emit({"coeffs_low_to_high": list(poly.coeffs), "pretty": poly.pretty()})
    else:
        h = parse_graph_source(args.against)
        res = spectral.compare_radius(g, h)
        _emit({"order": res.order.name, "method": res.method})
    return EXIT_OK


def _run_construct(args) -> int:
    if args.sub == "h":
        g = graphs.h_extremal(args.n, args.a)
    elif args.sub == "l":
        g = graphs.l_graph(args.n, args.s)
    else:
        parts = [int(x) for x in args.parts.split(",") if x.strip()]
        g = graphs.clique_join(args.s, parts)
    sys.stdout.write(formats.write_graph6(g) + "\n")
    return EXIT_OK


def _run_verify(args) -> int:
    if args.sub == "theorem":
        report = harness.verify_main_theorem(
            args.a, args.b, args.n, mode=args.mode, seed=args.seed, samples=args.samples, jobs=args.jobs
        )
        _emit(report.to_json(include_runtime=not args.no_runtime))
        return EXIT_VIOLATION if report.violations else EXIT_OK
    which = args.which
    if which == "nofactor":
        if args.a is None or args.b is None or not args.n_list:
            raise UsageError("nofactor needs -a, -b and --n-list")
        n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
        report = harness.verify_lemma_no_factor(args.a, args.b, n_list)
    elif which == "zhw":
        if args.s is None or args.n is None:
            raise UsageError("zhw needs --s and --n")
        report = harness.verify_zhw(args.s, args.n, args.q_max)
    else:
        report = harness.verify_spectral_lemmas(
            s_values=range(1, args.s_max + 1),
            n_width=args.n_width,
            small_join_ns=range(4, args.l7_max + 1),
        )
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        _emit(report.to_json(include_runtime=not args.no_runtime))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _run_batch(args) -> int:
    lines = Path(args.file).read_text().splitlines()
    had_error = False
    for line in lines:
        line = line.strip()
        if not line:
            continue
        record: dict = {"input": line}
        try:
            g = formats.parse_graph6(line)
            if args.op == "radius":
                enc = spectral.spectral_radius(g, args.tol)
                record.update(lo=enc.lo, hi=enc.hi)
            elif args.op == "spectrum":
                record.update(values=list(spectral.full_spectrum(g, args.tol).values))
            elif args.op == "charpoly":
                record.update(coeffs_low_to_high=list(exact.char_poly_exact(g).coeffs))
            else:
                if args.a is None or args.b is None:
                    raise UsageError("batch check needs -a and -b")
                res = _factor_decider(args.method)(g, factors.FactorSpec(args.a, args.b))
                record.update(res.to_json())
        except UsageError:
            raise
        except Exception as err:  # malformed line: report and keep going
            record["error"] = str(err)
            had_error = True
        _emit(record)
    return EXIT_VIOLATION if had_error else EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "factor":
            return _run_factor_check(args)
        if args.command == "spectral":
            return _run_spectral(args)
        if args.command == "construct":
            return _run_construct(args)
        if args.command == "verify":
            return _run_verify(args)
        return _run_batch(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (factors.CapacityError, graphs.GraphSizeError) as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except (graphs.GraphError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
