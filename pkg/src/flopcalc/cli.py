"""Command-line entry point: `flopcalc <subcommand> ...`.

Subcommands: catalog, gb, nf, hypersurface, mf, specialize, superpotential,
verify-rep, contraction, gv.  Exit codes: 0 success, 1 domain error,
2 budget exhaustion, 3 usage or parse error.

Output is human-readable text by default; `--format records` emits the
line-delimited structured form: a `schema: 1` header followed by
`key: value` lines, with each logical record introduced by `record: <kind>`.
Identical inputs and flags produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .catalog import (
    CatalogError,
    LENGTH2_CHARTS,
    builtins,
    catalog_names,
    catalog_presentation,
    universal_flopping_algebra,
    verify_invariants,
)
from .coeff import CoeffError, DivisionByZeroError, ParamRing, format_poly, parse_poly
from .contraction import ContractionError, contraction_report, gv_invariants
from .flops import (
    PipelineError,
    Representation,
    TruncationInsufficientError,
    hypersurface,
    matrix_factorization,
    specialize,
    verify_representation,
    verify_superpotential,
)
from .ncgb import Budget, BudgetExceededError, normal_form, truncated_groebner
from .pathalg import ParseError, PathAlgebraError, format_presentation, parse_element, parse_presentation

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_BUDGET = 2
EXIT_USAGE = 3

HEAVY_LENGTHS = (4, 5, 6)


class _Out:
    """Collects either text lines or structured records deterministically."""

    def __init__(self, structured: bool):
        self.structured = structured
        self.lines: List[str] = ["schema: 1"] if structured else []

    def record(self, kind: str):
        if self.structured:
            self.lines.append("record: %s" % kind)

    def field(self, key: str, value):
        if self.structured:
            self.lines.append("%s: %s" % (key, value))

    def text(self, line: str = ""):
        if not self.structured:
            self.lines.append(line)

    def both(self, key: str, value):
        if self.structured:
            self.field(key, value)
        else:
            self.text("%s: %s" % (key, value))

    def emit(self):
        sys.stdout.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _load_presentation(args):
    if getattr(args, "builtin", None):
        return catalog_presentation(args.builtin)
    if getattr(args, "infile", None):
        with open(args.infile, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    raise ParseError("one of --in or --builtin is required")


def _budget(args) -> Budget:
    return Budget(args.budget) if getattr(args, "budget", None) else Budget()


def _require_heavy(args, length: int):
    if length in HEAVY_LENGTHS and not args.heavy:
        raise PipelineError(
            "length %d pipelines are heavy (minutes to hours of exact arithmetic); "
            "re-run with --heavy to proceed" % length
        )


def _pipeline_source(args):
    if getattr(args, "length", None):
        entry = universal_flopping_algebra(args.length)
        _require_heavy(args, args.length)
        return entry
    if getattr(args, "builtin", None):
        b = builtins().get(args.builtin)
        if b is None or b.xyz is None:
            raise CatalogError("builtin %r has no pipeline data" % args.builtin)
        return b
    raise ParseError("one of --length or --builtin is required")


# -- subcommand implementations ----------------------------------------------

def cmd_catalog(args, out: _Out):
    if args.action == "list":
        out.record("catalog")
        for name in catalog_names():
            if out.structured:
                out.field("name", name)
            else:
                out.text(name)
        return
    pres = catalog_presentation(args.name)
    text = format_presentation(pres)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.both("written", args.out)
    else:
        sys.stdout.write(text)


def cmd_gb(args, out: _Out):
    pres = _load_presentation(args)
    degree = args.degree or pres.gb_degree
    if degree is None:
        raise ParseError("--degree is required (presentation records no default)")
    gb = truncated_groebner(pres, None, degree, _budget(args))
    out.record("groebner")
    out.both("rules", len(gb.rules))
    out.both("complete", "true" if gb.complete else "false")
    if out.structured:
        for line in gb.serialize().splitlines():
            out.field("rule" if "->" in line else "header", line)
    else:
        out.text(gb.serialize().rstrip("\n"))


def cmd_nf(args, out: _Out):
    pres = _load_presentation(args)
    degree = args.degree or pres.gb_degree
    if degree is None:
        raise ParseError("--degree is required (presentation records no default)")
    budget = _budget(args)
    gb = truncated_groebner(pres, None, degree, budget)
    elem = parse_element(args.element, pres.quiver, pres.params)
    nf = normal_form(elem, gb, budget)
    out.record("normal-form")
    out.both("input", args.element)
    out.both("normal_form", nf.format(gb.order))


def cmd_hypersurface(args, out: _Out):
    source = _pipeline_source(args)
    basis = "nice" if args.nice_basis else "raw"
    hyp = hypersurface(source, gb_degree=args.degree, basis=basis, budget=_budget(args))
    out.record("hypersurface")
    out.both("basis", basis)
    out.both("variables", ", ".join(hyp.ring.names))
    out.both("P", format_poly(hyp.P))
    out.both("g", format_poly(hyp.g))
    out.both("equation", "f = %s" % format_poly(hyp.equation))


def cmd_mf(args, out: _Out):
    source = _pipeline_source(args)
    basis = "nice" if args.nice_basis else "raw"
    mf = matrix_factorization(source, gb_degree=args.degree, basis=basis, budget=_budget(args))
    out.record("matrix-factorization")
    out.both("size", mf.size)
    out.both("identity", "C^2 = g*I exact" if mf.check() else "FAILED")
    out.both("g", format_poly(mf.g))
    if not args.check_only:
        for i, row in enumerate(mf.C):
            out.both("row%d" % i, "[" + ", ".join(format_poly(e) for e in row) + "]")


def _parse_map_file(path: str):
    ring_names = None
    entries = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("ring:"):
                ring_names = [n.strip() for n in line[5:].split(",") if n.strip()]
                continue
            if "=" not in line:
                raise ParseError("bad map line %r" % line, line=lineno)
            name, value = line.split("=", 1)
            entries.append((name.strip(), value.strip()))
    return ring_names, entries


def cmd_specialize(args, out: _Out):
    pres = _load_presentation(args)
    ring_names, entries = _parse_map_file(args.map)
    if ring_names is None:
        keep = [n for n in pres.params.names if n not in {k for k, _ in entries}]
        ring_names = keep
    ring = ParamRing(ring_names)
    mapping = {k: parse_poly(v, ring) for k, v in entries}
    result = specialize(pres, mapping, ring)
    text = format_presentation(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.both("written", args.out)
    else:
        sys.stdout.write(text)


def cmd_superpotential(args, out: _Out):
    if args.builtin:
        b = builtins()[args.builtin]
        if b.superpotential is None:
            raise CatalogError("builtin %r records no superpotential" % args.builtin)
        pres = b.presentation()
        phi = b.superpotential_element()
    else:
        pres = _load_presentation(args)
        with open(args.phi, "r", encoding="utf-8") as fh:
            phi = parse_element(fh.read().strip(), pres.quiver, pres.params)
    report = verify_superpotential(pres, phi, gb_degree=args.degree, budget=_budget(args))
    out.record("superpotential")
    out.both("pass", "true" if report.ok else "false")
    for name, ok, detail in report.checks:
        out.both("check", "%s: %s%s" % (name, "ok" if ok else "FAIL",
                                        (" (%s)" % detail) if detail and not ok else ""))


def _parse_rep_file(path: str, alg):
    ring_names: List[str] = []
    dims = {}
    param_map = {}
    matrices = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("ring:"):
                ring_names = [n.strip() for n in line[5:].split(",") if n.strip()]
            elif line.startswith("dims:"):
                for part in line[5:].split(","):
                    v, n = part.split("=")
                    dims[v.strip()] = int(n)
            elif line.startswith("map:"):
                name, value = line[4:].split("=", 1)
                param_map[name.strip()] = value.strip()
            elif line.startswith("matrix"):
                head, value = line.split(":", 1)
                name = head[len("matrix"):].strip()
                value = value.strip()
                if not (value.startswith("[") and value.endswith("]")):
                    raise ParseError("matrix rows must be bracketed", line=lineno)
                rows = [r.strip() for r in value[1:-1].split(";")]
                matrices[name] = [[e.strip() for e in r.split(",")] for r in rows]
            else:
                raise ParseError("unknown rep line %r" % line, line=lineno)
    ring = ParamRing(ring_names)
    return Representation(alg, dims, matrices, ring, param_map)


def cmd_verify_rep(args, out: _Out):
    pres = _load_presentation(args)
    if args.chart:
        chart = LENGTH2_CHARTS[args.chart]
        rep = Representation(pres, chart["dims"], chart["matrices"],
                             ParamRing(chart["ring"]), chart["param_map"])
    else:
        rep = _parse_rep_file(args.rep, pres)
    report = verify_representation(pres, rep)
    out.record("verify-rep")
    out.both("pass", "true" if report.ok else "false")
    for name, ok, detail in report.checks:
        out.both("check", "%s: %s%s" % (name, "ok" if ok else "FAIL",
                                        (" (%s)" % detail) if detail and not ok else ""))


def cmd_contraction(args, out: _Out):
    used_builtin = getattr(args, "builtin", None)
    if used_builtin:
        b = builtins().get(used_builtin)
        if b is not None and b.eliminated:
            # the family parameters are units of the coefficient field; the
            # contraction algebra lives in the parameter-eliminated twin
            args.builtin = b.eliminated
    pres = _load_presentation(args)
    vertex = args.vertex if args.vertex is not None else "0"
    report = contraction_report(pres, vertex, length=args.length, budget=_budget(args))
    out.record("contraction")
    if used_builtin and used_builtin != args.builtin:
        out.both("presentation", "%s (parameter-eliminated form of %s)"
                 % (args.builtin, used_builtin))
    out.both("dim", report.dim)
    out.both("dim_ab", report.dim_ab)
    out.both("gv", " ".join(str(t) for t in report.gv_solutions) or "none")


def cmd_gv(args, out: _Out):
    sols = gv_invariants(args.dim, args.dim_ab, args.length)
    out.record("gv")
    out.both("solutions", " ".join(str(t) for t in sols) or "none")


def cmd_invariants(args, out: _Out):
    entry = universal_flopping_algebra(args.length)
    report = verify_invariants(entry)
    out.record("invariants")
    out.both("pass", "true" if report.ok else "false")
    out.both("checks", len(report.checks))
    for name, detail in report.failures():
        out.both("failure", "%s %s" % (name, detail))


# -- argument parsing ---------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flopcalc",
                description="noncommutative computer algebra for threefold flops")
    p.add_argument("--format", choices=("text", "records"), default="text",
                   help="output format (records = line-delimited, schema: 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, pipeline=False, presentation=False):
        sp.add_argument("--budget", type=int, default=None,
                        help="reduction step budget (default env FLOPCALC_MAX_STEPS or 10^6)")
        sp.add_argument("--degree", type=int, default=None, help="truncation degree override")
        if pipeline:
            sp.add_argument("--length", type=int, choices=range(1, 7), default=None)
            sp.add_argument("--builtin", default=None)
            sp.add_argument("--nice-basis", action="store_true",
                            help="apply the recorded change of basis (length 2)")
            sp.add_argument("--raw", action="store_true", help="raw parameters (default)")
            sp.add_argument("--heavy", action="store_true",
                            help="allow the heavy length 4-6 pipelines")
        if presentation:
            sp.add_argument("--in", dest="infile", default=None, help="presentation file")
            sp.add_argument("--builtin", default=None, help="catalog name instead of a file")

    sp = sub.add_parser("catalog", help="list or show built-in presentations")
    sp.add_argument("action", choices=("list", "show"))
    sp.add_argument("name", nargs="?", default=None)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("gb", help="truncated Groebner basis of a presentation")
    common(sp, presentation=True)
    sp.set_defaults(func=cmd_gb)

    sp = sub.add_parser("nf", help="normal form of an element")
    common(sp, presentation=True)
    sp.add_argument("--element", required=True)
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("hypersurface", help="hypersurface equation of the center")
    common(sp, pipeline=True)
    sp.set_defaults(func=cmd_hypersurface)

    sp = sub.add_parser("mf", help="matrix factorization of the hypersurface")
    common(sp, pipeline=True)
    sp.add_argument("--check-only", action="store_true")
    sp.set_defaults(func=cmd_mf)

    sp = sub.add_parser("specialize", help="push a presentation along a parameter map")
    common(sp, presentation=True)
    sp.add_argument("--map", required=True, help="map file: lines `name = polynomial`")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_specialize)

    sp = sub.add_parser("superpotential", help="verify a superpotential against relations")
    common(sp, presentation=True)
    sp.add_argument("--phi", default=None, help="file with the potential element")
    sp.set_defaults(func=cmd_superpotential)

    sp = sub.add_parser("verify-rep", help="evaluate relations on a representation")
    common(sp, presentation=True)
    sp.add_argument("--rep", default=None, help="representation file")
    sp.add_argument("--chart", choices=tuple(sorted(LENGTH2_CHARTS)), default=None,
                    help="built-in length-2 moduli chart")
    sp.set_defaults(func=cmd_verify_rep)

    sp = sub.add_parser("contraction", help="contraction algebra report")
    common(sp, presentation=True)
    sp.add_argument("--vertex", default=None)
    sp.add_argument("--length", type=int, default=None)
    sp.set_defaults(func=cmd_contraction)

    sp = sub.add_parser("gv", help="enumerate Gopakumar-Vafa tuples")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--dim-ab", dest="dim_ab", type=int, required=True)
    sp.add_argument("--length", type=int, default=None)
    sp.set_defaults(func=cmd_gv)

    sp = sub.add_parser("invariants", help="Weyl-invariance report for a catalog length")
    sp.add_argument("--length", type=int, choices=range(1, 7), required=True)
    sp.set_defaults(func=cmd_invariants)

    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ParseError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return EXIT_USAGE
    out = _Out(structured=(args.format == "records"))
    try:
        args.func(args, out)
    except (ParseError, FileNotFoundError) as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        sys.stderr.write("budget exhausted: %s\n" % exc)
        return EXIT_BUDGET
    except (CatalogError, CoeffError, ContractionError, DivisionByZeroError,
            PathAlgebraError, PipelineError, TruncationInsufficientError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_DOMAIN
    out.emit()
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
