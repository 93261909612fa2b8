"""Command-line front end: ``fpoly <command> ...``.

Exit status: 0 on success, 1 when a checked claim or verification fails
(including a point rejected by ``member``/``qcheck``), 2 on usage, input
or cap errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from .chromatic import (
    COVER_MAXIMAL, EQUALITY_ALL, PreconditionError, bounds_report, exact_index,
    frac_index_formula, frac_index_lp,
)
from .graph_core import CapExceededError, GraphFormatError, WeightedGraph, parse_graph
from .parameters import parameter_report
from .polytope import QSystemVariant, check_system, membership, parse_point
from . import gallery

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class Output:
    """Collects (key, value) pairs and renders them as text or JSON."""

    def __init__(self, kind: str, fmt: str, decimal: bool):
        self.kind = kind
        self.fmt = fmt
        self.decimal = decimal
        self.items: list[tuple[str, Any]] = []

    def add(self, key: str, value: Any) -> None:
        self.items.append((key, value))

    def _json_value(self, value):
        if isinstance(value, Fraction):
            return rational(value)
        if isinstance(value, dict):
            return {k: self._json_value(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [self._json_value(v) for v in value]
        return value

    def _text_value(self, value) -> str:
        if isinstance(value, Fraction):
            s = rational(value)
            if self.decimal:
                s += f"  (approx {float(value):.6g})"
            return s
        if isinstance(value, bool):
            return "yes" if value else "no"
        if value is None:
            return "n/a"
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(self._text_value(v) for v in value) + "]"
        if isinstance(value, dict):
            return "{" + ", ".join(f"{k}: {self._text_value(v)}" for k, v in value.items()) + "}"
        return str(value)

    def render(self) -> str:
        if self.fmt == "json":
            doc: dict[str, Any] = {"schema": f"fpoly.{self.kind}/{SCHEMA_VERSION}"}
            for key, value in self.items:
                doc[key] = self._json_value(value)
                if self.decimal and isinstance(value, Fraction):
                    doc[f"{key}_approx"] = float(value)
            return json.dumps(doc, indent=2) + "\n"
        return "".join(f"{key}: {self._text_value(value)}\n" for key, value in self.items)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> WeightedGraph:
    return parse_graph(_read(path))


def _names(g: WeightedGraph, ids) -> list[str]:
    return [g.names[v] for v in ids]


def _matching_label(M) -> list[int]:
    return M.sorted_edges()


def cmd_params(args, out: Output) -> int:
    g = _load_graph(args.graph)
    r = parameter_report(g, args.cap_vertices)
    out.add("vertices", g.vertex_count)
    out.add("edges", g.edge_count)
    out.add("delta_star", r.delta_star)
    out.add("delta", r.delta)
    out.add("density_star", r.density_star)
    out.add("density", r.density)
    out.add("gamma_star", r.gamma_star)
    out.add("gamma", r.gamma)
    out.add("density_witness", None if r.density_witness is None
            else _names(g, r.density_witness))
    out.add("gamma_witness", None if r.gamma_witness is None
            else {"U": _names(g, r.gamma_witness[0]), "F_size": r.gamma_witness[1]})
    out.add("lemma5_identity", max(r.delta + 1, r.gamma) == max(r.delta + 1, r.density))
    return 0


def cmd_frac_index(args, out: Output) -> int:
    g = _load_graph(args.graph)
    value, colouring = frac_index_lp(g, args.mode, args.cap_edges)
    out.add("mode", args.mode)
    out.add("chi_star_f", value)
    try:
        out.add("formula", frac_index_formula(g, args.cap_vertices))
    except PreconditionError:
        out.add("formula", None)
    out.add("weights", [{"matching": _matching_label(M), "weight": w}
                        for M, w in sorted(colouring.weights.items(), key=lambda t: t[0].mask)])
    return 0


def cmd_index(args, out: Output) -> int:
    g = _load_graph(args.graph)
    chi, classes = exact_index(g, args.cap_edges)
    out.add("chi_f", chi)
    out.add("classes", [_matching_label(M) for M in classes])
    return 0


def cmd_bounds(args, out: Output) -> int:
    g = _load_graph(args.graph)
    b = bounds_report(g, args.cap_edges, args.mode)
    p = b.params
    out.add("chi_f", b.chi_f)
    out.add("chi_star_f", b.chi_star_f)
    out.add("delta_star", p.delta_star)
    out.add("delta", b.delta)
    out.add("density_star", p.density_star)
    out.add("density", b.density)
    out.add("gamma_star", p.gamma_star)
    out.add("gamma", b.gamma)
    out.add("lower_bound_ok", b.lower_bound_ok)
    out.add("nns_ok", b.nns_ok)
    out.add("conjecture1_ok", b.conjecture1_ok)
    out.add("ceil_identity_ok", b.ceil_identity_ok)
    out.add("ceil_identity_observed", b.ceil_identity_observed)
    out.add("sandwich_ok", b.sandwich_ok)
    out.add("lemma5_ok", b.lemma5_ok)
    return 0 if b.proven_bounds_ok else 1


def cmd_member(args, out: Output) -> int:
    g = _load_graph(args.graph)
    x = parse_point(_read(args.point), g.edge_count)
    verdict = membership(g, x, args.cap_edges)
    out.add("point", list(x))
    if verdict.is_member:
        out.add("verdict", "member")
        out.add("weights", [{"matching": _matching_label(M), "weight": w}
                            for M, w in sorted(verdict.weights.items(),
                                               key=lambda t: t[0].mask)])
        return 0
    out.add("verdict", "non-member")
    out.add("separating_coefficients", list(verdict.coefficients))
    out.add("separating_bound", verdict.bound)
    return 1


def cmd_qcheck(args, out: Output) -> int:
    g = _load_graph(args.graph)
    x = parse_point(_read(args.point), g.edge_count)
    violations = check_system(g, x, args.variant, args.cap_vertices, first_only=args.first)
    out.add("variant", QSystemVariant(args.variant).value)
    out.add("violation_count", len(violations))
    if out.fmt == "json":
        out.add("violations", [_violation(g, v) for v in violations])
    else:
        for v in violations:
            out.add(f"  {v.kind}", _violation(g, v))
        out.add("summary", f"{len(violations)} violations")
    return 0 if not violations else 1


def _violation(g: WeightedGraph, v) -> dict:
    if len(v.witness) == 2:
        witness = {"U": _names(g, v.witness[0]), "F": list(v.witness[1])}
    elif v.kind in ("(ii)", "(b)", "(2)"):
        witness = {"vertex": g.names[v.witness[0]]}
    else:
        witness = {"edge": v.witness[0]}
    return {"kind": v.kind, "witness": witness, "lhs": v.lhs, "rhs": v.rhs}


def cmd_gallery(args, out: Output) -> int:
    if args.action == "list":
        if out.fmt == "json":
            out.add("items", [{"name": k, "description": d} for k, d in gallery.GALLERY.items()])
        else:
            for name, description in gallery.GALLERY.items():
                out.add(name, description)
        return 0
    if args.name is None:
        raise UsageError("gallery verify needs an item name (or 'all')")
    if args.name == "all":
        items = [gallery.example1(), gallery.example2(3), gallery.example2(5),
                 gallery.example2(7), gallery.c4_chord(), gallery.example3(1),
                 gallery.example3(2)]
    else:
        try:
            items = [gallery.get_item(args.name, args.k)]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    ok = True
    reports = []
    for item in items:
        result = gallery.verify(item)
        ok = ok and result.passed
        entry = {
            "name": item.name,
            "passed": result.passed,
            "graph": {"vertices": item.graph.vertex_count, "edges": item.graph.edge_count},
            "witness": None if item.witness is None else list(item.witness),
            "claims": [{"claim": r.description, "passed": r.passed} for r in result.results],
        }
        if item.notes:
            entry["notes"] = item.notes
        reports.append(entry)
    if out.fmt == "json":
        out.add("items", reports)
    else:
        for entry in reports:
            out.add("item", entry["name"])
            if entry["witness"] is not None:
                out.add("  witness", entry["witness"])
            if "notes" in entry:
                out.add("  notes", entry["notes"])
            for c in entry["claims"]:
                out.add("  " + ("PASS" if c["passed"] else "FAIL"), c["claim"])
        out.add("result", "all claims pass" if ok else "some claims FAILED")
    return 0 if ok else 1


def cmd_sweep(args, out: Output) -> int:
    limits = gallery.SweepLimits(args.max_vertices, args.max_edges, args.max_f,
                                 args.points, not args.no_hunt)
    report = gallery.sweep(args.count, args.seed, limits)
    for key in ("instances_tested", "seed", "corollary3_confirmed", "corollary4_confirmed",
                "lemma5_confirmed", "theorem3_confirmed", "theorem2_confirmed",
                "mode_agreement_confirmed", "bounds_confirmed", "gamma_exceeds_density_count"):
        out.add(key, getattr(report, key))
    out.add("conjecture1_exceptions", len(report.conjecture1_exceptions))
    out.add("qf_gap_witnesses", [
        {"f": list(g.f), "edges": [list(e) for e in g.edges], "point": list(x)}
        for g, x in report.qf_gap_witnesses])
    out.add("failures", report.failures)
    return 0 if not report.failures else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--decimal", action="store_true",
                        help="add approximate decimal values next to exact rationals")
    common.add_argument("--cap-edges", type=int, default=20,
                        help="edge cap for f-matching enumeration (default 20)")
    common.add_argument("--cap-vertices", type=int, default=20,
                        help="vertex cap for subset scans (default 20)")

    parser = argparse.ArgumentParser(
        prog="fpoly", description="f-matching polytope and fractional f-chromatic index tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[common], help="degree and density parameters")
    p.add_argument("graph")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("frac-index", parents=[common], help="fractional f-chromatic index")
    p.add_argument("graph")
    p.add_argument("--mode", choices=(EQUALITY_ALL, COVER_MAXIMAL), default=COVER_MAXIMAL)
    p.set_defaults(func=cmd_frac_index)

    p = sub.add_parser("index", parents=[common], help="f-chromatic index")
    p.add_argument("graph")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("bounds", parents=[common], help="index bounds and identities")
    p.add_argument("graph")
    p.add_argument("--mode", choices=(EQUALITY_ALL, COVER_MAXIMAL), default=COVER_MAXIMAL)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("member", parents=[common], help="f-matching polytope membership")
    p.add_argument("graph")
    p.add_argument("point")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("qcheck", parents=[common], help="check a point against a system")
    p.add_argument("graph")
    p.add_argument("point")
    p.add_argument("--variant", choices=[v.value for v in QSystemVariant], default="q")
    p.add_argument("--first", action="store_true", help="stop at the first violation")
    p.set_defaults(func=cmd_qcheck)

    p = sub.add_parser("gallery", parents=[common], help="the counterexample gallery")
    p.add_argument("action", choices=("list", "verify"))
    p.add_argument("name", nargs="?")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("sweep", parents=[common], help="seeded random stress test")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--max-f", type=int, default=3)
    p.add_argument("--points", type=int, default=2, help="sampled points per graph")
    p.add_argument("--no-hunt", action="store_true", help="skip the witness hunt")
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args.command, args.format, args.decimal)
    try:
        code = args.func(args, out)
    except (UsageError, GraphFormatError, CapExceededError, PreconditionError, ValueError) as exc:
        print(f"fpoly: error: {exc}", file=stderr)
        return 2
    stdout.write(out.render())
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="fpoly: %(levelname)s: %(message)s")
    sys.exit(run())
