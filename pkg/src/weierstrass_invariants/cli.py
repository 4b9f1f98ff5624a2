"""Command-line front end.

Exit status: 0 success, 1 assumption check failed (rerun with
``--override-assumptions``), 2 schema or parse error, 3 numerical
non-convergence.  Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

import numpy as np

from . import io
from .cluster import build_tree, compute_e, path_phi_sum, residual_divisor
from .errors import AssumptionError, ConvergenceError, InconsistentDataError, PrecisionError
from .fiber import node_count, ord_xi, phi_divisor, phi_self_intersection, verify_local_identity
from .fields import format_rational, parse_rational
from .heights import compare_bounds, deg_lambda, faltings_lower_bound
from .hyperelliptic import (INFINITY, hyperelliptic_wronskian_check, ord_lambda,
                            weierstrass_gap_order)
from .periods import EllipticTorus, HyperellipticCurve, t_invariant
from .theta import (bost_integral, j_norm, petersson_delta_norm_g1, theta,
                    theta_norm)

FORMATS = {
    "tree": ("text", "json", "dot"),
    "residual": ("text", "json"),
    "phi": ("text", "json"),
    "verify-local": ("text", "json"),
    "wronskian": ("text", "json"),
    "theta": ("text", "json"),
    "tinv": ("text", "json"),
    "height": ("text", "json"),
    "report": ("text", "json"),
}


def _table(rows) -> str:
    """Aligned two-or-more column text."""
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


# -- subcommands ---------------------------------------------------------------

def cmd_tree(args):
    config = io.parse_roots(io.load_json(args.input))
    tree = build_tree(config)
    if args.format == "dot":
        return tree.to_dot()
    if args.format == "json":
        return io.dump_json(io.tree_to_json(tree))
    rows = [("vertex", "level", "phi", "C", "parent", "members")]
    for v in tree:
        rows.append((v.id, v.level, v.phi, v.parity, v.parent or "-",
                     ",".join(str(i + 1) for i in sorted(v.members))))
    out = _table(rows)
    report = tree.report
    out += f"evenness_ok {str(report.evenness_ok).lower()}\nresidues_ok {str(report.residues_ok).lower()}\n"
    return out


def cmd_residual(args):
    config = io.parse_roots(io.load_json(args.input))
    tree = build_tree(config)
    mult = residual_divisor(tree, override=args.override_assumptions)
    e = compute_e(tree)
    try:
        lam = ord_lambda(config, tree)
    except ValueError:
        lam = None
    if args.format == "json":
        return io.dump_json({
            "e": format_rational(e),
            "residual": {k: format_rational(v) for k, v in mult.items()},
            "path_phi_sum": {v.id: path_phi_sum(tree, v.id, config) for v in tree},
            "ord_lambda": None if lam is None else format_rational(lam),
            "overridden": not tree.report.ok,
            "assumptions": io.tree_to_json(tree)["assumptions"],
        })
    rows = [("vertex", "multiplicity")] + [(k, format_rational(v)) for k, v in mult.items()]
    out = f"e {format_rational(e)}\n" + _table(rows)
    if lam is not None:
        out += f"ord_lambda {format_rational(lam)}\n"
    if not tree.report.ok:
        out += "assumptions overridden: " + "; ".join(tree.report.messages) + "\n"
    return out


def _fiber(args):
    graph, sections, E, lam = io.parse_fiber(io.load_json(args.input))
    if getattr(args, "point", None):
        chosen = [s for s in sections if s.name == args.point]
        if not chosen:
            raise io.SchemaError(f"no section named {args.point!r}")
    else:
        chosen = sections
    return graph, sections, chosen, E, lam


def cmd_phi(args):
    graph, sections, chosen, E, _ = _fiber(args)
    results = [(s, phi_divisor(graph, s), phi_self_intersection(graph, s)) for s in chosen]
    total = sum((sq for _, _, sq in results), Fraction(0))
    if args.format == "json":
        return io.dump_json({
            "sections": [{"name": s.name, "meets": s.meets, "phi": io.divisor_to_json(phi),
                          "phi_sq": format_rational(sq)} for s, phi, sq in results],
            "sum_phi_sq": format_rational(total),
            "node_count": node_count(graph),
            "omega": {c: graph.omega(c) for c in graph.names},
        })
    rows = [("section", "meets", "phi", "phi^2")]
    rows += [(s.name, s.meets, str(phi), format_rational(sq)) for s, phi, sq in results]
    return _table(rows) + f"sum_phi_sq {format_rational(total)}\nnode_count {node_count(graph)}\n"


def cmd_verify_local(args):
    graph, sections, _, E, lam = _fiber(args)
    if args.ord_lambda is not None:
        lam = args.ord_lambda
    if lam is None:
        raise io.SchemaError("ord_lambda missing: give it in the fiber file or with --ord-lambda")
    if E is None:
        raise io.SchemaError("the fiber file has no residual divisor 'E'")
    result = verify_local_identity(graph, sections, E, lam)
    xi = ord_xi(graph, sections, E)
    if args.format == "json":
        return io.dump_json({
            "lhs": format_rational(result.lhs), "rhs": format_rational(result.rhs),
            "residual": format_rational(result.residual), "holds": result.holds,
            "ord_lambda": lam, "sum_phi_sq": format_rational(result.sum_phi_sq),
            "ord_delta": result.ord_delta, "deg_omega_E": format_rational(result.omega_degree_E),
            "ord_xi": format_rational(xi),
        })
    rows = [
        ("ord_lambda", lam),
        ("sum_phi_sq", format_rational(result.sum_phi_sq)),
        ("ord_delta", result.ord_delta),
        ("deg_omega_E", format_rational(result.omega_degree_E)),
        ("ord_xi", format_rational(xi)),
        ("lhs", format_rational(result.lhs)),
        ("rhs", format_rational(result.rhs)),
        ("residual", format_rational(result.residual)),
    ]
    return _table(rows)


def _parse_point(text, field):
    if text == INFINITY:
        return INFINITY
    try:
        return field(parse_rational(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise io.SchemaError(f"--point: {exc}") from None


def cmd_wronskian(args):
    eq = io.parse_curve(io.load_json(args.input))
    point = _parse_point(args.point or "0", eq.field)
    branch = eq.is_branch_point(point)
    order = weierstrass_gap_order(eq, point, args.precision)
    holds = None
    if not branch and point != INFINITY:
        holds = hyperelliptic_wronskian_check(eq, point, args.precision)
    g = eq.g
    if args.format == "json":
        return io.dump_json({
            "g": g, "field": repr(eq.field), "point": str(args.point or "0"), "precision": args.precision,
            "branch_point": branch, "gap_order": order, "expected_at_branch_point": g * (g - 1) // 2,
            "identity_holds": holds,
        })
    rows = [("g", g), ("field", repr(eq.field)), ("point", args.point or "0"),
            ("branch_point", str(branch).lower()), ("gap_order", order)]
    if holds is not None:
        rows.append(("identity_holds", str(holds).lower()))
    return _table(rows)


def cmd_theta(args):
    doc = io.load_json(args.input)
    io.check_version(doc)
    tau = io.parse_tau(doc)
    g = tau.shape[0]
    points = [np.array([io.parse_complex(x) for x in p]) for p in doc.get("points", [[0] * g])]
    for p in points:
        if p.shape != (g,):
            raise io.SchemaError(f"points must have {g} coordinates")
    out = {"tau": io.tau_to_json(tau), "tol": args.tol, "values": []}
    for p in points:
        out["values"].append({"z": [io.complex_to_json(x) for x in p],
                              "theta": io.complex_to_json(theta(p, tau, args.tol)),
                              "theta_norm": theta_norm(p, tau, args.tol)})
    if "j_points" in doc:
        ws = [np.array([io.parse_complex(x) for x in p]) for p in doc["j_points"]]
        out["j_norm"] = j_norm(ws, tau, args.tol)
    if g == 1:
        out["petersson_delta_norm"] = petersson_delta_norm_g1(tau[0, 0])
    if args.format == "json":
        return io.dump_json(out)
    rows = [("z", "theta", "theta_norm")]
    for v in out["values"]:
        z = ", ".join(f"{a:+.6f}{b:+.6f}i" for a, b in v["z"])
        t = v["theta"]
        rows.append((z, f"{t[0]:+.12e}{t[1]:+.12e}i", f"{v['theta_norm']:.12e}"))
    text = _table(rows)
    if "j_norm" in out:
        text += f"j_norm {out['j_norm']:.12e}\n"
    if "petersson_delta_norm" in out:
        text += f"petersson_delta_norm {out['petersson_delta_norm']:.12e}\n"
    return text


def _analytic_curve(doc, tol):
    if "branch_points" in doc:
        return HyperellipticCurve(io.parse_branch_points(doc), tol=min(tol, 1e-10))
    tau = io.parse_tau(doc)
    if tau.shape != (1, 1):
        raise io.SchemaError("a bare period matrix is only accepted for g = 1; give branch points otherwise")
    return EllipticTorus(tau[0, 0])


def cmd_tinv(args):
    doc = io.load_json(args.input)
    io.check_version(doc)
    curve = _analytic_curve(doc, args.tol)
    seeds = [args.seed + k for k in range(args.samples)]
    results = [t_invariant(curve, seed=s, tol=args.tol) for s in seeds]
    values = [r.value for r in results]
    spread = (max(values) - min(values)) / float(np.mean(values))
    out = {"g": curve.g, "tau": io.tau_to_json(curve.period_matrix.tau), "seeds": seeds,
           "values": values, "relative_spread": spread, "resamples": [r.resamples for r in results]}
    if curve.g == 1:
        delta = petersson_delta_norm_g1(curve.period_matrix.tau[0, 0])
        out["delta_prediction"] = (2 * math.pi) ** -2 * delta ** -0.25
    if args.format == "json":
        return io.dump_json(out)
    rows = [("seed", "T")] + [(s, f"{v:.15e}") for s, v in zip(seeds, values)]
    text = _table(rows) + f"relative_spread {spread:.3e}\n"
    if "delta_prediction" in out:
        text += f"delta_prediction {out['delta_prediction']:.15e}\n"
    return text


def cmd_height(args):
    data = io.parse_ledger(io.load_json(args.input))
    result = deg_lambda(data)
    bound = faltings_lower_bound(data.g, data.degree_K, [a.log_T for a in data.arch])
    fields = [
        ("heights_term", result.heights_term), ("phi_term", result.phi_term),
        ("delta_term", result.delta_term), ("e_term", result.e_term),
        ("two_pi_term", result.two_pi_term), ("log_t_term", result.log_t_term),
        ("combination", result.combination), ("deg_lambda", result.deg_lambda),
        ("faltings_height", result.faltings_height), ("lower_bound", bound),
        ("rounding_bound", result.rounding_bound),
    ]
    if args.format == "json":
        doc = dict(fields)
        doc["exact_local"] = {place: {k: format_rational(v) for k, v in terms.items()}
                              for place, terms in result.exact_local.items()}
        return io.dump_json(doc)
    return _table([("term", "value")] + [(k, f"{v:.15e}") for k, v in fields])


def cmd_report(args):
    doc = io.load_json(args.input)
    io.check_version(doc)
    curve = _analytic_curve(doc, args.tol)
    T = t_invariant(curve, seed=args.seed, tol=args.tol)
    bost = bost_integral(curve.period_matrix, seed=args.seed, n_samples=args.samples_mc, tol=args.tol)
    comparison = compare_bounds(curve.g, 1, [T.log_value], [bost.mean], [bost.stderr])
    comparison.update({"log_T": T.log_value, "theta_integral": bost.mean, "theta_integral_stderr": bost.stderr,
                       "n_samples": bost.n_samples, "seed": args.seed})
    if args.format == "json":
        return io.dump_json(comparison)
    keys = ["g", "log_T", "theta_integral", "theta_integral_stderr", "faltings_lower_bound",
            "bost_bound", "bost_stderr", "difference"]
    return _table([("quantity", "value")] + [(k, comparison[k] if isinstance(comparison[k], int)
                                              else f"{comparison[k]:.12e}") for k in keys])


COMMANDS = {
    "tree": cmd_tree, "residual": cmd_residual, "phi": cmd_phi, "verify-local": cmd_verify_local,
    "wronskian": cmd_wronskian, "theta": cmd_theta, "tinv": cmd_tinv, "height": cmd_height,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weierstrass-invariants",
                                     description="Local and archimedean invariants of hyperelliptic fibrations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, help="JSON input file")
        p.add_argument("--format", default="text", help=f"one of {', '.join(FORMATS[name])}")
        p.add_argument("--tol", type=float, default=1e-12, help="numerical tolerance")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--override-assumptions", action="store_true",
                       help="run even when the standing hypotheses fail")
        p.add_argument("--schema-version", default=io.SCHEMA_VERSION, help="output schema version")
        if name in ("phi", "verify-local"):
            p.add_argument("--point", help="restrict to one section by name")
        if name == "verify-local":
            p.add_argument("--ord-lambda", type=int, help="override ord Lambda from the input")
        if name == "wronskian":
            p.add_argument("--point", help="x-coordinate as 'num/den', or 'inf'")
            p.add_argument("--precision", type=int, default=20)
        if name == "tinv":
            p.add_argument("--samples", type=int, default=5, help="number of independent point samples")
        if name == "report":
            p.add_argument("--samples-mc", type=int, default=20000, help="Monte Carlo sample count")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.format not in FORMATS[args.command]:
        print(f"error: format {args.format!r} not available for {args.command}", file=sys.stderr)
        return 2
    if str(args.schema_version) != io.SCHEMA_VERSION:
        print(f"error: schema version {args.schema_version!r} not supported", file=sys.stderr)
        return 2
    try:
        output = COMMANDS[args.command](args)
    except AssumptionError as exc:
        print(f"assumption check failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, FileNotFoundError, InconsistentDataError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
