"""JSON schemas for roots, fiber graphs, curves, period matrices and height ledgers.

Exact quantities are written as ``"num/den"`` strings; complex numbers as
``[re, im]`` pairs.  Every document carries ``"schema_version"``.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .cluster import ClusterTree, RootConfig
from .fiber import Component, ComponentGraph, SectionIncidence, VerticalQDivisor
from .fields import GF, QQ, as_fraction, format_rational
from .heights import ArchLedgerEntry, GlobalHeightInput, LocalLedgerEntry
from .hyperelliptic import HyperellipticEquation

__all__ = [
    "SCHEMA_VERSION", "SchemaError", "load_json", "dump_json", "check_version",
    "parse_roots", "roots_to_json", "tree_to_json", "parse_fiber", "fiber_to_json",
    "divisor_to_json", "parse_curve", "parse_complex", "complex_to_json",
    "parse_tau", "tau_to_json", "parse_branch_points", "parse_ledger",
]

SCHEMA_VERSION = "1"


class SchemaError(ValueError):
    """Input that does not match the documented schema."""


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from None


def dump_json(doc) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **doc}, indent=2, ensure_ascii=False) + "\n"


def check_version(doc):
    version = doc.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {version!r} (this build reads {SCHEMA_VERSION!r})")


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise SchemaError(f"missing keys: {', '.join(missing)}")


def _rational(x, what):
    if isinstance(x, float):
        raise SchemaError(f"{what}: rationals must be integers or 'num/den' strings, got {x!r}")
    try:
        return as_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: {exc}") from None


def _int(x, what):
    if not isinstance(x, int) or isinstance(x, bool):
        raise SchemaError(f"{what} must be an integer")
    return x


# -- roots and trees ---------------------------------------------------------

def parse_roots(doc) -> RootConfig:
    check_version(doc)
    _require(doc, "g", "p", "roots")
    try:
        return RootConfig(_int(doc["g"], "g"), _int(doc["p"], "p"), _rational(doc.get("A", 1), "A"),
                          tuple(_rational(a, "roots") for a in doc["roots"]))
    except ValueError as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None


def roots_to_json(config: RootConfig) -> dict:
    return {"g": config.g, "p": config.p, "A": format_rational(config.A),
            "roots": [format_rational(a) for a in config.roots]}


def tree_to_json(tree: ClusterTree) -> dict:
    report = tree.report
    return {
        "g": tree.g,
        "vertices": [
            {"id": v.id, "level": v.level, "members": sorted(i + 1 for i in v.members),
             "phi": v.phi, "C": v.parity, "parent": v.parent}
            for v in tree.vertices
        ],
        "assumptions": None if report is None else {
            "evenness_ok": report.evenness_ok, "residues_ok": report.residues_ok,
            "messages": list(report.messages),
        },
    }


# -- fibers -------------------------------------------------------------------

def parse_fiber(doc):
    """Returns ``(graph, sections, E or None, ord_lambda or None)``."""
    check_version(doc)
    _require(doc, "g", "components", "intersection")
    try:
        comps = []
        for c in doc["components"]:
            _require(c, "name")
            comps.append(Component(str(c["name"]), _int(c.get("m", 1), "m"), _int(c.get("pa", 0), "pa"),
                                   _int(c.get("internal_nodes", 0), "internal_nodes")))
        omega = doc.get("omega")
        graph = ComponentGraph(_int(doc["g"], "g"), tuple(comps),
                               tuple(tuple(_int(x, "intersection") for x in row) for row in doc["intersection"]),
                               None if omega is None else {k: _int(v, "omega") for k, v in omega.items()})
        sections = [SectionIncidence(str(s["name"]), str(s["meets"])) for s in doc.get("sections", [])]
        for s in sections:
            graph.index(s.meets)
        E = doc.get("E")
        if E is not None:
            for name in E:
                graph.index(name)
            E = VerticalQDivisor({k: _rational(v, "E") for k, v in E.items()})
        ord_lambda = doc.get("ord_lambda")
        if ord_lambda is not None:
            ord_lambda = _int(ord_lambda, "ord_lambda")
    except KeyError as exc:
        raise SchemaError(f"unknown component {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    return graph, sections, E, ord_lambda


def divisor_to_json(D: VerticalQDivisor) -> dict:
    return {k: format_rational(v) for k, v in D.coeffs}


def fiber_to_json(graph: ComponentGraph, sections=(), E=None, ord_lambda=None) -> dict:
    doc = {
        "g": graph.g,
        "components": [{"name": c.name, "m": c.m, "pa": c.pa, "internal_nodes": c.internal_nodes}
                       for c in graph.components],
        "intersection": [list(row) for row in graph.intersection],
        "sections": [{"name": s.name, "meets": s.meets} for s in sections],
    }
    if E is not None:
        doc["E"] = divisor_to_json(E)
    if ord_lambda is not None:
        doc["ord_lambda"] = ord_lambda
    return doc


# -- curves -------------------------------------------------------------------

def _field(value):
    if value in (None, "Q"):
        return QQ
    if isinstance(value, dict) and "Fp" in value:
        try:
            return GF(_int(value["Fp"], "Fp"))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    raise SchemaError(f"field must be 'Q' or {{'Fp': p}}, got {value!r}")


def parse_curve(doc) -> HyperellipticEquation:
    check_version(doc)
    field = _field(doc.get("field"))
    try:
        if "roots" in doc:
            eq = HyperellipticEquation.from_roots([_rational(a, "roots") for a in doc["roots"]],
                                                  _rational(doc.get("A", 1), "A"), field)
        elif "b" in doc:
            eq = HyperellipticEquation.from_ab([_rational(c, "a") for c in doc.get("a", [])],
                                               [_rational(c, "b") for c in doc["b"]], doc.get("g"), field)
        else:
            raise SchemaError("curve needs 'roots' or 'a'/'b'")
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None
    if "g" in doc and doc["g"] != eq.g:
        raise SchemaError(f"declared genus {doc['g']} but the equation has genus {eq.g}")
    return eq


# -- complex data -------------------------------------------------------------

def parse_complex(x) -> complex:
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    if isinstance(x, (list, tuple)) and len(x) == 2 and all(isinstance(t, (int, float)) for t in x):
        return complex(x[0], x[1])
    raise SchemaError(f"complex numbers are [re, im] pairs, got {x!r}")


def complex_to_json(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def parse_tau(doc) -> np.ndarray:
    _require(doc, "tau")
    rows = doc["tau"]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SchemaError("tau is a row-major list of rows of [re, im] pairs")
    tau = np.array([[parse_complex(x) for x in row] for row in rows])
    if tau.shape[0] != tau.shape[1]:
        raise SchemaError("tau must be square")
    return tau


def tau_to_json(tau) -> list:
    return [[complex_to_json(x) for x in row] for row in np.atleast_2d(tau)]


def parse_branch_points(doc):
    _require(doc, "branch_points")
    return [parse_complex(x) for x in doc["branch_points"]]


# -- ledgers ------------------------------------------------------------------

def parse_ledger(doc) -> GlobalHeightInput:
    check_version(doc)
    _require(doc, "g", "degree_K")
    try:
        local = []
        for entry in doc.get("local", []):
            _require(entry, "place")
            if "log_residue_size" in entry:
                log_q = float(entry["log_residue_size"])
            elif "residue_size" in entry:
                log_q = math.log(_int(entry["residue_size"], "residue_size"))
            else:
                raise SchemaError("local entries need 'residue_size' or 'log_residue_size'")
            local.append(LocalLedgerEntry(str(entry["place"]), log_q, _int(entry.get("ord_delta", 0), "ord_delta"),
                                          _rational(entry.get("sum_phi_sq", 0), "sum_phi_sq"),
                                          _rational(entry.get("e_omega_degree", 0), "e_omega_degree")))
        arch = [ArchLedgerEntry(str(a.get("embedding", i)), float(a["log_T"]))
                for i, a in enumerate(doc.get("arch", []))]
        return GlobalHeightInput(_int(doc["g"], "g"), _int(doc["degree_K"], "degree_K"),
                                 tuple(float(h) for h in doc.get("nt_heights", [])), tuple(local), tuple(arch))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(str(exc)) from None

