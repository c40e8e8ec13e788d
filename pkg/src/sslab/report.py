"""Query execution and report rendering (text, json, dot)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import networkx as nx

from .correspondences import (
    colength_tau, is_radical_ls, length_view, localizing_view, sharp_rebuild, sigma_support,
)
from .document import Document, Query
from .oracle import enumerate_pairs
from .prufer import (
    PairError, StableOpPair, is_radical_stable, normalize_pair, pair_violations, stable_leq,
    stable_member, transfer_pair,
)
from .radical import (
    Join, Meet, Punctured, greatest_quasi_closed, quasi_closed_test, radical_is_spectral,
    radical_member, radical_qspec,
)
from .spaces import NOT_SCATTERED, FinitePoset, cb_rank, is_dense_in, perfect_report
from .spectral import IdealDescriptor, SpectralOp, spectral_leq, spectral_member

RADICAL = (Join, Punctured, Meet)


class QueryFailure(Exception):
    pass


@dataclass
class QueryResult:
    name: str
    kind: str
    line: int
    ok: bool
    value: object = None
    display: str = ""
    provenance: str = ""
    witness: str | None = None

    def as_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "line": self.line,
               "status": "ok" if self.ok else "error", "value": self.value,
               "display": self.display, "provenance": self.provenance}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Enumeration:
    name: str
    labels: list
    edges: list


@dataclass
class Report:
    summary: dict = field(default_factory=dict)
    results: list = field(default_factory=list)
    enumerations: list = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(not r.ok for r in self.results)


def _set(sp, value) -> str:
    return sp.render(value)


def _pair_value(pair: StableOpPair) -> dict:
    sp = pair.space
    return {"delta": sp.render(pair.delta), "pi": sp.render(pair.pi)}


def _member(op, ideal: IdealDescriptor) -> tuple[bool, str]:
    if ideal.is_zero:
        return False, "zero ideal: 1 is never in (0)^*"
    if isinstance(op, StableOpPair):
        return stable_member(op, ideal), "pair criterion"
    if isinstance(op, SpectralOp):
        return spectral_member(op, ideal), "spectral: C meets delta"
    return radical_member(op, ideal), "greatest quasi-closed fixpoint"


def _radical(op):
    if isinstance(op, SpectralOp):
        return Join((op,))
    if isinstance(op, RADICAL):
        return op
    raise QueryFailure(f"expected a spectral or radical operation, got {type(op).__name__}")


def _pair(op) -> StableOpPair:
    if not isinstance(op, StableOpPair):
        raise QueryFailure(f"expected a stable pair, got {type(op).__name__}")
    return op


def _run(q: Query, report: Report) -> QueryResult:
    k, a = q.kind, q.args
    res = QueryResult(q.name, k, q.line, True)

    def boolean(v: bool, prov: str) -> QueryResult:
        res.value, res.display, res.provenance = bool(v), str(bool(v)).lower(), prov
        return res

    def setval(sp, v, prov: str) -> QueryResult:
        res.value = res.display = _set(sp, v)
        res.provenance = prov
        return res

    def pairval(p: StableOpPair, prov: str) -> QueryResult:
        res.value = _pair_value(p)
        res.display = p.describe()
        res.provenance = prov
        return res

    if k == "member":
        return boolean(*_member(*a))
    if k == "tau":
        op, ideal = a
        if ideal.is_zero:
            res.value = res.display = "INFINITY"
            res.provenance = "zero ideal: 1 is never in (0)^*"
            return res
        res.value = res.display = "0" if colength_tau(length_view(op), ideal) == 0 else "INFINITY"
        res.provenance = "colength of the localizing system"
        return res
    if k == "leq":
        x, y = a
        if isinstance(x, StableOpPair) and isinstance(y, StableOpPair):
            return boolean(stable_leq(x, y), "pair order")
        if isinstance(x, SpectralOp) and isinstance(y, SpectralOp):
            return boolean(spectral_leq(x, y), "delta containment")
        raise QueryFailure("leq compares two stable pairs or two spectral operations")
    if k == "qspec":
        op = a[0]
        if isinstance(op, StableOpPair):
            return setval(op.space, op.delta, "pair component")
        if isinstance(op, SpectralOp):
            return setval(op.space, op.delta_down, "canonical delta")
        prov = "exhaustive" if isinstance(op.space, FinitePoset) else "symbolic over generated algebra"
        return setval(op.space, radical_qspec(op), prov)
    if k == "is-spectral":
        op = a[0]
        if isinstance(op, StableOpPair):
            return boolean(is_radical_stable(op), "pair: spectral iff empty pseudo-spectrum")
        r = radical_is_spectral(_radical(op))
        boolean(r.answer, r.provenance)
        if r.witness is not None:
            res.witness = op.space.render(r.witness)
        return res
    if k in ("gqc", "quasi-closed"):
        op = _radical(a[0])
        sp, c = a[1]
        if sp != op.space:
            raise QueryFailure("set and operation live on different spaces")
        if k == "gqc":
            return setval(sp, greatest_quasi_closed(op, c), "greatest fixpoint")
        return boolean(quasi_closed_test(op, c), "density test")
    if k == "is-radical":
        op = a[0]
        return boolean(is_radical_ls(localizing_view(op)), "pair: empty pseudo-spectrum"
                       if isinstance(op, StableOpPair) else "radical by construction")
    if k == "sigma":
        p = _pair(a[0])
        return setval(p.space, sigma_support(p), "delta and pi without the generic point")
    if k == "sharp-rebuild":
        p = _pair(a[0])
        out = sharp_rebuild(p)
        pairval(out, "localizations over the support")
        res.value["equal"] = out == p
        return res
    if k == "normalize":
        p = _pair(a[0])
        out = normalize_pair(p)
        pairval(out, "membership probes" + ("" if isinstance(p.space, FinitePoset) else " per atom"))
        res.value["equal"] = out == p
        return res
    if k == "transfer":
        return pairval(transfer_pair(a[0], _pair(a[1])), "homeomorphism image")
    if k == "enumerate":
        pairs = enumerate_pairs(a[0])
        labels = [p.describe() for p in pairs]
        g = nx.DiGraph()
        g.add_nodes_from(range(len(pairs)))
        for i, x in enumerate(pairs):
            for j, y in enumerate(pairs):
                if i != j and stable_leq(x, y):
                    g.add_edge(i, j)
        edges = sorted(nx.transitive_reduction(g).edges())
        report.enumerations.append(Enumeration(q.name, labels, edges))
        res.value = {"count": len(pairs), "pairs": [_pair_value(p) for p in pairs], "covers": [list(e) for e in edges]}
        res.display = f"{len(pairs)} pairs"
        res.provenance = "exhaustive enumeration"
        return res
    if k == "validate":
        d, delta, pi = a
        violations = pair_violations(d, d.space.generizations(delta), pi)
        res.value = {"valid": not violations, "violations": [list(v) for v in violations]}
        res.display = "valid" if not violations else ", ".join(r for r, _ in violations)
        res.provenance = "pair rules"
        return res
    (sp, s), *rest = a
    if k == "cb-rank":
        r = cb_rank(sp, s)
        res.value = "not scattered" if r is NOT_SCATTERED else r
        res.display = str(res.value)
        res.provenance = "iterated derived sets"
        return res
    if k in ("derived", "isolated", "closure", "show"):
        fn = {"derived": sp.derived, "isolated": sp.isolated, "closure": sp.closure, "show": lambda x: x}[k]
        return setval(sp, fn(s), "set algebra")
    if k == "min":
        return setval(sp, sp.minimal_points(s), "set algebra")
    if k == "perfect":
        rep = perfect_report(sp, s)
        res.value = {"scattered": rep.is_scattered, "perfect": rep.is_perfect,
                     "witness": None if rep.witness_isolated is None else sp.render_point(rep.witness_isolated)}
        res.display = f"scattered={str(rep.is_scattered).lower()} perfect={str(rep.is_perfect).lower()}"
        res.provenance = "iterated derived sets"
        return res
    if k == "dense":
        sp2, c = rest[0]
        if sp2 != sp:
            raise QueryFailure("sets live on different spaces")
        return boolean(is_dense_in(sp, s, c), "closure containment")
    raise QueryFailure(f"unhandled query kind {k}")


def execute(doc: Document) -> Report:
    report = Report(summary=doc.summary())
    for q in doc.queries:
        try:
            report.results.append(_run(q, report))
        except (QueryFailure, ValueError, RuntimeError, PairError) as exc:
            report.results.append(QueryResult(q.name, q.kind, q.line, False, None, str(exc), "error"))
    return report


def render_text(report: Report) -> str:
    if not report.results:
        return ""
    lines = []
    for r in report.results:
        head = f"{r.name} = {r.kind}: "
        if not r.ok:
            lines.append(head + f"ERROR {r.display}")
            continue
        line = head + r.display
        if r.witness is not None:
            line += f" (witness {r.witness})"
        lines.append(line + f"  [{r.provenance}]")
    lines.append(f"-- {len(report.results)} queries, {report.failures} failed")
    return "\n".join(lines) + "\n"


def render_json(report: Report) -> str:
    payload = {"summary": report.summary, "queries": [r.as_json() for r in report.results],
               "failures": report.failures}
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render_dot(report: Report) -> str:
    if not report.results:
        return "digraph sslab {\n}\n"
    if not report.enumerations:
        raise QueryFailure("dot output needs an enumerate query")
    out = []
    for e in report.enumerations:
        out.append(f'digraph "{_dot_escape(e.name)}" {{')
        out.append("  rankdir=BT;")
        out.append("  node [shape=box];")
        for i, label in enumerate(e.labels):
            out.append(f'  n{i} [label="{_dot_escape(label)}"];')
        for i, j in e.edges:
            out.append(f"  n{i} -> n{j};")
        out.append("}")
    return "\n".join(out) + "\n"


def render_report(report: Report, fmt: str = "text") -> bytes:
    fn = {"text": render_text, "json": render_json, "dot": render_dot}.get(fmt)
    if fn is None:
        raise ValueError(f"unknown format {fmt!r}")
    return fn(report).encode("utf-8")


#: Shape of ``render_json`` output.
REPORT_SCHEMA = {
    "type": "object",
    "required": ["summary", "queries", "failures"],
    "properties": {
        "summary": {"type": "object", "additionalProperties": {"type": "integer"}},
        "failures": {"type": "integer", "minimum": 0},
        "queries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "kind", "line", "status", "value", "display", "provenance"],
                "properties": {
                    "name": {"type": "string"},
                    "kind": {"type": "string"},
                    "line": {"type": "integer"},
                    "status": {"enum": ["ok", "error"]},
                    "display": {"type": "string"},
                    "provenance": {"type": "string"},
                    "witness": {"type": "string"},
                },
            },
        },
    },
}
