"""Graph files (DIMACS ``.col`` and whitespace edge lists) and certificate
documents (JSON with a schema version)."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from . import __version__
from .coloring import ClassifierVerdict, Coloring, CriticalStructure
from .graph import Graph
from .partition import ChainStep, DegenCertificate, OrderedPartition, PartitionCertificate
from .verify import verify_certificate

SCHEMA_VERSION = 1


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class SchemaError(ValueError):
    pass


# --- graphs -----------------------------------------------------------------

def _guess_format(path: Path) -> str:
    return "dimacs" if path.suffix in (".col", ".dimacs") else "edge-list"


def parse_graph(path: str | Path, fmt: str | None = None) -> Graph:
    path = Path(path)
    return parse_graph_text(path.read_text(), fmt or _guess_format(path))


def parse_graph_text(text: str, fmt: str) -> Graph:
    if fmt in ("dimacs", "dimacs-col", "col"):
        return _parse_dimacs(text)
    if fmt in ("edge-list", "edgelist", "edges"):
        return _parse_edge_list(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}")


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        fields = line.split()
        if fields[0] == "p":
            if len(fields) < 3 or n is not None:
                raise GraphFormatError("bad or repeated problem line", lineno)
            try:
                n = int(fields[2])
            except ValueError:
                raise GraphFormatError("vertex count is not an integer", lineno) from None
            if n < 0:
                raise GraphFormatError("negative vertex count", lineno)
        elif fields[0] == "e":
            if n is None:
                raise GraphFormatError("edge before problem line", lineno)
            if len(fields) != 3:
                raise GraphFormatError("edge line needs two endpoints", lineno)
            try:
                u, v = int(fields[1]) - 1, int(fields[2]) - 1
            except ValueError:
                raise GraphFormatError("endpoint is not an integer", lineno) from None
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u + 1}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"endpoint out of range 1..{n}", lineno)
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphFormatError(f"unrecognised line type {fields[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line 'p edge N M'")
    return Graph.from_edges(n, sorted(edges))


def _parse_edge_list(text: str) -> Graph:
    n = 0
    declared = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n" and len(fields) == 2:
            try:
                declared = int(fields[1])
            except ValueError:
                raise GraphFormatError("vertex count is not an integer", lineno) from None
            continue
        if len(fields) != 2:
            raise GraphFormatError("expected two vertex ids", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise GraphFormatError("vertex id is not an integer", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        edges.add((min(u, v), max(u, v)))
        n = max(n, u + 1, v + 1)
    if declared is not None:
        if declared < n:
            raise GraphFormatError(f"declared n={declared} but ids reach {n - 1}")
        n = declared
    return Graph.from_edges(n, sorted(edges))


def format_graph(g: Graph, fmt: str = "dimacs") -> str:
    if fmt in ("dimacs", "dimacs-col", "col"):
        lines = [f"p edge {g.n} {g.num_edges()}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    else:
        lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    path.write_text(format_graph(g, fmt or _guess_format(path)))


def graph_digest(g: Graph) -> str:
    body = f"{g.n}\n" + "".join(f"{u} {v}\n" for u, v in g.edges())
    return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


# --- certificates -----------------------------------------------------------

def _sets(xs) -> list[list[int]]:
    return [sorted(x) for x in xs]


def certificate_document(g: Graph, cert: Any, command: str, params: dict | None = None,
                         check: bool = True, **verify_params) -> dict:
    """Serialise an engine result into a plain dict ready for JSON.

    With ``check`` the checker runs first and its verdict is embedded.
    """
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "tool": "partcolor",
        "tool_version": __version__,
        "input_digest": graph_digest(g),
        "command": command,
        "params": dict(params or {}),
    }
    sets: dict[str, Any] = {}
    if isinstance(cert, PartitionCertificate):
        doc["params"].update(r=list(cert.r), d=cert.d, k=cert.k)
        doc["outcome"] = cert.kind
        if cert.kind == "special":
            sets.update(Q=sorted(cert.q), F=_sets(cert.cliques), witnesses=_sets(cert.witnesses))
        else:
            sets["parts"] = _sets(cert.partition.parts)
        if cert.trace:
            doc["trace"] = [[s.vertex, s.source, s.target, sorted(s.component)] for s in cert.trace]
    elif isinstance(cert, DegenCertificate):
        doc["params"].update(r=list(cert.r), d=cert.d, k=cert.k)
        doc["outcome"] = cert.kind
        if cert.kind == "join":
            sets.update(clique_part=sorted(cert.clique_part),
                        independent_part=sorted(cert.independent_part))
        else:
            sets["parts"] = _sets(cert.partition.parts)
            doc["refinement"] = cert.refinement
            doc["refinement_witness"] = list(cert.refinement_witness) if cert.refinement_witness else None
        if cert.trace:
            doc["trace"] = [[s.vertex, s.source, s.target, sorted(s.component)] for s in cert.trace]
    elif isinstance(cert, Coloring):
        doc["outcome"] = "coloring"
        doc["coloring"] = {"vertices": list(cert.vertices), "colors": list(cert.colors)}
    elif isinstance(cert, CriticalStructure):
        doc["outcome"] = "critical_structure"
        doc["params"].update(k=cert.k, chi=cert.chi, omega_h=cert.omega_h)
        sets.update(Q=sorted(cert.q), F=_sets(cert.cliques), witnesses=_sets(cert.low_witnesses))
    elif isinstance(cert, ClassifierVerdict):
        doc["outcome"] = "verdict"
        doc["verdict_kind"] = cert.verdict.value
        doc["reason"] = cert.reason
        doc["chi"] = cert.chi
    else:
        raise TypeError(f"cannot serialise {type(cert).__name__}")
    if sets:
        doc["sets"] = sets
    if check and not isinstance(cert, ClassifierVerdict):
        ok, clauses = verify_certificate(g, cert, **verify_params)
        doc["checker"] = {
            "passed": ok,
            "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in clauses],
        }
    return doc


_REQUIRED = ("schema_version", "tool_version", "input_digest", "command", "params", "outcome")


def validate_document(doc: dict) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError("certificate document must be a JSON object")
    missing = [f for f in _REQUIRED if f not in doc]
    if missing:
        raise SchemaError(f"missing field(s): {', '.join(missing)}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"schema version {doc['schema_version']} is not {SCHEMA_VERSION}")
    outcome = doc["outcome"]
    needs = {
        "special": ("sets",), "partition": ("sets",), "join": ("sets",),
        "coloring": ("coloring",), "critical_structure": ("sets",), "verdict": ("verdict_kind",),
    }
    if outcome not in needs:
        raise SchemaError(f"unknown outcome {outcome!r}")
    for f in needs[outcome]:
        if f not in doc:
            raise SchemaError(f"outcome {outcome!r} needs field {f!r}")
    return doc


def write_certificate(doc: dict, path: str | Path) -> None:
    validate_document(doc)
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_certificate(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from None
    return validate_document(doc)


def document_certificate(doc: dict):
    """Rebuild the engine value a document describes."""
    validate_document(doc)
    outcome = doc["outcome"]
    params = doc["params"]
    sets = doc.get("sets", {})
    trace = tuple(ChainStep(v, s, t, frozenset(c)) for v, s, t, c in doc.get("trace", []))
    fs = lambda xs: tuple(frozenset(x) for x in xs)  # noqa: E731
    try:
        if doc["command"] in ("partition", "color") and outcome in ("special", "partition"):
            if outcome == "special":
                return PartitionCertificate("special", tuple(params["r"]), params["d"],
                                            q=frozenset(sets["Q"]), cliques=fs(sets["F"]),
                                            witnesses=fs(sets["witnesses"]), trace=trace)
            return PartitionCertificate("partition", tuple(params["r"]), params["d"],
                                        partition=OrderedPartition(fs(sets["parts"])), trace=trace)
        if outcome in ("join", "partition"):
            if outcome == "join":
                return DegenCertificate("join", tuple(params["r"]), params["d"],
                                        clique_part=frozenset(sets["clique_part"]),
                                        independent_part=frozenset(sets["independent_part"]),
                                        trace=trace)
            wit = doc.get("refinement_witness")
            return DegenCertificate("partition", tuple(params["r"]), params["d"],
                                    partition=OrderedPartition(fs(sets["parts"])),
                                    refinement=doc.get("refinement", ""),
                                    refinement_witness=tuple(wit) if wit else None, trace=trace)
        if outcome == "coloring":
            col = doc["coloring"]
            return Coloring(tuple(col["colors"]), tuple(col["vertices"]))
        if outcome == "critical_structure":
            return CriticalStructure(frozenset(sets["Q"]), fs(sets["F"]), fs(sets["witnesses"]),
                                     params["k"], params["chi"], params["omega_h"])
    except KeyError as exc:
        raise SchemaError(f"missing field {exc}") from None
    raise SchemaError(f"outcome {outcome!r} carries no checkable certificate")


def reverify(g: Graph, doc: dict) -> tuple[bool, list]:
    """Re-run the checker on a stored document against graph ``g``."""
    if doc["input_digest"] != graph_digest(g):
        raise SchemaError("document was produced for a different graph")
    cert = document_certificate(doc)
    extra = {}
    if isinstance(cert, Coloring) and "max_colors" in doc["params"]:
        extra["max_colors"] = doc["params"]["max_colors"]
    return verify_certificate(g, cert, **extra)
