"""JSON instance/result documents and DOT export.

Instance document (schema_version "1")::

    {
      "schema_version": "1",
      "n": 3,
      "colors": ["a", "b"],
      "edges": [[0, 1, "a"], [1, 2, "b"]],
      "g": {"a": 0},            # optional, missing colors default to 0
      "f": {"a": 1, "b": 1},    # optional, missing colors default to |E|
      "m": 1                    # optional
    }

Color labels are strings in documents. Result documents embed the instance
they were computed from, so every payload can be re-read and re-verified on
its own.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, NamedTuple

from . import __version__
from .construction import ColoredForest
from .feasibility import ColorBounds, FeasibilityVerdict, ViolationCertificate
from .graph import EdgeColoredGraph, GraphError
from .partition_search import TreePartition, Verification

SCHEMA_VERSION = "1"
TOOL = "chromaforest"


class DocumentError(ValueError):
    """A document is malformed; the message names the offending field."""


class Instance(NamedTuple):
    graph: EdgeColoredGraph
    bounds: ColorBounds | None
    m: int | None


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DocumentError("document root must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise DocumentError(f"schema_version: unsupported value {version!r}, expected {SCHEMA_VERSION!r}")
    return doc


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {value!r}")
    return value


def _graph_from(doc: Mapping, where: str = "") -> EdgeColoredGraph:
    n = _int(doc.get("n"), f"{where}n")
    colors = doc.get("colors")
    if not isinstance(colors, list) or not all(isinstance(c, str) for c in colors):
        raise DocumentError(f"{where}colors: expected a list of strings")
    if len(set(colors)) != len(colors):
        raise DocumentError(f"{where}colors: duplicate labels")
    known = set(colors)
    raw = doc.get("edges")
    if not isinstance(raw, list):
        raise DocumentError(f"{where}edges: expected a list")
    edges = []
    seen: set[tuple[int, int]] = set()
    for i, item in enumerate(raw):
        at = f"{where}edges[{i}]"
        if not isinstance(item, list) or len(item) != 3:
            raise DocumentError(f"{at}: expected [u, v, color]")
        u, v = _int(item[0], f"{at}[0]"), _int(item[1], f"{at}[1]")
        label = item[2]
        if u == v:
            raise DocumentError(f"{at}: loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise DocumentError(f"{at}: endpoint outside 0..{n - 1}")
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise DocumentError(f"{at}: multi-edge, pair {{{u}, {v}}} already present")
        seen.add(pair)
        if label not in known:
            raise DocumentError(f"{at}: dangling color {label!r} is not listed in colors")
        edges.append((u, v, label))
    try:
        return EdgeColoredGraph.from_edges(n, edges, colors)
    except GraphError as exc:
        raise DocumentError(f"{where}{exc}") from None


def _bound_map(doc: Mapping, key: str, graph: EdgeColoredGraph, default: int, where: str) -> tuple[int, ...]:
    raw = doc[key]
    if not isinstance(raw, dict):
        raise DocumentError(f"{where}{key}: expected an object mapping color labels to integers")
    for label, value in raw.items():
        if label not in graph.color_index:
            raise DocumentError(f"{where}{key}: dangling color {label!r}")
        if _int(value, f"{where}{key}[{label!r}]") < 0:
            raise DocumentError(f"{where}{key}[{label!r}]: must be non-negative")
    return tuple(raw.get(label, default) for label in graph.colors)


def _instance_from(doc: Mapping, where: str = "") -> Instance:
    graph = _graph_from(doc, where)
    bounds = None
    if "g" in doc or "f" in doc:
        g = _bound_map(doc, "g", graph, 0, where) if "g" in doc else (0,) * graph.color_count
        f = (
            _bound_map(doc, "f", graph, graph.edge_count, where)
            if "f" in doc
            else (graph.edge_count,) * graph.color_count
        )
        bounds = ColorBounds(g, f)
    m = _int(doc["m"], f"{where}m") if doc.get("m") is not None else None
    return Instance(graph, bounds, m)


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance document."""
    return _instance_from(_load(text))


def instance_to_dict(
    graph: EdgeColoredGraph, bounds: ColorBounds | None = None, m: int | None = None
) -> dict:
    labels = [str(c) for c in graph.colors]
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "n": graph.n,
        "colors": labels,
        "edges": [[u, v, labels[c]] for u, v, c in graph.edges],
    }
    if bounds is not None:
        doc["g"] = dict(zip(labels, bounds.g))
        doc["f"] = dict(zip(labels, bounds.f))
    if m is not None:
        doc["m"] = m
    return doc


def dumps(doc: Mapping) -> str:
    """One document per line, newline-terminated."""
    return json.dumps(doc) + "\n"


def _ordered_labels(graph: EdgeColoredGraph, labels) -> list[str]:
    return [str(c) for c in graph.colors if c in labels]


def certificate_to_dict(graph: EdgeColoredGraph, cert: ViolationCertificate) -> dict:
    return {
        "R": _ordered_labels(graph, cert.R),
        "omega": cert.omega,
        "f_bound": cert.f_bound,
        "g_bound": cert.g_bound,
        "side": cert.side,
    }


def forest_to_dict(forest: ColoredForest) -> dict:
    labels = [str(c) for c in forest.host.colors]
    indices = sorted(forest.edge_indices)
    return {
        "edge_indices": indices,
        "edges": [[u, v, labels[c]] for u, v, c in (forest.host.edges[i] for i in indices)],
        "components": forest.components,
        "histogram": dict(zip(labels, forest.histogram)),
    }


def _forest_from(graph: EdgeColoredGraph, raw: Any, where: str) -> ColoredForest:
    if not isinstance(raw, dict) or not isinstance(raw.get("edge_indices"), list):
        raise DocumentError(f"{where}: expected an object with edge_indices")
    indices = [_int(i, f"{where}.edge_indices") for i in raw["edge_indices"]]
    try:
        return ColoredForest(graph, frozenset(indices))
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


@dataclass(frozen=True)
class ResultDocument:
    """Everything a CLI run reports; ``parse_result(serialize(doc)) == doc``."""

    command: str
    status: str
    graph: EdgeColoredGraph
    bounds: ColorBounds | None = None
    m: int | None = None
    verdict: FeasibilityVerdict | None = None
    forest: ColoredForest | None = None
    partition: TreePartition | None = None
    search: dict | None = None
    verification: Verification | None = None
    oracle: dict | None = None
    message: str | None = None
    seed: int | None = None
    version: str = __version__

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL,
            "version": self.version,
            "command": self.command,
            "status": self.status,
            "seed": self.seed,
            "instance": instance_to_dict(self.graph, self.bounds, self.m),
        }
        if self.verdict is not None:
            doc["verdict"] = {
                "feasible": self.verdict.feasible,
                "certificate": (
                    certificate_to_dict(self.graph, self.verdict.certificate)
                    if self.verdict.certificate
                    else None
                ),
            }
        if self.forest is not None:
            doc["forest"] = forest_to_dict(self.forest)
        if self.partition is not None:
            doc["partition"] = {"trees": [forest_to_dict(t) for t in self.partition.trees]}
        if self.search is not None:
            doc["search"] = dict(self.search)
        if self.verification is not None:
            doc["verification"] = {"ok": self.verification.ok, "reason": self.verification.reason}
        if self.oracle is not None:
            doc["oracle"] = dict(self.oracle)
        if self.message is not None:
            doc["message"] = self.message
        return doc


def serialize(result: ResultDocument) -> str:
    return dumps(result.to_dict())


def parse_result(text: str) -> ResultDocument:
    """Parse a result document back into domain objects."""
    doc = _load(text)
    for key in ("command", "status", "instance"):
        if key not in doc:
            raise DocumentError(f"{key}: missing")
    raw_instance = doc["instance"]
    if not isinstance(raw_instance, dict):
        raise DocumentError("instance: expected an object")
    graph, bounds, m = _instance_from(raw_instance, "instance.")

    verdict = None
    if doc.get("verdict") is not None:
        raw = doc["verdict"]
        cert = None
        if raw.get("certificate") is not None:
            c = raw["certificate"]
            try:
                cert = ViolationCertificate(
                    frozenset(graph.colors[graph.color_id(x)] for x in c["R"]),
                    _int(c["omega"], "verdict.certificate.omega"),
                    _int(c["f_bound"], "verdict.certificate.f_bound"),
                    _int(c["g_bound"], "verdict.certificate.g_bound"),
                )
            except (GraphError, KeyError, ValueError) as exc:
                raise DocumentError(f"verdict.certificate: {exc}") from None
        verdict = FeasibilityVerdict(bool(raw["feasible"]), cert)

    forest = _forest_from(graph, doc["forest"], "forest") if doc.get("forest") is not None else None
    partition = None
    if doc.get("partition") is not None:
        trees = doc["partition"].get("trees")
        if not isinstance(trees, list):
            raise DocumentError("partition.trees: expected a list")
        partition = TreePartition(
            graph, tuple(_forest_from(graph, t, f"partition.trees[{i}]") for i, t in enumerate(trees))
        )
    verification = None
    if doc.get("verification") is not None:
        verification = Verification(bool(doc["verification"]["ok"]), doc["verification"].get("reason"))
    return ResultDocument(
        command=doc["command"],
        status=doc["status"],
        graph=graph,
        bounds=bounds,
        m=m,
        verdict=verdict,
        forest=forest,
        partition=partition,
        search=doc.get("search"),
        verification=verification,
        oracle=doc.get("oracle"),
        message=doc.get("message"),
        seed=doc.get("seed"),
        version=doc.get("version", __version__),
    )


def partition_groups(text: str) -> tuple[EdgeColoredGraph, list[list[int]]]:
    """Read an instance plus raw per-tree edge index lists without requiring
    the trees to be valid forests (for verification of untrusted claims)."""
    doc = _load(text)
    raw_instance = doc.get("instance")
    if not isinstance(raw_instance, dict):
        raise DocumentError("instance: expected an object")
    graph = _graph_from(raw_instance, "instance.")
    trees = (doc.get("partition") or {}).get("trees")
    if not isinstance(trees, list):
        raise DocumentError("partition.trees: expected a list")
    groups = []
    for i, tree in enumerate(trees):
        if not isinstance(tree, dict) or not isinstance(tree.get("edge_indices"), list):
            raise DocumentError(f"partition.trees[{i}]: expected an object with edge_indices")
        groups.append([_int(x, f"partition.trees[{i}].edge_indices") for x in tree["edge_indices"]])
    return graph, groups


# Graphviz X11 names; cycles when there are more colors than entries.
_DOT_PALETTE = (
    "red", "blue", "green4", "orange", "purple", "brown", "deeppink", "cyan4",
    "gold3", "gray40", "navy", "olivedrab",
)


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(
    graph: EdgeColoredGraph,
    forest: ColoredForest | None = None,
    partition: TreePartition | None = None,
    name: str = "G",
) -> str:
    """DOT rendering with each edge's color label as attributes.

    Forest edges are drawn bold and the rest dashed; partition edges carry
    a ``tree`` attribute with their tree index.
    """
    owner: dict[int, int] = {}
    if partition is not None:
        for t, tree in enumerate(partition.trees):
            for i in tree.edge_indices:
                owner[i] = t
    chosen = forest.edge_indices if forest is not None else None
    lines = [f"graph {_quote(name)} {{"]
    for v in range(graph.n):
        lines.append(f"  {v};")
    for i, (u, v, c) in enumerate(graph.edges):
        label = str(graph.colors[c])
        attrs = [
            f"label={_quote(label)}",
            f"colorlabel={_quote(label)}",
            f"color={_quote(_DOT_PALETTE[c % len(_DOT_PALETTE)])}",
        ]
        if chosen is not None:
            attrs.append('style="bold"' if i in chosen else 'style="dashed"')
        if i in owner:
            attrs.append(f"tree={owner[i]}")
        lines.append(f"  {u} -- {v} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
