"""Typed property graph store.

Holds an immutable multivariate graph: typed nodes with schema-checked
attributes, typed edges with an (ignored for topology) direction flag.
Provides degree/neighbor lookups, faceted label search and structured
subgraph queries, plus dataset directory load/save.

Dataset directory format:
    schema.json   {"nodeTypes": [{name, icon?, attributes: [{name, kind, domain?}]}],
                   "edgeTypes": [{name}]}
    nodes.jsonl   one object per line: {id, type, label, attributes?}
    edges.jsonl   one object per line: {id, source, target, type, directed?}
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import DatasetError, NotFoundError, PreconditionError

ATTRIBUTE_KINDS = ("numeric", "ordinal", "nominal", "set", "label")


@dataclass(frozen=True)
class AttributeDef:
    """Schema entry for one node attribute."""

    name: str
    kind: str
    domain: Optional[dict] = None

    def numeric_bounds(self):
        if self.domain and "min" in self.domain and "max" in self.domain:
            return float(self.domain["min"]), float(self.domain["max"])
        return None

    def categories(self):
        if self.domain and "categories" in self.domain:
            return list(self.domain["categories"])
        return None


@dataclass(frozen=True)
class NodeType:
    name: str
    icon: str = ""
    attributes: tuple[AttributeDef, ...] = ()

    def attribute(self, name: str) -> Optional[AttributeDef]:
        for a in self.attributes:
            if a.name == name:
                return a
        return None


@dataclass(frozen=True)
class Node:
    id: str
    type: str
    label: str
    attributes: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    type: str
    directed: bool = False

    def other(self, node_id: str) -> str:
        return self.target if node_id == self.source else self.source


@dataclass(frozen=True)
class SearchHit:
    id: str
    label: str
    degree: int


@dataclass
class AttributePredicate:
    """Numeric range or category membership test on one attribute."""

    attribute: str
    lo: Optional[float] = None
    hi: Optional[float] = None
    categories: Optional[set] = None

    def matches(self, value) -> bool:
        if value is None:
            return False
        if self.categories is not None:
            if isinstance(value, list):
                return any(v in self.categories for v in value)
            return value in self.categories
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            return False
        if self.lo is not None and value < self.lo:
            return False
        if self.hi is not None and value > self.hi:
            return False
        return True


@dataclass
class QuerySpec:
    """Seed nodes expanded to a bounded hop distance, then filtered.

    depth=None means unbounded. types, when given, is the set of node type
    names to keep. Predicates AND together; seeds are always kept.
    """

    seeds: list
    depth: Optional[int] = None
    types: Optional[set] = None
    predicates: list = field(default_factory=list)


class Graph:
    """Immutable typed multigraph with deterministic iteration order."""

    def __init__(self, node_types, nodes, edges):
        self.node_types: dict[str, NodeType] = node_types
        self.edge_types: list[str] = []
        self.nodes: dict[str, Node] = nodes
        self.edges: dict[str, Edge] = edges
        self._adj: dict[str, list[tuple[str, str]]] = {nid: [] for nid in nodes}
        for e in edges.values():
            self._adj[e.source].append((e.target, e.id))
            self._adj[e.target].append((e.source, e.id))
        # deterministic incident order: neighbor label, id, then edge id
        for nid, inc in self._adj.items():
            inc.sort(key=lambda p: (self.nodes[p[0]].label, p[0], p[1]))

    # -- basic lookups -----------------------------------------------------

    def node(self, node_id: str) -> Node:
        n = self.nodes.get(node_id)
        if n is None:
            raise NotFoundError(f"unknown node id {node_id!r}")
        return n

    def has_node(self, node_id: str) -> bool:
        return node_id in self.nodes

    def degree(self, node_id: str) -> int:
        """Number of incident edges, direction ignored, multi-edges counted."""
        self.node(node_id)
        return len(self._adj[node_id])

    def incident(self, node_id: str) -> list[tuple[str, str]]:
        """Ordered (neighbor id, edge id) pairs for every incident edge."""
        self.node(node_id)
        return list(self._adj[node_id])

    def neighbors(self, node_id: str, type_filter: Optional[set] = None) -> list[str]:
        """Ordered neighbor ids (with multiplicity for parallel edges).

        type_filter, when given, is the set of node type names to include.
        """
        self.node(node_id)
        out = []
        for other, _eid in self._adj[node_id]:
            if type_filter is not None and self.nodes[other].type not in type_filter:
                continue
            out.append(other)
        return out

    def attribute_value(self, node_id: str, attribute: str):
        return self.node(node_id).attributes.get(attribute)

    # -- search ------------------------------------------------------------

    def search_faceted(self, query: str) -> dict[str, list[SearchHit]]:
        """Case-insensitive label substring search, grouped by node type.

        Facets follow schema type order and carry only non-empty hit lists,
        each sorted by degree descending then label, id.
        """
        if not query:
            return {}
        needle = query.lower()
        by_type: dict[str, list[SearchHit]] = {}
        for n in self.nodes.values():
            if needle in n.label.lower():
                by_type.setdefault(n.type, []).append(SearchHit(n.id, n.label, len(self._adj[n.id])))
        out: dict[str, list[SearchHit]] = {}
        for tname in self.node_types:
            hits = by_type.get(tname)
            if hits:
                hits.sort(key=lambda h: (-h.degree, h.label, h.id))
                out[tname] = hits
        return out

    # -- structured query --------------------------------------------------

    def structured_query(self, spec: QuerySpec) -> list[str]:
        """Nodes within spec.depth hops of any seed that pass the filters.

        Distance is measured over the whole graph ignoring direction; seeds
        are always included. Returns ids in discovery (BFS) order.
        """
        for s in spec.seeds:
            self.node(s)
        seen = {s: 0 for s in spec.seeds}
        order = list(dict.fromkeys(spec.seeds))
        q = deque(order)
        while q:
            cur = q.popleft()
            d = seen[cur]
            if spec.depth is not None and d >= spec.depth:
                continue
            for other, _eid in self._adj[cur]:
                if other not in seen:
                    seen[other] = d + 1
                    order.append(other)
                    q.append(other)

        seeds = set(spec.seeds)

        def keep(nid: str) -> bool:
            if nid in seeds:
                return True
            n = self.nodes[nid]
            if spec.types is not None and n.type not in spec.types:
                return False
            for p in spec.predicates:
                if not p.matches(n.attributes.get(p.attribute)):
                    return False
            return True

        return [nid for nid in order if keep(nid)]

    # -- construction and validation ----------------------------------------

    @classmethod
    def build(cls, schema: dict, node_records: Iterable[dict], edge_records: Iterable[dict]) -> "Graph":
        """Validate raw records and assemble a graph.

        Raises DatasetError naming the offending ids on duplicate ids,
        dangling endpoints, self-loops, unknown types and attribute
        kind/schema mismatches.
        """
        node_types = _parse_schema(schema)
        edge_type_names = [t.get("name") for t in schema.get("edgeTypes", [])]
        if len(set(edge_type_names)) != len(edge_type_names):
            raise DatasetError("duplicate edge type names in schema")

        nodes: dict[str, Node] = {}
        for rec in node_records:
            n = _parse_node(rec, node_types)
            if n.id in nodes:
                raise DatasetError(f"duplicate node id {n.id!r}")
            nodes[n.id] = n

        edges: dict[str, Edge] = {}
        dangling = []
        for rec in edge_records:
            e = _parse_edge(rec, edge_type_names)
            if e.id in edges:
                raise DatasetError(f"duplicate edge id {e.id!r}")
            if e.source == e.target:
                raise DatasetError(f"edge {e.id!r} is a self-loop on {e.source!r}")
            for endpoint in (e.source, e.target):
                if endpoint not in nodes:
                    dangling.append(f"edge {e.id!r} references missing node {endpoint!r}")
            edges[e.id] = e
        if dangling:
            raise DatasetError("; ".join(dangling))

        g = cls(node_types, nodes, edges)
        g.edge_types = edge_type_names
        return g

    def to_records(self) -> tuple[dict, list[dict], list[dict]]:
        schema = {
            "nodeTypes": [
                {
                    "name": t.name,
                    "icon": t.icon,
                    "attributes": [
                        {"name": a.name, "kind": a.kind, **({"domain": a.domain} if a.domain else {})}
                        for a in t.attributes
                    ],
                }
                for t in self.node_types.values()
            ],
            "edgeTypes": [{"name": n} for n in self.edge_types],
        }
        node_recs = [
            {"id": n.id, "type": n.type, "label": n.label, "attributes": n.attributes}
            for n in self.nodes.values()
        ]
        edge_recs = [
            {"id": e.id, "source": e.source, "target": e.target, "type": e.type, "directed": e.directed}
            for e in self.edges.values()
        ]
        return schema, node_recs, edge_recs


def _parse_schema(schema: dict) -> dict[str, NodeType]:
    if not isinstance(schema, dict) or "nodeTypes" not in schema:
        raise DatasetError("schema must be an object with a nodeTypes list")
    out: dict[str, NodeType] = {}
    for t in schema["nodeTypes"]:
        name = t.get("name")
        if not isinstance(name, str) or not name:
            raise DatasetError("node type without a name")
        if name in out:
            raise DatasetError(f"duplicate node type {name!r}")
        attrs = []
        seen = set()
        for a in t.get("attributes", []):
            aname, kind = a.get("name"), a.get("kind")
            if not isinstance(aname, str) or not aname:
                raise DatasetError(f"attribute without a name on type {name!r}")
            if kind not in ATTRIBUTE_KINDS:
                raise DatasetError(f"attribute {aname!r} on type {name!r} has unknown kind {kind!r}")
            if aname in seen:
                raise DatasetError(f"duplicate attribute {aname!r} on type {name!r}")
            seen.add(aname)
            domain = a.get("domain")
            if kind == "ordinal" and (not domain or "categories" not in domain):
                raise DatasetError(f"ordinal attribute {aname!r} on type {name!r} needs ordered categories")
            attrs.append(AttributeDef(aname, kind, domain))
        out[name] = NodeType(name, t.get("icon", ""), tuple(attrs))
    return out


def _check_value(type_name: str, adef: AttributeDef, value, node_id: str):
    kind = adef.kind
    ok = True
    if kind == "numeric":
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    elif kind in ("nominal", "label"):
        ok = isinstance(value, str)
    elif kind == "ordinal":
        ok = isinstance(value, str) and value in (adef.categories() or ())
    elif kind == "set":
        ok = isinstance(value, list) and all(isinstance(v, str) for v in value)
    if not ok:
        raise DatasetError(
            f"node {node_id!r}: value {value!r} does not fit {kind} attribute {adef.name!r} of type {type_name!r}"
        )


def _parse_node(rec: dict, node_types: dict[str, NodeType]) -> Node:
    if not isinstance(rec, dict):
        raise DatasetError(f"node record is not an object: {rec!r}")
    nid, ntype, label = rec.get("id"), rec.get("type"), rec.get("label")
    if not isinstance(nid, str) or not nid:
        raise DatasetError(f"node record without string id: {rec!r}")
    if ntype not in node_types:
        raise DatasetError(f"node {nid!r} has unknown type {ntype!r}")
    if not isinstance(label, str):
        raise DatasetError(f"node {nid!r} has no string label")
    attrs = rec.get("attributes", {})
    if not isinstance(attrs, dict):
        raise DatasetError(f"node {nid!r} attributes must be an object")
    t = node_types[ntype]
    for aname, value in attrs.items():
        adef = t.attribute(aname)
        if adef is None:
            raise DatasetError(f"node {nid!r} carries attribute {aname!r} not in schema of type {ntype!r}")
        _check_value(ntype, adef, value, nid)
    return Node(nid, ntype, label, dict(attrs))


def _parse_edge(rec: dict, edge_type_names: list) -> Edge:
    if not isinstance(rec, dict):
        raise DatasetError(f"edge record is not an object: {rec!r}")
    eid = rec.get("id")
    if not isinstance(eid, str) or not eid:
        raise DatasetError(f"edge record without string id: {rec!r}")
    src, dst, etype = rec.get("source"), rec.get("target"), rec.get("type")
    if not isinstance(src, str) or not isinstance(dst, str):
        raise DatasetError(f"edge {eid!r} needs string source and target")
    if etype not in edge_type_names:
        raise DatasetError(f"edge {eid!r} has unknown type {etype!r}")
    directed = rec.get("directed", False)
    if not isinstance(directed, bool):
        raise DatasetError(f"edge {eid!r} directed flag must be boolean")
    return Edge(eid, src, dst, etype, directed)


# -- dataset directories ----------------------------------------------------


def _read_jsonl(path: Path) -> list[dict]:
    out = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise DatasetError(f"malformed JSON: {exc}", path=str(path), line=lineno) from exc
    return out


def load_dataset(path) -> Graph:
    """Load a dataset directory (schema.json + nodes.jsonl + edges.jsonl)."""
    d = Path(path)
    schema_path = d / "schema.json"
    if not d.is_dir() or not schema_path.is_file():
        raise DatasetError(f"not a dataset directory: {d}")
    try:
        schema = json.loads(schema_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetError(f"malformed schema.json: {exc}", path=str(schema_path)) from exc
    nodes_path, edges_path = d / "nodes.jsonl", d / "edges.jsonl"
    node_recs = _read_jsonl(nodes_path) if nodes_path.is_file() else []
    edge_recs = _read_jsonl(edges_path) if edges_path.is_file() else []
    return Graph.build(schema, node_recs, edge_recs)


def save_dataset(graph: Graph, path) -> None:
    """Write a graph back out in the dataset directory format."""
    d = Path(path)
    d.mkdir(parents=True, exist_ok=True)
    schema, node_recs, edge_recs = graph.to_records()
    (d / "schema.json").write_text(json.dumps(schema, indent=2) + "\n", encoding="utf-8")
    for fname, recs in (("nodes.jsonl", node_recs), ("edges.jsonl", edge_recs)):
        with open(d / fname, "w", encoding="utf-8") as f:
            for rec in recs:
                f.write(json.dumps(rec) + "\n")


def list_datasets(root) -> list[str]:
    """Names of dataset directories directly under root, sorted."""
    r = Path(root)
    if not r.is_dir():
        raise PreconditionError(f"data directory does not exist: {r}")
    return sorted(p.name for p in r.iterdir() if p.is_dir() and (p / "schema.json").is_file())
