"""Assemble the layout document: the one stable artifact clients consume.

The document bundles rows, the node metadata they reference, edge counts,
hidden-edge lists, the adjacency matrix and the attribute table, all under
the session revision that produced them. One serializer (to_json) is used
everywhere so equal documents are equal bytes.
"""

from __future__ import annotations

import json
from typing import Optional

from .attributes import build_table
from .layout import INDIVIDUAL, LayoutResult, linearize
from .session import Session
from .topology import build_counts, hidden_edges, matrix


def _members_by_type(session: Session, members: list) -> dict:
    by_type: dict[str, list] = {}
    for m in members:
        by_type.setdefault(session.graph.nodes[m].type, []).append(m)
    # schema order keeps aggregate labels stable across runs
    return {t: by_type[t] for t in session.graph.node_types if t in by_type}


def _row_doc(session: Session, row) -> dict:
    base = {
        "kind": row.kind,
        "y": row.y,
        "depth": row.depth,
        "parentRow": row.parent_row,
        "mode": row.mode,
        "branch": row.branch,
    }
    if row.kind == INDIVIDUAL:
        node = session.graph.nodes[row.node]
        base["node"] = row.node
        base["type"] = node.type
        base["label"] = node.label
    else:
        base["members"] = _members_by_type(session, row.members)
        base["size"] = len(row.members)
    return base


def build_document(session: Session, layout: Optional[LayoutResult] = None) -> dict:
    """The full layout document for the session's current revision."""
    if layout is None:
        layout = linearize(session)
    rows = [_row_doc(session, r) for r in layout.rows]
    hidden = hidden_edges(session, layout)

    referenced = set(session.matrix_columns)
    for r in layout.rows:
        referenced.update(r.covered_nodes())
    for entries in hidden:
        for e in entries:
            referenced.add(e["source"])
            referenced.add(e["target"])
    nodes = {
        nid: {"label": session.graph.nodes[nid].label, "type": session.graph.nodes[nid].type}
        for nid in sorted(referenced)
    }

    return {
        "revision": layout.revision,
        "dataset": session.dataset,
        "sort": layout.sort.to_doc(),
        "rows": rows,
        "nodes": nodes,
        "edgeCounts": build_counts(session, layout),
        "hiddenEdges": hidden,
        "matrix": matrix(session, layout, session.matrix_columns),
        "attributeTable": build_table(session, layout),
    }


def counts_document(session: Session, layout: Optional[LayoutResult] = None) -> dict:
    if layout is None:
        layout = linearize(session)
    return {"revision": layout.revision, "edgeCounts": build_counts(session, layout)}


def path_document(session: Session, result: dict) -> dict:
    doc = {"revision": session.revision}
    doc.update(result)
    return doc


def to_json(doc: dict) -> str:
    """Canonical serialization; equal documents serialize to equal bytes."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def render_text(doc: dict) -> str:
    """Diagnostic one-line-per-row rendering of a layout document.

    Indentation tracks depth; aggregate rows show member tallies per type;
    the three trailing figures are visible/hidden/graph edge counts in
    their compact text form.
    """
    lines = []
    count_rows = doc["edgeCounts"]["rows"]
    for row in doc["rows"]:
        indent = "  " * row["depth"]
        if row["kind"] == INDIVIDUAL:
            label = row["label"]
        else:
            parts = [f"{len(ids)} × {t}" for t, ids in row["members"].items()]
            label = "[" + ", ".join(parts) + "]"
        c = count_rows[row["y"]]
        lines.append(f"{indent}{label}  {c['visible']['text']}/{c['hidden']['text']}/{c['graph']['text']}")
    return "\n".join(lines) + ("\n" if lines else "")
