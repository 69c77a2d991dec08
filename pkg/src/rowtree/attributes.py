"""Attribute table beside the rows: columns, cells, summaries, histograms.

Columns merge attributes that share a name and kind across node types.
Individual rows show plain values; aggregate rows summarize their members
(numeric spread for numbers, category counts otherwise). A numeric brush
over one column converts into a DOI filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError
from .graph import Graph
from .layout import INDIVIDUAL, LayoutResult, Row
from .session import DoiFilter, Session


@dataclass
class Column:
    id: str
    name: str
    kind: str
    types: list = field(default_factory=list)
    domain: Optional[list] = None

    def to_doc(self) -> dict:
        doc = {"id": self.id, "name": self.name, "kind": self.kind, "types": list(self.types)}
        if self.domain is not None:
            doc["domain"] = list(self.domain)
        return doc


def columns_for(graph: Graph) -> list[Column]:
    """All attribute columns the schema defines, in schema order.

    Attributes with the same name and kind merge into one column across
    node types; the same name with a different kind stays separate and
    gets a kind-qualified id so ids remain unique.
    """
    merged: dict[tuple, Column] = {}
    names: dict[str, int] = {}
    for t in graph.node_types.values():
        for adef in t.attributes:
            key = (adef.name, adef.kind)
            col = merged.get(key)
            if col is None:
                col = Column(id=adef.name, name=adef.name, kind=adef.kind)
                merged[key] = col
                names[adef.name] = names.get(adef.name, 0) + 1
            col.types.append(t.name)
            bounds = adef.numeric_bounds()
            incoming = list(bounds) if bounds is not None else adef.categories()
            col.domain = _merge_domain(col.kind, col.domain, incoming)
    out = list(merged.values())
    for col in out:
        if names[col.name] > 1:
            col.id = f"{col.name}:{col.kind}"
    return out


def _merge_domain(kind: str, a, b):
    if b is None:
        return a
    if a is None:
        return list(b)
    if kind == "numeric":
        return [min(a[0], b[0]), max(a[1], b[1])]
    out = list(a)
    for cat in b:
        if cat not in out:
            out.append(cat)
    return out


def build_table(session: Session, layout: LayoutResult,
                columns: Optional[list[Column]] = None) -> dict:
    """Column definitions plus, for every row and column, one cell.

    Cells are keyed by row y-index, then column id. Where the column's
    attribute does not apply to the row's type(s) the cell is marked
    absent; an applicable but missing value stays null so absent data is
    distinguishable from zero.
    """
    graph = session.graph
    cols = columns_for(graph) if columns is None else list(columns)
    cells: dict[str, dict] = {}
    for r in layout.rows:
        row_cells: dict[str, dict] = {}
        for col in cols:
            applicable = [
                nid for nid in r.covered_nodes()
                if graph.nodes[nid].type in col.types
            ]
            if not applicable:
                row_cells[col.id] = {"absent": True}
            elif r.kind == INDIVIDUAL:
                row_cells[col.id] = {"value": graph.nodes[r.node].attributes.get(col.name)}
            else:
                values = [graph.nodes[nid].attributes.get(col.name) for nid in applicable]
                present = [v for v in values if v is not None]
                row_cells[col.id] = {
                    "values": values,
                    "summary": _summary(col, present),
                }
        cells[str(r.y)] = row_cells
    return {"columns": [c.to_doc() for c in cols], "cells": cells}


def _summary(col: Column, present: list) -> dict:
    if col.kind == "numeric":
        if not present:
            return {"kind": "numeric", "count": 0}
        return {
            "kind": "numeric",
            "count": len(present),
            "min": min(present),
            "max": max(present),
            "mean": sum(present) / len(present),
        }
    counts: dict[str, int] = {}
    for v in present:
        items = v if isinstance(v, (list, tuple)) else [v]
        for item in items:
            counts[str(item)] = counts.get(str(item), 0) + 1
    if col.kind == "ordinal" and col.domain:
        ordered = {c: counts[c] for c in col.domain if c in counts}
        for c in counts:
            ordered.setdefault(c, counts[c])
    else:
        ordered = dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    return {"kind": "categories", "counts": ordered}


def histogram(session: Session, column: Column, bins: int = 10) -> dict:
    """Equal-width histogram of a numeric column over the whole subgraph.

    Covers every subgraph member carrying the attribute, laid out or not,
    so brushing sees the full population. The max value lands in the last
    bin. With no values the range falls back to the column domain, or to
    [0, 1], with all counts zero.
    """
    if column.kind != "numeric":
        raise PreconditionError(f"column {column.id!r} is not numeric")
    if bins < 1:
        raise PreconditionError("bins must be positive")
    graph = session.graph
    values = []
    for nid in session.effective_members:
        node = graph.nodes[nid]
        if node.type not in column.types:
            continue
        v = node.attributes.get(column.name)
        if v is not None:
            values.append(float(v))
    if not values:
        d = column.domain
        lo, hi = (float(d[0]), float(d[1])) if d else (0.0, 1.0)
        if lo == hi:
            return {"min": lo, "max": hi, "bins": [{"lo": lo, "hi": hi, "count": 0}]}
        width = (hi - lo) / bins
        return {"min": lo, "max": hi,
                "bins": [{"lo": lo + i * width, "hi": lo + (i + 1) * width, "count": 0}
                         for i in range(bins)]}
    lo, hi = min(values), max(values)
    if lo == hi:
        return {"min": lo, "max": hi, "bins": [{"lo": lo, "hi": hi, "count": len(values)}]}
    width = (hi - lo) / bins
    counts = [0] * bins
    for v in values:
        idx = int((v - lo) / width)
        if idx >= bins:
            idx = bins - 1
        counts[idx] += 1
    return {"min": lo, "max": hi,
            "bins": [{"lo": lo + i * width, "hi": lo + (i + 1) * width, "count": counts[i]}
                     for i in range(bins)]}


def sort_key(graph: Graph, column: Column, row: Row) -> tuple:
    """Comparable key for ordering rows by one column; absent sorts last.

    Individual rows key on their value; aggregate rows key on the summary
    mean for numeric columns and on the modal category otherwise (ties
    break toward the lexicographically smaller category).
    """
    absent = (1, 0)
    members = [nid for nid in row.covered_nodes() if graph.nodes[nid].type in column.types]
    values = [graph.nodes[nid].attributes.get(column.name) for nid in members]
    present = [v for v in values if v is not None]
    if not present:
        return absent
    if row.kind == INDIVIDUAL:
        v = present[0]
        if column.kind == "numeric":
            return (0, float(v))
        if column.kind == "ordinal" and column.domain and v in column.domain:
            return (0, column.domain.index(v))
        if isinstance(v, (list, tuple)):
            return (0, tuple(sorted(str(x) for x in v)))
        return (0, str(v))
    if column.kind == "numeric":
        return (0, sum(present) / len(present))
    summary = _summary(column, present)
    counts = summary["counts"]
    modal = min(counts, key=lambda c: (-counts[c], c))
    if column.kind == "ordinal" and column.domain and modal in column.domain:
        return (0, column.domain.index(modal))
    return (0, modal)


def doi_from_brush(column: Column, lo: float, hi: float) -> DoiFilter:
    """Numeric brush over a column, as an inclusive-range DOI filter."""
    if column.kind != "numeric":
        raise PreconditionError(f"column {column.id!r} is not numeric")
    if lo > hi:
        raise PreconditionError("brush bounds must satisfy lo <= hi")
    return DoiFilter(attribute=column.name, types=frozenset(column.types), lo=lo, hi=hi)


def doi_from_pick(column: Column, categories) -> DoiFilter:
    """Category picks over a non-numeric column, as a DOI filter."""
    if column.kind == "numeric":
        raise PreconditionError(f"column {column.id!r} is numeric; brush a range instead")
    cats = frozenset(str(c) for c in categories)
    if not cats:
        raise PreconditionError("pick at least one category")
    return DoiFilter(attribute=column.name, types=frozenset(column.types), categories=cats)
