"""Topology readouts for a laid-out session.

Three views sit next to the rows: per-row visible/hidden edge counts,
the hidden-edge lists behind those counts, and an adjacency matrix whose
rows are layout rows and whose columns are arbitrary graph nodes. Path
search over the induced subgraph lives here too.
"""

from __future__ import annotations

from typing import Optional

from .errors import PreconditionError
from .layout import AGGREGATE, INDIVIDUAL, LayoutResult
from .session import Session

PATH_CAP = 64


def format_count(n: int) -> str:
    """Compact integer label: 0-99 verbatim, then 1h..9h hundreds, then k."""
    if n < 0:
        raise ValueError("counts are non-negative")
    if n < 100:
        return str(n)
    if n < 1000:
        return f"{n // 100}h"
    return f"{n // 1000}k"


def _node_edge_split(session: Session) -> dict[str, tuple[int, int]]:
    """(visible, hidden) induced edge counts per effective node."""
    tree_edges = session.tree_edge_ids()
    adj = session.induced_adjacency()
    out = {}
    for nid, inc in adj.items():
        vis = sum(1 for _o, eid in inc if eid in tree_edges)
        out[nid] = (vis, len(inc) - vis)
    return out


def build_counts(session: Session, layout: LayoutResult) -> dict:
    """Per-row visible/hidden/graph edge counts with text and normalized forms.

    Aggregate rows sum their members. Normalization divides by the column
    maximum, taken separately over individual rows and over aggregate rows
    so the two row kinds stay comparable within their own population.
    """
    split = _node_edge_split(session)
    graph = session.graph
    raw = []
    for r in layout.rows:
        vis = hid = deg = 0
        for nid in r.covered_nodes():
            v, h = split.get(nid, (0, 0))
            vis += v
            hid += h
            deg += graph.degree(nid)
        raw.append((r.kind, vis, hid, deg))

    denoms = {
        INDIVIDUAL: [0, 0, 0],
        AGGREGATE: [0, 0, 0],
    }
    for kind, vis, hid, deg in raw:
        d = denoms[kind]
        d[0] = max(d[0], vis)
        d[1] = max(d[1], hid)
        d[2] = max(d[2], deg)

    def cell(value: int, denom: int) -> dict:
        return {
            "count": value,
            "text": format_count(value),
            "normalized": (value / denom) if denom else 0.0,
        }

    rows = []
    for kind, vis, hid, deg in raw:
        d = denoms[kind]
        rows.append({
            "visible": cell(vis, d[0]),
            "hidden": cell(hid, d[1]),
            "graph": cell(deg, d[2]),
        })
    return {
        "rows": rows,
        "denominators": {
            "individual": dict(zip(("visible", "hidden", "graph"), denoms[INDIVIDUAL])),
            "aggregate": dict(zip(("visible", "hidden", "graph"), denoms[AGGREGATE])),
        },
    }


def hidden_edges(session: Session, layout: LayoutResult) -> list:
    """Per row: the induced non-tree edges incident to the row's nodes.

    Edges joining two members of the same aggregate row appear once,
    flagged internal. otherRow is None when the far endpoint has no row
    (it is in the subgraph but not yet part of any tree).
    """
    tree_edges = session.tree_edge_ids()
    adj = session.induced_adjacency()
    graph = session.graph
    out = []
    for r in layout.rows:
        covered = set(r.covered_nodes())
        seen = set()
        entries = []
        for nid in r.covered_nodes():
            for other, eid in adj.get(nid, ()):
                if eid in tree_edges or eid in seen:
                    continue
                seen.add(eid)
                e = graph.edges[eid]
                internal = e.source in covered and e.target in covered
                far = other if not internal else None
                entries.append({
                    "edge": eid,
                    "source": e.source,
                    "target": e.target,
                    "internal": internal,
                    "otherRow": r.y if internal else layout.row_of(other),
                    "other": far,
                })
        out.append(entries)
    return out


def hidden_edges_of(session: Session, layout: LayoutResult, target) -> list:
    """Hidden-edge entries for one row, picked by node id or row index."""
    if isinstance(target, int):
        if not 0 <= target < len(layout.rows):
            raise PreconditionError(f"row {target} out of range")
        index = target
    else:
        index = layout.row_of(target)
        if index is None:
            raise PreconditionError(f"node {target!r} has no row")
    return hidden_edges(session, layout)[index]


def matrix(session: Session, layout: LayoutResult, columns: list[str]) -> dict:
    """Adjacency matrix between layout rows and arbitrary column nodes.

    Adjacency comes from the whole graph, not just the induced subgraph.
    Every cell has the same shape: count of row members adjacent to the
    column node, the member total, and their ratio. Parallel edges do not
    inflate counts; adjacency is a yes/no per member.
    """
    graph = session.graph
    col_meta = []
    col_sets = []
    for c in columns:
        n = graph.node(c)
        col_meta.append({"node": c, "label": n.label, "type": n.type})
        col_sets.append(set(graph.neighbors(c)))
    cells = []
    for r in layout.rows:
        members = r.covered_nodes()
        row_cells = []
        for cset in col_sets:
            count = sum(1 for m in members if m in cset)
            row_cells.append({
                "count": count,
                "members": len(members),
                "normalized": count / len(members) if members else 0.0,
            })
        cells.append(row_cells)
    return {"columns": col_meta, "cells": cells}


def auto_populate_matrix(session: Session, k: int = 5) -> list[str]:
    """Pick the k best-connected tree nodes as matrix columns.

    Connectivity is the induced-subgraph degree; ties break by label then id.
    """
    if k < 0:
        raise PreconditionError("k must be non-negative")
    nodes = []
    for t in session.trees.values():
        nodes.extend(t.depth)
    graph = session.graph
    nodes.sort(key=lambda n: (-session.induced_degree(n), graph.nodes[n].label, n))
    return nodes[:k]


def all_shortest_paths(session: Session, a: str, b: str, cap: int = PATH_CAP) -> dict:
    """Every shortest path between a and b inside the induced subgraph.

    Direction is ignored. Each step names the edge used (preferring a tree
    edge when parallels exist) and whether that edge is a tree or hidden
    edge. Enumeration stops at `cap` paths and sets the truncated flag.
    Unreachable pairs report length None and no paths.
    """
    graph = session.graph
    graph.node(a)
    graph.node(b)
    eff = session.effective_members
    for nid in (a, b):
        if nid not in eff:
            raise PreconditionError(f"node {nid!r} is not in the subgraph")

    if a == b:
        return {"a": a, "b": b, "length": 0, "truncated": False,
                "paths": [{"nodes": [a], "steps": []}]}

    adj = session.induced_adjacency()
    dist_a = _bfs_dist(adj, a)
    if b not in dist_a:
        return {"a": a, "b": b, "length": None, "truncated": False, "paths": []}
    dist_b = _bfs_dist(adj, b)
    total = dist_a[b]

    tree_edges = session.tree_edge_ids()

    # forward DFS: neighbors sorted by label/id gives lexicographic paths
    paths = []
    truncated = False
    label = lambda n: (graph.nodes[n].label, n)
    stack_path = [a]

    def walk(u: str) -> bool:
        nonlocal truncated
        if u == b:
            if len(paths) >= cap:
                truncated = True
                return False
            paths.append(list(stack_path))
            return True
        nxt = []
        for other, _eid in adj[u]:
            if dist_a.get(other) == dist_a[u] + 1 and dist_b.get(other, -1) + dist_a[other] == total:
                nxt.append(other)
        for other in sorted(set(nxt), key=label):
            stack_path.append(other)
            ok = walk(other)
            stack_path.pop()
            if not ok:
                return False
        return True

    walk(a)

    out_paths = []
    for p in paths:
        steps = []
        for u, v in zip(p, p[1:]):
            eid = _pick_edge(adj, tree_edges, u, v)
            steps.append({"edge": eid, "kind": "tree" if eid in tree_edges else "hidden"})
        out_paths.append({"nodes": p, "steps": steps})
    return {"a": a, "b": b, "length": total, "truncated": truncated, "paths": out_paths}


def _pick_edge(adj: dict, tree_edges: set, u: str, v: str) -> str:
    """Edge for step u-v: a tree edge when one exists, else smallest id."""
    candidates = [eid for other, eid in adj[u] if other == v]
    if not candidates:
        raise PreconditionError(f"no induced edge between {u!r} and {v!r}")
    return min(candidates, key=lambda eid: (eid not in tree_edges, eid))


def _bfs_dist(adj: dict, start: str) -> dict[str, int]:
    from collections import deque

    dist = {start: 0}
    q = deque([start])
    while q:
        cur = q.popleft()
        for other, _eid in adj[cur]:
            if other not in dist:
                dist[other] = dist[cur] + 1
                q.append(other)
    return dist
