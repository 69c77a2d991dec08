"""Linearize a session's forest into an ordered list of rows.

Each branch renders in one of two modes: tree (depth-first, children
indented under parents) or level (all nodes of a depth grouped together,
relative to the branch root). Aggregation collapses rows: in tree mode
the leaf children of each internal node fold into one aggregate row
placed right after their parent; in level mode each level folds into one
aggregate row (the branch root stays individual). A binary DOI filter
pulls matching members back out of aggregates into individual rows placed
immediately before their source aggregate. An active node path overrides
everything else: its rows always end up consecutive, in path order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError
from .ordering import OrderSpec
from .session import LEVEL, TREE, DoiFilter, Session

_UNSET = object()

INDIVIDUAL = "individual"
AGGREGATE = "aggregate"


@dataclass
class Row:
    kind: str
    depth: int
    mode: str
    branch: str
    node: Optional[str] = None
    members: list = field(default_factory=list)
    parent_node: Optional[str] = None
    y: int = -1
    parent_row: Optional[int] = None

    def covered_nodes(self) -> list:
        return [self.node] if self.kind == INDIVIDUAL else list(self.members)


@dataclass
class LayoutResult:
    rows: list
    revision: int
    sort: OrderSpec
    node_row: dict = field(default_factory=dict)

    def row_of(self, node_id: str) -> Optional[int]:
        return self.node_row.get(node_id)


class _Emitter:
    def __init__(self, session: Session, sort: OrderSpec, modes: dict, aggs: dict,
                 doi: Optional[DoiFilter], path: Optional[list]):
        self.s = session
        self.sort = sort
        self.modes = modes
        self.aggs = aggs
        self.doi = doi
        self.path = path
        self.path_set = set(path) if path else set()
        self.rows: list[Row] = []
        self._mode_memo: dict[str, str] = {}
        self._agg_memo: dict[str, bool] = {}
        self.counts = None
        if sort.key.startswith("count:"):
            self.counts = _node_counts(session)

    # annotation resolution: nearest annotated ancestor or self

    def _resolve(self, node: str, table: dict, memo: dict, default):
        chain = []
        cur = node
        t = self.s.tree_of(node)
        while cur is not None and cur not in memo:
            if cur in table:
                memo[cur] = table[cur]
                break
            chain.append(cur)
            pe = t.parent.get(cur)
            cur = pe[0] if pe else None
        value = memo.get(cur, default) if cur is not None else default
        for n in chain:
            memo[n] = value
        return value

    def eff_mode(self, node: str) -> str:
        return self._resolve(node, self.modes, self._mode_memo, TREE)

    def eff_agg(self, node: str) -> bool:
        return self._resolve(node, self.aggs, self._agg_memo, False)

    def forced_individual(self, node: str) -> bool:
        if node in self.path_set:
            return True
        return self.doi is not None and self.doi.matches(self.s.graph, node)

    def ordered(self, ids) -> list:
        return self.s.ordered(ids, key=self.sort.key, direction=self.sort.direction, counts=self.counts)

    # emission

    def emit_root(self, root: str) -> None:
        self._emit_region(root)

    def _emit_region(self, region_root: str) -> None:
        if self.eff_mode(region_root) == LEVEL:
            self._emit_level_region(region_root)
        else:
            self._emit_tree_node(region_root, region_root)

    def _row(self, **kw) -> Row:
        r = Row(**kw)
        self.rows.append(r)
        return r

    def _individual(self, node: str, mode: str, branch: str) -> None:
        t = self.s.tree_of(node)
        pe = t.parent.get(node)
        self._row(
            kind=INDIVIDUAL,
            node=node,
            depth=t.depth[node],
            mode=mode,
            branch=branch,
            parent_node=pe[0] if pe else None,
        )

    def _emit_tree_node(self, node: str, branch: str) -> None:
        self._individual(node, TREE, branch)
        t = self.s.tree_of(node)
        kids = t.children[node]
        pool, others = [], []
        for c in kids:
            is_leaf = not t.children[c]
            if is_leaf and c not in self.modes and self.eff_agg(c):
                pool.append(c)
            else:
                others.append(c)
        extracted = [c for c in pool if self.forced_individual(c)]
        members = [c for c in pool if c not in set(extracted)]
        for c in self.ordered(extracted):
            self._individual(c, TREE, branch)
        if members:
            self._row(
                kind=AGGREGATE,
                members=self.ordered(members),
                depth=t.depth[node] + 1,
                mode=TREE,
                branch=branch,
                parent_node=node,
            )
        for c in self.ordered(others):
            if c in self.modes:
                self._emit_region(c)
            else:
                self._emit_tree_node(c, branch)

    def _emit_level_region(self, region_root: str) -> None:
        self._individual(region_root, LEVEL, region_root)
        t = self.s.tree_of(region_root)
        groups: dict[int, list] = {}
        nested: list[str] = []
        stack = list(t.children[region_root])
        while stack:
            cur = stack.pop()
            if cur in self.modes:
                nested.append(cur)
                continue
            groups.setdefault(t.depth[cur], []).append(cur)
            stack.extend(t.children[cur])
        for d in sorted(groups):
            members = groups[d]
            indiv = [m for m in members if not self.eff_agg(m) or self.forced_individual(m)]
            rest = [m for m in members if m not in set(indiv)]
            for m in self.ordered(indiv):
                self._individual(m, LEVEL, region_root)
            if rest:
                self._row(
                    kind=AGGREGATE,
                    members=self.ordered(rest),
                    depth=d,
                    mode=LEVEL,
                    branch=region_root,
                    parent_node=region_root,
                )
        ordered_nested: list[str] = []
        by_depth: dict[int, list] = {}
        for n in nested:
            by_depth.setdefault(t.depth[n], []).append(n)
        for d in sorted(by_depth):
            ordered_nested.extend(self.ordered(by_depth[d]))
        for n in ordered_nested:
            self._emit_region(n)


def _node_counts(session: Session) -> dict:
    """visible / hidden / graph edge counts for every tree node."""
    tree_edges = session.tree_edge_ids()
    adj = session.induced_adjacency()
    out = {}
    for t in session.trees.values():
        for n in t.depth:
            vis = hid = 0
            for _other, eid in adj.get(n, ()):
                if eid in tree_edges:
                    vis += 1
                else:
                    hid += 1
            out[n] = {"visible": vis, "hidden": hid, "graph": session.graph.degree(n)}
    return out


def _validate_stored_path(session: Session, path: Optional[list]) -> Optional[list]:
    """A stored path survives only while it is still a parent chain."""
    if not path:
        return None
    for p in path:
        t = session.tree_of(p)
        if t is None:
            return None
    t0 = session.tree_of(path[0])
    for prev, cur in zip(path, path[1:]):
        t = session.tree_of(cur)
        if t is not t0:
            return None
        pe = t.parent.get(cur)
        if pe is None or pe[0] != prev:
            return None
    return path


def linearize(
    session: Session,
    *,
    sort: Optional[OrderSpec] = None,
    modes: Optional[dict] = None,
    aggregates: Optional[dict] = None,
    doi=_UNSET,
    path=_UNSET,
) -> LayoutResult:
    """Produce the ordered rows for the session's current forest.

    Keyword overrides replace the corresponding session state for this
    call only; every row order produced is deterministic.
    """
    sort = sort if sort is not None else session.order
    modes = modes if modes is not None else session.branch_modes
    aggregates = aggregates if aggregates is not None else session.branch_aggregate
    doi = session.doi if doi is _UNSET else doi
    raw_path = session.path_order if path is _UNSET else path
    active_path = _validate_stored_path(session, raw_path)

    em = _Emitter(session, sort, dict(modes), dict(aggregates), doi, active_path)
    for root in session.roots:
        em.emit_root(root)
    rows = em.rows

    if active_path and len(active_path) >= 1:
        rows = _apply_path_order(rows, active_path)

    node_row: dict[str, int] = {}
    for i, r in enumerate(rows):
        r.y = i
        if r.kind == INDIVIDUAL:
            node_row[r.node] = i
        else:
            for m in r.members:
                node_row[m] = i
    for r in rows:
        r.parent_row = node_row.get(r.parent_node) if r.parent_node is not None else None
    return LayoutResult(rows=rows, revision=session.revision, sort=sort, node_row=node_row)


def _apply_path_order(rows: list, path: list) -> list:
    pos = {}
    for i, r in enumerate(rows):
        if r.kind == INDIVIDUAL and r.node in set(path):
            pos[r.node] = i
    if len(pos) != len(path):
        return rows
    head_pos = pos[path[0]]
    block = set(pos.values())
    out = []
    for i, r in enumerate(rows):
        if i in block:
            if i == head_pos:
                out.extend(rows[pos[p]] for p in path)
            continue
        out.append(r)
    return out


# -- public views -------------------------------------------------------------


def linearize_level(session: Session, branch_root: str, sort: Optional[OrderSpec] = None) -> list:
    """Rows for one branch laid out in level mode (no aggregation change)."""
    modes = dict(session.branch_modes)
    modes[branch_root] = LEVEL
    layout = linearize(session, modes=modes, sort=sort)
    return _branch_slice(session, layout, branch_root)


def aggregate_tree_mode(session: Session, branch_root: str, sort: Optional[OrderSpec] = None) -> list:
    """Rows for one branch in tree mode with leaf aggregation on."""
    modes = dict(session.branch_modes)
    modes[branch_root] = TREE
    aggs = dict(session.branch_aggregate)
    aggs[branch_root] = True
    layout = linearize(session, modes=modes, aggregates=aggs, sort=sort)
    return _branch_slice(session, layout, branch_root)


def aggregate_level_mode(session: Session, branch_root: str, sort: Optional[OrderSpec] = None) -> list:
    """Rows for one branch in level mode with per-level aggregation on."""
    modes = dict(session.branch_modes)
    modes[branch_root] = LEVEL
    aggs = dict(session.branch_aggregate)
    aggs[branch_root] = True
    layout = linearize(session, modes=modes, aggregates=aggs, sort=sort)
    return _branch_slice(session, layout, branch_root)


def apply_doi(session: Session, doi: Optional[DoiFilter], **overrides) -> LayoutResult:
    """Layout with a DOI filter pulling matches out of aggregate rows."""
    return linearize(session, doi=doi, **overrides)


def sort_within_levels(session: Session, sort: OrderSpec) -> LayoutResult:
    """Reorder siblings (tree mode) and level groups (level mode).

    Sorting never restructures trees; parents still precede children.
    """
    return linearize(session, sort=sort.validate())


def _branch_slice(session: Session, layout: LayoutResult, branch_root: str) -> list:
    t = session.tree_of(branch_root)
    if t is None:
        raise PreconditionError(f"node {branch_root!r} is not part of a tree")
    sub = set(t.subtree(branch_root))
    start = layout.row_of(branch_root)
    if start is None:
        raise PreconditionError(f"node {branch_root!r} has no row")
    out = []
    for r in layout.rows[start:]:
        if set(r.covered_nodes()) <= sub:
            out.append(r)
        else:
            break
    return out


# -- path ordering -------------------------------------------------------------


def path_sort(session: Session, path: list) -> LayoutResult:
    """Restructure so the given path reads as consecutive rows.

    Consecutive path nodes must share an induced edge. Branches are
    reattached along the path (re-rooting at the path head first when the
    path climbs through its own ancestors); the path then stays pinned in
    the session until a later mutation breaks the chain.
    """
    if not path:
        raise PreconditionError("path must name at least one node")
    if len(set(path)) != len(path):
        raise PreconditionError("path nodes must be distinct")
    eff = session.effective_members
    for p in path:
        session.graph.node(p)
        if p not in eff:
            raise PreconditionError(f"path node {p!r} is not in the subgraph")
    for prev, cur in zip(path, path[1:]):
        session._first_edge(prev, cur)  # raises when no induced edge exists

    if len(path) > 1:
        head = path[0]
        t0 = session.tree_of(head)
        if t0 is None:
            session.make_root(head)
        else:
            anc = set(t0.ancestors(head))
            if any(p in anc for p in path[1:]):
                session.make_root(head)
        for prev, cur in zip(path, path[1:]):
            t = session.tree_of(cur)
            parent = t.parent.get(cur, (None,))[0] if t is not None else None
            if parent != prev:
                session.reattach_branch(cur, prev)

    session.path_order = list(path)
    session._bump()
    return linearize(session)
