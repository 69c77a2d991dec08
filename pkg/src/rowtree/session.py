"""Exploration sessions over a loaded graph.

A session owns a working subgraph (node membership plus the edges induced
between unfiltered members) and a forest of breadth-first spanning trees
over it. Reshaping operations grow, rebuild and prune that forest; every
mutation bumps the session revision. Nodes added without a connection to
any tree stay pending (they belong to the subgraph but to no row) until a
root claims them.
"""

from __future__ import annotations

from bisect import insort
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import NotFoundError, OpError, PreconditionError
from .graph import Graph
from .ordering import OrderSpec, attribute_sort_value, sort_ids

TREE = "tree"
LEVEL = "level"


@dataclass
class DoiFilter:
    """Binary degree-of-interest test: attribute in range / category set.

    types limits which node types can match (None = any type carrying the
    attribute). Numeric bounds are inclusive; None means unbounded.
    """

    attribute: str
    types: Optional[frozenset] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    categories: Optional[frozenset] = None

    def matches(self, graph: Graph, node_id: str) -> bool:
        node = graph.nodes[node_id]
        if self.types is not None and node.type not in self.types:
            return False
        value = node.attributes.get(self.attribute)
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

    def to_doc(self) -> dict:
        doc: dict = {"attribute": self.attribute}
        doc["types"] = sorted(self.types) if self.types is not None else None
        if self.categories is not None:
            doc["categories"] = sorted(self.categories)
        else:
            doc["range"] = [self.lo, self.hi]
        return doc

    @classmethod
    def from_doc(cls, doc: dict) -> "DoiFilter":
        types = doc.get("types")
        cats = doc.get("categories")
        lo, hi = (doc.get("range") or (None, None)) if cats is None else (None, None)
        return cls(
            attribute=doc["attribute"],
            types=frozenset(types) if types is not None else None,
            lo=lo,
            hi=hi,
            categories=frozenset(cats) if cats is not None else None,
        )


class SpanningTree:
    """Rooted tree of subgraph nodes; every link is a real induced edge."""

    __slots__ = ("root", "parent", "children", "depth")

    def __init__(self, root: str):
        self.root = root
        self.parent: dict[str, tuple[str, str]] = {}
        self.children: dict[str, list[str]] = {root: []}
        self.depth: dict[str, int] = {root: 0}

    def contains(self, node_id: str) -> bool:
        return node_id in self.depth

    def attach(self, child: str, parent: str, edge_id: str) -> None:
        self.parent[child] = (parent, edge_id)
        self.children[parent].append(child)
        self.children[child] = []
        self.depth[child] = self.depth[parent] + 1

    def subtree(self, node_id: str) -> list[str]:
        """Preorder node ids of the subtree rooted at node_id."""
        out, stack = [], [node_id]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(reversed(self.children[cur]))
        return out

    def ancestors(self, node_id: str) -> list[str]:
        out = []
        cur = node_id
        while cur in self.parent:
            cur = self.parent[cur][0]
            out.append(cur)
        return out

    def recompute_depths(self) -> None:
        self.depth = {self.root: 0}
        stack = [self.root]
        while stack:
            cur = stack.pop()
            for c in self.children[cur]:
                self.depth[c] = self.depth[cur] + 1
                stack.append(c)


class Session:
    """Mutable exploration state bound to one graph."""

    def __init__(self, graph: Graph, dataset: str = ""):
        self.graph = graph
        self.dataset = dataset
        self.members: set[str] = set()
        self.type_filters: set[str] = set()
        self.order = OrderSpec()
        self.selection: Optional[str] = None
        self.revision = 0
        self.roots: list[str] = []
        self.trees: dict[str, SpanningTree] = {}
        self.branch_modes: dict[str, str] = {}
        self.branch_aggregate: dict[str, bool] = {}
        self.doi: Optional[DoiFilter] = None
        self.matrix_columns: list[str] = []
        self.path_order: Optional[list[str]] = None
        self._adj_dirty = True
        self._effective: set[str] = set()
        self._adj: dict[str, list[tuple[str, str]]] = {}
        self._edge_ids: set[str] = set()

    # -- derived state -------------------------------------------------------

    def _adj_key(self, pair: tuple[str, str]):
        return (self.graph.nodes[pair[0]].label, pair[0], pair[1])

    def _refresh(self) -> None:
        if not self._adj_dirty:
            return
        eff = {m for m in self.members if self.graph.nodes[m].type not in self.type_filters}
        adj: dict[str, list[tuple[str, str]]] = {m: [] for m in eff}
        edge_ids: set[str] = set()
        for m in eff:
            for other, eid in self.graph.incident(m):
                if other in eff and eid not in edge_ids:
                    edge_ids.add(eid)
                    adj[m].append((other, eid))
                    adj[other].append((m, eid))
        for m, inc in adj.items():
            inc.sort(key=self._adj_key)
        self._effective, self._adj, self._edge_ids = eff, adj, edge_ids
        self._adj_dirty = False

    def _insert_members(self, new_ids: Iterable[str]) -> None:
        """Splice freshly added (unfiltered) members into the cached induced
        adjacency instead of rebuilding it. No-op while the cache is stale."""
        if self._adj_dirty:
            return
        for m in new_ids:
            inc = []
            for other, eid in self.graph.incident(m):
                if other in self._effective and eid not in self._edge_ids:
                    self._edge_ids.add(eid)
                    inc.append((other, eid))
                    insort(self._adj[other], (m, eid), key=self._adj_key)
            inc.sort(key=self._adj_key)
            self._adj[m] = inc
            self._effective.add(m)

    @property
    def effective_members(self) -> set[str]:
        self._refresh()
        return set(self._effective)

    def induced_edge_ids(self) -> set[str]:
        self._refresh()
        return set(self._edge_ids)

    def induced_adjacency(self) -> dict[str, list[tuple[str, str]]]:
        self._refresh()
        return self._adj

    def induced_degree(self, node_id: str) -> int:
        self._refresh()
        return len(self._adj.get(node_id, ()))

    def tree_of(self, node_id: str) -> Optional[SpanningTree]:
        for t in self.trees.values():
            if t.contains(node_id):
                return t
        return None

    def tree_edge_ids(self) -> set[str]:
        out = set()
        for t in self.trees.values():
            for _child, (_parent, eid) in t.parent.items():
                out.add(eid)
        return out

    def pending_nodes(self) -> set[str]:
        self._refresh()
        return {m for m in self._effective if self.tree_of(m) is None}

    def _bump(self) -> None:
        self.revision += 1

    # -- ordering -------------------------------------------------------------

    def sort_value(self, node_id: str, key: Optional[str] = None, counts=None):
        key = key if key is not None else self.order.key
        if key == "label":
            return self.graph.nodes[node_id].label
        if key == "degree":
            return self.induced_degree(node_id)
        if key.startswith("count:"):
            if counts is not None:
                return counts[node_id][key.split(":", 1)[1]]
            # while a tree is being built, tree-relative counts don't exist
            return self.induced_degree(node_id)
        if key.startswith("attr:"):
            return attribute_sort_value(self.graph, node_id, key.split(":", 1)[1])
        raise OpError(f"unknown sort key {key!r}")

    def ordered(self, ids: Iterable[str], key: Optional[str] = None, direction: Optional[str] = None, counts=None) -> list[str]:
        direction = direction if direction is not None else self.order.direction
        tiebreak = lambda i: (self.graph.nodes[i].label, i)
        return sort_ids(list(ids), lambda i: self.sort_value(i, key, counts), tiebreak, direction == "desc")

    # -- tree construction ------------------------------------------------------

    def _first_edge(self, a: str, b: str) -> str:
        self._refresh()
        for other, eid in self._adj.get(a, ()):
            if other == b:
                return eid
        raise PreconditionError(f"no subgraph edge between {a!r} and {b!r}")

    def _bfs_tree(self, root: str, claimable: set[str]) -> SpanningTree:
        """Breadth-first tree from root; attaches claimable unvisited
        neighbors in the session's order at every dequeued node."""
        self._refresh()
        t = SpanningTree(root)
        q = deque([root])
        while q:
            cur = q.popleft()
            first_edge: dict[str, str] = {}
            for other, eid in self._adj.get(cur, ()):
                if other in t.depth or other not in claimable:
                    continue
                if other not in first_edge:
                    first_edge[other] = eid
            for child in self.ordered(first_edge):
                t.attach(child, cur, first_edge[child])
                q.append(child)
        return t

    def _component(self, start: str) -> set[str]:
        self._refresh()
        seen = {start}
        q = deque([start])
        while q:
            cur = q.popleft()
            for other, _eid in self._adj.get(cur, ()):
                if other not in seen:
                    seen.add(other)
                    q.append(other)
        return seen

    # -- operations --------------------------------------------------------------

    def add_root(self, node_id: Optional[str] = None) -> str:
        """Root a new spanning tree.

        With no id, picks the highest-induced-degree pending node (ties by
        label then id). The BFS claims pending nodes only, so existing
        trees are untouched; rooting a node that already belongs to a tree
        rebuilds that tree via make_root.
        """
        if node_id is None:
            pending = self.pending_nodes()
            if not pending:
                raise PreconditionError("no unrooted subgraph nodes to root")
            node_id = min(
                pending,
                key=lambda m: (-self.induced_degree(m), self.graph.nodes[m].label, m),
            )
        else:
            node = self.graph.node(node_id)
            if node.type in self.type_filters:
                raise PreconditionError(f"node {node_id!r} has filtered type {node.type!r}")
            if node_id not in self.members:
                self.members.add(node_id)
                self._insert_members([node_id])
                self._bump()
            if self.tree_of(node_id) is not None:
                self.make_root(node_id)
                return node_id
        claim = self.pending_nodes()
        claim.add(node_id)
        t = self._bfs_tree(node_id, claim)
        self.trees[node_id] = t
        self.roots.append(node_id)
        self._bump()
        return node_id

    def build_spanning_tree(self, root: str) -> SpanningTree:
        """(Re)build the tree spanning root's reachable component.

        Claims every reachable node: pending ones and whole trees the
        component touches get merged, so afterwards the children of root
        are exactly its subgraph neighbors. Nodes outside the component
        are untouched.
        """
        if root not in self.effective_members:
            raise PreconditionError(f"node {root!r} is not in the subgraph")
        comp = self._component(root)
        insert_at = len(self.roots)
        old_root = None
        for r in self.roots:
            if self.trees[r].contains(root):
                old_root = r
                break
        for r in list(self.roots):
            if r in comp:
                if r == old_root:
                    insert_at = self.roots.index(r)
                self.roots.remove(r)
                del self.trees[r]
        insert_at = min(insert_at, len(self.roots))
        t = self._bfs_tree(root, comp)
        self.trees[root] = t
        self.roots.insert(insert_at, root)
        self._bump()
        return t

    def make_root(self, node_id: str) -> None:
        """Rebuild the tree around node_id so it becomes the root."""
        self.build_spanning_tree(node_id)

    def _attach_if_adjacent(self, node_id: str) -> None:
        self._refresh()
        by_neighbor: dict[str, str] = {}
        for other, eid in self._adj.get(node_id, ()):
            if other not in by_neighbor and self.tree_of(other) is not None:
                by_neighbor[other] = eid
        if not by_neighbor:
            return
        depths = {n: self.tree_of(n).depth[n] for n in by_neighbor}
        min_depth = min(depths.values())
        shallowest = [n for n, d in depths.items() if d == min_depth]
        parent = self.ordered(shallowest)[0]
        self.tree_of(parent).attach(node_id, parent, by_neighbor[parent])

    def add_node(self, node_id: str, with_neighbors: bool = False) -> None:
        """Add one node (optionally with its unfiltered neighbors).

        Each newcomer attaches to the shallowest adjacent tree node (ties
        by the session order, then label/id); newcomers adjacent to no
        tree stay pending. Re-adding an existing node only bumps the
        revision.
        """
        node = self.graph.node(node_id)
        if node.type in self.type_filters:
            raise PreconditionError(f"node {node_id!r} has filtered type {node.type!r}")
        newcomers = []
        if node_id not in self.members:
            self.members.add(node_id)
            newcomers.append(node_id)
        if with_neighbors:
            allowed = set(self.graph.node_types) - self.type_filters
            for nb in dict.fromkeys(self.graph.neighbors(node_id, type_filter=allowed)):
                if nb not in self.members:
                    self.members.add(nb)
                    newcomers.append(nb)
        self._insert_members(newcomers)
        self._bump()
        for nid in newcomers:
            if self.tree_of(nid) is None:
                self._attach_if_adjacent(nid)

    def expand_missing_neighbors(self, node_id: str) -> list[str]:
        """Pull in every graph neighbor of node_id absent from the subgraph.

        Unfiltered newcomers become children of node_id when it sits in a
        tree; otherwise they join as pending nodes.
        """
        if node_id not in self.effective_members:
            raise PreconditionError(f"node {node_id!r} is not in the subgraph")
        allowed = set(self.graph.node_types) - self.type_filters
        missing = [
            nb
            for nb in dict.fromkeys(self.graph.neighbors(node_id, type_filter=allowed))
            if nb not in self.members
        ]
        if not missing:
            self._bump()
            return []
        self.members.update(missing)
        self._insert_members(missing)
        self._bump()
        t = self.tree_of(node_id)
        if t is not None:
            for nb in missing:
                t.attach(nb, node_id, self._first_edge(nb, node_id))
        return missing

    def gather_children(self, node_id: str) -> None:
        """Re-parent every non-ancestor subgraph neighbor under node_id.

        Moved neighbors bring their subtrees along; neighbors from other
        trees (roots included) and pending nodes are pulled in too.
        """
        t = self.tree_of(node_id)
        if t is None:
            raise PreconditionError(f"node {node_id!r} is not part of a tree")
        self._refresh()
        anc = set(t.ancestors(node_id))
        targets: dict[str, str] = {}
        for other, eid in self._adj.get(node_id, ()):
            if other in anc or other == node_id or other in targets:
                continue
            if t.parent.get(other, (None,))[0] == node_id:
                continue  # already a child
            targets[other] = eid
        for nb in sorted(targets, key=lambda n: (self.graph.nodes[n].label, n)):
            self._move_subtree(nb, node_id, targets[nb])
        self._bump()

    def _move_subtree(self, node_id: str, new_parent: str, edge_id: str) -> None:
        """Detach node_id's subtree from wherever it lives and hang it under
        new_parent. node_id may be pending or a root of another tree."""
        dst = self.tree_of(new_parent)
        src = self.tree_of(node_id)
        if src is None:
            dst.attach(node_id, new_parent, edge_id)
            return
        nodes = src.subtree(node_id)
        sub_children = {n: src.children[n] for n in nodes}
        sub_parent = {n: src.parent[n] for n in nodes if n != node_id and n in src.parent}
        if src.root == node_id:
            self.roots.remove(node_id)
            del self.trees[node_id]
        else:
            p, _ = src.parent[node_id]
            src.children[p].remove(node_id)
            for n in nodes:
                src.parent.pop(n, None)
                src.children.pop(n, None)
                src.depth.pop(n, None)
        dst.parent[node_id] = (new_parent, edge_id)
        dst.children[new_parent].append(node_id)
        for n in nodes:
            dst.children[n] = sub_children[n]
        for n, pe in sub_parent.items():
            dst.parent[n] = pe
        dst.recompute_depths()

    def remove_branch(self, node_id: str) -> list[str]:
        """Drop node_id's subtree from its tree and from the subgraph."""
        t = self.tree_of(node_id)
        if t is None:
            raise PreconditionError(f"node {node_id!r} is not part of a tree")
        nodes = t.subtree(node_id)
        if t.root == node_id:
            self.roots.remove(node_id)
            del self.trees[node_id]
        else:
            p, _ = t.parent[node_id]
            t.children[p].remove(node_id)
            for n in nodes:
                t.parent.pop(n, None)
                t.children.pop(n, None)
                t.depth.pop(n, None)
        for n in nodes:
            self.members.discard(n)
            self.branch_modes.pop(n, None)
            self.branch_aggregate.pop(n, None)
        self._adj_dirty = True
        self._bump()
        return nodes

    def reattach_branch(self, node_id: str, new_parent: str) -> None:
        """Move node_id's subtree under new_parent along a real edge.

        Requires an induced edge between the two and that new_parent is
        not inside the moving subtree. Reattaching to the current parent
        is a no-op (revision still bumps).
        """
        if new_parent not in self.effective_members or node_id not in self.effective_members:
            raise PreconditionError("both endpoints must be subgraph members")
        dst = self.tree_of(new_parent)
        if dst is None:
            raise PreconditionError(f"new parent {new_parent!r} is not part of a tree")
        src = self.tree_of(node_id)
        if src is not None and src.parent.get(node_id, (None,))[0] == new_parent:
            self._bump()
            return
        edge_id = self._first_edge(node_id, new_parent)
        if src is not None and src is dst:
            sub = set(src.subtree(node_id))
            if new_parent in sub:
                raise PreconditionError(
                    f"cannot reattach {node_id!r} below its own descendant {new_parent!r}"
                )
        self._move_subtree(node_id, new_parent, edge_id)
        self._bump()

    def set_type_filters(self, excluded: Iterable[str]) -> None:
        """Exclude node types from the working subgraph.

        Filtered members stay in the membership set but leave trees, rows
        and induced edges. Every tree is rebuilt by BFS from its root
        (claiming its former nodes plus pending ones); slices that lose
        their connection re-root per component at the highest-degree node.
        """
        excluded = set(excluded)
        unknown = excluded - set(self.graph.node_types)
        if unknown:
            raise PreconditionError(f"unknown node types in filter: {sorted(unknown)}")
        old_nodes = {r: set(self.trees[r].depth) for r in self.roots}
        all_old = set().union(*old_nodes.values()) if old_nodes else set()
        self.type_filters = excluded
        self._adj_dirty = True
        self._bump()
        eff = self.effective_members
        pending = eff - all_old
        new_roots: list[str] = []
        new_trees: dict[str, SpanningTree] = {}
        claimed: set[str] = set()
        for r in self.roots:
            if r not in eff:
                continue
            claim = ((old_nodes[r] | pending) & eff) - claimed
            t = self._bfs_tree(r, claim)
            new_roots.append(r)
            new_trees[r] = t
            claimed |= set(t.depth)
        lost = (all_old & eff) - claimed
        while lost:
            comp_root = min(
                lost, key=lambda m: (-self.induced_degree(m), self.graph.nodes[m].label, m)
            )
            comp = self._component(comp_root) & lost
            t = self._bfs_tree(comp_root, comp)
            new_roots.append(comp_root)
            new_trees[comp_root] = t
            lost -= set(t.depth)
        self.roots = new_roots
        self.trees = new_trees

    # -- view state -----------------------------------------------------------

    def set_order(self, order: OrderSpec) -> None:
        self.order = order.validate()
        self._bump()

    def set_branch_mode(self, node_id: str, mode: Optional[str]) -> None:
        self.graph.node(node_id)
        if mode is None:
            self.branch_modes.pop(node_id, None)
        elif mode in (TREE, LEVEL):
            self.branch_modes[node_id] = mode
        else:
            raise OpError(f"unknown branch mode {mode!r}")
        self._bump()

    def set_branch_aggregate(self, node_id: str, aggregate: bool) -> None:
        self.graph.node(node_id)
        self.branch_aggregate[node_id] = bool(aggregate)
        self._bump()

    def set_doi(self, doi: Optional[DoiFilter]) -> None:
        if doi is not None:
            if doi.types is not None:
                unknown = set(doi.types) - set(self.graph.node_types)
                if unknown:
                    raise PreconditionError(f"unknown node types in DOI: {sorted(unknown)}")
            carriers = [
                t for t in self.graph.node_types.values() if t.attribute(doi.attribute) is not None
            ]
            if not carriers:
                raise PreconditionError(f"no node type carries attribute {doi.attribute!r}")
        self.doi = doi
        self._bump()

    def set_matrix_columns(self, columns: list[str]) -> None:
        for c in columns:
            self.graph.node(c)
        self.matrix_columns = list(columns)
        self._bump()

    def set_selection(self, node_id: Optional[str]) -> None:
        if node_id is not None:
            self.graph.node(node_id)
        self.selection = node_id
        self._bump()

    # -- serialization ----------------------------------------------------------

    def to_doc(self) -> dict:
        trees = {}
        for r in self.roots:
            t = self.trees[r]
            trees[r] = {
                "parents": {c: list(pe) for c, pe in t.parent.items()},
                "children": {n: list(cs) for n, cs in t.children.items()},
            }
        return {
            "version": 1,
            "dataset": self.dataset,
            "revision": self.revision,
            "members": sorted(self.members),
            "typeFilters": sorted(self.type_filters),
            "order": self.order.to_doc(),
            "selection": self.selection,
            "roots": list(self.roots),
            "trees": trees,
            "branchModes": dict(self.branch_modes),
            "branchAggregate": dict(self.branch_aggregate),
            "doi": self.doi.to_doc() if self.doi else None,
            "matrixColumns": list(self.matrix_columns),
            "pathOrder": list(self.path_order) if self.path_order else None,
        }

    @classmethod
    def from_doc(cls, graph: Graph, doc: dict) -> "Session":
        if doc.get("version") != 1:
            raise OpError(f"unsupported session document version {doc.get('version')!r}")
        s = cls(graph, doc.get("dataset", ""))
        s.members = set(doc["members"])
        s.type_filters = set(doc["typeFilters"])
        s.order = OrderSpec.from_doc(doc["order"])
        s.selection = doc.get("selection")
        s.roots = list(doc["roots"])
        for r in s.roots:
            t = SpanningTree(r)
            spec = doc["trees"][r]
            t.children = {n: list(cs) for n, cs in spec["children"].items()}
            t.parent = {c: (pe[0], pe[1]) for c, pe in spec["parents"].items()}
            t.recompute_depths()
            s.trees[r] = t
        s.branch_modes = dict(doc.get("branchModes", {}))
        s.branch_aggregate = dict(doc.get("branchAggregate", {}))
        s.doi = DoiFilter.from_doc(doc["doi"]) if doc.get("doi") else None
        s.matrix_columns = list(doc.get("matrixColumns", []))
        po = doc.get("pathOrder")
        s.path_order = list(po) if po else None
        s.revision = doc.get("revision", 0)
        return s

    def snapshot(self) -> dict:
        return self.to_doc()

    def restore(self, doc: dict) -> None:
        fresh = Session.from_doc(self.graph, doc)
        for attr in (
            "members",
            "type_filters",
            "order",
            "selection",
            "roots",
            "trees",
            "branch_modes",
            "branch_aggregate",
            "doi",
            "matrix_columns",
            "path_order",
            "revision",
        ):
            setattr(self, attr, getattr(fresh, attr))
        self._adj_dirty = True


def create_session(graph: Graph, dataset: str = "") -> Session:
    """Fresh empty session; sessions never share mutable state."""
    return Session(graph, dataset)
