"""Node ordering shared by tree construction and row layout.

A sort is a key plus a direction. Keys: "label", "degree" (induced
subgraph degree), "attr:<name>" (schema attribute, kind-aware), and the
edge-count columns "count:visible" / "count:hidden" / "count:graph" which
only make sense once a tree exists. Nodes missing the key sort last
regardless of direction; ties always break ascending by label then id.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OpError

COUNT_KEYS = ("count:visible", "count:hidden", "count:graph")


@dataclass(frozen=True)
class OrderSpec:
    key: str = "label"
    direction: str = "asc"

    def validate(self) -> "OrderSpec":
        if self.direction not in ("asc", "desc"):
            raise OpError(f"unknown sort direction {self.direction!r}")
        if self.key in ("label", "degree") or self.key in COUNT_KEYS or (
            self.key.startswith("attr:") and len(self.key) > 5
        ):
            return self
        raise OpError(f"unknown sort key {self.key!r}")

    def to_doc(self) -> dict:
        return {"key": self.key, "direction": self.direction}

    @classmethod
    def from_doc(cls, doc: dict) -> "OrderSpec":
        return cls(doc.get("key", "label"), doc.get("direction", "asc")).validate()


def attribute_sort_value(graph, node_id: str, attr_name: str):
    """Kind-aware comparable for one node attribute, or None when missing.

    Ordinal values rank by their declared category order; values of
    different kinds never compare directly (kind tags the tuple).
    """
    node = graph.nodes[node_id]
    ntype = graph.node_types[node.type]
    adef = ntype.attribute(attr_name)
    value = node.attributes.get(attr_name)
    if adef is None or value is None:
        return None
    if adef.kind == "numeric":
        return ("n", float(value))
    if adef.kind == "ordinal":
        cats = adef.categories() or []
        return ("o", cats.index(value) if value in cats else len(cats))
    if adef.kind == "set":
        return ("s", tuple(sorted(value)))
    return ("t", str(value))


def sort_ids(ids, value_fn, tiebreak_fn, descending: bool) -> list:
    """Order ids by value_fn with missing-last and a fixed ascending tie-break."""
    present = [i for i in ids if value_fn(i) is not None]
    absent = [i for i in ids if value_fn(i) is None]
    present.sort(key=tiebreak_fn)
    present.sort(key=value_fn, reverse=descending)
    absent.sort(key=tiebreak_fn)
    return present + absent
