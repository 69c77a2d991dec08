"""Interactive exploration of typed graphs as linearized row trees."""

from .attributes import (
    Column,
    build_table,
    columns_for,
    doi_from_brush,
    doi_from_pick,
    histogram,
    sort_key,
)
from .document import build_document, counts_document, path_document, render_text, to_json
from .errors import (
    BatchOpError,
    DatasetError,
    EngineError,
    NotFoundError,
    OpError,
    PreconditionError,
)
from .graph import (
    AttributeDef,
    AttributePredicate,
    Edge,
    Graph,
    Node,
    NodeType,
    QuerySpec,
    SearchHit,
    list_datasets,
    load_dataset,
    save_dataset,
)
from .layout import (
    LayoutResult,
    Row,
    aggregate_level_mode,
    aggregate_tree_mode,
    apply_doi,
    linearize,
    linearize_level,
    path_sort,
    sort_within_levels,
)
from .ordering import OrderSpec
from .ops import apply_batch, apply_one, parse_ops
from .service import create_app
from .session import DoiFilter, Session, SpanningTree, create_session
from .topology import (
    all_shortest_paths,
    auto_populate_matrix,
    build_counts,
    format_count,
    hidden_edges,
    hidden_edges_of,
    matrix,
)

__version__ = "0.1.0"

__all__ = [
    "AttributeDef",
    "AttributePredicate",
    "BatchOpError",
    "Column",
    "DatasetError",
    "DoiFilter",
    "Edge",
    "EngineError",
    "Graph",
    "LayoutResult",
    "Node",
    "NodeType",
    "NotFoundError",
    "OpError",
    "OrderSpec",
    "PreconditionError",
    "QuerySpec",
    "Row",
    "SearchHit",
    "Session",
    "SpanningTree",
    "aggregate_level_mode",
    "aggregate_tree_mode",
    "all_shortest_paths",
    "apply_batch",
    "apply_doi",
    "apply_one",
    "auto_populate_matrix",
    "build_counts",
    "build_document",
    "build_table",
    "columns_for",
    "counts_document",
    "create_app",
    "create_session",
    "doi_from_brush",
    "doi_from_pick",
    "format_count",
    "hidden_edges",
    "hidden_edges_of",
    "histogram",
    "linearize",
    "linearize_level",
    "list_datasets",
    "load_dataset",
    "matrix",
    "parse_ops",
    "path_document",
    "path_sort",
    "render_text",
    "save_dataset",
    "sort_key",
    "sort_within_levels",
    "to_json",
]
