"""Wire-level session operations: parsing, validation, atomic batches.

Every mutation a client can request is a tagged payload. Batches apply in
order and atomically: if any operation fails, the session rolls back to
its pre-batch state and the error names the failing index.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError

from . import layout as layout_mod
from .errors import BatchOpError, EngineError
from .ordering import OrderSpec
from .session import DoiFilter, Session


class _Op(BaseModel):
    model_config = ConfigDict(extra="forbid")


class AddRoot(_Op):
    op: Literal["addRoot"]
    node: Optional[str] = None


class AddNode(_Op):
    op: Literal["addNode"]
    node: str
    withNeighbors: bool = False


class ExpandMissing(_Op):
    op: Literal["expandMissing"]
    node: str


class MakeRoot(_Op):
    op: Literal["makeRoot"]
    node: str


class GatherChildren(_Op):
    op: Literal["gatherChildren"]
    node: str


class RemoveBranch(_Op):
    op: Literal["removeBranch"]
    node: str


class ReattachBranch(_Op):
    op: Literal["reattachBranch"]
    node: str
    newParent: str


class SetTypeFilters(_Op):
    op: Literal["setTypeFilters"]
    excluded: list[str]


class SetBranchMode(_Op):
    op: Literal["setBranchMode"]
    node: str
    mode: Optional[Literal["tree", "level"]] = None


class SetAggregation(_Op):
    op: Literal["setAggregation"]
    node: str
    aggregate: bool


class DoiDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    attribute: str
    types: Optional[list[str]] = None
    range: Optional[tuple[Optional[float], Optional[float]]] = None
    categories: Optional[list[str]] = None


class SetDoi(_Op):
    op: Literal["setDOI"]
    doi: Optional[DoiDoc] = None


class SetSort(_Op):
    op: Literal["setSort"]
    key: str
    direction: Literal["asc", "desc"] = "asc"


class PathSort(_Op):
    op: Literal["pathSort"]
    path: list[str] = Field(min_length=1)


class SetMatrixColumns(_Op):
    op: Literal["setMatrixColumns"]
    columns: list[str]


Operation = Annotated[
    Union[
        AddRoot, AddNode, ExpandMissing, MakeRoot, GatherChildren, RemoveBranch,
        ReattachBranch, SetTypeFilters, SetBranchMode, SetAggregation, SetDoi,
        SetSort, PathSort, SetMatrixColumns,
    ],
    Field(discriminator="op"),
]

_BATCH = TypeAdapter(list[Operation])


def parse_ops(raw: list) -> list:
    """Parse raw payloads into typed operations; errors name the index."""
    try:
        return _BATCH.validate_python(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        loc = first.get("loc") or (0,)
        index = loc[0] if isinstance(loc[0], int) else 0
        where = ".".join(str(p) for p in loc[1:]) or "payload"
        raise BatchOpError(f"op {index} invalid at {where}: {first['msg']}", index) from exc


def _doi_filter(doc: Optional[DoiDoc]) -> Optional[DoiFilter]:
    if doc is None:
        return None
    lo, hi = doc.range if doc.range is not None else (None, None)
    return DoiFilter(
        attribute=doc.attribute,
        types=frozenset(doc.types) if doc.types is not None else None,
        lo=lo,
        hi=hi,
        categories=frozenset(doc.categories) if doc.categories is not None else None,
    )


def apply_one(session: Session, op: Operation) -> None:
    if isinstance(op, AddRoot):
        session.add_root(op.node)
    elif isinstance(op, AddNode):
        session.add_node(op.node, with_neighbors=op.withNeighbors)
    elif isinstance(op, ExpandMissing):
        session.expand_missing_neighbors(op.node)
    elif isinstance(op, MakeRoot):
        session.make_root(op.node)
    elif isinstance(op, GatherChildren):
        session.gather_children(op.node)
    elif isinstance(op, RemoveBranch):
        session.remove_branch(op.node)
    elif isinstance(op, ReattachBranch):
        session.reattach_branch(op.node, op.newParent)
    elif isinstance(op, SetTypeFilters):
        session.set_type_filters(op.excluded)
    elif isinstance(op, SetBranchMode):
        session.set_branch_mode(op.node, op.mode)
    elif isinstance(op, SetAggregation):
        session.set_branch_aggregate(op.node, op.aggregate)
    elif isinstance(op, SetDoi):
        session.set_doi(_doi_filter(op.doi))
    elif isinstance(op, SetSort):
        session.set_order(OrderSpec(key=op.key, direction=op.direction).validate())
    elif isinstance(op, PathSort):
        layout_mod.path_sort(session, op.path)
    elif isinstance(op, SetMatrixColumns):
        session.set_matrix_columns(op.columns)
    else:  # pragma: no cover - union is exhaustive
        raise BatchOpError(f"unknown operation {op!r}", 0)


def apply_batch(session: Session, raw_ops: list) -> int:
    """Apply a batch atomically; returns the resulting revision.

    The batch either applies fully, in order, or not at all: on the first
    failing operation the session is restored to its pre-batch state and
    the raised error carries that operation's index.
    """
    ops = parse_ops(raw_ops)
    before = session.snapshot()
    for i, op in enumerate(ops):
        try:
            apply_one(session, op)
        except BatchOpError:
            session.restore(before)
            raise
        except EngineError as exc:
            session.restore(before)
            raise BatchOpError(f"op {i} failed: {exc}", i, code=exc.code) from exc
    return session.revision
