"""HTTP service: datasets, faceted search, sessions, layout documents.

Sessions are operation logs. Every applied batch appends to the log and
rewrites the session file, so a service restart (or a fresh process) can
replay any session id from disk and reach the identical revision and
layout document.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .document import build_document, path_document, to_json
from .errors import BatchOpError, EngineError, NotFoundError
from .graph import Graph, list_datasets, load_dataset
from .ops import apply_batch
from .session import Session, create_session
from .topology import auto_populate_matrix, all_shortest_paths

DATA_ENV = "ROWTREE_DATA"
SESSIONS_ENV = "ROWTREE_SESSIONS"


class CreateSessionRequest(BaseModel):
    dataset: str


class PathsRequest(BaseModel):
    a: str
    b: str


class _State:
    def __init__(self, data_dir: Path, session_dir: Path):
        self.data_dir = data_dir
        self.session_dir = session_dir
        self.graphs: dict[str, Graph] = {}
        self.sessions: dict[str, dict] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.registry_lock = threading.Lock()

    def graph(self, name: str) -> Graph:
        g = self.graphs.get(name)
        if g is None:
            path = self.data_dir / name
            if not (path / "schema.json").is_file():
                raise NotFoundError(f"unknown dataset {name!r}")
            g = load_dataset(path)
            self.graphs[name] = g
        return g

    def lock_for(self, session_id: str) -> threading.Lock:
        with self.registry_lock:
            return self.locks.setdefault(session_id, threading.Lock())

    def _session_path(self, session_id: str) -> Path:
        return self.session_dir / f"{session_id}.json"

    def create(self, dataset: str) -> dict:
        graph = self.graph(dataset)
        sid = uuid.uuid4().hex
        entry = {"id": sid, "dataset": dataset, "session": create_session(graph, dataset), "ops": []}
        self.sessions[sid] = entry
        self._persist(entry)
        return entry

    def get(self, session_id: str) -> dict:
        entry = self.sessions.get(session_id)
        if entry is not None:
            return entry
        path = self._session_path(session_id)
        if not path.is_file():
            raise NotFoundError(f"unknown session {session_id!r}")
        saved = json.loads(path.read_text(encoding="utf-8"))
        graph = self.graph(saved["dataset"])
        session = create_session(graph, saved["dataset"])
        if saved["ops"]:
            apply_batch(session, saved["ops"])
        entry = {"id": session_id, "dataset": saved["dataset"], "session": session,
                 "ops": list(saved["ops"])}
        self.sessions[session_id] = entry
        return entry

    def _persist(self, entry: dict) -> None:
        self.session_dir.mkdir(parents=True, exist_ok=True)
        payload = {"sessionId": entry["id"], "dataset": entry["dataset"], "ops": entry["ops"]}
        tmp = self._session_path(entry["id"]).with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        tmp.replace(self._session_path(entry["id"]))

    def record_ops(self, entry: dict, raw_ops: list) -> None:
        entry["ops"].extend(raw_ops)
        self._persist(entry)


def _envelope(entry: dict) -> dict:
    session: Session = entry["session"]
    return {
        "sessionId": entry["id"],
        "dataset": entry["dataset"],
        "revision": session.revision,
        "state": session.to_doc(),
    }


def create_app(data_dir: Optional[str] = None, session_dir: Optional[str] = None) -> FastAPI:
    data = Path(data_dir or os.environ.get(DATA_ENV) or "data")
    sessions = Path(session_dir or os.environ.get(SESSIONS_ENV) or (data / ".sessions"))
    state = _State(data, sessions)

    app = FastAPI(title="rowtree", docs_url=None, redoc_url=None)
    app.state.engine = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return JSONResponse(status_code=404, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(BatchOpError)
    async def _batch_error(request: Request, exc: BatchOpError):
        return JSONResponse(
            status_code=422,
            content={"code": exc.code, "message": str(exc), "opIndex": exc.op_index},
        )

    @app.exception_handler(EngineError)
    async def _engine_error(request: Request, exc: EngineError):
        return JSONResponse(status_code=422, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"code": "validation", "message": str(exc.errors()[0].get("msg", "invalid request"))},
        )

    @app.get("/datasets")
    def get_datasets():
        out = []
        for name in list_datasets(state.data_dir):
            g = state.graph(name)
            out.append({
                "name": name,
                "nodeCount": len(g.nodes),
                "edgeCount": len(g.edges),
                "nodeTypes": list(g.node_types),
            })
        return out

    @app.get("/datasets/{name}/search")
    def search_dataset(name: str, q: str = ""):
        g = state.graph(name)
        facets = g.search_faceted(q)
        return {
            "query": q,
            "facets": {
                t: [{"node": h.id, "label": h.label, "degree": h.degree} for h in hits]
                for t, hits in facets.items()
            },
        }

    @app.post("/sessions")
    def create_session_route(body: CreateSessionRequest):
        entry = state.create(body.dataset)
        return _envelope(entry)

    @app.post("/sessions/{session_id}/ops")
    def apply_ops(session_id: str, body: list[dict]):
        entry = state.get(session_id)
        with state.lock_for(session_id):
            apply_batch(entry["session"], body)
            state.record_ops(entry, body)
        return _envelope(entry)

    @app.get("/sessions/{session_id}/layout")
    def get_layout(session_id: str):
        entry = state.get(session_id)
        with state.lock_for(session_id):
            doc = build_document(entry["session"])
        return Response(content=to_json(doc), media_type="application/json")

    @app.post("/sessions/{session_id}/paths")
    def post_paths(session_id: str, body: PathsRequest):
        entry = state.get(session_id)
        with state.lock_for(session_id):
            result = all_shortest_paths(entry["session"], body.a, body.b)
            doc = path_document(entry["session"], result)
        return Response(content=to_json(doc), media_type="application/json")

    @app.get("/sessions/{session_id}/matrix/auto")
    def get_auto_matrix(session_id: str, k: int = 5):
        entry = state.get(session_id)
        with state.lock_for(session_id):
            columns = auto_populate_matrix(entry["session"], k=k)
        return {"revision": entry["session"].revision, "columns": columns}

    static_dir = os.environ.get("ROWTREE_STATIC")
    if static_dir and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
