from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from rowtree import create_app

FIG2_OPS = [
    {"op": "addNode", "node": "A", "withNeighbors": True},
    {"op": "addNode", "node": "E"},
    {"op": "addNode", "node": "G"},
    {"op": "addRoot", "node": "A"},
]


@pytest.fixture()
def client(data_dir, tmp_path):
    app = create_app(data_dir=str(data_dir), session_dir=str(tmp_path / "sessions"))
    with TestClient(app) as c:
        yield c


def _fig2_session(client) -> str:
    r = client.post("/sessions", json={"dataset": "fig2"})
    assert r.status_code == 200
    sid = r.json()["sessionId"]
    r = client.post(f"/sessions/{sid}/ops", json=FIG2_OPS)
    assert r.status_code == 200
    return sid


class TestDatasets:
    def test_listing(self, client):
        r = client.get("/datasets")
        assert r.status_code == 200
        by_name = {d["name"]: d for d in r.json()}
        assert set(by_name) == {"coauthor-mini", "fig2", "got-mini"}
        assert by_name["fig2"]["nodeCount"] == 7
        assert by_name["fig2"]["edgeCount"] == 9
        assert by_name["fig2"]["nodeTypes"] == ["plain"]
        assert by_name["got-mini"]["nodeCount"] == 39

    def test_search(self, client):
        r = client.get("/datasets/got-mini/search", params={"q": "stark"})
        assert r.status_code == 200
        body = r.json()
        assert body["query"] == "stark"
        # only types with hits appear, in schema order
        assert list(body["facets"]) == ["Person", "House"]
        house_hits = [h["node"] for h in body["facets"]["House"]]
        assert "h-stark" in house_hits
        hit = body["facets"]["House"][house_hits.index("h-stark")]
        assert set(hit) == {"node", "label", "degree"}

    def test_unknown_dataset_404(self, client):
        r = client.get("/datasets/nope/search", params={"q": "x"})
        assert r.status_code == 404
        assert r.json()["code"] == "not_found"


class TestSessions:
    def test_create_envelope(self, client):
        r = client.post("/sessions", json={"dataset": "fig2"})
        body = r.json()
        assert body["dataset"] == "fig2"
        assert body["revision"] == 0
        assert body["state"]["members"] == []

    def test_create_unknown_dataset(self, client):
        r = client.post("/sessions", json={"dataset": "nope"})
        assert r.status_code == 404

    def test_ops_advance_revision(self, client):
        sid = _fig2_session(client)
        r = client.post(f"/sessions/{sid}/ops", json=[{"op": "setSort", "key": "degree", "direction": "desc"}])
        body = r.json()
        assert body["sessionId"] == sid
        assert body["revision"] == 5
        assert body["state"]["order"] == {"key": "degree", "direction": "desc"}

    def test_unknown_session_404(self, client):
        r = client.get("/sessions/feedbeef/layout")
        assert r.status_code == 404

    def test_layout_document(self, client):
        sid = _fig2_session(client)
        r = client.get(f"/sessions/{sid}/layout")
        assert r.status_code == 200
        doc = r.json()
        assert doc["dataset"] == "fig2"
        assert [row.get("node") for row in doc["rows"]] == ["A", "B", "E", "C", "D", "G"]
        assert len(doc["edgeCounts"]["rows"]) == 6
        assert doc["attributeTable"]["columns"][0]["id"] == "val"

    def test_bad_op_batch_422_and_atomic(self, client):
        sid = _fig2_session(client)
        before = client.get(f"/sessions/{sid}/layout")
        r = client.post(f"/sessions/{sid}/ops", json=[
            {"op": "removeBranch", "node": "B"},
            {"op": "makeRoot", "node": "ZZ"},
        ])
        assert r.status_code == 422
        body = r.json()
        assert body["opIndex"] == 1
        assert body["code"] == "precondition"
        after = client.get(f"/sessions/{sid}/layout")
        assert after.content == before.content

    def test_malformed_op_names_index(self, client):
        sid = _fig2_session(client)
        r = client.post(f"/sessions/{sid}/ops", json=[{"op": "addNode"}])
        assert r.status_code == 422
        assert r.json()["opIndex"] == 0

    def test_request_validation_shape(self, client):
        r = client.post("/sessions", json={"nope": True})
        assert r.status_code == 422
        assert r.json()["code"] == "validation"

    def test_ops_body_must_be_list(self, client):
        sid = _fig2_session(client)
        r = client.post(f"/sessions/{sid}/ops", json={"op": "addRoot"})
        assert r.status_code == 422
        assert r.json()["code"] == "validation"


class TestPathsAndMatrix:
    def test_paths_route(self, client):
        sid = _fig2_session(client)
        r = client.post(f"/sessions/{sid}/paths", json={"a": "B", "b": "G"})
        assert r.status_code == 200
        doc = r.json()
        assert doc["revision"] == 4
        assert doc["length"] == 2
        assert doc["paths"][0]["nodes"] == ["B", "D", "G"]

    def test_paths_endpoint_outside_subgraph(self, client):
        sid = _fig2_session(client)
        r = client.post(f"/sessions/{sid}/paths", json={"a": "A", "b": "F"})
        assert r.status_code == 422
        assert r.json()["code"] == "precondition"

    def test_auto_matrix(self, client):
        sid = _fig2_session(client)
        r = client.get(f"/sessions/{sid}/matrix/auto", params={"k": 2})
        assert r.json() == {"revision": 4, "columns": ["B", "A"]}

    def test_auto_matrix_default_k(self, client):
        sid = _fig2_session(client)
        r = client.get(f"/sessions/{sid}/matrix/auto")
        assert r.json()["columns"] == ["B", "A", "D", "C", "E"]


class TestPersistence:
    def test_replay_reproduces_layout_bytes(self, data_dir, tmp_path):
        session_dir = str(tmp_path / "sessions")
        app1 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app1) as c1:
            sid = _fig2_session(c1)
            c1.post(f"/sessions/{sid}/ops", json=[
                {"op": "setAggregation", "node": "A", "aggregate": True},
                {"op": "setDOI", "doi": {"attribute": "grp", "categories": ["red"]}},
                {"op": "setMatrixColumns", "columns": ["F"]},
            ])
            want = c1.get(f"/sessions/{sid}/layout").content

        app2 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app2) as c2:
            got = c2.get(f"/sessions/{sid}/layout").content
        assert got == want

    def test_replayed_session_accepts_more_ops(self, data_dir, tmp_path):
        session_dir = str(tmp_path / "sessions")
        app1 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app1) as c1:
            sid = _fig2_session(c1)

        app2 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app2) as c2:
            r = c2.post(f"/sessions/{sid}/ops", json=[{"op": "makeRoot", "node": "B"}])
            assert r.status_code == 200
            doc = c2.get(f"/sessions/{sid}/layout").json()
            assert doc["rows"][0]["node"] == "B"

    def test_failed_batch_not_persisted(self, data_dir, tmp_path):
        session_dir = str(tmp_path / "sessions")
        app1 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app1) as c1:
            sid = _fig2_session(c1)
            r = c1.post(f"/sessions/{sid}/ops", json=[{"op": "makeRoot", "node": "ZZ"}])
            assert r.status_code == 422
            want = c1.get(f"/sessions/{sid}/layout").content

        app2 = create_app(data_dir=str(data_dir), session_dir=session_dir)
        with TestClient(app2) as c2:
            assert c2.get(f"/sessions/{sid}/layout").content == want
