"""Record service fixtures for the web client's contract tests.

Drives the real HTTP service in-process and captures what went over the
wire: layout documents, the operation each gesture translates to, and
the service's acceptance of it. Run from the repository root:

    python3 frontend/scripts/record_fixtures.py

Rewrites frontend/fixtures/*.json in place. Committed output keeps the
client tests hermetic; re-run after any change to the wire format.
"""

from __future__ import annotations

import json
import sys
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from rowtree import create_app

ROOT = Path(__file__).resolve().parents[2]
OUT = Path(__file__).resolve().parents[1] / "fixtures"

FIG2_STRUCTURE = [
    {"op": "addRoot", "node": "A"},
    {"op": "expandMissing", "node": "A"},
    {"op": "expandMissing", "node": "B"},
    {"op": "expandMissing", "node": "D"},
]

# one entry per remote gesture kind; applied in order, each as its own
# batch, so every op is recorded with the revision that accepted it
GESTURE_SCRIPT = [
    ({"kind": "addRoot", "node": "A"}, {"op": "addRoot", "node": "A"}),
    ({"kind": "expand", "node": "A"}, {"op": "expandMissing", "node": "A"}),
    ({"kind": "expand", "node": "B"}, {"op": "expandMissing", "node": "B"}),
    ({"kind": "expand", "node": "D"}, {"op": "expandMissing", "node": "D"}),
    ({"kind": "gather", "node": "A"}, {"op": "gatherChildren", "node": "A"}),
    (
        {"kind": "aggregateToggle", "node": "A", "aggregate": True},
        {"op": "setAggregation", "node": "A", "aggregate": True},
    ),
    (
        {"kind": "doiBrush", "attribute": "val", "lo": 5, "hi": 5},
        {"op": "setDOI", "doi": {"attribute": "val", "range": [5, 5]}},
    ),
    (
        {"kind": "doiPick", "attribute": "grp", "categories": ["red"]},
        {"op": "setDOI", "doi": {"attribute": "grp", "categories": ["red"]}},
    ),
    ({"kind": "doiClear"}, {"op": "setDOI", "doi": None}),
    (
        {"kind": "branchMode", "node": "A", "mode": "level"},
        {"op": "setBranchMode", "node": "A", "mode": "level"},
    ),
    (
        {"kind": "branchMode", "node": "A", "mode": None},
        {"op": "setBranchMode", "node": "A", "mode": None},
    ),
    (
        {"kind": "sortColumn", "key": "degree", "direction": "desc"},
        {"op": "setSort", "key": "degree", "direction": "desc"},
    ),
    (
        {"kind": "pinPath", "path": ["A", "D", "G"]},
        {"op": "pathSort", "path": ["A", "D", "G"]},
    ),
    (
        {"kind": "pinMatrixColumns", "columns": ["B", "D"]},
        {"op": "setMatrixColumns", "columns": ["B", "D"]},
    ),
    ({"kind": "remove", "node": "C"}, {"op": "removeBranch", "node": "C"}),
    ({"kind": "makeRoot", "node": "B"}, {"op": "makeRoot", "node": "B"}),
]


def write(name: str, payload: dict) -> None:
    path = OUT / name
    path.write_text(json.dumps(payload, indent=2, ensure_ascii=True) + "\n", encoding="utf-8")
    print(f"wrote {path.relative_to(ROOT)}")


def new_session(client: TestClient, dataset: str) -> str:
    resp = client.post("/sessions", json={"dataset": dataset})
    resp.raise_for_status()
    return resp.json()["sessionId"]


def layout(client: TestClient, sid: str) -> dict:
    resp = client.get(f"/sessions/{sid}/layout")
    resp.raise_for_status()
    return resp.json()


def record_fig2_layout(client: TestClient) -> None:
    sid = new_session(client, "fig2")
    empty = layout(client, sid)
    resp = client.post(f"/sessions/{sid}/ops", json=FIG2_STRUCTURE)
    resp.raise_for_status()
    document = layout(client, sid)
    client.post(
        f"/sessions/{sid}/ops", json=[{"op": "setMatrixColumns", "columns": ["B", "D"]}]
    ).raise_for_status()
    write(
        "fig2-layout.json",
        {
            "dataset": "fig2",
            "ops": FIG2_STRUCTURE,
            "envelope": resp.json(),
            "empty": empty,
            "document": document,
            "withMatrix": layout(client, sid),
        },
    )


def record_doi_roundtrip(client: TestClient) -> None:
    sid = new_session(client, "fig2")
    setup = FIG2_STRUCTURE + [{"op": "setAggregation", "node": "A", "aggregate": True}]
    client.post(f"/sessions/{sid}/ops", json=setup).raise_for_status()
    before = layout(client, sid)

    gesture = {"kind": "doiBrush", "attribute": "val", "lo": 5, "hi": 5}
    op = {"op": "setDOI", "doi": {"attribute": "val", "range": [5, 5]}}
    resp = client.post(f"/sessions/{sid}/ops", json=[op])
    resp.raise_for_status()
    after = layout(client, sid)

    # ground truth for "which nodes does this brush match", taken from
    # the dataset itself so the client test needs no engine logic
    matches = sorted(
        rec["id"]
        for rec in map(json.loads, (ROOT / "data/fig2/nodes.jsonl").read_text().splitlines())
        if rec["attributes"].get("val") is not None and 5 <= rec["attributes"]["val"] <= 5
    )
    write(
        "doi-roundtrip.json",
        {
            "dataset": "fig2",
            "setup": setup,
            "gesture": gesture,
            "op": op,
            "accepted": {"status": resp.status_code, "revision": resp.json()["revision"]},
            "matches": matches,
            "before": before,
            "after": after,
        },
    )


def record_gesture_contract(client: TestClient) -> None:
    sid = new_session(client, "fig2")
    entries = []
    for gesture, op in GESTURE_SCRIPT:
        resp = client.post(f"/sessions/{sid}/ops", json=[op])
        resp.raise_for_status()
        entries.append(
            {
                "gesture": gesture,
                "op": op,
                "status": resp.status_code,
                "revision": resp.json()["revision"],
            }
        )
    write("gesture-contract.json", {"dataset": "fig2", "entries": entries})


def record_got_aggregate(client: TestClient) -> None:
    # a mixed-type aggregate: battles and books pooled under one house
    sid = new_session(client, "got-mini")
    ops = [
        {"op": "addRoot", "node": "h-stark"},
        {"op": "expandMissing", "node": "h-stark"},
        {"op": "setAggregation", "node": "h-stark", "aggregate": True},
    ]
    client.post(f"/sessions/{sid}/ops", json=ops).raise_for_status()
    write("got-aggregate.json", {"dataset": "got-mini", "ops": ops, "document": layout(client, sid)})


def main() -> int:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        app = create_app(str(ROOT / "data"), tmp)
        with TestClient(app) as client:
            record_fig2_layout(client)
            record_doi_roundtrip(client)
            record_gesture_contract(client)
            record_got_aggregate(client)
    return 0


if __name__ == "__main__":
    sys.exit(main())
