import { describe, expect, it } from "vitest";

import { gestureFromData, gestureToOp, type Gesture } from "../src/gestures.js";
import type { Operation } from "../src/types.js";

describe("gestureToOp", () => {
  const remote: Array<[Gesture, Operation]> = [
    [{ kind: "addRoot", node: "A" }, { op: "addRoot", node: "A" }],
    [{ kind: "addRoot" }, { op: "addRoot" }],
    [{ kind: "expand", node: "C" }, { op: "expandMissing", node: "C" }],
    [{ kind: "makeRoot", node: "B" }, { op: "makeRoot", node: "B" }],
    [{ kind: "gather", node: "A" }, { op: "gatherChildren", node: "A" }],
    [{ kind: "remove", node: "D" }, { op: "removeBranch", node: "D" }],
    [
      { kind: "branchMode", node: "A", mode: "level" },
      { op: "setBranchMode", node: "A", mode: "level" },
    ],
    [
      { kind: "branchMode", node: "A", mode: null },
      { op: "setBranchMode", node: "A", mode: null },
    ],
    [
      { kind: "aggregateToggle", node: "A", aggregate: true },
      { op: "setAggregation", node: "A", aggregate: true },
    ],
    [
      { kind: "doiBrush", attribute: "val", lo: 5, hi: 7 },
      { op: "setDOI", doi: { attribute: "val", range: [5, 7] } },
    ],
    [
      { kind: "doiBrush", attribute: "year", lo: 0, hi: 300, types: ["Battle"] },
      { op: "setDOI", doi: { attribute: "year", range: [0, 300], types: ["Battle"] } },
    ],
    [
      { kind: "doiPick", attribute: "grp", categories: ["red"] },
      { op: "setDOI", doi: { attribute: "grp", categories: ["red"] } },
    ],
    [{ kind: "doiClear" }, { op: "setDOI", doi: null }],
    [
      { kind: "sortColumn", key: "count:hidden", direction: "desc" },
      { op: "setSort", key: "count:hidden", direction: "desc" },
    ],
    [
      { kind: "pinPath", path: ["A", "D", "G"] },
      { op: "pathSort", path: ["A", "D", "G"] },
    ],
    [
      { kind: "pinMatrixColumns", columns: ["B", "D"] },
      { op: "setMatrixColumns", columns: ["B", "D"] },
    ],
  ];

  it.each(remote)("maps %j to one operation", (gesture, op) => {
    expect(gestureToOp(gesture)).toEqual(op);
  });

  it("keeps column drags client-local", () => {
    expect(gestureToOp({ kind: "columnDrag", from: 2, to: 0 })).toBeNull();
  });
});

describe("gestureFromData", () => {
  it("rebuilds a plus-click from its data payload", () => {
    const g = gestureFromData({ gesture: "expand", node: "C" });
    expect(g).toEqual({ kind: "expand", node: "C" });
    expect(gestureToOp(g as Gesture)).toEqual({ op: "expandMissing", node: "C" });
  });

  it("rebuilds a brush with numeric bounds and types", () => {
    const g = gestureFromData({
      gesture: "doiBrush",
      attribute: "val",
      lo: "5",
      hi: "7",
      types: '["plain"]',
    });
    expect(g).toEqual({ kind: "doiBrush", attribute: "val", lo: 5, hi: 7, types: ["plain"] });
  });

  it("rebuilds list payloads from JSON attributes", () => {
    expect(gestureFromData({ gesture: "pinPath", path: '["A","D","G"]' })).toEqual({
      kind: "pinPath",
      path: ["A", "D", "G"],
    });
    expect(gestureFromData({ gesture: "pinMatrixColumns", columns: "[]" })).toEqual({
      kind: "pinMatrixColumns",
      columns: [],
    });
    expect(
      gestureFromData({ gesture: "doiPick", attribute: "grp", categories: '["red","blue"]' }),
    ).toEqual({ kind: "doiPick", attribute: "grp", categories: ["red", "blue"] });
  });

  it("maps the clear mode token to null", () => {
    expect(gestureFromData({ gesture: "branchMode", node: "A", mode: "clear" })).toEqual({
      kind: "branchMode",
      node: "A",
      mode: null,
    });
  });

  it("rejects incomplete or malformed payloads", () => {
    expect(gestureFromData({})).toBeNull();
    expect(gestureFromData({ gesture: "expand" })).toBeNull();
    expect(gestureFromData({ gesture: "branchMode", node: "A", mode: "spiral" })).toBeNull();
    expect(gestureFromData({ gesture: "doiBrush", attribute: "val", lo: "x", hi: "2" })).toBeNull();
    expect(gestureFromData({ gesture: "doiBrush", lo: "1", hi: "2" })).toBeNull();
    expect(gestureFromData({ gesture: "doiPick", attribute: "grp", categories: "[]" })).toBeNull();
    expect(gestureFromData({ gesture: "pinPath", path: "not json" })).toBeNull();
    expect(gestureFromData({ gesture: "pinPath", path: "[1,2]" })).toBeNull();
    expect(gestureFromData({ gesture: "sortColumn", key: "label", direction: "up" })).toBeNull();
    expect(gestureFromData({ gesture: "unknown", node: "A" })).toBeNull();
  });

  it("round trips every remote gesture the rows emit", () => {
    const payloads: Array<Record<string, string>> = [
      { gesture: "addRoot", node: "A" },
      { gesture: "makeRoot", node: "B" },
      { gesture: "gather", node: "A" },
      { gesture: "remove", node: "D" },
      { gesture: "aggregateToggle", node: "A", aggregate: "true" },
      { gesture: "sortColumn", key: "attr:val", direction: "asc" },
      { gesture: "doiClear" },
    ];
    for (const p of payloads) {
      const g = gestureFromData(p);
      expect(g, JSON.stringify(p)).not.toBeNull();
      expect(gestureToOp(g as Gesture)).not.toBeNull();
    }
  });
});
