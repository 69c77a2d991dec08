import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { SessionController, type SessionApi } from "../src/state.js";
import type { LayoutDocument, Operation, SessionEnvelope } from "../src/types.js";
import { loadFixture, type Fig2Fixture } from "./helpers.js";

const fig2 = loadFixture<Fig2Fixture>("fig2-layout.json");

function envelope(revision: number): SessionEnvelope {
  return { sessionId: "s-1", dataset: "fig2", revision, state: {} };
}

function docAt(revision: number): LayoutDocument {
  return { ...fig2.document, revision };
}

interface FakeOptions {
  failOps?: ApiError;
  holdOps?: boolean;
}

/** Minimal client stub; resolveHeld() releases a held applyOps call. */
function fakeClient(opts: FakeOptions = {}) {
  const calls: Array<{ method: string; ops?: Operation[] }> = [];
  let revision = 0;
  let release: (() => void) | null = null;

  const api: SessionApi = {
    createSession: (dataset: string) => {
      calls.push({ method: "createSession" });
      return Promise.resolve({ ...envelope(revision), dataset });
    },
    applyOps: async (_sid: string, ops: Operation[]) => {
      calls.push({ method: "applyOps", ops });
      if (opts.holdOps) {
        await new Promise<void>((resolve) => {
          release = resolve;
        });
      }
      if (opts.failOps) throw opts.failOps;
      revision += ops.length;
      return envelope(revision);
    },
    fetchLayout: () => {
      calls.push({ method: "fetchLayout" });
      return Promise.resolve(docAt(revision));
    },
  };
  return {
    api,
    calls,
    resolveHeld: () => {
      if (release) release();
    },
  };
}

describe("SessionController.open", () => {
  it("creates a session and fetches its layout", async () => {
    const { api, calls } = fakeClient();
    const states: number[] = [];
    const c = new SessionController(api, (s) => states.push(s.doc?.revision ?? -1));
    await c.open("fig2");
    expect(c.state.sessionId).toBe("s-1");
    expect(c.state.dataset).toBe("fig2");
    expect(c.state.doc?.revision).toBe(0);
    expect(calls.map((x) => x.method)).toEqual(["createSession", "fetchLayout"]);
    expect(states).toEqual([0]);
  });
});

describe("SessionController.apply", () => {
  it("sends one op, refetches, and lands on the fetched revision", async () => {
    const { api, calls } = fakeClient();
    const c = new SessionController(api);
    await c.open("fig2");
    const outcome = await c.apply({ kind: "expand", node: "C" });
    expect(outcome).toBe("applied");
    const opsCall = calls.find((x) => x.method === "applyOps");
    expect(opsCall?.ops).toEqual([{ op: "expandMissing", node: "C" }]);
    expect(c.state.doc?.revision).toBe(1);
    expect(c.state.pending).toBe(false);
  });

  it("raises pending during the round trip and clears it after", async () => {
    const { api } = fakeClient();
    const pendings: boolean[] = [];
    const c = new SessionController(api, (s) => pendings.push(s.pending));
    await c.open("fig2");
    await c.apply({ kind: "gather", node: "A" });
    // open, pending-on, pending-off
    expect(pendings).toEqual([false, true, false]);
  });

  it("allows at most one in-flight batch", async () => {
    const fake = fakeClient({ holdOps: true });
    const c = new SessionController(fake.api);
    await c.open("fig2");

    const first = c.apply({ kind: "expand", node: "C" });
    await Promise.resolve(); // let the first apply reach the held call
    const second = await c.apply({ kind: "expand", node: "G" });
    expect(second).toBe("busy");

    fake.resolveHeld();
    expect(await first).toBe("applied");
    expect(fake.calls.filter((x) => x.method === "applyOps")).toHaveLength(1);
  });

  it("keeps column drags local", async () => {
    const { api, calls } = fakeClient();
    const c = new SessionController(api);
    await c.open("fig2");
    expect(await c.apply({ kind: "columnDrag", from: 1, to: 0 })).toBe("local");
    expect(calls.some((x) => x.method === "applyOps")).toBe(false);
  });

  it("reports rejection, keeps the old document, and recovers", async () => {
    const err = new ApiError(422, {
      code: "precondition",
      message: "op 0 failed: node 'ZZ' is not a subgraph member",
      opIndex: 0,
    });
    const fake = fakeClient({ failOps: err });
    const c = new SessionController(fake.api);
    await c.open("fig2");
    const before = c.state.doc;

    const outcome = await c.apply({ kind: "makeRoot", node: "ZZ" });
    expect(outcome).toBe("rejected");
    expect(c.state.doc).toBe(before);
    expect(c.state.pending).toBe(false);
    expect(c.state.error).toContain("ZZ");
  });

  it("refuses gestures before a session exists", async () => {
    const { api, calls } = fakeClient();
    const c = new SessionController(api);
    expect(await c.apply({ kind: "expand", node: "C" })).toBe("no-session");
    expect(calls).toHaveLength(0);
  });
});

describe("local view state", () => {
  it("selection and hover change without service traffic", async () => {
    const { api, calls } = fakeClient();
    const c = new SessionController(api);
    await c.open("fig2");
    const baseline = calls.length;

    c.select("B");
    expect(c.state.selection).toBe("B");
    c.hoverRow(3);
    expect(c.state.hover).toBe(3);
    c.select(null);
    expect(c.state.selection).toBeNull();
    expect(calls.length).toBe(baseline);
  });
});
