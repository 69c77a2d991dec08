/**
 * Session controller: owns the view state and the one allowed in-flight
 * ops batch. Gestures are dropped, not queued, while a batch is out;
 * the rendered rows always come from the latest fetched revision, never
 * from a locally predicted one.
 */

import { ApiError, type ServiceClient } from "./api.js";
import { gestureToOp, type Gesture } from "./gestures.js";
import type { LayoutDocument } from "./types.js";
import type { ViewState } from "./render.js";

/** The slice of the client the controller needs; tests stub this. */
export type SessionApi = Pick<ServiceClient, "createSession" | "applyOps" | "fetchLayout">;

export interface ControllerState extends ViewState {
  sessionId: string | null;
  dataset: string | null;
  doc: LayoutDocument | null;
  error: string | null;
}

export type GestureOutcome = "applied" | "local" | "busy" | "rejected" | "no-session";

export class SessionController {
  private readonly client: SessionApi;
  private readonly onChange: (state: ControllerState) => void;
  state: ControllerState = {
    sessionId: null,
    dataset: null,
    doc: null,
    selection: null,
    hover: null,
    pending: false,
    error: null,
  };

  constructor(client: SessionApi, onChange: (state: ControllerState) => void = () => {}) {
    this.client = client;
    this.onChange = onChange;
  }

  private emit(patch: Partial<ControllerState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  /** Open a fresh session on a dataset and fetch its (empty) layout. */
  async open(dataset: string): Promise<void> {
    const envelope = await this.client.createSession(dataset);
    const doc = await this.client.fetchLayout(envelope.sessionId);
    this.emit({
      sessionId: envelope.sessionId,
      dataset,
      doc,
      selection: null,
      hover: null,
      pending: false,
      error: null,
    });
  }

  /**
   * Translate a gesture, send it, refetch the layout. At most one batch
   * is in flight; a gesture arriving while pending is reported "busy"
   * and ignored. Client-local gestures never reach the service.
   */
  async apply(gesture: Gesture): Promise<GestureOutcome> {
    if (gesture.kind === "columnDrag") {
      return "local";
    }
    const op = gestureToOp(gesture);
    if (op === null) return "local";
    if (this.state.sessionId === null) return "no-session";
    if (this.state.pending) return "busy";

    this.emit({ pending: true, error: null });
    try {
      await this.client.applyOps(this.state.sessionId, [op]);
      // fetched after the ack, so the document is at least that revision
      const doc = await this.client.fetchLayout(this.state.sessionId);
      this.emit({ pending: false, doc });
      return "applied";
    } catch (err) {
      const message = err instanceof ApiError ? err.message : String(err);
      this.emit({ pending: false, error: message });
      return "rejected";
    }
  }

  /** Selection is local state; it only changes what gets re-rendered. */
  select(node: string | null): void {
    this.emit({ selection: node });
  }

  hoverRow(y: number | null): void {
    this.emit({ hover: y });
  }
}
