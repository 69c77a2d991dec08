/**
 * Browser entry point. Wires the controller to the DOM: one delegated
 * click handler rebuilds gestures from data-* payloads, a search box
 * feeds the query view, and every state change re-renders from scratch.
 */

import { ServiceClient } from "./api.js";
import { gestureFromData, type Gesture } from "./gestures.js";
import { renderApp, renderPaths, renderSearch, type ViewState } from "./render.js";
import { SessionController } from "./state.js";

const client = new ServiceClient("");
const $ = (id: string): HTMLElement => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
};

const controller = new SessionController(client, (state) => {
  const view: ViewState = {
    selection: state.selection,
    hover: state.hover,
    pending: state.pending,
  };
  $("main").innerHTML = state.doc ? renderApp(state.doc, view) : "";
  $("status").textContent = state.error
    ? state.error
    : state.pending
      ? "working…"
      : state.doc
        ? `revision ${state.doc.revision}`
        : "";
});

function view(): ViewState {
  return {
    selection: controller.state.selection,
    hover: controller.state.hover,
    pending: controller.state.pending,
  };
}

/**
 * Merge an element's dataset with brush input values when the element
 * sits inside a brush group, then rebuild the gesture.
 */
function collectGesture(el: HTMLElement): Gesture | null {
  const data: Record<string, string | undefined> = { ...el.dataset };
  if (data.gesture === "doiBrush") {
    const group = el.closest(".rt-brush");
    const lo = group?.querySelector<HTMLInputElement>(".rt-brush-lo")?.value;
    const hi = group?.querySelector<HTMLInputElement>(".rt-brush-hi")?.value;
    if (lo !== undefined) data.lo = lo;
    if (hi !== undefined) data.hi = hi;
  }
  return gestureFromData(data);
}

async function boot(): Promise<void> {
  const datasets = await client.listDatasets();
  const picker = $("dataset") as HTMLSelectElement;
  picker.innerHTML = datasets
    .map((d) => `<option value="${d.name}">${d.name} (${d.nodeCount} nodes)</option>`)
    .join("");
  picker.addEventListener("change", () => void controller.open(picker.value));
  if (datasets.length > 0 && datasets[0]) {
    await controller.open(datasets[0].name);
  }

  const searchBox = $("search") as HTMLInputElement;
  searchBox.addEventListener("input", () => {
    const q = searchBox.value.trim();
    const dataset = controller.state.dataset;
    if (!dataset || q === "") {
      $("results").innerHTML = "";
      return;
    }
    void client.search(dataset, q).then((result) => {
      $("results").innerHTML = renderSearch(result, view());
    });
  });

  const pathForm = $("path-form") as HTMLFormElement;
  pathForm.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const a = (($("path-a") as HTMLInputElement).value || "").trim();
    const b = (($("path-b") as HTMLInputElement).value || "").trim();
    const sessionId = controller.state.sessionId;
    if (!sessionId || !a || !b) return;
    void client
      .findPaths(sessionId, a, b)
      .then((doc) => {
        $("results").innerHTML = renderPaths(doc, view());
      })
      .catch((err: unknown) => {
        $("status").textContent = String(err instanceof Error ? err.message : err);
      });
  });

  document.body.addEventListener("click", (ev) => {
    const target = (ev.target as HTMLElement).closest<HTMLElement>("[data-gesture]");
    if (!target) return;
    if (target.dataset.gesture === "select") {
      const node = target.dataset.node ?? null;
      controller.select(controller.state.selection === node ? null : node);
      return;
    }
    const gesture = collectGesture(target);
    if (gesture) void controller.apply(gesture);
  });

  document.body.addEventListener("mouseover", (ev) => {
    const rowEl = (ev.target as HTMLElement).closest<HTMLElement>("tr[data-row]");
    const y = rowEl?.dataset.row;
    const next = y === undefined ? null : Number(y);
    if (next !== controller.state.hover) controller.hoverRow(next);
  });
}

void boot();
