/**
 * Pure view functions: (layout document, local view state) -> HTML string.
 *
 * No layout decisions are made here. Row order, depths, counts, their
 * compact labels and normalized bar lengths all come from the document;
 * this module only turns them into markup. Because every function is a
 * pure function of its arguments, re-rendering from scratch after any
 * state change is the only update path and is trivially consistent.
 *
 * Interactive elements carry data-gesture payloads (see gestures.ts).
 */

import type {
  AggregateCell,
  AggregateRow,
  AttributeColumn,
  HiddenEdgeEntry,
  IndividualRow,
  LayoutDocument,
  LayoutRow,
  PathsDocument,
  RowCounts,
  SearchResult,
  SortSpec,
  TableCell,
} from "./types.js";

export interface ViewState {
  /** Selected node id, or null. Selection reveals that row's hidden links. */
  selection: string | null;
  /** Hovered row index, or null. */
  hover: number | null;
  /** True while an ops batch is in flight; interactive controls disable. */
  pending: boolean;
}

export const EMPTY_VIEW: ViewState = { selection: null, hover: null, pending: false };

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function attr(value: string): string {
  return `"${escapeHtml(value)}"`;
}

function jsonAttr(value: unknown): string {
  return attr(JSON.stringify(value));
}

const INDENT_PX = 16;

/** The whole exploration view for one layout document. */
export function renderApp(doc: LayoutDocument, view: ViewState): string {
  if (doc.rows.length === 0) {
    return (
      `<div class="rt-empty" data-revision="${doc.revision}">` +
      `No rows yet. Search above and add a node as a root to start exploring.` +
      `</div>`
    );
  }
  const pendingClass = view.pending ? " rt-pending" : "";
  return (
    `<div class="rt-layout${pendingClass}" data-revision="${doc.revision}">` +
    `<table class="rt-table">` +
    renderHeader(doc, view) +
    `<tbody>` +
    doc.rows.map((row) => renderRow(doc, row, view)).join("") +
    `</tbody>` +
    `</table>` +
    `</div>`
  );
}

function sortButton(doc: LayoutDocument, view: ViewState, key: string, text: string): string {
  const active = doc.sort.key === key;
  const arrow = active ? (doc.sort.direction === "asc" ? " ▲" : " ▼") : "";
  // clicking an active ascending header flips it to descending
  const next = active && doc.sort.direction === "asc" ? "desc" : "asc";
  const cls = active ? "rt-sort rt-sort-active" : "rt-sort";
  return (
    `<button type="button" class=${attr(cls)} data-gesture="sortColumn"` +
    ` data-key=${attr(key)} data-direction=${attr(next)}${disabled(view)}>` +
    escapeHtml(text) +
    arrow +
    `</button>`
  );
}

function disabled(view: ViewState): string {
  return view.pending ? " disabled" : "";
}

function renderHeader(doc: LayoutDocument, view: ViewState): string {
  const cells: string[] = [];
  cells.push(`<th class="rt-col-tree">${sortButton(doc, view, "label", "node")}</th>`);
  cells.push(`<th class="rt-col-count">${sortButton(doc, view, "count:visible", "vis")}</th>`);
  cells.push(`<th class="rt-col-count">${sortButton(doc, view, "count:hidden", "hid")}</th>`);
  cells.push(`<th class="rt-col-count">${sortButton(doc, view, "count:graph", "all")}</th>`);
  for (const col of doc.matrix.columns) {
    cells.push(
      `<th class="rt-col-matrix" title=${attr(`${col.label} (${col.type})`)}>` +
        `<span class="rt-matrix-label">${escapeHtml(col.label)}</span></th>`,
    );
  }
  for (const col of doc.attributeTable.columns) {
    cells.push(renderAttributeHeader(col, doc.sort, view));
  }
  return `<thead><tr>${cells.join("")}</tr></thead>`;
}

function renderAttributeHeader(col: AttributeColumn, sort: SortSpec, view: ViewState): string {
  const key = `attr:${col.name}`;
  const active = sort.key === key;
  const arrow = active ? (sort.direction === "asc" ? " ▲" : " ▼") : "";
  const next = active && sort.direction === "asc" ? "desc" : "asc";
  const parts: string[] = [];
  parts.push(
    `<button type="button" class="rt-sort${active ? " rt-sort-active" : ""}"` +
      ` data-gesture="sortColumn" data-key=${attr(key)} data-direction=${attr(next)}` +
      `${disabled(view)}>${escapeHtml(col.name)}${arrow}</button>`,
  );
  if (col.kind === "numeric") {
    const [lo, hi] = col.domain;
    parts.push(
      `<span class="rt-brush" data-attribute=${attr(col.id)}` +
        ` data-types=${jsonAttr(col.types)}>` +
        `<input class="rt-brush-lo" type="number" value=${attr(String(lo ?? ""))} aria-label="from">` +
        `<input class="rt-brush-hi" type="number" value=${attr(String(hi ?? ""))} aria-label="to">` +
        `<button type="button" class="rt-brush-go" data-gesture="doiBrush"` +
        ` data-attribute=${attr(col.id)} data-types=${jsonAttr(col.types)}${disabled(view)}>` +
        `focus</button>` +
        `</span>`,
    );
  } else {
    // one pick button per category keeps nominal focusing clickable
    const cats = col.domain.filter((c): c is string => typeof c === "string");
    for (const cat of cats) {
      parts.push(
        `<button type="button" class="rt-pick" data-gesture="doiPick"` +
          ` data-attribute=${attr(col.id)} data-categories=${jsonAttr([cat])}` +
          ` data-types=${jsonAttr(col.types)}${disabled(view)}>${escapeHtml(cat)}</button>`,
      );
    }
  }
  return `<th class="rt-col-attr" title=${attr(`${col.name} (${col.kind})`)}>${parts.join("")}</th>`;
}

function renderRow(doc: LayoutDocument, row: LayoutRow, view: ViewState): string {
  const classes = ["rt-row", `rt-${row.kind}`];
  if (view.hover === row.y) classes.push("rt-hover");
  const selected =
    row.kind === "individual" && view.selection !== null && row.node === view.selection;
  if (selected) classes.push("rt-selected");
  const entries = doc.hiddenEdges[row.y] ?? [];
  if (view.selection !== null && !selected && linksToSelection(doc, row.y, view.selection)) {
    classes.push("rt-linked");
  }

  const cells: string[] = [];
  cells.push(renderTreeCell(doc, row, view));
  const counts = doc.edgeCounts.rows[row.y];
  if (counts) {
    cells.push(countCell(counts, "visible"));
    cells.push(countCell(counts, "hidden"));
    cells.push(countCell(counts, "graph"));
  }
  const matrixRow = doc.matrix.cells[row.y] ?? [];
  matrixRow.forEach((cell, i) => {
    const col = doc.matrix.columns[i];
    const title = `${cell.count} of ${cell.members}`;
    cells.push(
      `<td class="rt-cell-matrix${cell.count > 0 ? " rt-hit" : ""}"` +
        ` data-column=${attr(col ? col.node : String(i))} title=${attr(title)}>` +
        `<span class="rt-fill" style="opacity:${cell.normalized.toFixed(4)}"></span>` +
        `</td>`,
    );
  });
  const tableCells = doc.attributeTable.cells[String(row.y)] ?? {};
  for (const col of doc.attributeTable.columns) {
    cells.push(renderTableCell(col, tableCells[col.id]));
  }

  const nodeAttr = row.kind === "individual" ? ` data-node=${attr(row.node)}` : "";
  let html =
    `<tr class=${attr(classes.join(" "))} data-row="${row.y}"${nodeAttr}>` +
    cells.join("") +
    `</tr>`;
  if (selected && entries.length > 0) {
    html += renderHiddenLinks(doc, row.y, entries);
  }
  return html;
}

function linksToSelection(doc: LayoutDocument, y: number, selection: string): boolean {
  const selRow = doc.rows.find((r) => r.kind === "individual" && r.node === selection);
  if (!selRow) return false;
  const selEntries = doc.hiddenEdges[selRow.y] ?? [];
  return selEntries.some((e) => e.otherRow === y);
}

function renderTreeCell(doc: LayoutDocument, row: LayoutRow, view: ViewState): string {
  const indent = row.depth * INDENT_PX;
  if (row.kind === "aggregate") {
    return (
      `<td class="rt-cell-tree" style="padding-left:${indent}px">` +
      aggregateGlyphs(doc, row) +
      `</td>`
    );
  }
  return (
    `<td class="rt-cell-tree" style="padding-left:${indent}px">` +
    `<span class="rt-icon" data-type=${attr(row.type)} title=${attr(row.type)}></span>` +
    `<span class="rt-label" data-gesture="select" data-node=${attr(row.node)}>` +
    escapeHtml(row.label) +
    `</span>` +
    rowButtons(doc, row, view) +
    `</td>`
  );
}

/** One small square per pooled member, grouped (faceted) by node type. */
function aggregateGlyphs(doc: LayoutDocument, row: AggregateRow): string {
  const facets: string[] = [];
  for (const [type, members] of Object.entries(row.members)) {
    const squares = members
      .map((id) => {
        const ref = doc.nodes[id];
        const title = ref ? `${ref.label} (${type})` : id;
        return `<i class="rt-sq" data-type=${attr(type)} title=${attr(title)}></i>`;
      })
      .join("");
    facets.push(`<span class="rt-agg-facet" data-type=${attr(type)}>${squares}</span>`);
  }
  return (
    `<span class="rt-agg" title=${attr(`${row.size} pooled`)}>` +
    facets.join("") +
    `<span class="rt-agg-size">${row.size}</span>` +
    `</span>`
  );
}

function rowButtons(doc: LayoutDocument, row: IndividualRow, view: ViewState): string {
  const counts = doc.edgeCounts.rows[row.y];
  const buttons: string[] = [];
  // the plus sign appears only when the graph still holds unrevealed
  // neighbors: graph degree above what the subgraph already accounts for
  if (counts && counts.graph.count > counts.visible.count + counts.hidden.count) {
    buttons.push(
      `<button type="button" class="rt-plus" data-gesture="expand"` +
        ` data-node=${attr(row.node)} title="reveal missing neighbors"${disabled(view)}>+</button>`,
    );
  }
  buttons.push(
    `<button type="button" class="rt-act" data-gesture="makeRoot"` +
      ` data-node=${attr(row.node)} title="make root"${disabled(view)}>⌂</button>`,
  );
  buttons.push(
    `<button type="button" class="rt-act" data-gesture="gather"` +
      ` data-node=${attr(row.node)} title="gather children"${disabled(view)}>⤴</button>`,
  );
  const aggregated = doc.rows.some(
    (r) => r.kind === "aggregate" && r.parentRow !== null && r.parentRow === row.y,
  );
  buttons.push(
    `<button type="button" class="rt-act" data-gesture="aggregateToggle"` +
      ` data-node=${attr(row.node)} data-aggregate=${attr(String(!aggregated))}` +
      ` title=${attr(aggregated ? "expand pooled leaves" : "pool leaf children")}` +
      `${disabled(view)}>▤</button>`,
  );
  const nextMode = row.mode === "tree" ? "level" : "tree";
  buttons.push(
    `<button type="button" class="rt-act" data-gesture="branchMode"` +
      ` data-node=${attr(row.node)} data-mode=${attr(nextMode)}` +
      ` title=${attr(`switch branch to ${nextMode} mode`)}${disabled(view)}>≡</button>`,
  );
  return `<span class="rt-actions">${buttons.join("")}</span>`;
}

function countCell(counts: RowCounts, which: keyof RowCounts): string {
  const fig = counts[which];
  const pct = Math.round(fig.normalized * 100);
  return (
    `<td class="rt-cell-count rt-count-${which}" data-count="${fig.count}">` +
    `<span class="rt-bar" style="width:${pct}%"></span>` +
    `<span class="rt-count-text">${escapeHtml(fig.text)}</span>` +
    `</td>`
  );
}

function renderTableCell(col: AttributeColumn, cell: TableCell | undefined): string {
  if (cell === undefined || "absent" in cell) {
    return `<td class="rt-cell-attr rt-absent" title=${attr(`${col.name}: not applicable`)}>‒</td>`;
  }
  if ("summary" in cell) {
    return renderAggregateCell(col, cell);
  }
  const value = cell.value;
  if (value === null) {
    return `<td class="rt-cell-attr rt-missing"></td>`;
  }
  if (col.kind === "numeric" && typeof value === "number") {
    const [lo, hi] = col.domain as [number, number];
    const span = hi > lo ? hi - lo : 1;
    const pct = Math.round(((value - lo) / span) * 100);
    return (
      `<td class="rt-cell-attr rt-numeric">` +
      `<span class="rt-bar" style="width:${pct}%"></span>` +
      `<span class="rt-value">${escapeHtml(String(value))}</span>` +
      `</td>`
    );
  }
  const text = Array.isArray(value) ? value.join(", ") : String(value);
  return `<td class="rt-cell-attr rt-${col.kind}"><span class="rt-value">${escapeHtml(text)}</span></td>`;
}

function renderAggregateCell(col: AttributeColumn, cell: AggregateCell): string {
  const s = cell.summary;
  if (s.kind === "numeric") {
    const [lo, hi] = col.domain as [number, number];
    const span = hi > lo ? hi - lo : 1;
    const pct = Math.round(((s.mean - lo) / span) * 100);
    const title = `n=${s.count} min=${s.min} max=${s.max} mean=${s.mean}`;
    return (
      `<td class="rt-cell-attr rt-agg-numeric" title=${attr(title)}>` +
      `<span class="rt-bar rt-bar-mean" style="width:${pct}%"></span>` +
      `<span class="rt-value">${escapeHtml(String(s.mean))}</span>` +
      `</td>`
    );
  }
  const parts = Object.entries(s.counts).map(([cat, n]) => `${cat}:${n}`);
  const title = parts.join(" ");
  return (
    `<td class="rt-cell-attr rt-agg-categories" title=${attr(title)}>` +
    `<span class="rt-value">${escapeHtml(parts.join(" "))}</span>` +
    `</td>`
  );
}

/**
 * Hidden (non-tree) links of the selected row, drawn right below it.
 * The wire names each link's edge id and endpoints; those become the
 * tooltip. Cross-row links say where the other endpoint sits.
 */
function renderHiddenLinks(doc: LayoutDocument, y: number, entries: HiddenEdgeEntry[]): string {
  const span = totalColumns(doc);
  const items = entries
    .map((e) => {
      const srcLabel = doc.nodes[e.source]?.label ?? e.source;
      const tgtLabel = doc.nodes[e.target]?.label ?? e.target;
      const tip = `${e.edge}: ${srcLabel} – ${tgtLabel}`;
      if (e.internal) {
        return `<li class="rt-link rt-internal" title=${attr(tip + " (within this row)")}>` +
          `${escapeHtml(srcLabel)} – ${escapeHtml(tgtLabel)}</li>`;
      }
      const where = e.otherRow !== null ? ` @ row ${e.otherRow}` : "";
      return (
        `<li class="rt-link" data-other-row=${attr(String(e.otherRow ?? ""))}` +
        ` title=${attr(tip)}>${escapeHtml(srcLabel)} – ${escapeHtml(tgtLabel)}${where}</li>`
      );
    })
    .join("");
  return (
    `<tr class="rt-hidden-links" data-for-row="${y}">` +
    `<td colspan="${span}"><ul>${items}</ul></td>` +
    `</tr>`
  );
}

function totalColumns(doc: LayoutDocument): number {
  return 4 + doc.matrix.columns.length + doc.attributeTable.columns.length;
}

/** Faceted search results; each hit can be added as a root. */
export function renderSearch(result: SearchResult, view: ViewState): string {
  const facets = Object.entries(result.facets);
  if (facets.length === 0) {
    return `<div class="rt-search-empty">No matches for “${escapeHtml(result.query)}”.</div>`;
  }
  const blocks = facets.map(([type, hits]) => {
    const items = hits
      .map(
        (h) =>
          `<li><button type="button" class="rt-hit" data-gesture="addRoot"` +
          ` data-node=${attr(h.node)}${disabled(view)}>` +
          `${escapeHtml(h.label)} <small>deg ${h.degree}</small></button></li>`,
      )
      .join("");
    return `<div class="rt-facet"><h3>${escapeHtml(type)}</h3><ul>${items}</ul></div>`;
  });
  return `<div class="rt-search">${blocks.join("")}</div>`;
}

/** Shortest-path results; picking one pins it as the row order. */
export function renderPaths(doc: PathsDocument, view: ViewState): string {
  if (doc.length === null) {
    return `<div class="rt-paths rt-paths-none">No route between the endpoints.</div>`;
  }
  const items = doc.paths
    .map((p) => {
      const tips = p.steps.map((s) => `${s.edge} (${s.kind})`).join(", ");
      return (
        `<li><button type="button" class="rt-path" data-gesture="pinPath"` +
        ` data-path=${jsonAttr(p.nodes)} title=${attr(tips)}${disabled(view)}>` +
        escapeHtml(p.nodes.join(" → ")) +
        `</button></li>`
      );
    })
    .join("");
  const note = doc.truncated ? `<p class="rt-truncated">List truncated.</p>` : "";
  return `<div class="rt-paths"><p>${doc.paths.length} path(s), length ${doc.length}.</p><ul>${items}</ul>${note}</div>`;
}
