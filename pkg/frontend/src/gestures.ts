/**
 * User gestures and their translation to session operations.
 *
 * Every remote gesture maps to exactly one operation; gestures the
 * engine never needs to see (column drag) map to null and are handled
 * locally. Interactive elements carry the gesture in data-* attributes,
 * so a click handler can rebuild it with gestureFromData without any
 * per-element listeners.
 */

import type { BranchMode, Operation, SortDirection } from "./types.js";

export type Gesture =
  | { kind: "addRoot"; node?: string }
  | { kind: "expand"; node: string }
  | { kind: "makeRoot"; node: string }
  | { kind: "gather"; node: string }
  | { kind: "remove"; node: string }
  | { kind: "branchMode"; node: string; mode: BranchMode | null }
  | { kind: "aggregateToggle"; node: string; aggregate: boolean }
  | { kind: "doiBrush"; attribute: string; lo: number; hi: number; types?: string[] }
  | { kind: "doiPick"; attribute: string; categories: string[]; types?: string[] }
  | { kind: "doiClear" }
  | { kind: "sortColumn"; key: string; direction: SortDirection }
  | { kind: "pinPath"; path: string[] }
  | { kind: "pinMatrixColumns"; columns: string[] }
  | { kind: "columnDrag"; from: number; to: number };

/** Translate a gesture into its wire operation; null means client-local. */
export function gestureToOp(g: Gesture): Operation | null {
  switch (g.kind) {
    case "addRoot":
      return g.node === undefined ? { op: "addRoot" } : { op: "addRoot", node: g.node };
    case "expand":
      return { op: "expandMissing", node: g.node };
    case "makeRoot":
      return { op: "makeRoot", node: g.node };
    case "gather":
      return { op: "gatherChildren", node: g.node };
    case "remove":
      return { op: "removeBranch", node: g.node };
    case "branchMode":
      return { op: "setBranchMode", node: g.node, mode: g.mode };
    case "aggregateToggle":
      return { op: "setAggregation", node: g.node, aggregate: g.aggregate };
    case "doiBrush":
      return {
        op: "setDOI",
        doi: {
          attribute: g.attribute,
          range: [g.lo, g.hi],
          ...(g.types ? { types: g.types } : {}),
        },
      };
    case "doiPick":
      return {
        op: "setDOI",
        doi: {
          attribute: g.attribute,
          categories: g.categories,
          ...(g.types ? { types: g.types } : {}),
        },
      };
    case "doiClear":
      return { op: "setDOI", doi: null };
    case "sortColumn":
      return { op: "setSort", key: g.key, direction: g.direction };
    case "pinPath":
      return { op: "pathSort", path: g.path };
    case "pinMatrixColumns":
      return { op: "setMatrixColumns", columns: g.columns };
    case "columnDrag":
      return null;
  }
}

/**
 * Rebuild a gesture from an element's data-* attributes. Returns null
 * for elements that carry no gesture or an incomplete one.
 *
 * Attribute vocabulary (all strings): gesture, node, mode, aggregate,
 * attribute, lo, hi, types, categories, key, direction, path, columns.
 * List-valued fields are JSON arrays.
 */
export function gestureFromData(data: Record<string, string | undefined>): Gesture | null {
  const kind = data.gesture;
  if (!kind) return null;

  const node = data.node;
  switch (kind) {
    case "addRoot":
      return node === undefined ? { kind: "addRoot" } : { kind: "addRoot", node };
    case "expand":
    case "makeRoot":
    case "gather":
    case "remove":
      if (node === undefined) return null;
      return { kind, node };
    case "branchMode": {
      if (node === undefined) return null;
      const mode = data.mode;
      if (mode !== "tree" && mode !== "level" && mode !== "clear") return null;
      return { kind, node, mode: mode === "clear" ? null : mode };
    }
    case "aggregateToggle":
      if (node === undefined || data.aggregate === undefined) return null;
      return { kind, node, aggregate: data.aggregate === "true" };
    case "doiBrush": {
      const lo = Number(data.lo);
      const hi = Number(data.hi);
      if (!data.attribute || Number.isNaN(lo) || Number.isNaN(hi)) return null;
      const types = parseList(data.types);
      return { kind, attribute: data.attribute, lo, hi, ...(types ? { types } : {}) };
    }
    case "doiPick": {
      const categories = parseList(data.categories);
      if (!data.attribute || !categories || categories.length === 0) return null;
      const types = parseList(data.types);
      return { kind, attribute: data.attribute, categories, ...(types ? { types } : {}) };
    }
    case "doiClear":
      return { kind };
    case "sortColumn": {
      const direction = data.direction;
      if (!data.key || (direction !== "asc" && direction !== "desc")) return null;
      return { kind, key: data.key, direction };
    }
    case "pinPath": {
      const path = parseList(data.path);
      if (!path || path.length === 0) return null;
      return { kind, path };
    }
    case "pinMatrixColumns": {
      const columns = parseList(data.columns);
      if (!columns) return null;
      return { kind, columns };
    }
    default:
      return null;
  }
}

function parseList(raw: string | undefined): string[] | null {
  if (raw === undefined) return null;
  try {
    const parsed = JSON.parse(raw);
    if (Array.isArray(parsed) && parsed.every((x) => typeof x === "string")) {
      return parsed as string[];
    }
  } catch {
    // not JSON: fall through
  }
  return null;
}
