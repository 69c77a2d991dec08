/**
 * Wire types for the rowtree HTTP service.
 *
 * These mirror the JSON the service emits and accepts, field for field.
 * The client never derives layout on its own; everything it draws comes
 * out of a LayoutDocument, so these shapes are the whole contract.
 */

export type RowKind = "individual" | "aggregate";
export type BranchMode = "tree" | "level";
export type SortDirection = "asc" | "desc";

export interface SortSpec {
  key: string;
  direction: SortDirection;
}

interface RowBase {
  kind: RowKind;
  y: number;
  depth: number;
  parentRow: number | null;
  mode: BranchMode;
  branch: string;
}

export interface IndividualRow extends RowBase {
  kind: "individual";
  node: string;
  type: string;
  label: string;
}

/** Pooled leaf children; members are grouped by node type in schema order. */
export interface AggregateRow extends RowBase {
  kind: "aggregate";
  members: Record<string, string[]>;
  size: number;
}

export type LayoutRow = IndividualRow | AggregateRow;

export interface CountFigure {
  count: number;
  /** Compact label ("14", "3h", "17k"); rendered verbatim. */
  text: string;
  normalized: number;
}

export interface RowCounts {
  visible: CountFigure;
  hidden: CountFigure;
  graph: CountFigure;
}

export interface EdgeCountsDoc {
  rows: RowCounts[];
  denominators: {
    individual: { visible: number; hidden: number; graph: number };
    aggregate: { visible: number; hidden: number; graph: number };
  };
}

export interface HiddenEdgeEntry {
  edge: string;
  source: string;
  target: string;
  /** True when both endpoints live in the same (aggregate) row. */
  internal: boolean;
  otherRow: number | null;
  other: string | null;
}

export interface MatrixColumn {
  node: string;
  label: string;
  type: string;
}

export interface MatrixCell {
  count: number;
  members: number;
  normalized: number;
}

export interface MatrixDoc {
  columns: MatrixColumn[];
  cells: MatrixCell[][];
}

export type AttributeKind = "numeric" | "nominal" | "ordinal" | "set";

export interface AttributeColumn {
  id: string;
  name: string;
  kind: AttributeKind;
  types: string[];
  domain: unknown[];
}

export interface ValueCell {
  value: number | string | string[] | null;
}

export interface AbsentCell {
  absent: true;
}

export interface NumericSummary {
  kind: "numeric";
  count: number;
  min: number;
  max: number;
  mean: number;
}

export interface CategorySummary {
  kind: "categories";
  counts: Record<string, number>;
}

export interface AggregateCell {
  values: unknown[];
  summary: NumericSummary | CategorySummary;
}

export type TableCell = ValueCell | AbsentCell | AggregateCell;

export interface AttributeTableDoc {
  columns: AttributeColumn[];
  /** Keyed by row y as a string (JSON object keys). */
  cells: Record<string, Record<string, TableCell>>;
}

export interface NodeRef {
  label: string;
  type: string;
}

export interface LayoutDocument {
  revision: number;
  dataset: string;
  sort: SortSpec;
  rows: LayoutRow[];
  nodes: Record<string, NodeRef>;
  edgeCounts: EdgeCountsDoc;
  hiddenEdges: HiddenEdgeEntry[][];
  matrix: MatrixDoc;
  attributeTable: AttributeTableDoc;
}

export interface PathStep {
  edge: string;
  kind: "tree" | "hidden";
}

export interface PathEntry {
  nodes: string[];
  steps: PathStep[];
}

export interface PathsDocument {
  revision: number;
  a: string;
  b: string;
  length: number | null;
  truncated: boolean;
  paths: PathEntry[];
}

export interface DatasetInfo {
  name: string;
  nodeCount: number;
  edgeCount: number;
  nodeTypes: string[];
}

export interface SearchHit {
  node: string;
  label: string;
  degree: number;
}

export interface SearchResult {
  query: string;
  facets: Record<string, SearchHit[]>;
}

export interface SessionEnvelope {
  sessionId: string;
  dataset: string;
  revision: number;
  /** Full session configuration; the client treats it as opaque. */
  state: Record<string, unknown>;
}

export interface DoiDoc {
  attribute: string;
  types?: string[];
  range?: [number | null, number | null];
  categories?: string[];
}

export type Operation =
  | { op: "addRoot"; node?: string }
  | { op: "addNode"; node: string; withNeighbors?: boolean }
  | { op: "expandMissing"; node: string }
  | { op: "makeRoot"; node: string }
  | { op: "gatherChildren"; node: string }
  | { op: "removeBranch"; node: string }
  | { op: "reattachBranch"; node: string; newParent: string }
  | { op: "setTypeFilters"; excluded: string[] }
  | { op: "setBranchMode"; node: string; mode: BranchMode | null }
  | { op: "setAggregation"; node: string; aggregate: boolean }
  | { op: "setDOI"; doi: DoiDoc | null }
  | { op: "setSort"; key: string; direction: SortDirection }
  | { op: "pathSort"; path: string[] }
  | { op: "setMatrixColumns"; columns: string[] };

export interface AutoMatrixResult {
  revision: number;
  columns: string[];
}

export interface ServiceError {
  code: string;
  message: string;
  opIndex?: number;
}
