/**
 * Test utilities: fixture loading and a small extractor that pulls
 * data-* payloads back out of rendered markup, standing in for what
 * the browser's element.dataset would hand the click handler.
 */

import { readFileSync } from "node:fs";
import type { LayoutDocument } from "../src/types.js";

export function loadFixture<T = Record<string, unknown>>(name: string): T {
  const url = new URL(`../fixtures/${name}`, import.meta.url);
  return JSON.parse(readFileSync(url, "utf-8")) as T;
}

export interface Fig2Fixture {
  dataset: string;
  ops: unknown[];
  envelope: { sessionId: string; revision: number };
  empty: LayoutDocument;
  document: LayoutDocument;
  withMatrix: LayoutDocument;
}

export interface DoiFixture {
  dataset: string;
  setup: unknown[];
  gesture: { kind: string; attribute: string; lo: number; hi: number };
  op: Record<string, unknown>;
  accepted: { status: number; revision: number };
  matches: string[];
  before: LayoutDocument;
  after: LayoutDocument;
}

export interface ContractFixture {
  dataset: string;
  entries: Array<{
    gesture: Record<string, unknown>;
    op: Record<string, unknown>;
    status: number;
    revision: number;
  }>;
}

function unescapeHtml(s: string): string {
  return s
    .replace(/&quot;/g, '"')
    .replace(/&#39;/g, "'")
    .replace(/&lt;/g, "<")
    .replace(/&gt;/g, ">")
    .replace(/&amp;/g, "&");
}

function camel(k: string): string {
  return k.replace(/-([a-z])/g, (_, c: string) => c.toUpperCase());
}

/**
 * All opening tags in the markup that carry a data-gesture attribute,
 * each reduced to its data-* payload (keys camelCased like dataset).
 */
export function gestureElements(html: string): Array<Record<string, string>> {
  const out: Array<Record<string, string>> = [];
  for (const tag of html.match(/<[a-z]+\s[^>]*data-gesture="[^"]*"[^>]*>/g) ?? []) {
    const data: Record<string, string> = {};
    const attrRe = /data-([a-z-]+)="([^"]*)"/g;
    let m: RegExpExecArray | null;
    while ((m = attrRe.exec(tag)) !== null) {
      data[camel(m[1] as string)] = unescapeHtml(m[2] as string);
    }
    out.push(data);
  }
  return out;
}

/** Row <tr> tags only (not hidden-link sub-rows). */
export function rowTags(html: string): string[] {
  return html.match(/<tr [^>]*data-row="\d+"[^>]*>/g) ?? [];
}

export function countMatches(html: string, re: RegExp): number {
  return (html.match(re) ?? []).length;
}
