/**
 * Reader for the schema-versioned CSV files emitted by the spinbattery CLI.
 *
 * Every file starts with `# schema=<name>.v<version>` followed by a header
 * row. Mismatched schema versions are refused outright; missing columns
 * abort with the offending column named.
 */

import { readFileSync } from "node:fs";

export const SUPPORTED_VERSION = 1;

export type Cell = number | string;
export type Row = Record<string, Cell>;

export interface Table {
  schema: string;
  version: number;
  columns: string[];
  rows: Row[];
}

function parseCell(text: string): Cell {
  if (text === "Infinity") return Infinity;
  if (text === "-Infinity") return -Infinity;
  if (text === "NaN") return NaN;
  if (text === "") return "";
  const asNumber = Number(text);
  return Number.isNaN(asNumber) ? text : asNumber;
}

export function parseTable(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.trim().length > 0);
  if (lines.length === 0 || !lines[0].startsWith("# schema=")) {
    throw new Error("missing schema comment line ('# schema=<name>.v<n>')");
  }
  const tag = lines[0].slice("# schema=".length).trim();
  const match = /^(.+)\.v(\d+)$/.exec(tag);
  if (!match) {
    throw new Error(`malformed schema tag '${tag}'`);
  }
  const schema = match[1];
  const version = Number(match[2]);
  if (version !== SUPPORTED_VERSION) {
    throw new Error(`unsupported schema version v${version} for '${schema}' (expected v${SUPPORTED_VERSION})`);
  }
  if (lines.length < 2) {
    throw new Error("missing column header row");
  }
  const columns = lines[1].split(",");
  const rows: Row[] = [];
  for (const line of lines.slice(2)) {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new Error(`row has ${cells.length} cells, expected ${columns.length}: '${line}'`);
    }
    const row: Row = {};
    columns.forEach((column, i) => {
      row[column] = parseCell(cells[i]);
    });
    rows.push(row);
  }
  return { schema, version, columns, rows };
}

export function readTable(path: string): Table {
  return parseTable(readFileSync(path, "utf-8"));
}

export function requireSchema(table: Table, expected: string): void {
  if (table.schema !== expected) {
    throw new Error(`expected schema '${expected}', got '${table.schema}'`);
  }
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const column of needed) {
    if (!table.columns.includes(column)) {
      throw new Error(`schema '${table.schema}' is missing required column '${column}'`);
    }
  }
}

export function numbers(table: Table, column: string): number[] {
  requireColumns(table, [column]);
  return table.rows.map((row) => {
    const value = row[column];
    if (typeof value !== "number") {
      throw new Error(`column '${column}' has non-numeric cell '${value}'`);
    }
    return value;
  });
}
