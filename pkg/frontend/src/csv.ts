import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class SchemaError extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, string>[];
}

/** Load a CSV and verify it carries the columns a figure needs. */
export function loadTable(path: string, required: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`cannot parse ${path}: ${first.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  const missing = required.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `${path} is missing column(s) ${missing.join(", ")}; ` +
        `found: ${columns.join(", ")}`,
    );
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${path} has a header but no data rows`);
  }
  return { columns, rows: parsed.data };
}

export function num(row: Record<string, string>, column: string): number {
  const value = Number(row[column]);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`non-numeric value ${row[column]!} in column ${column}`);
  }
  return value;
}

/** Group rows by a key function, preserving first-seen order. */
export function groupBy<T>(
  rows: T[],
  key: (row: T) => string,
): Map<string, T[]> {
  const out = new Map<string, T[]>();
  for (const row of rows) {
    const k = key(row);
    const bucket = out.get(k);
    if (bucket) {
      bucket.push(row);
    } else {
      out.set(k, [row]);
    }
  }
  return out;
}
