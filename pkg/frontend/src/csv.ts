/** CSV loading with strict header validation against the declared plot kind. */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class CsvFormatError extends Error {}

export interface Table {
  columns: string[];
  rows: Record<string, number>[];
}

/** Required columns per plot kind; extra columns are tolerated. */
export const REQUIRED_COLUMNS: Record<string, string[]> = {
  "eta-phi-map": ["phi", "eta_over_g", "omega_tilde"],
  "weight-vs-phi": ["phi", "w_max", "complement"],
  "initial-state-map": ["c_plus", "c_minus", "omega_tilde_NB"],
  "gap-scaling": ["N", "min_re_gap"],
};

export function loadTable(path: string, kind: string): Table {
  const required = REQUIRED_COLUMNS[kind];
  if (!required) {
    throw new CsvFormatError(`unknown plot kind '${kind}'; expected one of ${Object.keys(REQUIRED_COLUMNS).join(", ")}`);
  }
  const text = readFileSync(path, "utf8");
  if (text.trim().length === 0) {
    throw new CsvFormatError(`input CSV ${path} is empty`);
  }
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new CsvFormatError(`failed to parse ${path}: ${first.message} (row ${first.row})`);
  }
  const columns = parsed.meta.fields ?? [];
  const missing = required.filter((c) => !columns.includes(c));
  if (missing.length > 0) {
    throw new CsvFormatError(
      `CSV ${path} does not match kind '${kind}': missing columns [${missing.join(", ")}]; ` +
        `expected header to contain [${required.join(", ")}], got [${columns.join(", ")}]`,
    );
  }
  if (parsed.data.length === 0) {
    throw new CsvFormatError(`input CSV ${path} has a header but no data rows`);
  }
  const rows = parsed.data.map((raw) => {
    const row: Record<string, number> = {};
    for (const col of columns) {
      row[col] = Number(raw[col]);
    }
    return row;
  });
  return { columns, rows };
}

/** Sorted unique values of one column (grid axis reconstruction). */
export function axisValues(table: Table, column: string): number[] {
  const seen = new Set<number>();
  for (const row of table.rows) seen.add(row[column]);
  return [...seen].sort((a, b) => a - b);
}
