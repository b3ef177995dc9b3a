/** Plot specification: a JSON file describing one figure to render. */

import { readFileSync } from "node:fs";
import { REQUIRED_COLUMNS } from "./csv.js";

export class SpecError extends Error {}

export interface Marker {
  x: number;
  y: number;
  label: string;
}

export interface PlotSpec {
  kind: string;
  input: string;
  output: string;
  title?: string;
  xLabel?: string;
  yLabel?: string;
  /** Column holding the heatmap value (map kinds only). */
  valueColumn?: string;
  /** Label printed next to the color bar (map kinds only). */
  valueLabel?: string;
  /** Fixed color range; defaults to the data range. */
  valueRange?: [number, number];
  /** Annotated points drawn on top of the plot. */
  markers?: Marker[];
  width?: number;
  height?: number;
}

const KNOWN_KEYS = new Set([
  "kind",
  "input",
  "output",
  "title",
  "xLabel",
  "yLabel",
  "valueColumn",
  "valueLabel",
  "valueRange",
  "markers",
  "width",
  "height",
]);

export function loadSpec(path: string): PlotSpec {
  let raw: unknown;
  try {
    raw = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SpecError(`failed to read plot spec ${path}: ${(err as Error).message}`);
  }
  return validateSpec(raw, path);
}

export function validateSpec(raw: unknown, source = "<inline>"): PlotSpec {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new SpecError(`plot spec ${source} must be a JSON object`);
  }
  const obj = raw as Record<string, unknown>;
  for (const key of Object.keys(obj)) {
    if (!KNOWN_KEYS.has(key)) {
      throw new SpecError(`plot spec ${source}: unknown key '${key}'`);
    }
  }
  for (const key of ["kind", "input", "output"] as const) {
    if (typeof obj[key] !== "string" || obj[key] === "") {
      throw new SpecError(`plot spec ${source}: '${key}' must be a non-empty string`);
    }
  }
  const kind = obj.kind as string;
  if (!(kind in REQUIRED_COLUMNS)) {
    throw new SpecError(
      `plot spec ${source}: unknown kind '${kind}'; expected one of ${Object.keys(REQUIRED_COLUMNS).join(", ")}`,
    );
  }
  if (obj.markers !== undefined) {
    if (!Array.isArray(obj.markers)) {
      throw new SpecError(`plot spec ${source}: 'markers' must be an array`);
    }
    for (const m of obj.markers) {
      const mk = m as Record<string, unknown>;
      if (typeof mk.x !== "number" || typeof mk.y !== "number" || typeof mk.label !== "string") {
        throw new SpecError(`plot spec ${source}: each marker needs numeric x, y and a string label`);
      }
    }
  }
  if (obj.valueRange !== undefined) {
    const vr = obj.valueRange;
    if (!Array.isArray(vr) || vr.length !== 2 || vr.some((v) => typeof v !== "number")) {
      throw new SpecError(`plot spec ${source}: 'valueRange' must be a pair of numbers`);
    }
  }
  for (const key of ["width", "height"] as const) {
    if (obj[key] !== undefined && (typeof obj[key] !== "number" || (obj[key] as number) <= 0)) {
      throw new SpecError(`plot spec ${source}: '${key}' must be a positive number`);
    }
  }
  return obj as unknown as PlotSpec;
}
