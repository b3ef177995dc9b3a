/** Top-level render dispatch: spec -> load CSV -> SVG string -> file. */

import { writeFileSync, mkdirSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { loadTable } from "./csv.js";
import { PlotSpec, loadSpec } from "./spec.js";
import {
  renderEtaPhiMap,
  renderInitialStateMap,
  renderWeightCurves,
  renderGapScaling,
} from "./plots.js";

const RENDERERS: Record<string, (table: ReturnType<typeof loadTable>, spec: PlotSpec) => string> = {
  "eta-phi-map": renderEtaPhiMap,
  "initial-state-map": renderInitialStateMap,
  "weight-vs-phi": renderWeightCurves,
  "gap-scaling": renderGapScaling,
};

/** Render a validated spec to an SVG string without touching the filesystem output. */
export function renderToString(spec: PlotSpec, baseDir = "."): string {
  const table = loadTable(resolve(baseDir, spec.input), spec.kind);
  return RENDERERS[spec.kind](table, spec);
}

/**
 * Render a spec file to its output path. All validation and CSV loading
 * happen before the output file is opened, so a failed render never leaves
 * a partial or stale image behind.
 */
export function renderSpecFile(specPath: string): string {
  const spec = loadSpec(specPath);
  const baseDir = dirname(resolve(specPath));
  const svg = renderToString(spec, baseDir);
  const outPath = resolve(baseDir, spec.output);
  mkdirSync(dirname(outPath), { recursive: true });
  writeFileSync(outPath, svg, "utf8");
  return outPath;
}
