/** SVG builders for the supported plot kinds. */

import { Table, axisValues } from "./csv.js";
import { colormap, normalize } from "./color.js";
import { PlotSpec, Marker } from "./spec.js";
import { linearScale, axes, text, line, rect, svgDocument, fmtTick, Scale } from "./svg.js";

export class PlotDataError extends Error {}

const MARGIN = { top: 40, right: 90, bottom: 55, left: 70 };

interface Frame {
  width: number;
  height: number;
  left: number;
  top: number;
  right: number;
  bottom: number;
}

function frame(spec: PlotSpec): Frame {
  const width = spec.width ?? 560;
  const height = spec.height ?? 440;
  return {
    width,
    height,
    left: MARGIN.left,
    top: MARGIN.top,
    right: width - MARGIN.right,
    bottom: height - MARGIN.bottom,
  };
}

function titleAndMarkers(spec: PlotSpec, f: Frame, xScale: Scale, yScale: Scale): string {
  const parts: string[] = [];
  if (spec.title) {
    parts.push(text((f.left + f.right) / 2, f.top - 14, spec.title, { size: 14, cls: "title" }));
  }
  for (const m of spec.markers ?? []) {
    parts.push(markerGlyph(m, xScale(m.x), yScale(m.y)));
  }
  return parts.join("\n");
}

function markerGlyph(m: Marker, px: number, py: number): string {
  const arm = 6;
  return (
    `<g class="marker">` +
    line(px - arm, py, px + arm, py, "#ffffff", 4) +
    line(px, py - arm, px, py + arm, "#ffffff", 4) +
    line(px - arm, py, px + arm, py, "#d62728", 2) +
    line(px, py - arm, px, py + arm, "#d62728", 2) +
    text(px + arm + 3, py - arm, m.label, { anchor: "start", size: 11, cls: "marker-label" }) +
    `</g>`
  );
}

function colorBar(f: Frame, lo: number, hi: number, label: string): string {
  const barX = f.right + 18;
  const barW = 14;
  const steps = 48;
  const parts: string[] = [`<g class="colorbar">`];
  const h = (f.bottom - f.top) / steps;
  for (let i = 0; i < steps; i++) {
    const t = (i + 0.5) / steps;
    const y = f.bottom - (i + 1) * h;
    parts.push(rect(barX, y, barW, h + 0.5, colormap(t)));
  }
  parts.push(text(barX + barW + 6, f.bottom + 4, fmtTick(lo), { anchor: "start", size: 10 }));
  parts.push(text(barX + barW + 6, f.top + 4, fmtTick(hi), { anchor: "start", size: 10 }));
  parts.push(
    text(barX + barW / 2, f.top - 10, label, { size: 11, cls: "colorbar-label" }),
  );
  parts.push(`</g>`);
  return parts.join("\n");
}

/** Regular-grid heatmap of `valueColumn` over two axis columns. */
function renderGridMap(
  table: Table,
  spec: PlotSpec,
  xColumn: string,
  yColumn: string,
  defaultValueColumn: string,
  defaultXLabel: string,
  defaultYLabel: string,
): string {
  const valueColumn = spec.valueColumn ?? defaultValueColumn;
  if (!table.columns.includes(valueColumn)) {
    throw new PlotDataError(
      `value column '${valueColumn}' not present; CSV has [${table.columns.join(", ")}]`,
    );
  }
  const xs = axisValues(table, xColumn);
  const ys = axisValues(table, yColumn);
  const f = frame(spec);

  // Cell boundaries at midpoints between grid values so cells tile exactly.
  const edges = (vals: number[]): number[] => {
    if (vals.length === 1) return [vals[0] - 0.5, vals[0] + 0.5];
    const e = [vals[0] - (vals[1] - vals[0]) / 2];
    for (let i = 0; i < vals.length - 1; i++) e.push((vals[i] + vals[i + 1]) / 2);
    e.push(vals[vals.length - 1] + (vals[vals.length - 1] - vals[vals.length - 2]) / 2);
    return e;
  };
  const xEdges = edges(xs);
  const yEdges = edges(ys);
  const xScale = linearScale([xEdges[0], xEdges[xEdges.length - 1]], [f.left, f.right]);
  const yScale = linearScale([yEdges[0], yEdges[yEdges.length - 1]], [f.bottom, f.top]);

  const values = table.rows.map((r) => r[valueColumn]).filter((v) => Number.isFinite(v));
  if (values.length === 0) {
    throw new PlotDataError(`value column '${valueColumn}' contains no finite values`);
  }
  const lo = spec.valueRange ? spec.valueRange[0] : Math.min(...values);
  const hi = spec.valueRange ? spec.valueRange[1] : Math.max(...values);

  const xIndex = new Map(xs.map((v, i) => [v, i]));
  const yIndex = new Map(ys.map((v, i) => [v, i]));
  const cells: string[] = [`<g class="heatmap">`];
  for (const row of table.rows) {
    const i = xIndex.get(row[xColumn])!;
    const j = yIndex.get(row[yColumn])!;
    const x0 = xScale(xEdges[i]);
    const x1 = xScale(xEdges[i + 1]);
    const y0 = yScale(yEdges[j]);
    const y1 = yScale(yEdges[j + 1]);
    cells.push(rect(x0, y1, x1 - x0, y0 - y1, colormap(normalize(row[valueColumn], lo, hi))));
  }
  cells.push(`</g>`);

  const body = [
    cells.join("\n"),
    axes(xScale, yScale, spec.xLabel ?? defaultXLabel, spec.yLabel ?? defaultYLabel, f.left, f.top, f.right, f.bottom),
    colorBar(f, lo, hi, spec.valueLabel ?? valueColumn),
    titleAndMarkers(spec, f, xScale, yScale),
  ].join("\n");
  return svgDocument(f.width, f.height, body);
}

export function renderEtaPhiMap(table: Table, spec: PlotSpec): string {
  return renderGridMap(table, spec, "phi", "eta_over_g", "omega_tilde", "phi", "eta / g");
}

export function renderInitialStateMap(table: Table, spec: PlotSpec): string {
  return renderGridMap(table, spec, "c_plus", "c_minus", "omega_tilde_NB", "c_plus", "c_minus");
}

/** Two line curves (w_max and complement) versus phi. */
export function renderWeightCurves(table: Table, spec: PlotSpec): string {
  const f = frame(spec);
  const rows = [...table.rows].sort((a, b) => a.phi - b.phi);
  const phis = rows.map((r) => r.phi);
  const xScale = linearScale([Math.min(...phis), Math.max(...phis)], [f.left, f.right]);
  const yScale = linearScale([0, 1], [f.bottom, f.top]);

  const path = (column: string, stroke: string): string => {
    const pts = rows.map((r) => `${xScale(r.phi).toFixed(2)},${yScale(r[column]).toFixed(2)}`);
    return `<polyline class="curve-${column}" fill="none" stroke="${stroke}" stroke-width="2" points="${pts.join(" ")}"/>`;
  };

  const legend = [
    line(f.right - 130, f.top + 12, f.right - 106, f.top + 12, "#1f77b4", 2),
    text(f.right - 100, f.top + 16, "w_max", { anchor: "start", size: 11 }),
    line(f.right - 130, f.top + 30, f.right - 106, f.top + 30, "#ff7f0e", 2),
    text(f.right - 100, f.top + 34, "complement", { anchor: "start", size: 11 }),
  ].join("\n");

  const body = [
    path("w_max", "#1f77b4"),
    path("complement", "#ff7f0e"),
    axes(xScale, yScale, spec.xLabel ?? "phi", spec.yLabel ?? "sector weight", f.left, f.top, f.right, f.bottom),
    legend,
    titleAndMarkers(spec, f, xScale, yScale),
  ].join("\n");
  return svgDocument(f.width, f.height, body);
}

/** Spectral-gap magnitude versus system size on a log y scale. */
export function renderGapScaling(table: Table, spec: PlotSpec): string {
  const f = frame(spec);
  const rows = [...table.rows].sort((a, b) => a.N - b.N);
  const ns = rows.map((r) => r.N);
  const gaps = rows.map((r) => Math.max(r.min_re_gap, 1e-300));
  const logs = gaps.map((v) => Math.log10(v));
  const xScale = linearScale([Math.min(...ns), Math.max(...ns)], [f.left, f.right]);
  const yScale = linearScale([Math.min(...logs) - 0.5, Math.max(...logs) + 0.5], [f.bottom, f.top]);

  const pts = rows.map((r, i) => `${xScale(r.N).toFixed(2)},${yScale(logs[i]).toFixed(2)}`);
  const markers = rows
    .map(
      (r, i) =>
        `<circle cx="${xScale(r.N).toFixed(2)}" cy="${yScale(logs[i]).toFixed(2)}" r="4" fill="#1f77b4"/>`,
    )
    .join("\n");

  const body = [
    `<polyline class="curve-gap" fill="none" stroke="#1f77b4" stroke-width="2" points="${pts.join(" ")}"/>`,
    markers,
    axes(xScale, yScale, spec.xLabel ?? "N", spec.yLabel ?? "log10(gap)", f.left, f.top, f.right, f.bottom),
    titleAndMarkers(spec, f, xScale, yScale),
  ].join("\n");
  return svgDocument(f.width, f.height, body);
}
