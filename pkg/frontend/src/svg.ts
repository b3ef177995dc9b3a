/** Minimal string-built SVG primitives: scales, axes, text, color bars. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  const fn = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = domain;
  fn.range = range;
  return fn;
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const FMT = (v: number): string => {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1000 || a < 0.01) return v.toExponential(1);
  return String(Number(v.toPrecision(3)));
};

export function fmtTick(v: number): string {
  return FMT(v);
}

export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  if (lo === hi) return [lo];
  const rawStep = (hi - lo) / Math.max(count - 1, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let t = start; t <= hi + step * 1e-9; t += step) out.push(Number(t.toPrecision(12)));
  return out;
}

export interface Margins {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export function text(
  x: number,
  y: number,
  content: string,
  opts: { anchor?: string; size?: number; rotate?: number; cls?: string } = {},
): string {
  const anchor = opts.anchor ?? "middle";
  const size = opts.size ?? 12;
  const transform = opts.rotate ? ` transform="rotate(${opts.rotate} ${x} ${y})"` : "";
  const cls = opts.cls ? ` class="${opts.cls}"` : "";
  return (
    `<text x="${x.toFixed(2)}" y="${y.toFixed(2)}" text-anchor="${anchor}" ` +
    `font-size="${size}" font-family="sans-serif"${cls}${transform}>${escapeXml(content)}</text>`
  );
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke = "#000", width = 1): string {
  return (
    `<line x1="${x1.toFixed(2)}" y1="${y1.toFixed(2)}" x2="${x2.toFixed(2)}" y2="${y2.toFixed(2)}" ` +
    `stroke="${stroke}" stroke-width="${width}"/>`
  );
}

export function rect(x: number, y: number, w: number, h: number, fill: string): string {
  return `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(2)}" height="${h.toFixed(2)}" fill="${fill}"/>`;
}

/** Bottom x-axis plus left y-axis with tick marks and labels. */
export function axes(
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  plotLeft: number,
  plotTop: number,
  plotRight: number,
  plotBottom: number,
): string {
  const parts: string[] = [];
  parts.push(line(plotLeft, plotBottom, plotRight, plotBottom));
  parts.push(line(plotLeft, plotTop, plotLeft, plotBottom));
  for (const t of ticks(xScale.domain)) {
    const px = xScale(t);
    parts.push(line(px, plotBottom, px, plotBottom + 5));
    parts.push(text(px, plotBottom + 18, fmtTick(t), { size: 10 }));
  }
  for (const t of ticks(yScale.domain)) {
    const py = yScale(t);
    parts.push(line(plotLeft - 5, py, plotLeft, py));
    parts.push(text(plotLeft - 8, py + 3, fmtTick(t), { anchor: "end", size: 10 }));
  }
  parts.push(text((plotLeft + plotRight) / 2, plotBottom + 36, xLabel, { cls: "axis-label-x" }));
  parts.push(
    text(plotLeft - 42, (plotTop + plotBottom) / 2, yLabel, {
      rotate: -90,
      cls: "axis-label-y",
    }),
  );
  return parts.join("\n");
}

export function svgDocument(width: number, height: number, body: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect x="0" y="0" width="${width}" height="${height}" fill="#ffffff"/>\n` +
    body +
    `\n</svg>\n`
  );
}
