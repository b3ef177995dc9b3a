/** Sequential viridis-like colormap built from fixed anchor colors. */

const ANCHORS: [number, number, number][] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

/** Map t in [0, 1] to an rgb() string. Out-of-range values clamp; non-finite values (masked grid points) render gray. */
export function colormap(t: number): string {
  if (!Number.isFinite(t)) return "rgb(200,200,200)";
  const x = Math.min(1, Math.max(0, t));
  const pos = x * (ANCHORS.length - 1);
  const i = Math.min(Math.floor(pos), ANCHORS.length - 2);
  const f = pos - i;
  const [r0, g0, b0] = ANCHORS[i];
  const [r1, g1, b1] = ANCHORS[i + 1];
  return `rgb(${Math.round(lerp(r0, r1, f))},${Math.round(lerp(g0, g1, f))},${Math.round(lerp(b0, b1, f))})`;
}

/** Normalize v within [lo, hi]; a degenerate range maps everything to 0. */
export function normalize(v: number, lo: number, hi: number): number {
  if (hi <= lo) return 0;
  return (v - lo) / (hi - lo);
}
