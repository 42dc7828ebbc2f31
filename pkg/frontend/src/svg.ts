/** Deterministic SVG assembly: fixed style, no timestamps, stable float formatting. */

export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

export const MARKERS = ["circle", "square", "diamond", "triangle"] as const;
export type MarkerShape = (typeof MARKERS)[number];

export function fmt(v: number): string {
  if (!Number.isFinite(v)) return "0";
  const s = v.toPrecision(6);
  // strip trailing zeros so output does not depend on magnitude quirks
  return s.includes(".") && !s.includes("e")
    ? s.replace(/\.?0+$/, "")
    : s;
}

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Maps data coordinates into a pixel box; y grows upward in data space. */
export class Scale {
  constructor(
    readonly box: Box,
    readonly x0: number,
    readonly x1: number,
    readonly y0: number,
    readonly y1: number,
    readonly logX = false,
    readonly logY = false,
  ) {}

  private tx(v: number): number {
    return this.logX ? Math.log10(v) : v;
  }

  private ty(v: number): number {
    return this.logY ? Math.log10(v) : v;
  }

  px(v: number): number {
    const a = this.tx(this.x0);
    const b = this.tx(this.x1);
    return this.box.x + ((this.tx(v) - a) / (b - a)) * this.box.width;
  }

  py(v: number): number {
    const a = this.ty(this.y0);
    const b = this.ty(this.y1);
    return this.box.y + this.box.height - ((this.ty(v) - a) / (b - a)) * this.box.height;
  }
}

export function polyline(points: [number, number][], stroke: string, width = 1.5, dash = ""): string {
  if (points.length === 0) return "";
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
  return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${fmt(width)}"${dashAttr}/>`;
}

export function marker(shape: MarkerShape, x: number, y: number, color: string, r = 3.5): string {
  switch (shape) {
    case "circle":
      return `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" fill="${color}"/>`;
    case "square":
      return `<rect x="${fmt(x - r)}" y="${fmt(y - r)}" width="${fmt(2 * r)}" height="${fmt(2 * r)}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M ${fmt(x)} ${fmt(y - 1.3 * r)} L ${fmt(x + 1.3 * r)} ${fmt(y)} L ${fmt(x)} ${fmt(y + 1.3 * r)} L ${fmt(x - 1.3 * r)} ${fmt(y)} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M ${fmt(x)} ${fmt(y - 1.2 * r)} L ${fmt(x + 1.2 * r)} ${fmt(y + r)} L ${fmt(x - 1.2 * r)} ${fmt(y + r)} Z" fill="${color}"/>`;
  }
}

export function text(x: number, y: number, content: string, size = 11, anchor = "start", extra = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" font-family="sans-serif" text-anchor="${anchor}"${extra}>${esc(content)}</text>`;
}

/** Decade tick positions between lo and hi (inclusive of spanning decades). */
export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); e <= Math.floor(Math.log10(hi) + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

export function powerLabel(v: number): string {
  const e = Math.round(Math.log10(v));
  return `1e${e}`;
}

/** Frame, decade ticks, and grid lines for a log-log panel. */
export function logLogAxes(scale: Scale, xLabel: string, yLabel: string): string {
  const { box } = scale;
  const parts: string[] = [];
  parts.push(
    `<rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.width)}" height="${fmt(box.height)}" fill="none" stroke="#000" stroke-width="1"/>`,
  );
  for (const t of decadeTicks(scale.x0, scale.x1)) {
    const px = scale.px(t);
    parts.push(polyline([[px, box.y], [px, box.y + box.height]], "#ddd", 0.5));
    parts.push(text(px, box.y + box.height + 14, powerLabel(t), 10, "middle"));
  }
  for (const t of decadeTicks(scale.y0, scale.y1)) {
    const py = scale.py(t);
    parts.push(polyline([[box.x, py], [box.x + box.width, py]], "#ddd", 0.5));
    parts.push(text(box.x - 5, py + 3, powerLabel(t), 10, "end"));
  }
  parts.push(text(box.x + box.width / 2, box.y + box.height + 30, xLabel, 12, "middle"));
  parts.push(
    text(box.x - 45, box.y + box.height / 2, yLabel, 12, "middle", ` transform="rotate(-90 ${fmt(box.x - 45)} ${fmt(box.y + box.height / 2)})"`),
  );
  return parts.join("\n");
}

export function legend(x: number, y: number, entries: { label: string; color: string; shape?: MarkerShape }[]): string {
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const yy = y + 16 * i;
    parts.push(polyline([[x, yy], [x + 22, yy]], e.color, 1.5));
    if (e.shape) parts.push(marker(e.shape, x + 11, yy, e.color, 3));
    parts.push(text(x + 28, yy + 4, e.label, 11));
  });
  return parts.join("\n");
}

export function document(width: number, height: number, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
    `<rect width="${width}" height="${height}" fill="#fff"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}
