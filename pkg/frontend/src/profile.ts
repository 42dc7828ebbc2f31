import { Table, numericColumn } from "./csv.js";
import { Box, MARKERS, PALETTE, Scale, document as svgDocument, fmt, legend, marker, polyline, text } from "./svg.js";

export interface ProfileCurve {
  table: Table;
  label: string;
}

/** [x0, x1, y0, y1] in data coordinates */
export type ZoomWindow = [number, number, number, number];

export interface ProfileOptions {
  column?: string;
  zooms?: ZoomWindow[];
  title?: string;
  width?: number;
  height?: number;
}

function abscissaName(table: Table): string {
  return table.columns.includes("x") ? "x" : "arc";
}

function points(table: Table, column: string): [number, number][] {
  const xs = numericColumn(table, abscissaName(table));
  const ys = numericColumn(table, column);
  const out: [number, number][] = [];
  for (let i = 0; i < xs.length; i++) {
    if (xs[i] !== null && ys[i] !== null) out.push([xs[i]!, ys[i]!]);
  }
  if (out.length === 0) throw new Error(`no plottable rows for '${column}'`);
  return out;
}

function drawInto(
  parts: string[],
  scale: Scale,
  runs: [number, number][][],
  exact: [number, number][] | null,
  clipId: string | null,
): string[] {
  const open = clipId ? `<g clip-path="url(#${clipId})">` : "<g>";
  parts.push(open);
  if (exact) {
    parts.push(polyline(exact.map(([x, y]) => [scale.px(x), scale.py(y)]), "#000", 1.2));
  }
  runs.forEach((run, i) => {
    const color = PALETTE[i % PALETTE.length];
    const shape = MARKERS[i % MARKERS.length];
    for (const [x, y] of run) parts.push(marker(shape, scale.px(x), scale.py(y), color, 2.2));
  });
  parts.push("</g>");
  return parts;
}

/**
 * Solution overlay: one marker set per numerical run, the exact or reference
 * profile as a solid line, plus optional zoom insets along the bottom. All
 * curves must share a compatible abscissa column ('x' or 'arc').
 */
export function plotProfile(runs: ProfileCurve[], exact: ProfileCurve | null, opts: ProfileOptions = {}): string {
  const column = opts.column ?? "rho";
  const zooms = opts.zooms ?? [];
  const width = opts.width ?? 640;
  const insetH = zooms.length > 0 ? 170 : 0;
  const height = (opts.height ?? 430) + insetH;

  const runPts = runs.map((r) => points(r.table, column));
  const exactPts = exact ? points(exact.table, column) : null;
  const all = [...runPts.flat(), ...(exactPts ?? [])];
  const xs = all.map((p) => p[0]);
  const ys = all.map((p) => p[1]);
  const ySpan = Math.max(...ys) - Math.min(...ys) || 1;
  const mainBox: Box = { x: 60, y: 25, width: width - 85, height: height - insetH - 80 };
  const scale = new Scale(mainBox, Math.min(...xs), Math.max(...xs), Math.min(...ys) - 0.05 * ySpan, Math.max(...ys) + 0.05 * ySpan);

  const parts: string[] = [];
  parts.push(`<rect x="${fmt(mainBox.x)}" y="${fmt(mainBox.y)}" width="${fmt(mainBox.width)}" height="${fmt(mainBox.height)}" fill="none" stroke="#000"/>`);
  drawInto(parts, scale, runPts, exactPts, null);
  parts.push(text(mainBox.x + mainBox.width / 2, height - insetH - 38, abscissaName(runs[0]?.table ?? exact!.table), 12, "middle"));
  parts.push(text(mainBox.x - 40, mainBox.y + mainBox.height / 2, column, 12, "middle", ` transform="rotate(-90 ${fmt(mainBox.x - 40)} ${fmt(mainBox.y + mainBox.height / 2)})"`));
  if (opts.title) parts.push(text(mainBox.x + mainBox.width / 2, 15, opts.title, 13, "middle"));

  const entries = runs.map((r, i) => ({ label: r.label, color: PALETTE[i % PALETTE.length], shape: MARKERS[i % MARKERS.length] }));
  if (exact) entries.push({ label: exact.label, color: "#000", shape: undefined as never });
  parts.push(legend(mainBox.x + 8, mainBox.y + 14, entries));

  const defs: string[] = [];
  zooms.forEach((zoom, zi) => {
    const [zx0, zx1, zy0, zy1] = zoom;
    // frame the zoomed region on the main panel
    parts.push(
      `<rect x="${fmt(scale.px(zx0))}" y="${fmt(scale.py(zy1))}" width="${fmt(scale.px(zx1) - scale.px(zx0))}" height="${fmt(scale.py(zy0) - scale.py(zy1))}" fill="none" stroke="#888" stroke-dasharray="3,2"/>`,
    );
    const insetW = (width - 60 - 15 * zooms.length) / zooms.length;
    const box: Box = { x: 45 + zi * (insetW + 15), y: height - insetH + 10, width: insetW, height: insetH - 40 };
    const zscale = new Scale(box, zx0, zx1, zy0, zy1);
    const clip = `zoomclip${zi}`;
    defs.push(`<clipPath id="${clip}"><rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.width)}" height="${fmt(box.height)}"/></clipPath>`);
    parts.push(`<rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.width)}" height="${fmt(box.height)}" fill="none" stroke="#888"/>`);
    drawInto(parts, zscale, runPts, exactPts, clip);
    parts.push(text(box.x + box.width / 2, box.y + box.height + 14, `${String.fromCharCode(65 + zi)}: [${fmt(zx0)}, ${fmt(zx1)}]`, 10, "middle"));
  });

  const body = (defs.length > 0 ? `<defs>${defs.join("")}</defs>\n` : "") + parts.join("\n");
  return svgDocument(width, height, body);
}
