import { Table, numericColumn } from "./csv.js";
import { MARKERS, PALETTE, Scale, document as svgDocument, fmt, legend, logLogAxes, marker, polyline, text } from "./svg.js";

export interface Curve {
  table: Table;
  label: string;
}

export interface ConvergenceOptions {
  /** error column to plot */
  column?: string;
  /** abscissa column: 'n' for convergence, 'cpu_time' for efficiency */
  abscissa?: string;
  xLabel?: string;
  /** slopes for the reference triangles; negated for the 'n' abscissa */
  slopes?: number[];
  width?: number;
  height?: number;
  warn?: (msg: string) => void;
}

interface Segments {
  label: string;
  /** runs of consecutive valid points; crash rows split runs instead of being bridged */
  segments: [number, number][][];
}

function curveSegments(curve: Curve, column: string, abscissa: string): Segments {
  const xs = numericColumn(curve.table, abscissa);
  const ys = numericColumn(curve.table, column);
  const segments: [number, number][][] = [];
  let current: [number, number][] = [];
  for (let i = 0; i < xs.length; i++) {
    const x = xs[i];
    const y = ys[i];
    if (x !== null && y !== null && x > 0 && y > 0) {
      current.push([x, y]);
    } else if (current.length > 0) {
      segments.push(current);
      current = [];
    }
  }
  if (current.length > 0) segments.push(current);
  return { label: curve.label, segments };
}

function padDecades(lo: number, hi: number): [number, number] {
  return [Math.pow(10, Math.floor(Math.log10(lo) - 0.05)), Math.pow(10, Math.ceil(Math.log10(hi) + 0.05))];
}

/**
 * Log-log error plot with reference slope triangles. One polyline per curve
 * (split at crashed meshes), one marker per data point. Curves with fewer
 * than two plottable points are skipped with a warning.
 */
export function plotConvergence(curves: Curve[], opts: ConvergenceOptions = {}): string {
  const column = opts.column ?? "l1";
  const abscissa = opts.abscissa ?? "n";
  const warn = opts.warn ?? ((msg) => console.warn(msg));
  const width = opts.width ?? 560;
  const height = opts.height ?? 420;

  const kept: Segments[] = [];
  for (const curve of curves) {
    const seg = curveSegments(curve, column, abscissa);
    const points = seg.segments.reduce((acc, s) => acc + s.length, 0);
    if (points < 2) {
      warn(`skipping curve '${curve.label}': ${points} plottable point(s) in '${column}'`);
      continue;
    }
    kept.push(seg);
  }
  if (kept.length === 0) throw new Error("no curve has enough data to plot");

  const all = kept.flatMap((c) => c.segments.flat());
  const xs = all.map((p) => p[0]);
  const ys = all.map((p) => p[1]);
  const [x0, x1] = padDecades(Math.min(...xs), Math.max(...xs));
  const [y0, y1] = padDecades(Math.min(...ys), Math.max(...ys));
  const box = { x: 70, y: 20, width: width - 90, height: height - 70 };
  const scale = new Scale(box, x0, x1, y0, y1, true, true);

  const parts: string[] = [];
  parts.push(logLogAxes(scale, opts.xLabel ?? (abscissa === "n" ? "cells" : "cpu time [s]"), `${column} error`));

  kept.forEach((curve, ci) => {
    const color = PALETTE[ci % PALETTE.length];
    const shape = MARKERS[ci % MARKERS.length];
    for (const segment of curve.segments) {
      parts.push(polyline(segment.map(([x, y]) => [scale.px(x), scale.py(y)]), color));
      for (const [x, y] of segment) parts.push(marker(shape, scale.px(x), scale.py(y), color));
    }
  });

  // reference slopes anchored near the last curve's tail
  const slopes = opts.slopes ?? [3, 5, 7];
  const anchor = kept[0].segments.at(-1)!.at(-1)!;
  slopes.forEach((p, i) => {
    const s = abscissa === "n" ? -p : p;
    const fx = 1.6;
    const xa = anchor[0] / Math.pow(fx, i + 1);
    const xb = xa * fx;
    const ya = anchor[1] * Math.pow(2.5, i + 1);
    const yb = ya * Math.pow(xb / xa, s);
    const tri: [number, number][] = [
      [scale.px(xa), scale.py(ya)],
      [scale.px(xb), scale.py(ya)],
      [scale.px(xb), scale.py(yb)],
      [scale.px(xa), scale.py(ya)],
    ];
    parts.push(polyline(tri, "#555", 1, "4,3"));
    parts.push(text(scale.px(xb) + 4, scale.py((ya + yb) / 2), `${p}`, 10));
  });

  parts.push(legend(box.x + 10, box.y + 14, kept.map((c, i) => ({
    label: c.label,
    color: PALETTE[i % PALETTE.length],
    shape: MARKERS[i % MARKERS.length],
  }))));
  return svgDocument(width, height, parts.join("\n"));
}
