import { Table } from "./csv.js";
import { EfficiencyOptions, TARGET_ERROR, efficiencyFromTable } from "./regression.js";
import { PALETTE, Scale, document as svgDocument, fmt, powerLabel, text } from "./svg.js";

export interface BarInput {
  table: Table;
  label: string;
}

export interface Bar {
  label: string;
  /** extrapolated time to reach the target error */
  seconds: number;
  r2: number;
}

export interface BarChart {
  svg: string;
  bars: Bar[];
  /** labels whose fit was degenerate and whose bar is omitted */
  omitted: string[];
}

/**
 * Expected-cost bar chart: one bar per input table, height the time
 * extrapolated to the target error from a log-log least squares fit,
 * annotated with the fit R^2. Degenerate fits are omitted, not faked.
 */
export function plotEfficiencyBars(inputs: BarInput[], opts: EfficiencyOptions = {}): BarChart {
  const bars: Bar[] = [];
  const omitted: string[] = [];
  for (const input of inputs) {
    const bar = efficiencyFromTable(input.table, opts);
    if (bar === null) {
      omitted.push(input.label);
      continue;
    }
    bars.push({ label: input.label, seconds: bar.seconds, r2: bar.fit.r2 });
  }
  if (bars.length === 0) throw new Error("every fit was degenerate; nothing to plot");

  const width = 120 + 90 * bars.length;
  const height = 400;
  const box = { x: 80, y: 30, width: width - 110, height: height - 90 };
  const hi = Math.max(...bars.map((b) => b.seconds));
  const lo = Math.min(...bars.map((b) => b.seconds));
  // log scale floored a couple of decades under the smallest bar
  const y0 = Math.pow(10, Math.floor(Math.log10(lo)) - 2);
  const y1 = Math.pow(10, Math.ceil(Math.log10(hi) + 0.2));
  const scale = new Scale(box, 0, 1, y0, y1, false, true);

  const parts: string[] = [];
  parts.push(`<rect x="${fmt(box.x)}" y="${fmt(box.y)}" width="${fmt(box.width)}" height="${fmt(box.height)}" fill="none" stroke="#000"/>`);
  for (let e = Math.ceil(Math.log10(y0)); e <= Math.floor(Math.log10(y1)); e += 2) {
    const py = scale.py(Math.pow(10, e));
    parts.push(text(box.x - 5, py + 3, powerLabel(Math.pow(10, e)), 10, "end"));
  }
  const slot = box.width / bars.length;
  bars.forEach((bar, i) => {
    const cx = box.x + slot * (i + 0.5);
    const w = slot * 0.6;
    const top = scale.py(bar.seconds);
    parts.push(
      `<rect x="${fmt(cx - w / 2)}" y="${fmt(top)}" width="${fmt(w)}" height="${fmt(box.y + box.height - top)}" fill="${PALETTE[i % PALETTE.length]}"/>`,
    );
    parts.push(text(cx, top - 16, `${bar.seconds.toExponential(2)} s`, 10, "middle"));
    parts.push(text(cx, top - 5, `R2=${bar.r2.toFixed(4)}`, 9, "middle"));
    parts.push(text(cx, box.y + box.height + 16, bar.label, 11, "middle"));
  });
  const target = opts.targetError ?? TARGET_ERROR;
  parts.push(text(box.x, box.y - 10, `expected time to error ${target.toExponential(0)}`, 12));
  return { svg: svgDocument(width, height, parts.join("\n")), bars, omitted };
}
