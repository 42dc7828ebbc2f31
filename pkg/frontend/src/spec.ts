import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { Table, numericMatrix, readTable } from "./csv.js";
import { plotConvergence } from "./convergence.js";
import { plotEfficiencyBars } from "./efficiency.js";
import { ZoomWindow, plotProfile } from "./profile.js";
import { renderSchlieren } from "./schlieren.js";

export type FigureKind = "convergence" | "efficiency" | "efficiency-bars" | "profile" | "schlieren";

export interface FigureEntry {
  kind: FigureKind;
  /** CSV inputs; also the curve order */
  inputs: string[];
  /** one per input; defaults to the input path */
  labels?: string[];
  /** exact or reference profile CSV (profile figures) */
  exact?: string;
  exactLabel?: string;
  column?: string;
  zooms?: ZoomWindow[];
  title?: string;
  targetError?: number;
  maxError?: number;
  output: string;
}

export interface FigureSpecFile {
  figures: FigureEntry[];
}

const KINDS: FigureKind[] = ["convergence", "efficiency", "efficiency-bars", "profile", "schlieren"];

export function loadSpec(path: string): FigureSpecFile {
  const spec = JSON.parse(readFileSync(path, "utf8")) as FigureSpecFile;
  if (!Array.isArray(spec.figures)) throw new Error(`${path}: top-level 'figures' array is required`);
  const base = dirname(resolve(path));
  for (const fig of spec.figures) {
    if (!KINDS.includes(fig.kind)) throw new Error(`unknown figure kind '${fig.kind}' (have: ${KINDS.join(", ")})`);
    if (!Array.isArray(fig.inputs) || fig.inputs.length === 0) throw new Error(`figure '${fig.output}': inputs are required`);
    if (!fig.output) throw new Error("every figure needs an output path");
    fig.inputs = fig.inputs.map((p) => resolve(base, p));
    if (fig.exact) fig.exact = resolve(base, fig.exact);
    fig.output = resolve(base, fig.output);
  }
  return spec;
}

function labelled(fig: FigureEntry): { table: Table; label: string }[] {
  // readTable throws on missing or malformed inputs, enforcing the
  // every-referenced-csv-exists-and-parses invariant up front
  return fig.inputs.map((p, i) => ({ table: readTable(p), label: fig.labels?.[i] ?? p }));
}

export function renderFigure(fig: FigureEntry, warn: (msg: string) => void = console.warn): Buffer | string {
  switch (fig.kind) {
    case "convergence":
      return plotConvergence(labelled(fig), { column: fig.column, warn });
    case "efficiency":
      return plotConvergence(labelled(fig), { column: fig.column, abscissa: "cpu_time", warn });
    case "efficiency-bars": {
      const chart = plotEfficiencyBars(labelled(fig), {
        targetError: fig.targetError,
        maxError: fig.maxError,
        errorColumn: fig.column,
      });
      for (const label of chart.omitted) warn(`bar omitted (degenerate fit): ${label}`);
      return chart.svg;
    }
    case "profile": {
      const exact = fig.exact ? { table: readTable(fig.exact), label: fig.exactLabel ?? "exact" } : null;
      return plotProfile(labelled(fig), exact, { column: fig.column, zooms: fig.zooms, title: fig.title });
    }
    case "schlieren": {
      if (fig.inputs.length !== 1) throw new Error("schlieren takes exactly one input");
      return renderSchlieren(numericMatrix(readTable(fig.inputs[0]))).png;
    }
  }
}

export function runSpec(path: string, warn: (msg: string) => void = console.warn): string[] {
  const spec = loadSpec(path);
  const written: string[] = [];
  for (const fig of spec.figures) {
    const out = renderFigure(fig, warn);
    mkdirSync(dirname(fig.output), { recursive: true });
    writeFileSync(fig.output, out);
    written.push(fig.output);
  }
  return written;
}
