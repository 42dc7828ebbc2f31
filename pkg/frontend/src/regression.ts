import { Table, numericColumn } from "./csv.js";

export interface PowerLawFit {
  /** slope of log10(error) vs log10(time) */
  slope: number;
  intercept: number;
  r2: number;
  pointsUsed: number;
}

export interface EfficiencyOptions {
  /** error level the fit is extrapolated to */
  targetError?: number;
  /** rows with error at or above this are outside the asymptotic regime and ignored */
  maxError?: number;
  errorColumn?: string;
  timeColumn?: string;
}

export const TARGET_ERROR = 1e-16;
export const MAX_FIT_ERROR = 1e-2;

/** Least squares of log10(error) on log10(time). Needs >= 2 points. */
export function fitLogLog(times: number[], errors: number[]): PowerLawFit | null {
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < times.length; i++) {
    if (times[i] > 0 && errors[i] > 0) {
      xs.push(Math.log10(times[i]));
      ys.push(Math.log10(errors[i]));
    }
  }
  const n = xs.length;
  if (n < 2) return null;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  let syy = 0;
  for (let i = 0; i < n; i++) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx === 0) return null; // all times equal: no usable abscissa variance
  const slope = sxy / sxx;
  const intercept = my - slope * mx;
  const r2 = syy === 0 ? 1 : (sxy * sxy) / (sxx * syy);
  return { slope, intercept, r2, pointsUsed: n };
}

/** Time at which the fitted power law reaches targetError. */
export function extrapolateTime(fit: PowerLawFit, targetError: number): number {
  return Math.pow(10, (Math.log10(targetError) - fit.intercept) / fit.slope);
}

export interface EfficiencyBar {
  seconds: number;
  fit: PowerLawFit;
}

/**
 * Expected time to reach targetError for one convergence table, from a
 * log-log fit over the rows inside the asymptotic regime. Returns null when
 * the fit is degenerate (fewer than two usable rows, or zero time variance).
 */
export function efficiencyFromTable(table: Table, opts: EfficiencyOptions = {}): EfficiencyBar | null {
  const target = opts.targetError ?? TARGET_ERROR;
  const maxError = opts.maxError ?? MAX_FIT_ERROR;
  const errs = numericColumn(table, opts.errorColumn ?? "l1");
  const times = numericColumn(table, opts.timeColumn ?? "cpu_time");
  const t: number[] = [];
  const e: number[] = [];
  for (let i = 0; i < errs.length; i++) {
    const err = errs[i];
    const time = times[i];
    if (err === null || time === null) continue; // crashed or missing row
    if (err >= maxError) continue;
    t.push(time);
    e.push(err);
  }
  const fit = fitLogLog(t, e);
  if (fit === null) return null;
  return { seconds: extrapolateTime(fit, target), fit };
}
