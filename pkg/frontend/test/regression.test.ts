import { describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { efficiencyFromTable, extrapolateTime, fitLogLog } from "../src/regression.js";

function powerLawTable(rows: [number, number][]): string {
  const lines = ["n,l1,l1_order,l2,l2_order,linf,linf_order,cpu_time"];
  rows.forEach(([t, e], i) => lines.push(`${40 * 2 ** i},${e},-,${e},-,${e},-,${t}`));
  return lines.join("\n");
}

describe("fitLogLog", () => {
  it("recovers a noiseless power law exactly", () => {
    const C = 1e-2;
    const s = -3.5;
    const times = [1, 10, 100, 1000];
    const errors = times.map((t) => C * Math.pow(t, s));
    const fit = fitLogLog(times, errors)!;
    expect(fit.slope).toBeCloseTo(s, 12);
    expect(fit.r2).toBeCloseTo(1, 12);

    const target = 1e-16;
    const exact = Math.pow(target / C, 1 / s);
    expect(Math.abs(extrapolateTime(fit, target) - exact) / exact).toBeLessThan(1e-10);
  });

  it("accepts a two-point fit", () => {
    const fit = fitLogLog([1, 100], [1e-3, 1e-9])!;
    expect(fit.pointsUsed).toBe(2);
    expect(fit.slope).toBeCloseTo(-3, 12);
  });

  it("returns null when degenerate", () => {
    expect(fitLogLog([5], [1e-3])).toBeNull();
    expect(fitLogLog([2, 2, 2], [1e-3, 1e-4, 1e-5])).toBeNull();
    expect(fitLogLog([], [])).toBeNull();
  });
});

describe("efficiencyFromTable", () => {
  const C = 4e-4;
  const s = -4.0;
  const cleanRows: [number, number][] = [10, 100, 1000].map((t) => [t, C * Math.pow(t, s)]);

  it("extrapolates a noiseless table to 1e-10 relative accuracy", () => {
    const table = parseCsv(powerLawTable(cleanRows));
    const bar = efficiencyFromTable(table)!;
    const exact = Math.pow(1e-16 / C, 1 / s);
    expect(Math.abs(bar.seconds - exact) / exact).toBeLessThan(1e-10);
    expect(bar.fit.r2).toBeCloseTo(1, 12);
  });

  it("ignores rows outside the asymptotic regime", () => {
    // a pre-asymptotic point far off the power law must not pollute the fit
    const table = parseCsv(powerLawTable([[1, 0.5], ...cleanRows]));
    const bar = efficiencyFromTable(table)!;
    expect(bar.fit.pointsUsed).toBe(3);
    const exact = Math.pow(1e-16 / C, 1 / s);
    expect(Math.abs(bar.seconds - exact) / exact).toBeLessThan(1e-10);
  });

  it("threshold is configurable", () => {
    const table = parseCsv(powerLawTable([[1, 0.5], ...cleanRows]));
    const loose = efficiencyFromTable(table, { maxError: 1.0 })!;
    expect(loose.fit.pointsUsed).toBe(4);
    const tight = efficiencyFromTable(table, { maxError: 1e-7 })!;
    expect(tight.fit.pointsUsed).toBe(2);
  });

  it("skips crash rows and returns null when nothing is usable", () => {
    const text = [
      "n,l1,l1_order,l2,l2_order,linf,linf_order,cpu_time",
      "40,crash,-,-,-,-,-,-",
      "80,1e-4,-,1e-4,-,1e-4,-,2.0",
      "160,1e-6,-,1e-6,-,1e-6,-,8.0",
    ].join("\n");
    const bar = efficiencyFromTable(parseCsv(text))!;
    expect(bar.fit.pointsUsed).toBe(2);

    const allCrash = parseCsv("n,l1,cpu_time\n40,crash,-\n80,crash,-");
    expect(efficiencyFromTable(allCrash)).toBeNull();
  });
});
