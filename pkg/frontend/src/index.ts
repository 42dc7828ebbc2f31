export { Table, numericColumn, numericMatrix, parseCsv, readTable } from "./csv.js";
export {
  EfficiencyOptions,
  MAX_FIT_ERROR,
  PowerLawFit,
  TARGET_ERROR,
  efficiencyFromTable,
  extrapolateTime,
  fitLogLog,
} from "./regression.js";
export { Curve, plotConvergence } from "./convergence.js";
export { Bar, BarChart, plotEfficiencyBars } from "./efficiency.js";
export { ProfileCurve, ZoomWindow, plotProfile } from "./profile.js";
export { grayPixels, renderSchlieren } from "./schlieren.js";
export { FigureEntry, FigureKind, FigureSpecFile, loadSpec, renderFigure, runSpec } from "./spec.js";
