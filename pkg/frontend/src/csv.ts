import { readFileSync } from "node:fs";

export interface Table {
  /** key=value pairs from the leading '#' header lines */
  meta: Record<string, string>;
  columns: string[];
  /** raw cells; non-numeric markers like 'crash' or '-' stay as-is */
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const meta: Record<string, string> = {};
  const rows: string[][] = [];
  let columns: string[] | null = null;
  for (const raw of text.split("\n")) {
    const line = raw.trimEnd();
    if (line === "") continue;
    if (line.startsWith("#")) {
      const body = line.slice(1).trim();
      const eq = body.indexOf("=");
      if (eq > 0) meta[body.slice(0, eq)] = body.slice(eq + 1);
      continue;
    }
    if (columns === null) {
      columns = line.split(",");
      continue;
    }
    rows.push(line.split(","));
  }
  if (columns === null) throw new Error("csv has no column line");
  return { meta, columns, rows };
}

export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new Error(`cannot read ${path}: ${(err as Error).message}`);
  }
  try {
    return parseCsv(text);
  } catch (err) {
    throw new Error(`cannot parse ${path}: ${(err as Error).message}`);
  }
}

/** Column values as numbers; cells that are not finite numbers become null. */
export function numericColumn(table: Table, name: string): (number | null)[] {
  const k = table.columns.indexOf(name);
  if (k < 0) throw new Error(`no column '${name}' (have: ${table.columns.join(", ")})`);
  return table.rows.map((row) => {
    const v = Number(row[k]);
    return Number.isFinite(v) ? v : null;
  });
}

/** Whole table as a numeric matrix, for headerless-value grids like Schlieren fields. */
export function numericMatrix(table: Table): number[][] {
  // the column line of a matrix export is just the first data row
  const all = [table.columns, ...table.rows];
  return all.map((row, i) =>
    row.map((cell, j) => {
      const v = Number(cell);
      if (!Number.isFinite(v)) throw new Error(`non-numeric cell at row ${i}, col ${j}: '${cell}'`);
      return v;
    }),
  );
}
