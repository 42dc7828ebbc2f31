import { PNG } from "pngjs";

export interface SchlierenImage {
  png: Buffer;
  width: number;
  height: number;
}

/**
 * Grayscale render of a Schlieren field. values[i][j] is the cell at x-index
 * i, y-index j, each in (0, 1]; value 1 maps to white. One pixel per cell
 * keeps the aspect ratio of the (uniform) grid, with y pointing up.
 */
export function renderSchlieren(values: number[][]): SchlierenImage {
  const nx = values.length;
  if (nx === 0) throw new Error("empty field");
  const ny = values[0].length;
  for (const row of values) {
    if (row.length !== ny) throw new Error("field is not rectangular");
  }
  const png = new PNG({ width: nx, height: ny });
  for (let j = 0; j < ny; j++) {
    for (let i = 0; i < nx; i++) {
      const v = values[i][j];
      if (!(v > 0 && v <= 1)) throw new Error(`value out of (0, 1] at (${i}, ${j}): ${v}`);
      const gray = Math.round(255 * v);
      const k = 4 * ((ny - 1 - j) * nx + i);
      png.data[k] = gray;
      png.data[k + 1] = gray;
      png.data[k + 2] = gray;
      png.data[k + 3] = 255;
    }
  }
  return { png: PNG.sync.write(png, { colorType: 0 }), width: nx, height: ny };
}

/** Decode helper for tests: grayscale pixel values row-major from the top. */
export function grayPixels(png: Buffer): { width: number; height: number; gray: Uint8Array } {
  const img = PNG.sync.read(png);
  const gray = new Uint8Array(img.width * img.height);
  for (let k = 0; k < gray.length; k++) gray[k] = img.data[4 * k];
  return { width: img.width, height: img.height, gray };
}
