/** Grid cell lookup and hover formatting.
 *
 * The service returns cell-center coordinates; cells tile the room plan
 * exactly, so a plan point maps to the cell whose span contains it.
 * Every displayed value is taken verbatim from the service payload.
 */

import type { GridPayload } from "./types.js";

export interface CellHit {
  ix: number;
  iy: number;
  /** cell-center plan coordinates, as exported in grid CSV */
  x: number;
  y: number;
  /** exact service-computed lux value */
  value: number;
}

function axisStep(centers: number[]): number {
  if (centers.length < 2) {
    return centers.length === 1 ? centers[0]! * 2 : 0;
  }
  return centers[1]! - centers[0]!;
}

/** Resolve a plan point to the grid cell containing it. */
export function cellAt(grid: GridPayload, x: number, y: number): CellHit | null {
  const nx = grid.xs.length;
  const ny = grid.ys.length;
  if (nx === 0 || ny === 0) {
    return null;
  }
  const dx = axisStep(grid.xs);
  const dy = axisStep(grid.ys);
  if (dx <= 0 || dy <= 0) {
    return null;
  }
  const ix = Math.min(Math.max(Math.floor(x / dx), 0), nx - 1);
  const iy = Math.min(Math.max(Math.floor(y / dy), 0), ny - 1);
  const row = grid.values[iy];
  if (row === undefined || row[ix] === undefined) {
    return null;
  }
  return { ix, iy, x: grid.xs[ix]!, y: grid.ys[iy]!, value: row[ix]! };
}

/** Tooltip text; lux at six decimals to match the grid CSV export. */
export function hoverText(hit: CellHit): string {
  return `${hit.value.toFixed(6)} lx at (${hit.x.toFixed(3)}, ${hit.y.toFixed(3)})`;
}
