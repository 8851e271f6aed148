/** Canvas rendering: heatmap cells, required-level iso-line legend,
 * luminaire markers. Pure drawing; all values come from the service. */

import { isoFraction, luxToColor, scaleMax } from "./colors.js";
import type { GeometryDoc, GridPayload, PlacementDoc } from "./types.js";

export interface PlanTransform {
  toPxX(x: number): number;
  toPxY(y: number): number;
  toPlanX(px: number): number;
  toPlanY(py: number): number;
  scale: number;
}

/** Fit the room plan into the canvas with a uniform scale and margin. */
export function planTransform(
  room: GeometryDoc,
  widthPx: number,
  heightPx: number,
  margin = 24,
): PlanTransform {
  const scale = Math.min(
    (widthPx - 2 * margin) / room.length,
    (heightPx - 2 * margin) / room.width,
  );
  return {
    scale,
    toPxX: (x) => margin + x * scale,
    toPxY: (y) => margin + y * scale,
    toPlanX: (px) => (px - margin) / scale,
    toPlanY: (py) => (py - margin) / scale,
  };
}

export function drawRoom(
  canvas: HTMLCanvasElement,
  room: GeometryDoc,
  grid: GridPayload | null,
  placements: PlacementDoc[],
  required: number,
  selectedPlacement: number | null,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const t = planTransform(room, canvas.width, canvas.height);

  if (grid) {
    const maxValue = scaleMax(required, Math.max(...grid.values.flat()));
    const dx = grid.xs.length > 1 ? grid.xs[1]! - grid.xs[0]! : room.length;
    const dy = grid.ys.length > 1 ? grid.ys[1]! - grid.ys[0]! : room.width;
    grid.ys.forEach((y, iy) => {
      grid.xs.forEach((x, ix) => {
        const value = grid.values[iy]![ix]!;
        ctx.fillStyle = luxToColor(value, maxValue);
        ctx.fillRect(
          t.toPxX(x - dx / 2),
          t.toPxY(y - dy / 2),
          dx * t.scale + 1,
          dy * t.scale + 1,
        );
      });
    });
  }

  // room outline
  ctx.strokeStyle = "#333";
  ctx.lineWidth = 2;
  ctx.strokeRect(
    t.toPxX(0),
    t.toPxY(0),
    room.length * t.scale,
    room.width * t.scale,
  );

  placements.forEach((p, i) => {
    const px = t.toPxX(p.x);
    const py = t.toPxY(p.y);
    ctx.beginPath();
    ctx.arc(px, py, i === selectedPlacement ? 9 : 7, 0, 2 * Math.PI);
    ctx.fillStyle = i === selectedPlacement ? "#ff8800" : "#ffcc00";
    ctx.fill();
    ctx.strokeStyle = "#333";
    ctx.lineWidth = 1.5;
    ctx.stroke();
  });
}

export function drawLegend(
  canvas: HTMLCanvasElement,
  required: number,
  gridMax: number,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) {
    return;
  }
  const { width, height } = canvas;
  ctx.clearRect(0, 0, width, height);
  const maxValue = scaleMax(required, gridMax);
  for (let px = 0; px < width; px++) {
    ctx.fillStyle = luxToColor((px / (width - 1)) * maxValue, maxValue);
    ctx.fillRect(px, 0, 1, height - 14);
  }
  // iso-line marker at the required level
  const isoPx = Math.round(isoFraction(required, maxValue) * (width - 1));
  ctx.strokeStyle = "#d40000";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(isoPx, 0);
  ctx.lineTo(isoPx, height - 14);
  ctx.stroke();
  ctx.fillStyle = "#222";
  ctx.font = "10px sans-serif";
  ctx.fillText("0", 2, height - 3);
  ctx.fillText(`${required.toFixed(0)} lx required`, Math.min(isoPx + 3, width - 90), height - 3);
  const maxLabel = `${maxValue.toFixed(0)}`;
  ctx.fillText(maxLabel, width - ctx.measureText(maxLabel).width - 2, height - 3);
}
