/** Plan-coordinate helpers. */

import type { GeometryDoc } from "./types.js";

export interface PlanPoint {
  x: number;
  y: number;
}

/** Clamp a dragged position into the room plan [0, length] x [0, width]. */
export function clampToRoom(x: number, y: number, room: GeometryDoc): PlanPoint {
  return {
    x: Math.min(Math.max(x, 0), room.length),
    y: Math.min(Math.max(y, 0), room.width),
  };
}

/** Squared plan distance, for nearest-marker hit tests. */
export function distanceSq(ax: number, ay: number, bx: number, by: number): number {
  const dx = ax - bx;
  const dy = ay - by;
  return dx * dx + dy * dy;
}
