/** Heatmap color scale.
 *
 * Linear from 0 up to max(required level, grid maximum), so the scale
 * never saturates below the compliance threshold and the required-level
 * iso-line always sits inside the ramp.
 */

const STOPS: Array<[number, [number, number, number]]> = [
  [0.0, [8, 29, 88]],
  [0.35, [34, 94, 168]],
  [0.65, [65, 182, 196]],
  [0.85, [237, 248, 177]],
  [1.0, [255, 255, 217]],
];

export function scaleMax(required: number, gridMax: number): number {
  return Math.max(required, gridMax, 1e-9);
}

function lerp(a: number, b: number, t: number): number {
  return a + (b - a) * t;
}

/** Map a lux value onto the ramp for the given scale maximum. */
export function luxToColor(value: number, maxValue: number): string {
  const t = Math.min(Math.max(value / maxValue, 0), 1);
  for (let i = 1; i < STOPS.length; i++) {
    const [t1, c1] = STOPS[i]!;
    const [t0, c0] = STOPS[i - 1]!;
    if (t <= t1) {
      const local = t1 === t0 ? 0 : (t - t0) / (t1 - t0);
      const r = Math.round(lerp(c0[0], c1[0], local));
      const g = Math.round(lerp(c0[1], c1[1], local));
      const b = Math.round(lerp(c0[2], c1[2], local));
      return `rgb(${r},${g},${b})`;
    }
  }
  const [, last] = STOPS[STOPS.length - 1]!;
  return `rgb(${last[0]},${last[1]},${last[2]})`;
}

/** Fraction of the legend (0..1) where the required iso-line sits. */
export function isoFraction(required: number, maxValue: number): number {
  return Math.min(Math.max(required / maxValue, 0), 1);
}

/** Compliance badge rule: green exactly when average meets the requirement. */
export function isCompliant(average: number, required: number): boolean {
  return average >= required;
}
