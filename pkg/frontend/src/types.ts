/** Wire types mirroring the design service JSON schema. */

export interface GeometryDoc {
  length: number;
  width: number;
  height: number;
  useful_plane_height: number;
  suspension_drop: number;
}

export interface PlacementDoc {
  photometry: string;
  x: number;
  y: number;
  mount_height: number;
  orientation: number;
  lamps: number;
  flux_per_lamp: number;
}

export interface DevicesDoc {
  lamps: number;
  monopolar_switches: number;
  bipolar_switches: number;
  staircase_switches: number;
  monophasic_sockets: number;
}

export interface RoomDoc {
  name: string;
  label: string | null;
  category: string;
  geometry: GeometryDoc | null;
  reflectances: { ceiling: number; walls: number };
  devices: DevicesDoc;
  placements: PlacementDoc[];
  utilization: number | null;
}

export interface ProjectDoc {
  name: string;
  k_dep: number;
  default_phi_l: number;
  photometry: Record<string, string>;
  rooms: RoomDoc[];
  circuits: unknown[];
}

export interface GridPayload {
  xs: number[];
  ys: number[];
  values: number[][];
  spacing: number;
  plane_height: number;
}

export interface GridStatistics {
  minimum: number;
  average: number;
  maximum: number;
  uniformity: number;
}

export interface GridResponse {
  room: string;
  grid: GridPayload;
  statistics: GridStatistics;
}

export interface LumenResponse {
  room: string;
  luminaire_count: number;
  utilization: number;
  useful_area: number;
  mounting_height: number;
  room_index: number;
  total_flux: number;
  useful_flux: number;
  achieved_lux: number;
}

/** Normative average illuminance per room category, lux. */
export const REQUIRED_LUX: Record<string, number> = {
  living_space: 50,
  hallway: 75,
  main_space: 20,
  annex_office: 100,
};

export function requiredLux(category: string): number {
  return REQUIRED_LUX[category] ?? 0;
}
