import { describe, expect, it } from "vitest";

import { ConflictError, StudioApi } from "../src/api.js";
import { StudioStore } from "../src/state.js";
import type { GridResponse, ProjectDoc } from "../src/types.js";

function sampleProject(): ProjectDoc {
  return {
    name: "fixture",
    k_dep: 1.25,
    default_phi_l: 550,
    photometry: { d: "photometry/d.ies" },
    rooms: [
      {
        name: "studio room",
        label: null,
        category: "living_space",
        geometry: {
          length: 4.8,
          width: 4.2,
          height: 2.8,
          useful_plane_height: 1.6,
          suspension_drop: 0.2,
        },
        reflectances: { ceiling: 0.5, walls: 0.5 },
        devices: {
          lamps: 1,
          monopolar_switches: 0,
          bipolar_switches: 0,
          staircase_switches: 0,
          monophasic_sockets: 0,
        },
        placements: [
          {
            photometry: "d",
            x: 2.4,
            y: 2.1,
            mount_height: 1.0,
            orientation: 0,
            lamps: 1,
            flux_per_lamp: 550,
          },
        ],
        utilization: null,
      },
    ],
    circuits: [],
  };
}

function gridFor(room: string, marker: number): GridResponse {
  return {
    room,
    grid: {
      xs: [0.5, 1.5],
      ys: [0.5, 1.5],
      values: [
        [marker, marker],
        [marker, marker],
      ],
      spacing: 1,
      plane_height: 1.6,
    },
    statistics: { minimum: marker, average: marker, maximum: marker, uniformity: 1 },
  };
}

interface FakeCalls {
  puts: Array<{ document: ProjectDoc; revision: number }>;
  grids: string[];
}

/** StudioApi test double with controllable responses. */
function fakeApi(options: {
  failPutWith?: Error;
  gridQueue?: Array<() => Promise<GridResponse>>;
}): { api: StudioApi; calls: FakeCalls } {
  const calls: FakeCalls = { puts: [], grids: [] };
  let revision = 0;
  let marker = 0;
  const api = {
    async getProject() {
      return { document: sampleProject(), revision };
    },
    async putProject(document: ProjectDoc, expected: number) {
      calls.puts.push({ document: JSON.parse(JSON.stringify(document)), revision: expected });
      if (options.failPutWith) {
        throw options.failPutWith;
      }
      revision = expected + 1;
      return revision;
    },
    async calcGrid(room: string) {
      calls.grids.push(room);
      const next = options.gridQueue?.shift();
      if (next) {
        return next();
      }
      marker += 1;
      return gridFor(room, marker);
    },
    async calcLumen() {
      throw new Error("not used");
    },
  } as unknown as StudioApi;
  return { api, calls };
}

describe("placement drags", () => {
  it("clamps a drag past the wall to the boundary", async () => {
    const { api } = fakeApi({});
    const store = new StudioStore(api);
    await store.load();
    const clamped = store.movePlacement(0, 12.0, -3.0);
    expect(clamped).toEqual({ x: 4.8, y: 0 });
    const state = store.getState();
    expect(state.document!.rooms[0]!.placements[0]!.x).toBe(4.8);
    expect(state.document!.rooms[0]!.placements[0]!.y).toBe(0);
    expect(state.dirty).toBe(true);
  });

  it("sync pushes the working copy and bumps the revision", async () => {
    const { api, calls } = fakeApi({});
    const store = new StudioStore(api);
    await store.load();
    store.movePlacement(0, 1.0, 1.0);
    await store.syncAndRecalc();
    expect(calls.puts.length).toBe(1);
    expect(calls.puts[0]!.revision).toBe(0);
    expect(store.getState().revision).toBe(1);
    expect(store.getState().dirty).toBe(false);
    expect(store.getState().lastGrid).not.toBeNull();
  });
});

describe("stale grid responses", () => {
  it("only the latest request's response renders", async () => {
    let releaseFirst!: (g: GridResponse) => void;
    const firstResponse = new Promise<GridResponse>((resolve) => {
      releaseFirst = resolve;
    });
    const { api } = fakeApi({
      gridQueue: [() => firstResponse, async () => gridFor("studio room", 2)],
    });
    const store = new StudioStore(api);
    await store.load();

    const first = store.requestGrid(); // will resolve later with marker 1
    const second = store.requestGrid(); // resolves immediately with marker 2
    await second;
    expect(store.getState().lastGrid!.statistics.average).toBe(2);

    releaseFirst(gridFor("studio room", 1)); // stale: must be discarded
    await first;
    expect(store.getState().lastGrid!.statistics.average).toBe(2);
  });
});

describe("conflict handling", () => {
  it("a stale-revision save reverts and raises the conflict prompt", async () => {
    const { api } = fakeApi({ failPutWith: new ConflictError("stale") });
    const store = new StudioStore(api);
    await store.load();
    store.movePlacement(0, 0.1, 0.1);
    await store.save();
    const state = store.getState();
    expect(state.conflict).toBe(true);
    expect(state.revision).toBe(0);
    // placement reverted to the last server-accepted position
    expect(state.document!.rooms[0]!.placements[0]!.x).toBe(2.4);
    expect(state.document!.rooms[0]!.placements[0]!.y).toBe(2.1);
  });

  it("reloading clears the conflict and mirrors the server again", async () => {
    const { api } = fakeApi({ failPutWith: new ConflictError("stale") });
    const store = new StudioStore(api);
    await store.load();
    store.movePlacement(0, 0.1, 0.1);
    await store.save();
    expect(store.getState().conflict).toBe(true);
    await store.reloadFromServer();
    expect(store.getState().conflict).toBe(false);
    expect(store.getState().dirty).toBe(false);
  });
});

describe("view round-trip", () => {
  it("save then reload reproduces the identical document", async () => {
    const { api, calls } = fakeApi({});
    const store = new StudioStore(api);
    await store.load();
    store.movePlacement(0, 1.25, 0.75);
    await store.save();
    const savedDoc = calls.puts[0]!.document;
    const reloaded = new StudioStore({
      ...api,
      async getProject() {
        return { document: savedDoc, revision: 1 };
      },
    } as unknown as StudioApi);
    await reloaded.load();
    expect(reloaded.getState().document).toEqual(savedDoc);
  });
});
