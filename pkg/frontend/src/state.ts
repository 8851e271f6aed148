/** Studio view state and the sync/recalculate state machine.
 *
 * The store owns a working copy of the project document. Placement
 * drags mutate the working copy (clamped to the room), then a sync
 * pushes the document to the service with the mirrored revision and
 * requests a fresh grid. Responses carry a token; anything but the
 * latest token is discarded, so only the newest grid ever renders.
 * A 409 reverts the working copy and raises a visible conflict prompt.
 */

import { ApiError, ConflictError, StudioApi } from "./api.js";
import { clampToRoom, type PlanPoint } from "./geometry.js";
import type { GridResponse, ProjectDoc, RoomDoc } from "./types.js";

export interface ViewState {
  selectedRoom: string | null;
  document: ProjectDoc | null;
  revision: number;
  lastGrid: GridResponse | null;
  dirty: boolean;
  conflict: boolean;
  error: string | null;
}

type Listener = (state: ViewState) => void;

function deepCopy<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export class StudioStore {
  private state: ViewState = {
    selectedRoom: null,
    document: null,
    revision: 0,
    lastGrid: null,
    dirty: false,
    conflict: false,
    error: null,
  };

  /** last server-accepted document, for reverts on rejected writes */
  private synced: ProjectDoc | null = null;
  private calcToken = 0;
  private listeners: Listener[] = [];

  constructor(private readonly api: StudioApi) {}

  getState(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  selectedRoomDoc(): RoomDoc | null {
    const { document, selectedRoom } = this.state;
    if (!document || !selectedRoom) {
      return null;
    }
    return document.rooms.find((r) => r.name === selectedRoom) ?? null;
  }

  async load(): Promise<void> {
    const { document, revision } = await this.api.getProject();
    this.synced = deepCopy(document);
    const firstWithGeometry =
      document.rooms.find((r) => r.geometry !== null)?.name ?? null;
    this.update({
      document,
      revision,
      selectedRoom: this.state.selectedRoom ?? firstWithGeometry,
      dirty: false,
      conflict: false,
      error: null,
      lastGrid: null,
    });
  }

  async selectRoom(name: string): Promise<void> {
    this.update({ selectedRoom: name, lastGrid: null });
    const room = this.selectedRoomDoc();
    if (room && room.geometry) {
      await this.requestGrid();
    }
  }

  /** Move one placement of the selected room; coordinates clamp to the
   * room bounds. Returns the clamped position actually stored. */
  movePlacement(index: number, x: number, y: number): PlanPoint | null {
    const room = this.selectedRoomDoc();
    if (!room || !room.geometry) {
      return null;
    }
    const placement = room.placements[index];
    if (!placement) {
      return null;
    }
    const clamped = clampToRoom(x, y, room.geometry);
    placement.x = clamped.x;
    placement.y = clamped.y;
    this.update({ dirty: true });
    return clamped;
  }

  /** Push the working copy, then request a recalculation. */
  async syncAndRecalc(): Promise<void> {
    const { document, revision, selectedRoom } = this.state;
    if (!document || !selectedRoom) {
      return;
    }
    try {
      const newRevision = await this.api.putProject(document, revision);
      this.synced = deepCopy(document);
      this.update({ revision: newRevision, dirty: false, error: null });
    } catch (err) {
      this.revertWorkingCopy(err);
      return;
    }
    await this.requestGrid();
  }

  /** Request a grid for the selected room; stale responses are dropped. */
  async requestGrid(spacing?: number): Promise<void> {
    const { selectedRoom } = this.state;
    if (!selectedRoom) {
      return;
    }
    const token = ++this.calcToken;
    try {
      const grid = await this.api.calcGrid(selectedRoom, spacing);
      if (token !== this.calcToken || this.state.selectedRoom !== selectedRoom) {
        return; // a newer request superseded this one
      }
      this.update({ lastGrid: grid, error: null });
    } catch (err) {
      if (token !== this.calcToken) {
        return;
      }
      this.update({ error: messageOf(err) });
    }
  }

  /** Explicit save; same optimistic write as a drag sync. */
  async save(): Promise<void> {
    const { document, revision } = this.state;
    if (!document) {
      return;
    }
    try {
      const newRevision = await this.api.putProject(document, revision);
      this.synced = deepCopy(document);
      this.update({ revision: newRevision, dirty: false, error: null });
    } catch (err) {
      this.revertWorkingCopy(err);
    }
  }

  /** Resolve a conflict by reloading the server state. */
  async reloadFromServer(): Promise<void> {
    await this.load();
    const room = this.selectedRoomDoc();
    if (room && room.geometry) {
      await this.requestGrid();
    }
  }

  private revertWorkingCopy(err: unknown): void {
    const reverted = this.synced ? deepCopy(this.synced) : this.state.document;
    if (err instanceof ConflictError) {
      this.update({
        document: reverted,
        dirty: false,
        conflict: true,
        error: err.message,
      });
      return;
    }
    if (err instanceof ApiError && err.status >= 400 && err.status < 500) {
      this.update({ document: reverted, dirty: false, error: err.message });
      return;
    }
    this.update({ error: messageOf(err) });
  }
}

function messageOf(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

/** Debounce an async trigger; used to bound recalculation rate to one
 * request per quiet period during drags. */
export function debounce(fn: () => void, delayMs: number): () => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return () => {
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      fn();
    }, delayMs);
  };
}
