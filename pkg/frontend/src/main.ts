/** DOM wiring: room selector, draggable luminaire markers, heatmap,
 * statistics, compliance badge, save and conflict handling. */

import { StudioApi } from "./api.js";
import { isCompliant } from "./colors.js";
import { distanceSq } from "./geometry.js";
import { cellAt, hoverText } from "./heatmap.js";
import { drawLegend, drawRoom, planTransform } from "./render.js";
import { debounce, StudioStore } from "./state.js";
import { requiredLux } from "./types.js";

const RECALC_DEBOUNCE_MS = 150;
const PICK_RADIUS_PLAN = 0.35;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function start(): void {
  const api = new StudioApi("");
  const store = new StudioStore(api);

  const roomSelect = byId<HTMLSelectElement>("room-select");
  const canvas = byId<HTMLCanvasElement>("plan");
  const legend = byId<HTMLCanvasElement>("legend");
  const tooltip = byId<HTMLDivElement>("tooltip");
  const badge = byId<HTMLSpanElement>("badge");
  const stats = byId<HTMLDivElement>("stats");
  const emptyState = byId<HTMLDivElement>("empty-state");
  const errorBar = byId<HTMLDivElement>("error-bar");
  const conflictPrompt = byId<HTMLDivElement>("conflict-prompt");
  const reloadButton = byId<HTMLButtonElement>("reload-button");
  const saveButton = byId<HTMLButtonElement>("save-button");
  const dirtyMark = byId<HTMLSpanElement>("dirty-mark");

  let draggingIndex: number | null = null;
  const requestRecalc = debounce(() => {
    void store.syncAndRecalc();
  }, RECALC_DEBOUNCE_MS);

  function render(): void {
    const state = store.getState();
    const room = store.selectedRoomDoc();

    if (state.document) {
      const names = state.document.rooms
        .filter((r) => r.geometry !== null)
        .map((r) => r.name);
      if (roomSelect.options.length !== names.length) {
        roomSelect.innerHTML = "";
        for (const name of names) {
          const option = document.createElement("option");
          option.value = name;
          option.textContent = name;
          roomSelect.appendChild(option);
        }
      }
      if (state.selectedRoom) {
        roomSelect.value = state.selectedRoom;
      }
    }

    dirtyMark.textContent = state.dirty ? "unsaved changes" : "";
    errorBar.textContent = state.error ?? "";
    errorBar.style.display = state.error ? "block" : "none";
    conflictPrompt.style.display = state.conflict ? "block" : "none";

    if (!room || !room.geometry) {
      emptyState.style.display = "block";
      emptyState.textContent = "Select a room with geometry to begin.";
      return;
    }
    const required = requiredLux(room.category);
    const grid = state.lastGrid;
    if (!grid) {
      emptyState.style.display = "block";
      emptyState.textContent = "No grid yet - waiting for the service.";
      drawRoom(canvas, room.geometry, null, room.placements, required, draggingIndex);
      return;
    }
    emptyState.style.display = "none";
    drawRoom(
      canvas,
      room.geometry,
      grid.grid,
      room.placements,
      required,
      draggingIndex,
    );
    drawLegend(legend, required, grid.statistics.maximum);
    const s = grid.statistics;
    stats.textContent =
      `min ${s.minimum.toFixed(1)} / avg ${s.average.toFixed(1)} / ` +
      `max ${s.maximum.toFixed(1)} lx, uniformity ${s.uniformity.toFixed(2)}`;
    const compliant = isCompliant(s.average, required);
    badge.textContent = compliant
      ? `meets ${required} lx`
      : `below ${required} lx`;
    badge.className = compliant ? "badge ok" : "badge fail";
  }

  store.subscribe(render);

  roomSelect.addEventListener("change", () => {
    void store.selectRoom(roomSelect.value);
  });

  saveButton.addEventListener("click", () => {
    void store.save();
  });

  reloadButton.addEventListener("click", () => {
    void store.reloadFromServer();
  });

  function planCoords(event: PointerEvent): { x: number; y: number } | null {
    const room = store.selectedRoomDoc();
    if (!room || !room.geometry) {
      return null;
    }
    const rect = canvas.getBoundingClientRect();
    const t = planTransform(room.geometry, canvas.width, canvas.height);
    return {
      x: t.toPlanX(event.clientX - rect.left),
      y: t.toPlanY(event.clientY - rect.top),
    };
  }

  canvas.addEventListener("pointerdown", (event) => {
    const point = planCoords(event);
    const room = store.selectedRoomDoc();
    if (!point || !room) {
      return;
    }
    let best: number | null = null;
    let bestDist = PICK_RADIUS_PLAN * PICK_RADIUS_PLAN;
    room.placements.forEach((p, i) => {
      const d = distanceSq(point.x, point.y, p.x, p.y);
      if (d <= bestDist) {
        best = i;
        bestDist = d;
      }
    });
    draggingIndex = best;
    if (best !== null) {
      canvas.setPointerCapture(event.pointerId);
    }
  });

  canvas.addEventListener("pointermove", (event) => {
    const point = planCoords(event);
    const state = store.getState();
    if (!point) {
      return;
    }
    if (draggingIndex !== null) {
      store.movePlacement(draggingIndex, point.x, point.y);
      requestRecalc();
      tooltip.style.display = "none";
      return;
    }
    const grid = state.lastGrid;
    if (!grid) {
      return;
    }
    const hit = cellAt(grid.grid, point.x, point.y);
    if (!hit) {
      tooltip.style.display = "none";
      return;
    }
    tooltip.style.display = "block";
    tooltip.style.left = `${event.clientX + 12}px`;
    tooltip.style.top = `${event.clientY + 12}px`;
    tooltip.textContent = hoverText(hit);
  });

  canvas.addEventListener("pointerup", (event) => {
    if (draggingIndex !== null) {
      canvas.releasePointerCapture(event.pointerId);
      draggingIndex = null;
      requestRecalc();
    }
  });

  canvas.addEventListener("pointerleave", () => {
    tooltip.style.display = "none";
  });

  void store.load().then(() => {
    const room = store.selectedRoomDoc();
    if (room && room.geometry) {
      void store.requestGrid();
    }
  });
}

start();
