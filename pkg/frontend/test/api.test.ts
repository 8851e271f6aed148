import { describe, expect, it } from "vitest";

import {
  ApiError,
  ConflictError,
  IF_REVISION_HEADER,
  StudioApi,
} from "../src/api.js";
import type { FetchLike } from "../src/api.js";
import type { ProjectDoc } from "../src/types.js";

const EMPTY_PROJECT: ProjectDoc = {
  name: "p",
  k_dep: 1.25,
  default_phi_l: 550,
  photometry: {},
  rooms: [],
  circuits: [],
};

function jsonResponse(
  body: unknown,
  status = 200,
  headers: Record<string, string> = {},
): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });
}

describe("StudioApi", () => {
  it("reads the revision header on GET", async () => {
    const fetchImpl: FetchLike = async () =>
      jsonResponse(EMPTY_PROJECT, 200, { "X-Revision": "7" });
    const api = new StudioApi("", fetchImpl);
    const { document, revision } = await api.getProject();
    expect(revision).toBe(7);
    expect(document.name).toBe("p");
  });

  it("sends the expected revision header on PUT", async () => {
    let seenHeader: string | null = null;
    const fetchImpl: FetchLike = async (_input, init) => {
      seenHeader = new Headers(init?.headers).get(IF_REVISION_HEADER);
      return jsonResponse({ revision: 4 });
    };
    const api = new StudioApi("", fetchImpl);
    const revision = await api.putProject(EMPTY_PROJECT, 3);
    expect(seenHeader).toBe("3");
    expect(revision).toBe(4);
  });

  it("maps 409 to ConflictError", async () => {
    const fetchImpl: FetchLike = async () =>
      jsonResponse({ detail: "revision conflict" }, 409);
    const api = new StudioApi("", fetchImpl);
    await expect(api.putProject(EMPTY_PROJECT, 0)).rejects.toBeInstanceOf(
      ConflictError,
    );
  });

  it("maps other failures to ApiError with the service detail", async () => {
    const fetchImpl: FetchLike = async () =>
      jsonResponse({ detail: "rooms[0].name: duplicate" }, 400);
    const api = new StudioApi("", fetchImpl);
    const failure = api.putProject(EMPTY_PROJECT, 0);
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await expect(
      api.putProject(EMPTY_PROJECT, 0),
    ).rejects.toThrowError("rooms[0].name: duplicate");
  });

  it("omits spacing from the grid request when not given", async () => {
    let body: string | undefined;
    const fetchImpl: FetchLike = async (_input, init) => {
      body = init?.body as string;
      return jsonResponse({
        room: "r",
        grid: { xs: [0.5, 1.5], ys: [0.5, 1.5], values: [[0, 0], [0, 0]], spacing: 1, plane_height: 1.6 },
        statistics: { minimum: 0, average: 0, maximum: 0, uniformity: 0 },
      });
    };
    const api = new StudioApi("", fetchImpl);
    await api.calcGrid("r");
    expect(JSON.parse(body!)).toEqual({ room: "r" });
    await api.calcGrid("r", 0.5);
    expect(JSON.parse(body!)).toEqual({ room: "r", spacing: 0.5 });
  });
});
