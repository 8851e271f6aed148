/** Typed client for the design service. All lux values come from here;
 * the studio never computes illuminance itself. */

import type { GridResponse, LumenResponse, ProjectDoc } from "./types.js";

export const REVISION_HEADER = "X-Revision";
export const IF_REVISION_HEADER = "X-If-Revision";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

/** A PUT raced another writer; reload and retry. */
export class ConflictError extends ApiError {
  constructor(message: string) {
    super(409, message);
    this.name = "ConflictError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: string };
    return body.detail ?? response.statusText;
  } catch {
    return response.statusText;
  }
}

export class StudioApi {
  private readonly fetchImpl: FetchLike;

  constructor(
    private readonly baseUrl: string = "",
    fetchImpl?: FetchLike,
  ) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  async getProject(): Promise<{ document: ProjectDoc; revision: number }> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/project`);
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    const revision = Number(response.headers.get(REVISION_HEADER) ?? "0");
    return { document: (await response.json()) as ProjectDoc, revision };
  }

  /** Replace the project; resolves to the new revision. */
  async putProject(document: ProjectDoc, revision: number): Promise<number> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/project`, {
      method: "PUT",
      headers: {
        "Content-Type": "application/json",
        [IF_REVISION_HEADER]: String(revision),
      },
      body: JSON.stringify(document),
    });
    if (response.status === 409) {
      throw new ConflictError(await errorDetail(response));
    }
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    const body = (await response.json()) as { revision: number };
    return body.revision;
  }

  async calcGrid(room: string, spacing?: number): Promise<GridResponse> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/calc/grid`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(spacing === undefined ? { room } : { room, spacing }),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as GridResponse;
  }

  async calcLumen(room: string): Promise<LumenResponse> {
    const response = await this.fetchImpl(`${this.baseUrl}/api/calc/lumen`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ room }),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await errorDetail(response));
    }
    return (await response.json()) as LumenResponse;
  }
}
