// Thin API client. Fetches are asynchronous; a sequence guard discards any
// response that is no longer the newest request of its kind, so a slow older
// reply can never overwrite a fresher view.

import { ApiError } from './types';
import type { GraphDocument, LayerWeights, SeedsResponse, SeriesDocument } from './types';

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface GraphRequest {
  seeds: string[];
  weights: LayerWeights;
  threshold: number;
  include_web?: boolean;
  window_days?: number;
  window_end?: string;
}

export class StaleGuard {
  private sequence = 0;

  /** Run an async producer; resolve null if a newer run started meanwhile. */
  async run<T>(producer: () => Promise<T>): Promise<T | null> {
    const ticket = ++this.sequence;
    const result = await producer();
    return ticket === this.sequence ? result : null;
  }
}

export class ApiClient {
  private readonly fetchFn: FetchLike;
  private readonly seedsGuard = new StaleGuard();
  private readonly graphGuard = new StaleGuard();
  private readonly seriesGuard = new StaleGuard();

  constructor(readonly baseUrl: string = '', fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) {
      throw new ApiError(await describeError(response), response.status);
    }
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(await describeError(response), response.status);
    }
    return (await response.json()) as T;
  }

  /** Seed candidates for the picker; stale responses resolve to null. */
  searchSeeds(query: string, limit = 10): Promise<SeedsResponse | null> {
    const q = encodeURIComponent(query);
    return this.seedsGuard.run(() =>
      this.getJson<SeedsResponse>(`/api/seeds?q=${q}&limit=${limit}`),
    );
  }

  fetchGraph(request: GraphRequest): Promise<GraphDocument | null> {
    return this.graphGuard.run(() => this.postJson<GraphDocument>('/api/graph', request));
  }

  fetchSeries(request: GraphRequest & { timestamps: string[] }): Promise<SeriesDocument | null> {
    return this.seriesGuard.run(() => this.postJson<SeriesDocument>('/api/series', request));
  }
}

async function describeError(response: Response): Promise<string> {
  try {
    const payload = await response.json();
    if (payload && typeof payload.detail === 'string') return payload.detail;
  } catch {
    // non-JSON error body; fall through
  }
  return `request failed with HTTP ${response.status}`;
}
