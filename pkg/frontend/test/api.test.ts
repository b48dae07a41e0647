import { describe, expect, it } from 'vitest';

import { ApiClient, StaleGuard } from '../src/api';
import { ApiError } from '../src/types';

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}

describe('StaleGuard', () => {
  it('discards a slow older response once a newer request started', async () => {
    const guard = new StaleGuard();
    let releaseFirst!: (value: string) => void;
    const first = guard.run(
      () => new Promise<string>((resolve) => (releaseFirst = resolve)),
    );
    const second = guard.run(() => Promise.resolve('fresh'));
    expect(await second).toBe('fresh');
    releaseFirst('stale');
    expect(await first).toBeNull();
  });

  it('applies the result when nothing newer ran', async () => {
    const guard = new StaleGuard();
    expect(await guard.run(() => Promise.resolve(7))).toBe(7);
  });
});

describe('ApiClient', () => {
  it('parses seed responses', async () => {
    const client = new ApiClient('', async (url) => {
      expect(url).toBe('/api/seeds?q=abortion&limit=5');
      return jsonResponse({ query: 'abortion', seeds: ['Abortion'] });
    });
    const response = await client.searchSeeds('abortion', 5);
    expect(response?.seeds).toEqual(['Abortion']);
  });

  it('surfaces server errors with status and detail', async () => {
    const client = new ApiClient('', async () =>
      jsonResponse({ error: 'SeedNotFound', detail: 'seed article not found' }, 404),
    );
    await expect(client.fetchGraph({ seeds: ['x'], weights: { bidirectional: 1, importance: 1, quality: 1, actuality: 1 }, threshold: 0 })).rejects.toThrowError(ApiError);
    try {
      await client.searchSeeds('x');
    } catch (err) {
      expect((err as ApiError).status).toBe(404);
      expect((err as ApiError).message).toMatch(/not found/);
    }
  });

  it('discards stale graph responses', async () => {
    let resolveSlow!: (r: Response) => void;
    const responses: Array<() => Promise<Response>> = [
      () => new Promise<Response>((resolve) => (resolveSlow = resolve)),
      async () => jsonResponse({ schema: 'wikinet.graph/1', nodes: [], edges: [] }),
    ];
    let call = 0;
    const client = new ApiClient('', () => responses[call++]());
    const request = {
      seeds: ['A'],
      weights: { bidirectional: 1, importance: 1, quality: 1, actuality: 1 },
      threshold: 0,
    };
    const slow = client.fetchGraph(request);
    const fast = client.fetchGraph(request);
    expect((await fast)?.schema).toBe('wikinet.graph/1');
    resolveSlow(jsonResponse({ schema: 'stale', nodes: [], edges: [] }));
    expect(await slow).toBeNull();
  });

  it('posts the run configuration as JSON', async () => {
    const client = new ApiClient('http://svc', async (url, init) => {
      expect(url).toBe('http://svc/api/series');
      const body = JSON.parse(String(init?.body));
      expect(body.timestamps).toEqual(['2011-03-01T00:00:00Z']);
      return jsonResponse({ schema: 'wikinet.series/1', seeds: body.seeds, frames: [] });
    });
    const doc = await client.fetchSeries({
      seeds: ['Alpha'],
      weights: { bidirectional: 1, importance: 1, quality: 1, actuality: 1 },
      threshold: 0,
      timestamps: ['2011-03-01T00:00:00Z'],
    });
    expect(doc?.seeds).toEqual(['Alpha']);
  });
});
