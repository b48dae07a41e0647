import { describe, expect, it } from 'vitest';

import { centralPullStrength, settle, startLayout } from '../src/layout';
import { buildScene } from '../src/model';
import type { GraphDocument } from '../src/types';

const star: GraphDocument = {
  schema: 'wikinet.graph/1',
  nodes: [
    { id: 'Hub', kind: 'article', scores: {}, indegree: 6 },
    ...Array.from({ length: 6 }, (_, i) => ({
      id: `Leaf${i}`,
      kind: 'article' as const,
      scores: {},
      indegree: 0,
    })),
  ],
  edges: Array.from({ length: 6 }, (_, i) => ({
    src: `Leaf${i}`,
    dst: 'Hub',
    layer: 'link',
    weight: 1,
  })),
};

describe('layout forces', () => {
  it('pulls higher-indegree nodes inward more strongly', () => {
    for (let d = 0; d < 30; d += 1) {
      expect(centralPullStrength(d + 1)).toBeGreaterThan(centralPullStrength(d));
    }
  });

  it('settles the hub more centrally than the leaves', () => {
    const scene = buildScene(star, 0);
    const handle = startLayout(scene, 800, 600, () => {});
    handle.stop(); // drive ticks manually
    settle(handle, 200);
    const center = { x: 400, y: 300 };
    const dist = (n: { x?: number; y?: number }) =>
      Math.hypot((n.x ?? 0) - center.x, (n.y ?? 0) - center.y);
    const hub = scene.nodes.find((n) => n.id === 'Hub')!;
    const leafDistances = scene.nodes.filter((n) => n.id !== 'Hub').map(dist);
    const meanLeaf = leafDistances.reduce((a, b) => a + b, 0) / leafDistances.length;
    expect(Number.isFinite(hub.x!)).toBe(true);
    expect(dist(hub)).toBeLessThan(meanLeaf);
  });
});
