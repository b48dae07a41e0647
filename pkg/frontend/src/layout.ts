// Force-directed layout. The server ships topology only; positions are a
// client concern. High-indegree nodes are pulled toward the center harder,
// so hubs settle centrally and leaves drift to the rim.

import {
  forceCenter,
  forceCollide,
  forceLink,
  forceManyBody,
  forceRadial,
  forceSimulation,
  Simulation,
} from 'd3-force';

import type { RenderLink, RenderNode, Scene } from './model';

/** Inward pull per node; strictly increasing in indegree. */
export function centralPullStrength(indegree: number): number {
  return 0.05 + 0.03 * Math.sqrt(Math.max(0, indegree));
}

export interface LayoutHandle {
  simulation: Simulation<RenderNode, RenderLink & { source: any; target: any }>;
  stop: () => void;
}

export function startLayout(
  scene: Scene,
  width: number,
  height: number,
  onTick: () => void,
): LayoutHandle {
  const links = scene.links.map((l) => ({ ...l }));
  const simulation = forceSimulation<RenderNode>(scene.nodes)
    .force(
      'link',
      forceLink<RenderNode, any>(links)
        .id((n: RenderNode) => n.id)
        .distance(70)
        .strength(0.3),
    )
    .force('charge', forceManyBody<RenderNode>().strength(-80))
    .force('center', forceCenter(width / 2, height / 2))
    .force(
      'radial',
      forceRadial<RenderNode>(0, width / 2, height / 2).strength((n) =>
        centralPullStrength(n.indegree),
      ),
    )
    .force('collide', forceCollide<RenderNode>().radius((n) => n.radius + 2))
    .on('tick', onTick);
  return { simulation, stop: () => simulation.stop() };
}

/** Advance a simulation synchronously; used by tests and scrub settling. */
export function settle(handle: LayoutHandle, ticks = 120): void {
  for (let i = 0; i < ticks; i += 1) {
    handle.simulation.tick();
  }
}
