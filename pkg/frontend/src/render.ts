// SVG rendering of a scene. Pure presentation: the node and edge sets drawn
// here are exactly the ones in the scene, which mirrors the server document.

import { select, Selection } from 'd3-selection';
import 'd3-transition';

import type { RenderLink, RenderNode, Scene } from './model';

const ENTER_MS = 400;
const EXIT_MS = 300;

export class GraphRenderer {
  private readonly svg: Selection<SVGSVGElement, unknown, null, undefined>;
  private readonly linkGroup: Selection<SVGGElement, unknown, null, undefined>;
  private readonly nodeGroup: Selection<SVGGElement, unknown, null, undefined>;
  private readonly labelGroup: Selection<SVGGElement, unknown, null, undefined>;

  constructor(svgElement: SVGSVGElement) {
    this.svg = select(svgElement);
    this.svg.selectAll('*').remove();
    this.linkGroup = this.svg.append('g').attr('class', 'links');
    this.nodeGroup = this.svg.append('g').attr('class', 'nodes');
    this.labelGroup = this.svg.append('g').attr('class', 'labels');
  }

  /** Bind the scene; entering nodes fade in, exiting nodes fade out. */
  bind(scene: Scene): void {
    const links = this.linkGroup
      .selectAll<SVGLineElement, RenderLink>('line')
      .data(scene.links, (l) => `${l.source}→${l.target}:${l.layer}`);
    links.exit().transition().duration(EXIT_MS).attr('stroke-opacity', 0).remove();
    links
      .enter()
      .append('line')
      .attr('stroke', '#b9bdc9')
      .attr('stroke-opacity', 0)
      .attr('stroke-width', 1)
      .transition()
      .duration(ENTER_MS)
      .attr('stroke-opacity', 0.55);

    const nodes = this.nodeGroup
      .selectAll<SVGCircleElement, RenderNode>('circle')
      .data(scene.nodes, (n) => n.id);
    nodes.exit().transition().duration(EXIT_MS).attr('opacity', 0).remove();
    nodes
      .enter()
      .append('circle')
      .attr('opacity', 0)
      .call((sel) => sel.append('title'))
      .transition()
      .duration(ENTER_MS)
      .attr('opacity', 1);
    this.nodeGroup
      .selectAll<SVGCircleElement, RenderNode>('circle')
      .attr('r', (n) => n.radius)
      .attr('fill', (n) => n.color)
      .select('title')
      .text((n) => `${n.id} (indegree ${n.indegree})`);

    const labels = this.labelGroup
      .selectAll<SVGTextElement, RenderNode>('text')
      .data(scene.nodes.filter((n) => n.indegree >= 2), (n) => n.id);
    labels.exit().remove();
    labels.enter().append('text').attr('font-size', 10).attr('fill', '#3a3f4d');
    this.labelGroup
      .selectAll<SVGTextElement, RenderNode>('text')
      .text((n) => (n.id.length > 34 ? `${n.id.slice(0, 31)}…` : n.id));
  }

  /** Refresh positions from the simulation state. */
  tick(scene: Scene): void {
    const byId = new Map(scene.nodes.map((n) => [n.id, n]));
    this.linkGroup
      .selectAll<SVGLineElement, RenderLink>('line')
      .attr('x1', (l) => byId.get(String(l.source))?.x ?? 0)
      .attr('y1', (l) => byId.get(String(l.source))?.y ?? 0)
      .attr('x2', (l) => byId.get(String(l.target))?.x ?? 0)
      .attr('y2', (l) => byId.get(String(l.target))?.y ?? 0);
    this.nodeGroup
      .selectAll<SVGCircleElement, RenderNode>('circle')
      .attr('cx', (n) => n.x ?? 0)
      .attr('cy', (n) => n.y ?? 0);
    this.labelGroup
      .selectAll<SVGTextElement, RenderNode>('text')
      .attr('x', (n) => (n.x ?? 0) + n.radius + 3)
      .attr('y', (n) => (n.y ?? 0) + 3);
  }
}
