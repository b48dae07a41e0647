// Wire formats served by the wikinet HTTP API. The explorer renders these
// documents verbatim: it never re-ranks, rescores or filters on the client.

export type NodeKind = 'article' | 'web';

export interface DocNode {
  id: string;
  kind: NodeKind;
  scores: Record<string, number>;
  indegree: number;
}

export interface DocEdge {
  src: string;
  dst: string;
  layer: string;
  weight: number;
}

export interface GraphDocument {
  schema: string;
  nodes: DocNode[];
  edges: DocEdge[];
}

export interface SeriesFrame {
  at: string;
  graph: GraphDocument;
}

export interface SeriesDocument {
  schema: string;
  seeds: string[];
  frames: SeriesFrame[];
}

export interface SeedsResponse {
  query: string;
  seeds: string[];
}

export interface LayerWeights {
  bidirectional: number;
  importance: number;
  quality: number;
  actuality: number;
}

// Everything the UI is allowed to remember between interactions.
export interface ViewState {
  query: string;
  selectedSeeds: string[];
  weights: LayerWeights;
  threshold: number;
  frameIndex: number;
  positions: Map<string, { x: number; y: number }>;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}
