// Wiring: controls on the left, animated map on the right. The server does
// all ranking; this file only moves documents into scenes and scenes onto
// the screen.

import { ApiClient } from './api';
import {
  clampFrameIndex,
  initialViewState,
  scrubTo,
  validateWeights,
  type Scene,
} from './model';
import { startLayout, type LayoutHandle } from './layout';
import { GraphRenderer } from './render';
import { ApiError, type SeriesDocument, type ViewState } from './types';

const api = new ApiClient('');
const state: ViewState = initialViewState();

let series: SeriesDocument | null = null;
let scene: Scene | null = null;
let layout: LayoutHandle | null = null;
let renderer: GraphRenderer | null = null;

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function showError(message: string | null): void {
  const box = el<HTMLDivElement>('error');
  box.textContent = message ?? '';
  box.style.display = message ? 'block' : 'none';
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.message} (HTTP ${err.status})`;
  return err instanceof Error ? err.message : String(err);
}

async function runSearch(): Promise<void> {
  state.query = el<HTMLInputElement>('query').value;
  const picker = el<HTMLDivElement>('seed-picker');
  if (!state.query.trim()) {
    picker.innerHTML = '<em>type a search term first</em>';
    return;
  }
  try {
    const response = await api.searchSeeds(state.query, 12);
    if (response === null) return; // a newer search superseded this one
    showError(null);
    picker.innerHTML = '';
    if (response.seeds.length === 0) {
      picker.innerHTML = '<em>no matches</em>';
      return;
    }
    for (const title of response.seeds) {
      const label = document.createElement('label');
      const box = document.createElement('input');
      box.type = 'checkbox';
      box.value = title;
      box.checked = state.selectedSeeds.includes(title);
      box.addEventListener('change', () => {
        state.selectedSeeds = box.checked
          ? [...state.selectedSeeds, title]
          : state.selectedSeeds.filter((t) => t !== title);
      });
      label.append(box, ` ${title}`);
      picker.append(label);
    }
  } catch (err) {
    showError(describe(err));
  }
}

function readWeights(): void {
  state.weights = {
    bidirectional: Number(el<HTMLInputElement>('w-bid').value),
    importance: Number(el<HTMLInputElement>('w-imp').value),
    quality: Number(el<HTMLInputElement>('w-qua').value),
    actuality: Number(el<HTMLInputElement>('w-act').value),
  };
  state.threshold = Number(el<HTMLInputElement>('threshold').value);
  validateWeights(state.weights);
}

async function buildMap(): Promise<void> {
  try {
    readWeights();
    if (state.selectedSeeds.length === 0) {
      throw new Error('pick at least one starting page');
    }
    const request = {
      seeds: state.selectedSeeds,
      weights: state.weights,
      threshold: state.threshold,
      include_web: el<HTMLInputElement>('include-web').checked,
    };
    const stampsRaw = el<HTMLInputElement>('timestamps').value.trim();
    if (stampsRaw) {
      const timestamps = stampsRaw.split(',').map((s) => s.trim()).filter(Boolean);
      const doc = await api.fetchSeries({ ...request, timestamps });
      if (doc === null) return;
      series = doc;
    } else {
      const doc = await api.fetchGraph(request);
      if (doc === null) return;
      series = { schema: 'wikinet.series/1', seeds: request.seeds, frames: [{ at: '', graph: doc }] };
    }
    showError(null);
    state.frameIndex = 0;
    setupScrubber();
    showFrame(0);
  } catch (err) {
    showError(describe(err));
  }
}

function setupScrubber(): void {
  const scrubber = el<HTMLInputElement>('scrubber');
  const count = series?.frames.length ?? 0;
  scrubber.max = String(Math.max(0, count - 1));
  scrubber.value = '0';
  scrubber.disabled = count < 2;
}

function showFrame(target: number): void {
  if (!series) return;
  state.frameIndex = clampFrameIndex(target, series.frames.length);
  scene = scrubTo(series, state.frameIndex, scene);
  el<HTMLSpanElement>('frame-label').textContent = series.frames[state.frameIndex].at || 'now';

  const svg = el<HTMLElement>('map') as unknown as SVGSVGElement;
  if (!renderer) renderer = new GraphRenderer(svg);
  renderer.bind(scene);

  layout?.stop();
  const current = scene;
  const { width, height } = svg.getBoundingClientRect();
  layout = startLayout(current, width || 900, height || 600, () => renderer?.tick(current));
}

export function main(): void {
  el<HTMLButtonElement>('search-btn').addEventListener('click', () => void runSearch());
  el<HTMLInputElement>('query').addEventListener('keydown', (ev) => {
    if ((ev as KeyboardEvent).key === 'Enter') void runSearch();
  });
  el<HTMLButtonElement>('build-btn').addEventListener('click', () => void buildMap());
  el<HTMLInputElement>('scrubber').addEventListener('input', (ev) => {
    showFrame(Number((ev.target as HTMLInputElement).value));
  });
}

main();
