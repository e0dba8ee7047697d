// Application shell: setup form, game loop, history panel, error banners.

import * as api from './api.js';
import { offeredColors, renderBoard, selectableVertices } from './board.js';
import { analysisText, checkMove, historyBlob, statusText } from './logic.js';
import { ServiceError, View } from './types.js';

export interface AppElements {
  setup: HTMLFormElement;
  board: HTMLElement;
  banner: HTMLElement;
  analysis: HTMLElement;
  history: HTMLElement;
  error: HTMLElement;
  exportBtn: HTMLButtonElement;
  resetBtn: HTMLButtonElement;
}

export class App {
  view: View | null = null;
  sessionId: string | null = null;
  selected: number | null = null;
  busy = false;

  constructor(private readonly el: AppElements) {
    el.setup.addEventListener('submit', (ev) => {
      ev.preventDefault();
      void this.startSession();
    });
    el.board.addEventListener('click', (ev) => {
      const target = ev.target as Element;
      const vertexAttr = target.getAttribute?.('data-vertex');
      if (vertexAttr !== null && vertexAttr !== undefined) {
        this.select(Number(vertexAttr));
      }
    });
    el.exportBtn.addEventListener('click', () => this.exportHistory());
    el.resetBtn.addEventListener('click', () => void this.reset());
    const graphInput = el.setup.elements.namedItem('graph') as HTMLInputElement;
    const variantInput = el.setup.elements.namedItem('variant') as HTMLSelectElement;
    const refreshK = () => void this.suggestK(graphInput.value, variantInput.value);
    graphInput.addEventListener('change', refreshK);
    variantInput.addEventListener('change', refreshK);
  }

  private formValues() {
    const data = new FormData(this.el.setup);
    return {
      graph: String(data.get('graph') ?? '').trim(),
      variant: String(data.get('variant') ?? 'a'),
      k: Number(data.get('k') ?? 3),
      human_role: (data.get('side') === 'alice' ? 'alice' : 'bob') as 'alice' | 'bob',
    };
  }

  async suggestK(graph: string, variant: string): Promise<void> {
    try {
      const probe = await api.chiProbe(graph, variant);
      if (probe.chi) {
        const kInput = this.el.setup.elements.namedItem('k') as HTMLInputElement;
        kInput.value = String(probe.chi);
        this.note(`solver says ${graph} needs ${probe.chi} colors in this variant`);
      }
    } catch {
      // defaulting is best-effort; the field keeps its value
    }
  }

  async startSession(): Promise<void> {
    const params = this.formValues();
    if (!params.graph || Number.isNaN(params.k) || params.k < 1) {
      this.fail('fill in a graph and a positive number of colors');
      return;
    }
    try {
      this.note('solving…');
      const created = await api.createSession(params);
      this.sessionId = created.id;
      this.apply(created.view);
      this.note('');
    } catch (err) {
      this.fail(this.describe(err, 'could not create the session'));
    }
  }

  select(vertex: number): void {
    if (!this.view || this.busy) return;
    this.selected = this.selected === vertex ? null : vertex;
    this.render();
  }

  async pick(vertex: number, color: number): Promise<void> {
    if (!this.view || !this.sessionId || this.busy) return;
    const verdict = checkMove(this.view, vertex, color);
    if (!verdict.ok) {
      this.fail(`illegal move: ${verdict.reason}`);
      return;
    }
    this.busy = true;
    try {
      const view = await api.postMove(this.sessionId, vertex, color);
      this.selected = null;
      this.apply(view);
    } catch (err) {
      this.fail(this.describe(err, 'move rejected'));
    } finally {
      this.busy = false;
    }
  }

  async reset(): Promise<void> {
    if (!this.sessionId) return;
    try {
      this.apply(await api.resetSession(this.sessionId));
    } catch (err) {
      this.fail(this.describe(err, 'reset failed'));
    }
  }

  describe(err: unknown, fallback: string): string {
    if (err instanceof ServiceError) {
      const hint = err.payload.legal_colors?.length
        ? ` — legal colors: ${err.payload.legal_colors.join(', ')}`
        : '';
      return `${err.payload.error}${hint}`;
    }
    return `${fallback} (network problem? retry)`;
  }

  apply(view: View): void {
    this.view = view;
    this.el.error.textContent = '';
    this.render();
  }

  note(text: string): void {
    this.el.error.textContent = text;
    this.el.error.className = 'note';
  }

  fail(text: string): void {
    this.el.error.textContent = text;
    this.el.error.className = 'error';
  }

  exportHistory(): void {
    if (!this.view) return;
    const blob = new Blob([historyBlob(this.view)], { type: 'application/json' });
    const a = document.createElement('a');
    a.href = URL.createObjectURL(blob);
    a.download = `${this.view.graph.label.replace(/[:,]/g, '-')}-history.json`;
    a.click();
    URL.revokeObjectURL(a.href);
  }

  render(): void {
    const view = this.view;
    if (!view) return;
    renderBoard(this.el.board, view, { onPick: (v, c) => void this.pick(v, c) }, this.selected);
    this.el.banner.textContent = statusText(view);
    this.el.analysis.textContent = analysisText(view);
    this.el.history.innerHTML = '';
    for (const entry of view.history) {
      const li = document.createElement('li');
      const change = entry.from ? `${entry.from}→${entry.to}` : `→${entry.to}`;
      li.textContent = `r${entry.round} ${entry.mover}: v${entry.vertex} ${change}`;
      this.el.history.appendChild(li);
    }
  }

  // test hooks
  offered(): number[] {
    return offeredColors(this.el.board);
  }

  selectable(): number[] {
    return selectableVertices(this.el.board);
  }
}
