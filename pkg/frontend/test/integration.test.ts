// Scripted end-to-end session against the real play service: the engine
// defends path:3 with three colors while the test plays Bob through the DOM.

import { ChildProcess, spawn } from 'node:child_process';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import * as api from '../src/api.js';
import { App, AppElements } from '../src/app.js';
import { checkMove, legalColorsFor } from '../src/logic.js';
import { ServiceError, View } from '../src/types.js';

const PORT = 18900 + Math.floor(Math.random() * 400);
const BASE = `http://127.0.0.1:${PORT}`;
let service: ChildProcess;

async function sleep(ms: number) {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitForHealth(timeoutMs = 60_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/health`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await sleep(300);
  }
  throw new Error('service did not come up');
}

beforeAll(async () => {
  service = spawn(
    'python3',
    ['-m', 'ecsolver.cli', 'serve', '--bind', `127.0.0.1:${PORT}`],
    { stdio: 'ignore' },
  );
  api.setApiBase(BASE);
  await waitForHealth();
});

afterAll(() => {
  service?.kill();
});

function buildDom(): AppElements {
  document.body.innerHTML = `
    <form id="setup">
      <input name="graph" value="path:3" />
      <select name="variant"><option value="a" selected>a</option></select>
      <input name="k" type="number" value="3" />
      <select name="side">
        <option value="bob" selected>bob</option>
        <option value="alice">alice</option>
      </select>
      <button type="submit">start</button>
    </form>
    <div id="banner"></div>
    <div id="analysis"></div>
    <div id="error"></div>
    <div id="board"></div>
    <button id="reset"></button>
    <button id="export"></button>
    <ol id="history"></ol>`;
  return {
    setup: document.getElementById('setup') as HTMLFormElement,
    board: document.getElementById('board') as HTMLElement,
    banner: document.getElementById('banner') as HTMLElement,
    analysis: document.getElementById('analysis') as HTMLElement,
    history: document.getElementById('history') as HTMLElement,
    error: document.getElementById('error') as HTMLElement,
    exportBtn: document.getElementById('export') as HTMLButtonElement,
    resetBtn: document.getElementById('reset') as HTMLButtonElement,
  };
}

async function waitFor(predicate: () => boolean, what: string, timeoutMs = 30_000) {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (predicate()) return;
    await sleep(25);
  }
  throw new Error(`timed out waiting for ${what}`);
}

function properColors(view: View, vertex: number): number[] {
  // independent legality mirror from the raw board: differs from current
  // color and from every neighbor color
  const neighbors = view.graph.edges
    .filter(([u, v]) => u === vertex || v === vertex)
    .map(([u, v]) => (u === vertex ? v : u));
  const out: number[] = [];
  for (let c = 1; c <= view.k; c++) {
    if (c === view.colors[vertex]) continue;
    if (neighbors.some((u) => view.colors[u] === c)) continue;
    out.push(c);
  }
  return out;
}

describe('scripted session against the live engine', () => {
  it('plays three full rounds of legal clicks without the engine losing', async () => {
    const el = buildDom();
    const app = new App(el);
    el.setup.dispatchEvent(new Event('submit', { bubbles: true, cancelable: true }));
    await waitFor(() => app.view !== null, 'session creation');

    let clicks = 0;
    while (app.view!.status.rounds_completed < 3) {
      const view = app.view!;
      expect(view.status.kind).toBe('ongoing');
      expect(view.mover).toBe('bob');
      expect(view.round).toBe(view.status.rounds_completed + 1);

      const selectable = app.selectable();
      expect(selectable.length).toBeGreaterThan(0);
      const vertex = selectable[clicks % selectable.length];

      const circle = el.board.querySelector(`[data-vertex="${vertex}"]`)!;
      circle.dispatchEvent(new Event('click', { bubbles: true }));
      const offered = app.offered();
      // the picker must only ever offer moves the raw rules allow
      expect(offered.length).toBeGreaterThan(0);
      const independent = properColors(view, vertex);
      for (const color of offered) {
        expect(independent).toContain(color);
        expect(color).not.toBe(view.colors[vertex]);
      }

      const before = view;
      const btn = el.board.querySelector('.color-btn') as HTMLButtonElement;
      btn.click();
      await waitFor(() => app.view !== before && !app.busy, 'engine reply');
      clicks += 1;
      expect(app.view!.status.kind).not.toBe('bob_won');
    }
    expect(app.view!.status.rounds_completed).toBeGreaterThanOrEqual(3);
    expect(app.view!.round).toBe(app.view!.status.rounds_completed + 1);
    expect(el.history.children.length).toBe(app.view!.history.length);
  }, 120_000);

  it('rejects a same-color recolor client-side and renders the 422 hint when forced', async () => {
    const created = await api.createSession({
      graph: 'path:3',
      variant: 'a',
      k: 3,
      human_role: 'bob',
    });
    let view = created.view;
    // play one full round so every vertex carries a color
    while (view.round1) {
      const entry = view.legal_moves[0];
      view = await api.postMove(created.id, entry.vertex, entry.colors[0]);
    }
    expect(view.mover).toBe('bob');
    const vertex = view.legal_moves[0].vertex;
    const current = view.colors[vertex];
    expect(current).toBeGreaterThan(0);

    // client-side mirror refuses to submit
    const verdict = checkMove(view, vertex, current);
    expect(verdict.ok).toBe(false);
    expect(legalColorsFor(view, vertex)).not.toContain(current);

    // forcing the request through anyway surfaces the server's legal set
    let err: ServiceError | null = null;
    try {
      await api.postMove(created.id, vertex, current);
    } catch (e) {
      err = e as ServiceError;
    }
    expect(err).not.toBeNull();
    expect(err!.payload.status).toBe(422);
    expect(err!.payload.legal_colors).toEqual(legalColorsFor(view, vertex));

    const el = buildDom();
    const app = new App(el);
    app.fail(app.describe(err!, 'move rejected'));
    expect(el.error.textContent).toMatch(/legal colors/);
    for (const c of err!.payload.legal_colors ?? []) {
      expect(el.error.textContent).toContain(String(c));
    }
  }, 120_000);

  it('defaults k from the solver probe', async () => {
    const el = buildDom();
    const app = new App(el);
    await app.suggestK('path:4', 'a');
    const kInput = el.setup.elements.namedItem('k') as HTMLInputElement;
    expect(kInput.value).toBe('4');
  }, 60_000);
});
