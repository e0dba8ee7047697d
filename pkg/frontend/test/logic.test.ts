import { describe, expect, it } from 'vitest';

import {
  analysisText,
  checkMove,
  historyBlob,
  legalColorsFor,
  vertexLayout,
} from '../src/logic.js';
import { View } from '../src/types.js';

function sampleView(overrides: Partial<View> = {}): View {
  return {
    session: 's',
    graph: { label: 'path:3', n: 3, edges: [[0, 1], [1, 2]] },
    variant: 'a',
    k: 3,
    human_role: 'bob',
    colors: [2, 1, 2],
    moved: [1],
    mover: 'bob',
    round: 2,
    round1: false,
    palette: [],
    status: { kind: 'ongoing', rounds_completed: 1 },
    legal_moves: [
      { vertex: 0, colors: [3] },
      { vertex: 2, colors: [3] },
    ],
    analysis: { state_status: 'alice_safe', rank: null },
    history: [],
    ...overrides,
  };
}

describe('checkMove', () => {
  it('accepts a server-listed move', () => {
    expect(checkMove(sampleView(), 0, 3).ok).toBe(true);
  });

  it('rejects a same-color recolor before any request is sent', () => {
    const verdict = checkMove(sampleView(), 0, 2);
    expect(verdict.ok).toBe(false);
    expect(verdict.reason).toMatch(/change color/);
  });

  it('rejects moved vertices, foreign turns, and unlisted colors', () => {
    expect(checkMove(sampleView(), 1, 3).ok).toBe(false);
    expect(checkMove(sampleView({ mover: 'alice' }), 0, 3).ok).toBe(false);
    expect(checkMove(sampleView(), 0, 1).ok).toBe(false);
    expect(
      checkMove(sampleView({ status: { kind: 'bob_won', rounds_completed: 1 } }), 0, 3).ok,
    ).toBe(false);
  });
});

describe('legalColorsFor', () => {
  it('mirrors the server list and is empty elsewhere', () => {
    expect(legalColorsFor(sampleView(), 0)).toEqual([3]);
    expect(legalColorsFor(sampleView(), 1)).toEqual([]);
  });
});

describe('analysisText', () => {
  it('reports safety to the defender', () => {
    expect(analysisText(sampleView({ human_role: 'alice' }))).toMatch(/safe position/);
  });

  it('reports the forced-win horizon in engine turns', () => {
    const text = analysisText(
      sampleView({
        human_role: 'alice',
        analysis: { state_status: 'bob_attracted', rank: 12 },
      }),
    );
    expect(text).toMatch(/6 of its turns/);
  });
});

describe('vertexLayout', () => {
  it('puts the star center in the middle', () => {
    const pts = vertexLayout({ label: 'star:4', n: 5, edges: [] }, 520, 400);
    expect(pts).toHaveLength(5);
    expect(pts[0].x).toBeCloseTo(260);
    expect(pts[0].y).toBeCloseTo(200);
  });

  it('lays grids on a lattice and paths on a line', () => {
    const grid = vertexLayout({ label: 'grid:2,3', n: 6, edges: [] }, 520, 400);
    expect(new Set(grid.map((p) => p.y)).size).toBe(2);
    const path = vertexLayout({ label: 'path:4', n: 4, edges: [] }, 520, 400);
    expect(new Set(path.map((p) => p.y)).size).toBe(1);
  });

  it('separates biclique sides', () => {
    const pts = vertexLayout({ label: 'biclique:2,3', n: 5, edges: [] }, 520, 400);
    expect(new Set(pts.slice(0, 2).map((p) => p.x)).size).toBe(1);
    expect(new Set(pts.slice(2).map((p) => p.x)).size).toBe(1);
    expect(pts[0].x).not.toBe(pts[2].x);
  });

  it('falls back to a circle', () => {
    const pts = vertexLayout({ label: 'file:whatever', n: 6, edges: [] }, 520, 400);
    expect(pts).toHaveLength(6);
  });
});

describe('historyBlob', () => {
  it('exports game metadata and the move list', () => {
    const view = sampleView({
      history: [{ round: 1, mover: 'alice', vertex: 1, from: 0, to: 1 }],
    });
    const parsed = JSON.parse(historyBlob(view));
    expect(parsed.graph).toBe('path:3');
    expect(parsed.history).toHaveLength(1);
  });
});
