import { beforeEach, describe, expect, it } from 'vitest';

import { offeredColors, renderBoard, selectableVertices } from '../src/board.js';
import { View } from '../src/types.js';

const view: View = {
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
};

describe('renderBoard', () => {
  let container: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="board"></div>';
    container = document.getElementById('board')!;
  });

  it('marks exactly the legal vertices selectable', () => {
    renderBoard(container, view, { onPick: () => {} }, null);
    expect(selectableVertices(container)).toEqual([0, 2]);
  });

  it('shows a moved badge for vertices already chosen this round', () => {
    renderBoard(container, view, { onPick: () => {} }, null);
    expect(container.querySelectorAll('.moved-badge')).toHaveLength(1);
  });

  it('offers only the legal colors of the selected vertex', () => {
    renderBoard(container, view, { onPick: () => {} }, 0);
    expect(offeredColors(container)).toEqual([3]);
  });

  it('offers nothing when it is not the human turn', () => {
    renderBoard(container, { ...view, mover: 'alice' }, { onPick: () => {} }, 0);
    expect(offeredColors(container)).toEqual([]);
    expect(selectableVertices(container)).toEqual([]);
  });

  it('routes color clicks through the handler', () => {
    const picks: Array<[number, number]> = [];
    renderBoard(container, view, { onPick: (v, c) => picks.push([v, c]) }, 2);
    (container.querySelector('.color-btn') as HTMLButtonElement).click();
    expect(picks).toEqual([[2, 3]]);
  });

  it('marks the stuck vertex on a lost board', () => {
    const lost: View = {
      ...view,
      mover: 'alice',
      legal_moves: [],
      status: { kind: 'bob_won', reason: 'mover_has_no_move', stuck_vertex: 1, rounds_completed: 1 },
    };
    renderBoard(container, lost, { onPick: () => {} }, null);
    expect(container.querySelectorAll('.vertex.stuck')).toHaveLength(1);
  });
});
