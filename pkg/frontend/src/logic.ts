// Pure view helpers: legality mirroring, layout, analysis wording.
// Client checks only mirror the server's rules; the server always re-validates.

import { GraphInfo, View } from './types.js';

export const COLOR_SWATCH = [
  '#e6e6e6', // 0 = uncolored
  '#e4572e', '#2e86ab', '#f5bb00', '#3fa34d', '#9b5de5',
  '#ff70a6', '#00bbf9', '#8f6f3e', '#16db93', '#d62246',
];

export function swatch(color: number): string {
  return COLOR_SWATCH[color] ?? '#555';
}

export function legalColorsFor(view: View, vertex: number): number[] {
  const entry = view.legal_moves.find((e) => e.vertex === vertex);
  return entry ? entry.colors : [];
}

export interface MoveCheck {
  ok: boolean;
  reason?: string;
}

export function checkMove(view: View, vertex: number, color: number): MoveCheck {
  if (view.status.kind !== 'ongoing') return { ok: false, reason: 'the game is over' };
  if (view.mover !== view.human_role) return { ok: false, reason: 'not your turn' };
  if (view.moved.includes(vertex)) {
    return { ok: false, reason: 'already chosen this round' };
  }
  if (color === view.colors[vertex]) {
    return { ok: false, reason: 'a vertex must change color' };
  }
  const legal = legalColorsFor(view, vertex);
  if (!legal.includes(color)) {
    return { ok: false, reason: `legal colors here: ${legal.join(', ') || 'none'}` };
  }
  return { ok: true };
}

export function analysisText(view: View): string {
  if (!view.analysis) return '';
  const engine = view.human_role === 'alice' ? 'bob' : 'alice';
  if (view.analysis.state_status === 'alice_safe') {
    return view.human_role === 'alice'
      ? 'You are in a safe position.'
      : 'The engine is in a safe position: it can survive forever.';
  }
  const rank = view.analysis.rank ?? 0;
  const turns = Math.ceil(rank / 2);
  if (engine === 'bob') {
    return `Engine can force a win in ≤ ${turns} of its turns.`;
  }
  return `Bob can force a win within ${rank} moves — the engine seat is lost.`;
}

export function statusText(view: View): string {
  const s = view.status;
  if (s.kind === 'bob_won') {
    const vertex = s.stuck_vertex == null ? '' : ` (vertex ${s.stuck_vertex} is stuck)`;
    return `Bob wins${vertex}.`;
  }
  if (s.kind === 'alice_round_win') {
    return 'Round completed with a proper coloring: Alice wins.';
  }
  const turn = view.mover === view.human_role ? 'your move' : 'engine thinking';
  return `Round ${view.round} — ${view.mover} to move (${turn}).`;
}

export interface Point {
  x: number;
  y: number;
}

export function vertexLayout(graph: GraphInfo, width: number, height: number): Point[] {
  const { label, n } = graph;
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 36;
  const family = label.split(':')[0];
  if (family === 'star' && n > 1) {
    const pts: Point[] = [{ x: cx, y: cy }];
    for (let i = 1; i < n; i++) {
      const angle = (2 * Math.PI * (i - 1)) / (n - 1) - Math.PI / 2;
      pts.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
    }
    return pts;
  }
  if (family === 'path') {
    const step = (width - 80) / Math.max(1, n - 1);
    return Array.from({ length: n }, (_, i) => ({ x: 40 + i * step, y: cy }));
  }
  if (family === 'grid') {
    const [rows, cols] = label.split(':')[1].split(',').map(Number);
    const pts: Point[] = [];
    for (let r = 0; r < rows; r++) {
      for (let c = 0; c < cols; c++) {
        pts.push({
          x: 60 + (c * (width - 120)) / Math.max(1, cols - 1),
          y: 60 + (r * (height - 120)) / Math.max(1, rows - 1),
        });
      }
    }
    return pts;
  }
  if (family === 'biclique') {
    const [m] = label.split(':')[1].split(',').map(Number);
    const pts: Point[] = [];
    for (let i = 0; i < n; i++) {
      const side = i < m ? 0 : 1;
      const idx = side === 0 ? i : i - m;
      const count = side === 0 ? m : n - m;
      pts.push({
        x: side === 0 ? 70 : width - 70,
        y: 50 + (idx * (height - 100)) / Math.max(1, count - 1),
      });
    }
    return pts;
  }
  return Array.from({ length: n }, (_, i) => {
    const angle = (2 * Math.PI * i) / n - Math.PI / 2;
    return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
  });
}

export function historyBlob(view: View): string {
  return JSON.stringify(
    {
      graph: view.graph.label,
      variant: view.variant,
      k: view.k,
      human_role: view.human_role,
      status: view.status,
      history: view.history,
    },
    null,
    2,
  );
}
