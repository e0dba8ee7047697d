// SVG board: edges, colorable vertices, moved badges, per-vertex color picker.

import { legalColorsFor, swatch, vertexLayout } from './logic.js';
import { View } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const WIDTH = 520;
const HEIGHT = 400;

export interface BoardHandlers {
  onPick(vertex: number, color: number): void;
}

export function renderBoard(
  container: HTMLElement,
  view: View,
  handlers: BoardHandlers,
  selected: number | null,
): void {
  container.innerHTML = '';
  const svg = document.createElementNS(SVG_NS, 'svg');
  svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute('class', 'board');
  const points = vertexLayout(view.graph, WIDTH, HEIGHT);

  for (const [u, v] of view.graph.edges) {
    const line = document.createElementNS(SVG_NS, 'line');
    line.setAttribute('x1', String(points[u].x));
    line.setAttribute('y1', String(points[u].y));
    line.setAttribute('x2', String(points[v].x));
    line.setAttribute('y2', String(points[v].y));
    line.setAttribute('class', 'edge');
    svg.appendChild(line);
  }

  const humanTurn =
    view.status.kind === 'ongoing' && view.mover === view.human_role;
  const stuck = view.status.stuck_vertex;

  for (let v = 0; v < view.graph.n; v++) {
    const group = document.createElementNS(SVG_NS, 'g');
    const selectable = humanTurn && legalColorsFor(view, v).length > 0;
    const circle = document.createElementNS(SVG_NS, 'circle');
    circle.setAttribute('cx', String(points[v].x));
    circle.setAttribute('cy', String(points[v].y));
    circle.setAttribute('r', '20');
    circle.setAttribute('fill', swatch(view.colors[v]));
    const classes = ['vertex'];
    if (selectable) classes.push('selectable');
    if (selected === v) classes.push('selected');
    if (stuck === v) classes.push('stuck');
    circle.setAttribute('class', classes.join(' '));
    circle.setAttribute('data-vertex', String(v));
    group.appendChild(circle);

    const label = document.createElementNS(SVG_NS, 'text');
    label.setAttribute('x', String(points[v].x));
    label.setAttribute('y', String(points[v].y + 5));
    label.setAttribute('class', 'vertex-label');
    label.textContent = view.colors[v] ? `${v}:${view.colors[v]}` : String(v);
    group.appendChild(label);

    if (view.moved.includes(v)) {
      const badge = document.createElementNS(SVG_NS, 'circle');
      badge.setAttribute('cx', String(points[v].x + 15));
      badge.setAttribute('cy', String(points[v].y - 15));
      badge.setAttribute('r', '5');
      badge.setAttribute('class', 'moved-badge');
      group.appendChild(badge);
    }
    svg.appendChild(group);
  }
  container.appendChild(svg);

  const picker = document.createElement('div');
  picker.className = 'picker';
  if (selected !== null && humanTurn) {
    const title = document.createElement('span');
    title.textContent = `vertex ${selected}:`;
    picker.appendChild(title);
    for (const color of legalColorsFor(view, selected)) {
      const btn = document.createElement('button');
      btn.className = 'color-btn';
      btn.style.background = swatch(color);
      btn.textContent = String(color);
      btn.dataset.color = String(color);
      btn.addEventListener('click', () => handlers.onPick(selected, color));
      picker.appendChild(btn);
    }
  }
  container.appendChild(picker);
}

export function offeredColors(container: HTMLElement): number[] {
  return Array.from(container.querySelectorAll<HTMLButtonElement>('.color-btn')).map(
    (b) => Number(b.dataset.color),
  );
}

export function selectableVertices(container: HTMLElement): number[] {
  return Array.from(
    container.querySelectorAll<SVGCircleElement>('.vertex.selectable'),
  ).map((c) => Number(c.getAttribute('data-vertex')));
}
