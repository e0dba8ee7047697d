import { App } from './app.js';

function grab<T extends Element>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as unknown as T;
}

document.addEventListener('DOMContentLoaded', () => {
  new App({
    setup: grab<HTMLFormElement>('setup'),
    board: grab<HTMLElement>('board'),
    banner: grab<HTMLElement>('banner'),
    analysis: grab<HTMLElement>('analysis'),
    history: grab<HTMLElement>('history'),
    error: grab<HTMLElement>('error'),
    exportBtn: grab<HTMLButtonElement>('export'),
    resetBtn: grab<HTMLButtonElement>('reset'),
  });
});
