// Thin fetch client over the play service; the server is the rule authority.

import { ServiceError, View } from './types.js';

let apiBase = '';

export function setApiBase(base: string): void {
  apiBase = base.replace(/\/+$/, '');
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(`${apiBase}${path}`, init);
  const body = await resp.json().catch(() => ({ error: `bad response (${resp.status})` }));
  if (!resp.ok) {
    throw new ServiceError({ status: resp.status, ...body });
  }
  return body as T;
}

export function health(): Promise<{ ok: boolean }> {
  return request('/health');
}

export function chiProbe(graph: string, variant: string): Promise<{ chi: number | null }> {
  const params = new URLSearchParams({ graph, variant });
  return request(`/chi?${params}`);
}

export function createSession(params: {
  graph: string;
  variant: string;
  k: number;
  human_role: 'alice' | 'bob';
}): Promise<{ id: string; view: View }> {
  return request('/session', {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(params),
  });
}

export function getView(id: string): Promise<View> {
  return request(`/session/${id}`);
}

export function postMove(id: string, vertex: number, color: number): Promise<View> {
  return request(`/session/${id}/move`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify({ vertex, color }),
  });
}

export function resetSession(id: string): Promise<View> {
  return request(`/session/${id}/reset`, { method: 'POST' });
}
