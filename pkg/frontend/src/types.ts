// Shapes returned by the play service JSON API.

export interface GraphInfo {
  label: string;
  n: number;
  edges: [number, number][];
}

export interface LegalEntry {
  vertex: number;
  colors: number[];
}

export interface StatusInfo {
  kind: 'ongoing' | 'bob_won' | 'alice_round_win';
  reason?: string;
  stuck_vertex?: number | null;
  rounds_completed: number;
}

export interface AnalysisInfo {
  state_status: 'alice_safe' | 'bob_attracted';
  rank: number | null;
}

export interface HistoryEntry {
  round: number;
  mover: 'alice' | 'bob';
  vertex: number;
  from: number;
  to: number;
}

export interface View {
  session: string;
  graph: GraphInfo;
  variant: string;
  k: number;
  human_role: 'alice' | 'bob';
  colors: number[];
  moved: number[];
  mover: 'alice' | 'bob';
  round: number;
  round1: boolean;
  palette: number[];
  status: StatusInfo;
  legal_moves: LegalEntry[];
  analysis?: AnalysisInfo;
  history: HistoryEntry[];
}

export interface ApiError {
  status: number;
  error: string;
  legal_colors?: number[];
}

export class ServiceError extends Error {
  constructor(public readonly payload: ApiError) {
    super(payload.error);
  }
}
