"""HTTP/JSON play service: humans against the solved optimal engine.

Sessions are solved synchronously at creation (instances over the state
budget are rejected with 413) and play happens on the raw, unreduced arena
so the board the human sees never jumps under relabeling.  The engine side
always plays the recommended move from the solved status table.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .graphs import Graph, GraphSpecError, parse_graph_spec
from .rules import (
    ALICE_WINS_ROUND,
    BOB_WINS,
    ONGOING,
    GameState,
    IllegalMove,
    Move,
    PLAYER_NAMES,
    VariantConfig,
    apply_move,
    initial_state,
    legal_colors,
    legal_moves,
    terminal_status,
    variant_from_name,
)
from .solver import Arena, BudgetExceeded, StatusTable, best_move, chi_sweep, solve
from .statespace import FULL_REDUCTION, NO_REDUCTION

SERVICE_BUDGET = 3_000_000


@dataclass
class Session:
    sid: str
    graph: Graph
    cfg: VariantConfig
    k: int
    human: int  # ALICE or BOB
    arena: Arena
    table: StatusTable
    current: GameState = None  # type: ignore[assignment]
    history: list[dict] = field(default_factory=list)
    rounds_completed: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def engine(self) -> int:
        return 1 - self.human


def _status_payload(session: Session):
    g, cfg, s = session.graph, session.cfg, session.current
    status = terminal_status(g, s, cfg)
    if status.kind == BOB_WINS:
        return {
            "kind": "bob_won",
            "reason": status.reason,
            "stuck_vertex": status.vertex,
            "rounds_completed": session.rounds_completed,
        }
    if status.kind == ALICE_WINS_ROUND:
        return {"kind": "alice_round_win", "rounds_completed": session.rounds_completed}
    return {"kind": "ongoing", "rounds_completed": session.rounds_completed}


def _view(session: Session) -> dict:
    g, cfg, s = session.graph, session.cfg, session.current
    status = _status_payload(session)
    ongoing = status["kind"] == "ongoing"
    payload = {
        "session": session.sid,
        "graph": {"label": g.label, "n": g.n, "edges": g.edges()},
        "variant": cfg.display_name(),
        "k": session.k,
        "human_role": PLAYER_NAMES[session.human],
        "colors": list(s.colors),
        "moved": [v for v in range(g.n) if s.moved >> v & 1],
        "mover": PLAYER_NAMES[s.mover],
        "round": session.rounds_completed + 1,
        "round1": s.round1,
        "palette": [c for c in range(1, s.k + 1) if s.palette >> c & 1],
        "status": status,
        "history": session.history,
        "legal_moves": [],
    }
    if ongoing and s.mover == session.human:
        by_vertex: dict[int, list[int]] = {}
        for m in legal_moves(g, s, cfg):
            by_vertex.setdefault(m.vertex, []).append(m.color)
        payload["legal_moves"] = [
            {"vertex": v, "colors": colors} for v, colors in sorted(by_vertex.items())
        ]
    idx = session.arena.state_index(s)
    if idx is not None:
        attracted = bool(session.table.in_attr[idx])
        payload["analysis"] = {
            "state_status": "bob_attracted" if attracted else "alice_safe",
            "rank": session.table.rank[idx] if attracted else None,
        }
    return payload


def _record(session: Session, mover: int, m: Move, previous: GameState):
    session.history.append(
        {
            "round": session.rounds_completed + 1,
            "mover": PLAYER_NAMES[mover],
            "vertex": m.vertex,
            "from": previous.colors[m.vertex],
            "to": m.color,
        }
    )


def _advance(session: Session, m: Move):
    g, cfg = session.graph, session.cfg
    before = session.current
    after = apply_move(g, before, m, cfg)
    _record(session, before.mover, m, before)
    if after.moved == 0 and before.moved:
        session.rounds_completed += 1
    session.current = after


def _play_engine_turns(session: Session):
    g, cfg = session.graph, session.cfg
    while (
        terminal_status(g, session.current, cfg).kind == ONGOING
        and session.current.mover == session.engine
    ):
        m = best_move(session.arena, session.table, session.current)
        _advance(session, m)


def create_app(budget: int = SERVICE_BUDGET, ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="eternal coloring game service")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=r"https?://(localhost|127\.0\.0\.1)(:\d+)?",
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def _error(code: int, message: str, **extra):
        return JSONResponse({"error": message, **extra}, status_code=code)

    @app.get("/health")
    def health():
        return {"ok": True}

    @app.get("/chi")
    def chi_probe(graph: str, variant: str = "a"):
        """Quick game-value probe so clients can default k sensibly."""
        try:
            g = parse_graph_spec(graph)
            cfg = variant_from_name(variant, g.n)
        except (GraphSpecError, ValueError) as exc:
            return _error(400, str(exc))
        try:
            report = chi_sweep(g, cfg, policy=FULL_REDUCTION, budget=budget)
        except BudgetExceeded:
            return _error(413, "instance too large")
        return {"graph": g.label, "variant": cfg.display_name(), "chi": report.chi}

    @app.post("/session")
    async def create_session(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body must be JSON")
        if not isinstance(body, dict):
            return _error(400, "request body must be a JSON object")
        try:
            graph = parse_graph_spec(str(body["graph"]))
            k = int(body["k"])
            cfg = variant_from_name(str(body.get("variant", "a")), graph.n)
            human = str(body.get("human_role", "bob")).lower()
            if human not in PLAYER_NAMES:
                raise ValueError(f"human_role must be one of {PLAYER_NAMES}")
            if k < 1 or k > 30:
                raise ValueError("k must be in 1..30")
        except (KeyError, TypeError, ValueError, GraphSpecError) as exc:
            return _error(400, f"bad session request: {exc}")
        try:
            # raw arena: the human plays on the exact board, never a relabeling
            arena, table = solve(graph, k, cfg, NO_REDUCTION, budget)
        except BudgetExceeded:
            return _error(413, "instance too large for interactive solving")
        session = Session(
            sid=secrets.token_hex(8),
            graph=graph,
            cfg=cfg,
            k=k,
            human=PLAYER_NAMES.index(human),
            arena=arena,
            table=table,
        )
        session.current = initial_state(graph, k, cfg)
        _play_engine_turns(session)
        with registry_lock:
            sessions[session.sid] = session
        return {"id": session.sid, "view": _view(session)}

    def _get(sid: str) -> Session | None:
        with registry_lock:
            return sessions.get(sid)

    @app.get("/session/{sid}")
    def get_view(sid: str):
        session = _get(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            return _view(session)

    @app.post("/session/{sid}/move")
    async def human_move(sid: str, request: Request):
        session = _get(sid)
        if session is None:
            return _error(404, "unknown session")
        try:
            body = await request.json()
            vertex = int(body["vertex"])
            color = int(body["color"])
        except Exception:
            return _error(400, "move body must be JSON with vertex and color")
        with session.lock:
            g, cfg, s = session.graph, session.cfg, session.current
            if terminal_status(g, s, cfg).kind != ONGOING or s.mover != session.human:
                return _error(409, "not your turn")
            if not 0 <= vertex < g.n:
                return _error(422, "no such vertex", legal_colors=[])
            try:
                legal = legal_colors(g, s, vertex, cfg)
            except IllegalMove:
                return _error(422, "vertex already chosen this round", legal_colors=[])
            if color not in legal:
                return _error(422, "illegal color for this vertex", legal_colors=legal)
            _advance(session, Move(vertex, color))
            _play_engine_turns(session)
            return _view(session)

    @app.post("/session/{sid}/reset")
    def reset(sid: str):
        session = _get(sid)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            session.current = initial_state(session.graph, session.k, session.cfg)
            session.history = []
            session.rounds_completed = 0
            _play_engine_turns(session)
            return _view(session)

    if ui_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
