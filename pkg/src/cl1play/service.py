"""HTTP interface for checking proofs and playing sessions.

Sessions live in memory, one lock per session so concurrent moves on
the same game serialize, with idle eviction.  Every state response is
self-contained: formula text, a node tree with per-node paths and
clickability flags, the legal moves, the run so far, the outcome, and
the proof's strategy graph.
"""
from __future__ import annotations

import threading
import time
from itertools import product

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import classical
from .engine import (
    GameSession, IllegalMove, Role, Status, export_strategy, new_session,
    parse_move,
)
from .formulas import (
    EvaluationError, Formula, Path, atoms, children, elementarize, evaluate,
    machine_choice_occurrences, path_str, render,
)
from .proofs import check_text

DEFAULT_TTL_SECONDS = 3600.0
TRUTH_TABLE_MAX_ATOMS = 6


class CheckRequest(BaseModel):
    proof: str
    mode: str = "iso"


class SessionRequest(BaseModel):
    proof: str
    mode: str = "iso"
    interpretation: dict[str, bool] | None = None
    illegal_move_policy: str = "reject"


class MoveRequest(BaseModel):
    move: str


def _error(status: int, code: str, message: str, details=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if details is not None:
        body["details"] = details
    return JSONResponse(status_code=status, content=body)


def _formula_tree(f: Formula, env_paths: set[Path], machine_paths: set[Path],
                  path: Path = ()) -> dict:
    kind = type(f).__name__.lower()
    return {
        "kind": kind,
        "path": path_str(path),
        "text": render(f),
        "env_choosable": path in env_paths,
        "machine_choosable": path in machine_paths,
        "children": [
            _formula_tree(c, env_paths, machine_paths, path + (i,))
            for i, c in enumerate(children(f), start=1)
        ],
    }


def _truth_table(f: Formula) -> list[dict] | None:
    elem = elementarize(f)
    names = sorted(atoms(elem))
    if len(names) > TRUTH_TABLE_MAX_ATOMS:
        return None
    rows = []
    for values in product((False, True), repeat=len(names)):
        assignment = dict(zip(names, values))
        rows.append({"assignment": assignment, "value": evaluate(elem, assignment)})
    return rows


class _Entry:
    def __init__(self, session: GameSession, strategy: dict):
        self.session = session
        self.strategy = strategy
        self.lock = threading.Lock()
        self.last_access = time.monotonic()


class SessionStore:
    def __init__(self, ttl: float = DEFAULT_TTL_SECONDS):
        self.ttl = ttl
        self._entries: dict[str, _Entry] = {}
        self._lock = threading.Lock()

    def _sweep(self):
        now = time.monotonic()
        stale = [sid for sid, e in self._entries.items()
                 if now - e.last_access > self.ttl]
        for sid in stale:
            del self._entries[sid]

    def add(self, session: GameSession, strategy: dict) -> _Entry:
        with self._lock:
            self._sweep()
            entry = _Entry(session, strategy)
            self._entries[session.id] = entry
            return entry

    def get(self, session_id: str) -> _Entry | None:
        with self._lock:
            self._sweep()
            entry = self._entries.get(session_id)
            if entry is not None:
                entry.last_access = time.monotonic()
            return entry

    def delete(self, session_id: str) -> bool:
        with self._lock:
            self._sweep()
            return self._entries.pop(session_id, None) is not None


def session_state(session: GameSession, strategy: dict) -> dict:
    legal = session.legal_env_moves()
    env_paths = {m.path for m in legal}
    machine_paths = {o.path for o in machine_choice_occurrences(session.current_formula)}
    return {
        "id": session.id,
        "status": session.status.value,
        "line": session.current_line,
        "formula": render(session.current_formula),
        "tree": _formula_tree(session.current_formula, env_paths, machine_paths),
        "legal_moves": [m.text for m in legal],
        "run": [{"role": m.role.value, "move": m.text} for m in session.run],
        "outcome": session.outcome().to_dict(),
        "interpretation": session.interpretation,
        "mode": session.proof.mode,
        "elementarization": render(elementarize(session.current_formula)),
        "atoms": sorted(atoms(session.current_formula)),
        "truth_table": _truth_table(session.current_formula),
        "strategy": strategy,
    }


def create_app(session_ttl: float = DEFAULT_TTL_SECONDS,
               static_dir: str | None = None,
               max_atoms: int = classical.DEFAULT_MAX_ATOMS) -> FastAPI:
    app = FastAPI(title="cl1play", version="0.1.0")
    store = SessionStore(ttl=session_ttl)

    @app.exception_handler(RequestValidationError)
    async def bad_request(request: Request, exc: RequestValidationError):
        return _error(400, "bad_request", "malformed request body",
                      details=exc.errors())

    @app.post("/api/check")
    def check(body: CheckRequest):
        if body.mode not in ("iso", "strict"):
            return _error(400, "bad_mode", f"unknown mode {body.mode!r}")
        checked = check_text(body.proof, mode=body.mode, max_atoms=max_atoms)
        return {
            "valid": checked.valid,
            "mode": checked.mode,
            "lines": len(checked.lines),
            "diagnostics": [d.to_dict() for d in checked.diagnostics],
        }

    @app.post("/api/sessions", status_code=201)
    def create_session(body: SessionRequest):
        if body.mode not in ("iso", "strict"):
            return _error(400, "bad_mode", f"unknown mode {body.mode!r}")
        if body.illegal_move_policy not in ("reject", "forfeit"):
            return _error(400, "bad_policy",
                          f"unknown illegal_move_policy {body.illegal_move_policy!r}")
        checked = check_text(body.proof, mode=body.mode, max_atoms=max_atoms)
        if not checked.valid:
            return _error(422, "invalid_proof", "the proof does not check",
                          details=[d.to_dict() for d in checked.diagnostics])
        try:
            session = new_session(checked, body.interpretation,
                                  body.illegal_move_policy, max_atoms=max_atoms)
        except EvaluationError as exc:
            return _error(400, "bad_interpretation", str(exc))
        strategy = export_strategy(checked).to_dict()
        entry = store.add(session, strategy)
        with entry.lock:
            return {"id": session.id, "state": session_state(session, strategy)}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        with entry.lock:
            return {"state": session_state(entry.session, entry.strategy)}

    @app.post("/api/sessions/{session_id}/moves")
    def post_move(session_id: str, body: MoveRequest):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        with entry.lock:
            try:
                move = parse_move(body.move)
                entry.session.apply_env_move(move)
            except IllegalMove as exc:
                return _error(409, "illegal_move", str(exc),
                              details={"legal_moves": [m.text for m in exc.legal]})
            except Exception as exc:  # bad move syntax and the like
                return _error(409, "illegal_move", str(exc),
                              details={"legal_moves": [
                                  m.text for m in entry.session.legal_env_moves()]})
            return {"state": session_state(entry.session, entry.strategy)}

    @app.post("/api/sessions/{session_id}/stop")
    def stop_session(session_id: str):
        entry = store.get(session_id)
        if entry is None:
            return _error(404, "unknown_session", f"no session {session_id!r}")
        with entry.lock:
            entry.session.stop()
            return {"state": session_state(entry.session, entry.strategy)}

    @app.delete("/api/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        if not store.delete(session_id):
            return _error(404, "unknown_session", f"no session {session_id!r}")

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
