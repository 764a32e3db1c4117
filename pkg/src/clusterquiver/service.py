"""HTTP session service exposing the engine to the explorer UI.

Endpoints are versioned under /v1/.  A session holds a root seed and a
current seed; mutations are serialized per session (single-writer), engine
calls are pure, and replaying the recorded history from the root always
reproduces the current seed exactly.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from .quiver import QuiverInvariantError
from .quiverio import QuiverFormatError, quiver_from_obj, quiver_to_obj
from .seeds import (
    EqualityMode,
    STRICT,
    Seed,
    apply_word,
    initial_seed,
    mutate_seed,
    seeds_equal,
)


class CreateSessionBody(BaseModel):
    quiver: dict
    mode: dict | None = None  # {"kind": "symmetric"|"strict", "allow_sign": bool}


class MutateBody(BaseModel):
    vertex: int


class WordBody(BaseModel):
    word: list[int]


@dataclass
class Session:
    id: str
    root: Seed
    current: Seed
    history: list[int]
    mode: EqualityMode
    lock: threading.Lock = field(default_factory=threading.Lock)


def _mode_from_obj(obj: dict | None) -> EqualityMode:
    if not obj:
        return EqualityMode.symmetric()
    kind = obj.get("kind", "symmetric")
    if kind == "strict":
        return STRICT
    return EqualityMode.symmetric(bool(obj.get("allow_sign", True)))


def _witness_obj(witness):
    if witness is None:
        return None
    sigma, sign = witness
    return {
        "sigma": list(sigma.images),
        "sigma_cycles": sigma.cycle_str(),
        "sign": sign,
    }


def session_state(s: Session) -> dict:
    strict_w = seeds_equal(s.root, s.current, STRICT)
    sym_w = seeds_equal(s.root, s.current, s.mode) if s.mode.kind != "strict" else None
    return {
        "id": s.id,
        "n": s.root.quiver.n,
        "mode": {"kind": s.mode.kind, "allow_sign": s.mode.allow_sign},
        "history": list(s.history),
        "cluster": [p.factored_str() for p in s.current.cluster],
        "cluster_expanded": [str(p) for p in s.current.cluster],
        "quiver": quiver_to_obj(s.current.quiver),
        "loop": {
            "strict": strict_w is not None,
            "symmetric": sym_w is not None,
            "witness": _witness_obj(sym_w if sym_w is not None else strict_w),
        },
    }


def create_app() -> FastAPI:
    app = FastAPI(title="clusterquiver", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    def get_session(session_id: str) -> Session:
        s = sessions.get(session_id)
        if s is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return s

    @app.post("/v1/sessions")
    def create_session(body: CreateSessionBody):
        try:
            quiver = quiver_from_obj(body.quiver)
        except QuiverFormatError as exc:
            raise HTTPException(status_code=400, detail=f"parse error: {exc}")
        except QuiverInvariantError as exc:
            raise HTTPException(status_code=422, detail=f"invariant violation: {exc}")
        mode = _mode_from_obj(body.mode)
        root = initial_seed(quiver)
        session = Session(uuid.uuid4().hex, root, root, [], mode)
        with registry_lock:
            sessions[session.id] = session
        return session_state(session)

    @app.get("/v1/sessions/{session_id}")
    def get_state(session_id: str):
        return session_state(get_session(session_id))

    @app.post("/v1/sessions/{session_id}/mutate")
    def mutate(session_id: str, body: MutateBody):
        s = get_session(session_id)
        with s.lock:
            try:
                s.current = mutate_seed(s.current, body.vertex)
            except QuiverInvariantError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            s.history.append(body.vertex)
            return session_state(s)

    @app.post("/v1/sessions/{session_id}/undo")
    def undo(session_id: str):
        s = get_session(session_id)
        with s.lock:
            if not s.history:
                return session_state(s)
            last = s.history.pop()
            # mutation is involutive: re-applying the last vertex undoes it
            s.current = mutate_seed(s.current, last)
            return session_state(s)

    @app.post("/v1/sessions/{session_id}/word")
    def replay_word(session_id: str, body: WordBody):
        s = get_session(session_id)
        with s.lock:
            try:
                trace = apply_word(s.current, body.word)
            except QuiverInvariantError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
            s.current = trace.final
            s.history.extend(int(k) for k in body.word)
            return session_state(s)

    @app.delete("/v1/sessions/{session_id}")
    def close_session(session_id: str):
        with registry_lock:
            sessions.pop(session_id, None)
        return {"ok": True}

    return app
