"""HTTP/JSON session service for the interactive proof assistant.

Sessions are in-memory, one proof each, with optimistic concurrency: every
mutation must quote the session's current revision and bumps it by one.
``/moves`` enumerates every applicable rule instance (found by probing
rule preconditions over all antecedent paths), applicable tactics filtered
by menu level, and discharges; every advertised move is accepted when
submitted back with schema-conforming arguments.

Diagrams travel both as structured JSON (contours/zones/shaded/missing as
arrays of arrays) and as canonical text.  Optionally serves the static web
UI and snapshots sessions to script files on shutdown.
"""

from __future__ import annotations

import logging
import threading
import time
import uuid
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from pathlib import Path as FsPath

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .diagram import (
    CompoundDiagram,
    Conjunction,
    EulerError,
    Implication,
    UnitaryDiagram,
    Zone,
    diagram_equal,
    iter_subtrees,
    missing_zones,
)
from .engine import Discharge, Proof, ProofState, is_finished, new_proof, append_step, StepRecord, undo_to
from .metrics import clutter_state, metrics_json, proof_metrics
from .rules import Direction, RuleApplication, RuleError, RuleName, copy_contour
from .semantics import cells_of_zone, empty_cells
from .tactics import REGISTRY, apply_tactic, run_tactic
from .textio import ParseError, format_action, parse_theorem_source, print_diagram, print_theorem, save_script

log = logging.getLogger("euler_tactics.service")


def _snapshot_sessions(store: "SessionStore", snapshot_dir: str | None) -> None:
    if not snapshot_dir:
        return
    out = FsPath(snapshot_dir)
    out.mkdir(parents=True, exist_ok=True)
    for session in store.snapshot():
        try:
            (out / f"{session.id}.proof").write_text(
                save_script(session.proof, session.name), encoding="utf-8"
            )
        except EulerError as exc:
            log.warning("could not snapshot session %s: %s", session.id, exc)


# ---------------------------------------------------------------------------
# Session store

@dataclass
class Session:
    id: str
    name: str
    proof: Proof
    created: float
    updated: float
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe map of independent sessions (single writer per session)."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, name: str, proof: Proof) -> Session:
        now = time.time()
        session = Session(uuid.uuid4().hex, name, proof, created=now, updated=now)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise HTTPException(404, {"error": "unknown-session", "message": session_id})
        return session

    def snapshot(self) -> list[Session]:
        with self._lock:
            return list(self._sessions.values())


# ---------------------------------------------------------------------------
# JSON payloads

def zone_json(z: Zone) -> list[str]:
    return list(z.labels)


def diagram_json(d: CompoundDiagram) -> dict:
    if isinstance(d, UnitaryDiagram):
        return {
            "kind": "unitary",
            "contours": d.sorted_contours(),
            "zones": [zone_json(z) for z in d.sorted_zones()],
            "shaded": [zone_json(z) for z in d.sorted_shaded()],
            "missing": [zone_json(z) for z in sorted(missing_zones(d))],
            "text": print_diagram(d),
        }
    if isinstance(d, Conjunction):
        return {
            "kind": "conjunction",
            "left": diagram_json(d.left),
            "right": diagram_json(d.right),
            "text": print_diagram(d),
        }
    raise EulerError(f"not a conjunctive diagram: {d!r}")


def goal_json(goal: Implication) -> dict:
    return {
        "antecedent": diagram_json(goal.antecedent),
        "consequent": diagram_json(goal.consequent),
        "text": print_theorem(goal),
    }


def state_json(state: ProofState, index: int) -> dict:
    return {
        "index": index,
        "subgoals": [goal_json(g) for g in state.subgoals],
        "clutter": clutter_state(state),
    }


def session_json(session: Session) -> dict:
    p = session.proof
    return {
        "id": session.id,
        "name": session.name,
        "revision": session.revision,
        "created": session.created,
        "updated": session.updated,
        "finished": is_finished(p),
        "states": [state_json(s, i) for i, s in enumerate(p.states)],
        "steps": [
            {"index": i, "text": format_action(s.action), "provenance": s.provenance}
            for i, s in enumerate(p.steps)
        ],
        "metrics": metrics_json(proof_metrics(p)),
    }


def _summary(session: Session) -> dict:
    p = session.proof
    return {
        "id": session.id,
        "revision": session.revision,
        "finished": is_finished(p),
        "state": state_json(p.current, len(p.states) - 1),
        "metrics": metrics_json(proof_metrics(p)),
    }


# ---------------------------------------------------------------------------
# Move enumeration

def _path_str(path: tuple[str, ...]) -> str:
    return "/".join(path) if path else "-"


def _parse_path_str(text: str) -> tuple[str, ...]:
    if text in ("-", "", None):
        return ()
    steps = tuple(text.split("/"))
    if any(s not in ("L", "R") for s in steps):
        raise HTTPException(422, {"error": "invalid-path", "message": text})
    return steps


def _rule_move(name, goal_index, path, args_schema, direction=None):
    return {
        "kind": "rule",
        "name": name.value,
        "goal_index": goal_index,
        "path": _path_str(path),
        "direction": direction.value if direction else None,
        "args_schema": args_schema,
    }


def _unitary_moves(u: UnitaryDiagram, goal_index: int, path) -> list[dict]:
    moves = []
    if u.contours:
        moves.append(_rule_move(
            RuleName.ERASE_CONTOUR, goal_index, path,
            {"type": "contour", "choices": u.sorted_contours()},
        ))
    if u.shaded:
        moves.append(_rule_move(
            RuleName.ERASE_SHADING, goal_index, path,
            {"type": "zone", "choices": [zone_json(z) for z in u.sorted_shaded()]},
        ))
    moves.append(_rule_move(
        RuleName.INTRODUCE_CONTOUR, goal_index, path,
        {"type": "contour", "fresh": True, "excluded": u.sorted_contours()},
    ))
    missing = sorted(missing_zones(u))
    if missing:
        moves.append(_rule_move(
            RuleName.INTRODUCE_SHADED_ZONE, goal_index, path,
            {"type": "zone", "choices": [zone_json(z) for z in missing]},
        ))
    removable = sorted(u.shaded - {Zone()})
    if removable:
        moves.append(_rule_move(
            RuleName.REMOVE_SHADED_ZONE, goal_index, path,
            {"type": "zone", "choices": [zone_json(z) for z in removable]},
        ))
    return moves


def _conjunction_moves(node: Conjunction, goal_index: int, path) -> list[dict]:
    moves = []
    if diagram_equal(node.left, node.right):
        moves.append(_rule_move(RuleName.IDEMPOTENCY, goal_index, path, None))
    left, right = node.left, node.right
    if not (isinstance(left, UnitaryDiagram) and isinstance(right, UnitaryDiagram)):
        return moves
    if left.contours == right.contours and left.zones == right.zones:
        moves.append(_rule_move(RuleName.COMBINE, goal_index, path, None))
    v = left.contours | right.contours
    forced = empty_cells(Conjunction(left, right), v)
    for direction in (Direction.LEFT_TO_RIGHT, Direction.RIGHT_TO_LEFT):
        src, dst = (left, right) if direction is Direction.LEFT_TO_RIGHT else (right, left)
        copyable = []
        for c in sorted(src.contours - dst.contours):
            try:
                copy_contour(src, dst, c)
            except RuleError:
                continue
            copyable.append(c)
        if copyable:
            moves.append(_rule_move(
                RuleName.COPY_CONTOUR, goal_index, path,
                {"type": "contour", "choices": copyable}, direction,
            ))
        targets = sorted(
            z for z in dst.zones - dst.shaded
            if cells_of_zone(z, dst.contours, v) <= forced
        )
        if targets:
            moves.append(_rule_move(
                RuleName.COPY_SHADING, goal_index, path,
                {"type": "zone_set", "choices": [zone_json(z) for z in targets]}, direction,
            ))
    return moves


def enumerate_moves(state: ProofState, goal: int | None, level: str) -> list[dict]:
    moves: list[dict] = []
    indices = range(len(state.subgoals)) if goal is None else [goal]
    for k in indices:
        if not 0 <= k < len(state.subgoals):
            raise HTTPException(422, {"error": "bad-index", "message": str(k)})
        subgoal = state.subgoals[k]
        for path, node in iter_subtrees(subgoal.antecedent):
            if isinstance(node, UnitaryDiagram):
                moves.extend(_unitary_moves(node, k, path))
            elif isinstance(node, Conjunction):
                moves.extend(_conjunction_moves(node, k, path))
        if isinstance(subgoal.antecedent, UnitaryDiagram) and diagram_equal(
            subgoal.antecedent, subgoal.consequent
        ):
            moves.append({"kind": "discharge", "goal_index": k})
        wanted = {"high": ("high",), "low": ("low",), "all": ("high", "low")}.get(level)
        if wanted is None:
            raise HTTPException(422, {"error": "bad-level", "message": level})
        for name, info in sorted(REGISTRY.items()):
            if info.level not in wanted:
                continue
            if run_tactic(info.fn, state, k) is not None:
                moves.append({
                    "kind": "tactic",
                    "name": name,
                    "goal_index": k,
                    "level": info.level,
                    "summary": info.summary,
                })
    return moves


# ---------------------------------------------------------------------------
# Request bodies

class CreateSessionRequest(BaseModel):
    theorem: str
    name: str | None = None


class MoveIn(BaseModel):
    kind: str
    name: str | None = None
    goal_index: int
    path: str | None = None
    direction: str | None = None


class ApplyRequest(BaseModel):
    move: MoveIn
    args: dict | None = None
    revision: int


class UndoRequest(BaseModel):
    state_index: int
    revision: int


def _args_to_rule(move: MoveIn, args: dict) -> RuleApplication:
    try:
        rule = RuleName(move.name)
    except ValueError:
        raise HTTPException(422, {"error": "unknown-rule", "message": str(move.name)})
    direction = None
    if move.direction is not None:
        try:
            direction = Direction(move.direction)
        except ValueError:
            raise HTTPException(422, {"error": "bad-direction", "message": move.direction})
    contour = args.get("contour")
    zone = Zone(args["zone"]) if "zone" in args else None
    zones = (
        frozenset(Zone(labels) for labels in args["zones"]) if "zones" in args else None
    )
    return RuleApplication(
        rule,
        move.goal_index,
        _parse_path_str(move.path or "-"),
        contour=contour,
        zone=zone,
        zones=zones,
        direction=direction,
    )


# ---------------------------------------------------------------------------
# Application factory

def create_app(snapshot_dir: str | None = None, ui_dir: str | None = None) -> FastAPI:
    store = SessionStore()

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        _snapshot_sessions(store, snapshot_dir)

    app = FastAPI(title="euler-tactics", version="0.1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.store = store

    @app.exception_handler(EulerError)
    async def euler_error_handler(request, exc: EulerError):
        from fastapi.responses import JSONResponse

        status = 400 if isinstance(exc, ParseError) else 422
        payload = {"error": exc.code, "message": str(exc)}
        if isinstance(exc, ParseError):
            payload["span"] = {
                "start": exc.span.start,
                "end": exc.span.end,
                "line": exc.span.line,
                "col": exc.span.col,
            }
        return JSONResponse(status_code=status, content=payload)

    @app.get("/api/info")
    def info():
        return {"service": "euler-tactics", "version": "0.1.0", "sessions": len(store.snapshot())}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        name, theorem = parse_theorem_source(body.theorem)
        session = store.create(body.name or name or "session", new_proof(theorem))
        return _summary(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return session_json(store.get(session_id))

    @app.get("/sessions/{session_id}/moves")
    def get_moves(
        session_id: str,
        goal: int | None = Query(default=None),
        level: str = Query(default="high"),
    ):
        session = store.get(session_id)
        moves = enumerate_moves(session.proof.current, goal, level)
        return {"revision": session.revision, "moves": moves}

    def _mutate(session: Session, revision: int, fn):
        with session.lock:
            if revision != session.revision:
                raise HTTPException(
                    409,
                    {
                        "error": "stale-revision",
                        "message": f"expected {session.revision}, got {revision}",
                    },
                )
            session.proof = fn(session.proof)
            session.revision += 1
            session.updated = time.time()
            return _summary(session)

    @app.post("/sessions/{session_id}/apply")
    def apply_move(session_id: str, body: ApplyRequest):
        session = store.get(session_id)
        move, args = body.move, body.args or {}

        if move.kind == "tactic":
            fn = lambda proof: apply_tactic(proof, move.name, move.goal_index)
        elif move.kind == "discharge":
            fn = lambda proof: append_step(proof, StepRecord(Discharge(move.goal_index)))
        elif move.kind == "rule":
            rule_app = _args_to_rule(move, args)
            fn = lambda proof: append_step(proof, StepRecord(rule_app))
        else:
            raise HTTPException(422, {"error": "bad-move-kind", "message": move.kind})
        return _mutate(session, body.revision, fn)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str, body: UndoRequest):
        session = store.get(session_id)
        return _mutate(session, body.revision, lambda proof: undo_to(proof, body.state_index))

    @app.get("/sessions/{session_id}/script")
    def script(session_id: str):
        session = store.get(session_id)
        return PlainTextResponse(save_script(session.proof, session.name))

    ui = FsPath(ui_dir) if ui_dir else FsPath("frontend/dist")
    if ui.is_dir():
        app.mount("/", StaticFiles(directory=str(ui), html=True), name="ui")

    return app
