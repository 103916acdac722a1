"""Local HTTP interface for sessions, proof checking and model checking.

All request and response bodies use the JSON document encodings from
``formats``.  Sessions live in memory behind unguessable tokens and are
serialized per session; with a persistence directory configured every
mutation is written through and sessions survive a restart.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import corpus as corpus_mod
from . import prover
from .formats import (
    DecodeError,
    args_from_doc,
    args_to_doc,
    decode_proof,
    encode_proof,
    formula_from_doc,
    formula_to_doc,
    goal_from_doc,
    goal_to_doc,
    print_formula,
    render_ok_listing,
    render_tree,
    rule_from_name,
)
from .kernel import ARG_KINDS, RULE_ARG_FIELDS, Goal, KernelError, applicable_rules, check
from .prover import Node, Session
from .semantics import BudgetZero, Interpretation, entails_up_to
from .syntax import Formula

DEFAULT_PORT = 8606
DEFAULT_BUDGET_CAP = 1_000_000


@dataclass
class ServiceConfig:
    port: int = DEFAULT_PORT
    corpus_dir: Optional[Path] = None
    persist_dir: Optional[Path] = None
    budget_cap: int = DEFAULT_BUDGET_CAP
    static_dir: Optional[Path] = None

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        def path_or_none(name: str) -> Optional[Path]:
            value = os.environ.get(name)
            return Path(value) if value else None

        return cls(
            port=int(os.environ.get("NATDED_PORT", DEFAULT_PORT)),
            corpus_dir=path_or_none("NATDED_CORPUS_DIR"),
            persist_dir=path_or_none("NATDED_PERSIST_DIR"),
            budget_cap=int(os.environ.get("NATDED_BUDGET_CAP", DEFAULT_BUDGET_CAP)),
            static_dir=path_or_none("NATDED_STATIC_DIR"),
        )


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, **extra: Any):
        super().__init__(message)
        self.status = status
        self.body = {"code": code, "message": message, **extra}


def _error(status: int, code: str, message: str, **extra: Any) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message, **extra})


# --- Session tree wire format -------------------------------------------------


def open_node_to_doc(node: Node) -> dict:
    if node.is_open:
        return {"goal": goal_to_doc(node.goal), "open": True}
    return {
        "goal": goal_to_doc(node.goal),
        "rule": node.rule.value,
        "args": args_to_doc(node.rule, node.args),
        "children": [open_node_to_doc(c) for c in node.children],
    }


def open_node_from_doc(doc: Any, path: tuple = ()) -> Node:
    if not isinstance(doc, dict):
        raise DecodeError(path, "expected an object")
    if doc.get("open"):
        unknown = set(doc) - {"goal", "open"}
        if unknown:
            raise DecodeError(path, f"unknown open-goal fields: {sorted(unknown)}")
        return Node(goal_from_doc(doc.get("goal"), path + ("goal",)))
    unknown = set(doc) - {"goal", "rule", "args", "children"}
    if unknown:
        raise DecodeError(path, f"unknown proof node fields: {sorted(unknown)}")
    goal = goal_from_doc(doc.get("goal"), path + ("goal",))
    rule = rule_from_name(doc.get("rule"), path + ("rule",))
    args = args_from_doc(rule, doc.get("args", {}), path + ("args",))
    raw_children = doc.get("children", [])
    if not isinstance(raw_children, list):
        raise DecodeError(path + ("children",), "children must be a list")
    children = tuple(
        open_node_from_doc(c, path + ("children", i)) for i, c in enumerate(raw_children)
    )
    return Node(goal, rule, args, children)


# --- Session store -------------------------------------------------------------


class SessionStore:
    """In-memory sessions with optional write-through persistence."""

    def __init__(self, persist_dir: Optional[Path] = None):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        self.persist_dir = persist_dir
        if persist_dir is not None:
            persist_dir.mkdir(parents=True, exist_ok=True)
            self._restore()

    def create(self, goal_formula: Formula) -> Session:
        session = prover.new_session(goal_formula)
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        self._persist(session)
        return session

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            lock = self._locks.get(session_id)
        if lock is None:
            raise ApiError(404, "UnknownSession", f"no session {session_id!r}")
        return lock

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "UnknownSession", f"no session {session_id!r}")
        return session

    def _session_file(self, session_id: str) -> Path:
        return self.persist_dir / f"{session_id}.session.json"

    def _persist(self, session: Session) -> None:
        if self.persist_dir is None:
            return
        doc = {
            "format_version": 1,
            "session_id": session.id,
            "history": [open_node_to_doc(snapshot) for snapshot in session.history],
            "cursor": session.cursor,
        }
        self._session_file(session.id).write_text(
            json.dumps(doc, indent=2), encoding="utf-8"
        )

    def persist(self, session: Session) -> None:
        self._persist(session)

    def _restore(self) -> None:
        for file in sorted(self.persist_dir.glob("*.session.json")):
            try:
                doc = json.loads(file.read_text(encoding="utf-8"))
                history = [
                    open_node_from_doc(snap, ("history", i))
                    for i, snap in enumerate(doc["history"])
                ]
                session_id = doc["session_id"]
                session = Session(history[0].goal.formula, session_id)
                session.history = history
                session.cursor = int(doc["cursor"])
                if not 0 <= session.cursor < len(history):
                    continue
            except (KeyError, ValueError, DecodeError, json.JSONDecodeError):
                continue  # a corrupt file should not block startup
            self._sessions[session_id] = session
            self._locks[session_id] = threading.Lock()


# --- Model wire format ----------------------------------------------------------


def interpretation_to_doc(m: Interpretation) -> dict:
    return {
        "universe_size": m.universe_size,
        "env": list(m.env),
        "env_default": m.env_default,
        "funcs": [
            {"id": name, "arity": arity, "table": list(table)}
            for (name, arity), table in sorted(m.funcs.items())
        ],
        "preds": [
            {"id": name, "arity": arity, "table": list(table)}
            for (name, arity), table in sorted(m.preds.items())
        ],
    }


# --- Application -----------------------------------------------------------------


def _session_state(session: Session) -> dict:
    tree = session.current
    return {
        "session_id": session.id,
        "tree": open_node_to_doc(tree),
        "open_goal_paths": [list(p) for p in session.open_goal_paths()],
        "can_undo": session.can_undo,
        "can_redo": session.can_redo,
        "renderings": {
            "ok_listing": render_ok_listing(tree),
            "tree_text": render_tree(tree),
        },
    }


def _corpus_entries(config: ServiceConfig):
    if config.corpus_dir is not None:
        return corpus_mod.load_corpus_dir(config.corpus_dir)
    return corpus_mod.corpus()


async def _json_body(request: Request) -> Any:
    try:
        return await request.json()
    except Exception as err:
        raise ApiError(400, "MalformedDocument", f"request body is not JSON: {err}")


def create_app(config: Optional[ServiceConfig] = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="natded", docs_url=None, redoc_url=None)
    store = SessionStore(config.persist_dir)

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, err: ApiError):
        return JSONResponse(status_code=err.status, content=err.body)

    @app.exception_handler(DecodeError)
    async def handle_decode_error(_request: Request, err: DecodeError):
        return _error(400, "DecodeError", err.message, path=list(err.path))

    @app.post("/api/sessions")
    async def create_session(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict) or "goal" not in body:
            raise ApiError(400, "MalformedDocument", "body must carry a goal formula")
        goal = formula_from_doc(body["goal"], ("goal",))
        session = store.create(goal)
        return {"session_id": session.id}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        session = store.get(session_id)
        with store.lock(session_id):
            return _session_state(session)

    @app.post("/api/sessions/{session_id}/apply")
    async def apply_rule(session_id: str, request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict):
            raise ApiError(400, "MalformedDocument", "body must be an object")
        unknown = set(body) - {"path", "rule", "args"}
        if unknown:
            raise ApiError(400, "MalformedDocument", f"unknown fields: {sorted(unknown)}")
        raw_path = body.get("path", [])
        if not isinstance(raw_path, list) or not all(
            isinstance(i, int) and not isinstance(i, bool) and i >= 0 for i in raw_path
        ):
            raise ApiError(400, "MalformedDocument", "path must be a list of naturals")
        rule = rule_from_name(body.get("rule"), ("rule",))
        args = args_from_doc(rule, body.get("args", {}), ("args",))
        session = store.get(session_id)
        with store.lock(session_id):
            try:
                session.apply(tuple(raw_path), rule, args)
            except (prover.NotOpen, KernelError) as err:
                raise ApiError(422, err.code, err.message, path=raw_path)
            store.persist(session)
            return _session_state(session)

    @app.post("/api/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = store.get(session_id)
        with store.lock(session_id):
            try:
                session.undo()
            except prover.NothingToUndo as err:
                raise ApiError(409, err.code, err.message)
            store.persist(session)
            return _session_state(session)

    @app.post("/api/sessions/{session_id}/redo")
    def redo(session_id: str):
        session = store.get(session_id)
        with store.lock(session_id):
            try:
                session.redo()
            except prover.NothingToRedo as err:
                raise ApiError(409, err.code, err.message)
            store.persist(session)
            return _session_state(session)

    @app.get("/api/sessions/{session_id}/export")
    def export_session(session_id: str):
        session = store.get(session_id)
        with store.lock(session_id):
            try:
                proof = session.export()
            except prover.ProofIncomplete as err:
                raise ApiError(409, err.code, err.message, open_paths=err.open_paths)
            return encode_proof(proof)

    @app.post("/api/check")
    async def check_proof(request: Request):
        body = await _json_body(request)
        proof = decode_proof(body)
        report = check(proof)
        result: dict[str, Any] = {"accepted": report.accepted}
        if not report.accepted:
            result["failure_path"] = list(report.failure_path)
            result["failure_reason"] = report.failure_code
            result["failure_message"] = report.failure_message
        return result

    @app.post("/api/models/validate")
    async def validate_formula(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict):
            raise ApiError(400, "MalformedDocument", "body must be an object")
        unknown = set(body) - {"formula", "assumptions", "max_size", "budget", "seed"}
        if unknown:
            raise ApiError(400, "MalformedDocument", f"unknown fields: {sorted(unknown)}")
        if "formula" not in body:
            raise ApiError(400, "MalformedDocument", "body must carry a formula")
        formula = formula_from_doc(body["formula"], ("formula",))
        assumptions = [
            formula_from_doc(a, ("assumptions", i))
            for i, a in enumerate(body.get("assumptions", []))
        ]
        max_size = body.get("max_size", 3)
        budget = body.get("budget", 10_000)
        seed = body.get("seed", 0)
        for name, value in (("max_size", max_size), ("budget", budget), ("seed", seed)):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ApiError(400, "MalformedDocument", f"{name} must be an integer")
        if budget > config.budget_cap:
            raise ApiError(
                400, "BudgetCapExceeded", f"budget {budget} exceeds cap {config.budget_cap}"
            )
        if max_size < 1:
            raise ApiError(400, "MalformedDocument", "max_size must be at least 1")
        try:
            verdict = entails_up_to(assumptions, formula, max_size, budget, seed)
        except BudgetZero as err:
            raise ApiError(400, "BudgetZero", str(err))
        result = {
            "verdict": "valid" if verdict.valid else "countermodel",
            "exhaustive": verdict.exhaustive,
            "bound": verdict.bound,
            "seed": verdict.seed,
            "checked": verdict.checked,
        }
        if verdict.countermodel is not None:
            result["countermodel"] = interpretation_to_doc(verdict.countermodel)
        return result

    @app.get("/api/corpus")
    def list_corpus():
        return [
            {
                "name": entry.name,
                "goal": formula_to_doc(entry.goal),
                "goal_text": print_formula(entry.goal),
                "has_proof": entry.has_proof,
                "description": entry.description,
            }
            for entry in _corpus_entries(config)
        ]

    @app.get("/api/corpus/{name}")
    def get_corpus_entry(name: str):
        for entry in _corpus_entries(config):
            if entry.name == name:
                result = {
                    "name": entry.name,
                    "goal": formula_to_doc(entry.goal),
                    "goal_text": print_formula(entry.goal),
                    "has_proof": entry.has_proof,
                    "description": entry.description,
                }
                if entry.proof is not None:
                    result["proof"] = encode_proof(entry.proof)
                return result
        raise ApiError(404, "UnknownCorpusEntry", f"no corpus entry {name!r}")

    @app.get("/api/rules")
    def rules_for_goal(goal: str, assumptions: str = "[]"):
        try:
            goal_doc = json.loads(goal)
            assumption_docs = json.loads(assumptions)
        except json.JSONDecodeError as err:
            raise ApiError(400, "MalformedDocument", f"query is not JSON: {err}")
        if not isinstance(assumption_docs, list):
            raise ApiError(400, "MalformedDocument", "assumptions must be a list")
        formula = formula_from_doc(goal_doc, ("goal",))
        assumption_list = tuple(
            formula_from_doc(a, ("assumptions", i)) for i, a in enumerate(assumption_docs)
        )
        target = Goal(formula, assumption_list)
        return [
            {
                "rule": rule.value,
                "args": {name: ARG_KINDS[name] for name in RULE_ARG_FIELDS[rule]},
            }
            for rule in applicable_rules(target)
        ]

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")
    else:

        @app.get("/")
        def index():
            return {
                "service": "natded",
                "endpoints": "/api/sessions, /api/check, /api/models/validate, /api/corpus, /api/rules",
            }

    return app


def serve(config: Optional[ServiceConfig] = None) -> None:
    import uvicorn

    config = config or ServiceConfig.from_env()
    app = create_app(config)
    uvicorn.run(app, host="127.0.0.1", port=config.port, log_level="info")
