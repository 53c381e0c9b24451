"""HTTP API for the standardization workflow, consumed by the web console.

Sessions live in memory with idle-TTL eviction; each session's workflow
runs as one background thread while transcript events stream out over
server-sent events.
"""
from __future__ import annotations

import asyncio
import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from email.parser import BytesParser
from email.policy import HTTP
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.responses import StreamingResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .annotator import CandidateTypes
from .coltypes import ColumnType
from .errors import SessionActive, TableError
from .llm import LlmConfig
from .orchestrator import (
    AgentRole,
    RUNNING_STATUSES,
    SessionState,
    SessionStatus,
    add_requirement,
    run_workflow,
)
from .standardizers import CleanOptions, DEFAULT_OPTIONS
from .table import IngestOptions, Table, dumps_csv, load_csv

DEFAULT_SESSION_TTL_S = 3600.0
_EVENT_POLL_S = 0.05


class SessionCreated(BaseModel):
    id: str
    rows: int
    cols: int
    columns: list[str]


class StartRequest(BaseModel):
    requirements: "str | None" = None


class RequirementRequest(BaseModel):
    text: str


class StatusReply(BaseModel):
    status: str


@dataclass
class ServiceSession:
    id: str
    state: SessionState
    created_at: float
    last_access: float
    thread: "threading.Thread | None" = None
    lock: threading.Lock = field(default_factory=threading.Lock)


@dataclass
class ServiceSettings:
    llm: LlmConfig = field(default_factory=LlmConfig)
    candidates: CandidateTypes = field(default_factory=CandidateTypes)
    options: CleanOptions = DEFAULT_OPTIONS
    ingest: IngestOptions = field(default_factory=IngestOptions)
    max_retries: int = 3
    sample_size: int = 100
    session_ttl_s: float = DEFAULT_SESSION_TTL_S
    ui_dir: "str | Path | None" = None


class SessionRegistry:
    """Thread-safe id -> session map with idle eviction."""

    def __init__(self, ttl_s: float):
        self._ttl_s = ttl_s
        self._lock = threading.RLock()
        self._sessions: dict[str, ServiceSession] = {}

    def add(self, session: ServiceSession) -> None:
        with self._lock:
            self._sweep()
            self._sessions[session.id] = session

    def get(self, session_id: str) -> ServiceSession:
        with self._lock:
            self._sweep()
            found = self._sessions.get(session_id)
            if found is None:
                raise KeyError(session_id)
            found.last_access = time.monotonic()
            return found

    def _sweep(self) -> None:
        now = time.monotonic()
        expired = [
            sid
            for sid, s in self._sessions.items()
            if now - s.last_access > self._ttl_s
            and (s.thread is None or not s.thread.is_alive())
        ]
        for sid in expired:
            del self._sessions[sid]


def _parse_multipart_csv(content_type: str, body: bytes) -> bytes:
    """Pull the first file part out of a multipart/form-data body."""
    head = f"Content-Type: {content_type}\r\nMIME-Version: 1.0\r\n\r\n".encode("latin-1")
    message = BytesParser(policy=HTTP).parsebytes(head + body)
    if not message.is_multipart():
        raise ValueError("body is not multipart")
    for part in message.iter_parts():
        payload = part.get_payload(decode=True)
        if payload is not None:
            return payload
    raise ValueError("multipart body has no file part")


def create_app(settings: "ServiceSettings | None" = None) -> FastAPI:
    settings = settings or ServiceSettings()
    registry = SessionRegistry(settings.session_ttl_s)
    app = FastAPI(title="cellform", version="0.1.0")

    def _session_or_404(session_id: str) -> ServiceSession:
        try:
            return registry.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session id") from None

    def _launch(service_session: ServiceSession) -> None:
        with service_session.lock:
            running = service_session.thread is not None and service_session.thread.is_alive()
            if running or service_session.state.status in RUNNING_STATUSES:
                raise HTTPException(status_code=409, detail="workflow already running")

            def runner():
                try:
                    run_workflow(service_session.state, settings.llm)
                except SessionActive:
                    pass  # lost a start race; the winning run proceeds

            thread = threading.Thread(
                target=runner, daemon=True, name=f"wf-{service_session.id}"
            )
            service_session.thread = thread
            thread.start()

    @app.get("/api/health")
    def health() -> StatusReply:
        return StatusReply(status="ok")

    @app.post("/api/sessions", status_code=201)
    async def create_session(request: Request) -> SessionCreated:
        content_type = request.headers.get("content-type", "")
        body = await request.body()
        if content_type.startswith("multipart/form-data"):
            try:
                payload = _parse_multipart_csv(content_type, body)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        else:
            payload = body  # raw text/csv upload
        try:
            table = load_csv(payload, settings.ingest)
        except TableError as exc:
            raise HTTPException(status_code=400, detail=f"bad CSV: {exc}") from exc
        except UnicodeDecodeError as exc:
            raise HTTPException(status_code=400, detail="CSV must be UTF-8") from exc
        state = SessionState(
            table,
            source_name="uploaded.csv",
            candidates=settings.candidates,
            options=settings.options,
            sample_size=settings.sample_size,
            max_retries=settings.max_retries,
        )
        session = ServiceSession(
            id=uuid.uuid4().hex,
            state=state,
            created_at=time.monotonic(),
            last_access=time.monotonic(),
        )
        registry.add(session)
        return SessionCreated(
            id=session.id, rows=table.m, cols=table.n, columns=list(table.columns)
        )

    @app.post("/api/sessions/{session_id}/start", status_code=202)
    def start(session_id: str, body: "StartRequest | None" = None) -> StatusReply:
        session = _session_or_404(session_id)
        state = session.state
        if body and body.requirements:
            if state.status is SessionStatus.PENDING:
                state.requirements = (
                    f"{state.requirements}\n{body.requirements}".strip()
                )
                state.record(
                    AgentRole.CHAT_MANAGER, 0, f"User requirements: {body.requirements}"
                )
            else:
                try:
                    add_requirement(state, body.requirements)
                except SessionActive as exc:
                    raise HTTPException(status_code=409, detail=str(exc)) from exc
        elif state.status in (SessionStatus.SUCCEEDED, SessionStatus.FAILED):
            raise HTTPException(
                status_code=409, detail="finished; submit a new requirement to rerun"
            )
        _launch(session)
        return StatusReply(status="started")

    @app.post("/api/sessions/{session_id}/requirements", status_code=202)
    def submit_requirement(session_id: str, body: RequirementRequest) -> StatusReply:
        session = _session_or_404(session_id)
        try:
            add_requirement(session.state, body.text)
        except SessionActive as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        _launch(session)
        return StatusReply(status="started")

    @app.get("/api/sessions/{session_id}/annotations")
    def get_annotations(session_id: str) -> dict:
        state = _session_or_404(session_id).state
        merged: dict[str, str] = {}
        if state.annotations is not None:
            merged.update(
                {name: ctype.value for name, ctype in state.annotations.assignments.items()}
            )
        for column, (ctype, _) in state.overrides.items():
            merged[column] = ctype.value
        return merged

    @app.post("/api/sessions/{session_id}/annotations")
    def set_annotations(session_id: str, body: "dict[str, str]") -> dict:
        session = _session_or_404(session_id)
        state = session.state
        if state.status in RUNNING_STATUSES:
            raise HTTPException(status_code=409, detail="workflow is running")
        for column, spec in body.items():
            label, _, fmt = spec.partition(":")
            try:
                ctype = ColumnType.from_label(label)
                state.set_override(column, ctype, fmt.strip() or None)
            except (ValueError, KeyError) as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        if state.status in (SessionStatus.SUCCEEDED, SessionStatus.FAILED):
            # allow a fresh run to pick the overrides up
            state.status = SessionStatus.PENDING
            state.attempts = 0
        return {column: ctype.value for column, (ctype, _) in state.overrides.items()}

    @app.get("/api/sessions/{session_id}/events")
    async def events(session_id: str, request: Request, after: int = -1) -> StreamingResponse:
        session = _session_or_404(session_id)
        state = session.state

        async def stream():
            cursor = after + 1
            while True:
                if await request.is_disconnected():
                    return
                entries = state.chat_memory.entries
                while cursor < len(entries):
                    entry = entries[cursor]
                    payload = json.dumps(
                        {
                            "seq": cursor,
                            "agent": entry.role.value,
                            "step": entry.step,
                            "content": entry.content,
                        },
                        ensure_ascii=False,
                    )
                    yield f"id: {cursor}\ndata: {payload}\n\n"
                    cursor += 1
                status = state.status
                if status in (SessionStatus.SUCCEEDED, SessionStatus.FAILED) and cursor >= len(
                    state.chat_memory.entries
                ):
                    done = json.dumps({"status": status.value, "attempts": state.attempts})
                    yield f"event: done\ndata: {done}\n\n"
                    return
                await asyncio.sleep(_EVENT_POLL_S)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.get("/api/sessions/{session_id}/result")
    def result(session_id: str, format: str = "csv") -> Response:
        state = _session_or_404(session_id).state
        table = state.result
        if table is None:
            raise HTTPException(status_code=404, detail="no result yet")
        if format == "json":
            return Response(
                content=json.dumps(_table_wire(table), ensure_ascii=False),
                media_type="application/json",
            )
        if format != "csv":
            raise HTTPException(status_code=400, detail="format must be csv or json")
        return Response(
            content=dumps_csv(table, settings.ingest),
            media_type="text/csv",
            headers={"Content-Disposition": 'attachment; filename="cleaned_data.csv"'},
        )

    if settings.ui_dir is not None and Path(settings.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(settings.ui_dir), html=True), name="console")

    return app


def _table_wire(table: Table) -> dict:
    return {
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
    }
