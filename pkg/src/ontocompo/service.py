"""HTTP facade over workspaces.

Every route body is a thin translation to a session command; the engines do
the thinking. Workspaces are isolated per session id, mutations are serialized
per workspace, and failed requests leave the workspace untouched. With a data
directory configured, sources and the session log are persisted so a workspace
can be rebuilt by replaying its own log.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel

from .commands import SessionCommand, execute, execute_script
from .errors import (
    ConsistencyConflictError,
    DocumentError,
    DuplicateIdError,
    EngineError,
    PreconditionError,
    ScriptError,
    UnknownIdError,
)
from .layout import solve
from .model import (
    Application,
    RelativeLayout,
    application_from_document,
    layout_for,
    serialize_application,
)
from .workspace import Workspace, new_workspace

_STATUS: dict[type, int] = {
    UnknownIdError: 404,
    DuplicateIdError: 409,
    PreconditionError: 409,
    ConsistencyConflictError: 409,
    DocumentError: 400,
    ScriptError: 400,
}


def _status_for(exc: EngineError) -> int:
    for klass in type(exc).__mro__:
        if klass in _STATUS:
            return _STATUS[klass]
    return 500


@dataclass
class _Entry:
    workspace: Workspace
    lock: threading.Lock = dataclass_field(default_factory=threading.Lock)
    sources: dict[str, Application] = dataclass_field(default_factory=dict)


class _Registry:
    def __init__(self, data_dir: Path | None):
        self._entries: dict[str, _Entry] = {}
        self._guard = threading.Lock()
        self._data_dir = data_dir

    def create(self) -> str:
        workspace_id = uuid.uuid4().hex[:12]
        with self._guard:
            self._entries[workspace_id] = _Entry(workspace=new_workspace())
        if self._data_dir is not None:
            (self._data_dir / workspace_id / "sources").mkdir(parents=True, exist_ok=True)
        return workspace_id

    def get(self, workspace_id: str) -> _Entry:
        with self._guard:
            entry = self._entries.get(workspace_id)
            if entry is not None:
                return entry
        entry = self._restore(workspace_id)
        if entry is None:
            raise UnknownIdError(f"unknown workspace {workspace_id!r}", workspace_id)
        with self._guard:
            return self._entries.setdefault(workspace_id, entry)

    def _restore(self, workspace_id: str) -> _Entry | None:
        if self._data_dir is None:
            return None
        root = self._data_dir / workspace_id
        if not root.is_dir():
            return None
        sources: dict[str, Application] = {}
        sources_dir = root / "sources"
        if sources_dir.is_dir():
            for path in sorted(sources_dir.glob("*.json")):
                app = application_from_document(json.loads(path.read_text("utf-8")))
                sources[app.id] = app
        entry = _Entry(workspace=new_workspace(), sources=sources)
        log_path = root / "session.log"
        if log_path.is_file():
            execute_script(entry.workspace, log_path.read_text("utf-8"), lambda app_id: _resolve(entry, app_id))
        return entry

    def persist(self, workspace_id: str, entry: _Entry, document_text: str | None = None) -> None:
        if self._data_dir is None:
            return
        root = self._data_dir / workspace_id
        sources_dir = root / "sources"
        sources_dir.mkdir(parents=True, exist_ok=True)
        if document_text is not None:
            sequence = len(list(sources_dir.glob("*.json"))) + 1
            (sources_dir / f"{sequence:03d}.json").write_text(document_text, "utf-8")
        (root / "session.log").write_text(
            "".join(line + "\n" for line in entry.workspace.session_log), "utf-8"
        )


def _resolve(entry: _Entry, app_id: str) -> Application:
    if app_id not in entry.sources:
        raise UnknownIdError(f"no application source for {app_id!r}", app_id)
    return entry.sources[app_id]


class SelectBody(BaseModel):
    component: str


class ExtendLayoutBody(BaseModel):
    directions: list[str]
    scope: str = "last"


class ExtractBody(BaseModel):
    target: str
    name: str | None = None


class PlaceBody(BaseModel):
    subject: str
    relation: str
    anchor: str


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    registry = _Registry(Path(data_dir) if data_dir is not None else None)
    app = FastAPI(title="ontocompo", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(EngineError)
    def engine_error(_request: Request, exc: EngineError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"code": exc.code, "message": str(exc), "subject": exc.subject},
        )

    @app.exception_handler(RequestValidationError)
    def malformed(_request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "malformed", "message": str(exc.errors()[:1]), "subject": ""},
        )

    @app.post("/workspaces")
    def create_workspace():
        return {"id": registry.create()}

    @app.post("/workspaces/{workspace_id}/apps")
    def load_app(workspace_id: str, document: dict = Body(...)):
        entry = registry.get(workspace_id)
        with entry.lock:
            application = application_from_document(document)
            entry.sources[application.id] = application
            try:
                execute(entry.workspace, SessionCommand("load", {"app": application.id}),
                        lambda app_id: _resolve(entry, app_id))
            except EngineError:
                entry.sources.pop(application.id, None)
                raise
            registry.persist(workspace_id, entry, serialize_application(application))
            return {"id": application.id}

    @app.get("/workspaces/{workspace_id}/store")
    def dump_store(workspace_id: str):
        entry = registry.get(workspace_id)
        with entry.lock:
            return PlainTextResponse(entry.workspace.store.dump())

    @app.get("/workspaces/{workspace_id}/selection")
    def get_selection(workspace_id: str):
        entry = registry.get(workspace_id)
        with entry.lock:
            return {"items": list(entry.workspace.selection.items)}

    def _run(workspace_id: str, command: SessionCommand):
        entry = registry.get(workspace_id)
        with entry.lock:
            value = execute(entry.workspace, command, lambda app_id: _resolve(entry, app_id))
            registry.persist(workspace_id, entry)
            return value

    @app.post("/workspaces/{workspace_id}/selection/select")
    def select_component(workspace_id: str, body: SelectBody):
        items = _run(workspace_id, SessionCommand("select", {"component": body.component}))
        return {"items": list(items)}

    @app.post("/workspaces/{workspace_id}/selection/deselect")
    def deselect_component(workspace_id: str, body: SelectBody):
        items = _run(workspace_id, SessionCommand("deselect", {"component": body.component}))
        return {"items": list(items)}

    @app.post("/workspaces/{workspace_id}/selection/extend/layout")
    def extend_layout(workspace_id: str, body: ExtendLayoutBody):
        command = SessionCommand(
            "extendLayout",
            {"directions": ",".join(body.directions), "scope": body.scope},
        )
        return {"items": list(_run(workspace_id, command))}

    @app.post("/workspaces/{workspace_id}/selection/extend/parent")
    def extend_parent(workspace_id: str):
        return {"items": list(_run(workspace_id, SessionCommand("extendParent")))}

    @app.post("/workspaces/{workspace_id}/selection/extend/task")
    def extend_task(workspace_id: str):
        return {"items": list(_run(workspace_id, SessionCommand("extendTask")))}

    @app.post("/workspaces/{workspace_id}/selection/extend/functionality")
    def extend_functionality(workspace_id: str):
        return {"items": list(_run(workspace_id, SessionCommand("extendFunctionality")))}

    @app.get("/workspaces/{workspace_id}/suggestions")
    def suggestions(workspace_id: str, mode: str = "complete"):
        found = _run(workspace_id, SessionCommand("suggest", {"mode": mode}))
        return [
            {
                "question": s.question,
                "candidates": list(s.candidates),
                "source": s.source.value,
            }
            for s in found
        ]

    @app.post("/workspaces/{workspace_id}/extract")
    def extract(workspace_id: str, body: ExtractBody):
        args = {"target": body.target}
        if body.name is not None:
            args["name"] = body.name
        screen_id = _run(workspace_id, SessionCommand("extract", args))
        return {"screen": screen_id, "items": []}

    @app.post("/workspaces/{workspace_id}/screens/{screen_id}/place")
    def place(workspace_id: str, screen_id: str, body: PlaceBody):
        command = SessionCommand(
            "place",
            {
                "screen": screen_id,
                "subject": body.subject,
                "relation": body.relation,
                "anchor": body.anchor,
            },
        )
        entry = registry.get(workspace_id)
        with entry.lock:
            execute(entry.workspace, command, None)
            registry.persist(workspace_id, entry)
            screen = next(s for s in entry.workspace.composed.screens if s.id == screen_id)
            spec = layout_for(screen, screen.root.id)
            constraints = spec.constraints if isinstance(spec, RelativeLayout) else []
            placement = solve([c.id for c in screen.root.children], constraints)
        return {
            "screen": screen_id,
            "placement": {cid: {"row": row, "col": col} for cid, (row, col) in placement.items()},
        }

    @app.get("/workspaces/{workspace_id}/export")
    def export(workspace_id: str):
        text = _run(workspace_id, SessionCommand("export"))
        return Response(content=text, media_type="application/json")

    return app
