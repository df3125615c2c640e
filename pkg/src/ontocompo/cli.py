"""Command line entry points: serve the HTTP API, run batch scripts, replay logs."""

from __future__ import annotations

import sys
from pathlib import Path
from typing import NoReturn

import click

from .commands import SessionCommand, execute, parse_script, save_session
from .errors import EngineError, ScriptError, UnknownIdError
from .model import Application, parse_application
from .workspace import Workspace, new_workspace


def _fail(message: str, line_number: int | None = None) -> NoReturn:
    place = f"line {line_number}: " if line_number is not None else ""
    click.echo(f"error: {place}{message}", err=True)
    sys.exit(1)


def _read_sources(paths: tuple[str, ...]) -> dict[str, Application]:
    sources: dict[str, Application] = {}
    for path in paths:
        try:
            app = parse_application(Path(path).read_text("utf-8"))
        except EngineError as exc:
            _fail(f"{path}: {exc}")
        if app.id in sources:
            _fail(f"{path}: duplicate application id {app.id!r}")
        sources[app.id] = app
    return sources


def _run_script_text(ws: Workspace, text: str, sources: dict[str, Application]) -> str | None:
    """Execute a script, echoing suggestion questions; returns the last export."""

    def resolve(app_id: str) -> Application:
        if app_id not in sources:
            raise UnknownIdError(f"no application source for {app_id!r}", app_id)
        return sources[app_id]

    try:
        commands = parse_script(text)
    except ScriptError as exc:
        _fail(str(exc), exc.line_number)
    export_text = None
    for number, command in commands:
        try:
            value = execute(ws, command, resolve)
        except EngineError as exc:
            _fail(str(exc), number)
        if command.verb == "export":
            export_text = value
        elif command.verb == "suggest":
            for suggestion in value:
                click.echo(suggestion.question)
    return export_text


def _write_export(export_text: str | None, out_path: str | None) -> None:
    if export_text is None:
        return
    if out_path is None:
        click.echo(export_text, nl=False)
    else:
        Path(out_path).write_text(export_text, "utf-8")


@click.group()
def main() -> None:
    """Compose applications from semantic descriptions."""


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True, help="Interface to bind.")
@click.option("--port", default=8765, show_default=True, type=int, help="Port to bind.")
@click.option(
    "--data",
    type=click.Path(file_okay=False),
    default=None,
    help="Directory where workspaces persist their sources and session logs.",
)
def serve(host: str, port: int, data: str | None) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(data), host=host, port=port, log_level="warning")


@main.command()
@click.option(
    "--app",
    "app_paths",
    multiple=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Application document to preload, repeatable; loaded in order.",
)
@click.option(
    "--script",
    "script_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Script to execute, one command per line.",
)
@click.option(
    "--out",
    "out_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="File for the exported document; stdout when omitted.",
)
@click.option(
    "--log",
    "log_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="File to save the session log to after a successful run.",
)
def run(app_paths: tuple[str, ...], script_path: str, out_path: str | None, log_path: str | None) -> None:
    """Run a script against a fresh workspace."""
    sources = _read_sources(app_paths)
    ws = new_workspace()
    for app in sources.values():
        try:
            execute(ws, SessionCommand("load", {"app": app.id}), lambda app_id: sources[app_id])
        except EngineError as exc:
            _fail(str(exc))
    export_text = _run_script_text(ws, Path(script_path).read_text("utf-8"), sources)
    _write_export(export_text, out_path)
    if log_path is not None:
        try:
            save_session(ws, log_path)
        except EngineError as exc:
            _fail(str(exc))


@main.command()
@click.option(
    "--session",
    "session_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Session log to replay.",
)
@click.option(
    "--app",
    "app_paths",
    multiple=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Application document the log's load commands resolve against, repeatable.",
)
@click.option(
    "--out",
    "out_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="File for the exported document; stdout when omitted.",
)
def replay(session_path: str, app_paths: tuple[str, ...], out_path: str | None) -> None:
    """Re-run a saved session log over the original sources."""
    sources = _read_sources(app_paths)
    ws = new_workspace()
    export_text = _run_script_text(ws, Path(session_path).read_text("utf-8"), sources)
    _write_export(export_text, out_path)


if __name__ == "__main__":
    main()
