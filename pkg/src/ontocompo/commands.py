"""Session commands: the one grammar shared by scripts, session logs and HTTP.

One command per line, ``verb arg=value ...``; blank lines and ``#`` comments
are ignored; values containing whitespace are double-quoted. Every successful
command appends its canonical spelling to the workspace session log, which is
what makes a saved session replayable.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from typing import Callable

from . import selection as selection_engine
from . import workspace as workspace_engine
from .errors import EngineError, PreconditionError, ScriptError, UnknownIdError
from .model import Application
from .selection import ExtensionScope, SuggestionMode
from .triples import DIRECTIONS, Predicate, direction_from_string
from .workspace import ExistingScreen, NewScreen, Workspace

AppResolver = Callable[[str], Application]

#: verb -> (required args, optional args), in canonical output order.
_VERB_ARGS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "load": (("app",), ()),
    "select": (("component",), ()),
    "deselect": (("component",), ()),
    "extendLayout": (("directions",), ("scope",)),
    "extendParent": ((), ()),
    "extendTask": ((), ()),
    "extendFunctionality": ((), ()),
    "suggest": (("mode",), ()),
    "extract": (("target",), ("name",)),
    "place": (("screen", "subject", "relation", "anchor"), ()),
    "export": ((), ()),
}

VERBS = tuple(_VERB_ARGS)


@dataclass(frozen=True)
class SessionCommand:
    verb: str
    args: dict[str, str] = field(default_factory=dict)


def parse_line(line: str) -> SessionCommand | None:
    """One script line to a command; None for blanks and comments."""
    try:
        tokens = shlex.split(line, comments=True)
    except ValueError as exc:
        raise ScriptError(f"unreadable line: {exc}") from None
    if not tokens:
        return None
    verb, raw_args = tokens[0], tokens[1:]
    if verb not in _VERB_ARGS:
        raise ScriptError(f"unknown command {verb!r}", subject=verb)
    required, optional = _VERB_ARGS[verb]
    allowed = set(required) | set(optional)
    args: dict[str, str] = {}
    for token in raw_args:
        key, sep, value = token.partition("=")
        if not sep or not key:
            raise ScriptError(f"{verb}: expected arg=value, got {token!r}", subject=verb)
        if key not in allowed:
            raise ScriptError(f"{verb}: unknown argument {key!r}", subject=key)
        if key in args:
            raise ScriptError(f"{verb}: duplicate argument {key!r}", subject=key)
        args[key] = value
    for key in required:
        if key not in args:
            raise ScriptError(f"{verb}: missing argument {key!r}", subject=key)
    return SessionCommand(verb, args)


def _quote(value: str) -> str:
    if value and not any(ch.isspace() for ch in value) and '"' not in value and "'" not in value and "#" not in value:
        return value
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def format_command(command: SessionCommand) -> str:
    required, optional = _VERB_ARGS[command.verb]
    parts = [command.verb]
    for key in (*required, *optional):
        if key in command.args:
            parts.append(f"{key}={_quote(command.args[key])}")
    return " ".join(parts)


def parse_script(text: str) -> list[tuple[int, SessionCommand]]:
    """Every command of a script with its 1-based line number."""
    commands = []
    for number, line in enumerate(text.splitlines(), start=1):
        try:
            command = parse_line(line)
        except ScriptError as exc:
            raise ScriptError(str(exc), line_number=number, subject=exc.subject) from None
        if command is not None:
            commands.append((number, command))
    return commands


def _parse_directions(value: str) -> list[Predicate]:
    names = [name for name in value.split(",") if name]
    if not names:
        raise PreconditionError("no directions toggled", "directions")
    try:
        toggled = {direction_from_string(name) for name in names}
    except ValueError as exc:
        raise PreconditionError(str(exc), "directions") from None
    return [d for d in DIRECTIONS if d in toggled]


def _parse_scope(value: str) -> ExtensionScope:
    try:
        return ExtensionScope(value.lower())
    except ValueError:
        raise PreconditionError(f"unknown scope {value!r}", "scope") from None


def _parse_mode(value: str) -> SuggestionMode:
    try:
        return SuggestionMode(value.lower())
    except ValueError:
        raise PreconditionError(f"unknown suggestion mode {value!r}", "mode") from None


def execute(ws: Workspace, command: SessionCommand, resolve_app: AppResolver | None = None):
    """Run one command against the workspace.

    Returns the command's value (selection tuple, suggestion list, export text,
    screen id, or None) and appends the canonical line to the session log.
    Nothing is logged or mutated when the command fails.
    """
    verb, args = command.verb, dict(command.args)
    canonical = dict(args)
    result = None

    if verb == "load":
        if resolve_app is None:
            raise UnknownIdError(f"no application source for {args['app']!r}", args["app"])
        app = resolve_app(args["app"])
        workspace_engine.load_application(ws, app)
    elif verb == "select":
        ws.selection = selection_engine.select(ws.store, ws.selection, args["component"])
        result = ws.selection.items
    elif verb == "deselect":
        ws.selection = selection_engine.deselect(ws.store, ws.selection, args["component"])
        result = ws.selection.items
    elif verb == "extendLayout":
        directions = _parse_directions(args["directions"])
        scope = _parse_scope(args.get("scope", "last"))
        ws.selection = selection_engine.extend_layout(ws.store, ws.selection, directions, scope)
        canonical["directions"] = ",".join(d.value for d in directions)
        canonical["scope"] = scope.value
        result = ws.selection.items
    elif verb == "extendParent":
        ws.selection = selection_engine.extend_parent(ws.store, ws.selection)
        result = ws.selection.items
    elif verb == "extendTask":
        ws.selection = selection_engine.extend_task(ws.store, ws.selection)
        result = ws.selection.items
    elif verb == "extendFunctionality":
        ws.selection = selection_engine.extend_functionality(ws.store, ws.selection)
        result = ws.selection.items
    elif verb == "suggest":
        mode = _parse_mode(args["mode"])
        canonical["mode"] = mode.value
        result = selection_engine.suggest(ws.store, ws.selection, mode)
    elif verb == "extract":
        if args["target"] == "new":
            name = args.get("name", "")
            if not name:
                raise PreconditionError("a new screen needs a name", "name")
            target: NewScreen | ExistingScreen = NewScreen(name)
        else:
            if "name" in args:
                raise PreconditionError("name is only valid with target=new", "name")
            target = ExistingScreen(args["target"])
        result = workspace_engine.extract(ws, target)
    elif verb == "place":
        relation = direction_from_string_checked(args["relation"])
        canonical["relation"] = relation.value
        workspace_engine.place_in_screen(ws, args["screen"], args["subject"], relation, args["anchor"])
        result = args["screen"]
    elif verb == "export":
        result = workspace_engine.export_document(ws)
    else:  # pragma: no cover - parse_line rejects unknown verbs
        raise ScriptError(f"unknown command {verb!r}", subject=verb)

    ws.session_log.append(format_command(SessionCommand(verb, canonical)))
    return result


def direction_from_string_checked(value: str) -> Predicate:
    try:
        return direction_from_string(value)
    except ValueError as exc:
        raise PreconditionError(str(exc), "relation") from None


def execute_script(
    ws: Workspace,
    text: str,
    resolve_app: AppResolver | None = None,
    on_export: Callable[[str], None] | None = None,
) -> int:
    """Run a whole script; stops at the first failing line.

    Returns the number of executed commands. Failures carry the line number.
    """
    executed = 0
    for number, command in parse_script(text):
        try:
            value = execute(ws, command, resolve_app)
        except ScriptError:
            raise
        except EngineError as exc:
            raise ScriptError(str(exc), line_number=number, subject=exc.subject) from exc
        if command.verb == "export" and on_export is not None:
            on_export(value)
        executed += 1
    return executed


def save_session(ws: Workspace, path) -> None:
    """Write the session log to a file; an empty session cannot be saved."""
    if not ws.session_log:
        raise PreconditionError("session log is empty", "session")
    with open(path, "w", encoding="utf-8") as handle:
        for line in ws.session_log:
            handle.write(line + "\n")


def replay_session(log_text: str, apps: dict[str, Application], on_export=None) -> Workspace:
    """Rebuild a workspace by re-running a saved session log.

    ``apps`` maps application ids to parsed sources; a ``load`` line whose id
    is missing from the map fails with the offending line number.
    """
    ws = workspace_engine.new_workspace()

    def resolve(app_id: str) -> Application:
        if app_id not in apps:
            raise UnknownIdError(f"no application source for {app_id!r}", app_id)
        return apps[app_id]

    execute_script(ws, log_text, resolve, on_export)
    return ws
