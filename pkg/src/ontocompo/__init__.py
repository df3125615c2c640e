"""Compose new applications out of semantically described source applications.

The package keeps every loaded application in a triple store, lets a selection
grow along layout, containment, task, and functionality relations, extracts the
selected subtrees into a composed application, and solves relative layout
constraints into concrete grids for export.
"""

from .commands import (
    SessionCommand,
    execute,
    execute_script,
    format_command,
    parse_line,
    parse_script,
    replay_session,
    save_session,
)
from .errors import (
    ConsistencyConflictError,
    DocumentError,
    DocumentSyntaxError,
    DuplicateIdError,
    EngineError,
    InvalidApplicationError,
    PreconditionError,
    ScriptError,
    UnknownIdError,
)
from .layout import Conflict, check_consistency, derive_relations, place, solve
from .model import (
    AbsoluteLayout,
    Application,
    Cell,
    Functionality,
    Rect,
    RelativeConstraint,
    RelativeLayout,
    Screen,
    TableLayout,
    TaskNode,
    UIComponent,
    UIFuncLink,
    UITaskLink,
    Violation,
    application_from_document,
    application_to_document,
    parse_application,
    serialize_application,
    validate,
)
from .selection import (
    ExtensionScope,
    Selection,
    Suggestion,
    SuggestionMode,
    SuggestionSource,
    deselect,
    extend_functionality,
    extend_layout,
    extend_parent,
    extend_task,
    select,
    suggest,
)
from .store import Clause, Entity, Pattern, Store, build_store, pattern
from .triples import DIRECTIONS, EntityKind, Predicate, Triple, direction_from_string
from .workspace import (
    COMPOSED_APP_ID,
    EXPORT_APP_ID,
    ExistingScreen,
    NewScreen,
    Workspace,
    export_document,
    extract,
    load_application,
    new_workspace,
    place_in_screen,
)

__version__ = "0.1.0"

__all__ = [
    "AbsoluteLayout",
    "Application",
    "COMPOSED_APP_ID",
    "Cell",
    "Clause",
    "Conflict",
    "ConsistencyConflictError",
    "DIRECTIONS",
    "EXPORT_APP_ID",
    "DocumentError",
    "DocumentSyntaxError",
    "DuplicateIdError",
    "EngineError",
    "Entity",
    "EntityKind",
    "ExistingScreen",
    "ExtensionScope",
    "Functionality",
    "InvalidApplicationError",
    "NewScreen",
    "Pattern",
    "PreconditionError",
    "Predicate",
    "Rect",
    "RelativeConstraint",
    "RelativeLayout",
    "Screen",
    "ScriptError",
    "Selection",
    "SessionCommand",
    "Store",
    "Suggestion",
    "SuggestionMode",
    "SuggestionSource",
    "TableLayout",
    "TaskNode",
    "Triple",
    "UIComponent",
    "UIFuncLink",
    "UITaskLink",
    "UnknownIdError",
    "Violation",
    "Workspace",
    "application_from_document",
    "application_to_document",
    "build_store",
    "check_consistency",
    "derive_relations",
    "deselect",
    "direction_from_string",
    "execute",
    "execute_script",
    "export_document",
    "extend_functionality",
    "extend_layout",
    "extend_parent",
    "extend_task",
    "extract",
    "format_command",
    "load_application",
    "new_workspace",
    "parse_application",
    "parse_line",
    "parse_script",
    "pattern",
    "place",
    "place_in_screen",
    "replay_session",
    "save_session",
    "select",
    "serialize_application",
    "solve",
    "suggest",
    "validate",
]
