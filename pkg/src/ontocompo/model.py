"""Application documents: typed structure, strict parsing, validation, serialization.

An application describes its screens (trees of UI components plus per-container
layouts), its task hierarchy, its functionalities, and the links tying
components to tasks and functionalities. Documents are plain JSON; parsing is
strict (unknown keys are rejected) and serialization is canonical, so the same
value always produces the same bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import DocumentSyntaxError, InvalidApplicationError, UnknownIdError
from .triples import SPATIAL_PREDICATES, Predicate

COMPONENT_KINDS = ("container", "button", "textfield", "label", "list", "image", "custom")


@dataclass(frozen=True)
class Rect:
    x: int
    y: int
    w: int
    h: int


@dataclass(frozen=True)
class Cell:
    row: int
    col: int
    row_span: int = 1
    col_span: int = 1


@dataclass(frozen=True)
class RelativeConstraint:
    subject: str
    relation: Predicate
    anchor: str


@dataclass
class AbsoluteLayout:
    positions: dict[str, Rect] = field(default_factory=dict)


@dataclass
class TableLayout:
    cells: dict[str, Cell] = field(default_factory=dict)


@dataclass
class RelativeLayout:
    constraints: list[RelativeConstraint] = field(default_factory=list)


LayoutSpec = Union[AbsoluteLayout, TableLayout, RelativeLayout]


@dataclass
class UIComponent:
    id: str
    kind: str
    label: str = ""
    children: list["UIComponent"] = field(default_factory=list)


@dataclass
class Screen:
    id: str
    name: str
    root: UIComponent
    layouts: dict[str, LayoutSpec] = field(default_factory=dict)


@dataclass
class TaskNode:
    id: str
    name: str
    parent: str | None = None
    functionalities: list[str] = field(default_factory=list)


@dataclass
class Functionality:
    id: str
    name: str
    signature: str = ""


@dataclass(frozen=True)
class UITaskLink:
    ui: str
    task: str


@dataclass(frozen=True)
class UIFuncLink:
    ui: str
    functionality: str


Link = Union[UITaskLink, UIFuncLink]


@dataclass
class Application:
    id: str
    name: str
    screens: list[Screen] = field(default_factory=list)
    tasks: list[TaskNode] = field(default_factory=list)
    functionalities: list[Functionality] = field(default_factory=list)
    links: list[Link] = field(default_factory=list)


@dataclass(frozen=True)
class Violation:
    """One broken invariant, naming the ids involved."""

    code: str
    subjects: tuple[str, ...]
    message: str


# ---------------------------------------------------------------------------
# traversal helpers


def iter_components(app: Application) -> Iterator[tuple[UIComponent, Screen]]:
    """Every component of every screen, preorder, paired with its screen."""
    for screen in app.screens:
        stack = [screen.root]
        while stack:
            node = stack.pop()
            yield node, screen
            stack.extend(reversed(node.children))


def component_map(app: Application) -> dict[str, UIComponent]:
    return {c.id: c for c, _ in iter_components(app)}


def parent_map(app: Application) -> dict[str, str | None]:
    parents: dict[str, str | None] = {}
    for screen in app.screens:
        parents.setdefault(screen.root.id, None)
        stack = [screen.root]
        while stack:
            node = stack.pop()
            for child in node.children:
                parents.setdefault(child.id, node.id)
                stack.append(child)
    return parents


def parent_of(app: Application, component_id: str) -> str | None:
    """The containing component's id, or None for a screen root."""
    parents = parent_map(app)
    if component_id not in parents:
        raise UnknownIdError(f"unknown component {component_id!r}", component_id)
    return parents[component_id]


def screen_of(app: Application, component_id: str) -> Screen:
    for component, screen in iter_components(app):
        if component.id == component_id:
            return screen
    raise UnknownIdError(f"unknown component {component_id!r}", component_id)


def layout_for(screen: Screen, container_id: str) -> LayoutSpec:
    """The declared layout of a container, defaulting to an empty relative one."""
    return screen.layouts.get(container_id, RelativeLayout())


# ---------------------------------------------------------------------------
# parsing

_TOP_KEYS = {"id", "name", "screens", "tasks", "functionalities", "links"}
_SCREEN_KEYS = {"id", "name", "root", "layouts"}
_COMPONENT_KEYS = {"id", "kind", "label", "children"}
_TASK_KEYS = {"id", "name", "parent", "functionalities"}
_FUNC_KEYS = {"id", "name", "signature"}
_RECT_KEYS = {"x", "y", "w", "h"}
_CELL_KEYS = {"row", "col", "rowSpan", "colSpan"}
_CONSTRAINT_KEYS = {"subject", "relation", "anchor"}


def _fail(path: str, message: str) -> DocumentSyntaxError:
    return DocumentSyntaxError(f"{path}: {message}")


def _expect_object(value, path: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(value, dict):
        raise _fail(path, "expected an object")
    unknown = set(value) - allowed
    if unknown:
        raise _fail(path, f"unknown key {sorted(unknown)[0]!r}")
    missing = required - set(value)
    if missing:
        raise _fail(path, f"missing key {sorted(missing)[0]!r}")
    return value


def _expect_str(value, path: str) -> str:
    if not isinstance(value, str):
        raise _fail(path, "expected a string")
    return value

def _expect_id(value, path: str) -> str:
    text = _expect_str(value, path)
    if not text:
        raise _fail(path, "empty identifier")
    return text


def _expect_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, "expected an integer")
    return value


def _expect_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise _fail(path, "expected an array")
    return value


def _parse_component(value, path: str) -> UIComponent:
    obj = _expect_object(value, path, _COMPONENT_KEYS, {"id", "kind", "label"})
    kind = _expect_str(obj["kind"], f"{path}.kind")
    if kind not in COMPONENT_KINDS:
        raise _fail(f"{path}.kind", f"unknown component kind {kind!r}")
    raw_children = _expect_list(obj.get("children", []), f"{path}.children")
    if kind != "container" and raw_children:
        raise _fail(f"{path}.children", "only containers may have children")
    children = [
        _parse_component(child, f"{path}.children[{i}]") for i, child in enumerate(raw_children)
    ]
    return UIComponent(
        id=_expect_id(obj["id"], f"{path}.id"),
        kind=kind,
        label=_expect_str(obj["label"], f"{path}.label"),
        children=children,
    )


def _parse_predicate(value, path: str) -> Predicate:
    name = _expect_str(value, path)
    try:
        return Predicate(name)
    except ValueError:
        raise _fail(path, f"unknown relation {name!r}") from None


def _parse_layout(value, path: str) -> LayoutSpec:
    if not isinstance(value, dict):
        raise _fail(path, "expected an object")
    kind = value.get("type")
    if kind == "absolute":
        obj = _expect_object(value, path, {"type", "positions"}, {"type", "positions"})
        if not isinstance(obj["positions"], dict):
            raise _fail(f"{path}.positions", "expected an object")
        positions = {}
        for cid, raw in obj["positions"].items():
            rect = _expect_object(raw, f"{path}.positions[{cid}]", _RECT_KEYS, _RECT_KEYS)
            positions[cid] = Rect(*(_expect_int(rect[k], f"{path}.positions[{cid}].{k}") for k in ("x", "y", "w", "h")))
        return AbsoluteLayout(positions)
    if kind == "table":
        obj = _expect_object(value, path, {"type", "cells"}, {"type", "cells"})
        if not isinstance(obj["cells"], dict):
            raise _fail(f"{path}.cells", "expected an object")
        cells = {}
        for cid, raw in obj["cells"].items():
            cell = _expect_object(raw, f"{path}.cells[{cid}]", _CELL_KEYS, {"row", "col"})
            cells[cid] = Cell(
                row=_expect_int(cell["row"], f"{path}.cells[{cid}].row"),
                col=_expect_int(cell["col"], f"{path}.cells[{cid}].col"),
                row_span=_expect_int(cell.get("rowSpan", 1), f"{path}.cells[{cid}].rowSpan"),
                col_span=_expect_int(cell.get("colSpan", 1), f"{path}.cells[{cid}].colSpan"),
            )
        return TableLayout(cells)
    if kind == "relative":
        obj = _expect_object(value, path, {"type", "constraints"}, {"type", "constraints"})
        constraints = []
        for i, raw in enumerate(_expect_list(obj["constraints"], f"{path}.constraints")):
            cpath = f"{path}.constraints[{i}]"
            c = _expect_object(raw, cpath, _CONSTRAINT_KEYS, _CONSTRAINT_KEYS)
            constraints.append(
                RelativeConstraint(
                    subject=_expect_id(c["subject"], f"{cpath}.subject"),
                    relation=_parse_predicate(c["relation"], f"{cpath}.relation"),
                    anchor=_expect_id(c["anchor"], f"{cpath}.anchor"),
                )
            )
        return RelativeLayout(constraints)
    raise _fail(f"{path}.type", f"unknown layout type {kind!r}")


def _parse_screen(value, path: str) -> Screen:
    obj = _expect_object(value, path, _SCREEN_KEYS, {"id", "name", "root"})
    layouts = {}
    raw_layouts = obj.get("layouts", {})
    if not isinstance(raw_layouts, dict):
        raise _fail(f"{path}.layouts", "expected an object")
    for cid, raw in raw_layouts.items():
        layouts[cid] = _parse_layout(raw, f"{path}.layouts[{cid}]")
    return Screen(
        id=_expect_id(obj["id"], f"{path}.id"),
        name=_expect_str(obj["name"], f"{path}.name"),
        root=_parse_component(obj["root"], f"{path}.root"),
        layouts=layouts,
    )


def _parse_task(value, path: str) -> TaskNode:
    obj = _expect_object(value, path, _TASK_KEYS, {"id", "name"})
    parent = obj.get("parent")
    if parent is not None:
        parent = _expect_id(parent, f"{path}.parent")
    functionalities = [
        _expect_id(f, f"{path}.functionalities[{i}]")
        for i, f in enumerate(_expect_list(obj.get("functionalities", []), f"{path}.functionalities"))
    ]
    return TaskNode(
        id=_expect_id(obj["id"], f"{path}.id"),
        name=_expect_str(obj["name"], f"{path}.name"),
        parent=parent,
        functionalities=functionalities,
    )


def _parse_link(value, path: str) -> Link:
    if not isinstance(value, dict):
        raise _fail(path, "expected an object")
    if set(value) == {"ui", "task"}:
        return UITaskLink(ui=_expect_id(value["ui"], f"{path}.ui"), task=_expect_id(value["task"], f"{path}.task"))
    if set(value) == {"ui", "functionality"}:
        return UIFuncLink(
            ui=_expect_id(value["ui"], f"{path}.ui"),
            functionality=_expect_id(value["functionality"], f"{path}.functionality"),
        )
    raise _fail(path, "expected keys {ui, task} or {ui, functionality}")


def application_from_document(value) -> Application:
    """Build an Application from already-decoded JSON, then validate it."""
    obj = _expect_object(value, "$", _TOP_KEYS, _TOP_KEYS)
    app = Application(
        id=_expect_id(obj["id"], "$.id"),
        name=_expect_str(obj["name"], "$.name"),
        screens=[_parse_screen(s, f"$.screens[{i}]") for i, s in enumerate(_expect_list(obj["screens"], "$.screens"))],
        tasks=[_parse_task(t, f"$.tasks[{i}]") for i, t in enumerate(_expect_list(obj["tasks"], "$.tasks"))],
        functionalities=[
            Functionality(
                id=_expect_id(_expect_object(f, f"$.functionalities[{i}]", _FUNC_KEYS, _FUNC_KEYS)["id"], f"$.functionalities[{i}].id"),
                name=_expect_str(f["name"], f"$.functionalities[{i}].name"),
                signature=_expect_str(f["signature"], f"$.functionalities[{i}].signature"),
            )
            for i, f in enumerate(_expect_list(obj["functionalities"], "$.functionalities"))
        ],
        links=[_parse_link(l, f"$.links[{i}]") for i, l in enumerate(_expect_list(obj["links"], "$.links"))],
    )
    violations = validate(app)
    if violations:
        raise InvalidApplicationError(violations)
    return app


def parse_application(text: str) -> Application:
    """Parse a JSON application document. Rejects anything off-format."""
    try:
        decoded = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from None
    return application_from_document(decoded)


# ---------------------------------------------------------------------------
# serialization


def _component_doc(component: UIComponent) -> dict:
    doc: dict = {"id": component.id, "kind": component.kind, "label": component.label}
    if component.kind == "container":
        doc["children"] = [_component_doc(c) for c in component.children]
    return doc


def _layout_doc(layout: LayoutSpec) -> dict:
    if isinstance(layout, AbsoluteLayout):
        return {
            "type": "absolute",
            "positions": {
                cid: {"x": r.x, "y": r.y, "w": r.w, "h": r.h}
                for cid, r in sorted(layout.positions.items())
            },
        }
    if isinstance(layout, TableLayout):
        return {
            "type": "table",
            "cells": {
                cid: {"row": c.row, "col": c.col, "rowSpan": c.row_span, "colSpan": c.col_span}
                for cid, c in sorted(layout.cells.items())
            },
        }
    return {
        "type": "relative",
        "constraints": [
            {"subject": c.subject, "relation": c.relation.value, "anchor": c.anchor}
            for c in layout.constraints
        ],
    }


def application_to_document(app: Application) -> dict:
    doc: dict = {"id": app.id, "name": app.name}
    doc["screens"] = [
        {
            "id": s.id,
            "name": s.name,
            "root": _component_doc(s.root),
            "layouts": {cid: _layout_doc(spec) for cid, spec in sorted(s.layouts.items())},
        }
        for s in app.screens
    ]
    tasks = []
    for t in app.tasks:
        tdoc: dict = {"id": t.id, "name": t.name}
        if t.parent is not None:
            tdoc["parent"] = t.parent
        tdoc["functionalities"] = list(t.functionalities)
        tasks.append(tdoc)
    doc["tasks"] = tasks
    doc["functionalities"] = [
        {"id": f.id, "name": f.name, "signature": f.signature} for f in app.functionalities
    ]
    links = []
    for link in app.links:
        if isinstance(link, UITaskLink):
            links.append({"ui": link.ui, "task": link.task})
        else:
            links.append({"ui": link.ui, "functionality": link.functionality})
    doc["links"] = links
    return doc


def serialize_application(app: Application) -> str:
    """Canonical document text; equal applications serialize to equal bytes."""
    return json.dumps(application_to_document(app), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# validation


def _rects_overlap(a: Rect, b: Rect) -> bool:
    return a.x < b.x + b.w and b.x < a.x + a.w and a.y < b.y + b.h and b.y < a.y + a.h


def _cells_overlap(a: Cell, b: Cell) -> bool:
    return (
        a.row < b.row + b.row_span
        and b.row < a.row + a.row_span
        and a.col < b.col + b.col_span
        and b.col < a.col + a.col_span
    )


def validate(app: Application) -> list[Violation]:
    """All broken invariants of the value, in a stable order."""
    violations: list[Violation] = []

    components = [c for c, _ in iter_components(app)]
    component_ids = [c.id for c in components]
    task_ids = [t.id for t in app.tasks]
    func_ids = [f.id for f in app.functionalities]
    screen_ids = [s.id for s in app.screens]

    seen: dict[str, int] = {}
    for cid in component_ids + task_ids + func_ids + screen_ids:
        seen[cid] = seen.get(cid, 0) + 1
    for cid in sorted(k for k, n in seen.items() if n > 1):
        violations.append(Violation("duplicate-id", (cid,), f"identifier {cid!r} is used more than once"))

    known_components = set(component_ids)
    known_tasks = set(task_ids)
    known_funcs = set(func_ids)

    for c in components:
        if c.kind != "container" and c.children:
            violations.append(
                Violation("leaf-children", (c.id,), f"component {c.id!r} of kind {c.kind!r} has children")
            )

    for screen in app.screens:
        in_tree = {c.id: c for c in _screen_components(screen)}
        for cid, layout in sorted(screen.layouts.items()):
            owner = in_tree.get(cid)
            if owner is None or owner.kind != "container":
                violations.append(
                    Violation("layout-key", (cid,), f"layout key {cid!r} is not a container of screen {screen.id!r}")
                )
                continue
            child_ids = [c.id for c in owner.children]
            violations.extend(_check_layout(screen, cid, child_ids, layout))

    link_seen: set[tuple] = set()
    for link in app.links:
        if isinstance(link, UITaskLink):
            key = ("task", link.ui, link.task)
            target, pool, kind = link.task, known_tasks, "task"
        else:
            key = ("functionality", link.ui, link.functionality)
            target, pool, kind = link.functionality, known_funcs, "functionality"
        if link.ui not in known_components:
            violations.append(Violation("dangling-reference", (link.ui,), f"link references unknown component {link.ui!r}"))
        if target not in pool:
            violations.append(Violation("dangling-reference", (target,), f"link references unknown {kind} {target!r}"))
        if key in link_seen:
            violations.append(Violation("duplicate-link", (link.ui, target), f"duplicate link {link.ui!r} -> {target!r}"))
        link_seen.add(key)

    task_by_id = {t.id: t for t in app.tasks}
    for t in app.tasks:
        if t.parent is not None and t.parent not in known_tasks:
            violations.append(Violation("dangling-reference", (t.parent,), f"task {t.id!r} has unknown parent {t.parent!r}"))
        for fid in t.functionalities:
            if fid not in known_funcs:
                violations.append(
                    Violation("dangling-reference", (fid,), f"task {t.id!r} references unknown functionality {fid!r}")
                )

    # Parent chains must terminate; report each cycle once, by its smallest member.
    color: dict[str, int] = {}
    cycles: set[tuple[str, ...]] = set()
    for t in app.tasks:
        path: list[str] = []
        cur: str | None = t.id
        while cur is not None and cur in task_by_id and color.get(cur, 0) == 0:
            color[cur] = 1
            path.append(cur)
            cur = task_by_id[cur].parent
        if cur is not None and color.get(cur) == 1 and cur in path:
            members = tuple(sorted(path[path.index(cur):]))
            cycles.add(members)
        for node in path:
            color[node] = 2
    for members in sorted(cycles):
        violations.append(
            Violation("task-cycle", members, "task parent chain forms a cycle through " + ", ".join(repr(m) for m in members))
        )

    return violations


def _screen_components(screen: Screen) -> Iterator[UIComponent]:
    stack = [screen.root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))


def _check_layout(screen: Screen, container_id: str, child_ids: list[str], layout: LayoutSpec) -> list[Violation]:
    violations: list[Violation] = []
    child_set = set(child_ids)

    if isinstance(layout, AbsoluteLayout):
        placed = layout.positions
    elif isinstance(layout, TableLayout):
        placed = layout.cells
    else:
        for i, c in enumerate(layout.constraints):
            if c.relation not in SPATIAL_PREDICATES:
                violations.append(
                    Violation("constraint-relation", (container_id,), f"constraint #{i} in {container_id!r} uses non-directional relation {c.relation.value!r}")
                )
            if c.subject == c.anchor:
                violations.append(
                    Violation("constraint-self", (c.subject,), f"constraint #{i} in {container_id!r} anchors {c.subject!r} to itself")
                )
                continue
            for endpoint in (c.subject, c.anchor):
                if endpoint not in child_set:
                    violations.append(
                        Violation("constraint-sibling", (endpoint,), f"constraint endpoint {endpoint!r} is not a child of {container_id!r}")
                    )
        return violations

    for cid in sorted(child_set - set(placed)):
        violations.append(Violation("layout-missing", (cid,), f"child {cid!r} of {container_id!r} has no layout entry"))
    for cid in sorted(set(placed) - child_set):
        violations.append(Violation("layout-extra", (cid,), f"layout of {container_id!r} places {cid!r}, which is not a child"))

    if isinstance(layout, AbsoluteLayout):
        for cid, rect in sorted(layout.positions.items()):
            if rect.w <= 0 or rect.h <= 0:
                violations.append(Violation("bad-geometry", (cid,), f"rectangle of {cid!r} must have positive size"))
        items = sorted(layout.positions.items())
        for i, (aid, a) in enumerate(items):
            for bid, b in items[i + 1:]:
                if _rects_overlap(a, b):
                    violations.append(Violation("absolute-overlap", (aid, bid), f"rectangles of {aid!r} and {bid!r} overlap"))
    else:
        for cid, cell in sorted(layout.cells.items()):
            if cell.row < 0 or cell.col < 0 or cell.row_span < 1 or cell.col_span < 1:
                violations.append(Violation("bad-geometry", (cid,), f"cell of {cid!r} has invalid coordinates or spans"))
        items = sorted(layout.cells.items())
        for i, (aid, a) in enumerate(items):
            for bid, b in items[i + 1:]:
                if _cells_overlap(a, b):
                    violations.append(Violation("table-overlap", (aid, bid), f"cells of {aid!r} and {bid!r} overlap"))

    return violations
