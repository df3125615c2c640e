"""Workspace state: loaded sources, the composed application, and extraction.

Extraction copies the selected components (containers bring their whole
subtree) into a screen of the composed application, carries their task and
functionality context along, and re-expresses the spatial relations that held
between the copies in the source as relative constraints, so the assembled
screen keeps its former look while staying editable. Sources are never
touched.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Union

from . import layout as layout_engine
from .errors import DuplicateIdError, InvalidApplicationError, PreconditionError, UnknownIdError
from .model import (
    Application,
    Cell,
    Functionality,
    RelativeConstraint,
    RelativeLayout,
    Screen,
    TableLayout,
    TaskNode,
    UIComponent,
    UIFuncLink,
    UITaskLink,
    component_map,
    layout_for,
    parent_map,
    screen_of,
    serialize_application,
    validate,
)
from .selection import Selection
from .store import Store, build_store
from .triples import Predicate

COMPOSED_APP_ID = "composed"

# Exported documents carry a different id than the reserved workspace-internal
# one, so an export can be loaded back as a source next to a fresh workspace's
# own composed application.
EXPORT_APP_ID = "Composed"


@dataclass(frozen=True)
class NewScreen:
    name: str


@dataclass(frozen=True)
class ExistingScreen:
    screen_id: str


ExtractionTarget = Union[NewScreen, ExistingScreen]


@dataclass
class Workspace:
    sources: list[Application] = field(default_factory=list)
    composed: Application = field(
        default_factory=lambda: Application(id=COMPOSED_APP_ID, name="Composed")
    )
    store: Store = field(default_factory=Store)
    selection: Selection = field(default_factory=Selection)
    session_log: list[str] = field(default_factory=list)


def new_workspace() -> Workspace:
    ws = Workspace()
    ws.store = build_store([ws.composed])
    return ws


def load_application(ws: Workspace, app: Application) -> None:
    """Add a source application. The workspace is untouched on failure."""
    violations = validate(app)
    if violations:
        raise InvalidApplicationError(violations)
    for existing in ws.sources + [ws.composed]:
        if existing.id == app.id:
            raise DuplicateIdError(f"application id {app.id!r} is already loaded", app.id)
    store = build_store(ws.sources + [app, ws.composed])
    ws.sources = ws.sources + [app]
    ws.store = store


def _owning_app(ws: Workspace, component_id: str) -> Application:
    for app in ws.sources + [ws.composed]:
        if component_id in component_map(app):
            return app
    raise UnknownIdError(f"unknown component {component_id!r}", component_id)


def _screen_id_for(name: str, taken: set[str]) -> str:
    base = "".join(ch for ch in name if ch.isalnum()) or "Screen"
    candidate = base
    counter = 2
    while candidate in taken:
        candidate = f"{base}{counter}"
        counter += 1
    return candidate


def _all_ids(app: Application) -> set[str]:
    ids = set(component_map(app))
    ids.update(t.id for t in app.tasks)
    ids.update(f.id for f in app.functionalities)
    ids.update(s.id for s in app.screens)
    return ids


def _copy_subtree(node: UIComponent, prefix: str) -> UIComponent:
    return UIComponent(
        id=prefix + node.id,
        kind=node.kind,
        label=node.label,
        children=[_copy_subtree(child, prefix) for child in node.children],
    )


def _task_chain(app: Application, task_id: str) -> list[TaskNode]:
    by_id = {t.id: t for t in app.tasks}
    chain: list[TaskNode] = []
    cursor: str | None = task_id
    while cursor is not None and cursor in by_id:
        task = by_id[cursor]
        chain.append(task)
        cursor = task.parent
    return chain


def extract(ws: Workspace, target: ExtractionTarget) -> str:
    """Copy the selection into the target screen of the composed application.

    Returns the target screen id. Clears the selection on success.
    """
    if not ws.selection.items:
        raise PreconditionError("selection is empty", "selection")

    owners = {item: _owning_app(ws, item) for item in ws.selection.items}
    selected = set(ws.selection.items)

    composed = copy.deepcopy(ws.composed)
    composed_ids = _all_ids(composed)

    if isinstance(target, NewScreen):
        screen_id = _screen_id_for(target.name, {s.id for s in composed.screens} | composed_ids)
        root_id = f"{screen_id}Root"
        while root_id in composed_ids:
            root_id += "X"
        screen = Screen(
            id=screen_id,
            name=target.name,
            root=UIComponent(id=root_id, kind="container", label=target.name),
        )
        composed.screens.append(screen)
        composed_ids.update({screen_id, root_id})
    else:
        matches = [s for s in composed.screens if s.id == target.screen_id]
        if not matches:
            raise UnknownIdError(f"unknown screen {target.screen_id!r}", target.screen_id)
        screen = matches[0]

    # Selected components whose selected ancestor already brings them along
    # are not copied twice; only subtree roots are.
    roots: list[str] = []
    for item in ws.selection.items:
        app = owners[item]
        parents = parent_map(app)
        cursor = parents.get(item)
        covered = False
        while cursor is not None:
            if cursor in selected and owners.get(cursor) is app:
                covered = True
                break
            cursor = parents.get(cursor)
        if not covered:
            roots.append(item)

    existing_tasks = {t.id for t in composed.tasks}
    existing_funcs = {f.id for f in composed.functionalities}
    existing_links = set(composed.links)

    copied_roots: list[str] = []  # original ids actually copied this round
    copied_by_app: dict[str, list[str]] = {}

    for root in roots:
        app = owners[root]
        prefix = f"{app.id}."
        if prefix + root in composed_ids:
            continue  # already extracted earlier
        source_root = component_map(app)[root]
        screen.root.children.append(_copy_subtree(source_root, prefix))
        copied_roots.append(root)

        subtree_ids = [c.id for c, _ in _walk(source_root)]
        copied_by_app.setdefault(app.id, []).extend(subtree_ids)
        composed_ids.update(prefix + cid for cid in subtree_ids)

        # Carry links, the tasks behind them (with their ancestor chains), and
        # every functionality those tasks or links mention.
        subtree_set = set(subtree_ids)
        tasks_needed: list[str] = []
        funcs_needed: list[str] = []
        for link in app.links:
            if link.ui not in subtree_set:
                continue
            if isinstance(link, UITaskLink):
                new_link: UITaskLink | UIFuncLink = UITaskLink(prefix + link.ui, prefix + link.task)
                for task in _task_chain(app, link.task):
                    tasks_needed.append(task.id)
            else:
                new_link = UIFuncLink(prefix + link.ui, prefix + link.functionality)
                funcs_needed.append(link.functionality)
            if new_link not in existing_links:
                composed.links.append(new_link)
                existing_links.add(new_link)

        task_by_id = {t.id: t for t in app.tasks}
        for task_id in tasks_needed:
            if prefix + task_id in existing_tasks:
                continue
            task = task_by_id[task_id]
            composed.tasks.append(
                TaskNode(
                    id=prefix + task.id,
                    name=task.name,
                    parent=None if task.parent is None else prefix + task.parent,
                    functionalities=[prefix + fid for fid in task.functionalities],
                )
            )
            existing_tasks.add(prefix + task_id)
            funcs_needed.extend(task.functionalities)

        func_by_id = {f.id: f for f in app.functionalities}
        for func_id in funcs_needed:
            if prefix + func_id in existing_funcs:
                continue
            functionality = func_by_id[func_id]
            composed.functionalities.append(
                Functionality(id=prefix + functionality.id, name=functionality.name, signature=functionality.signature)
            )
            existing_funcs.add(prefix + func_id)

        # The interior of every copied container keeps its former look as
        # relative constraints derived from the source layout.
        source_screen = screen_of(app, root)
        for node, _ in _walk(source_root):
            if node.kind != "container" or not node.children:
                continue
            child_ids = [c.id for c in node.children]
            derived = layout_engine.derive_relations(child_ids, layout_for(source_screen, node.id))
            constraints = [
                RelativeConstraint(prefix + t.subject, t.predicate, prefix + t.object)
                for t in sorted(derived, key=lambda t: t.sort_key())
            ]
            if constraints:
                screen.layouts[prefix + node.id] = RelativeLayout(constraints)

    # Relations that held between this round's roots (siblings in their
    # source) are re-emitted on the target screen's root container.
    root_constraints: list[RelativeConstraint] = []
    copied_root_set = set(copied_roots)
    emitted_parents: set[tuple[str, str]] = set()
    for root in copied_roots:
        app = owners[root]
        parent = parent_map(app).get(root)
        if parent is None or (app.id, parent) in emitted_parents:
            continue
        emitted_parents.add((app.id, parent))
        container = component_map(app)[parent]
        siblings_here = [c.id for c in container.children]
        group = [cid for cid in siblings_here if cid in copied_root_set and owners.get(cid) is app]
        if len(group) < 2:
            continue
        prefix = f"{app.id}."
        source_screen = screen_of(app, parent)
        derived = layout_engine.derive_relations(siblings_here, layout_for(source_screen, parent))
        in_group = set(group)
        for t in sorted(derived, key=lambda t: t.sort_key()):
            if t.subject in in_group and t.object in in_group:
                root_constraints.append(RelativeConstraint(prefix + t.subject, t.predicate, prefix + t.object))
    if root_constraints:
        existing = screen.layouts.get(screen.root.id)
        if isinstance(existing, RelativeLayout):
            existing.constraints.extend(root_constraints)
        else:
            screen.layouts[screen.root.id] = RelativeLayout(root_constraints)

    violations = validate(composed)
    if violations:
        raise InvalidApplicationError(violations)
    store = build_store(ws.sources + [composed])

    ws.composed = composed
    ws.store = store
    ws.selection = Selection()
    return screen.id


def _walk(node: UIComponent):
    stack = [(node, None)]
    while stack:
        current, parent = stack.pop()
        yield current, parent
        for child in reversed(current.children):
            stack.append((child, current))


def place_in_screen(
    ws: Workspace, screen_id: str, subject: str, relation: Predicate, anchor: str
) -> None:
    """Anchor one extracted component relative to another on a composed screen."""
    matches = [s for s in ws.composed.screens if s.id == screen_id]
    if not matches:
        raise UnknownIdError(f"unknown screen {screen_id!r}", screen_id)
    screen = matches[0]
    siblings = {c.id for c in screen.root.children}
    for endpoint in (subject, anchor):
        if endpoint in siblings:
            continue
        if ws.store.entity(endpoint) is None:
            raise UnknownIdError(f"unknown component {endpoint!r}", endpoint)
        raise PreconditionError(
            f"{endpoint!r} is not an element of screen {screen_id!r}", endpoint
        )

    current = layout_for(screen, screen.root.id)
    assert isinstance(current, RelativeLayout)
    updated = layout_engine.place(current.constraints, subject, relation, anchor)
    screen.layouts[screen.root.id] = RelativeLayout(updated)
    ws.store = build_store(ws.sources + [ws.composed])


def export_document(ws: Workspace) -> str:
    """Serialize the composed application, with every constrained container
    concretized to a solved table layout (all spans 1)."""
    if not ws.composed.screens:
        raise PreconditionError("composed application is empty", "composed")

    app = ws.composed
    screens = []
    for screen in app.screens:
        layouts: dict = {}
        for node, _ in iter_components_of_screen(screen):
            if node.kind != "container" or not node.children:
                continue
            spec = layout_for(screen, node.id)
            assert isinstance(spec, RelativeLayout)
            child_ids = [c.id for c in node.children]
            placement = layout_engine.solve(child_ids, spec.constraints)
            layouts[node.id] = TableLayout(
                {cid: Cell(row=row, col=col) for cid, (row, col) in placement.items()}
            )
        screens.append(Screen(id=screen.id, name=screen.name, root=screen.root, layouts=layouts))

    document = Application(
        id=EXPORT_APP_ID,
        name=app.name,
        screens=screens,
        tasks=app.tasks,
        functionalities=app.functionalities,
        links=app.links,
    )
    return serialize_application(document)


def iter_components_of_screen(screen: Screen):
    stack = [screen.root]
    while stack:
        node = stack.pop()
        yield node, screen
        stack.extend(reversed(node.children))
