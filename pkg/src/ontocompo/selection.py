"""Selection state and the operators that grow it.

A selection is an ordered, duplicate-free list of component ids. The extend
operators add components reachable from the current items through the store:
spatial neighbors, the containing parent, co-workers on a task, and components
sharing functionalities. ``suggest`` previews the same additions as questions
without touching the selection.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Collection

from .errors import PreconditionError, UnknownIdError
from .store import Store
from .triples import DIRECTIONS, EntityKind, Predicate, SPATIAL_PREDICATES


class ExtensionScope(str, Enum):
    FIRST = "first"
    LAST = "last"
    ALL = "all"


class SuggestionSource(str, Enum):
    TASK = "task"
    FUNCTIONALITY = "functionality"
    LAYOUT = "layout"


class SuggestionMode(str, Enum):
    TASKS = "tasks"
    FUNCTIONALITIES = "functionalities"
    LAYOUT = "layout"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Selection:
    items: tuple[str, ...] = ()

    def __contains__(self, component_id: str) -> bool:
        return component_id in self.items

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class Suggestion:
    question: str
    candidates: tuple[str, ...]
    source: SuggestionSource


_TASK_QUESTION = "Also select the {n} element(s) linked to task '{name}'?"
_FUNC_QUESTION = "Also select the {n} element(s) linked to functionality '{name}'?"
_LAYOUT_QUESTION = "Also select the {n} element(s) {direction} '{seed}'?"


def _require_component(store: Store, component_id: str) -> None:
    entity = store.entity(component_id)
    if entity is None or entity.kind is not EntityKind.COMPONENT:
        raise UnknownIdError(f"unknown component {component_id!r}", component_id)


def _require_nonempty(selection: Selection) -> None:
    if not selection.items:
        raise PreconditionError("selection is empty", "selection")


def select(store: Store, selection: Selection, component_id: str) -> Selection:
    """Append a component; re-selecting is a no-op."""
    _require_component(store, component_id)
    if component_id in selection.items:
        return selection
    return Selection(selection.items + (component_id,))


def deselect(store: Store, selection: Selection, component_id: str) -> Selection:
    """Drop a component, keeping the order of the rest."""
    _require_component(store, component_id)
    return Selection(tuple(i for i in selection.items if i != component_id))


def _seeds(selection: Selection, scope: ExtensionScope) -> tuple[str, ...]:
    if scope is ExtensionScope.FIRST:
        return (selection.items[0],)
    if scope is ExtensionScope.LAST:
        return (selection.items[-1],)
    return selection.items


def extend_layout(
    store: Store,
    selection: Selection,
    directions: Collection[Predicate],
    scope: ExtensionScope = ExtensionScope.LAST,
) -> Selection:
    """Add the direct spatial neighbors of the seed items, per toggled direction."""
    _require_nonempty(selection)
    if not directions:
        raise PreconditionError("no directions toggled", "directions")
    for direction in directions:
        if direction not in SPATIAL_PREDICATES:
            raise PreconditionError(f"{direction.value!r} is not a direction", direction.value)

    items = list(selection.items)
    present = set(items)
    for seed in _seeds(selection, scope):
        found: set[str] = set()
        for direction in DIRECTIONS:
            if direction not in directions:
                continue
            found |= store.subjects(direction, seed)
        for candidate in sorted(found):
            if candidate not in present:
                items.append(candidate)
                present.add(candidate)
    return Selection(tuple(items))


def extend_parent(store: Store, selection: Selection) -> Selection:
    """Add the container of the last selected item, when it has one."""
    _require_nonempty(selection)
    last = selection.items[-1]
    parents = store.subjects(Predicate.CONTAINS, last)
    items = list(selection.items)
    present = set(items)
    for parent in sorted(parents):
        if parent not in present:
            items.append(parent)
            present.add(parent)
    return Selection(tuple(items))


def extend_task(store: Store, selection: Selection) -> Selection:
    """Add every component linked to a task of the last selected item."""
    _require_nonempty(selection)
    last = selection.items[-1]
    found: set[str] = set()
    for task in store.objects(last, Predicate.LINKED_TO_TASK):
        found |= store.subjects(Predicate.LINKED_TO_TASK, task)
    items = list(selection.items)
    present = set(items)
    for candidate in sorted(found):
        if candidate not in present:
            items.append(candidate)
            present.add(candidate)
    return Selection(tuple(items))


def _functionalities_of(store: Store, component_id: str) -> set[str]:
    functionalities = store.objects(component_id, Predicate.LINKED_TO_FUNCTIONALITY)
    for task in store.objects(component_id, Predicate.LINKED_TO_TASK):
        functionalities |= store.objects(task, Predicate.TASK_USES_FUNCTIONALITY)
    return functionalities


def _components_using(store: Store, functionality_id: str) -> set[str]:
    components = store.subjects(Predicate.LINKED_TO_FUNCTIONALITY, functionality_id)
    for task in store.subjects(Predicate.TASK_USES_FUNCTIONALITY, functionality_id):
        components |= store.subjects(Predicate.LINKED_TO_TASK, task)
    return components


def extend_functionality(store: Store, selection: Selection) -> Selection:
    """Add every component sharing a functionality with any selected item.

    A component counts as using a functionality when linked to it directly or
    when linked to a task that uses it.
    """
    _require_nonempty(selection)
    functionalities: set[str] = set()
    for item in selection.items:
        functionalities |= _functionalities_of(store, item)
    found: set[str] = set()
    for functionality in functionalities:
        found |= _components_using(store, functionality)
    items = list(selection.items)
    present = set(items)
    for candidate in sorted(found):
        if candidate not in present:
            items.append(candidate)
            present.add(candidate)
    return Selection(tuple(items))


def suggest(store: Store, selection: Selection, mode: SuggestionMode) -> list[Suggestion]:
    """Questions previewing what the extend operators would add. Pure."""
    _require_nonempty(selection)
    if mode is SuggestionMode.TASKS:
        return _suggest_tasks(store, selection)
    if mode is SuggestionMode.FUNCTIONALITIES:
        return _suggest_functionalities(store, selection)
    if mode is SuggestionMode.LAYOUT:
        return _suggest_layout(store, selection)
    return (
        _suggest_tasks(store, selection)
        + _suggest_functionalities(store, selection)
        + _suggest_layout(store, selection)
    )


def _suggest_tasks(store: Store, selection: Selection) -> list[Suggestion]:
    last = selection.items[-1]
    present = set(selection.items)
    suggestions = []
    for task in sorted(store.objects(last, Predicate.LINKED_TO_TASK)):
        candidates = tuple(sorted(store.subjects(Predicate.LINKED_TO_TASK, task) - present))
        if not candidates:
            continue
        question = _TASK_QUESTION.format(n=len(candidates), name=store.display_name(task))
        suggestions.append(Suggestion(question, candidates, SuggestionSource.TASK))
    return suggestions


def _suggest_functionalities(store: Store, selection: Selection) -> list[Suggestion]:
    present = set(selection.items)
    functionalities: set[str] = set()
    for item in selection.items:
        functionalities |= _functionalities_of(store, item)
    suggestions = []
    for functionality in sorted(functionalities):
        candidates = tuple(sorted(_components_using(store, functionality) - present))
        if not candidates:
            continue
        question = _FUNC_QUESTION.format(n=len(candidates), name=store.display_name(functionality))
        suggestions.append(Suggestion(question, candidates, SuggestionSource.FUNCTIONALITY))
    return suggestions


def _suggest_layout(store: Store, selection: Selection) -> list[Suggestion]:
    last = selection.items[-1]
    present = set(selection.items)
    suggestions = []
    for direction in DIRECTIONS:
        candidates = tuple(sorted(store.subjects(direction, last) - present))
        if not candidates:
            continue
        question = _LAYOUT_QUESTION.format(
            n=len(candidates), direction=direction.value, seed=store.display_name(last)
        )
        suggestions.append(Suggestion(question, candidates, SuggestionSource.LAYOUT))
    return suggestions
