"""Indexed triple store over loaded applications, with conjunctive queries.

The store registers every entity (component, task, functionality, screen,
application) of the loaded applications and holds directional facts closed
under inverses: inserting "B onTheRightOf A" also makes "A onTheLeftOf B"
hold, and removing either removes both.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import layout
from .errors import DuplicateIdError, InvalidApplicationError, PreconditionError, UnknownIdError
from .model import Application, UITaskLink, iter_components, layout_for, validate
from .triples import EntityKind, PREDICATE_SIGNATURE, Predicate, Triple


@dataclass(frozen=True)
class Entity:
    id: str
    kind: EntityKind
    name: str = ""


def is_variable(term: str) -> bool:
    return term.startswith("?")


@dataclass(frozen=True)
class Clause:
    subject: str
    predicate: Predicate
    object: str


@dataclass(frozen=True)
class Pattern:
    """A conjunction of clauses; terms starting with '?' are variables."""

    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if not self.clauses:
            raise PreconditionError("a pattern needs at least one clause")
        for clause in self.clauses:
            for term in (clause.subject, clause.object):
                if is_variable(term) and len(term) < 2:
                    raise PreconditionError("variable names cannot be empty")

    def variables(self) -> list[str]:
        seen: list[str] = []
        for clause in self.clauses:
            for term in (clause.subject, clause.object):
                if is_variable(term) and term not in seen:
                    seen.append(term)
        return seen


def pattern(*clauses: tuple[str, Predicate, str]) -> Pattern:
    return Pattern(tuple(Clause(s, p, o) for s, p, o in clauses))


class Store:
    def __init__(self, entities: Iterable[Entity] = ()):
        self._entities: dict[str, Entity] = {}
        self._triples: set[Triple] = set()
        self._by_sp: dict[tuple[str, Predicate], set[str]] = defaultdict(set)
        self._by_op: dict[tuple[str, Predicate], set[str]] = defaultdict(set)
        self._by_p: dict[Predicate, set[Triple]] = defaultdict(set)
        for entity in entities:
            self.register(entity)

    # -- entities -----------------------------------------------------------

    def register(self, entity: Entity) -> None:
        existing = self._entities.get(entity.id)
        if existing is not None:
            if existing.kind is not entity.kind:
                raise DuplicateIdError(
                    f"id {entity.id!r} is registered both as {existing.kind} and {entity.kind}",
                    entity.id,
                )
            return
        self._entities[entity.id] = entity

    def entity(self, entity_id: str) -> Entity | None:
        return self._entities.get(entity_id)

    def entity_ids(self) -> list[str]:
        return sorted(self._entities)

    def display_name(self, entity_id: str) -> str:
        entity = self._entities.get(entity_id)
        if entity is None or not entity.name:
            return entity_id
        return entity.name

    # -- triples ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def has(self, subject: str, predicate: Predicate, obj: str) -> bool:
        return Triple(subject, predicate, obj) in self._triples

    def objects(self, subject: str, predicate: Predicate) -> set[str]:
        return set(self._by_sp.get((subject, predicate), ()))

    def subjects(self, predicate: Predicate, obj: str) -> set[str]:
        return set(self._by_op.get((obj, predicate), ()))

    def _check(self, triple: Triple) -> None:
        subject_kind, object_kind = PREDICATE_SIGNATURE[triple.predicate]
        for term, kind in ((triple.subject, subject_kind), (triple.object, object_kind)):
            entity = self._entities.get(term)
            if entity is None:
                raise UnknownIdError(f"unknown entity {term!r}", term)
            if entity.kind is not kind:
                raise PreconditionError(
                    f"{triple.predicate.value} expects a {kind}, got {entity.kind} {term!r}", term
                )

    def _add_raw(self, triple: Triple) -> None:
        if triple in self._triples:
            return
        self._triples.add(triple)
        self._by_sp[(triple.subject, triple.predicate)].add(triple.object)
        self._by_op[(triple.object, triple.predicate)].add(triple.subject)
        self._by_p[triple.predicate].add(triple)

    def _remove_raw(self, triple: Triple) -> None:
        if triple not in self._triples:
            return
        self._triples.discard(triple)
        self._by_sp[(triple.subject, triple.predicate)].discard(triple.object)
        self._by_op[(triple.object, triple.predicate)].discard(triple.subject)
        self._by_p[triple.predicate].discard(triple)

    def insert(self, triple: Triple) -> None:
        """Add a fact (and its inverse, for directional predicates)."""
        self._check(triple)
        self._add_raw(triple)
        inverse = triple.inverse()
        if inverse is not None:
            self._add_raw(inverse)

    def remove(self, triple: Triple) -> None:
        """Remove a fact and its inverse; absent facts are ignored."""
        self._check(triple)
        self._remove_raw(triple)
        inverse = triple.inverse()
        if inverse is not None:
            self._remove_raw(inverse)

    # -- queries ------------------------------------------------------------

    def match(self, query: Pattern) -> list[dict[str, str]]:
        """All variable bindings satisfying every clause, sorted and unique."""
        results: dict[tuple, dict[str, str]] = {}

        def resolve(term: str, binding: dict[str, str]) -> str | None:
            if is_variable(term):
                return binding.get(term)
            return term

        def extend(index: int, binding: dict[str, str]) -> None:
            if index == len(query.clauses):
                key = tuple(sorted(binding.items()))
                results[key] = dict(binding)
                return
            clause = query.clauses[index]
            subject = resolve(clause.subject, binding)
            obj = resolve(clause.object, binding)
            if subject is not None and obj is not None:
                if self.has(subject, clause.predicate, obj):
                    extend(index + 1, binding)
                return
            if subject is not None:
                for candidate in sorted(self._by_sp.get((subject, clause.predicate), ())):
                    extend(index + 1, {**binding, clause.object: candidate})
                return
            if obj is not None:
                for candidate in sorted(self._by_op.get((obj, clause.predicate), ())):
                    extend(index + 1, {**binding, clause.subject: candidate})
                return
            for triple in sorted(self._by_p.get(clause.predicate, ()), key=Triple.sort_key):
                if clause.subject == clause.object:
                    if triple.subject != triple.object:
                        continue
                    extend(index + 1, {**binding, clause.subject: triple.subject})
                else:
                    extend(index + 1, {**binding, clause.subject: triple.subject, clause.object: triple.object})

        extend(0, {})
        return [results[key] for key in sorted(results)]

    # -- dump ---------------------------------------------------------------

    def dump(self) -> str:
        """One line per triple, tab-separated, sorted; ends with a newline when nonempty."""
        lines = sorted(f"{t.subject}\t{t.predicate.value}\t{t.object}" for t in self._triples)
        return "".join(line + "\n" for line in lines)


def build_store(apps: Sequence[Application]) -> Store:
    """Index every application into one store.

    Entity ids may repeat across applications when they denote the same kind
    of thing (that is what lets a shared functionality connect two sources);
    application ids must be distinct.
    """
    seen_apps: set[str] = set()
    for app in apps:
        if app.id in seen_apps:
            raise DuplicateIdError(f"application id {app.id!r} loaded twice", app.id)
        seen_apps.add(app.id)
        violations = validate(app)
        if violations:
            raise InvalidApplicationError(violations)

    store = Store()
    for app in apps:
        store.register(Entity(app.id, EntityKind.APPLICATION, app.name))
        for screen in app.screens:
            store.register(Entity(screen.id, EntityKind.SCREEN, screen.name))
        for component, _ in iter_components(app):
            store.register(Entity(component.id, EntityKind.COMPONENT, component.label))
        for task in app.tasks:
            store.register(Entity(task.id, EntityKind.TASK, task.name))
        for functionality in app.functionalities:
            store.register(Entity(functionality.id, EntityKind.FUNCTIONALITY, functionality.name))

    for app in apps:
        for screen in app.screens:
            for component in _screen_tree(screen):
                store.insert(Triple(component.id, Predicate.BELONGS_TO_SCREEN, screen.id))
                store.insert(Triple(component.id, Predicate.BELONGS_TO_APP, app.id))
                for child in component.children:
                    store.insert(Triple(component.id, Predicate.CONTAINS, child.id))
                if component.kind == "container" and component.children:
                    child_ids = [c.id for c in component.children]
                    for triple in layout.derive_relations(child_ids, layout_for(screen, component.id)):
                        store.insert(triple)
        for task in app.tasks:
            if task.parent is not None:
                store.insert(Triple(task.id, Predicate.SUB_TASK_OF, task.parent))
            for fid in task.functionalities:
                store.insert(Triple(task.id, Predicate.TASK_USES_FUNCTIONALITY, fid))
        for link in app.links:
            if isinstance(link, UITaskLink):
                store.insert(Triple(link.ui, Predicate.LINKED_TO_TASK, link.task))
            else:
                store.insert(Triple(link.ui, Predicate.LINKED_TO_FUNCTIONALITY, link.functionality))
    return store


def _screen_tree(screen):
    stack = [screen.root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children))
