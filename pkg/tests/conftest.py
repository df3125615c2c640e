"""Shared fixtures: example documents, oracles, and random-value generators.

The generators build applications that are valid by construction (layouts
cover exactly their container's children, constraints stay consistent), so
property tests can parse, load, and extract from them without special cases.
"""

from __future__ import annotations

import itertools
import json
import random
from importlib import resources

import pytest

from ontocompo import (
    Application,
    Functionality,
    Pattern,
    Predicate,
    RelativeConstraint,
    RelativeLayout,
    Rect,
    Cell,
    AbsoluteLayout,
    TableLayout,
    Screen,
    Store,
    TaskNode,
    UIComponent,
    UIFuncLink,
    UITaskLink,
    Workspace,
    build_store,
    load_application,
    new_workspace,
    parse_application,
    pattern,
    select,
)
from ontocompo.triples import DIRECTIONS

_FIXTURES = resources.files("ontocompo") / "fixtures"

LEAF_KINDS = ("button", "textfield", "label", "list", "image", "custom")


def fixture_text(name: str) -> str:
    return (_FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture
def insurancec() -> Application:
    return parse_application(fixture_text("insurancec.json"))


@pytest.fixture
def businessdir() -> Application:
    return parse_application(fixture_text("businessdir.json"))


@pytest.fixture
def manifest() -> dict:
    return json.loads(fixture_text("insurancec.manifest.json"))


@pytest.fixture
def casestudy_script() -> str:
    return fixture_text("casestudy.script")


# ---------------------------------------------------------------------------
# random applications


def _random_layout(rng: random.Random, child_ids: list[str]):
    """A layout of a random type covering exactly the given children."""
    choice = rng.choice(("none", "absolute", "table", "relative"))
    if choice == "none" or not child_ids:
        return None
    if choice == "absolute":
        slots = rng.sample(
            [(row, col) for row in range(4) for col in range(4)], len(child_ids)
        )
        positions = {}
        for cid, (row, col) in zip(child_ids, slots):
            positions[cid] = Rect(
                x=col * 120 + rng.randint(0, 10),
                y=row * 80 + rng.randint(0, 8),
                w=rng.randint(40, 100),
                h=rng.randint(20, 60),
            )
        return AbsoluteLayout(positions)
    if choice == "table":
        slots = rng.sample(
            [(row, col) for row in range(4) for col in range(3)], len(child_ids)
        )
        return TableLayout({cid: Cell(row=row, col=col) for cid, (row, col) in zip(child_ids, slots)})
    constraints = [
        RelativeConstraint(child_ids[i], rng.choice(DIRECTIONS), child_ids[i - 1])
        for i in range(1, len(child_ids))
        if rng.random() < 0.8
    ]
    return RelativeLayout(constraints)


def random_application(rng: random.Random, index: int = 0) -> Application:
    """A valid random application with 1-2 screens and a few tasks and links."""
    prefix = f"App{index}"
    counter = itertools.count()

    def fresh(kind_tag: str) -> str:
        return f"{prefix}{kind_tag}{next(counter)}"

    screens = []
    component_ids: list[str] = []
    for s in range(rng.randint(1, 2)):
        children = []
        for _ in range(rng.randint(2, 5)):
            if rng.random() < 0.3:
                grandchildren = [
                    UIComponent(fresh("C"), rng.choice(LEAF_KINDS), label=f"Widget {next(counter)}")
                    for _ in range(rng.randint(2, 4))
                ]
                child = UIComponent(fresh("C"), "container", label="Group", children=grandchildren)
            else:
                child = UIComponent(fresh("C"), rng.choice(LEAF_KINDS), label=f"Widget {next(counter)}")
            children.append(child)
        root = UIComponent(f"{prefix}S{s}Root", "container", label=f"Screen {s}", children=children)
        layouts = {}
        for container in [root] + [c for c in children if c.kind == "container"]:
            layout = _random_layout(rng, [ch.id for ch in container.children])
            if layout is not None:
                layouts[container.id] = layout
        screen = Screen(id=f"{prefix}S{s}", name=f"Screen {s}", root=root, layouts=layouts)
        screens.append(screen)
        component_ids.append(root.id)
        component_ids.extend(c.id for c in children)
        for c in children:
            component_ids.extend(g.id for g in c.children)

    functionalities = [
        Functionality(fresh("F"), name=f"Func {i}", signature=f"func{i}()")
        for i in range(rng.randint(0, 3))
    ]
    tasks: list[TaskNode] = []
    for i in range(rng.randint(0, 3)):
        parent = rng.choice(tasks).id if tasks and rng.random() < 0.4 else None
        used = [f.id for f in functionalities if rng.random() < 0.4]
        tasks.append(TaskNode(fresh("T"), name=f"Task {i}", parent=parent, functionalities=used))

    links: list = []
    seen: set[tuple] = set()
    for _ in range(rng.randint(0, 8)):
        ui = rng.choice(component_ids)
        if tasks and rng.random() < 0.6:
            link = UITaskLink(ui=ui, task=rng.choice(tasks).id)
        elif functionalities:
            link = UIFuncLink(ui=ui, functionality=rng.choice(functionalities).id)
        else:
            continue
        key = (type(link).__name__, ui, getattr(link, "task", None) or link.functionality)
        if key in seen:
            continue
        seen.add(key)
        links.append(link)

    return Application(
        id=prefix,
        name=f"Application {index}",
        screens=screens,
        tasks=tasks,
        functionalities=functionalities,
        links=links,
    )


def random_workspace(rng: random.Random, apps: int = 1, seed_selection: bool = True) -> Workspace:
    """A workspace holding random applications, optionally with a seeded selection."""
    ws = new_workspace()
    for i in range(apps):
        load_application(ws, random_application(rng, index=i))
    if seed_selection:
        components = sorted(
            e for e in ws.store.entity_ids() if ws.store.entity(e).kind.value == "component"
        )
        for cid in rng.sample(components, k=min(len(components), rng.randint(1, 3))):
            ws.selection = select(ws.store, ws.selection, cid)
    return ws


def random_store(rng: random.Random) -> Store:
    return build_store([random_application(rng, index=i) for i in range(rng.randint(1, 2))])


# ---------------------------------------------------------------------------
# oracles


def naive_match(store: Store, query: Pattern) -> list[dict[str, str]]:
    """Reference pattern matcher: enumerate every id combination and filter."""
    ids = sorted(store.entity_ids())
    variables = query.variables()
    facts = {(t.subject, t.predicate, t.object) for t in store}
    found: dict[tuple, dict[str, str]] = {}
    for combo in itertools.product(ids, repeat=len(variables)):
        binding = dict(zip(variables, combo))
        ok = all(
            (
                binding.get(clause.subject, clause.subject),
                clause.predicate,
                binding.get(clause.object, clause.object),
            )
            in facts
            for clause in query.clauses
        )
        if ok:
            found[tuple(sorted(binding.items()))] = binding
    return [dict(found[key]) for key in sorted(found)]


def random_pattern(rng: random.Random, store: Store) -> Pattern:
    ids = sorted(store.entity_ids())
    variables = ["?a", "?b", "?c"]
    clauses = []
    for _ in range(rng.randint(1, 3)):
        subject = rng.choice(variables) if rng.random() < 0.5 else rng.choice(ids)
        obj = rng.choice(variables) if rng.random() < 0.5 else rng.choice(ids)
        clauses.append((subject, rng.choice(list(Predicate)), obj))
    return pattern(*clauses)


# ---------------------------------------------------------------------------
# constraint sets


def _witness_relation(subject_cell: tuple[int, int], anchor_cell: tuple[int, int]) -> Predicate:
    """The one relation that holds between two distinct grid cells."""
    (sr, sc), (ar, ac) = subject_cell, anchor_cell
    if sr == ar:
        return Predicate.ON_THE_RIGHT_OF if sc > ac else Predicate.ON_THE_LEFT_OF
    if sc == ac:
        return Predicate.BELOW if sr > ar else Predicate.ABOVE
    if sr > ar:
        return Predicate.BELOW_RIGHT if sc > ac else Predicate.BELOW_LEFT
    return Predicate.ABOVE_RIGHT if sc > ac else Predicate.ABOVE_LEFT


def consistent_constraints(
    rng: random.Random, max_components: int = 12, max_constraints: int = 20
) -> tuple[list[str], list[RelativeConstraint]]:
    """A constraint set with a known satisfying placement."""
    ids = [f"W{i}" for i in range(rng.randint(2, max_components))]
    cells = rng.sample([(r, c) for r in range(4) for c in range(4)], len(ids))
    witness = dict(zip(ids, cells))
    constraints = []
    for _ in range(rng.randint(1, max_constraints)):
        subject, anchor = rng.sample(ids, 2)
        constraints.append(
            RelativeConstraint(subject, _witness_relation(witness[subject], witness[anchor]), anchor)
        )
    return ids, constraints


def inconsistent_constraints(rng: random.Random) -> tuple[list[str], list[RelativeConstraint]]:
    """A constraint set with an injected contradiction, cycle, or cell clash."""
    ids, constraints = consistent_constraints(rng)
    kind = rng.choice(("reverse", "cycle", "cell"))
    if kind == "reverse" or len(ids) < 4:
        broken = rng.choice(constraints)
        constraints.append(RelativeConstraint(broken.anchor, broken.relation, broken.subject))
    elif kind == "cycle":
        a, b, c = rng.sample(ids, 3)
        relation = rng.choice(DIRECTIONS)
        constraints += [
            RelativeConstraint(b, relation, a),
            RelativeConstraint(c, relation, b),
            RelativeConstraint(a, relation, c),
        ]
    else:
        d, a, b, e = rng.sample(ids, 4)
        constraints += [
            RelativeConstraint(e, Predicate.BELOW, a),
            RelativeConstraint(e, Predicate.BELOW, b),
            RelativeConstraint(a, Predicate.ON_THE_RIGHT_OF, d),
            RelativeConstraint(b, Predicate.ON_THE_RIGHT_OF, d),
        ]
    return ids, constraints


def placement_satisfies(placement: dict[str, tuple[int, int]], constraint: RelativeConstraint) -> bool:
    """Check one constraint against solved grid coordinates."""
    effects = {
        Predicate.ON_THE_RIGHT_OF: ("gt", "eq"),
        Predicate.ON_THE_LEFT_OF: ("lt", "eq"),
        Predicate.BELOW: ("eq", "gt"),
        Predicate.ABOVE: ("eq", "lt"),
        Predicate.BELOW_RIGHT: ("gt", "gt"),
        Predicate.BELOW_LEFT: ("lt", "gt"),
        Predicate.ABOVE_RIGHT: ("gt", "lt"),
        Predicate.ABOVE_LEFT: ("lt", "lt"),
    }
    x_effect, y_effect = effects[constraint.relation]
    (srow, scol) = placement[constraint.subject]
    (arow, acol) = placement[constraint.anchor]
    checks = {"gt": lambda s, a: s > a, "lt": lambda s, a: s < a, "eq": lambda s, a: s == a}
    return checks[x_effect](scol, acol) and checks[y_effect](srow, arow)
