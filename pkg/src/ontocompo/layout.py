"""Spatial reasoning over container layouts.

Three jobs live here: turning any layout style into directional relations
between siblings (``derive_relations``), checking a set of relative
constraints for contradictions (``check_consistency``), and concretizing a
consistent set into grid positions (``solve``). ``place`` is the update
operation the positioning workflow uses.

Grid semantics of the eight directions, used by the checker and the solver:
horizontal cardinals pin the row and order the column, vertical cardinals pin
the column and order the row, diagonals order both axes strictly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ConsistencyConflictError, PreconditionError, UnknownIdError
from .model import AbsoluteLayout, LayoutSpec, Rect, RelativeConstraint, RelativeLayout, TableLayout
from .triples import SPATIAL_PREDICATES, Predicate, Triple, canonical_spatial

_P = Predicate


# ---------------------------------------------------------------------------
# relation derivation


def derive_relations(child_ids: Sequence[str], layout: LayoutSpec) -> set[Triple]:
    """Directional triples among siblings, as implied by their layout.

    Output never contains a triple together with its inverse; the store is
    responsible for inverse closure.
    """
    ids = list(child_ids)
    if isinstance(layout, AbsoluteLayout):
        return _derive_absolute({cid: layout.positions[cid] for cid in ids if cid in layout.positions})
    if isinstance(layout, TableLayout):
        return _derive_table({cid: layout.cells[cid] for cid in ids if cid in layout.cells})
    present = set(ids)
    return {
        Triple(c.subject, c.relation, c.anchor)
        for c in layout.constraints
        if c.subject in present and c.anchor in present
    }


def _classify(a: Rect, b: Rect) -> tuple[Predicate, int] | None:
    """Direction of b relative to a, with the separating edge distance."""
    right_sep = b.x >= a.x + a.w
    left_sep = a.x >= b.x + b.w
    below_sep = b.y >= a.y + a.h
    above_sep = a.y >= b.y + b.h
    v_overlap = a.y < b.y + b.h and b.y < a.y + a.h
    h_overlap = a.x < b.x + b.w and b.x < a.x + a.w

    if right_sep and v_overlap:
        return _P.ON_THE_RIGHT_OF, b.x - (a.x + a.w)
    if left_sep and v_overlap:
        return _P.ON_THE_LEFT_OF, a.x - (b.x + b.w)
    if below_sep and h_overlap:
        return _P.BELOW, b.y - (a.y + a.h)
    if above_sep and h_overlap:
        return _P.ABOVE, a.y - (b.y + b.h)
    if right_sep and below_sep:
        return _P.BELOW_RIGHT, (b.x - (a.x + a.w)) + (b.y - (a.y + a.h))
    if right_sep and above_sep:
        return _P.ABOVE_RIGHT, (b.x - (a.x + a.w)) + (a.y - (b.y + b.h))
    if left_sep and below_sep:
        return _P.BELOW_LEFT, (a.x - (b.x + b.w)) + (b.y - (a.y + a.h))
    if left_sep and above_sep:
        return _P.ABOVE_LEFT, (a.x - (b.x + b.w)) + (a.y - (b.y + b.h))
    return None


def _derive_absolute(rects: Mapping[str, Rect]) -> set[Triple]:
    # For every seed and direction keep only the nearest neighbors, so a chain
    # A-B-C yields A-B and B-C but never the long-range A-C relation.
    nearest: dict[tuple[str, Predicate], tuple[int, list[str]]] = {}
    for aid, a in rects.items():
        for bid, b in rects.items():
            if aid == bid:
                continue
            classified = _classify(a, b)
            if classified is None:
                continue
            direction, gap = classified
            best = nearest.get((aid, direction))
            if best is None or gap < best[0]:
                nearest[(aid, direction)] = (gap, [bid])
            elif gap == best[0]:
                best[1].append(bid)

    triples: set[Triple] = set()
    for (aid, direction), (_, neighbors) in nearest.items():
        for bid in neighbors:
            triples.add(canonical_spatial(bid, direction, aid))
    return triples


def _derive_table(cells: Mapping[str, "object"]) -> set[Triple]:
    triples: set[Triple] = set()
    for aid, a in cells.items():
        a_right = a.col + a.col_span
        a_bottom = a.row + a.row_span
        for bid, b in cells.items():
            if aid == bid:
                continue
            rows_overlap = a.row < b.row + b.row_span and b.row < a_bottom
            cols_overlap = a.col < b.col + b.col_span and b.col < a_right
            if b.col == a_right and rows_overlap:
                triples.add(Triple(bid, _P.ON_THE_RIGHT_OF, aid))
            if b.row == a_bottom and cols_overlap:
                triples.add(Triple(bid, _P.BELOW, aid))
            if b.row == a_bottom and b.col == a_right:
                triples.add(Triple(bid, _P.BELOW_RIGHT, aid))
            if b.row == a_bottom and b.col + b.col_span == a.col:
                triples.add(Triple(bid, _P.BELOW_LEFT, aid))
    return triples


# ---------------------------------------------------------------------------
# consistency


@dataclass(frozen=True)
class Conflict:
    axis: str  # "horizontal", "vertical" or "cell"
    components: tuple[str, ...]

    def __str__(self) -> str:
        members = ", ".join(self.components)
        if self.axis == "cell":
            return f"{members} are forced into the same cell"
        return f"{self.axis} ordering cycle through {members}"


class _UnionFind:
    def __init__(self) -> None:
        self._parent: dict[str, str] = {}

    def find(self, x: str) -> str:
        parent = self._parent.setdefault(x, x)
        if parent != x:
            parent = self.find(parent)
            self._parent[x] = parent
        return parent

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Deterministic representative: the smaller id wins.
            if rb < ra:
                ra, rb = rb, ra
            self._parent[rb] = ra

    def known(self) -> list[str]:
        return list(self._parent)


# Per-axis effect of each direction: "gt" means subject strictly after anchor
# on that axis, "lt" strictly before, "eq" equal, None unconstrained.
_AXIS_EFFECT: dict[Predicate, tuple[str | None, str | None]] = {
    _P.ON_THE_RIGHT_OF: ("gt", "eq"),
    _P.ON_THE_LEFT_OF: ("lt", "eq"),
    _P.BELOW: ("eq", "gt"),
    _P.ABOVE: ("eq", "lt"),
    _P.BELOW_RIGHT: ("gt", "gt"),
    _P.BELOW_LEFT: ("lt", "gt"),
    _P.ABOVE_RIGHT: ("gt", "lt"),
    _P.ABOVE_LEFT: ("lt", "lt"),
}


class _AxisGraph:
    """Strict order over equality-contracted component classes."""

    def __init__(self) -> None:
        self.uf = _UnionFind()
        self._strict: list[tuple[str, str]] = []  # (before, after), pre-contraction
        self.members: dict[str, set[str]] = {}

    def touch(self, component: str) -> None:
        self.uf.find(component)

    def equal(self, a: str, b: str) -> None:
        self.uf.union(a, b)

    def before(self, a: str, b: str) -> None:
        self._strict.append((a, b))

    def edges(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        self.members = {}
        for comp in self.uf.known():
            root = self.uf.find(comp)
            self.members.setdefault(root, set()).add(comp)
            out.setdefault(root, set())
        for a, b in self._strict:
            out.setdefault(self.uf.find(a), set()).add(self.uf.find(b))
        return out


def _strongly_connected(edges: dict[str, set[str]]) -> list[list[str]]:
    """Tarjan's algorithm, iterative; returns components of size > 1 or with a self-loop."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = [0]
    result: list[list[str]] = []

    for start in sorted(edges):
        if start in index:
            continue
        work: list[tuple[str, Iterable[str]]] = [(start, iter(sorted(edges[start])))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter[0]
                    counter[0] += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(sorted(edges[succ]))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1 or node in edges.get(node, set()):
                    result.append(sorted(component))
    return result


def _build_axes(constraints: Iterable[RelativeConstraint]) -> tuple[_AxisGraph, _AxisGraph]:
    x_axis, y_axis = _AxisGraph(), _AxisGraph()
    for c in constraints:
        x_effect, y_effect = _AXIS_EFFECT[c.relation]
        for axis, effect in ((x_axis, x_effect), (y_axis, y_effect)):
            axis.touch(c.subject)
            axis.touch(c.anchor)
            if effect == "eq":
                axis.equal(c.subject, c.anchor)
            elif effect == "gt":
                axis.before(c.anchor, c.subject)
            elif effect == "lt":
                axis.before(c.subject, c.anchor)
    return x_axis, y_axis


def check_consistency(constraints: Sequence[RelativeConstraint]) -> list[Conflict]:
    """All contradictions in the constraint set; empty means solvable."""
    for c in constraints:
        if c.relation not in SPATIAL_PREDICATES:
            raise PreconditionError(f"relation {c.relation.value!r} is not directional", c.relation.value)
        if c.subject == c.anchor:
            raise PreconditionError(f"{c.subject!r} cannot be anchored to itself", c.subject)

    x_axis, y_axis = _build_axes(constraints)
    conflicts: list[Conflict] = []
    axis_names = (("horizontal", x_axis), ("vertical", y_axis))
    for name, axis in axis_names:
        edges = axis.edges()
        for scc in _strongly_connected(edges):
            involved = sorted(set().union(*(axis.members[root] for root in scc)))
            conflicts.append(Conflict(name, tuple(involved)))

    # Two components pinned to the same row class and the same column class
    # cannot both get a cell of their own.
    groups: dict[tuple[str, str], list[str]] = {}
    for comp in sorted(set(x_axis.uf.known()) | set(y_axis.uf.known())):
        key = (x_axis.uf.find(comp), y_axis.uf.find(comp))
        groups.setdefault(key, []).append(comp)
    for key in sorted(groups):
        members = groups[key]
        if len(members) > 1:
            conflicts.append(Conflict("cell", tuple(sorted(members))))
    return conflicts


# ---------------------------------------------------------------------------
# solving


def _longest_path_ranks(edges: dict[str, set[str]]) -> dict[str, int]:
    indegree = {node: 0 for node in edges}
    for node, succs in edges.items():
        for succ in succs:
            indegree[succ] += 1
    frontier = sorted(node for node, deg in indegree.items() if deg == 0)
    rank = {node: 0 for node in edges}
    order: list[str] = []
    while frontier:
        node = frontier.pop(0)
        order.append(node)
        for succ in sorted(edges[node]):
            rank[succ] = max(rank[succ], rank[node] + 1)
            indegree[succ] -= 1
            if indegree[succ] == 0:
                frontier.append(succ)
    return rank


def solve(component_ids: Sequence[str], constraints: Sequence[RelativeConstraint]) -> dict[str, tuple[int, int]]:
    """Grid positions (row, col) satisfying every constraint.

    Deterministic: axis orders come from longest-path ranks over the
    equality-contracted constraint graphs; leftover cell collisions are
    separated by id order; components free of constraints land on fresh rows.
    """
    known = set(component_ids)
    for c in constraints:
        for endpoint in (c.subject, c.anchor):
            if endpoint not in known:
                raise UnknownIdError(f"constraint references unknown component {endpoint!r}", endpoint)
    conflicts = check_consistency(constraints)
    if conflicts:
        raise ConsistencyConflictError(conflicts)

    x_axis, y_axis = _build_axes(constraints)
    constrained = sorted(set(x_axis.uf.known()) | set(y_axis.uf.known()))

    placement: dict[str, tuple[int, int]] = {}
    while True:
        x_rank = _longest_path_ranks(x_axis.edges())
        y_rank = _longest_path_ranks(y_axis.edges())
        placement = {
            comp: (y_rank[y_axis.uf.find(comp)], x_rank[x_axis.uf.find(comp)])
            for comp in constrained
        }
        occupied: dict[tuple[int, int], list[str]] = {}
        for comp in constrained:
            occupied.setdefault(placement[comp], []).append(comp)
        collisions = sorted(
            (cell, sorted(members)) for cell, members in occupied.items() if len(members) > 1
        )
        if not collisions:
            break
        # Separate the two smallest colliding components; an edge between
        # equal-rank classes can never create a cycle.
        _, members = collisions[0]
        first, second = members[0], members[1]
        if y_axis.uf.find(first) != y_axis.uf.find(second):
            y_axis.before(first, second)
        else:
            x_axis.before(first, second)

    next_row = max((row for row, _ in placement.values()), default=-1) + 1
    for comp in sorted(known - set(constrained)):
        placement[comp] = (next_row, 0)
        next_row += 1
    return placement


def place(
    constraints: Sequence[RelativeConstraint],
    subject: str,
    relation: Predicate,
    anchor: str,
) -> list[RelativeConstraint]:
    """Re-anchor subject relative to anchor, replacing any earlier constraint
    between the two. Raises without side effects when the result would be
    inconsistent."""
    if subject == anchor:
        raise PreconditionError(f"{subject!r} cannot be anchored to itself", subject)
    if relation not in SPATIAL_PREDICATES:
        raise PreconditionError(f"relation {relation.value!r} is not directional", relation.value)
    kept = [c for c in constraints if {c.subject, c.anchor} != {subject, anchor}]
    kept.append(RelativeConstraint(subject, relation, anchor))
    conflicts = check_consistency(kept)
    if conflicts:
        raise ConsistencyConflictError(conflicts, subject)
    return kept
