"""Predicate vocabulary and triple primitives shared by the store and the engines."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Predicate(str, Enum):
    CONTAINS = "contains"
    ON_THE_LEFT_OF = "onTheLeftOf"
    ON_THE_RIGHT_OF = "onTheRightOf"
    ABOVE = "above"
    BELOW = "below"
    ABOVE_LEFT = "aboveLeft"
    ABOVE_RIGHT = "aboveRight"
    BELOW_LEFT = "belowLeft"
    BELOW_RIGHT = "belowRight"
    LINKED_TO_TASK = "linkedToTask"
    LINKED_TO_FUNCTIONALITY = "linkedToFunctionality"
    TASK_USES_FUNCTIONALITY = "taskUsesFunctionality"
    SUB_TASK_OF = "subTaskOf"
    BELONGS_TO_SCREEN = "belongsToScreen"
    BELONGS_TO_APP = "belongsToApp"

    def __str__(self) -> str:
        return self.value


#: The eight directional predicates, in declaration order. This order is the
#: canonical iteration order wherever directions are enumerated.
DIRECTIONS: tuple[Predicate, ...] = (
    Predicate.ON_THE_LEFT_OF,
    Predicate.ON_THE_RIGHT_OF,
    Predicate.ABOVE,
    Predicate.BELOW,
    Predicate.ABOVE_LEFT,
    Predicate.ABOVE_RIGHT,
    Predicate.BELOW_LEFT,
    Predicate.BELOW_RIGHT,
)

SPATIAL_PREDICATES: frozenset[Predicate] = frozenset(DIRECTIONS)

#: Inverse pairs among the directional predicates, both ways.
SPATIAL_INVERSE: dict[Predicate, Predicate] = {
    Predicate.ON_THE_RIGHT_OF: Predicate.ON_THE_LEFT_OF,
    Predicate.ON_THE_LEFT_OF: Predicate.ON_THE_RIGHT_OF,
    Predicate.ABOVE: Predicate.BELOW,
    Predicate.BELOW: Predicate.ABOVE,
    Predicate.ABOVE_LEFT: Predicate.BELOW_RIGHT,
    Predicate.BELOW_RIGHT: Predicate.ABOVE_LEFT,
    Predicate.ABOVE_RIGHT: Predicate.BELOW_LEFT,
    Predicate.BELOW_LEFT: Predicate.ABOVE_RIGHT,
}

#: Directions kept when normalizing a spatial statement so that each geometric
#: fact has exactly one representative triple.
CANONICAL_DIRECTIONS: frozenset[Predicate] = frozenset(
    {
        Predicate.ON_THE_RIGHT_OF,
        Predicate.BELOW,
        Predicate.BELOW_RIGHT,
        Predicate.BELOW_LEFT,
    }
)


class EntityKind(str, Enum):
    COMPONENT = "component"
    TASK = "task"
    FUNCTIONALITY = "functionality"
    SCREEN = "screen"
    APPLICATION = "application"

    def __str__(self) -> str:
        return self.value


#: (subject kind, object kind) required by each predicate.
PREDICATE_SIGNATURE: dict[Predicate, tuple[EntityKind, EntityKind]] = {
    Predicate.CONTAINS: (EntityKind.COMPONENT, EntityKind.COMPONENT),
    Predicate.LINKED_TO_TASK: (EntityKind.COMPONENT, EntityKind.TASK),
    Predicate.LINKED_TO_FUNCTIONALITY: (EntityKind.COMPONENT, EntityKind.FUNCTIONALITY),
    Predicate.TASK_USES_FUNCTIONALITY: (EntityKind.TASK, EntityKind.FUNCTIONALITY),
    Predicate.SUB_TASK_OF: (EntityKind.TASK, EntityKind.TASK),
    Predicate.BELONGS_TO_SCREEN: (EntityKind.COMPONENT, EntityKind.SCREEN),
    Predicate.BELONGS_TO_APP: (EntityKind.COMPONENT, EntityKind.APPLICATION),
    **{d: (EntityKind.COMPONENT, EntityKind.COMPONENT) for d in DIRECTIONS},
}


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: Predicate
    object: str

    def inverse(self) -> Triple | None:
        """The mirrored triple for a directional statement, None otherwise."""
        inv = SPATIAL_INVERSE.get(self.predicate)
        if inv is None:
            return None
        return Triple(self.object, inv, self.subject)

    def sort_key(self) -> tuple[str, str, str]:
        return (self.subject, self.predicate.value, self.object)


def canonical_spatial(subject: str, predicate: Predicate, obj: str) -> Triple:
    """Normalize a directional statement to its canonical orientation."""
    if predicate in CANONICAL_DIRECTIONS or predicate not in SPATIAL_PREDICATES:
        return Triple(subject, predicate, obj)
    return Triple(obj, SPATIAL_INVERSE[predicate], subject)


_DIRECTION_ALIASES = {
    "left": Predicate.ON_THE_LEFT_OF,
    "right": Predicate.ON_THE_RIGHT_OF,
}


def direction_from_string(value: str) -> Predicate:
    """Resolve a direction name (predicate name or short alias) to a predicate."""
    if value in _DIRECTION_ALIASES:
        return _DIRECTION_ALIASES[value]
    for d in DIRECTIONS:
        if value == d.value:
            return d
    raise ValueError(f"unknown direction {value!r}")
