"""Traces, conditional orders and the reduced poset of least expressive events."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .events import Event, EventLattice, empty_event, full_event
from .poset import FinitePreorder, element_key, is_lattice
from .structure import EMPTY_SPACE, Structure


def trace(structure: Structure, e: Event, space: str) -> frozenset:
    """The part of ``e``'s upper set lying in ``space``."""
    return e.upper & structure.states(space)


def cond_leq(structure: Structure, e1: Event, e2: Event, space: str) -> bool:
    """Inclusion of traces on ``space``."""
    return trace(structure, e1, space) <= trace(structure, e2, space)


@dataclass(eq=False)
class ReducedPoset:
    events: tuple[Event, ...]
    relation: FinitePreorder
    trace_index: dict[Event, frozenset]
    top: str

    def __len__(self) -> int:
        return len(self.events)

    def __contains__(self, e) -> bool:
        return e in self.trace_index

    @property
    def empty(self) -> Event:
        return next(e for e in self.events if not e.upper)

    @property
    def full(self) -> Event:
        return next(e for e in self.events if e.base == EMPTY_SPACE)


def build_reduced_poset(structure: Structure, event_lattice: EventLattice) -> ReducedPoset:
    """Keep, for every trace on the top space, the least expressive descriptions.

    Events are grouped by their trace on the most expressive space and every
    maximal element of a group survives, so two incomparable descriptions of
    the same trace are both kept.
    """
    top = structure.top
    groups: dict[frozenset, list[Event]] = defaultdict(list)
    for e in event_lattice.events:
        groups[trace(structure, e, top)].append(e)
    order = event_lattice.order
    kept = []
    for members in groups.values():
        for e in members:
            if not any(o != e and order.leq(e, o) for o in members):
                kept.append(e)
    kept.sort(key=str)
    # the group of the empty trace is just the empty event; full trace gives Ω
    assert empty_event(structure) in kept and full_event(structure) in kept
    index = {e: trace(structure, e, top) for e in kept}
    relation = FinitePreorder.from_leq(kept, lambda a, b: index[a] <= index[b])
    return ReducedPoset(tuple(kept), relation, index, top)


def distinct_traces(reduced: ReducedPoset) -> tuple[bool, tuple[Event, Event] | None]:
    """Whether the trace map is injective, with the first colliding pair."""
    seen: dict[frozenset, Event] = {}
    for e in reduced.events:
        t = reduced.trace_index[e]
        if t in seen:
            return False, (seen[t], e)
        seen[t] = e
    return True, None


def is_lattice_reduced(reduced: ReducedPoset) -> bool:
    return reduced.relation.is_antisymmetric() and is_lattice(reduced.relation)[0]


def bases_without_events(structure: Structure, reduced: ReducedPoset) -> list[str]:
    """Spaces that are the base of no event in the reduced collection."""
    bases = {e.base for e in reduced.events}
    return [s for s in structure.space_ids if s not in bases]


def trace_groups(reduced: ReducedPoset) -> list[tuple[frozenset, list[Event]]]:
    """Reduced events grouped by trace, in deterministic order."""
    groups: dict[frozenset, list[Event]] = defaultdict(list)
    for e in reduced.events:
        groups[reduced.trace_index[e]].append(e)
    return sorted(groups.items(), key=lambda kv: element_key(kv[0]))
