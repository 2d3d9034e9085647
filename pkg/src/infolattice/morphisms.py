"""Witness maps between the orders of the model and their verification.

* ``h_prime`` sends a space to its full event and reverses the expressiveness
  order of spaces into the order of events.
* ``f_embed`` sends a subset of a space to the event it generates; for a fixed
  space it embeds ``(2^S, ⊆)`` into the event lattice.
* ``h_reduce`` sends every event to a reduced event with the same trace.
* ``g_iso`` pairs reduced events with subsets of the top space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

from .events import Event, EventLattice, empty_event, full_event, make_event
from .poset import (
    FinitePreorder,
    embedding_violation,
    isomorphism_violation,
    powerset_poset,
    preserving_violation,
    reversing_violation,
)
from .reduction import ReducedPoset, distinct_traces, trace
from .structure import EMPTY_SPACE, Structure, UnknownSpaceError


@dataclass
class MorphismReport:
    name: str
    holds: bool
    witness_map: dict = field(default_factory=dict)
    counterexample: Any = None

    def __post_init__(self):
        if not self.holds and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")


def h_prime(structure: Structure, space: str) -> Event:
    if space == EMPTY_SPACE:
        return full_event(structure)
    return make_event(structure, structure.states(space), space)


def f_embed(structure: Structure, space: str, states: Iterable[str]) -> Event:
    if space == EMPTY_SPACE or space not in structure.lattice.spaces:
        raise UnknownSpaceError(space)
    states = frozenset(states)
    if not states:
        return empty_event(structure)
    return make_event(structure, states, space)


def h_reduce(structure: Structure, reduced: ReducedPoset, e: Event) -> Event:
    """The reduced event with ``e``'s trace; ties go to the smallest base id."""
    t = trace(structure, e, reduced.top)
    matches = [r for r in reduced.events if reduced.trace_index[r] == t]
    if not matches:
        raise ValueError(f"no reduced event has the trace of {e}")
    return min(matches, key=lambda r: (r.base, str(r)))


def check_thm1(structure: Structure, lattice: EventLattice) -> MorphismReport:
    """Spaces to their full events reverses the order."""
    mapping = {s: h_prime(structure, s) for s in structure.space_ids}
    bad = reversing_violation(mapping, structure.order, lattice.order)
    return MorphismReport("h'", bad is None, mapping, bad)


def check_thm2(structure: Structure, lattice: EventLattice) -> MorphismReport:
    """For each non-empty space, ``2^S`` embeds into the event lattice."""
    witness = {}
    for space in structure.space_ids:
        if space == EMPTY_SPACE:
            continue
        subsets = powerset_poset(structure.states(space))
        mapping = {E: f_embed(structure, space, E) for E in subsets.ordered}
        bad = embedding_violation(mapping, subsets, lattice.order)
        witness.update({(space, E): ev for E, ev in mapping.items()})
        if bad is not None:
            return MorphismReport("f", False, witness, (space, bad))
    return MorphismReport("f", True, witness)


def check_thm4(structure: Structure, lattice: EventLattice, reduced: ReducedPoset) -> MorphismReport:
    mapping = {e: h_reduce(structure, reduced, e) for e in lattice.events}
    bad = preserving_violation(mapping, lattice.order, reduced.relation)
    return MorphismReport("h", bad is None, mapping, bad)


def g_iso(structure: Structure, reduced: ReducedPoset) -> MorphismReport:
    """``g⁻¹``: reduced events to their traces, checked as an order isomorphism."""
    distinct, twins = distinct_traces(reduced)
    if not distinct:
        return MorphismReport("g", False, {}, twins)
    mapping = dict(reduced.trace_index)
    bad = isomorphism_violation(mapping, reduced.relation, powerset_poset(structure.states(reduced.top)))
    return MorphismReport("g", bad is None, mapping, bad)


@dataclass
class Thm5Report:
    isomorphic_to_image: bool
    full_cardinality: bool
    distinct: bool
    size: int
    expected_size: int
    witnesses: dict = field(default_factory=dict)

    @property
    def conditions(self) -> tuple[bool, bool, bool]:
        return (self.isomorphic_to_image, self.full_cardinality, self.distinct)

    @property
    def agree(self) -> bool:
        return len(set(self.conditions)) == 1


def check_thm5(structure: Structure, event_lattice: EventLattice, reduced: ReducedPoset) -> Thm5Report:
    top = reduced.top
    image_map = {e: f_embed(structure, top, reduced.trace_index[e]) for e in reduced.events}
    image = set(image_map.values())
    image_order = FinitePreorder(
        frozenset(image),
        frozenset((a, b) for a in image for b in image if event_lattice.order.leq(a, b)),
    )
    iso_bad = isomorphism_violation(image_map, reduced.relation, image_order)
    distinct, twins = distinct_traces(reduced)
    expected = 2 ** len(structure.states(top))
    witnesses = {}
    if iso_bad is not None:
        witnesses["isomorphism"] = iso_bad
    if twins is not None:
        witnesses["duplicate_traces"] = twins
    return Thm5Report(iso_bad is None, len(reduced) == expected, distinct, len(reduced), expected, witnesses)
