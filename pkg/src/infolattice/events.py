"""Events as (upper set, base space) pairs and their algebra.

Canonical events come in three shapes:

* ``(upper_set(E, S), S)`` for a non-empty ``E`` within ``S``,
* the empty event ``(∅, top)`` where ``top`` is the most expressive space,
* the full event ``(Ω, S∅)``.

Two conventions shape the algebra.  The complement of a whole space is the
empty set, whose upper set is ``Ω``, so negating ``(S↑, S)`` lands on the full
event and the full event is its own negation.  An empty intersection of upper
sets is the empty event regardless of the operands' bases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poset import FinitePoset, join, meet
from .structure import EMPTY_SPACE, Structure, upper_set


@dataclass(frozen=True)
class Event:
    upper: frozenset
    base: str

    def __str__(self) -> str:
        return render_event(self)

    def __repr__(self) -> str:
        return f"Event({render_event(self)})"


def render_event(e: Event) -> str:
    """``{c1,c2}@S_c``; ``∅@<top>`` for the empty event; ``Ω@S∅`` for the full one."""
    if e.base == EMPTY_SPACE:
        return f"Ω@{EMPTY_SPACE}"
    if not e.upper:
        return f"∅@{e.base}"
    return "{" + ",".join(sorted(e.upper)) + "}@" + e.base


def full_event(structure: Structure) -> Event:
    return Event(structure.omega, EMPTY_SPACE)


def empty_event(structure: Structure) -> Event:
    return Event(frozenset(), structure.top)


def defining_set(structure: Structure, e: Event) -> frozenset:
    """The set ``E`` within the base space that generates ``e``."""
    return e.upper & structure.states(e.base)


def make_event(structure: Structure, states: Iterable[str], space: str) -> Event:
    states = frozenset(states)
    if not states:
        if space == structure.top:
            return empty_event(structure)
        if space == EMPTY_SPACE:
            return full_event(structure)
        raise ValueError(f"the empty set over {space} is not a canonical event")
    return Event(upper_set(structure, states, space), space)


def all_events(structure: Structure) -> list[Event]:
    """Every event of the structure, sorted by rendering."""
    out = {empty_event(structure), full_event(structure)}
    for sid in structure.space_ids:
        if sid == EMPTY_SPACE:
            continue
        states = sorted(structure.states(sid))
        for mask in range(1, 1 << len(states)):
            chosen = [w for k, w in enumerate(states) if mask >> k & 1]
            out.add(make_event(structure, chosen, sid))
    return sorted(out, key=str)


def negate(structure: Structure, e: Event) -> Event:
    """Complement relative to the base space."""
    if e.base == EMPTY_SPACE:
        return e
    if not e.upper:
        return make_event(structure, structure.states(e.base), e.base)
    rest = structure.states(e.base) - e.upper
    if not rest:
        return full_event(structure)
    return make_event(structure, rest, e.base)


def conjunction(structure: Structure, events: Sequence[Event]) -> Event:
    """Intersect the upper sets; the base is the join of the operands' bases."""
    if not events:
        raise ValueError("conjunction needs at least one event")
    common = frozenset.intersection(*(e.upper for e in events))
    if not common:
        return empty_event(structure)
    base = structure.join(e.base for e in events)
    return make_event(structure, common & structure.states(base), base)


def _complement_upper(structure: Structure, e: Event) -> frozenset:
    # (S \ E)↑ with the ∅↑ = Ω convention
    rest = structure.states(e.base) - e.upper
    if not rest:
        return structure.omega
    return upper_set(structure, rest, e.base)


def disjunction(structure: Structure, events: Sequence[Event]) -> Event:
    """Explicit disjunction formula over the join of the bases.

    The result is ``(D↑, β)`` with ``β`` the join of the bases and ``D`` the
    states of ``β`` outside every complement upper set.  When ``D`` is empty
    the ``∅↑ = Ω`` convention applies and the full event is returned.
    """
    if not events:
        raise ValueError("disjunction needs at least one event")
    base = structure.join(e.base for e in events)
    outside = frozenset.intersection(*(_complement_upper(structure, e) for e in events))
    kept = structure.states(base) - outside
    if not kept:
        return full_event(structure)
    return make_event(structure, kept, base)


def de_morgan_dual(structure: Structure, events: Sequence[Event]) -> Event:
    """``¬(∧ ¬e_i)`` evaluated with the event operations themselves."""
    return negate(structure, conjunction(structure, [negate(structure, e) for e in events]))


def leq(structure: Structure, e1: Event, e2: Event) -> bool:
    """``e1 ⩽ e2``: smaller upper set over an at-least-as-expressive base."""
    return e1.upper <= e2.upper and structure.geq(e1.base, e2.base)


def is_canonical(structure: Structure, e: Event) -> bool:
    if e == full_event(structure) or e == empty_event(structure):
        return True
    if e.base == EMPTY_SPACE or not e.upper:
        return False
    core = defining_set(structure, e)
    return bool(core) and upper_set(structure, core, e.base) == e.upper


@dataclass(eq=False)
class EventLattice:
    events: tuple[Event, ...]
    order: FinitePoset
    bottom: Event
    top: Event
    # pairs whose order-theoretic meet differs from the conjunction
    meet_mismatches: list[tuple] = field(default_factory=list)
    # pairs whose order-theoretic join differs from the disjunction formula
    join_gaps: list[tuple] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)


def build_event_lattice(structure: Structure, check_algebra: bool = True) -> EventLattice:
    events = all_events(structure)
    order = FinitePoset.from_leq(events, lambda a, b: leq(structure, a, b))
    lat = EventLattice(tuple(events), order, empty_event(structure), full_event(structure))
    if order.bottom() != lat.bottom or order.top() != lat.top:
        raise AssertionError("event order is not bounded by the empty and full events")
    if check_algebra:
        for i, a in enumerate(events):
            for b in events[i:]:
                m = meet(order, a, b)
                c = conjunction(structure, [a, b])
                if m != c:
                    lat.meet_mismatches.append((a, b, m, c))
                j = join(order, a, b)
                d = disjunction(structure, [a, b])
                if j != d:
                    lat.join_gaps.append((a, b, j, d))
    return lat
