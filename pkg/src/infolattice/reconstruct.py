"""Recover a structure and its event lattice from the reduced poset alone.

Spaces are read off the bases of reduced events.  For a base ``S`` the reduced
events based there come in complementary pairs, so the union of their upper
sets is everything at or above ``S``; subtracting what lies strictly above
leaves the states of ``S``.  Projections are then found by backtracking: a
coherent family is fixed by its maps out of the top space, so we search those,
most expressive target first, and derive every other map by factoring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .events import EventLattice, build_event_lattice
from .poset import FinitePoset, isomorphism_violation
from .reduction import ReducedPoset
from .structure import (
    EMPTY_SPACE,
    ProjectionFamily,
    SpaceLattice,
    StateSpace,
    Structure,
    validate_structure,
)

DEFAULT_CAP = 16


class ReconstructionError(ValueError):
    pass


@dataclass
class ProjectionCandidates:
    families: list[ProjectionFamily]
    overflow: bool
    nodes: int


@dataclass
class RecoveryResult:
    recovered: list[Structure]
    event_lattice_iso: list[bool]
    unique: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def isomorphic(self) -> bool:
        return any(self.event_lattice_iso)


def _informative(reduced: ReducedPoset):
    return [e for e in reduced.events if e.upper and e.base != EMPTY_SPACE]


def recover_spaces(reduced: ReducedPoset) -> SpaceLattice:
    full = reduced.full
    top = reduced.top
    omega = full.upper
    bases = sorted({e.base for e in reduced.events} - {EMPTY_SPACE})

    reach = {top: reduced.trace_index[full]}
    for b in bases:
        if b != top:
            reach[b] = frozenset().union(*(e.upper for e in reduced.events if e.base == b))

    states: dict[str, frozenset] = {EMPTY_SPACE: frozenset()}
    for b in bases:
        above = [reach[o] for o in bases if o != b and reach[o] < reach[b]]
        states[b] = reach[b] - frozenset().union(*above)
        if not states[b]:
            raise ReconstructionError(f"no states left for space {b}")
    owner: dict[str, str] = {}
    for b in bases:
        for w in sorted(states[b]):
            if w in owner:
                raise ReconstructionError(
                    f"state {w} is claimed by both {owner[w]} and {b}; "
                    "a space without reduced events sits above both"
                )
            owner[w] = b
    orphans = omega - set(owner)
    if orphans:
        raise ReconstructionError(f"states {sorted(orphans)} belong to no recovered space")

    ids = bases + [EMPTY_SPACE]
    relation = {(s, s) for s in ids} | {(EMPTY_SPACE, s) for s in ids}
    for e in _informative(reduced):
        for s in bases:
            if e.upper & states[s]:
                relation.add((e.base, s))
    try:
        order = FinitePoset(frozenset(ids), frozenset(relation))
    except ValueError as exc:
        raise ReconstructionError(f"recovered order is not a partial order: {exc}") from None
    for lo, hi in relation:
        if lo != EMPTY_SPACE and not reach[hi] <= reach[lo]:
            raise ReconstructionError(f"inconsistent order between {hi} and {lo}")
    spaces = {s: StateSpace(s, states[s]) for s in ids}
    report = validate_structure(Structure(SpaceLattice(spaces, order), ProjectionFamily({})))
    bad = [v for v in report.violations if not v.axiom.startswith("projection")]
    if bad:
        raise ReconstructionError("recovered spaces are invalid: " + "; ".join(map(str, bad)))
    return SpaceLattice(spaces, order)


def recover_projections(
    reduced: ReducedPoset, spaces: SpaceLattice, cap: int = DEFAULT_CAP
) -> ProjectionCandidates:
    """Every projection family consistent with the reduced events (up to ``cap``).

    A top state may only be sent to states of ``S`` that belong to exactly the
    same reduced upper sets among events based at or below ``S``; the map must
    be onto and constant on the fibres of every more expressive space.
    """
    order = spaces.order
    top = reduced.top
    top_states = sorted(spaces.spaces[top].states)
    informative = _informative(reduced)
    targets = [s for s in order.ordered if s not in (top, EMPTY_SPACE)]
    # more expressive targets first
    targets.sort(key=lambda s: (-len(order.down_set(s)), s))

    def signature(w, s):
        return tuple(w in e.upper for e in informative if order.leq(e.base, s))

    candidates: dict[str, dict[str, list[str]]] = {}
    for s in targets:
        by_sig: dict[tuple, list[str]] = {}
        for w in sorted(spaces.spaces[s].states):
            by_sig.setdefault(signature(w, s), []).append(w)
        candidates[s] = {t: by_sig.get(signature(t, s), []) for t in top_states}
        for t, opts in candidates[s].items():
            if not opts:
                raise ReconstructionError(
                    f"membership: top state {t} matches no state of {s} on the reduced events"
                )

    families: list[dict[str, dict[str, str]]] = []
    nodes = 0
    overflow = False

    def classes_for(s, assigned):
        parent = {t: t for t in top_states}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for hi, rmap in assigned.items():
            if order.leq(s, hi):
                first = {}
                for t in top_states:
                    rep = first.setdefault(rmap[t], t)
                    parent[find(t)] = find(rep)
        groups: dict[str, list[str]] = {}
        for t in top_states:
            groups.setdefault(find(t), []).append(t)
        return list(groups.values())

    def space_maps(s, assigned):
        nonlocal nodes
        need = spaces.spaces[s].states
        classes = []
        for members in classes_for(s, assigned):
            opts = set(candidates[s][members[0]])
            for t in members[1:]:
                opts &= set(candidates[s][t])
            classes.append((members, sorted(opts)))
        classes.sort(key=lambda c: (len(c[1]), c[0]))
        if any(not opts for _, opts in classes):
            return
        choice: dict[str, str] = {}

        def rec(i, covered):
            nonlocal nodes
            nodes += 1
            if len(need - covered) > len(classes) - i:
                return
            if i == len(classes):
                if covered == need:
                    yield dict(choice)
                return
            members, opts = classes[i]
            for w in opts:
                for t in members:
                    choice[t] = w
                yield from rec(i + 1, covered | {w})

        yield from rec(0, frozenset())

    def search(k, assigned):
        nonlocal overflow
        if len(families) > cap:
            overflow = True
            return
        if k == len(targets):
            families.append(dict(assigned))
            return
        s = targets[k]
        for rmap in space_maps(s, assigned):
            assigned[s] = rmap
            search(k + 1, assigned)
            del assigned[s]
            if len(families) > cap:
                overflow = True
                return

    search(0, {})
    if overflow:
        families = families[:cap]
    if not families:
        raise ReconstructionError(
            "surjectivity/composition: no coherent family of projections fits the reduced events"
        )
    return ProjectionCandidates([_family(order, spaces, top, f) for f in families], overflow, nodes)


def _family(order, spaces, top, from_top) -> ProjectionFamily:
    maps: dict[tuple[str, str], dict[str, str]] = {}
    from_top = dict(from_top)
    top_states = sorted(spaces.spaces[top].states)
    from_top[top] = {t: t for t in top_states}
    for lo, hi in order.relation:
        if lo == hi or lo == EMPTY_SPACE:
            continue
        m = {}
        for t in top_states:
            m[from_top[hi][t]] = from_top[lo][t]
        maps[(hi, lo)] = m
    return ProjectionFamily(maps)


def _event_key(e, top_states):
    return (e.upper & top_states, e.base)


def lattices_isomorphic(source: EventLattice, target: EventLattice, top_states: frozenset) -> bool:
    """Order isomorphism matching events by (trace on the top space, base)."""
    by_key = {_event_key(e, top_states): e for e in target.events}
    if len(by_key) != len(target.events) or len(source.events) != len(target.events):
        return False
    mapping = {}
    for e in source.events:
        match = by_key.get(_event_key(e, top_states))
        if match is None:
            return False
        mapping[e] = match
    return isomorphism_violation(mapping, source.order, target.order) is None


def reconstruct_full(
    structure_source: EventLattice, reduced: ReducedPoset, cap: int = DEFAULT_CAP
) -> RecoveryResult:
    spaces = recover_spaces(reduced)
    found = recover_projections(reduced, spaces, cap)
    top_states = reduced.trace_index[reduced.full]
    recovered, iso = [], []
    for family in found.families:
        candidate = Structure(spaces, family)
        report = validate_structure(candidate)
        if not report.ok:
            raise ReconstructionError("solver produced an invalid structure: " + report.describe())
        recovered.append(candidate)
        lattice = build_event_lattice(candidate, check_algebra=False)
        iso.append(lattices_isomorphic(structure_source, lattice, top_states))
    diagnostics = {
        "spaces": len(spaces.spaces),
        "families": len(found.families),
        "overflow": found.overflow,
        "search_nodes": found.nodes,
    }
    unique = len(found.families) == 1 and not found.overflow
    return RecoveryResult(recovered, iso, unique, diagnostics)
