"""State-space lattices with their projection families.

A :class:`Structure` is the primitive data of the model: disjoint finite
state-spaces ordered by expressiveness, plus a surjective projection from every
space onto each less expressive one.  The empty space ``S∅`` is always present
as the bottom of the order and no projection ever targets it.

Order pairs are stored the poset way: ``(S, S2)`` in ``order.relation`` means
``S2`` is at least as expressive as ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .poset import FinitePoset, FinitePreorder, is_lattice, join_all, transitive_closure

EMPTY_SPACE = "S∅"


class StructureError(ValueError):
    """Raised when a structure fails validation; carries the full report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("invalid structure:\n" + report.describe())


class UnknownSpaceError(KeyError):
    pass


@dataclass(frozen=True)
class StateSpace:
    id: str
    states: frozenset


@dataclass(frozen=True, eq=False)
class SpaceLattice:
    spaces: Mapping[str, StateSpace]
    order: FinitePreorder


@dataclass(frozen=True, eq=False)
class ProjectionFamily:
    # (more expressive id, less expressive id) -> {state: image state}
    maps: Mapping[tuple[str, str], Mapping[str, str]]


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple
    message: str

    def __str__(self):
        return f"[{self.axiom}] {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def add(self, axiom: str, witness: tuple, message: str):
        self.violations.append(Violation(axiom, witness, message))

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


@dataclass(frozen=True, eq=False)
class Structure:
    lattice: SpaceLattice
    projections: ProjectionFamily

    # -- convenience views (valid only once the structure passed validation) --

    @property
    def order(self) -> FinitePreorder:
        return self.lattice.order

    @cached_property
    def space_ids(self) -> tuple[str, ...]:
        return self.lattice.order.ordered

    def states(self, space: str) -> frozenset:
        try:
            return self.lattice.spaces[space].states
        except KeyError:
            raise UnknownSpaceError(space) from None

    @cached_property
    def top(self) -> str:
        maxima = self.order.maximal()
        if len(maxima) != 1:
            raise ValueError(f"no unique most expressive space: {maxima}")
        return maxima[0]

    @cached_property
    def omega(self) -> frozenset:
        return frozenset().union(*(s.states for s in self.lattice.spaces.values()))

    @cached_property
    def home(self) -> dict[str, str]:
        """Space id of every state."""
        return {w: s.id for s in self.lattice.spaces.values() for w in s.states}

    def geq(self, hi: str, lo: str) -> bool:
        """``hi`` is at least as expressive as ``lo``."""
        return self.order.leq(lo, hi)

    def join(self, spaces: Iterable[str]) -> str:
        out = join_all(self.order, list(spaces))
        if out is None:
            raise ValueError("spaces have no join")
        return out

    @cached_property
    def _singleton_uppers(self) -> dict[str, frozenset]:
        uppers: dict[str, set] = {w: {w} for w in self.omega}
        for (hi, lo), mapping in self.projections.maps.items():
            for w, image in mapping.items():
                uppers[image].add(w)
        return {w: frozenset(u) for w, u in uppers.items()}

    def cardinality_violations(self) -> list[tuple[str, str]]:
        """Comparable pairs of distinct spaces with equally many states."""
        out = []
        for lo, hi in sorted(self.order.relation):
            if lo != hi and len(self.states(lo)) == len(self.states(hi)):
                out.append((hi, lo))
        return out


def build_structure(
    spaces: Mapping[str, Iterable[str]],
    order_pairs: Iterable[tuple[str, str]] = (),
    maps: Mapping[tuple[str, str], Mapping[str, str]] | None = None,
) -> Structure:
    """Assemble an unvalidated candidate structure.

    ``order_pairs`` are ``(more expressive, less expressive)`` generating pairs.
    ``S∅`` is adjoined below everything; missing maps for composite pairs are
    derived by composing along intermediate spaces.
    """
    spaces = {sid: frozenset(states) for sid, states in spaces.items()}
    spaces.setdefault(EMPTY_SPACE, frozenset())
    ids = set(spaces)
    pairs = [(lo, hi) for hi, lo in order_pairs]
    for hi, lo in pairs:
        for sid in (hi, lo):
            if sid not in ids:
                raise UnknownSpaceError(sid)
    pairs += [(EMPTY_SPACE, sid) for sid in ids]
    order = FinitePreorder(frozenset(ids), transitive_closure(pairs, ids))

    maps = {k: dict(v) for k, v in (maps or {}).items()}
    strict = sorted((hi, lo) for lo, hi in order.relation if lo != hi and lo != EMPTY_SPACE)
    changed = True
    while changed:
        changed = False
        for hi, lo in strict:
            if (hi, lo) in maps:
                continue
            for mid in sorted(order.up_set(lo) & order.down_set(hi)):
                if (hi, mid) in maps and (mid, lo) in maps:
                    first, second = maps[(hi, mid)], maps[(mid, lo)]
                    if all(first.get(w) in second for w in spaces[hi]):
                        maps[(hi, lo)] = {w: second[first[w]] for w in spaces[hi]}
                        changed = True
                        break
    lattice = SpaceLattice({sid: StateSpace(sid, st) for sid, st in spaces.items()}, order)
    return Structure(lattice, ProjectionFamily(maps))


def validate_structure(candidate: Structure, check_cardinality: bool = False) -> ValidationReport:
    """Check every axiom of a state-space lattice with projections.

    Violations are collected rather than raised; each names the axiom and
    carries a witness tuple (spaces, states) pinpointing the failure.
    """
    report = ValidationReport()
    spaces = candidate.lattice.spaces
    order = candidate.lattice.order
    maps = candidate.projections.maps

    if EMPTY_SPACE not in spaces:
        report.add("empty-space", (EMPTY_SPACE,), "the empty space is missing")
    elif spaces[EMPTY_SPACE].states:
        report.add("empty-space", (EMPTY_SPACE,), "the empty space must have no states")
    for sid in sorted(spaces):
        if sid != EMPTY_SPACE and not spaces[sid].states:
            report.add("nonempty", (sid,), f"space {sid} has no states")
    for a, b in combinations(sorted(spaces), 2):
        common = spaces[a].states & spaces[b].states
        if common:
            w = min(common)
            report.add("disjoint", (a, b, w), f"state {w} belongs to both {a} and {b}")

    if set(order.elements) != set(spaces):
        report.add("order", (), "order elements differ from the space ids")
        return report
    order_ok = True
    for a, b in order.equivalent_pairs():
        report.add("antisymmetry", (a, b), f"{a} and {b} are mutually more expressive")
        order_ok = False
    if order_ok:
        poset = FinitePoset(order.elements, order.relation)
        if poset.bottom() != EMPTY_SPACE:
            report.add("bottom", (EMPTY_SPACE,), "the empty space is not the least element")
        maxima = poset.maximal()
        if len(maxima) != 1:
            report.add("unique-top", tuple(maxima), f"several most expressive spaces: {maxima}")
        ok, pair = is_lattice(poset)
        if not ok:
            report.add("lattice", pair, f"{pair[0]} and {pair[1]} lack a meet or a join")

    for (hi, lo), mapping in sorted(maps.items()):
        if hi not in spaces or lo not in spaces:
            report.add("projection-unknown", (hi, lo), f"map {hi}->{lo} mentions an unknown space")
            continue
        if lo == EMPTY_SPACE:
            report.add("projection-empty-target", (hi, lo), f"map {hi}->{lo} targets the empty space")
            continue
        if not order.leq(lo, hi):
            report.add("projection-unordered", (hi, lo), f"map {hi}->{lo} but {hi} is not above {lo}")
            continue
        src, dst = spaces[hi].states, spaces[lo].states
        total = True
        for w in sorted(src):
            if mapping.get(w) not in dst:
                report.add("projection-total", (hi, lo, w), f"map {hi}->{lo} sends {w} outside {lo}")
                total = False
        for w in sorted(set(mapping) - src):
            report.add("projection-total", (hi, lo, w), f"map {hi}->{lo} is defined on foreign state {w}")
            total = False
        if not total:
            continue
        if hi == lo:
            for w in sorted(src):
                if mapping[w] != w:
                    report.add("identity", (hi, w), f"map {hi}->{hi} moves {w}")
            continue
        image = set(mapping.values())
        for w in sorted(dst - image):
            report.add("surjectivity", (hi, lo, w), f"no state of {hi} projects onto {w} in {lo}")

    for lo, hi in sorted(order.relation):
        if lo != hi and lo != EMPTY_SPACE and (hi, lo) not in maps:
            report.add("projection-missing", (hi, lo), f"no projection from {hi} onto {lo}")

    if order_ok:
        for lo, mid in sorted(order.relation):
            if lo == mid or lo == EMPTY_SPACE:
                continue
            for hi in sorted(order.up_set(mid)):
                if hi == mid:
                    continue
                m_hl, m_hm, m_ml = maps.get((hi, lo)), maps.get((hi, mid)), maps.get((mid, lo))
                if m_hl is None or m_hm is None or m_ml is None:
                    continue
                for w in sorted(spaces[hi].states):
                    via = m_ml.get(m_hm.get(w))
                    if m_hl.get(w) != via:
                        report.add(
                            "composition",
                            (hi, mid, lo, w),
                            f"{hi}->{lo} sends {w} to {m_hl.get(w)} but {hi}->{mid}->{lo} gives {via}",
                        )
                        break

    if check_cardinality and report.ok:
        for hi, lo in candidate.cardinality_violations():
            report.add("cardinality", (hi, lo), f"{hi} is above {lo} but has the same number of states")
    return report


def make_structure(
    spaces: Mapping[str, Iterable[str]],
    order_pairs: Iterable[tuple[str, str]] = (),
    maps: Mapping[tuple[str, str], Mapping[str, str]] | None = None,
) -> Structure:
    """Build and validate; raises :class:`StructureError` on any violation."""
    candidate = build_structure(spaces, order_pairs, maps)
    report = validate_structure(candidate)
    if not report.ok:
        raise StructureError(report)
    # upgrade the order to a poset now that antisymmetry is known
    order = FinitePoset(candidate.order.elements, candidate.order.relation)
    return Structure(SpaceLattice(candidate.lattice.spaces, order), candidate.projections)


def filter_of(structure: Structure, space: str) -> frozenset:
    """All spaces at least as expressive as ``space``."""
    if space not in structure.lattice.spaces:
        raise UnknownSpaceError(space)
    return structure.order.up_set(space)


def project(structure: Structure, state: str, space: str) -> str:
    """Image of ``state`` in the less expressive ``space``."""
    if space == EMPTY_SPACE:
        raise ValueError("nothing projects into the empty space")
    if space not in structure.lattice.spaces:
        raise UnknownSpaceError(space)
    home = structure.home.get(state)
    if home is None:
        raise ValueError(f"unknown state {state!r}")
    if home == space:
        return state
    if not structure.geq(home, space):
        raise ValueError(f"{home} (home of {state}) is not at least as expressive as {space}")
    return structure.projections.maps[(home, space)][state]


def preimage(structure: Structure, states: Iterable[str], space: str, target: str) -> frozenset:
    """States of ``target`` whose projection onto ``space`` lies in ``states``."""
    states = frozenset(states)
    if space == EMPTY_SPACE:
        raise ValueError("nothing projects into the empty space")
    if not states <= structure.states(space):
        raise ValueError(f"{sorted(states - structure.states(space))} are not states of {space}")
    if not structure.geq(target, space):
        raise ValueError(f"{target} is not at least as expressive as {space}")
    if target == space:
        return states
    mapping = structure.projections.maps[(target, space)]
    return frozenset(w for w in structure.states(target) if mapping[w] in states)


def upper_set(structure: Structure, states: Iterable[str], space: str) -> frozenset:
    """All states, across the filter of ``space``, that project into ``states``.

    By convention the empty set over ``S∅`` yields the whole union ``Ω``.
    """
    states = frozenset(states)
    if not states:
        if space == EMPTY_SPACE:
            return structure.omega
        raise ValueError(f"the empty set has no upper set over {space}")
    if not states <= structure.states(space):
        raise ValueError(f"{sorted(states - structure.states(space))} are not states of {space}")
    uppers = structure._singleton_uppers
    return frozenset().union(*(uppers[w] for w in states))
