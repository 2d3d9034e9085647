"""Run every structural claim about a structure and collect pass/fail verdicts."""

from __future__ import annotations

from dataclasses import dataclass

from .events import EventLattice, build_event_lattice
from .morphisms import check_thm1, check_thm2, check_thm4, check_thm5, g_iso
from .reconstruct import DEFAULT_CAP, ReconstructionError, reconstruct_full
from .reduction import ReducedPoset, bases_without_events, build_reduced_poset, distinct_traces
from .structure import EMPTY_SPACE, Structure


@dataclass
class ClaimResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


CLAIMS = (
    "spaces-to-events reverses order",
    "subsets embed into events",
    "reduced poset is the powerset of the top space",
    "events-to-reduced preserves order",
    "isomorphism, cardinality and distinct traces agree",
    "reduced poset recovers the event lattice",
)


def run_claims(
    structure: Structure,
    lattice: EventLattice | None = None,
    reduced: ReducedPoset | None = None,
    cap: int = DEFAULT_CAP,
) -> list[ClaimResult]:
    lattice = lattice or build_event_lattice(structure, check_algebra=False)
    reduced = reduced or build_reduced_poset(structure, lattice)
    out = []

    r = check_thm1(structure, lattice)
    out.append(ClaimResult(CLAIMS[0], r.holds, f"{len(r.witness_map)} spaces" if r.holds else f"pair {r.counterexample}"))

    r = check_thm2(structure, lattice)
    out.append(ClaimResult(CLAIMS[1], r.holds, f"{len(r.witness_map)} subsets" if r.holds else f"{r.counterexample}"))

    distinct, twins = distinct_traces(reduced)
    g = g_iso(structure, reduced)
    if distinct:
        out.append(ClaimResult(CLAIMS[2], g.holds, "holds" if g.holds else f"pair {g.counterexample}"))
    else:
        out.append(ClaimResult(CLAIMS[2], True, f"premise fails, shared trace: {twins[0]} and {twins[1]}"))

    r = check_thm4(structure, lattice, reduced)
    out.append(ClaimResult(CLAIMS[3], r.holds, f"{len(r.witness_map)} events" if r.holds else f"pair {r.counterexample}"))

    t5 = check_thm5(structure, lattice, reduced)
    yn = ["yes" if c else "no" for c in t5.conditions]
    out.append(ClaimResult(
        CLAIMS[4], t5.agree,
        f"isomorphic={yn[0]} |E'|={t5.size} vs {t5.expected_size} distinct={yn[2]}",
    ))

    same_size = structure.cardinality_violations()
    if same_size:
        hi, lo = same_size[0]
        out.append(ClaimResult(CLAIMS[5], True, f"premise fails, {hi} and {lo} have equal size"))
    else:
        missing = [s for s in bases_without_events(structure, reduced) if s != EMPTY_SPACE]
        note = f"; spaces with no reduced event: {missing}" if missing else ""
        try:
            res = reconstruct_full(lattice, reduced, cap)
        except ReconstructionError as exc:
            out.append(ClaimResult(CLAIMS[5], False, f"{exc}{note}"))
        else:
            msg = f"{len(res.recovered)} candidate(s), unique={'yes' if res.unique else 'no'}"
            out.append(ClaimResult(CLAIMS[5], res.isomorphic, msg + note))
    return out
