import pytest

from infolattice.events import build_event_lattice
from infolattice.generator import structure_from_partitions
from infolattice.reconstruct import (
    ReconstructionError,
    lattices_isomorphic,
    reconstruct_full,
    recover_projections,
    recover_spaces,
)
from infolattice.reduction import bases_without_events, build_reduced_poset
from infolattice.structure import EMPTY_SPACE, validate_structure

import oracles


def P(*blocks):
    return frozenset(frozenset(b) for b in blocks)


TOP4 = ["t1", "t2", "t3", "t4"]


def _pipeline(s):
    lat = build_event_lattice(s, check_algebra=False)
    return lat, build_reduced_poset(s, lat)


def test_running_example_round_trip(fig, fig_lattice, fig_reduced):
    spaces = recover_spaces(fig_reduced)
    assert {sid: set(sp.states) for sid, sp in spaces.spaces.items()} == {
        sid: set(fig.states(sid)) for sid in fig.space_ids
    }
    assert spaces.order.relation == fig.order.relation
    res = reconstruct_full(fig_lattice, fig_reduced)
    assert res.unique and res.isomorphic
    assert res.recovered[0].projections.maps == fig.projections.maps


def test_isomorphism_check_rejects_other_lattice(fig, fig_lattice):
    other = structure_from_partitions(["c1", "c2", "c3"], [P(["c1", "c2"], ["c3"])], names=["S_a"], top_name="S_c")
    assert not lattices_isomorphic(fig_lattice, build_event_lattice(other, check_algebra=False), fig.states("S_c"))


def test_cap_limits_candidates(fig_reduced):
    spaces = recover_spaces(fig_reduced)
    found = recover_projections(fig_reduced, spaces, cap=1)
    assert len(found.families) == 1 and not found.overflow


def test_round_trip_when_every_space_is_a_base():
    checked = 0
    for p, s in oracles.suite_structures(160):
        lat, red = _pipeline(s)
        if [b for b in bases_without_events(s, red) if b != EMPTY_SPACE]:
            continue
        res = reconstruct_full(lat, red)
        assert res.isomorphic, p
        for cand in res.recovered:
            assert validate_structure(cand).ok
        checked += 1
    assert checked > 80


def test_single_state_space_is_invisible():
    # its only event is the whole of Ω, which the empty space already describes
    s = structure_from_partitions(TOP4, [P(TOP4), P(["t1", "t2"], ["t3", "t4"])])
    lat, red = _pipeline(s)
    assert bases_without_events(s, red) == ["S1"]
    with pytest.raises(ReconstructionError, match="no recovered space"):
        reconstruct_full(lat, red)


def test_space_hidden_by_its_coarsenings():
    # S1 splits t3 from t4, but A, B, C between them already describe every
    # non-trivial trace of S1, so S1 is never the least expressive base
    parts = [
        P(["t1", "t2"], ["t3"], ["t4"]),
        P(["t1", "t2"], ["t3", "t4"]),
        P(["t3"], ["t1", "t2", "t4"]),
        P(["t4"], ["t1", "t2", "t3"]),
    ]
    s = structure_from_partitions(TOP4, parts)
    assert not s.cardinality_violations()
    lat, red = _pipeline(s)
    assert bases_without_events(s, red) == ["S1"]
    with pytest.raises(ReconstructionError):
        reconstruct_full(lat, red)
