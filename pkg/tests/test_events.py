from itertools import product

import pytest

from infolattice.events import (
    Event,
    all_events,
    build_event_lattice,
    conjunction,
    de_morgan_dual,
    disjunction,
    empty_event,
    full_event,
    is_canonical,
    leq,
    make_event,
    negate,
)
from infolattice.generator import GenParams, generate
from infolattice.poset import join, meet
from infolattice.structure import EMPTY_SPACE, filter_of, make_structure

import oracles


def ev(s, states, space):
    return make_event(s, states, space)


def single_space(n):
    return make_structure({"S": [f"w{i}" for i in range(n)]})


def test_running_example_counts(fig, fig_lattice):
    per_base = {}
    for e in fig_lattice.events:
        per_base[e.base] = per_base.get(e.base, 0) + 1
    assert len(fig_lattice) == 15
    # 3 on each binary space, 7 non-empty subsets of S_c plus the empty event
    assert per_base == {"S_a": 3, "S_b": 3, "S_c": 8, EMPTY_SPACE: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_single_space_count(n):
    assert len(all_events(single_space(n))) == 2 ** n + 1


def test_smallest_structure():
    s = single_space(1)
    assert set(all_events(s)) == {Event(frozenset({"w0"}), "S"), Event(frozenset(), "S"), full_event(s)}


def test_make_event_conventions(fig):
    assert ev(fig, set(), "S_c") == empty_event(fig)
    assert ev(fig, set(), EMPTY_SPACE) == full_event(fig)
    assert str(ev(fig, {"a"}, "S_a")) == "{a,c1,c2}@S_a"
    assert str(full_event(fig)) == "Ω@S∅"
    assert str(empty_event(fig)) == "∅@S_c"
    with pytest.raises(ValueError):
        ev(fig, set(), "S_a")


def test_negation_rules(fig):
    a = ev(fig, {"a"}, "S_a")
    assert negate(fig, a) == ev(fig, {"¬a"}, "S_a")
    assert negate(fig, ev(fig, {"b", "¬b"}, "S_b")) == full_event(fig)
    assert negate(fig, full_event(fig)) == full_event(fig)
    assert negate(fig, empty_event(fig)) == ev(fig, {"c1", "c2", "c3"}, "S_c")
    assert negate(fig, ev(fig, {"c1", "c3"}, "S_c")) == ev(fig, {"c2"}, "S_c")


def test_conjunction_examples(fig):
    a, b = ev(fig, {"a"}, "S_a"), ev(fig, {"b"}, "S_b")
    assert conjunction(fig, [a, b]) == ev(fig, {"c1"}, "S_c")
    assert conjunction(fig, [a, negate(fig, a)]) == empty_event(fig)
    assert conjunction(fig, [a, full_event(fig)]) == a
    assert conjunction(fig, [a, a, a]) == a


def test_disjunction_examples(fig):
    a, b = ev(fig, {"a"}, "S_a"), ev(fig, {"b"}, "S_b")
    assert disjunction(fig, [a, b]) == ev(fig, {"c1", "c2"}, "S_c")
    assert disjunction(fig, [a, ev(fig, {"¬a"}, "S_a")]) == ev(fig, {"a", "¬a"}, "S_a")
    assert disjunction(fig, [a]) == a


def test_conjunction_laws(fig, fig_lattice):
    evs = fig_lattice.events
    for x, y in product(evs, evs):
        assert conjunction(fig, [x, y]) == conjunction(fig, [y, x])
    for x, y, z in product(evs[::2], evs[1::2], evs[::3]):
        assert conjunction(fig, [x, y, z]) == conjunction(fig, [conjunction(fig, [x, y]), z])


def test_operations_return_canonical(fig, fig_lattice):
    evs = fig_lattice.events
    for e in evs:
        assert is_canonical(fig, e)
        assert is_canonical(fig, negate(fig, e))
    for x, y in product(evs, evs):
        assert is_canonical(fig, conjunction(fig, [x, y]))
        assert is_canonical(fig, disjunction(fig, [x, y]))
    assert not is_canonical(fig, Event(frozenset({"c1"}), "S_a"))


def test_double_negation_on_its_domain(fig, fig_lattice):
    for e in fig_lattice.events:
        core = e.upper & fig.states(e.base)
        twice = negate(fig, negate(fig, e))
        if e.base != EMPTY_SPACE and core and core != fig.states(e.base):
            assert twice == e
        else:
            assert twice == full_event(fig)


def test_meet_law_and_join_gap(fig, fig_lattice):
    assert fig_lattice.meet_mismatches == []
    a, b = ev(fig, {"a"}, "S_a"), ev(fig, {"b"}, "S_b")
    assert join(fig_lattice.order, a, b) == full_event(fig)
    assert disjunction(fig, [a, b]) == ev(fig, {"c1", "c2"}, "S_c")
    assert any(gap[:2] == (a, b) for gap in fig_lattice.join_gaps)


def test_order_soundness(fig, fig_lattice):
    for x, y in product(fig_lattice.events, fig_lattice.events):
        assert leq(fig, x, y) == oracles.event_leq(fig, x, y)
        if leq(fig, x, y) and x.upper:
            assert filter_of(fig, y.base) >= filter_of(fig, x.base)


def _de_morgan_exempt(s, events):
    # an operand full on its base, or operands whose negations are disjoint
    full_on_base = any(e.base != EMPTY_SPACE and s.states(e.base) <= e.upper for e in events)
    negs = [negate(s, e) for e in events]
    return full_on_base or not frozenset.intersection(*(n.upper for n in negs))


@pytest.mark.parametrize("seed", [None, 3, 17, 41])
def test_de_morgan_agreement(fig, seed):
    s = fig if seed is None else generate(GenParams(seed=seed, top_states=4, n_spaces=3))
    evs = all_events(s)
    top = s.states(s.top)
    for x, y in product(evs, evs):
        formula, dual = disjunction(s, [x, y]), de_morgan_dual(s, [x, y])
        # both sides always describe the same event on the top space
        assert formula.upper & top == dual.upper & top
        if not _de_morgan_exempt(s, [x, y]):
            assert formula == dual


def test_de_morgan_disagreement_is_real(fig):
    # Both conventions are forced elsewhere; they collide on this pair.
    a, sb = ev(fig, {"a"}, "S_a"), ev(fig, {"b", "¬b"}, "S_b")
    assert disjunction(fig, [a, sb]) == ev(fig, {"c1", "c2"}, "S_c")
    assert de_morgan_dual(fig, [a, sb]) == a


def test_lattice_meet_law_on_generated():
    for seed in range(12):
        s = generate(GenParams(seed=seed, top_states=3 + seed % 3, n_spaces=1 + seed % 4))
        lat = build_event_lattice(s)
        assert lat.meet_mismatches == []
        for x in lat.events[::3]:
            for y in lat.events[::2]:
                assert meet(lat.order, x, y) == conjunction(s, [x, y])
