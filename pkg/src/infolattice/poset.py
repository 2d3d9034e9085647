"""Finite preorders, posets and lattices over hashable element ids.

Relations are explicit sets of pairs ``(a, b)`` read as ``a <= b``.  Internally
every element gets an index and its up- and down-sets are cached as integer
bitmasks, which keeps meet/join lookups O(1) at the sizes we deal with.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Mapping

Pair = tuple[Hashable, Hashable]


def element_key(x: Any):
    """Deterministic sort key for element ids (strings, frozensets, events)."""
    if isinstance(x, str):
        return (0, x)
    if isinstance(x, (frozenset, set)):
        return (1, len(x), tuple(sorted(str(v) for v in x)))
    return (2, str(x))


def transitive_closure(pairs: Iterable[Pair], elements: Iterable[Hashable]) -> frozenset:
    """Smallest reflexive and transitive relation containing ``pairs``."""
    elems = sorted(set(elements), key=element_key)
    index = {e: i for i, e in enumerate(elems)}
    up = [1 << i for i in range(len(elems))]
    for a, b in pairs:
        if a not in index or b not in index:
            raise ValueError(f"pair {(a, b)!r} mentions an unknown element")
        up[index[a]] |= 1 << index[b]
    # Warshall on bitmask rows
    for k in range(len(elems)):
        bit = 1 << k
        row = up[k]
        for i in range(len(elems)):
            if up[i] & bit:
                up[i] |= row
    return frozenset(
        (elems[i], elems[j]) for i in range(len(elems)) for j in _bits(up[i])
    )


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class FinitePreorder:
    """A reflexive, transitive relation on a finite non-empty set."""

    elements: frozenset
    relation: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        object.__setattr__(self, "relation", frozenset(self.relation))
        if not self.elements:
            raise ValueError("an order needs at least one element")
        for a, b in self.relation:
            if a not in self.elements or b not in self.elements:
                raise ValueError(f"pair {(a, b)!r} mentions an unknown element")
        for i, e in enumerate(self.ordered):
            if not self._up[i] >> i & 1:
                raise ValueError(f"relation is not reflexive at {e!r}")
        for i in range(len(self.ordered)):
            for j in _bits(self._up[i]):
                if self._up[j] & ~self._up[i]:
                    raise ValueError("relation is not transitive")

    @classmethod
    def generate(cls, pairs: Iterable[Pair], elements: Iterable[Hashable]):
        elements = frozenset(elements)
        return cls(elements, transitive_closure(pairs, elements))

    @classmethod
    def from_leq(cls, elements: Iterable[Hashable], leq: Callable[[Any, Any], bool]):
        elements = frozenset(elements)
        return cls(elements, frozenset((a, b) for a in elements for b in elements if leq(a, b)))

    @cached_property
    def ordered(self) -> tuple:
        return tuple(sorted(self.elements, key=element_key))

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.ordered)}

    @cached_property
    def _up(self) -> list[int]:
        index = {e: i for i, e in enumerate(self.ordered)}
        up = [0] * len(index)
        for a, b in self.relation:
            up[index[a]] |= 1 << index[b]
        return up

    @cached_property
    def _down(self) -> list[int]:
        down = [0] * len(self.ordered)
        for i, row in enumerate(self._up):
            for j in _bits(row):
                down[j] |= 1 << i
        return down

    @cached_property
    def _by_down(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self._down)}

    @cached_property
    def _by_up(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self._up)}

    def leq(self, a, b) -> bool:
        return (a, b) in self.relation

    def up_set(self, a) -> frozenset:
        return frozenset(self.ordered[j] for j in _bits(self._up[self.index[a]]))

    def down_set(self, a) -> frozenset:
        return frozenset(self.ordered[j] for j in _bits(self._down[self.index[a]]))

    def is_antisymmetric(self) -> bool:
        return len(self._by_down) == len(self.ordered)

    def equivalent_pairs(self) -> list[Pair]:
        """Pairs ``a != b`` with ``a <= b <= a``, in deterministic order."""
        out = []
        for i, a in enumerate(self.ordered):
            for j in _bits(self._up[i] & self._down[i]):
                if j > i:
                    out.append((a, self.ordered[j]))
        return out

    def minimal(self) -> list:
        return [e for i, e in enumerate(self.ordered) if self._down[i] & ~self._up[i] == 0]

    def maximal(self) -> list:
        return [e for i, e in enumerate(self.ordered) if self._up[i] & ~self._down[i] == 0]

    def bottom(self):
        full = (1 << len(self.ordered)) - 1
        for i, e in enumerate(self.ordered):
            if self._up[i] == full:
                return e
        return None

    def top(self):
        full = (1 << len(self.ordered)) - 1
        for i, e in enumerate(self.ordered):
            if self._down[i] == full:
                return e
        return None


class FinitePoset(FinitePreorder):
    """A finite preorder that is also antisymmetric."""

    def __post_init__(self):
        super().__post_init__()
        for a, b in self.equivalent_pairs():
            raise ValueError(f"relation is not antisymmetric: {a!r} and {b!r}")


def hasse_reduction(order: FinitePreorder) -> frozenset:
    """Covering pairs ``(a, b)``: ``a < b`` with nothing strictly between.

    For a preorder the strict part is ``a <= b and not b <= a``; equivalent
    elements never cover each other.
    """
    els = order.ordered
    strict = [order._up[i] & ~order._down[i] for i in range(len(els))]
    covers = set()
    for i in range(len(els)):
        above = strict[i]
        through = 0
        for c in _bits(above):
            through |= strict[c]
        for j in _bits(above & ~through):
            covers.add((els[i], els[j]))
    return frozenset(covers)


def meet(order: FinitePreorder, a, b):
    """Greatest lower bound of ``a`` and ``b``, or ``None`` when absent."""
    lower = order._down[order.index[a]] & order._down[order.index[b]]
    i = order._by_down.get(lower)
    return None if i is None else order.ordered[i]


def join(order: FinitePreorder, a, b):
    """Least upper bound of ``a`` and ``b``, or ``None`` when absent."""
    upper = order._up[order.index[a]] & order._up[order.index[b]]
    i = order._by_up.get(upper)
    return None if i is None else order.ordered[i]


def meet_all(order: FinitePreorder, items: Iterable):
    items = list(items)
    if not items:
        return order.top()
    acc = items[0]
    for x in items[1:]:
        if acc is None:
            return None
        acc = meet(order, acc, x)
    return acc


def join_all(order: FinitePreorder, items: Iterable):
    items = list(items)
    if not items:
        return order.bottom()
    acc = items[0]
    for x in items[1:]:
        if acc is None:
            return None
        acc = join(order, acc, x)
    return acc


def is_lattice(order: FinitePreorder) -> tuple[bool, Pair | None]:
    """Whether every pair has a meet and a join; also the first failing pair."""
    if not order.is_antisymmetric():
        return False, order.equivalent_pairs()[0]
    els = order.ordered
    for i, a in enumerate(els):
        for b in els[i + 1:]:
            if meet(order, a, b) is None or join(order, a, b) is None:
                return False, (a, b)
    return True, None


# -- order morphisms ---------------------------------------------------------
#
# ``mapping`` is any Mapping from P.elements to Q.elements.  The ``*_violation``
# helpers return the first offending pair of P-elements (or an element for
# surjectivity) and ``None`` when the property holds.


def reversing_violation(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder):
    for a, b in sorted(P.relation, key=lambda p: (element_key(p[0]), element_key(p[1]))):
        if not Q.leq(mapping[b], mapping[a]):
            return (a, b)
    return None


def preserving_violation(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder):
    for a, b in sorted(P.relation, key=lambda p: (element_key(p[0]), element_key(p[1]))):
        if not Q.leq(mapping[a], mapping[b]):
            return (a, b)
    return None


def embedding_violation(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder):
    for a in P.ordered:
        for b in P.ordered:
            if P.leq(a, b) != Q.leq(mapping[a], mapping[b]):
                return (a, b)
    # in a preorder P the biconditional alone does not force injectivity
    seen = {}
    for a in P.ordered:
        other = seen.setdefault(mapping[a], a)
        if other != a:
            return (other, a)
    return None


def isomorphism_violation(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder):
    bad = embedding_violation(mapping, P, Q)
    if bad is not None:
        return bad
    image = {mapping[a] for a in P.elements}
    for q in Q.ordered:
        if q not in image:
            return (q, q)
    return None


def check_order_reversing(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder) -> bool:
    return reversing_violation(mapping, P, Q) is None


def check_order_preserving(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder) -> bool:
    return preserving_violation(mapping, P, Q) is None


def check_order_embedding(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder) -> bool:
    return embedding_violation(mapping, P, Q) is None


def check_order_isomorphism(mapping: Mapping, P: FinitePreorder, Q: FinitePreorder) -> bool:
    return isomorphism_violation(mapping, P, Q) is None


def powerset_poset(items: Iterable) -> FinitePoset:
    """``(2^items, ⊆)`` with frozenset elements."""
    items = sorted(set(items), key=element_key)
    subsets = [
        frozenset(x for k, x in enumerate(items) if m >> k & 1) for m in range(1 << len(items))
    ]
    return FinitePoset.from_leq(subsets, lambda a, b: a <= b)
