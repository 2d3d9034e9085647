"""Random structures built from set partitions of the top space.

Every non-top space is the quotient of the top space by a partition, ordered by
refinement, so the projections are quotient maps and surjectivity and
composition hold by construction.  Candidate families are resampled until the
induced order (with ``S∅`` below and the top above) is a lattice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .structure import Structure, StructureError, make_structure

Partition = frozenset  # of frozensets of top-state ids

MAX_ATTEMPTS = 2000


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    top_states: int = 3
    n_spaces: int = 2
    strict_cardinality: bool = True
    allow_duplicate_partitions: bool = False

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise GenerationError("seed must be a 64-bit unsigned integer")
        if not 1 <= self.top_states <= 8:
            raise GenerationError("top_states must lie in 1..8")
        if not 0 <= self.n_spaces <= 6:
            raise GenerationError("n_spaces must lie in 0..6")


def set_partitions(items: Sequence[str]):
    """All set partitions of ``items`` (restricted growth strings)."""
    items = list(items)
    if not items:
        yield frozenset()
        return

    def grow(i, labels, k):
        if i == len(items):
            blocks = [frozenset(x for x, l in zip(items, labels) if l == b) for b in range(k)]
            yield frozenset(blocks)
            return
        for lab in range(k + 1):
            labels.append(lab)
            yield from grow(i + 1, labels, max(k, lab + 1))
            labels.pop()

    yield from grow(0, [], 0)


def refines(fine: Partition, coarse: Partition) -> bool:
    return all(any(b <= c for c in coarse) for b in fine)


def _block_sort_key(block, top):
    return min(top.index(x) for x in block)


def structure_from_partitions(
    top_states: Sequence[str],
    partitions: Sequence[Partition],
    names: Sequence[str] | None = None,
    top_name: str = "T",
    twins: Sequence[tuple[int, int]] = (),
) -> Structure:
    """Quotient structure of ``top_states`` by each partition.

    Spaces with identical partitions are incomparable when listed in
    ``twins`` (as index pairs); every other pair is ordered by refinement, and
    the top space sits above anything it coincides with.
    """
    top = list(top_states)
    names = list(names) if names is not None else [f"S{i + 1}" for i in range(len(partitions))]
    twin_set = {frozenset(p) for p in twins}
    spaces = {top_name: top}
    block_of: list[dict[str, str]] = []
    for name, part in zip(names, partitions):
        blocks = sorted(part, key=lambda b: _block_sort_key(b, top))
        ids = [f"{name.lower()}_{j + 1}" for j in range(len(blocks))]
        spaces[name] = ids
        block_of.append({x: ids[j] for j, b in enumerate(blocks) for x in b})

    order, maps = [], {}
    for i, name in enumerate(names):
        order.append((top_name, name))
        maps[(top_name, name)] = {x: block_of[i][x] for x in top}
    for i, hi in enumerate(names):
        for j, lo in enumerate(names):
            if i == j or frozenset((i, j)) in twin_set:
                continue
            p_hi, p_lo = partitions[i], partitions[j]
            if not refines(p_hi, p_lo):
                continue
            if p_hi == p_lo and i > j:
                # identical non-twin partitions: keep the listed order
                continue
            order.append((hi, lo))
            maps[(hi, lo)] = {block_of[i][x]: block_of[j][x] for x in top}
    return make_structure(spaces, order, maps)


def _candidate_partitions(top: list[str], strict: bool) -> list[Partition]:
    out = []
    for p in set_partitions(top):
        if strict and len(p) == len(top):
            continue  # same size as the top space
        out.append(p)
    out.sort(key=lambda p: (len(p), sorted(sorted(b) for b in p)))
    return out


def generate(params: GenParams) -> Structure:
    rng = random.Random(params.seed)
    top = [f"t{i + 1}" for i in range(params.top_states)]
    candidates = _candidate_partitions(top, params.strict_cardinality)
    n = params.n_spaces
    if n == 0:
        return structure_from_partitions(top, [])

    want_twin = params.allow_duplicate_partitions and n >= 2
    twin_pool = [p for p in candidates if len(p) >= 2]
    if want_twin and not twin_pool:
        want_twin = False
    distinct_needed = n - 1 if want_twin else n
    if distinct_needed > len(candidates):
        raise GenerationError(
            f"only {len(candidates)} admissible partitions of {params.top_states} states, "
            f"{distinct_needed} distinct spaces requested"
        )
    for _ in range(MAX_ATTEMPTS):
        if want_twin:
            twin = rng.choice(twin_pool)
            others = [p for p in candidates if p != twin]
            if distinct_needed - 1 > len(others):
                raise GenerationError("not enough partitions besides the duplicated one")
            parts = rng.sample(others, distinct_needed - 1) + [twin, twin]
            twins = [(n - 2, n - 1)]
        else:
            parts = rng.sample(candidates, distinct_needed)
            twins = []
        try:
            return structure_from_partitions(top, parts, twins=twins)
        except StructureError:
            continue
    raise GenerationError(f"no lattice found after {MAX_ATTEMPTS} attempts")
