"""Deterministic instance families and named fixtures for the checkers.

Positive families (concave-of-cardinality functions and additively
weighted matroid bases) satisfy the exchange axioms by construction; the
named fixtures cover one failure branch each: connected-but-locally
failing, disconnected, and non-equicardinal.  Everything is deterministic
in its arguments and seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import NEG_INF, Rational, SetFn, mask_of

GENERATED_MAX_GROUND = 10

FAMILIES: Tuple[str, ...] = (
    "cardinality-concave",
    "uniform-matroid",
    "partition-matroid",
    "graphic-matroid",
)

FIXTURE_NAMES: Tuple[str, ...] = (
    "pairs-fail",
    "pairs-disconnect",
    "two-point-n2",
    "nonequi-fail",
)


def cardinality_concave(n: int, breakpoints: Sequence[Rational]) -> SetFn:
    """f(X) = phi(|X|) for a concave phi given by its values phi(0), ..., phi(n)."""
    if len(breakpoints) != n + 1:
        raise ValueError(f"need {n + 1} breakpoint values for ground size {n}")
    differences = [b - a for a, b in zip(breakpoints, breakpoints[1:])]
    for earlier, later in zip(differences, differences[1:]):
        if later > earlier:
            raise ValueError("breakpoint differences must be nonincreasing")
    table = tuple(breakpoints[mask.bit_count()] for mask in range(1 << n))
    return SetFn(n, table)


def _weighted_on_bases(n: int, bases: Iterable[int], weights: Optional[Sequence[Rational]]) -> SetFn:
    if weights is None:
        weights = (0,) * n
    if len(weights) != n:
        raise ValueError(f"need {n} weights, got {len(weights)}")
    table: list = [NEG_INF] * (1 << n)
    seen = False
    for base_mask in bases:
        total: Rational = 0
        mask = base_mask
        while mask:
            low = mask & -mask
            total += weights[low.bit_length() - 1]
            mask ^= low
        table[base_mask] = total
        seen = True
    if not seen:
        raise ValueError("matroid description yields no bases")
    return SetFn(n, tuple(table))


def uniform_matroid(k: int, n: int, weights: Optional[Sequence[Rational]] = None) -> SetFn:
    """Weights summed over all k-element subsets of {1, ..., n}; -inf elsewhere."""
    if not 0 <= k <= n:
        raise ValueError(f"rank {k} out of range for ground size {n}")
    bases = (mask_of(combo, n) for combo in combinations(range(1, n + 1), k))
    return _weighted_on_bases(n, bases, weights)


def partition_matroid(
    blocks: Sequence[Iterable[int]],
    capacities: Optional[Sequence[int]] = None,
    weights: Optional[Sequence[Rational]] = None,
) -> SetFn:
    """Weights over sets picking a fixed number of elements from each block.

    The blocks must partition {1, ..., n}; capacities default to one per
    block.
    """
    block_lists = [sorted(block) for block in blocks]
    flat = [element for block in block_lists for element in block]
    n = len(flat)
    if n == 0 or sorted(flat) != list(range(1, n + 1)):
        raise ValueError("blocks must partition 1..n with no gaps or repeats")
    if capacities is None:
        capacities = [1] * len(block_lists)
    if len(capacities) != len(block_lists):
        raise ValueError("need one capacity per block")
    for block, capacity in zip(block_lists, capacities):
        if not 0 <= capacity <= len(block):
            raise ValueError(f"capacity {capacity} out of range for block {block}")
    choices = [combinations(block, capacity) for block, capacity in zip(block_lists, capacities)]
    bases = (
        mask_of([element for part in pick for element in part], n)
        for pick in product(*choices)
    )
    return _weighted_on_bases(n, bases, weights)


class _UnionFind:
    def __init__(self, vertices: Iterable) -> None:
        self.parent: Dict = {v: v for v in vertices}

    def find(self, v):
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(self, u, v) -> bool:
        """Merge the two classes; False when already merged."""
        ru, rv = self.find(u), self.find(v)
        if ru == rv:
            return False
        self.parent[ru] = rv
        return True


def graphic_matroid(
    edges: Sequence[Tuple[int, int]], weights: Optional[Sequence[Rational]] = None
) -> SetFn:
    """Weights over maximal spanning forests of a multigraph.

    Ground-set element i is the i-th edge (1-based).  Loops and parallel
    edges are allowed.
    """
    n = len(edges)
    if n == 0:
        raise ValueError("need at least one edge")
    vertices = sorted({v for edge in edges for v in edge})
    forest = _UnionFind(vertices)
    rank = sum(1 for u, v in edges if forest.union(u, v))

    def spanning_forests():
        for combo in combinations(range(n), rank):
            candidate = _UnionFind(vertices)
            if all(candidate.union(*edges[index]) for index in combo):
                yield sum(1 << index for index in combo)

    return _weighted_on_bases(n, spanning_forests(), weights)


def named_fixture(name: str) -> SetFn:
    """Golden fixtures by name; see FIXTURE_NAMES."""
    if name == "pairs-fail":
        values = {(1, 2): 1, (3, 4): 1, (1, 3): 0, (1, 4): 0, (2, 3): 0, (2, 4): 0}
        return SetFn.from_sets(4, values)
    if name == "pairs-disconnect":
        return SetFn.from_sets(4, {(1, 2): 1, (3, 4): 1})
    if name == "two-point-n2":
        return SetFn.from_sets(2, {(): 0, (1,): 1, (2,): 1, (1, 2): 1})
    if name == "nonequi-fail":
        return SetFn.from_sets(2, {(): 0, (1,): 1, (2,): 1, (1, 2): 3})
    raise ValueError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


_NOISE_DENOMINATOR = 8


def perturb(base: SetFn, magnitude: Rational, seed: int) -> SetFn:
    """Jitter every finite value by seeded rational noise within magnitude.

    The effective domain is unchanged; magnitude zero returns an equal
    function.
    """
    if magnitude < 0:
        raise ValueError("magnitude must be nonnegative")
    rng = random.Random(f"perturb:{seed}")
    table = list(base.table)
    for mask in base.dom_masks:
        noise = Fraction(rng.randint(-_NOISE_DENOMINATOR, _NOISE_DENOMINATOR), _NOISE_DENOMINATOR)
        table[mask] = table[mask] + magnitude * noise
    return SetFn(base.n, tuple(table))


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one deterministic instance: family name, ground size, seed."""

    family: str
    n: int
    seed: int


def build_instance(spec: InstanceSpec) -> SetFn:
    """Deterministic instance of a positive family; exchange-axiom clean."""
    if spec.family not in FAMILIES:
        raise ValueError(f"unknown family {spec.family!r}; known: {', '.join(FAMILIES)}")
    if not 1 <= spec.n <= GENERATED_MAX_GROUND:
        raise ValueError(f"generated instances are capped at ground size {GENERATED_MAX_GROUND}")
    n = spec.n
    rng = random.Random(f"{spec.family}:{n}:{spec.seed}")
    if spec.family == "cardinality-concave":
        differences = sorted((rng.randint(-3, 5) for _ in range(n)), reverse=True)
        breakpoints: List[Rational] = [rng.randint(-2, 2)]
        for difference in differences:
            breakpoints.append(breakpoints[-1] + difference)
        return cardinality_concave(n, breakpoints)
    weights = [rng.randint(-5, 5) for _ in range(n)]
    if spec.family == "uniform-matroid":
        return uniform_matroid(rng.randint(1, n), n, weights)
    if spec.family == "partition-matroid":
        elements = list(range(1, n + 1))
        rng.shuffle(elements)
        block_count = rng.randint(1, min(3, n))
        cuts = sorted(rng.sample(range(1, n), block_count - 1)) if block_count > 1 else []
        bounds = [0] + cuts + [n]
        blocks = [elements[a:b] for a, b in zip(bounds, bounds[1:])]
        capacities = [rng.randint(1, len(block)) for block in blocks]
        return partition_matroid(blocks, capacities, weights)
    vertex_count = rng.randint(2, max(2, n))
    edges = []
    for _ in range(n):
        u = rng.randint(1, vertex_count)
        v = rng.randint(1, vertex_count)
        while v == u and vertex_count > 1:
            v = rng.randint(1, vertex_count)
        edges.append((u, v))
    return graphic_matroid(edges, weights)
