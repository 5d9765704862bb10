"""Checkers for exchange axioms, domain connectivity, and conjugate submodularity.

Every checker is deterministic: witnesses are found by scanning domain
masks in ascending order (and elements in ascending order inside a mask),
so equal inputs always produce identical witnesses.  All checkers are pure
functions over immutable inputs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .core import (
    NEG_INF,
    PriceVector,
    Rational,
    SetFn,
    conjugate,
    elements_of,
)


class NotEquicardinalError(ValueError):
    """The checker is defined only for domains whose sets share one size."""


@dataclass(frozen=True)
class ExchangeWitness:
    """A failing instance (X, Y, i) of an exchange axiom.

    axiom is "m", "mnat", or "local"; tried_j lists the exhausted swap
    candidates j in Y minus X.  For the "local" kind every i fails, and the
    recorded i is the smallest element of X minus Y.
    """

    axiom: str
    x_mask: int
    y_mask: int
    i: int
    tried_j: Tuple[int, ...]


@dataclass(frozen=True)
class CardinalityWitness:
    """Two domain sets of different size."""

    x_mask: int
    y_mask: int


@dataclass(frozen=True)
class DisconnectWitness:
    """A domain pair that no single swap can bridge.

    The pair is chosen with the smallest symmetric difference among all
    violating pairs, which forces the interval between the intersection and
    the union to contain no third domain set.
    """

    x_mask: int
    y_mask: int


Witness = Union[ExchangeWitness, CardinalityWitness, DisconnectWitness]


def check_equicardinal(f: SetFn) -> Optional[CardinalityWitness]:
    """None when all domain sets share one cardinality, else a counterexample."""
    dom = f.dom_masks
    first = dom[0]
    size = first.bit_count()
    for mask in dom:
        if mask.bit_count() != size:
            return CardinalityWitness(first, mask)
    return None


def _require_equicardinal(f: SetFn, what: str) -> None:
    witness = check_equicardinal(f)
    if witness is not None:
        raise NotEquicardinalError(
            f"{what} is defined only for equicardinal domains; "
            f"sets {list(elements_of(witness.x_mask))} and {list(elements_of(witness.y_mask))} differ in size"
        )


def _swap_exists(table, x: int, y: int, i_bit: int, targets: int, lhs) -> bool:
    """Some j in targets with f(X - i + j) + f(Y + i - j) >= lhs, both finite."""
    j_bits = targets
    while j_bits:
        j_bit = j_bits & -j_bits
        j_bits ^= j_bit
        left = table[(x ^ i_bit) | j_bit]
        if left is not NEG_INF:
            right = table[(y | i_bit) ^ j_bit]
            if right is not NEG_INF and lhs <= left + right:
                return True
    return False


def check_m_concave(f: SetFn) -> Optional[ExchangeWitness]:
    """Exchange axiom for valuated matroids.

    For all domain sets X, Y and every i in X minus Y, some j in Y minus X
    must satisfy f(X) + f(Y) <= f(X - i + j) + f(Y + i - j).  Returns the
    first failing (X, Y, i) in ascending order, or None.
    """
    table = f.table
    dom = f.dom_masks
    for x in dom:
        fx = table[x]
        for y in dom:
            moved = x & ~y
            if not moved:
                continue
            lhs = fx + table[y]
            targets = y & ~x
            i_bits = moved
            while i_bits:
                i_bit = i_bits & -i_bits
                i_bits ^= i_bit
                if not _swap_exists(table, x, y, i_bit, targets, lhs):
                    return ExchangeWitness("m", x, y, i_bit.bit_length(), elements_of(targets))
    return None


def check_mnat_concave(f: SetFn) -> Optional[ExchangeWitness]:
    """Exchange axiom in the form that also allows a pure move.

    Removing i from X must be repaid either by f(X - i) + f(Y + i) or by a
    swap with some j in Y minus X; both sides of an inequality must be
    finite for it to count.  Returns the first failing (X, Y, i) or None.
    """
    table = f.table
    dom = f.dom_masks
    for x in dom:
        fx = table[x]
        for y in dom:
            moved = x & ~y
            if not moved:
                continue
            lhs = fx + table[y]
            targets = y & ~x
            i_bits = moved
            while i_bits:
                i_bit = i_bits & -i_bits
                i_bits ^= i_bit
                shrunk = table[x ^ i_bit]
                if shrunk is not NEG_INF:
                    grown = table[y | i_bit]
                    if grown is not NEG_INF and lhs <= shrunk + grown:
                        continue
                if not _swap_exists(table, x, y, i_bit, targets, lhs):
                    return ExchangeWitness("mnat", x, y, i_bit.bit_length(), elements_of(targets))
    return None


def _single_swap_exists(dom_set, y: int, moved: int, targets: int) -> bool:
    i_bits = moved
    while i_bits:
        i_bit = i_bits & -i_bits
        i_bits ^= i_bit
        j_bits = targets
        while j_bits:
            j_bit = j_bits & -j_bits
            j_bits ^= j_bit
            if ((y | i_bit) ^ j_bit) in dom_set:
                return True
    return False


def interval_is_isolated(f: SetFn, x_mask: int, y_mask: int) -> bool:
    """No third domain set Z satisfies X & Y <= Z <= X | Y."""
    inter = x_mask & y_mask
    union = x_mask | y_mask
    for z in f.dom_masks:
        if z != x_mask and z != y_mask and z & inter == inter and z | union == union:
            return False
    return True


def check_connected(f: SetFn) -> Optional[DisconnectWitness]:
    """Every domain set must reach every other by single swaps.

    Fails with the violating pair of smallest symmetric difference, ties
    broken by ascending masks; that choice guarantees the interval between
    intersection and union holds no other domain set.  Raises
    NotEquicardinalError on mixed cardinalities.
    """
    _require_equicardinal(f, "connectivity")
    dom = f.dom_masks
    dom_set = set(dom)
    best: Optional[Tuple[int, int, int]] = None
    for x in dom:
        for y in dom:
            if x == y:
                continue
            moved = x & ~y
            if _single_swap_exists(dom_set, y, moved, y & ~x):
                continue
            key = (moved.bit_count(), x, y)
            if best is None or key < best:
                best = key
    if best is None:
        return None
    _, x, y = best
    if not interval_is_isolated(f, x, y):
        raise RuntimeError("minimal disconnected pair has an inhabited interval; checker bug")
    return DisconnectWitness(x, y)


def check_local_exchange(f: SetFn) -> Optional[ExchangeWitness]:
    """Exchange axiom restricted to pairs with two-element difference.

    For every domain pair with |X minus Y| = 2 some single swap (i, j) must
    satisfy the exchange inequality.  Raises NotEquicardinalError on mixed
    cardinalities.
    """
    _require_equicardinal(f, "local exchange")
    table = f.table
    dom = f.dom_masks
    for x in dom:
        fx = table[x]
        for y in dom:
            moved = x & ~y
            if moved.bit_count() != 2:
                continue
            lhs = fx + table[y]
            targets = y & ~x
            found = False
            i_bits = moved
            while i_bits:
                i_bit = i_bits & -i_bits
                i_bits ^= i_bit
                if _swap_exists(table, x, y, i_bit, targets, lhs):
                    found = True
                    break
            if not found:
                return ExchangeWitness(
                    "local", x, y, (moved & -moved).bit_length(), elements_of(targets)
                )
    return None


def check_m_via_local(f: SetFn) -> Optional[Witness]:
    """M-concavity decided through equicardinality, connectivity, and local exchange.

    Agrees with check_m_concave on every input (a tested contract, not an
    assumption); returns the first failing sub-check's witness.
    """
    witness: Optional[Witness] = check_equicardinal(f)
    if witness is not None:
        return witness
    witness = check_connected(f)
    if witness is not None:
        return witness
    return check_local_exchange(f)


def find_exchange_failures(f: SetFn) -> List[ExchangeWitness]:
    """All (X, Y, i) triples with no compensating swap target.

    Ordered by |Y minus X| first, then ascending (X, Y, i), so a pair with
    the smallest difference comes first.
    """
    table = f.table
    dom = f.dom_masks
    found: List[Tuple[int, int, int, int, int]] = []
    for x in dom:
        fx = table[x]
        for y in dom:
            moved = x & ~y
            if not moved:
                continue
            lhs = fx + table[y]
            targets = y & ~x
            target_size = targets.bit_count()
            i_bits = moved
            while i_bits:
                i_bit = i_bits & -i_bits
                i_bits ^= i_bit
                if not _swap_exists(table, x, y, i_bit, targets, lhs):
                    found.append((target_size, x, y, i_bit.bit_length(), targets))
    found.sort(key=lambda item: item[:4])
    return [
        ExchangeWitness("m", x, y, i, elements_of(targets))
        for _, x, y, i, targets in found
    ]


@dataclass(frozen=True)
class SubmodularityViolation:
    """Price pair with g(p) + g(q) < g(p join q) + g(p meet q), values exact."""

    p: PriceVector
    q: PriceVector
    join: PriceVector
    meet: PriceVector
    g_p: Rational
    g_q: Rational
    g_join: Rational
    g_meet: Rational

    @property
    def deficit(self) -> Rational:
        """How far submodularity fails: g(join) + g(meet) - g(p) - g(q) > 0."""
        return self.g_join + self.g_meet - self.g_p - self.g_q


def check_submodular_pair(f: SetFn, p: PriceVector, q: PriceVector) -> Optional[SubmodularityViolation]:
    """Submodularity of the conjugate at one price pair, via four conjugate values.

    None when g(p) + g(q) >= g(p join q) + g(p meet q); otherwise the
    violation record carrying all four vectors and values.
    """
    join = p.join(q)
    meet = p.meet(q)
    g_p = conjugate(f, p)
    g_q = conjugate(f, q)
    g_join = conjugate(f, join)
    g_meet = conjugate(f, meet)
    if g_p + g_q >= g_join + g_meet:
        return None
    return SubmodularityViolation(p, q, join, meet, g_p, g_q, g_join, g_meet)


def check_submodular_unit(
    f: SetFn,
    p: PriceVector,
    i: int,
    j: int,
    a: Rational,
    b: Rational,
) -> Optional[SubmodularityViolation]:
    """Submodularity probe along two coordinate bumps.

    Compares g(p + a e_i) + g(p + b e_j) against g(p) + g(p + a e_i + b e_j)
    through four conjugate evaluations; i and j must differ and a, b must be
    nonnegative.
    """
    if i == j:
        raise ValueError("the two perturbed coordinates must differ")
    if a < 0 or b < 0:
        raise ValueError("perturbation magnitudes must be nonnegative")
    bumped_i = p + PriceVector.unit(f.n, i, a)
    bumped_j = p + PriceVector.unit(f.n, j, b)
    return check_submodular_pair(f, bumped_i, bumped_j)


def _distinct(values) -> tuple:
    return tuple(dict.fromkeys(values))


def falsify_submodularity(f: SetFn, trials: int, seed: int) -> Optional[SubmodularityViolation]:
    """Seeded random search for a conjugate submodularity violation.

    Prices are drawn from a grid scaled by the largest domain value and
    probed with coordinate bumps; returns the first violation found or
    None.  Sound but deliberately not complete; deterministic given seed.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if f.n < 2:
        return None
    rng = random.Random(f"falsify:{seed}")
    scale = f.value_scale
    grid = _distinct((-2 * scale, -scale, -1, 0, 1, scale, 2 * scale))
    magnitudes = _distinct((Fraction(1, 2), 1, scale))
    elements = range(1, f.n + 1)
    for _ in range(trials):
        p = PriceVector(tuple(rng.choice(grid) for _ in range(f.n)))
        i, j = rng.sample(elements, 2)
        violation = check_submodular_unit(f, p, i, j, rng.choice(magnitudes), rng.choice(magnitudes))
        if violation is not None:
            return violation
    return None
