"""Exact set functions on small ground sets: evaluation, conjugates, lifts.

Subsets of the ground set {1, ..., n} are encoded as bitmasks with element
i at bit i - 1.  All values and prices are exact rationals (int or
Fraction); minus infinity is the sentinel NEG_INF, never a large negative
number.  Everything here is immutable and the operations are pure, so the
module is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

MAX_GROUND_SIZE = 20


class NegInfinityType:
    """Sentinel ordered below every rational and absorbing under addition."""

    _instance: Optional["NegInfinityType"] = None

    def __new__(cls) -> "NegInfinityType":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return other is self

    def __add__(self, other: object) -> "NegInfinityType":
        return self

    __radd__ = __add__

    def __sub__(self, other: object) -> "NegInfinityType":
        if other is self:
            raise ArithmeticError("(-inf) - (-inf) is undefined")
        return self

    def __rsub__(self, other: object) -> "NegInfinityType":
        raise ArithmeticError("subtracting -inf would require +inf, which has no representation")

    def __neg__(self) -> "NegInfinityType":
        raise ArithmeticError("negating -inf would require +inf, which has no representation")


NEG_INF = NegInfinityType()

Rational = Union[int, Fraction]
ExtValue = Union[Rational, NegInfinityType]


def is_finite(value: ExtValue) -> bool:
    return value is not NEG_INF


def mask_of(elements: Iterable[int], n: int) -> int:
    """Bitmask of a collection of 1-based elements of {1, ..., n}."""
    mask = 0
    for element in elements:
        if not isinstance(element, int) or isinstance(element, bool):
            raise ValueError(f"elements must be integers, got {element!r}")
        if not 1 <= element <= n:
            raise ValueError(f"element {element} outside ground set 1..{n}")
        bit = 1 << (element - 1)
        if mask & bit:
            raise ValueError(f"duplicate element {element}")
        mask |= bit
    return mask


def elements_of(mask: int) -> Tuple[int, ...]:
    """Sorted 1-based elements of a subset bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def _require_rational(value: object, what: str) -> None:
    if not isinstance(value, (int, Fraction)) or isinstance(value, bool):
        raise TypeError(f"{what} must be an exact rational, got {value!r}")


@dataclass(frozen=True)
class PriceVector:
    """Vector of exact rationals indexed by the 1-based ground-set elements."""

    entries: Tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        for value in self.entries:
            _require_rational(value, "price entry")

    @classmethod
    def zeros(cls, n: int) -> "PriceVector":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, element: int, scale: Rational = 1) -> "PriceVector":
        """scale times the indicator vector of one element."""
        if not 1 <= element <= n:
            raise ValueError(f"element {element} outside ground set 1..{n}")
        return cls(tuple(scale if k == element - 1 else 0 for k in range(n)))

    def __len__(self) -> int:
        return len(self.entries)

    def element(self, element: int) -> Rational:
        """Entry for a 1-based element."""
        return self.entries[element - 1]

    def sum_over(self, mask: int) -> Rational:
        """p(X) for the subset encoded by mask."""
        total: Rational = 0
        entries = self.entries
        while mask:
            low = mask & -mask
            total += entries[low.bit_length() - 1]
            mask ^= low
        return total

    def _require_same_length(self, other: "PriceVector") -> None:
        if len(self.entries) != len(other.entries):
            raise ValueError(
                f"price vectors have different lengths {len(self.entries)} and {len(other.entries)}"
            )

    def __add__(self, other: "PriceVector") -> "PriceVector":
        self._require_same_length(other)
        return PriceVector(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "PriceVector") -> "PriceVector":
        self._require_same_length(other)
        return PriceVector(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def join(self, other: "PriceVector") -> "PriceVector":
        """Componentwise maximum."""
        self._require_same_length(other)
        return PriceVector(tuple(a if a >= b else b for a, b in zip(self.entries, other.entries)))

    def meet(self, other: "PriceVector") -> "PriceVector":
        """Componentwise minimum."""
        self._require_same_length(other)
        return PriceVector(tuple(a if a <= b else b for a, b in zip(self.entries, other.entries)))

    def concat(self, other: "PriceVector") -> "PriceVector":
        return PriceVector(self.entries + other.entries)

    def __le__(self, other: "PriceVector") -> bool:
        self._require_same_length(other)
        return all(a <= b for a, b in zip(self.entries, other.entries))


@dataclass(frozen=True)
class SetFn:
    """Set function given by a dense table over all 2**n subsets.

    table[mask] is the value on the subset encoded by mask; NEG_INF marks
    subsets outside the effective domain, which must be nonempty.
    """

    n: int
    table: Tuple[ExtValue, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_GROUND_SIZE:
            raise ValueError(f"ground-set size must be 1..{MAX_GROUND_SIZE}, got {self.n!r}")
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != 1 << self.n:
            raise ValueError(f"table must have 2**{self.n} entries, got {len(table)}")
        finite = False
        for value in table:
            if value is NEG_INF:
                continue
            _require_rational(value, "set-function value")
            finite = True
        if not finite:
            raise ValueError("the effective domain must be nonempty")

    @classmethod
    def from_sets(cls, n: int, values: Mapping[Iterable[int], Rational]) -> "SetFn":
        """Build from a mapping of element collections to finite values."""
        table: list = [NEG_INF] * (1 << n)
        for elements, value in values.items():
            mask = mask_of(elements, n)
            if table[mask] is not NEG_INF:
                raise ValueError(f"subset {sorted(elements)} given twice")
            table[mask] = value
        return cls(n, tuple(table))

    @cached_property
    def dom_masks(self) -> Tuple[int, ...]:
        """Masks of the effective domain in ascending order."""
        table = self.table
        return tuple(mask for mask in range(1 << self.n) if table[mask] is not NEG_INF)

    @cached_property
    def cardinality_range(self) -> Tuple[int, int]:
        """Minimum and maximum cardinality over the effective domain."""
        sizes = [mask.bit_count() for mask in self.dom_masks]
        return min(sizes), max(sizes)

    @cached_property
    def value_scale(self) -> Rational:
        """Largest absolute value over the effective domain."""
        return max(abs(self.table[mask]) for mask in self.dom_masks)

    def value(self, mask: int) -> ExtValue:
        """Value on the subset encoded by mask."""
        if not 0 <= mask < 1 << self.n:
            raise ValueError(f"mask {mask} out of range for ground size {self.n}")
        return self.table[mask]

    def __repr__(self) -> str:
        return f"SetFn(n={self.n}, dom={len(self.dom_masks)} sets)"


def subset_sums(entries: Sequence[Rational]) -> list:
    """p(X) for every subset mask over the index range, sharing partial sums."""
    n = len(entries)
    sums: list = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + entries[low.bit_length() - 1]
    return sums


def _require_dimension(f: SetFn, p: PriceVector) -> None:
    if len(p.entries) != f.n:
        raise ValueError(f"price vector has length {len(p.entries)}, ground set has {f.n}")


def conjugate_maximizer(f: SetFn, p: PriceVector) -> Tuple[Rational, int]:
    """Maximum of f(X) - p(X) together with its smallest maximizing mask."""
    _require_dimension(f, p)
    table = f.table
    dom = f.dom_masks
    best: Optional[Rational] = None
    best_mask = 0
    if len(dom) * f.n <= 1 << f.n:
        for mask in dom:
            value = table[mask] - p.sum_over(mask)
            if best is None or value > best:
                best = value
                best_mask = mask
    else:
        sums = subset_sums(p.entries)
        for mask in dom:
            value = table[mask] - sums[mask]
            if best is None or value > best:
                best = value
                best_mask = mask
    assert best is not None
    return best, best_mask


def conjugate(f: SetFn, p: PriceVector) -> Rational:
    """Concave conjugate g(p) = max over X of f(X) - p(X); always finite."""
    return conjugate_maximizer(f, p)[0]


def tilt(f: SetFn, p: PriceVector) -> SetFn:
    """Add p(X) to every finite value; the effective domain is unchanged."""
    _require_dimension(f, p)
    sums = subset_sums(p.entries)
    table = tuple(
        value if value is NEG_INF else value + sums[mask]
        for mask, value in enumerate(f.table)
    )
    return SetFn(f.n, table)


@dataclass(frozen=True)
class LiftedSetFn:
    """Equicardinal extension of a set function by slack elements.

    The lifted function lives on {1, ..., n + slots}; a set Z of size r_max
    is mapped to base(Z intersected with the original ground set), and all
    other sets are -inf.  r_max and r_min are the extreme cardinalities of
    the base domain.
    """

    base: SetFn
    slots: int
    r_max: int
    r_min: int
    lifted: SetFn

    @property
    def slot_elements(self) -> Tuple[int, ...]:
        return tuple(range(self.base.n + 1, self.base.n + self.slots + 1))


def lift(f: SetFn, slots: Optional[int] = None) -> LiftedSetFn:
    """Equicardinalize f by padding with slack elements.

    The default number of slack elements is (max - min domain cardinality)
    plus two, which is what the certificate constructions need; any number
    of slots at least the cardinality spread is accepted.
    """
    r_min, r_max = f.cardinality_range
    spread = r_max - r_min
    if slots is None:
        slots = spread + 2
    if not isinstance(slots, int) or slots < 1:
        raise ValueError(f"slot count must be a positive integer, got {slots!r}")
    if slots < spread:
        raise ValueError(f"need at least {spread} slots to equicardinalize, got {slots}")
    lifted_n = f.n + slots
    if lifted_n > MAX_GROUND_SIZE:
        raise ValueError(
            f"lifted ground set would have {lifted_n} elements, above the cap {MAX_GROUND_SIZE}"
        )
    base_mask = (1 << f.n) - 1
    base_table = f.table
    table: list = [NEG_INF] * (1 << lifted_n)
    for mask in range(1 << lifted_n):
        if mask.bit_count() == r_max:
            table[mask] = base_table[mask & base_mask]
    return LiftedSetFn(f, slots, r_max, r_min, SetFn(lifted_n, tuple(table)))


def lifted_conjugate(lf: LiftedSetFn, p: PriceVector, q: PriceVector) -> Rational:
    """Conjugate of the lifted function at (p, q) without scanning its table.

    Each base domain set X is padded with the r_max - |X| cheapest slack
    elements under q; the result equals conjugate(lf.lifted, p.concat(q)).
    """
    if len(p.entries) != lf.base.n:
        raise ValueError(f"p has length {len(p.entries)}, base ground set has {lf.base.n}")
    if len(q.entries) != lf.slots:
        raise ValueError(f"q has length {len(q.entries)}, lift has {lf.slots} slots")
    cheapest = sorted(q.entries)
    prefix: list = [0]
    for value in cheapest:
        prefix.append(prefix[-1] + value)
    base = lf.base
    best: Optional[Rational] = None
    for mask in base.dom_masks:
        need = lf.r_max - mask.bit_count()
        value = base.table[mask] - p.sum_over(mask) - prefix[need]
        if best is None or value > best:
            best = value
    assert best is not None
    return best
