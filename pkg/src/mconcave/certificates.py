"""Constructive price-pair certificates that a conjugate is not submodular.

Each builder produces an explicit pair (p, q) with
g(p) + g(q) < g(p join q) + g(p meet q) and verifies the strict inequality
by recomputing the four conjugate values before returning.  Rail entries of
size M (and M squared) confine conjugate maximizers to the witnessing
domain pair; M starts at 4F + n + 2 and doubles until verification
succeeds, which the constructions guarantee for all sufficiently large M.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .axioms import (
    DisconnectWitness,
    NotEquicardinalError,
    check_connected,
    check_equicardinal,
    check_local_exchange,
    check_mnat_concave,
    check_submodular_pair,
    interval_is_isolated,
    _require_equicardinal,
)
from .core import (
    NEG_INF,
    ExtValue,
    PriceVector,
    Rational,
    SetFn,
    elements_of,
    lift,
)


class UniqueMatchingRequiredError(ValueError):
    """The four-vertex pair weights lack a unique maximum perfect matching."""


class NotALocalFailureError(ValueError):
    """The pair does not strictly violate the local exchange axiom."""


class CertificateSearchExhaustedError(RuntimeError):
    """Rail scaling never produced a verified certificate; signals a bug."""


PAIRS: Tuple[Tuple[int, int], ...] = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
_CROSS = ((1, 3), (1, 4), (2, 3), (2, 4))
_MAX_RAIL_DOUBLINGS = 40


@dataclass(frozen=True)
class MatchingDual:
    """Vertex prices certifying the unique optimum matching {12, 34} on K4.

    phat covers the matched pairs exactly (phat_1 + phat_2 = alpha_12 and
    phat_3 + phat_4 = alpha_34) and strictly overpays every finite
    non-matching pair.  beta holds alpha_ij - phat_i - phat_j in PAIRS
    order, with -inf preserved.
    """

    phat: Tuple[Fraction, Fraction, Fraction, Fraction]
    beta: Tuple[ExtValue, ...]

    def beta_of(self, i: int, j: int) -> ExtValue:
        if i > j:
            i, j = j, i
        return self.beta[PAIRS.index((i, j))]


def _point_in_open_interval(lower, upper, fallback) -> Fraction:
    """A rational strictly between the bounds; None means unbounded on that side."""
    if lower is not None and upper is not None:
        return Fraction(lower + upper, 2)
    if lower is not None:
        return Fraction(lower + 1)
    if upper is not None:
        return Fraction(upper - 1)
    return Fraction(fallback)


def matching_dual(alpha: Sequence[ExtValue]) -> MatchingDual:
    """Closed-form dual prices for pair weights alpha on vertices {1, 2, 3, 4}.

    alpha lists the six pair weights in the order 12, 13, 14, 23, 24, 34.
    Requires alpha_12 and alpha_34 finite and their sum strictly above both
    cross sums alpha_13 + alpha_24 and alpha_14 + alpha_23 (a sum with a
    -inf term counts as -inf); that is exactly the condition for {12, 34}
    to be the unique maximum weight perfect matching.
    """
    if len(alpha) != 6:
        raise ValueError(f"expected six pair weights, got {len(alpha)}")
    a12, a13, a14, a23, a24, a34 = alpha
    if a12 is NEG_INF or a34 is NEG_INF:
        raise UniqueMatchingRequiredError("the matched pair weights 12 and 34 must be finite")
    top = a12 + a34
    for cross in (a13 + a24, a14 + a23):
        if not cross < top:
            raise UniqueMatchingRequiredError(
                "need alpha_12 + alpha_34 strictly above both cross sums"
            )
    u = _point_in_open_interval(
        a13 if a13 is not NEG_INF else None,
        top - a24 if a24 is not NEG_INF else None,
        Fraction(top, 2),
    )
    v = _point_in_open_interval(
        a14 - a34 if a14 is not NEG_INF else None,
        a12 - a23 if a23 is not NEG_INF else None,
        Fraction(a12 - a34, 2),
    )
    half_sum = Fraction(u + v, 2)
    half_diff = Fraction(u - v, 2)
    phat = (half_sum, Fraction(a12) - half_sum, half_diff, Fraction(a34) - half_diff)
    beta = tuple(
        value if value is NEG_INF else value - phat[i - 1] - phat[j - 1]
        for value, (i, j) in zip(alpha, PAIRS)
    )
    return MatchingDual(phat, beta)


@dataclass(frozen=True)
class CertificateTarget:
    """Which conjugate the certificate violates.

    kind "base" means the conjugate of the input function itself; kind
    "lifted" means the conjugate of its equicardinal lift, with the slot
    count recording how the lift was built.
    """

    kind: str
    slots: Optional[int] = None

    @classmethod
    def base(cls) -> "CertificateTarget":
        return cls("base")

    @classmethod
    def lifted(cls, slots: int) -> "CertificateTarget":
        return cls("lifted", slots)


@dataclass(frozen=True)
class CertificateParams:
    """Construction constants kept for reports and reproducibility.

    rail_scale is the big scale M; rail_offset is the constant
    M * M * |X & Y| added to every confined conjugate value (disconnection
    case); split_size is |X minus Y|; value_scale is the largest absolute
    domain value F; gap is the perturbation size a (local-exchange case).
    """

    kind: str
    x_mask: int
    y_mask: int
    rail_scale: Rational
    value_scale: Rational
    rail_offset: Optional[Rational] = None
    split_size: Optional[int] = None
    gap: Optional[Rational] = None


@dataclass(frozen=True)
class SubmodularityCertificate:
    """A verified price pair with g(p) + g(q) < g(p join q) + g(p meet q)."""

    target: CertificateTarget
    p: PriceVector
    q: PriceVector
    g_p: Rational
    g_q: Rational
    g_join: Rational
    g_meet: Rational
    params: CertificateParams

    @property
    def deficit(self) -> Rational:
        return self.g_join + self.g_meet - self.g_p - self.g_q


def _bits_of(mask: int):
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def _validate_disconnect_witness(f: SetFn, wit: DisconnectWitness) -> None:
    table = f.table
    x, y = wit.x_mask, wit.y_mask
    if not (0 <= x < 1 << f.n and 0 <= y < 1 << f.n):
        raise ValueError("witness masks outside the ground set")
    if table[x] is NEG_INF or table[y] is NEG_INF:
        raise ValueError("witness sets must lie in the effective domain")
    moved = (x & ~y).bit_count()
    if moved < 2 or moved != (y & ~x).bit_count():
        raise ValueError("witness pair must differ in at least two elements on each side")
    if not interval_is_isolated(f, x, y):
        raise ValueError("witness interval contains a third domain set")


def _disconnection_prices(
    n: int, x: int, y: int, i0_bit: int, j0_bit: int, m: Rational
) -> Tuple[PriceVector, PriceVector]:
    m_squared = m * m
    p: list = [0] * n
    q: list = [0] * n
    for bit in _bits_of(x & ~y):
        index = bit.bit_length() - 1
        if bit == i0_bit:
            p[index] = -m
        else:
            q[index] = -m
    j0_index = j0_bit.bit_length() - 1
    p[j0_index] = q[j0_index] = -m
    for bit in _bits_of(x & y):
        index = bit.bit_length() - 1
        p[index] = q[index] = -m_squared
    full = (1 << n) - 1
    for bit in _bits_of(full & ~(x | y)):
        index = bit.bit_length() - 1
        p[index] = q[index] = m_squared
    return PriceVector(tuple(p)), PriceVector(tuple(q))


def disconnection_certificate(f: SetFn, wit: DisconnectWitness) -> SubmodularityCertificate:
    """Certificate from an isolated domain pair that single swaps cannot bridge.

    One price puts the big penalty on the smallest element of X minus Y,
    the other on the rest of X minus Y; squared rails pin the intersection
    in and everything outside the union out, so the four conjugate values
    are realized on X and Y only and their lattice combination comes out
    strictly larger.
    """
    _require_equicardinal(f, "the disconnection certificate")
    _validate_disconnect_witness(f, wit)
    x, y = wit.x_mask, wit.y_mask
    i0_bit = (x & ~y) & -(x & ~y)
    j0_bit = (y & ~x) & -(y & ~x)
    scale = f.value_scale
    m: Rational = 4 * scale + f.n + 2
    for _ in range(_MAX_RAIL_DOUBLINGS + 1):
        p, q = _disconnection_prices(f.n, x, y, i0_bit, j0_bit, m)
        violation = check_submodular_pair(f, p, q)
        if violation is not None:
            params = CertificateParams(
                kind="disconnection",
                x_mask=x,
                y_mask=y,
                rail_scale=m,
                value_scale=scale,
                rail_offset=m * m * (x & y).bit_count(),
                split_size=(x & ~y).bit_count(),
            )
            return SubmodularityCertificate(
                CertificateTarget.base(),
                violation.p,
                violation.q,
                violation.g_p,
                violation.g_q,
                violation.g_join,
                violation.g_meet,
                params,
            )
        m = 2 * m
    raise CertificateSearchExhaustedError(
        "disconnection certificate never verified; this indicates a bug"
    )


def local_exchange_certificate(
    f: SetFn, x_mask: int, y_mask: int, gap: Optional[Rational] = None
) -> SubmodularityCertificate:
    """Certificate from a pair that strictly fails the local exchange axiom.

    The four elements where X and Y differ are priced by the matching dual
    of the induced pair weights; bumping the first two prices by +a and -a
    (a at most the smallest dual slack) tilts the lattice combination up by
    exactly a.  Rails of size M pin the intersection in and the outside
    out.  gap overrides a and must stay in (0, min |beta|].
    """
    _require_equicardinal(f, "the local exchange certificate")
    table = f.table
    if table[x_mask] is NEG_INF or table[y_mask] is NEG_INF:
        raise ValueError("the pair must lie in the effective domain")
    moved = x_mask & ~y_mask
    targets = y_mask & ~x_mask
    if moved.bit_count() != 2 or targets.bit_count() != 2:
        raise ValueError("the pair must differ in exactly two elements on each side")
    corners = elements_of(moved) + elements_of(targets)
    inter = x_mask & y_mask
    alpha = tuple(
        table[inter | (1 << (corners[i - 1] - 1)) | (1 << (corners[j - 1] - 1))]
        for i, j in PAIRS
    )
    top = alpha[0] + alpha[5]
    if not (alpha[1] + alpha[4] < top and alpha[2] + alpha[3] < top):
        raise NotALocalFailureError(
            "the pair satisfies the local exchange axiom; no certificate exists here"
        )
    dual = matching_dual(alpha)
    finite_slacks = [
        -dual.beta_of(i, j) for i, j in _CROSS if dual.beta_of(i, j) is not NEG_INF
    ]
    largest_gap: Rational = min(finite_slacks) if finite_slacks else 1
    if gap is None:
        gap = largest_gap
    elif not 0 < gap <= largest_gap:
        raise ValueError(f"gap must lie in (0, {largest_gap}], got {gap}")
    scale = f.value_scale
    m: Rational = 4 * scale + f.n + 2
    full = (1 << f.n) - 1
    outside = full & ~(x_mask | y_mask)
    bump = (gap, -gap, 0, 0)
    for _ in range(_MAX_RAIL_DOUBLINGS + 1):
        base: list = [0] * f.n
        for bit in _bits_of(inter):
            base[bit.bit_length() - 1] = -m
        for bit in _bits_of(outside):
            base[bit.bit_length() - 1] = m
        p_entries = list(base)
        q_entries = list(base)
        for k, element in enumerate(corners):
            q_entries[element - 1] = dual.phat[k]
            p_entries[element - 1] = dual.phat[k] + bump[k]
        violation = check_submodular_pair(f, PriceVector(tuple(p_entries)), PriceVector(tuple(q_entries)))
        if violation is not None:
            params = CertificateParams(
                kind="local-exchange",
                x_mask=x_mask,
                y_mask=y_mask,
                rail_scale=m,
                value_scale=scale,
                rail_offset=m * inter.bit_count(),
                split_size=2,
                gap=gap,
            )
            return SubmodularityCertificate(
                CertificateTarget.base(),
                violation.p,
                violation.q,
                violation.g_p,
                violation.g_q,
                violation.g_join,
                violation.g_meet,
                params,
            )
        m = 2 * m
    raise CertificateSearchExhaustedError(
        "local exchange certificate never verified; this indicates a bug"
    )


def certify_not_mnat(f: SetFn) -> Optional[SubmodularityCertificate]:
    """None when the exchange axiom holds, else a verified certificate.

    Equicardinal failures are certified against the function's own
    conjugate.  Other failures are lifted first (slots = cardinality spread
    plus two) and certified against the lifted conjugate, reported with a
    "lifted" target so the result can be mapped back.
    """
    if check_mnat_concave(f) is None:
        return None
    if check_equicardinal(f) is None:
        target_fn = f
        target = CertificateTarget.base()
    else:
        lifted = lift(f)
        target_fn = lifted.lifted
        target = CertificateTarget.lifted(lifted.slots)
    disconnect = check_connected(target_fn)
    if disconnect is not None:
        certificate = disconnection_certificate(target_fn, disconnect)
    else:
        local = check_local_exchange(target_fn)
        if local is None:
            raise CertificateSearchExhaustedError(
                "exchange axiom fails but every local criterion passes; checker bug"
            )
        certificate = local_exchange_certificate(target_fn, local.x_mask, local.y_mask)
    return replace(certificate, target=target)
