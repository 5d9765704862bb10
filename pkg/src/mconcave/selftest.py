"""Executable property suites tying checkers, certificates, and conjugates together.

The suites exercise, on a deterministic instance pool:
  * the equivalence of the exchange axiom with its local decomposition,
  * agreement of m-concavity with mnat-concavity plus equicardinality,
  * mnat-concavity of f versus m-concavity of its lift,
  * conjugate submodularity probes on positive instances,
  * certificate construction for every failing instance,
  * the padded-slot evaluation of the lifted conjugate against the generic
    conjugate, and submodularity probes on lifted positives.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, List, Optional, Sequence, Tuple

from .axioms import (
    check_equicardinal,
    check_m_concave,
    check_m_via_local,
    check_mnat_concave,
    check_submodular_pair,
    check_submodular_unit,
)
from .certificates import certify_not_mnat
from .core import (
    MAX_GROUND_SIZE,
    NEG_INF,
    PriceVector,
    SetFn,
    conjugate,
    lift,
    lifted_conjugate,
)
from .generators import FAMILIES, FIXTURE_NAMES, InstanceSpec, build_instance, named_fixture, perturb

MAX_SELFTEST_GROUND = 6
_LIFT_SIZE_CAP = 10
_LIFT_DOM_CAP = 150


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property suite: how many checks ran and how many failed."""

    name: str
    checked: int
    violations: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.violations == 0


def _price_grid(f: SetFn) -> Tuple:
    scale = f.value_scale
    return tuple(dict.fromkeys((-2 * scale, -scale, -1, 0, 1, scale, 2 * scale)))


def _magnitudes(f: SetFn) -> Tuple:
    return tuple(dict.fromkeys((Fraction(1, 2), 1, f.value_scale)))


def _random_price(rng: random.Random, n: int, grid: Sequence) -> PriceVector:
    return PriceVector(tuple(rng.choice(grid) for _ in range(n)))


def exhaustive_domains(n: int, seed: int) -> Iterable[SetFn]:
    """Every nonempty effective domain on {1..n}, one seeded value assignment each."""
    size = 1 << n
    for dom_mask in range(1, 1 << size):
        rng = random.Random(f"exhaustive:{seed}:{dom_mask}")
        table: list = [NEG_INF] * size
        for mask in range(size):
            if dom_mask >> mask & 1:
                table[mask] = rng.randint(-3, 3)
        yield SetFn(n, tuple(table))


def random_domain_instance(n: int, seed: int) -> SetFn:
    """A seeded set function with random effective domain and small values."""
    rng = random.Random(f"random-domain:{n}:{seed}")
    size = 1 << n
    dom_mask = rng.randint(1, (1 << size) - 1)
    table: list = [NEG_INF] * size
    for mask in range(size):
        if dom_mask >> mask & 1:
            table[mask] = rng.randint(-3, 3)
    return SetFn(n, tuple(table))


def _instance_pool(max_n: int, trials: int, seed: int) -> Tuple[List[SetFn], List[SetFn], List[SetFn]]:
    positives: List[SetFn] = []
    negatives: List[SetFn] = []
    for name in FIXTURE_NAMES:
        fixture = named_fixture(name)
        if check_mnat_concave(fixture) is None:
            positives.append(fixture)
        else:
            negatives.append(fixture)
    for n in range(2, max_n + 1):
        for family in FAMILIES:
            for family_seed in range(3):
                positives.append(build_instance(InstanceSpec(family, n, seed + family_seed)))
    rng = random.Random(f"pool:{seed}")
    attempts = 0
    while len(negatives) < 16 and attempts < 400:
        base = positives[rng.randrange(len(positives))]
        candidate = perturb(base, rng.randint(1, 3), seed + attempts)
        if check_mnat_concave(candidate) is not None:
            negatives.append(candidate)
        attempts += 1
    everything = positives + negatives
    if max_n <= 3:
        everything = everything + list(exhaustive_domains(max_n, seed))
    else:
        count = min(trials, 200)
        everything = everything + [
            random_domain_instance(2 + index % (max_n - 1), seed + index) for index in range(count)
        ]
    return positives, negatives, everything


def _prop_m_decomposition(pool: Sequence[SetFn]) -> PropertyResult:
    violations = 0
    for f in pool:
        is_m = check_m_concave(f) is None
        decomposed = check_mnat_concave(f) is None and check_equicardinal(f) is None
        if is_m != decomposed:
            violations += 1
    return PropertyResult("m-equals-mnat-plus-equicardinal", len(pool), violations)


def _prop_local_route(pool: Sequence[SetFn]) -> PropertyResult:
    violations = 0
    for f in pool:
        if (check_m_concave(f) is None) != (check_m_via_local(f) is None):
            violations += 1
    return PropertyResult("m-equals-local-criteria", len(pool), violations)


def _liftable(f: SetFn) -> Optional[int]:
    """Lifted ground size when the lift stays within the self-test budget."""
    r_min, r_max = f.cardinality_range
    slots = r_max - r_min + 2
    lifted_n = f.n + slots
    if lifted_n > min(_LIFT_SIZE_CAP, MAX_GROUND_SIZE):
        return None
    lifted_dom = 0
    for mask in f.dom_masks:
        lifted_dom += comb(slots, r_max - mask.bit_count())
        if lifted_dom > _LIFT_DOM_CAP:
            return None
    return lifted_n


def _prop_lift_equivalence(pool: Sequence[SetFn]) -> PropertyResult:
    checked = 0
    violations = 0
    for f in pool:
        if _liftable(f) is None:
            continue
        checked += 1
        lifted = lift(f)
        if (check_mnat_concave(f) is None) != (check_m_concave(lifted.lifted) is None):
            violations += 1
    return PropertyResult("mnat-equals-m-of-lift", checked, violations)


def _prop_forward_submodularity(positives: Sequence[SetFn], trials: int, seed: int) -> PropertyResult:
    checked = 0
    violations = 0
    unit_per_instance = max(1, trials // max(1, len(positives)))
    pair_per_instance = max(1, unit_per_instance // 2)
    for index, f in enumerate(positives):
        rng = random.Random(f"forward:{seed}:{index}")
        grid = _price_grid(f)
        magnitudes = _magnitudes(f)
        for _ in range(unit_per_instance):
            p = _random_price(rng, f.n, grid)
            if f.n < 2:
                break
            i, j = rng.sample(range(1, f.n + 1), 2)
            checked += 1
            if check_submodular_unit(f, p, i, j, rng.choice(magnitudes), rng.choice(magnitudes)):
                violations += 1
        for _ in range(pair_per_instance):
            checked += 1
            if check_submodular_pair(f, _random_price(rng, f.n, grid), _random_price(rng, f.n, grid)):
                violations += 1
    return PropertyResult("conjugate-submodular-on-positives", checked, violations)


def _prop_certificates(negatives: Sequence[SetFn]) -> PropertyResult:
    checked = 0
    violations = 0
    for f in negatives:
        checked += 1
        certificate = certify_not_mnat(f)
        if certificate is None:
            violations += 1
            continue
        if certificate.target.kind == "base":
            target_fn = f
        else:
            target_fn = lift(f, certificate.target.slots).lifted
        values = tuple(
            conjugate(target_fn, vector)
            for vector in (
                certificate.p,
                certificate.q,
                certificate.p.join(certificate.q),
                certificate.p.meet(certificate.q),
            )
        )
        recorded = (certificate.g_p, certificate.g_q, certificate.g_join, certificate.g_meet)
        if values != recorded or not values[0] + values[1] < values[2] + values[3]:
            violations += 1
    return PropertyResult("certificate-for-every-failure", checked, violations)


def _prop_lifted_conjugate(pool: Sequence[SetFn], trials: int, seed: int) -> PropertyResult:
    checked = 0
    violations = 0
    eligible = []
    for f in pool:
        r_min, r_max = f.cardinality_range
        if f.n + (r_max - r_min) + 2 <= 8:
            eligible.append(f)
    if not eligible:
        return PropertyResult("lifted-conjugate-two-ways", 0, 0)
    probes = max(1, trials // len(eligible))
    for index, f in enumerate(eligible):
        rng = random.Random(f"lifted-conjugate:{seed}:{index}")
        lifted = lift(f)
        grid = _price_grid(f)
        for _ in range(probes):
            p = _random_price(rng, f.n, grid)
            q = _random_price(rng, lifted.slots, grid)
            checked += 1
            if lifted_conjugate(lifted, p, q) != conjugate(lifted.lifted, p.concat(q)):
                violations += 1
    return PropertyResult("lifted-conjugate-two-ways", checked, violations)


def _prop_lifted_submodularity(positives: Sequence[SetFn], trials: int, seed: int) -> PropertyResult:
    checked = 0
    violations = 0
    eligible = [f for f in positives if _liftable(f) is not None]
    if not eligible:
        return PropertyResult("lifted-conjugate-submodular-on-positives", 0, 0)
    probes = max(1, trials // max(1, 2 * len(eligible)))
    for index, f in enumerate(eligible):
        rng = random.Random(f"lifted-submodular:{seed}:{index}")
        lifted = lift(f)
        big = lifted.lifted
        grid = _price_grid(big)
        magnitudes = _magnitudes(big)
        slot_elements = list(lifted.slot_elements)
        base_elements = list(range(1, f.n + 1))
        for _ in range(probes):
            # one generic pair probe, one probe inside the slots, one split probe
            checked += 1
            if check_submodular_pair(big, _random_price(rng, big.n, grid), _random_price(rng, big.n, grid)):
                violations += 1
            p = _random_price(rng, big.n, grid)
            if len(slot_elements) >= 2:
                i, j = rng.sample(slot_elements, 2)
                checked += 1
                if check_submodular_unit(big, p, i, j, rng.choice(magnitudes), rng.choice(magnitudes)):
                    violations += 1
            i = rng.choice(base_elements)
            j = rng.choice(slot_elements)
            checked += 1
            if check_submodular_unit(big, p, i, j, rng.choice(magnitudes), rng.choice(magnitudes)):
                violations += 1
    return PropertyResult("lifted-conjugate-submodular-on-positives", checked, violations)


def run_selftest(max_n: int, trials: int, seed: int) -> List[PropertyResult]:
    """Run every property suite; deterministic in (max_n, trials, seed)."""
    if not 1 <= max_n <= MAX_SELFTEST_GROUND:
        raise ValueError(f"ground size for the self-test must be 1..{MAX_SELFTEST_GROUND}")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    positives, negatives, everything = _instance_pool(max(2, max_n), trials, seed)
    return [
        _prop_m_decomposition(everything),
        _prop_local_route(everything),
        _prop_lift_equivalence(everything),
        _prop_forward_submodularity(positives, trials, seed),
        _prop_certificates(negatives),
        _prop_lifted_conjugate(everything, trials, seed),
        _prop_lifted_submodularity(positives, trials, seed),
    ]
