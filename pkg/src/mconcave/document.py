"""JSON interchange: set-function documents and the machine-readable report.

Documents carry exact rationals as strings ("a/b" or an integer string,
plain JSON integers also accepted), never floats, and sets as sorted
1-based element lists.  Parsing then re-serializing is idempotent: output
uses canonical fraction form and orders entries by cardinality, then
lexicographically.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

from .axioms import (
    CardinalityWitness,
    DisconnectWitness,
    ExchangeWitness,
    SubmodularityViolation,
    Witness,
)
from .certificates import SubmodularityCertificate
from .core import NEG_INF, PriceVector, Rational, SetFn, elements_of, mask_of

TOOL_NAME = "mconcave"
TOOL_VERSION = "0.1.0"
REPORT_VERSION = 1

_DEFAULT_SENTINEL = "-inf"


class DocumentError(ValueError):
    """An input document was rejected; the message names the offending field."""


def parse_rational(raw: Any, where: str = "value") -> Rational:
    """Exact rational from an "a/b" or integer string (or JSON integer)."""
    if isinstance(raw, bool):
        raise DocumentError(f"{where}: expected a rational, got a boolean")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float):
        raise DocumentError(f"{where}: floats are not exact; write rationals as strings")
    if not isinstance(raw, str):
        raise DocumentError(f"{where}: expected a rational string, got {type(raw).__name__}")
    text = raw.strip()
    if "/" in text:
        numerator_text, _, denominator_text = text.partition("/")
        try:
            numerator = int(numerator_text)
            denominator = int(denominator_text)
        except ValueError:
            raise DocumentError(f"{where}: cannot parse rational {raw!r}") from None
        if denominator == 0:
            raise DocumentError(f"{where}: zero denominator in {raw!r}")
        return Fraction(numerator, denominator)
    try:
        return int(text)
    except ValueError:
        raise DocumentError(f"{where}: cannot parse rational {raw!r}") from None


def format_rational(value: Rational) -> str:
    """Canonical string: lowest terms, "a/b" or a plain integer."""
    return str(Fraction(value))


def parse_setfn_document(source: Union[str, bytes, Dict[str, Any]]) -> SetFn:
    """Parse a set-function document; raises DocumentError naming bad fields."""
    if isinstance(source, (str, bytes)):
        try:
            data = json.loads(source)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
    else:
        data = source
    if not isinstance(data, dict):
        raise DocumentError("document root must be a JSON object")
    n = data.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= 20:
        raise DocumentError(f"n: expected an integer in 1..20, got {n!r}")
    default = data.get("default", _DEFAULT_SENTINEL)
    if default != _DEFAULT_SENTINEL:
        raise DocumentError(f'default: only "{_DEFAULT_SENTINEL}" is supported, got {default!r}')
    values = data.get("values")
    if not isinstance(values, list):
        raise DocumentError("values: expected a list of {set, value} objects")
    table: list = [NEG_INF] * (1 << n)
    for index, item in enumerate(values):
        where = f"values[{index}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{where}: expected an object with set and value")
        if "set" not in item or "value" not in item:
            raise DocumentError(f"{where}: missing set or value")
        elements = item["set"]
        if not isinstance(elements, list):
            raise DocumentError(f"{where}.set: expected a list of elements")
        try:
            mask = mask_of(elements, n)
        except ValueError as exc:
            raise DocumentError(f"{where}.set: {exc}") from exc
        if table[mask] is not NEG_INF:
            raise DocumentError(f"{where}.set: duplicate set {sorted(elements)}")
        table[mask] = parse_rational(item["value"], f"{where}.value")
    if all(value is NEG_INF for value in table):
        raise DocumentError("values: at least one finite value is required")
    return SetFn(n, tuple(table))


def setfn_to_document(f: SetFn) -> Dict[str, Any]:
    """Canonical document form: entries sorted by cardinality, then elements."""
    entries = []
    order = sorted(f.dom_masks, key=lambda mask: (mask.bit_count(), elements_of(mask)))
    for mask in order:
        entries.append(
            {"set": list(elements_of(mask)), "value": format_rational(f.table[mask])}
        )
    return {"n": f.n, "default": _DEFAULT_SENTINEL, "values": entries}


def dump_setfn(f: SetFn) -> str:
    return json.dumps(setfn_to_document(f), indent=2) + "\n"


def document_digest(f: SetFn) -> str:
    """Stable content digest of the canonical document form."""
    canonical = json.dumps(setfn_to_document(f), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _mask_to_list(mask: int) -> List[int]:
    return list(elements_of(mask))


def price_to_json(p: PriceVector) -> List[str]:
    return [format_rational(value) for value in p.entries]


def witness_to_json(witness: Witness) -> Dict[str, Any]:
    if isinstance(witness, ExchangeWitness):
        return {
            "kind": "exchange",
            "axiom": witness.axiom,
            "x": _mask_to_list(witness.x_mask),
            "y": _mask_to_list(witness.y_mask),
            "i": witness.i,
            "tried_j": list(witness.tried_j),
        }
    if isinstance(witness, CardinalityWitness):
        return {
            "kind": "cardinality",
            "x": _mask_to_list(witness.x_mask),
            "y": _mask_to_list(witness.y_mask),
        }
    if isinstance(witness, DisconnectWitness):
        return {
            "kind": "disconnect",
            "x": _mask_to_list(witness.x_mask),
            "y": _mask_to_list(witness.y_mask),
        }
    raise TypeError(f"unknown witness type {type(witness).__name__}")


def violation_to_json(violation: SubmodularityViolation) -> Dict[str, Any]:
    return {
        "p": price_to_json(violation.p),
        "q": price_to_json(violation.q),
        "g_p": format_rational(violation.g_p),
        "g_q": format_rational(violation.g_q),
        "g_join": format_rational(violation.g_join),
        "g_meet": format_rational(violation.g_meet),
        "deficit": format_rational(violation.deficit),
    }


def certificate_to_json(certificate: SubmodularityCertificate) -> Dict[str, Any]:
    target: Dict[str, Any] = {"kind": certificate.target.kind}
    if certificate.target.slots is not None:
        target["slots"] = certificate.target.slots
    params = certificate.params
    params_json: Dict[str, Any] = {
        "kind": params.kind,
        "x": _mask_to_list(params.x_mask),
        "y": _mask_to_list(params.y_mask),
        "M": format_rational(params.rail_scale),
        "F": format_rational(params.value_scale),
    }
    if params.rail_offset is not None:
        params_json["C"] = format_rational(params.rail_offset)
    if params.split_size is not None:
        params_json["m"] = params.split_size
    if params.gap is not None:
        params_json["a"] = format_rational(params.gap)
    return {
        "target": target,
        "p": price_to_json(certificate.p),
        "q": price_to_json(certificate.q),
        "g_p": format_rational(certificate.g_p),
        "g_q": format_rational(certificate.g_q),
        "g_join": format_rational(certificate.g_join),
        "g_meet": format_rational(certificate.g_meet),
        "deficit": format_rational(certificate.deficit),
        "params": params_json,
    }


def make_report(f: Optional[SetFn] = None, **sections: Any) -> Dict[str, Any]:
    """Report envelope with tool version and input digest."""
    report: Dict[str, Any] = {
        "report_version": REPORT_VERSION,
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
    }
    if f is not None:
        report["input"] = {"n": f.n, "digest": document_digest(f)}
    report.update(sections)
    return report
