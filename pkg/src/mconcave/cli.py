"""Command-line front end: check axioms, evaluate conjugates, build certificates.

Exit codes are part of the machine contract:
  0  input parsed and the requested check passed (or no certificate needed)
  1  input parsed and the requested check failed
  2  input or usage error
  3  certify: the function is not mnat-concave and a certificate was produced
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Dict, List, Optional, Sequence

from .axioms import (
    NotEquicardinalError,
    check_connected,
    check_equicardinal,
    check_local_exchange,
    check_m_concave,
    check_m_via_local,
    check_mnat_concave,
    check_submodular_pair,
    falsify_submodularity,
)
from .certificates import certify_not_mnat
from .core import PriceVector, SetFn, conjugate_maximizer, elements_of, lift
from .document import (
    DocumentError,
    certificate_to_json,
    dump_setfn,
    format_rational,
    make_report,
    parse_rational,
    parse_setfn_document,
    price_to_json,
    violation_to_json,
    witness_to_json,
)
from .selftest import MAX_SELFTEST_GROUND, run_selftest

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_CERTIFICATE = 3

AXIOMS = ("m", "mnat", "equicardinal", "connected", "local", "theorem4")

_CHECKERS = {
    "m": check_m_concave,
    "mnat": check_mnat_concave,
    "equicardinal": check_equicardinal,
    "connected": check_connected,
    "local": check_local_exchange,
    "theorem4": check_m_via_local,
}


def _load(path: str) -> SetFn:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return parse_setfn_document(text)


def _emit(report: Dict[str, Any]) -> None:
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_check(args: argparse.Namespace) -> int:
    f = _load(args.file)
    names = AXIOMS if args.axiom == "all" else (args.axiom,)
    equicardinal = check_equicardinal(f) is None
    checks: Dict[str, Any] = {}
    for name in names:
        if name in ("connected", "local") and not equicardinal:
            if args.axiom == "all":
                checks[name] = {
                    "status": "not-applicable",
                    "reason": "domain is not equicardinal",
                }
                continue
            raise NotEquicardinalError(
                f"the {name} check needs an equicardinal domain; run --axiom equicardinal first"
            )
        witness = _CHECKERS[name](f)
        if witness is None:
            checks[name] = {"status": "pass"}
        else:
            checks[name] = {"status": "fail", "witness": witness_to_json(witness)}
    _emit(make_report(f, checks=checks))
    if args.axiom == "all":
        # overall verdict: is the function mnat-concave
        return EXIT_PASS if checks["mnat"]["status"] == "pass" else EXIT_FAIL
    return EXIT_PASS if checks[args.axiom]["status"] == "pass" else EXIT_FAIL


def _cmd_conjugate(args: argparse.Namespace) -> int:
    f = _load(args.file)
    pieces = [piece.strip() for piece in args.price.split(",")] if args.price else []
    entries = [parse_rational(piece, f"price[{index}]") for index, piece in enumerate(pieces)]
    if len(entries) != f.n:
        raise DocumentError(f"price has {len(entries)} entries, ground set has {f.n}")
    price = PriceVector(tuple(entries))
    value, mask = conjugate_maximizer(f, price)
    _emit(
        make_report(
            f,
            conjugate={
                "price": price_to_json(price),
                "value": format_rational(value),
                "maximizer": list(elements_of(mask)),
            },
        )
    )
    return EXIT_PASS


def _cmd_certify(args: argparse.Namespace) -> int:
    f = _load(args.file)
    certificate = certify_not_mnat(f)
    if certificate is None:
        _emit(make_report(f, certify={"status": "mnat-concave"}))
        return EXIT_PASS
    # re-verify against a freshly built target before emitting
    if certificate.target.kind == "base":
        target_fn = f
    else:
        target_fn = lift(f, certificate.target.slots).lifted
    violation = check_submodular_pair(target_fn, certificate.p, certificate.q)
    if violation is None or (
        violation.g_p,
        violation.g_q,
        violation.g_join,
        violation.g_meet,
    ) != (certificate.g_p, certificate.g_q, certificate.g_join, certificate.g_meet):
        raise RuntimeError("certificate failed re-verification; this indicates a bug")
    sections: Dict[str, Any] = {
        "certify": {"status": "not-mnat-concave"},
        "certificate": certificate_to_json(certificate),
    }
    if certificate.target.kind == "lifted":
        # best effort: look for a violation of the base conjugate as well
        base_violation = falsify_submodularity(f, trials=500, seed=0)
        if base_violation is not None:
            sections["base_violation"] = violation_to_json(base_violation)
    _emit(make_report(f, **sections))
    return EXIT_CERTIFICATE


def _cmd_lift(args: argparse.Namespace) -> int:
    f = _load(args.file)
    lifted = lift(f, args.slots)
    text = dump_setfn(lifted.lifted)
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    return EXIT_PASS


def _cmd_selftest(args: argparse.Namespace) -> int:
    results = run_selftest(args.max_n, args.trials, args.seed)
    failed = False
    for result in results:
        status = "ok" if result.ok else "FAIL"
        print(f"{result.name}: {result.checked} checks, {result.violations} violations [{status}]")
        failed = failed or not result.ok
    return EXIT_FAIL if failed else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mconcave",
        description=(
            "Verify exchange axioms of exact set functions, evaluate concave "
            "conjugates, and construct price pairs certifying that the "
            "conjugate of a non-mnat-concave function is not submodular."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run axiom checkers on a set-function document")
    check.add_argument("file", help="set-function JSON document")
    check.add_argument(
        "--axiom",
        choices=AXIOMS + ("all",),
        default="all",
        help="which axiom to check (default: all)",
    )
    check.set_defaults(handler=_cmd_check)

    conj = sub.add_parser("conjugate", help="evaluate the concave conjugate at a price vector")
    conj.add_argument("file", help="set-function JSON document")
    conj.add_argument(
        "--price",
        required=True,
        help="comma-separated exact rationals, one per ground-set element",
    )
    conj.set_defaults(handler=_cmd_conjugate)

    certify = sub.add_parser(
        "certify",
        help="produce a submodularity-violation certificate unless the function is mnat-concave",
    )
    certify.add_argument("file", help="set-function JSON document")
    certify.set_defaults(handler=_cmd_certify)

    lifted = sub.add_parser("lift", help="write the equicardinal lift as a document")
    lifted.add_argument("file", help="set-function JSON document")
    lifted.add_argument("--slots", type=int, default=None, help="number of slack elements")
    lifted.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    lifted.set_defaults(handler=_cmd_lift)

    selftest = sub.add_parser("selftest", help="run the property suites")
    selftest.add_argument(
        "--n",
        dest="max_n",
        type=int,
        default=4,
        help=f"largest generated ground size, 1..{MAX_SELFTEST_GROUND} (default 4)",
    )
    selftest.add_argument("--trials", type=int, default=200, help="randomized probes per suite")
    selftest.add_argument("--seed", type=int, default=0, help="seed for all randomized probes")
    selftest.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (NotEquicardinalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
