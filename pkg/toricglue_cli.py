#!/usr/bin/env python3
"""
toricglue command-line front end.

Sub-commands:
  family N F G   the (n, f, g) family: configuration, the n + 1 defining binomials, the witness G, checks
  glue CONFIG    search a completely p-glued tree (--p 0 for plain gluing) and print its certificates
  markov CONFIG  bounded Markov basis of the toric ideal
  verify CONFIG  compare vanishing sets over small prime fields (exit 0 iff all equal)
  serve          start the HTTP gateway exposing every registered API

CONFIG is a JSON file holding either {"n", "c", "rows"} or the family shorthand {"n", "f", "g"}.

Exit codes: 0 success, 1 verification failed / no tree, 2 invalid input, 3 resource cap.

Usage:
  uv run toricglue family 3 3 2 --p 2 --q 3
  uv run toricglue glue data/configs/example1.json --p 2 --json
  uv run toricglue verify data/configs/example1.json --primes 5,7,11
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from typing import Any

import core
from core.config.engine_config import load_engine_config
from shared.atomic_write import atomic_write_json
from shared.serialization import FamilyShorthand, configuration_to_json, load_config_file, load_system_file, system_to_json

logger = logging.getLogger("toricglue")

EXIT_OK = 0
EXIT_FAILED = 1


def _parse_primes(text: str) -> list[int]:
    try:
        primes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of primes, got {text!r}")
    if not primes:
        raise argparse.ArgumentTypeError(f"at least one prime is required, got {text!r}")
    return primes


def _config_payload(path: str) -> dict[str, Any]:
    doc = load_config_file(path)
    return doc.to_json() if isinstance(doc, FamilyShorthand) else configuration_to_json(doc)


def _system_payload(path: str, n: int, r: int) -> dict[str, Any]:
    return system_to_json(load_system_file(path, n=n, r=r), n, r)


def _workflow(path: str, payload: dict[str, Any]) -> dict[str, Any]:
    return core.call_api(path, payload, namespace="workflow")


# ---------------------------------------------------------------------------
# Human-readable output
# ---------------------------------------------------------------------------


def _print_config(config: dict[str, Any], family: dict[str, int] | None) -> None:
    n, c, rows = config["n"], config["c"], config["rows"]
    label = f" (family n={family['n']}, f={family['f']}, g={family['g']})" if family else ""
    print(f"configuration: n={n}, c={c}, r={len(rows)}{label}")
    for i in range(1, n + 1):
        print(f"  v{i} = {[c if j == i else 0 for j in range(1, n + 1)]}")
    for i, row in enumerate(rows, start=1):
        print(f"  w{i} = {row}")


def _print_family(report: dict[str, Any]) -> None:
    params = report["params"]
    _print_config(report["config"], params)
    print("conditions:")
    for name, ok in report["conditions"].items():
        print(f"  {name:<14} {'yes' if ok else 'NO'}")
    print(f"frobenius number of <f, g>: {report['frobenius']}")
    print(f"defining equations (p={report['p']}, q={report['q']}):")
    for eq in report["system"]["equations"]:
        print(f"  {eq}")
    print(f"witness G: {report['witness']['equation']}")
    identities = report["identities"]
    print(f"vector identities: {'all hold' if identities['all_hold'] else 'FAILED'}")
    for entry in identities["identities"]:
        if not entry["holds"]:
            print(f"  {entry['name']}: {entry['lhs']} != {entry['rhs']}")
    omission = report["omission_minimality"]
    print(f"omission minimality: {'all glued with w = f*w_n' if omission['all_glued'] else 'FAILED'}")
    print(f"nested-support chain: {'yes' if report['support_chain'] else 'no'}")
    prop2 = report.get("proposition2")
    if prop2:
        print(f"non-complete-intersection check (degree bound {prop2['degree_bound']}):")
        print(f"  minimal e with e*w_n in NT_1: {prop2['e']}")
        print(f"  G in I(V): {prop2['witness_in_ideal']}")
        print(f"  generator count >= {prop2['generator_count_lower_bound']} (> n: {prop2['count_exceeds_n']})")


def _print_tree(node: dict[str, Any], depth: int = 0) -> None:
    pad = "  " * (depth + 1)
    if "leaf" in node:
        print(f"{pad}leaf {node['leaf']}")
        return
    cert = node["certificate"]
    print(f"{pad}glue {cert['part1']} | {cert['part2']}  w={cert['w']}  alpha={cert['alpha']}  p={cert['p']}")
    _print_tree(node["left"], depth + 1)
    _print_tree(node["right"], depth + 1)


def _print_glue(report: dict[str, Any]) -> None:
    _print_config(report["config"], report["family"])
    mode = "plain gluing" if report["p"] == 0 else f"p = {report['p']}, alpha <= {report['alpha_max']}"
    if not report["found"]:
        print(f"no tree found ({mode})")
        return
    print(f"gluing tree ({mode}):")
    _print_tree(report["tree"])
    print("binomials:")
    for eq in report["equations"]:
        print(f"  {eq}")


def _print_markov(report: dict[str, Any]) -> None:
    _print_config(report["config"], report["family"])
    status = "complete" if report["complete_up_to_bound"] else "NOT stabilised"
    print(f"Markov basis up to degree {report['degree_bound_used']} ({status}): {report['count']} binomials")
    indispensable = set(report["indispensable"])
    for eq, grading in zip(report["equations"], report["gradings"], strict=True):
        mark = "  [indispensable]" if eq in indispensable else ""
        print(f"  {eq}    (degree {grading}){mark}")


def _print_verify(report: dict[str, Any]) -> None:
    _print_config(report["config"], report["family"])
    a, b = report["system_a"], report["system_b"]
    print(f"system A: {a['count']} binomials from {a['source']}")
    print(f"system B: {b['count']} binomials from {b['source']}")
    for r in report["reports"]:
        verdict = "equal" if r["equal"] else "DIFFER"
        print(f"  F_{r['field_prime']}: |Z(A)| = {r['system_a_size']}, |Z(B)| = {r['system_b_size']}  {verdict}")
        if not r["equal"]:
            print(f"    only in A: {r['only_in_a']}, only in B: {r['only_in_b']}")
            for w in r["witnesses"]:
                print(f"    witness {tuple(w)}")
    param = report["parametrization"]
    lift = report["integer_lift"]
    print(f"parametrization samples: {param['checked']} evaluations, {'pass' if param['passed'] else 'FAIL'}")
    print(f"integer lift over F_{lift['field_prime']}: {lift['lifted']} points, {'pass' if lift['passed'] else 'FAIL'}")
    print("verified" if report["verified"] else "NOT verified")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_family(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    payload: dict[str, Any] = {"n": args.n, "f": args.f, "g": args.g, "p": args.p, "q": args.q}
    if args.proposition2:
        payload["proposition2"] = True
        if args.bound is not None:
            payload["bound"] = args.bound
    report = _workflow("toric/analysis/family_report", payload)
    if args.emit_equations and not args.json:
        for eq in report["system"]["equations"]:
            print(eq)
    elif not args.json:
        _print_family(report)
    return report, EXIT_OK


def cmd_glue(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    payload: dict[str, Any] = {"config": _config_payload(args.config), "p": args.p}
    if args.alpha_max is not None:
        payload["alpha_max"] = args.alpha_max
    report = _workflow("toric/analysis/glue_report", payload)
    if not args.json:
        _print_glue(report)
    return report, EXIT_OK if report["found"] else EXIT_FAILED


def cmd_markov(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    if args.bound is not None and args.bound <= 0:
        raise core.InvalidInputError(f"--bound must be positive, got {args.bound}", "INVALID_BOUND")
    payload: dict[str, Any] = {"config": _config_payload(args.config)}
    if args.bound is not None:
        payload["bound"] = args.bound
    report = _workflow("toric/analysis/markov_report", payload)
    if not args.json:
        _print_markov(report)
    return report, EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[dict[str, Any], int]:
    config = _config_payload(args.config)
    payload: dict[str, Any] = {"config": config, "p": args.p, "q": args.q}
    if args.primes is not None:
        payload["primes"] = args.primes
    if args.bound is not None:
        payload["bound"] = args.bound
    if args.system or args.against:
        if "rows" not in config:
            config = core.call_api("toric/family/build", config, namespace="modules")["config"]
            payload["config"] = config
        n, r = config["n"], len(config["rows"])
        if args.system:
            payload["system"] = _system_payload(args.system, n, r)
        if args.against:
            payload["against"] = _system_payload(args.against, n, r)
    report = _workflow("toric/analysis/verify_report", payload)
    if not args.json:
        _print_verify(report)
    return report, EXIT_OK if report["verified"] else EXIT_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    from core.api_gateway import GatewayConfig, get_api_gateway

    gateway = get_api_gateway(GatewayConfig(host=args.host, port=args.port))
    gateway.start_server()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable JSON report")
    common.add_argument("--output", default=None, help="also write the JSON report to this file")
    common.add_argument("--settings", default=None, help="engine settings JSON (default: toricglue-config.json)")
    common.add_argument("--log-level", default=None, help="DEBUG / INFO / WARNING / ERROR")
    common.add_argument("--workers", type=int, default=None, help="enumeration shard fan-out")

    parser = argparse.ArgumentParser(prog="toricglue", description="Gluing certificates and Markov bases of simplicial toric varieties")
    sub = parser.add_subparsers(dest="command", required=True)

    p_family = sub.add_parser("family", parents=[common], help="the (n, f, g) family and its n + 1 equations")
    p_family.add_argument("n", type=int)
    p_family.add_argument("f", type=int)
    p_family.add_argument("g", type=int)
    p_family.add_argument("--p", type=int, default=2, help="first prime (default: 2)")
    p_family.add_argument("--q", type=int, default=3, help="second prime (default: 3)")
    p_family.add_argument("--emit-equations", action="store_true", help="print only the defining equations")
    p_family.add_argument("--proposition2", action="store_true", help="also run the non-complete-intersection check")
    p_family.add_argument("--bound", type=int, default=None, help="degree bound for --proposition2")
    p_family.set_defaults(handler=cmd_family)

    p_glue = sub.add_parser("glue", parents=[common], help="search a completely p-glued tree")
    p_glue.add_argument("config")
    p_glue.add_argument("--p", type=int, default=2, help="prime, or 0 for plain gluing (default: 2)")
    p_glue.add_argument("--alpha-max", type=int, default=None)
    p_glue.set_defaults(handler=cmd_glue)

    p_markov = sub.add_parser("markov", parents=[common], help="bounded Markov basis")
    p_markov.add_argument("config")
    p_markov.add_argument("--bound", type=int, default=None)
    p_markov.set_defaults(handler=cmd_markov)

    p_verify = sub.add_parser("verify", parents=[common], help="compare vanishing sets over prime fields")
    p_verify.add_argument("config")
    p_verify.add_argument("--primes", type=_parse_primes, default=None, help="comma-separated, e.g. 5,7,11")
    p_verify.add_argument("--p", type=int, default=2)
    p_verify.add_argument("--q", type=int, default=3)
    p_verify.add_argument("--bound", type=int, default=None, help="Markov degree bound for system B")
    p_verify.add_argument("--system", default=None, help="system A file (default: the family's equations)")
    p_verify.add_argument("--against", default=None, help="system B file (default: the Markov basis)")
    p_verify.set_defaults(handler=cmd_verify)

    p_serve = sub.add_parser("serve", parents=[common], help="start the HTTP gateway")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8050)
    p_serve.set_defaults(handler=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    try:
        settings = load_engine_config(args.settings).with_overrides(workers=args.workers)
    except (OSError, json.JSONDecodeError, TypeError) as e:
        print(f"error [MALFORMED_SETTINGS]: {e}", file=sys.stderr)
        return core.InvalidInputError.exit_code
    core.set_engine_config(settings)
    logging.basicConfig(
        level=(args.log_level or settings.log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    loaded = core.get_service_manager().load_project_modules()
    logger.debug("loaded %d API modules, %d functions registered", loaded, len(core.get_registry().list_functions()))

    if args.command == "serve":
        return cmd_serve(args)

    try:
        report, code = args.handler(args)
    except core.ApiError as e:
        print(f"error [{e.error_code}]: {e}", file=sys.stderr)
        return e.exit_code

    if args.json:
        print(json.dumps(report, indent=2, ensure_ascii=False))
    if args.output:
        try:
            atomic_write_json(args.output, report)
        except OSError as e:
            print(f"error [OUTPUT_WRITE_FAILED]: {e}", file=sys.stderr)
            return core.InvalidInputError.exit_code
        logger.info("report written to %s", args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
