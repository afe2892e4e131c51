"""Command-line front end.

Exit codes: 0 when a check ran (whatever the verdict), 2 on malformed
input, 3 when an enumeration cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .certificates import Mode, lo_certificate, slo_certificate, verify_certificate
from .criteria import DEFAULT_CAP, is_strongly_left_orthogonal
from .errors import (
    ConfigurationError,
    DuplicateId,
    EmptyConfiguration,
    EnumerationCapExceeded,
    InputError,
    InputSyntaxError,
    LeftOrthError,
    NotTreeOfLines,
    SchemaError,
)
from .hodge import hodge_admissible, inertia, positive_structure_check
from .lattice import (
    CurveConfiguration,
    Divisor,
    arithmetic_genus,
    build_configuration,
    canonical_pairing,
    genus_closed_form,
    magic_formula_holds,
    pairing,
)
from .models import SweepBounds, enumerate_catalog, random_tree, standard_chain
from .serialize import certificate_json, input_document, witness_json

_COMPONENT_KEYS = {"id", "self_intersection", "genus", "multiplicity"}


def _int_field(obj: dict, key: str, where: str, default: Optional[int] = None) -> int:
    if key not in obj:
        if default is None:
            raise SchemaError(f"{where}.{key}", "required field is missing")
        return default
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise SchemaError(f"{where}.{key}", f"expected an integer, got {val!r}")
    return val


def parse_input(text: str) -> tuple[CurveConfiguration, Divisor]:
    """Parse an input document into a validated configuration and divisor."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise SchemaError("$", "top level must be an object")
    comps = doc.get("components")
    if not isinstance(comps, list):
        raise SchemaError("components", "required list is missing")
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise SchemaError("edges", "must be a list")
    rows, mult = [], {}
    for n, comp in enumerate(comps):
        where = f"components[{n}]"
        if not isinstance(comp, dict):
            raise SchemaError(where, "must be an object")
        extra = set(comp) - _COMPONENT_KEYS
        if extra:
            raise SchemaError(where, f"unknown field(s) {sorted(extra)}")
        if "id" not in comp:
            raise SchemaError(f"{where}.id", "required field is missing")
        cid = comp["id"]
        if isinstance(cid, bool) or not isinstance(cid, (str, int)) or cid == "":
            raise SchemaError(f"{where}.id", "must be a non-empty string or an integer")
        r = _int_field(comp, "self_intersection", where)
        g = _int_field(comp, "genus", where, 0)
        k = _int_field(comp, "multiplicity", where, 1)
        if g < 0:
            raise SchemaError(f"{where}.genus", "must be non-negative")
        if k < 0:
            raise SchemaError(f"{where}.multiplicity", "must be non-negative")
        rows.append({"id": cid, "self_intersection": r, "genus": g})
        mult[cid] = k
    pairs = []
    for n, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError(f"edges[{n}]", "must be a pair [id, id]")
        pairs.append((e[0], e[1]))
    try:
        config = build_configuration(rows, pairs)
    except (DuplicateId, EmptyConfiguration) as exc:
        raise SchemaError("components", str(exc)) from exc
    except ConfigurationError as exc:
        raise SchemaError("edges", str(exc)) from exc
    return config, Divisor.from_mapping(config, mult)


def render_input(config: CurveConfiguration, d: Divisor) -> str:
    return json.dumps(input_document(config, d))


def build_report(
    config: CurveConfiguration,
    d: Divisor,
    *,
    cap: int = DEFAULT_CAP,
    with_certificate: bool = False,
) -> dict:
    slo = is_strongly_left_orthogonal(config, d, cap)
    report: dict = {"lo": slo.lo.is_lo, "slo": slo.is_slo, "p_a": arithmetic_genus(config, d)}
    w = witness_json(slo)
    if w is not None:
        report["witness"] = w
    if with_certificate:
        try:
            cert = slo_certificate(config, d) if slo.is_slo else lo_certificate(config, d)
        except NotTreeOfLines:
            cert = None
        report["certificate"] = certificate_json(cert)
    report["hodge_admissible"] = hodge_admissible(config)
    return report


def format_report(report: dict, output: str = "json") -> str:
    if output == "pretty":
        return json.dumps(report, indent=2)
    return json.dumps(report, separators=(",", ":"))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _cmd_check(args) -> dict:
    config, d = parse_input(_read(args.input))
    return build_report(config, d, cap=args.cap, with_certificate=args.certificate)


def _cmd_genus(args) -> dict:
    config, d = parse_input(_read(args.input))
    out = {
        "p_a": arithmetic_genus(config, d),
        "d_squared": pairing(config, d, d),
        "dk": canonical_pairing(config, d),
        "closed_form": genus_closed_form(config, d) if config.is_simple else None,
        "magic_formula": None if any(config.genera) else magic_formula_holds(config, d),
    }
    return out


def _cmd_certificate(args) -> dict:
    config, d = parse_input(_read(args.input))
    build = lo_certificate if args.mode == Mode.LO.value else slo_certificate
    try:
        cert = build(config, d)
    except NotTreeOfLines as exc:
        raise InputError(str(exc)) from exc
    return {
        "mode": args.mode,
        "certificate": certificate_json(cert),
        "verified": bool(cert is not None and verify_certificate(config, d, cert)),
    }


def _cmd_hodge(args) -> dict:
    config, d = parse_input(_read(args.input))
    sig = inertia(config.gram)
    return {
        "n_pos": sig.n_pos,
        "n_neg": sig.n_neg,
        "n_zero": sig.n_zero,
        "hodge_admissible": sig.n_pos <= 1,
        "structure_violations": list(positive_structure_check(config, d).violations),
    }


def _cmd_gen(args) -> dict:
    if args.kind == "chain":
        if not args.r:
            raise InputError("chain needs at least one self-intersection")
        config, d = standard_chain(args.r)
    else:
        config, d = random_tree(args.seed, args.n, (args.r_min, args.r_max), (args.k_min, args.k_max))
    return input_document(config, d)


def _run_enumerate(args, out) -> None:
    try:
        bounds = SweepBounds(
            args.max_components, args.multiplicity_max, args.r_min, args.r_max, args.include_multiedges
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    for record in enumerate_catalog(bounds, cap=args.cap):
        out.write(json.dumps(record.to_json(), separators=(",", ":")) + "\n")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap (default 10^7)")
    common.add_argument("--output", choices=("json", "pretty"), default="json")

    ap = argparse.ArgumentParser(prog="leftorth", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="LO/SLO verdict with witness")
    p.add_argument("input", help="input document, '-' for stdin")
    p.add_argument("--certificate", action="store_true", help="attach an elimination certificate")

    p = sub.add_parser("genus", parents=[common], help="arithmetic genus by both formulas")
    p.add_argument("input")

    p = sub.add_parser("certificate", parents=[common], help="elimination certificate")
    p.add_argument("input")
    p.add_argument("--mode", choices=("lo", "slo"), default="lo")

    p = sub.add_parser("hodge", parents=[common], help="inertia of the Gram matrix")
    p.add_argument("input")

    p = sub.add_parser("enumerate", parents=[common], help="exhaustive catalog as JSON lines")
    p.add_argument("--max-components", type=int, required=True)
    p.add_argument("--multiplicity-max", type=int, default=1)
    p.add_argument("--r-min", type=int, default=-2)
    p.add_argument("--r-max", type=int, default=1)
    p.add_argument("--include-multiedges", action="store_true")

    p = sub.add_parser("gen", parents=[common], help="emit an input document")
    p.add_argument("kind", choices=("chain", "random"))
    p.add_argument("r", nargs="*", type=int, help="self-intersections for 'chain'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--r-min", type=int, default=-3)
    p.add_argument("--r-max", type=int, default=1)
    p.add_argument("--k-min", type=int, default=1)
    p.add_argument("--k-max", type=int, default=2)
    return ap


_COMMANDS = {
    "check": _cmd_check,
    "genus": _cmd_genus,
    "certificate": _cmd_certificate,
    "hodge": _cmd_hodge,
    "gen": _cmd_gen,
}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = _parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            _run_enumerate(args, out)
            return 0
        result = _COMMANDS[args.command](args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=err)
        return 3
    except (LeftOrthError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    out.write(format_report(result, args.output) + "\n")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
