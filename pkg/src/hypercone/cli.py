"""Command-line frontend.

Every command builds a JSON-serializable report; the text output is a
rendering of the same report.  Exit codes: 0 success, 2 invalid input,
3 unsupported range, 4 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .cone import cone_equations_general, cone_equations_kg12, points_cone_from_roots, check_parametrization
from .curve import HyperellipticCurve, LineBundleSpec, curve_from_config, curve_from_roots
from .errors import HyperconeError, InvalidInput

COMMANDS = ("equations", "t1", "t2", "versal", "basecount", "components", "topology", "report")


def parse_curve(spec: Optional[str], g: int) -> HyperellipticCurve:
    """``special``, ``roots=r1,r2,...`` or ``coeffs=a0,a1,...``."""
    if spec is None or spec == "special":
        return HyperellipticCurve.special(g)
    kind, _, body = spec.partition("=")
    try:
        values = [Fraction(v.strip()) for v in body.split(",") if v.strip()]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse curve values: {body!r}") from exc
    if kind == "roots":
        return curve_from_roots(g, values)
    if kind == "coeffs":
        return HyperellipticCurve(g, tuple(values))
    raise InvalidInput(f"unknown curve spec {spec!r}")


def _setup(args):
    """(g, curve, L) from flags or a config file."""
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
        curve, L = curve_from_config(cfg)
        return curve.g, curve, L
    if args.g is None:
        raise InvalidInput("--g is required")
    curve = parse_curve(args.curve, args.g)
    L = LineBundleSpec(args.k) if args.k is not None else None
    return args.g, curve, L


def _presentation(curve, L, g):
    if L is None:
        L = LineBundleSpec(2 * g + 2)
    if L.divisor is not None:
        return cone_equations_general(curve, L.divisor, L.k)
    return cone_equations_kg12(curve, L.k)


# ---------------------------------------------------------------------------
# commands

def cmd_equations(args) -> dict:
    g, curve, L = _setup(args)
    pres = _presentation(curve, L, g)
    out = pres.to_json()
    out["curve"] = curve.to_json()
    out["generator_count"] = len(pres.generators)
    out["parametrization_ok"] = check_parametrization(pres)
    return out


def _nus(args) -> List[int]:
    return [args.nu] if args.nu is not None else [-2, -1, 0]


def cmd_t1(args) -> dict:
    from .cone import syzygy_basis
    from .tangent import t1_formula, t1_oracle
    if args.points is not None:
        g = args.g
        if g is None:
            raise InvalidInput("--g is required")
        pres = points_cone_from_roots(g, range(1, args.points + 1))
        shape = "points"
    else:
        g, curve, L = _setup(args)
        pres = _presentation(curve, L, g)
        shape = "curve"
    table = t1_formula(g, pres.d, shape)
    syz = syzygy_basis(pres, 3)
    rows = []
    for nu in _nus(args):
        rows.append({"nu": nu, "oracle": t1_oracle(pres, nu, syz),
                     "formula": table.entries.get(nu)})
    return {"g": g, "d": pres.d, "shape": shape, "t1": rows}


def cmd_t2(args) -> dict:
    from .tangent import t1_formula, t2_formula, t2_via_main_lemma, t1_oracle
    from .cone import syzygy_basis
    if args.g is None:
        raise InvalidInput("--g is required")
    g = args.g
    d = args.points if args.points is not None else 2 * (args.k if args.k is not None else 2 * g + 2)
    table = t2_formula(g, d)
    if args.oracle:
        pres = points_cone_from_roots(g, range(1, d + 1))
        syz = syzygy_basis(pres, 3)
        t1Y = sum(t1_oracle(pres, nu, syz) for nu in (-2, -1, 0, 1))
        source = "oracle"
    else:
        t1Y = t1_formula(g, d, "points").total()
        source = "formula"
    return {
        "g": g, "d": d,
        "t2": table.to_json(),
        "t2_total": table.total(),
        "t1_section_total": t1Y, "t1_section_source": source,
        "main_lemma": t2_via_main_lemma(g, d, t1Y),
    }


def cmd_versal(args) -> dict:
    from .versal import (base_space_equations, ci_hilbert_series, first_order_family,
                         hilbert_function_check, verify_first_order)
    g, curve, L = _setup(args)
    k = L.k if L is not None else 2 * g + 2
    fam = first_order_family(curve, k)
    check = verify_first_order(fam)
    system = base_space_equations(fam)
    out = {"g": g, "k": k, "curve": curve.to_json(), "first_order_ok": check["passed"],
           **system.to_json()}
    if k == 2 * g + 2:
        out["hilbert"] = hilbert_function_check(system, 6)
        out["hilbert_expected"] = ci_hilbert_series(len(system.equations), 6)
    return out


def cmd_basecount(args) -> dict:
    from .versal import base_space_equations, find_split_prime, first_order_family
    g, curve, _ = _setup(args)
    system = base_space_equations(first_order_family(curve, 2 * g + 2))
    target = 2 ** (2 * g + 1)
    found = find_split_prime(system, target, args.prime_bound)
    return {
        "g": g, "curve": curve.to_json(), "target": target, "prime_bound": args.prime_bound,
        "prime": found["prime"] if found else None,
        "num_points": found["num_points"] if found else None,
        "smooth": found["smooth"] if found else None,
    }


def _branch_nodes(curve: HyperellipticCurve) -> List[Fraction]:
    if curve.branch_xs is not None:
        return list(curve.branch_xs)
    return [Fraction(i) for i in range(1, 2 * curve.g + 3)]


def cmd_components(args) -> dict:
    from .components import components_report, count_components
    g, curve, _ = _setup(args)
    nodes = _branch_nodes(curve)
    out = components_report(nodes)
    out["nodes"] = [str(x) for x in nodes]
    out["nodes_from_curve"] = curve.branch_xs is not None
    if g >= 2:
        out["theorem_count"] = count_components(g)["count"]
    return out


def cmd_topology(args) -> dict:
    from .topology import topology_report
    if args.g is None:
        raise InvalidInput("--g is required")
    return topology_report(args.g)


def cmd_report(args) -> dict:
    from .tangent import t2_formula
    g, curve, L = _setup(args)
    eq = cmd_equations(args)
    report = {
        "g": g,
        "curve": curve.to_json(),
        "equations": {"generator_count": eq["generator_count"], "d": eq["d"],
                      "parametrization_ok": eq["parametrization_ok"]},
    }
    args.nu = None
    report["t1"] = cmd_t1(args)["t1"]
    d = eq["d"]
    try:
        report["t2"] = t2_formula(g, d).to_json()
    except HyperconeError as exc:
        report["t2"] = {"error": exc.code, "message": str(exc)}
    report["versal"] = cmd_versal(args)
    report["basecount"] = cmd_basecount(args)
    report["components"] = {k: v for k, v in cmd_components(args).items() if k != "components"}
    try:
        report["topology"] = cmd_topology(args)
    except HyperconeError as exc:
        report["topology"] = {"error": exc.code, "message": str(exc)}
    return report


HANDLERS = {
    "equations": cmd_equations, "t1": cmd_t1, "t2": cmd_t2, "versal": cmd_versal,
    "basecount": cmd_basecount, "components": cmd_components,
    "topology": cmd_topology, "report": cmd_report,
}


# ---------------------------------------------------------------------------
# rendering

def render_text(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k in sorted(value):
            v = value[k]
            if k == "terms" and "text" in value:
                continue  # the text form already shows the polynomial
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value):
            return pad + ", ".join(str(v) for v in value)
        return "\n".join(render_text(v, indent) + ("" if i == len(value) - 1 else "\n" + pad + "-")
                         for i, v in enumerate(value))
    return f"{pad}{value}"


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercone", description="Deformations of cones over hyperelliptic curves.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--g", type=int)
    p.add_argument("--k", type=int, help="L = k g^1_2")
    p.add_argument("--curve", help="special | roots=r1,... | coeffs=a0,...")
    p.add_argument("--nu", type=int)
    p.add_argument("--points", type=int, help="use the cone over this many points (t1, t2)")
    p.add_argument("--oracle", action="store_true", help="t2: compute the section T1 by the oracle")
    p.add_argument("--prime-bound", type=int, default=500)
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.add_argument("--config")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = HANDLERS[args.command](args)
    except HyperconeError as exc:
        print(json.dumps({"error": exc.code, "message": str(exc)}), file=sys.stderr)
        return exc.exit_status
    except (OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "invalid_input", "message": str(exc)}), file=sys.stderr)
        return 2
    text = dumps(report) if args.json else render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
