"""Command-line interface: every operation behind JSON in/out.

All numeric output carries the exact rational string (authoritative)
plus a decimal rendering for humans.  Every subcommand is internally a
RunManifest dispatch, so identical manifests produce identical output
bytes; `rootline manifest FILE` replays a saved manifest directly.

Exit codes: 0 success, 1 certificate or verification failure,
2 usage / malformed input.  ROOTLINE_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from rootline.graphs import (
    Graph,
    best_signing_search,
    girth,
    high_girth_catalog,
    sign_invariance_report,
)
from rootline.interlacing import (
    KSInstance,
    SRInstance,
    ks_brute_force_poly,
    ks_oracle,
    round_family,
    sr_brute_force_poly,
    sr_oracle,
)
from rootline.lowerbounds import (
    LowerBoundPair,
    boosted_pair,
    girth_pair,
    noisy_pair,
    verify_pair,
    weak_pair,
)
from rootline.maxroot import approx_max_root
from rootline.poly import ExactPolynomial
from rootline.ratutil import decimal_render, format_rational, parse_rational
from rootline.selftest import DEFAULT_SEED, run_criteria
from rootline.symfuncs import SymmetricProfile, profile_from_polynomial


class CliError(Exception):
    """Usage-level problem: malformed input, unknown names (exit 2)."""


class CertificateFailure(Exception):
    """A verification or certification failed (exit 1)."""


@dataclass
class RunManifest:
    subcommand: str
    parameters: Dict
    seed: Optional[int] = None
    output: Optional[str] = None

    @classmethod
    def from_json_dict(cls, d: dict) -> "RunManifest":
        return cls(
            subcommand=d["subcommand"],
            parameters=dict(d.get("parameters", {})),
            seed=d.get("seed"),
            output=d.get("output"),
        )


def _rat_fields(name: str, value: Fraction) -> Dict[str, str]:
    return {name: format_rational(value), f"{name}_dec": decimal_render(value)}


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read JSON from {path}: {exc}") from exc


def _load_graph(name_or_path: str) -> Graph:
    if name_or_path.endswith(".json"):
        return Graph.from_json_dict(_load_json(name_or_path))
    try:
        return high_girth_catalog(name_or_path)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommand handlers (manifest parameters -> result dict)
# ---------------------------------------------------------------------------


def _cmd_approx_root(params: Dict, seed: Optional[int]) -> dict:
    k = params.get("k")
    if params.get("profile"):
        prof = SymmetricProfile.from_json_dict(_load_json(params["profile"]))
        if params.get("n") and int(params["n"]) != prof.n:
            raise CliError("--n disagrees with the profile file")
        if k is not None:
            prof = prof.truncate(int(k))
    elif params.get("coeffs"):
        poly = ExactPolynomial.from_json_dict(_load_json(params["coeffs"]))
        if poly.is_zero or not poly.is_monic():
            raise CliError("--coeffs requires a monic nonzero polynomial")
        n = int(params["n"]) if params.get("n") else poly.degree
        if n != poly.degree:
            raise CliError("--n disagrees with the polynomial degree")
        prof = profile_from_polynomial(poly, int(k) if k is not None else n)
    else:
        raise CliError("approx-root needs --profile or --coeffs")
    res = approx_max_root(prof)
    out = {"n": prof.n, "k": prof.k, "iterations": res.iterations, "branch": res.branch}
    out.update(_rat_fields("estimate", res.estimate))
    out.update(_rat_fields("factor", res.factor))
    return out


def _cmd_gen_pair(params: Dict, seed: Optional[int]) -> dict:
    kind = params.get("kind")
    if kind == "weak":
        pair = weak_pair(int(params["n"]))
    elif kind == "girth":
        pair = girth_pair(_load_graph(params["graph"]), int(params.get("power", 2)))
    elif kind == "noisy":
        pair = noisy_pair(int(params["k"]), int(params["n"]))
    elif kind == "boosted":
        base = LowerBoundPair.from_json_dict(_load_json(params["base"]))
        pair = boosted_pair(base, int(params.get("t", 2)))
    else:
        raise CliError(f"unknown pair kind {kind!r} "
                       "(expected weak|girth|boosted|noisy)")
    return pair.to_json_dict()


def _cmd_verify_pair(params: Dict, seed: Optional[int]) -> dict:
    pair = LowerBoundPair.from_json_dict(_load_json(params["in"]))
    report = verify_pair(pair)
    out = report.to_json_dict()
    if not report.ok:
        raise CertificateFailure(json.dumps(out, sort_keys=True))
    return out


def _cmd_girth(params: Dict, seed: Optional[int]) -> dict:
    g = _load_graph(params["graph"])
    value = girth(g)
    return {"n": g.n, "edges": g.num_edges,
            "girth": "infinity" if value == float("inf") else int(value)}


def _cmd_sign_search(params: Dict, seed: Optional[int]) -> dict:
    g = _load_graph(params["graph"])
    best = best_signing_search(g, cap=int(params.get("cap", 24)))
    out = {
        "signing": list(best.signing.signs),
        "classes_searched": best.classes_searched,
        "char_poly": best.char.to_json_dict(),
    }
    out.update(_rat_fields("lambda_max_lo", best.lambda_max.lo))
    out.update(_rat_fields("lambda_max_hi", best.lambda_max.hi))
    return out


def _cmd_verify_invariance(params: Dict, seed: Optional[int]) -> dict:
    g = _load_graph(params["graph"])
    k = int(params["k"])
    diag = None
    if params.get("diag"):
        diag = [parse_rational(v) for v in _load_json(params["diag"])["diag"]]
    rep = sign_invariance_report(g, diag, k, cap=int(params.get("cap", 24)))
    return {
        "k": k,
        "agree": rep.agree,
        "first_disagreement": rep.first_disagreement,
        "witness": list(rep.witness) if rep.witness else None,
    }


def _cmd_round(params: Dict, seed: Optional[int]) -> dict:
    data = _load_json(params["family"])
    if "supports" in data:
        inst = KSInstance.from_json_dict(data)
        oracle = ks_oracle(inst)
        brute = ks_brute_force_poly
    elif "table" in data:
        inst = SRInstance.from_json_dict(data)
        oracle = sr_oracle(inst)
        brute = sr_brute_force_poly
    else:
        raise CliError("family file is neither a KS nor an SR instance")
    eps = parse_rational(str(params["epsilon"]))
    res = round_family(inst.spec(), oracle, eps)
    out = res.to_json_dict()
    if params.get("exhaustive_check"):
        want = brute(inst)
        got = oracle.coeffs((), inst.n)
        expanded = [Fraction(0)] * (inst.n + 1)
        for i, c in enumerate(reversed(want.coeffs)):
            expanded[i] = c
        out["exhaustive_root_match"] = tuple(expanded) == tuple(got)
        if not out["exhaustive_root_match"]:
            raise CertificateFailure(json.dumps(out, sort_keys=True))
    if not res.certified:
        raise CertificateFailure(json.dumps(out, sort_keys=True))
    return out


def _cmd_selftest(params: Dict, seed: Optional[int]) -> dict:
    numbers = params.get("criteria")
    if numbers is not None:
        numbers = [int(x) for x in numbers]
    results = run_criteria(numbers, seed if seed is not None else DEFAULT_SEED)
    for res in results:
        print(res.line(), file=sys.stderr)
    out = {"seed": seed if seed is not None else DEFAULT_SEED,
           "results": [r.to_json_dict() for r in results],
           "all_passed": all(r.passed for r in results)}
    if not out["all_passed"]:
        raise CertificateFailure(json.dumps(out, sort_keys=True))
    return out


_HANDLERS = {
    "approx-root": _cmd_approx_root,
    "gen-pair": _cmd_gen_pair,
    "verify-pair": _cmd_verify_pair,
    "girth": _cmd_girth,
    "sign-search": _cmd_sign_search,
    "verify-invariance": _cmd_verify_invariance,
    "round": _cmd_round,
    "selftest": _cmd_selftest,
}


def dispatch(manifest: RunManifest) -> Tuple[int, dict]:
    """Route a manifest to its handler; (exit status, JSON-able output)."""
    handler = _HANDLERS.get(manifest.subcommand)
    if handler is None:
        raise CliError(f"unknown subcommand {manifest.subcommand!r}")
    try:
        return 0, handler(manifest.parameters, manifest.seed)
    except CertificateFailure as exc:
        return 1, json.loads(str(exc)) if str(exc).startswith("{") else {"error": str(exc)}
    except (ValueError, KeyError) as exc:
        raise CliError(str(exc)) from exc


def _emit(manifest: RunManifest, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if manifest.output:
        with open(manifest.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootline",
        description="Certified max-root approximation from top coefficients, "
                    "lower-bound pair generators, and interlacing-family rounding.",
        epilog="ROOTLINE_THREADS caps internal parallelism.")
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("approx-root", help="estimate the largest root from a profile")
    p.add_argument("--profile", help="SymmetricProfile JSON file")
    p.add_argument("--coeffs", help="monic polynomial JSON file (alternative input)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)

    p = sub.add_parser("gen-pair", help="generate a coefficient-matched pair")
    p.add_argument("--kind", required=True, choices=["weak", "girth", "boosted", "noisy"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--graph")
    p.add_argument("--power", type=int, default=2)
    p.add_argument("--base", help="pair JSON file (boosted)")
    p.add_argument("--t", type=int, default=2)

    p = sub.add_parser("verify-pair", help="re-check a pair's certificate")
    p.add_argument("--in", dest="infile", required=True)

    p = sub.add_parser("girth", help="shortest cycle length")
    p.add_argument("--graph", required=True, help="catalog name or graph JSON file")

    p = sub.add_parser("sign-search", help="signing minimizing lambda_max")
    p.add_argument("--graph", required=True)
    p.add_argument("--cap", type=int, default=24)

    p = sub.add_parser("verify-invariance", help="trace powers across all signings")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--diag", help='JSON file {"diag": ["p/q", ...]}')
    p.add_argument("--cap", type=int, default=24)

    p = sub.add_parser("round", help="round an interlacing family")
    p.add_argument("--family", required=True, help="KS or SR instance JSON")
    p.add_argument("--epsilon", required=True)
    p.add_argument("--exhaustive-check", action="store_true")

    p = sub.add_parser("selftest", help="run acceptance criteria")
    p.add_argument("--criteria", help="comma-separated list, default all")
    p.add_argument("--seed", type=int)

    p = sub.add_parser("manifest", help="run a saved manifest")
    p.add_argument("file")

    for name in ("approx-root", "gen-pair", "verify-pair", "girth", "sign-search",
                 "verify-invariance", "round", "selftest"):
        sub.choices[name].add_argument("--out", help="write output JSON here")
    return parser


def _manifest_from_args(args: argparse.Namespace) -> RunManifest:
    sc = args.subcommand
    params: Dict = {}
    if sc == "approx-root":
        params = {"profile": args.profile, "coeffs": args.coeffs,
                  "n": args.n, "k": args.k}
    elif sc == "gen-pair":
        params = {"kind": args.kind, "n": args.n, "k": args.k, "graph": args.graph,
                  "power": args.power, "base": args.base, "t": args.t}
    elif sc == "verify-pair":
        params = {"in": args.infile}
    elif sc == "girth":
        params = {"graph": args.graph}
    elif sc == "sign-search":
        params = {"graph": args.graph, "cap": args.cap}
    elif sc == "verify-invariance":
        params = {"graph": args.graph, "k": args.k, "diag": args.diag, "cap": args.cap}
    elif sc == "round":
        params = {"family": args.family, "epsilon": args.epsilon,
                  "exhaustive_check": args.exhaustive_check}
    elif sc == "selftest":
        params = {"criteria": args.criteria.split(",") if args.criteria else None}
        return RunManifest(sc, params, seed=args.seed, output=args.out)
    params = {k: v for k, v in params.items() if v is not None}
    return RunManifest(sc, params, output=getattr(args, "out", None))


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.subcommand:
        parser.print_usage(sys.stderr)
        return 2
    try:
        if args.subcommand == "manifest":
            manifest = RunManifest.from_json_dict(_load_json(args.file))
        else:
            manifest = _manifest_from_args(args)
        status, payload = dispatch(manifest)
        _emit(manifest, payload)
        return status
    except CliError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
