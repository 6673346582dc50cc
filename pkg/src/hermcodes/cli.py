"""Command-line front end: construct codes, analyze them, verify theorem
instances, and emit machine-readable JSON reports.

Output determinism: all JSON is emitted with sorted keys and canonical list
orders, and big integers are rendered as decimal strings, so identical
inputs give byte-identical outputs.  Wall-clock timings are therefore only
included when --timings is passed.

Exit codes: 0 all checks pass, 1 any check fails, 2 usage or input error,
3 enumeration budget exceeded (verdict "inconclusive", never "fail").
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from typing import Any, Optional

from . import constructions, equivalence, scheme
from .constructions import ConstructionParams, ParameterError
from .gf import make_tower
from .hermitian import HermCode, code_from_dict, code_to_dict, dual_code
from .scheme import BudgetExceededError, DEFAULT_BUDGET

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class Report:
    check: str
    params: dict
    verdict: str                  # "pass" | "fail" | "inconclusive"
    witness: Optional[dict] = None
    wall_time_ms: float = 0.0

    def to_json(self, timings: bool) -> dict:
        out: dict[str, Any] = {
            "check": self.check,
            "params": _stringify(self.params),
            "verdict": self.verdict,
            "witness": _stringify(self.witness),
        }
        if timings:
            out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


def _stringify(obj):
    """Big integers as decimal strings, tuples as lists, keys as strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, (dict,)):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, frozenset):
        return sorted(obj)
    return obj


def _emit(obj: dict, out_path: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_code(path: str) -> HermCode:
    with open(path, "r", encoding="utf-8") as fh:
        return code_from_dict(json.load(fh))


# -- subcommands -----------------------------------------------------------------


def cmd_construct(args) -> int:
    params = ConstructionParams(family=args.family, q=args.q, n=args.n,
                                d=args.d, s=args.s, gamma_power=args.gamma)
    code = constructions.build(params)
    payload = code_to_dict(code)
    _emit(payload, args.out)
    sys.stderr.write(f"{code.label}: size {code.size}, declared d = {code.declared_d}\n")
    return EXIT_OK


def cmd_stats(args) -> int:
    code = _load_code(args.code)
    dist = scheme.analyze(code, budget=args.budget, threads=args.threads)
    d = code.declared_d if code.declared_d is not None else dist.min_distance
    strength = 0
    for k in range(1, code.n + 1):
        if dist.dual[k]:
            break
        strength = k
    payload = {
        "size": str(code.size),
        "min_distance": dist.min_distance,
        "inner": [str(v) for v in dist.inner],
        "dual_inner": [str(v) for v in dist.dual],
        "design_strength": strength,
        "bound_saturated": code.size == code.tower.q ** (code.n * (code.n - d + 1)),
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_dual(args) -> int:
    code = _load_code(args.code)
    _emit(code_to_dict(dual_code(code)), args.out)
    return EXIT_OK


def cmd_eigenvalues(args) -> int:
    p, e = constructions._prime_power(args.q)
    tower = make_tower(p, e, args.n)
    try:
        eig = scheme.eigenvalues(tower, budget=args.budget)
    except BudgetExceededError as ex:
        _emit({"error": str(ex), "verdict": "inconclusive"}, args.out)
        return EXIT_BUDGET
    payload = {
        "q": args.q,
        "n": args.n,
        "rank_counts": [str(v) for v in eig.rank_counts],
        "table": [[str(v) for v in row] for row in eig.table],
    }
    _emit(payload, args.out)
    return EXIT_OK


def cmd_fingerprint(args) -> int:
    code = _load_code(args.code)
    fp = equivalence.invariant_fingerprint(code, budget=args.budget)
    payload: dict[str, Any] = {"code": _fp_dict(fp)}
    if args.against:
        other = equivalence.invariant_fingerprint(_load_code(args.against), budget=args.budget)
        cmp = equivalence.compare_fingerprints(fp, other)
        payload["against"] = _fp_dict(other)
        payload["comparison"] = {
            "verdict": cmp.verdict,
            "differing_fields": list(cmp.differing_fields),
        }
    _emit(payload, args.out)
    return EXIT_OK


def _fp_dict(fp) -> dict:
    return {
        "label": fp.label,
        "size": str(fp.size),
        "inner": [str(v) for v in fp.inner],
        "dual_inner": [str(v) for v in fp.dual_inner],
        "design_strength": fp.design_strength,
        "kernel_order": str(fp.kernel_order),
        "left_idealiser_order": str(fp.left_idealiser_order),
        "right_idealiser_order": str(fp.right_idealiser_order),
        "support_size": fp.support_size,
    }


CHECKS = ("bound", "mindist", "theorem3", "dual", "designs", "kernel", "idealisers")


def _run_check(name: str, code: HermCode, budget: int) -> Report:
    t = code.tower
    q, n = t.q, code.n
    start = time.perf_counter()
    params = {"code": code.label, "q": q, "n": n, "d": code.declared_d}
    verdict = "pass"
    witness = None
    try:
        inner = scheme.inner_distribution(code)
        mindist = next((i for i, a in enumerate(inner) if i and a), 0)
        d = code.declared_d if code.declared_d is not None else mindist
        if name == "bound":
            expected = q ** (n * (n - d + 1))
            if code.size != expected:
                verdict = "fail"
                witness = {"size": code.size, "bound": expected}
        elif name == "mindist":
            if code.declared_d is not None and mindist != code.declared_d:
                verdict = "fail"
                offender = next(f for f in code.iter_span()
                                if not f.is_zero() and f.rank() == mindist)
                witness = {"declared_d": code.declared_d, "min_rank": mindist,
                           "codeword": [list(t.digits(c)) for c in offender.coeffs]}
        elif name == "theorem3":
            dual = scheme.dual_inner_distribution(code, "dual-code", budget=budget)
            is_design = all(dual[k] == 0 for k in range(1, n - d + 1))
            maximum = code.size == q ** (n * (n - d + 1))
            if maximum and is_design and d >= 1:
                predicted = scheme.theorem_distribution(n, d, q, code.size)
                if tuple(inner) != predicted:
                    verdict = "fail"
                    witness = {"enumerated": list(inner), "predicted": list(predicted)}
            else:
                verdict = "inconclusive"
                witness = {"reason": "code is not a maximum (n-d)-design instance"}
        elif name == "dual":
            d1 = scheme.dual_inner_distribution(code, "dual-code", budget=budget)
            d2 = scheme.dual_inner_distribution(code, "eigenvalues", budget=budget)
            if d1 != d2:
                verdict = "fail"
                witness = {"dual_code_method": list(d1), "eigenvalue_method": list(d2)}
        elif name == "designs":
            strength = scheme.design_strength(code, budget=budget)
            ext = scheme.design_by_extension_count(code, 1, budget=budget)
            if ext.uniform != (strength >= 1):
                verdict = "fail"
                witness = {"strength": strength, "extension_uniform": ext.uniform}
            else:
                witness = {"strength": strength, "extension_uniform": ext.uniform}
            if code.declared_d is not None and code.declared_d % 2 == 1 \
                    and code.size == q ** (n * (n - d + 1)) \
                    and strength < n - d + 1:
                verdict = "fail"
                witness = {"strength": strength, "required_at_least": n - d + 1}
        elif name == "kernel":
            sol = equivalence.kernel_K(code)
            ok = sol.meta["contains_q2_scalars"]
            dual = scheme.dual_inner_distribution(code, "dual-code", budget=budget)
            hypotheses = (code.size == q ** (n * (n - d + 1)) and d < n
                          and all(dual[k] == 0 for k in range(1, n - d + 1)))
            if hypotheses:
                ok = ok and sol.order == q ** 2 and sol.structure == "field"
            witness = {"order": sol.order, "structure": sol.structure,
                       "contains_q2_scalars": sol.meta["contains_q2_scalars"]}
            if not ok:
                verdict = "fail"
        elif name == "idealisers":
            left = equivalence.left_idealiser(code)
            right = equivalence.right_idealiser(code)
            dual = scheme.dual_inner_distribution(code, "dual-code", budget=budget)
            hypotheses = (code.size == q ** (n * (n - d + 1)) and d < n
                          and all(dual[k] == 0 for k in range(1, n - d + 1)))
            witness = {"left_order": left.order, "right_order": right.order,
                       "left_scalar_fq": left.meta["is_scalar_fq"],
                       "right_scalar_fq": right.meta["is_scalar_fq"]}
            if hypotheses and not (left.order == q and right.order == q
                                   and left.meta["is_scalar_fq"]
                                   and right.meta["is_scalar_fq"]):
                verdict = "fail"
        else:
            raise ValueError(f"unknown check {name!r}")
    except BudgetExceededError as ex:
        verdict = "inconclusive"
        witness = {"reason": str(ex)}
    return Report(check=name, params=params, verdict=verdict, witness=witness,
                  wall_time_ms=(time.perf_counter() - start) * 1000.0)


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    names = [c.strip() for c in args.checks.split(",") if c.strip()]
    for nm in names:
        if nm not in CHECKS:
            sys.stderr.write(f"unknown check {nm!r}; available: {','.join(CHECKS)}\n")
            return EXIT_USAGE
    reports = [_run_check(nm, code, args.budget) for nm in names]
    payload = {
        "code": code.label,
        "reports": [r.to_json(args.timings) for r in reports],
        "all_pass": all(r.verdict == "pass" for r in reports),
    }
    _emit(payload, args.out)
    if any(r.verdict == "fail" for r in reports):
        return EXIT_FAIL
    if any(r.verdict == "inconclusive" for r in reports):
        return EXIT_BUDGET
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hermcodes",
        description="Construct, analyze, and verify maximum Hermitian rank-metric codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="write JSON here instead of stdout")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="enumeration budget (elements scanned per analysis)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for rank tallies; output is identical for any value")
        p.add_argument("--timings", action="store_true",
                       help="include wall-clock timings (breaks byte-stability)")

    p = sub.add_parser("construct", help="build a code family instance")
    p.add_argument("--family", required=True, choices=["H", "E", "M", "Htilde"])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--gamma", type=int, default=None,
                   help="generator power for gamma (Htilde only)")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("stats", help="size, distributions, design strength")
    p.add_argument("--code", required=True)
    common(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("dual", help="compute the dual code file")
    p.add_argument("--code", required=True)
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="run named checks against a code file")
    p.add_argument("--code", required=True)
    p.add_argument("--checks", default=",".join(CHECKS),
                   help=f"comma list from: {','.join(CHECKS)}")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eigenvalues", help="exact character-sum eigenvalue table")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eigenvalues)

    p = sub.add_parser("fingerprint", help="equivalence-invariant fingerprint")
    p.add_argument("--code", required=True)
    p.add_argument("--against", default=None,
                   help="second code file to compare against")
    common(p)
    p.set_defaults(func=cmd_fingerprint)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ParameterError, ValueError, OSError, json.JSONDecodeError) as ex:
        sys.stderr.write(f"error: {ex}\n")
        return EXIT_USAGE
    except BudgetExceededError as ex:
        sys.stderr.write(f"budget exceeded: {ex}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
