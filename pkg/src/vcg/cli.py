"""Command line: ``vcg <command> ...`` (also ``python -m vcg``).

Exit codes: 0 pass, 1 failure, 2 usage, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import scenarios
from .catalog import make_group
from .colimits import (
    ChainSystem,
    Obstruction,
    chain_cover_check,
    colimit,
    colimit_cover_check,
    cross_check_colimits,
    induced_cover_system,
    multiplier_colimit_check,
    system_from_dict,
    validate_directed_system,
)
from .covers import alternative_complements, cover_from_cocycle, cover_from_splitting
from .fpgroups import fp_normalize
from .groups import (
    CapExceeded,
    GroupError,
    abelianization_invariants,
    center,
    derived_subgroup,
    direct_product,
    is_nilpotent,
    nilpotency_class,
)
from .homology import METHODS, relation_module_splitting, schur_multiplier
from .products import nilpotent2_product, quotient_check
from .scenarios import FAIL, PASS, Report

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _group(spec: str):
    try:
        return make_group(spec)
    except (GroupError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot build group {spec!r}: {exc}") from None


# -- commands --------------------------------------------------------------------------------


def cmd_group_info(args) -> list[Report]:
    g = _group(args.group)
    orders: dict[str, int] = {}
    for o in g.element_orders.tolist():
        orders[str(o)] = orders.get(str(o), 0) + 1
    ev = {
        "order": g.order,
        "abelian": bool(g.is_abelian),
        "exponent": g.exponent,
        "center_order": center(g).order,
        "derived_order": derived_subgroup(g).order,
        "abelianization": list(abelianization_invariants(g).invariant_factors),
        "nilpotent": is_nilpotent(g),
        "nilpotency_class": nilpotency_class(g),
        "element_orders": dict(sorted(orders.items(), key=lambda kv: int(kv[0]))),
    }
    return [Report("group info", {"group": args.group}, PASS, ev)]


def cmd_multiplier(args) -> list[Report]:
    g = _group(args.group)
    methods = ["bar", "cocycle"] if args.method == "both" else list(METHODS) if args.method == "all" else [args.method]
    results = {m: list(schur_multiplier(g, m).invariant_factors) for m in methods}
    agree = len({tuple(v) for v in results.values()}) == 1
    ev = {"invariant_factors": next(iter(results.values())), "methods": results, "agree": agree}
    return [Report("multiplier", {"group": args.group, "method": args.method}, PASS if agree else FAIL, ev)]


def cmd_cover(args) -> list[Report]:
    g = _group(args.group)
    if args.method == "cocycle":
        cover, cert = cover_from_cocycle(g)
    else:
        data = relation_module_splitting(g)
        comps = alternative_complements(data)
        if not 0 <= args.complement < len(comps):
            raise UsageError(f"complement index must be in 0..{len(comps) - 1}")
        cover, cert = cover_from_splitting(g, comps[args.complement], data)
    cert.revalidate()
    ev = dict(cert.summary())
    ev.update(cert.evidence)
    ev["A_elements"] = [cover.elements[a] for a in cert.A.indices]
    inputs = {"group": args.group, "method": args.method}
    if args.method == "splitting":
        inputs["complement"] = args.complement
    return [Report("cover", inputs, PASS if cert.ok else FAIL, ev)]


def _parse_syllables(text: str, factors) -> list[tuple[int, int]]:
    out = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        f, _, label = part.partition(":")
        try:
            k = int(f)
            out.append((k, factors[k].element(label.strip())))
        except (ValueError, IndexError, GroupError) as exc:
            raise UsageError(f"bad syllable {part!r}: {exc}") from None
    return out


def cmd_product(args) -> list[Report]:
    groups = [_group(s) for s in args.groups]
    inputs = {"groups": args.groups, "kind": args.kind}
    if args.kind == "direct":
        p = direct_product(groups)
        return [Report("product", inputs, PASS, {"order": p.order, "abelian": bool(p.is_abelian)})]
    if args.kind == "nilpotent2":
        p = nilpotent2_product(groups)
        ev = {
            "order": p.group.order,
            "predicted_order": p.predicted_order,
            "cartesian_order": p.cartesian.order,
            "quotient_is_direct_product": quotient_check(p),
        }
        ok = p.group.order == p.predicted_order and ev["quotient_is_direct_product"]
        return [Report("product", inputs, PASS if ok else FAIL, ev)]
    if not args.word:
        raise UsageError("--free-normal-form needs --word 'i:label,j:label,...'")
    syl = _parse_syllables(args.word, groups)
    nf = fp_normalize(groups, syl)
    ev = {"normal_form": [f"{f}:{groups[f].elements[x]}" for f, x in nf], "syllables": len(nf)}
    inputs["word"] = args.word
    return [Report("product", inputs, PASS, ev)]


def cmd_limit(args) -> list[Report]:
    try:
        data = json.loads(Path(args.file).read_text())
        d, choices = system_from_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, GroupError) as exc:
        raise UsageError(f"cannot read system file: {exc}") from None
    inputs = {"file": Path(args.file).name, "op": args.op}
    val = validate_directed_system(d)
    ev = {"valid": val.ok, "scope": val.scope}
    if not val.ok:
        ev["violation"] = val.violation
        return [Report("limit", inputs, FAIL, ev)]
    if isinstance(d, ChainSystem):
        if args.op == "cover":
            rep = chain_cover_check(d, choices)
            ev.update({"verdict_detail": rep.detail})
            if rep.certificate is not None and rep.ok:
                ev.update(rep.certificate.summary())
            return [Report("limit", inputs, rep.verdict, ev)]
        pre = d.prefix()
        if args.op == "colimit":
            ev.update({"stage_orders": [d.group(k).order for k in d.indices()], "cross_check": cross_check_colimits(pre).ok})
        else:
            r = multiplier_colimit_check(pre)
            ev.update({"colimit_of_multipliers": list(r.colimit_of_multipliers.invariant_factors), "comparison_bijective": r.comparison_bijective})
            if not r.ok:
                return [Report("limit", inputs, FAIL, ev)]
        verdict = PASS if d.stable_from is not None else scenarios.HORIZON
        return [Report("limit", inputs, verdict, ev)]
    if args.op == "colimit":
        top = colimit(d)
        cc = cross_check_colimits(d)
        ev.update({"maximum": str(top.top), "order": top.group.order, "cross_check": cc.ok})
        return [Report("limit", inputs, PASS if cc.ok else FAIL, ev)]
    if args.op == "multiplier":
        r = multiplier_colimit_check(d)
        ev.update(
            {
                "colimit_of_multipliers": list(r.colimit_of_multipliers.invariant_factors),
                "multiplier_of_colimit": list(r.multiplier_of_colimit.invariant_factors),
                "comparison_bijective": r.comparison_bijective,
            }
        )
        return [Report("limit", inputs, PASS if r.ok else FAIL, ev)]
    s = induced_cover_system(d, choices or "search")
    if isinstance(s, Obstruction):
        ev.update({"pair": [str(x) for x in s.pair], "detail": s.detail, "relator": s.word})
        return [Report("limit", inputs, scenarios.OBSTRUCTION, ev)]
    rep = colimit_cover_check(s)
    if rep.certificate is not None and rep.ok:
        ev.update(rep.certificate.summary())
    else:
        ev["detail"] = rep.detail
    return [Report("limit", inputs, rep.verdict, ev)]


def cmd_verify(args) -> list[Report]:
    name = args.scenario
    if name == "paper":
        return scenarios.run_all()
    kwargs = {}
    if args.factors:
        parts = tuple(s.strip() for s in args.factors.split(","))
        if len(parts) != 2:
            raise UsageError("--factors takes two comma-separated groups")
        if name not in ("wiegold", "free-product-counterexample"):
            raise UsageError(f"--factors does not apply to {name}")
        for p in parts:
            _group(p)
        kwargs["factors"] = parts
    if args.group:
        if name != "sylow":
            raise UsageError(f"--group does not apply to {name}")
        _group(args.group)
        kwargs["group"] = args.group
    return [scenarios.run(name, **kwargs)]


# -- output -------------------------------------------------------------------------------------


def _text(value, indent: int = 2) -> list[str]:
    pad = " " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def render(reports: list[Report], fmt: str, timing: bool) -> str:
    if fmt == "json":
        payload = {
            "reports": [r.as_dict(timing) for r in reports],
            "passed": all(r.passed for r in reports),
        }
        return json.dumps(payload, indent=2, sort_keys=True)
    out = []
    for r in reports:
        out.append(f"== {r.scenario}: {r.verdict.upper()}" + ("" if r.passed else " (FAILED)"))
        if r.inputs:
            out.append("  inputs:")
            out.extend(_text(r.inputs, 4))
        out.extend(_text(r.evidence))
        if timing:
            out.append(f"  time: {r.timing:.2f}s")
    if len(reports) > 1:
        n = sum(r.passed for r in reports)
        out.append(f"== {n}/{len(reports)} passed")
    return "\n".join(out)


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS, help="report format (default text)")
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS, help="omit timings for byte-identical output")

    p = argparse.ArgumentParser(prog="vcg", description="Schur multipliers and covering groups of finite groups.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    grp = sub.add_parser("group", help="group construction", parents=[common])
    gsub = grp.add_subparsers(dest="group_command", required=True)
    info = gsub.add_parser("info", help="basic invariants of a group", parents=[common])
    info.add_argument("group", help="catalog name (C4, D8, C2^2xC3, S4, ...), Cayley JSON file or permutation generators")
    info.set_defaults(func=cmd_group_info)

    m = sub.add_parser("multiplier", help="Schur multiplier", parents=[common])
    m.add_argument("group")
    m.add_argument("--method", choices=("both", "all") + tuple(METHODS), default="both")
    m.set_defaults(func=cmd_multiplier)

    c = sub.add_parser("cover", help="a covering group with its certificate", parents=[common])
    c.add_argument("group")
    c.add_argument("--method", choices=("cocycle", "splitting"), default="cocycle")
    c.add_argument("--complement", type=int, default=0, help="splitting only: index of an alternative complement")
    c.set_defaults(func=cmd_cover)

    pr = sub.add_parser("product", help="products of groups", parents=[common])
    pr.add_argument("groups", nargs="+")
    kind = pr.add_mutually_exclusive_group(required=True)
    kind.add_argument("--direct", dest="kind", action="store_const", const="direct")
    kind.add_argument("--nilpotent2", dest="kind", action="store_const", const="nilpotent2")
    kind.add_argument("--free-normal-form", dest="kind", action="store_const", const="free")
    pr.add_argument("--word", help="free product word as 'factor:label,...' (factors numbered from 0)")
    pr.set_defaults(func=cmd_product)

    lim = sub.add_parser("limit", help="evaluate a directed-system file", parents=[common])
    lim.add_argument("file")
    lim.add_argument("--op", choices=("colimit", "multiplier", "cover"), default="colimit")
    lim.set_defaults(func=cmd_limit)

    v = sub.add_parser("verify", help="run a named scenario", parents=[common])
    v.add_argument("scenario", choices=tuple(scenarios.SCENARIOS) + ("paper",))
    v.add_argument("--factors", help="two comma-separated groups (wiegold, free-product-counterexample)")
    v.add_argument("--group", help="group for the sylow scenario")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    fmt = getattr(args, "format", "text")
    timing = not getattr(args, "no_timing", False)
    t = time.perf_counter()
    try:
        reports = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except GroupError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if len(reports) == 1 and not reports[0].timing:
        reports[0].timing = time.perf_counter() - t
    print(render(reports, fmt, timing))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
