"""Command-line interface: ``holo <command> <spec> [options]``.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 budget
exceeded, 4 out-of-scope input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .autos import STRATEGIES, automorphism_group, is_characteristic, isomorphism_search
from .errors import HoloError, NotPerfectError, OutOfScope, SpecParseError
from .group_model import Subgroup
from .holomorph import classify_regular, conjugator_from_iso, holomorph, t_group
from .oracle_search import SearchBudget, enumerate_gammas
from .perfect_decomp import (construction_decomposition, decompose, enumerate_J_perfect, krs_inn,
                             opposite_replacement, pairing_check)
from .verify import CASE_NAMES, run_suite


def _group(args):
    from .catalog import parse_group_spec
    return parse_group_spec(args.spec)


def cmd_analyze(args) -> tuple[dict, int]:
    g = _group(args)
    aut = automorphism_group(g, args.aut_strategy)
    out = {
        "spec": args.spec,
        "order": g.n,
        "is_perfect": g.is_perfect(),
        "center_order": g.center().order,
        "aut_order": aut.order,
        "hol_order": aut.order * g.n,
    }
    if out["is_perfect"]:
        out["inn_krs_n"] = krs_inn(g, aut).n
    return out, 0


def _perfect_only(g) -> None:
    if not g.is_perfect():
        raise NotPerfectError("%s is not perfect; the abelian and general cases are out of scope "
                              "(use enumerate-regular --oracle for tiny groups)" % g.provenance)


def cmd_enumerate_normal_regular(args) -> tuple[dict, int]:
    g = _group(args)
    _perfect_only(g)
    e = enumerate_J_perfect(g, automorphism_group(g, args.aut_strategy), strategy=args.aut_strategy)
    out = e.to_json()
    out["spec"] = args.spec
    if args.summary:
        out.pop("records")
    bad = not all(r.chain_holds() for r in e.records)
    return out, 1 if bad else 0


def _oracle_records(g, args):
    budget = SearchBudget(args.oracle_max_order, args.max_nodes)
    h = holomorph(g, args.aut_strategy)
    gammas = enumerate_gammas(g, budget)
    return h, [classify_regular(h, gm) for gm in gammas]


def cmd_enumerate_regular(args) -> tuple[dict, int]:
    if not args.oracle:
        raise OutOfScope("enumerate-regular only runs through the brute-force oracle; pass --oracle")
    g = _group(args)
    _, recs = _oracle_records(g, args)
    out = {
        "spec": args.spec,
        "oracle": True,
        "budget_used": {"max_group_order": args.oracle_max_order, "max_nodes": args.max_nodes},
        "count": len(recs),
        "J_count": sum(r.in_J for r in recs),
        "I_count": sum(r.in_I for r in recs),
        "H_count": sum(r.in_H for r in recs),
    }
    if not args.summary:
        out["records"] = [r.to_json() for r in recs]
    return out, 0 if all(r.chain_holds() for r in recs) else 1


def cmd_t_group(args) -> tuple[dict, int]:
    g = _group(args)
    if g.is_perfect():
        e = enumerate_J_perfect(g, automorphism_group(g, args.aut_strategy), strategy=args.aut_strategy)
        if not e.all_in_H:
            raise OutOfScope("not every normal regular subgroup is isomorphic to G with the same holomorph")
        t, source, count = e.t, "perfect", e.count
    else:
        h, recs = _oracle_records(g, args)
        hs = [r for r in recs if r.in_H]
        for r in hs:
            r.conjugator = conjugator_from_iso(h, r)
        t, source, count = t_group(g, hs, h), "oracle", len(hs)
    out = {"spec": args.spec, "source": source, "H_count": count}
    out.update({"t_group": t.type, "t_order": t.order, "abelian": t.is_abelian,
                "regular_action": t.regular, "table": t.table.tolist()})
    return out, 0


def _indices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(x) for x in text.split(",")})
    except ValueError as exc:
        raise SpecParseError("subset must be comma-separated factor indices") from exc


def cmd_pairing(args) -> tuple[dict, int]:
    g = _group(args)
    _perfect_only(g)
    _, cd = decompose(g, automorphism_group(g, args.aut_strategy))
    subset = _indices(args.subset)
    if any(i >= cd.n for i in subset):
        raise SpecParseError("subset index out of range: the decomposition has %d factors" % cd.n)
    report = pairing_check(g, cd, subset)
    report["spec"] = args.spec
    return report, 0 if report["ok"] else 1


def cmd_opposite_replace(args) -> tuple[dict, int]:
    g = _group(args)
    if args.construction:
        cd = construction_decomposition(g)
    else:
        _perfect_only(g)
        _, cd = decompose(g, automorphism_group(g, args.aut_strategy))
    if not 0 <= args.factor < cd.n:
        raise SpecParseError("factor index out of range: %d factors" % cd.n)
    replaced = opposite_replacement(cd, args.factor)
    iso = isomorphism_search(g, replaced, args.aut_strategy)
    factor: Subgroup = cd.factors[args.factor]
    out = {
        "spec": args.spec,
        "decomposition": "construction" if args.construction else "invariant",
        "factor": args.factor,
        "factor_order": factor.order,
        "order": replaced.n,
        "table_hash": replaced.table_hash(),
        "unchanged": bool((replaced.mul == g.mul).all()),
        "isomorphic_to_base": iso is not None,
        "factor_characteristic": is_characteristic(g, factor, automorphism_group(g, args.aut_strategy)),
    }
    if iso is not None and args.witness:
        out["iso_witness"] = iso.images.tolist()
    return out, 0


def cmd_verify_paper(args) -> tuple[dict, int]:
    names = [args.case] if args.case else None
    results = run_suite(names)
    out = {"cases": [r.to_json() for r in results], "all_ok": all(r.ok for r in results)}
    if args.format == "text":
        for r in results:
            print(r.line())
    return out, 0 if out["all_ok"] else 1


COMMANDS = {
    "analyze": cmd_analyze,
    "enumerate-normal-regular": cmd_enumerate_normal_regular,
    "enumerate-regular": cmd_enumerate_regular,
    "t-group": cmd_t_group,
    "pairing": cmd_pairing,
    "opposite-replace": cmd_opposite_replace,
    "verify-paper": cmd_verify_paper,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-order", type=int, default=None,
                        help="largest group order to construct (default 10^6 or $HOLO_MAX_ORDER)")
    common.add_argument("--max-nodes", type=int, default=10**6, help="node budget for backtracking searches")
    common.add_argument("--aut-strategy", choices=STRATEGIES, default="auto")
    common.add_argument("--oracle-max-order", type=int, default=24,
                        help="largest order for the brute-force oracle")

    parser = argparse.ArgumentParser(prog="holo", description="Holomorphs and regular subgroups of finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "enumerate-normal-regular", "t-group"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("spec")
        if name == "enumerate-normal-regular":
            p.add_argument("--summary", action="store_true", help="omit per-record data")
    p = sub.add_parser("enumerate-regular", parents=[common])
    p.add_argument("spec")
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--summary", action="store_true")
    p = sub.add_parser("pairing", parents=[common])
    p.add_argument("spec")
    p.add_argument("--subset", default="")
    p = sub.add_parser("opposite-replace", parents=[common])
    p.add_argument("spec")
    p.add_argument("--factor", type=int, required=True)
    p.add_argument("--construction", action="store_true",
                   help="use the factors the group was built from instead of the invariant decomposition")
    p.add_argument("--witness", action="store_true", help="include the isomorphism table")
    p = sub.add_parser("verify-paper", parents=[common])
    p.add_argument("--case", choices=CASE_NAMES)
    return parser


def _render_text(data, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, float, str, bool)) for x in v):
                lines.append("%s%s:" % (prefix, k))
                lines.extend(_render_text(v, prefix + "  "))
            else:
                lines.append("%s%s: %s" % (prefix, k, json.dumps(v, sort_keys=True)))
    elif isinstance(data, list):
        for i, v in enumerate(data):
            lines.append("%s- [%d]" % (prefix, i))
            lines.extend(_render_text(v, prefix + "    "))
    else:
        lines.append(prefix + json.dumps(data))
    return lines


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("HOLO_MAX_ORDER")
    if args.max_order is not None:
        os.environ["HOLO_MAX_ORDER"] = str(args.max_order)
    try:
        data, code = COMMANDS[args.command](args)
    except HoloError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code
    finally:
        if saved is None:
            os.environ.pop("HOLO_MAX_ORDER", None)
        else:
            os.environ["HOLO_MAX_ORDER"] = saved
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, separators=(",", ":")))
    elif args.command != "verify-paper":
        print("\n".join(_render_text(data)))
    return code


if __name__ == "__main__":
    sys.exit(main())
