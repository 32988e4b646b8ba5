"""Command-line interface.

Subcommands: build, validate, analyze, trivialize, verify-paper.
Exit codes: 0 ok, 1 validation failure, 2 bad parameters / unknown names,
3 theorem-hypothesis failure, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys

import numpy as np

from . import constructions as C
from .errors import (GroupoidError, NoSplitSection, NotCommutative,
                     NotTransitive, SearchBudgetExceeded)
from .groupoid import (alpha_fiber, beta_fiber, is_transitive, isotropy_bundle,
                       isotropy_group)
from .groups import FiniteGroup, GroupHom, make_cyclic, make_direct_product
from .group_groupoid import (GroupGroupoid, check_prop21, is_commutative_gg,
                             validate_def23, validate_def24)
from .serialization import (Workspace, dumps_canonical, gg_to_jsonable,
                            group_from_jsonable, groupoid_to_jsonable)
from .trivialization import trivialize

_HYPOTHESIS_ERRORS = (NotTransitive, NotCommutative, NoSplitSection)


def parse_group(literal: str) -> FiniteGroup:
    """Z<n> for cyclic, Z<p>xZ<q> for a product, or a JSON file path."""
    if literal.endswith(".json"):
        with open(literal, encoding="utf-8") as fh:
            return group_from_jsonable(json.load(fh))
    m = re.fullmatch(r"Z(\d+)(?:xZ(\d+))?", literal)
    if not m:
        raise argparse.ArgumentTypeError(
            f"cannot parse group literal {literal!r}; expected Z<n>, "
            f"Z<p>xZ<q>, or a .json file")
    g = make_cyclic(int(m.group(1)))
    if m.group(2):
        g = make_direct_product(g, make_cyclic(int(m.group(2))))
    return g


def _groupoid_of(obj):
    return obj.groupoid if isinstance(obj, GroupGroupoid) else obj


def _summarize(name, obj) -> str:
    g = _groupoid_of(obj)
    parts = [f"{name}: |G|={g.arrows} |G0|={g.base} |G_(2)|={g.mul_x.size}",
             f"transitive={is_transitive(g)[0]}"]
    if isinstance(obj, GroupGroupoid):
        parts.append(f"commutative={is_commutative_gg(obj)}")
    return " ".join(parts)


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(dumps_canonical(payload))
    else:
        print(text)


def cmd_build(args) -> int:
    kind = args.kind
    if kind == "null":
        obj = C.null_group_groupoid(parse_group(args.group))
    elif kind == "single-unit":
        obj = C.single_unit_group_groupoid(parse_group(args.group))
    elif kind == "pair":
        obj = C.pair_groupoid(args.n)
    elif kind == "group-pair":
        obj = C.group_pair_groupoid(parse_group(args.group))
    elif kind == "modular":
        obj = C.modular_group_groupoid(args.n, args.a)
    elif kind == "tgg":
        obj = C.trivial_group_groupoid(parse_group(args.A), parse_group(args.B))
    elif kind == "epi":
        pi = GroupHom(parse_group(args.source), parse_group(args.target),
                      [int(v) for v in args.map.split(",")])
        obj = C.epimorphism_groupoid(pi)
    elif kind == "product":
        ws = Workspace(args.workspace)
        left, right = ws.get(args.left), ws.get(args.right)
        if not (isinstance(left, GroupGroupoid)
                and isinstance(right, GroupGroupoid)):
            raise GroupoidError("product factors must be group-groupoids")
        obj = C.direct_product_gg(left, right)
    else:  # pragma: no cover - argparse restricts choices
        raise AssertionError(kind)

    if isinstance(obj, GroupGroupoid):
        rep = validate_def24(obj)
        if not rep.ok:
            print(rep.summary(), file=sys.stderr)
            return 1
    name = args.name or f"{kind}-{args.n if hasattr(args, 'n') else ''}".strip("-")
    ws = Workspace(args.workspace)
    ws.put(name, obj)
    ws.save()
    g = _groupoid_of(obj)
    _emit(args, _summarize(name, obj),
          {"name": name, "arrows": g.arrows, "base": g.base,
           "composable": int(g.mul_x.size),
           "transitive": bool(is_transitive(g)[0])})
    return 0


def cmd_validate(args) -> int:
    ws = Workspace(args.workspace, revalidate=False)
    obj = ws.get(args.name)
    if not isinstance(obj, GroupGroupoid):
        from .groupoid import validate_groupoid
        from .groups import validate_group
        rep = (validate_group(obj) if isinstance(obj, FiniteGroup)
               else validate_groupoid(obj))
        _emit(args, rep.summary(), rep.to_jsonable())
        return 0 if rep.ok else 1
    reports = {}
    if args.definition in ("24", "both"):
        reports["def24"] = validate_def24(obj)
    if args.definition in ("23", "both"):
        reports["def23"] = validate_def23(obj)
    lines = [f"{k}: {r.summary()}" for k, r in reports.items()]
    if len(reports) == 2:
        agree = reports["def24"].ok == reports["def23"].ok
        lines.append(f"equivalent: {'yes' if agree else 'NO'}")
    _emit(args, "\n".join(lines),
          {k: r.to_jsonable() for k, r in reports.items()})
    return 0 if all(r.ok for r in reports.values()) else 1


def cmd_analyze(args) -> int:
    ws = Workspace(args.workspace, revalidate=False)
    g = _groupoid_of(ws.get(args.name))
    if args.query == "fibers":
        if args.at is None:
            raise GroupoidError("fibers needs --at BASE_ID")
        payload = {"alpha_fiber": alpha_fiber(g, args.at),
                   "beta_fiber": beta_fiber(g, args.at)}
        text = (f"alpha-fiber({args.at}) = {payload['alpha_fiber']}\n"
                f"beta-fiber({args.at}) = {payload['beta_fiber']}")
    elif args.query == "isotropy":
        if args.at is None:
            raise GroupoidError("isotropy needs --at BASE_ID")
        iso = isotropy_group(g, args.at)
        payload = {"at": args.at, "order": iso.group.order,
                   "arrows": iso.member_arrows.tolist(),
                   "table": iso.group.table.tolist()}
        text = (f"isotropy group at {args.at}: order {iso.group.order}, "
                f"arrows {iso.member_arrows.tolist()}\n"
                f"table: {iso.group.table.tolist()}")
    elif args.query == "anchor":
        ok, missing = is_transitive(g)
        payload = {"surjective": ok, "missing": missing[:32]}
        text = f"anchor surjective: {str(ok).lower()}"
        if not ok:
            text += f"; missing pairs (first 32): {missing[:32]}"
    elif args.query == "bundle":
        bundle = isotropy_bundle(g)
        payload = groupoid_to_jsonable(bundle)
        text = (f"isotropy bundle: {bundle.arrows} arrows over "
                f"{bundle.base} base points")
    else:  # pragma: no cover
        raise AssertionError(args.query)
    _emit(args, text, payload)
    return 0


def cmd_trivialize(args) -> int:
    ws = Workspace(args.workspace, revalidate=False)
    obj = ws.get(args.name)
    if not isinstance(obj, GroupGroupoid):
        raise GroupoidError(f"{args.name!r} is not a group-groupoid")
    t = trivialize(obj, budget=args.budget)
    cert = {
        "source": args.name,
        "hypotheses": {"commutative": True, "transitive": True,
                       "split_section_found": True},
        "e0": t.e0,
        "gamma": t.gamma.tolist(),
        "isotropy_order": t.isotropy.group.order,
        "phi": t.phi.f.tolist(),
        "phi_base": t.phi.f0.tolist(),
        "target": gg_to_jsonable(t.target),
        "verified": {"gg_morphism": True, "bijective": True,
                     "order_identity":
                         f"{t.source.groupoid.arrows} = "
                         f"{t.source.groupoid.base}^2 * "
                         f"{t.isotropy.group.order}"},
    }
    out = args.out or f"{args.name}.trivialization.json"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(cert))
        fh.write("\n")
    _emit(args,
          f"trivialized {args.name}: target TGG(order-"
          f"{t.isotropy.group.order} isotropy, base {t.source.groupoid.base}); "
          f"certificate written to {out}",
          {"ok": True, "certificate": out})
    return 0


def _verify_families(max_n: int, max_order: int):
    """(label, GroupGroupoid, expected_transitive) triples for the sweep."""
    for n in range(1, max_n + 1):
        for a in range(n if n > 1 else 1):
            if (a * a) % n == 1 % n:
                yield f"modular({n},{a})", C.modular_group_groupoid(n, a), True
    for p in range(1, max_order + 1):
        for q in range(1, max_order + 1):
            yield (f"tgg(Z{p},Z{q})",
                   C.trivial_group_groupoid(make_cyclic(p), make_cyclic(q)),
                   True)
    for k in range(1, max_order + 1):
        yield f"group-pair(Z{k})", C.group_pair_groupoid(make_cyclic(k)), True
        yield (f"null(Z{k})", C.null_group_groupoid(make_cyclic(k)), k == 1)
    for n in range(1, max_order + 1):
        for d in range(1, n + 1):
            if n % d == 0:
                pi = GroupHom(make_cyclic(n), make_cyclic(d),
                              np.arange(n) % d)
                # anchor image of G_pi is G_pi itself, so it is transitive
                # exactly when every pair is identified, i.e. d == 1
                yield (f"epi(Z{n}->Z{d})", C.epimorphism_groupoid(pi), d == 1)


def cmd_verify_paper(args) -> int:
    failures = []
    rows = []
    structures = list(_verify_families(args.max_n, args.max_order))
    if args.inject_mutant:
        from .groupoid import FiniteGroupoid
        label, gg, expect_t = next((s for s in structures
                                    if s[1].groupoid.arrows >= 2), structures[0])
        g = gg.groupoid
        mz = g.mul_z.copy()
        mz[0] = (mz[0] + 1) % g.arrows
        bad = FiniteGroupoid(arrows=g.arrows, base=g.base, alpha=g.alpha,
                             beta=g.beta, eps=g.eps, inv=g.inv,
                             mul_x=g.mul_x, mul_y=g.mul_y, mul_z=mz)
        structures.insert(0, ("mutant:" + label,
                              GroupGroupoid(groupoid=bad,
                                            arrow_group=gg.arrow_group,
                                            base_group=gg.base_group),
                              expect_t))
    for label, gg, expect_transitive in structures:
        from .groupoid import validate_groupoid
        checks = {}
        checks["groupoid"] = validate_groupoid(gg.groupoid).ok
        r24 = validate_def24(gg)
        r23 = validate_def23(gg)
        checks["def24"] = r24.ok
        checks["def23"] = r23.ok
        checks["equivalence"] = r24.ok == r23.ok
        if r24.ok:
            checks["properties"] = check_prop21(gg).ok
        trans = is_transitive(gg.groupoid)[0]
        checks["transitivity"] = trans == expect_transitive
        if label.startswith("epi("):
            checks["transitive-iff-trivial-target"] = trans == expect_transitive
        if r24.ok and is_commutative_gg(gg) and trans:
            try:
                trivialize(gg)
                checks["trivialize"] = True
            except GroupoidError:
                checks["trivialize"] = False
        ok = all(checks.values())
        rows.append((label, checks))
        if not ok:
            failures.append(label)
            bad_checks = [k for k, v in checks.items() if not v]
            if not r24.ok:
                print(f"  {label} def24 witnesses: "
                      f"{dict(list(r24.witnesses.items())[:2])}",
                      file=sys.stderr)
            print(f"FAIL {label}: {bad_checks}", file=sys.stderr)

    if args.format == "json":
        print(dumps_canonical(
            {"failures": failures,
             "results": {lbl: chk for lbl, chk in rows}}))
    else:
        width = max(len(lbl) for lbl, _ in rows)
        for lbl, chk in rows:
            line = " ".join(f"{k}={'ok' if v else 'FAIL'}"
                            for k, v in chk.items())
            print(f"{lbl:<{width}}  {line}")
        epi_note = [lbl for lbl, _ in rows if lbl.startswith("epi(")]
        if epi_note:
            print("note: epi-groupoids come out transitive exactly when the "
                  "target group is trivial (anchor-image oracle); they are "
                  "not transitive in general")
        print(f"{len(rows)} structures checked, {len(failures)} failure(s)")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="groupoids",
        description="Finite groupoids and group-groupoids: build, validate, "
                    "analyze, trivialize.")
    ap.add_argument("--workspace", default=None,
                    help="workspace JSON file (default ./groupoids.json or "
                         "$GROUPOID_WS)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    pb = sub.add_parser("build", help="build a named construction")
    pb.add_argument("kind", choices=("null", "single-unit", "pair",
                                     "group-pair", "modular", "tgg", "epi",
                                     "product"))
    pb.add_argument("--name", default=None)
    pb.add_argument("--group", help="group literal for null/single-unit/group-pair")
    pb.add_argument("--n", type=int, help="set size / modulus")
    pb.add_argument("--a", type=int, help="type parameter for modular")
    pb.add_argument("--A", help="isotropy-part group literal for tgg")
    pb.add_argument("--B", help="base group literal for tgg")
    pb.add_argument("--source", help="epi source group literal")
    pb.add_argument("--target", help="epi target group literal")
    pb.add_argument("--map", help="epi map as comma-separated images")
    pb.add_argument("--left", help="workspace name of the left product factor")
    pb.add_argument("--right", help="workspace name of the right product factor")
    common(pb)
    pb.set_defaults(func=cmd_build)

    pv = sub.add_parser("validate", help="validate a stored structure")
    pv.add_argument("name")
    pv.add_argument("--definition", choices=("23", "24", "both"),
                    default="both")
    common(pv)
    pv.set_defaults(func=cmd_validate)

    pa = sub.add_parser("analyze", help="fibers / isotropy / anchor / bundle")
    pa.add_argument("name")
    pa.add_argument("query", choices=("fibers", "isotropy", "anchor", "bundle"))
    pa.add_argument("--at", type=int, default=None, help="base id")
    common(pa)
    pa.set_defaults(func=cmd_analyze)

    pt = sub.add_parser("trivialize", help="run the trivialization pipeline")
    pt.add_argument("name")
    pt.add_argument("--budget", type=int, default=10 ** 6)
    pt.add_argument("--out", default=None, help="certificate file path")
    common(pt)
    pt.set_defaults(func=cmd_trivialize)

    pp = sub.add_parser("verify-paper",
                        help="sweep all families through every validator")
    pp.add_argument("--max-n", type=int, default=8)
    pp.add_argument("--max-order", type=int, default=5)
    pp.add_argument("--inject-mutant", action="store_true",
                    help=argparse.SUPPRESS)
    common(pp)
    pp.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    except _HYPOTHESIS_ERRORS as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (GroupoidError, OSError, ValueError,
            argparse.ArgumentTypeError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
