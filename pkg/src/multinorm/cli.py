"""Command line entry point: ``multinorm <command> ...``.

Exit codes: 0 success, 1 internal failure, 2 parse error, 3 validation
error, 4 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .cover import build_generalized_rep_group, cohomology_h2, schur_multiplier, verify_cover
from .engine import STRATEGIES, first_obstruction, obstructions
from .errors import (CarrierMismatch, InvalidConfiguration, MultinormError, NotContained,
                     OrderCapExceeded, ParseError, PartitionSearchCapExceeded, ValidationError)
from .groups import abelianization
from .library import small_groups
from .scenario import dump_yaml, load_scenario, parse_cover, report_data
from .theorems import (check_dw_hypothesis, compare_with_intersection, eva_closed_form,
                       eva_wa_criterion, strategy_hints)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_VALIDATION, EXIT_CAP = 0, 1, 2, 3, 4


def _scenario(args):
    sf = load_scenario(args.scenario)
    if getattr(args, "strategy", None):
        sf.options["strategy"] = args.strategy
    if getattr(args, "cap", None) is not None:
        sf.options["cap"] = args.cap
    override = None
    if getattr(args, "cover", None):
        with open(args.cover, encoding="utf-8") as fh:
            override = parse_cover(fh.read(), sf.degree)
    return sf, sf.build(override)


def cmd_first_obstruction(args) -> dict:
    sf, sc = _scenario(args)
    rep = first_obstruction(sc, witnesses=args.witnesses)
    return report_data("first-obstruction", rep, sc, sf.name)


def cmd_obstructions(args) -> dict:
    sf, sc = _scenario(args)
    rep = obstructions(sc, witnesses=args.witnesses)
    return report_data("obstructions", rep, sc, sf.name)


def cmd_schur(args) -> dict:
    target = args.target
    if os.path.exists(target):
        sf = load_scenario(target)
        if args.cap is not None:
            sf.options["cap"] = args.cap
        G = sf.build().G
        name = sf.name
    else:
        groups = small_groups()
        if target not in groups:
            raise ValidationError(f"{target!r} is neither a scenario file nor a known group "
                                  f"({', '.join(groups)})")
        G, name = groups[target], target
    cap = args.cap if args.cap is not None else 32
    M = schur_multiplier(G, cap)
    H2, _ = cohomology_h2(G, G.order, cap)
    ext = build_generalized_rep_group(G, cap)
    check = verify_cover(ext, G, cap)
    return {
        "command": "schur",
        "group": name,
        "order": G.order,
        "abelianization": list(abelianization(G).group.invariants),
        "h2_mod_order": list(H2.invariants),
        "multiplier": list(M.invariants),
        "cover": {"order": ext.group.order, "kernel_order": ext.kernel.order,
                  "verified": check.ok, "schur_cover": check.is_schur},
    }


def cmd_check(args) -> dict:
    sf, sc = _scenario(args)
    out: dict = {"command": f"check {args.which}"}
    if sf.name is not None:
        out["scenario"] = sf.name
    if args.which == "dw":
        w = check_dw_hypothesis(sc)
        out["witness"] = None if w is None else {
            "i0": sc.h_names[w.i0], "j0": sc.h_names[w.j0],
            "partitions": [{"I": [sc.h_names[k] for k in I], "J": [sc.h_names[k] for k in J]}
                           for I, J in w.partitions]}
    elif args.which == "pollio":
        r = compare_with_intersection(sc)
        out["torus"] = r.torus.groups()
        out["intersection"] = r.intersection.groups()
        out["witness"] = r.witness is not None
        out["flags"] = {k: {"applies": a, "holds": h} for k, (a, h) in r.flags.items()}
        out["consistent"] = r.ok
    elif args.which == "eva":
        res = eva_wa_criterion(sc)
        out.update(res)
        out["closed_form_h1"] = list(eva_closed_form(res["p"], sc.n, res["compositum_index"]).invariants)
    else:
        out["hints"] = strategy_hints(sc)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multinorm",
                                description="Obstructions to the multinorm principle from group data.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, strategy=True):
        sp.add_argument("--out", metavar="FILE", help="also write the report to FILE")
        sp.add_argument("--cap", type=int, metavar="N", help="largest |G| for cocycle computations")
        if strategy:
            sp.add_argument("--strategy", choices=STRATEGIES)
            sp.add_argument("--cover", metavar="FILE", help="user-supplied covering group")
            sp.add_argument("--witnesses", action="store_true", help="emit witness tuples")

    sp = sub.add_parser("first-obstruction", help="first obstruction to the multinorm principle")
    sp.add_argument("scenario")
    common(sp)
    sp.set_defaults(func=cmd_first_obstruction)

    sp = sub.add_parser("obstructions", help="Sha(T), H^1(Pic X), A(T) and the first obstruction")
    sp.add_argument("scenario")
    common(sp)
    sp.set_defaults(func=cmd_obstructions)

    sp = sub.add_parser("schur", help="Schur multiplier and a verified covering group")
    sp.add_argument("target", help="scenario file or a library group name such as D8")
    common(sp, strategy=False)
    sp.set_defaults(func=cmd_schur)

    sp = sub.add_parser("check", help="theorem checks")
    sp.add_argument("which", choices=("dw", "pollio", "eva", "hints"))
    sp.add_argument("scenario")
    common(sp)
    sp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # progress and timing go to stderr, the report alone to stdout
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger = logging.getLogger("multinorm")
    logger.addHandler(handler)
    logger.setLevel(logging.INFO)
    try:
        return _run(args)
    finally:
        logger.removeHandler(handler)


def _run(args) -> int:
    try:
        data = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, InvalidConfiguration, CarrierMismatch, NotContained) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OrderCapExceeded, PartitionSearchCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except MultinormError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = dump_yaml(data)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
