"""Command-line front end: ``sphquad <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import angles as ang
from . import builders, chains, geometry, netcore
from .errors import LabelSyntaxError, SphquadError

log = logging.getLogger("sphquad")


def parse_angle_arg(text):
    """``0.3,0.8,0.5,2.45``, ``a0=0.3 a1=...`` or ``alpha=3/10 ... n3=2``."""
    if "=" in text:
        return ang.parse_angles(text)
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    if len(parts) != 4:
        raise LabelSyntaxError(f"expected four angles, got {len(parts)}")
    return ang.AngleVector.from_angles([ang.parse_number(p) for p in parts])


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if hasattr(x, "numerator") and not isinstance(x, (int, bool)):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def _emit(obj, out=None):
    text = json.dumps(_jsonable(obj), indent=2, ensure_ascii=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _read_net(path):
    return netcore.Net.from_json(Path(path).read_text(encoding="utf-8"))


def _witness_dict(witness):
    return [{"inequality": name, "slack": val, "holds": val > 0} for name, val in witness]


# --- commands ----------------------------------------------------------------


def cmd_validate(args):
    report = netcore.validate_net(_read_net(args.net), expected_corners=args.corners, integer_corners=args.integer_corners)
    _emit(report.to_dict())
    return 0 if report.status != "INVALID" else 2


def cmd_classify(args):
    net = _read_net(args.net)
    if args.witnesses:
        out = []
        for dec in builders.reduction_witnesses(net):
            out.append({"label": None if dec.core_label is None else str(dec.label), "mode": dec.mode})
        _emit(out)
        return 0
    label = builders.classify(net)
    print("uncatalogued" if label is None else str(label))
    return 0


def cmd_enumerate(args):
    for label, net in builders.enumerate_primitive(args.bound):
        if args.json:
            print(json.dumps({"label": str(label), "corners": list(net.corner_orders())}))
        else:
            print(label)
    return 0


def cmd_feasible(args):
    label = builders.parse_label(args.label)
    av = parse_angle_arg(args.angles)
    fixed = ang.fixed_angles_for_net(label, av)
    ok, witness = ang.net_feasible(label, av)
    _emit(
        {
            "label": str(label),
            "fixed_angles": list(fixed.abcd),
            "tags": list(fixed.tags),
            "feasible": ok,
            "witness": _witness_dict(witness),
        }
    )
    return 0 if ok else 2


def _chains_query(text, scope, explain):
    av = parse_angle_arg(text)
    found = chains.build_chains(av, scope)
    items = []
    for ch in found:
        item = ch.to_dict()
        if explain:
            item["gating"] = {str(n): _witness_dict(chains.explain(n, av)) for n in ch.nets}
        items.append(item)
    bounds = chains.count_bounds(av, scope, chains=found)
    return {"angles": text, "chains": items, "bounds": {k: list(v) for k, v in bounds.items()}}


def cmd_chains(args):
    scope = [s.strip() for s in args.scope.split(",")] if args.scope else None
    queries = args.angles
    if args.jobs > 1 and len(queries) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_chains_query, queries, [scope] * len(queries), [args.explain] * len(queries)))
    else:
        results = [_chains_query(q, scope, args.explain) for q in queries]
    _emit(results[0] if len(results) == 1 else results)
    return 0


def cmd_realize(args):
    av = parse_angle_arg(args.angles)
    if any(av.integer):
        raise LabelSyntaxError("realize takes face angles in (0, 1)")
    a, b, c, d = av.frac
    if args.t is None:
        lo, hi = geometry.feasible_interval(a, b, c, d)
        t = 0.5 * (lo + hi)
    else:
        t = float(args.t)
    cfg = geometry.realize_config(a, b, c, d, t)
    data = json.loads(cfg.to_json())
    data["t"] = t
    data["areas"] = geometry.named_areas(geometry.face_areas(cfg))
    _emit(data, args.out)
    return 0


def cmd_render(args):
    if args.config:
        cfg = geometry.FourCircleConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
        svg = geometry.config_svg(cfg, size=args.size)
    else:
        if args.label:
            label = builders.parse_label(args.label)
            net, title = builders.build_net(label), str(label)
        else:
            net, title = _read_net(args.net), Path(args.net).stem
        svg = netcore.net_svg(net, size=args.size, title=title)
    if args.out:
        Path(args.out).write_text(svg, encoding="utf-8")
    else:
        sys.stdout.write(svg)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="sphquad", description="Nets, angles and chains of generic spherical quadrilaterals.")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized step")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for batch queries")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a net JSON file")
    s.add_argument("net")
    s.add_argument("--corners", type=int, default=4)
    s.add_argument("--integer-corners", action="store_true", help="allow corners between two sides on one circle")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="name the net in a JSON file")
    s.add_argument("net")
    s.add_argument("--witnesses", action="store_true", help="list every decomposition")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("enumerate", help="list primitive nets up to a corner-order bound")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--json", action="store_true", help="one JSON object per line")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("feasible", help="pyramid test for a label at given angles")
    s.add_argument("--label", required=True)
    s.add_argument("--angles", required=True)
    s.set_defaults(func=cmd_feasible)

    s = sub.add_parser("chains", help="chains and count bounds at given angles")
    s.add_argument("--angles", required=True, action="append", help="repeat for a batch")
    s.add_argument("--scope", help="comma-separated families or diagram names")
    s.add_argument("--explain", action="store_true", help="include gating inequalities")
    s.set_defaults(func=cmd_chains)

    s = sub.add_parser("realize", help="four-circle configuration for face angles")
    s.add_argument("--angles", required=True)
    s.add_argument("--t", help="fifth angle (default: middle of the feasible interval)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("render", help="SVG of a configuration or a net")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--config")
    src.add_argument("--net")
    src.add_argument("--label")
    s.add_argument("--size", type=int, default=480)
    s.add_argument("--out")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    logging.basicConfig(level=os.environ.get("SPHQUAD_LOG", "WARNING").upper(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    random.seed(args.seed)
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except SphquadError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception:
        log.exception("internal error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
