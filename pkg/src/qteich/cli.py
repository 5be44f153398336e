"""Command line front end.

Exit codes: 0 pass, 1 refuted, 2 invalid input, 3 inapplicable move, 4 inconclusive.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classical as cl
from . import verify
from .errors import InvalidPath, InvalidSurface, NotApplicable, NotFound, QTeichError
from .skewfield import TrialConfig
from .triangulation import (
    DecoratedTriangulation,
    DiagonalExchange,
    apply_move,
    build_standard,
    find_move_path,
    move_from_dict,
    move_to_dict,
)

EXIT_PASS, EXIT_REFUTED, EXIT_INVALID, EXIT_INAPPLICABLE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4
DEFAULT_SEED = 20240611


def _emit(obj, out):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    with open(path) as fh:
        return json.load(fh)


def _surface_tau(args) -> DecoratedTriangulation:
    if args.input:
        data = _load(args.input)
        return DecoratedTriangulation.from_dict(data.get("triangulation", data))
    return build_standard(args.genus, args.punctures)


def cmd_fixture(args):
    _emit(build_standard(args.genus, args.punctures).to_dict(), args.out)
    return EXIT_PASS


def _transform_coords(coords, mv, tau):
    if isinstance(coords, cl.KashaevCoords):
        return cl.kashaev_change(coords, mv, tau)
    if isinstance(coords, cl.LambdaLengths):
        return cl.penner_change(coords, mv, tau)
    if isinstance(coords, cl.ShearCoords):
        if isinstance(mv, DiagonalExchange):
            return cl.shear_change(coords, tau, tau.side(mv.i, 0))
        apply_move(tau, mv)
        return coords
    raise TypeError(coords)


def cmd_transform(args):
    data = _load(args.input) if args.input else {}
    tau = (DecoratedTriangulation.from_dict(data.get("triangulation", data))
           if args.input else build_standard(args.genus, args.punctures))
    coord_src = _load(args.coords) if args.coords else data.get("coords", data)
    coords = cl.coords_from_dict(coord_src)
    moves = [move_from_dict(d) for d in _load(args.moves)] if args.moves else []
    for idx, mv in enumerate(moves):
        try:
            coords = _transform_coords(coords, mv, tau)
            tau = apply_move(tau, mv)
        except NotApplicable as exc:
            sys.stderr.write(f"move {idx} ({json.dumps(move_to_dict(mv))}) not applicable: {exc}\n")
            return EXIT_INAPPLICABLE
    _emit({"triangulation": tau.to_dict(), "coords": cl.coords_to_dict(coords)}, args.out)
    return EXIT_PASS


def cmd_path(args):
    if not args.input or not args.target:
        raise InvalidPath("path needs --input and --target triangulations")
    src = DecoratedTriangulation.from_dict(_load(args.input))
    dst = DecoratedTriangulation.from_dict(_load(args.target))
    try:
        path = find_move_path(src, dst, args.depth)
    except NotFound as exc:
        _emit({"found": False, "depth_limit": exc.depth_limit}, args.out)
        return EXIT_REFUTED
    _emit({"found": True, "moves": [move_to_dict(m) for m in path]}, args.out)
    return EXIT_PASS


def _trial_config(args) -> TrialConfig:
    sizes = tuple(int(s) for s in args.sizes.split(",")) if args.sizes else (3, 5, 7)
    samples = args.samples if args.samples is not None else 5
    need = args.min_successes
    if need is None:
        need = min(10, samples * len(sizes))
    return TrialConfig(sizes=sizes, samples=samples, min_successes=need, seed=args.seed)


def cmd_verify(args):
    suite = args.suite_pos or args.suite
    if suite is None:
        raise ValueError("verify needs a suite name")
    names = sorted(verify.SUITES) if suite == "all" else [suite]
    for n in names:
        if n not in verify.SUITES:
            raise ValueError(f"unknown suite {n!r}; choose from {sorted(verify.SUITES)} or 'all'")
    trials = _trial_config(args)
    g, p = args.genus, args.punctures
    build_standard(g, p)  # surface check up front
    records = []
    for n in names:
        records += verify.SUITES[n](g, p, trials=trials, seed=args.seed, a=args.a, b=args.b,
                                    samples=args.compat_samples)
    records.sort(key=lambda r: r["id"])
    report = {
        "surface": {"genus": g, "punctures": p},
        "suite": suite,
        "seed": args.seed,
        "trials": trials.to_dict(),
        "params": {"a": args.a, "b": args.b},
        "statements": records,
    }
    _emit(report, args.out)
    statuses = {r["status"] for r in records}
    if "fail" in statuses:
        return EXIT_REFUTED
    if "inconclusive" in statuses:
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qteich", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, surface_default=(0, 4)):
        sp.add_argument("--genus", type=int, default=surface_default[0])
        sp.add_argument("--punctures", type=int, default=surface_default[1])
        sp.add_argument("--input")
        sp.add_argument("--out")

    sp = sub.add_parser("fixture", help="print a standard triangulation")
    common(sp, (1, 1))
    sp.set_defaults(func=cmd_fixture)

    sp = sub.add_parser("transform", help="apply moves to a triangulation and coordinates")
    common(sp, (1, 1))
    sp.add_argument("--moves")
    sp.add_argument("--coords", help="coordinate JSON (default: 'coords' key of --input)")
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("suite_pos", nargs="?", metavar="SUITE")
    sp.add_argument("--suite")
    sp.add_argument("--sizes", help="comma separated representation sizes, e.g. 3,5,7")
    sp.add_argument("--samples", type=int)
    sp.add_argument("--min-successes", type=int)
    sp.add_argument("--compat-samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("path", help="search for a move path between two triangulations")
    common(sp)
    sp.add_argument("--target")
    sp.add_argument("--depth", type=int, default=6)
    sp.set_defaults(func=cmd_path)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSurface, InvalidPath, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except NotApplicable as exc:
        sys.stderr.write(f"not applicable: {exc}\n")
        return EXIT_INAPPLICABLE
    except QTeichError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
