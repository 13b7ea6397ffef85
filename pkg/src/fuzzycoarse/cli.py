"""Command-line front end.

Subcommands: verify-axioms, witness, check, pipeline, coarse, oracle.
Reports stream as one predicate verdict per line; the stream is
byte-identical across runs for identical configs.  Exit codes: 0 all
certified, 1 certified failure, 2 usage, parse or size errors.
"""

from __future__ import annotations

import argparse
import sys

from . import asdim, coarse
from .config import (
    dump_json,
    format_scale,
    load_json_file,
    map_from_config,
    parse_scale,
    parse_window_spec,
    space_from_config,
    witness_from_json,
    witness_to_json,
)
from .errors import FuzzyCoarseError, ParseError
from .rationals import parse_rational
from .space import ScaleParams, check_axioms, threshold_bridge_suite

EXIT_PASS = 0
EXIT_CERTIFIED_FAIL = 1
EXIT_USAGE = 2


class _Emitter:
    def __init__(self, out_path=None):
        self.lines = []
        self.out_path = out_path

    def emit(self, report_or_line):
        if isinstance(report_or_line, str):
            self.lines.append(report_or_line)
        else:
            self.lines.extend(report_or_line.lines())

    def flush(self):
        text = "\n".join(self.lines) + "\n" if self.lines else ""
        sys.stdout.write(text)
        if self.out_path:
            with open(self.out_path, "w", encoding="utf-8") as fh:
                fh.write(text)


def _merged(args, config_keys):
    """Flag values overridden by config-file entries when present."""
    merged = dict(config_keys)
    if getattr(args, "config", None):
        cfg = load_json_file(args.config)
        if not isinstance(cfg, dict):
            raise ParseError("config file must hold a JSON object")
        merged.update(cfg)
    return merged


def _space_of(merged):
    spec = merged.get("space")
    if spec is None:
        raise ParseError("a space is required (--space or config)")
    return space_from_config(spec)


def _scales_of(merged):
    raw = merged.get("scales") or []
    scales = [s if isinstance(s, ScaleParams) else parse_scale(s) if isinstance(s, str)
              else None for s in raw]
    if any(s is None for s in scales):
        raise ParseError("scales must be r:t strings")
    if not scales:
        raise ParseError("at least one --scale r:t is required")
    return scales


def cmd_verify_axioms(args) -> int:
    merged = _merged(args, {"space": args.space, "window": args.window,
                            "t_grid": args.t_grid, "seed": args.seed,
                            "bridge_cases": args.bridge_cases})
    space = _space_of(merged)
    window = parse_window_spec(merged.get("window") or "1..20")
    grid_text = merged.get("t_grid") or "1/2,1,2,7"
    t_grid = [parse_rational(part) for part in str(grid_text).split(",")]
    em = _Emitter(args.out)
    rep = check_axioms(space, window, t_grid)
    em.emit(rep)
    ok = rep.passed
    cases = int(merged.get("bridge_cases") or 0)
    if cases > 0:
        bridge = threshold_bridge_suite(seed=int(merged.get("seed") or 0), cases=cases)
        em.emit(bridge)
        ok = ok and bridge.passed
    em.flush()
    return EXIT_PASS if ok else EXIT_CERTIFIED_FAIL


def _witness_for(space, kind, params, window, epsilon):
    if kind == "reciprocal_product":
        return asdim.witness_reciprocal_product(params, window)
    if kind == "ratio_minmax":
        return asdim.witness_ratio_minmax(params, window)
    if kind == "ultrametric_standard":
        return asdim.witness_ball_partition(space, params, epsilon, window)
    return asdim.witness_whole_window(space, window, params)


def cmd_witness(args) -> int:
    merged = _merged(args, {"space": args.space, "window": args.window,
                            "scales": args.scale, "epsilon": args.epsilon})
    space = _space_of(merged)
    kind = space.kind_name
    window = parse_window_spec(merged.get("window") or "1..100")
    params = _scales_of(merged)[0]
    epsilon = merged.get("epsilon")
    if isinstance(epsilon, str):
        epsilon = parse_rational(epsilon)
    w = _witness_for(space, kind, params, window, epsilon)
    rep = asdim.verify_witness(space, w)
    em = _Emitter(args.out)
    em.emit(rep)
    em.flush()
    if args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fh:
            fh.write(dump_json(witness_to_json(w)))
    return EXIT_PASS if rep.passed else EXIT_CERTIFIED_FAIL


def cmd_check(args) -> int:
    merged = _merged(args, {"space": args.space, "scales": args.scale,
                            "witness": args.witness})
    space = _space_of(merged)
    path = merged.get("witness")
    if not path:
        raise ParseError("a witness file is required (--witness or config)")
    w = witness_from_json(load_json_file(path))
    em = _Emitter(args.out)
    ok = True
    for params in _scales_of(merged):
        probe = asdim.DimensionWitness(w.n, params, w.bound_params, w.families, w.window)
        rep = asdim.verify_witness(space, probe)
        em.emit(f"SCALE {format_scale(params)}")
        em.emit(rep)
        ok = ok and rep.passed
    em.flush()
    return EXIT_PASS if ok else EXIT_CERTIFIED_FAIL


def cmd_pipeline(args) -> int:
    merged = _merged(args, {"space": args.space, "window": args.window,
                            "scales": args.scale})
    space = _space_of(merged)
    kind = space.kind_name
    window = parse_window_spec(merged.get("window") or "1..500")
    params = _scales_of(merged)[0]
    if kind not in ("reciprocal_product", "ratio_minmax"):
        raise ParseError(
            f"pipeline has built-in witness constructors for reciprocal_product "
            f"and ratio_minmax, not {kind!r}"
        )

    def factory(scale):
        return _witness_for(space, kind, scale, window, None)

    result = asdim.run_dimension_pipeline(space, params, window, factory)
    em = _Emitter(args.out)
    for rep in result.reports:
        em.emit(rep)
    em.flush()
    return EXIT_PASS if result.passed else EXIT_CERTIFIED_FAIL


def cmd_coarse(args) -> int:
    if not args.config:
        raise ParseError("the coarse command is config-driven; pass --config FILE")
    cfg = load_json_file(args.config)
    if not isinstance(cfg, dict):
        raise ParseError("config file must hold a JSON object")
    for key in ("source_space", "target_space", "map", "window_x", "window_y", "scale"):
        if key not in cfg:
            raise ParseError(f"coarse config needs {key!r}")
    space_x = space_from_config(cfg["source_space"])
    space_y = space_from_config(cfg["target_space"])
    fmap = map_from_config(cfg["map"])
    window_x = parse_window_spec(cfg["window_x"])
    window_y = parse_window_spec(cfg["window_y"])
    params = parse_scale(cfg["scale"]) if isinstance(cfg["scale"], str) else None
    if params is None:
        raise ParseError("scale must be an r:t string")
    em = _Emitter(args.out)
    ok = True
    if fmap.expansive:
        rep = coarse.check_uniformly_expansive(space_x, space_y, fmap, window_x)
        em.emit(rep)
        ok = ok and rep.passed
    if fmap.proper:
        rep = coarse.check_effectively_proper(space_x, space_y, fmap, window_x)
        em.emit(rep)
        ok = ok and rep.passed
    if fmap.onto_params is not None:
        rep = coarse.check_coarsely_onto(space_y, fmap, fmap.onto_params, window_y)
        em.emit(rep)
        ok = ok and rep.passed
    if cfg.get("inverse"):
        _, rep = coarse.coarse_inverse(space_x, space_y, fmap, params, window_y, window_x)
        em.emit(rep)
        ok = ok and rep.passed
    if "transport" in cfg:
        tcfg = cfg["transport"]
        witness = witness_from_json(load_json_file(tcfg["witness"])) if "witness" in tcfg else None
        factory = None
        kind_x = space_x.kind_name
        if witness is None and kind_x in ("reciprocal_product", "ratio_minmax",
                                          "ultrametric_standard"):
            source_window = fmap.domain or window_x

            def factory(scale):
                return _witness_for(space_x, kind_x, scale, source_window, None)

        _, rep = coarse.transport_witness(space_x, space_y, fmap, witness, params,
                                          window_y, witness_factory=factory)
        em.emit(rep)
        ok = ok and rep.passed
    em.flush()
    return EXIT_PASS if ok else EXIT_CERTIFIED_FAIL


def cmd_oracle(args) -> int:
    merged = _merged(args, {"space": args.space, "window": args.window,
                            "scales": args.scale, "bound": args.bound})
    space = _space_of(merged)
    kind = space.kind_name
    window = parse_window_spec(merged.get("window") or "1..6")
    params = _scales_of(merged)[0]
    bound_spec = merged.get("bound")
    bound = parse_scale(bound_spec) if isinstance(bound_spec, str) else params
    em = _Emitter(args.out)
    k = asdim.oracle_min_families(space, params, bound, window)
    em.emit(f"ORACLE min_families={k} scale={format_scale(params)} "
            f"bound={format_scale(bound)} window={window.label()}")
    ok = True
    constructible = (kind in ("reciprocal_product", "ratio_minmax")
                     and window.is_contiguous_ints() and window.points[0] == 1)
    if constructible:
        w = _witness_for(space, kind, params, window, None)
        consistent = k <= w.n + 1
        em.emit(f"{'PASS' if consistent else 'FAIL'} oracle-vs-constructor "
                f"oracle={k} constructor_families={w.n + 1}")
        ok = consistent
    em.flush()
    return EXIT_PASS if ok else EXIT_CERTIFIED_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzycoarse",
        description="Exact certification of coarse-geometry statements about "
                    "fuzzy metric spaces at explicit scales.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scales=True):
        p.add_argument("--space", help="space tag (see docs) or use --config")
        p.add_argument("--window", help="integer window a..b")
        if scales:
            p.add_argument("--scale", action="append", default=[],
                           help="scale r:t with rational parts, repeatable")
        p.add_argument("--config", help="JSON config file; overrides flags")
        p.add_argument("--out", help="also write the report stream to this file")

    p = sub.add_parser("verify-axioms", help="certify the space axioms on a window")
    common(p, scales=False)
    p.add_argument("--t-grid", dest="t_grid", help="comma-separated rational times")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    p.add_argument("--bridge-cases", dest="bridge_cases", type=int, default=0,
                   help="also run the randomized threshold bridge suite")
    p.set_defaults(fn=cmd_verify_axioms)

    p = sub.add_parser("witness", help="construct and verify a dimension witness")
    common(p)
    p.add_argument("--epsilon", help="ball enlargement for the partition construction")
    p.add_argument("--witness-out", dest="witness_out", help="write the witness JSON here")
    p.set_defaults(fn=cmd_witness)

    p = sub.add_parser("check", help="re-verify a witness file at a scale grid")
    common(p)
    p.add_argument("--witness", help="witness JSON file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("pipeline", help="run the multiplicity/Lebesgue/refinement chain")
    common(p)
    p.set_defaults(fn=cmd_pipeline)

    p = sub.add_parser("coarse", help="coarse-map checks, inverse, transport (config-driven)")
    common(p, scales=False)
    p.set_defaults(fn=cmd_coarse)

    p = sub.add_parser("oracle", help="brute-force minimum family count on a tiny window")
    common(p)
    p.add_argument("--bound", help="bound scale r:t (defaults to --scale)")
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        return args.fn(args)
    except FuzzyCoarseError as exc:
        sys.stdout.write(f"ERROR {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
