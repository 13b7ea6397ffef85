"""Structured-text ingestion: spaces, windows, scales, witnesses, maps.

Everything rational travels as a decimal-free "p/q" string, points as
ints, "p/q" strings or integer arrays (lattice tuples), windows as
"a..b" ranges, explicit lists, or {"grid": {lo, hi, step}} samples.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .coarse import CoarseMap, ModulusEntry, affine_map, identity_map, inclusion_map, table_map
from .asdim import DimensionWitness
from .covers import Family
from .errors import ParseError
from .rationals import format_rational, parse_rational
from .space import (
    EuclideanLattice,
    EuclideanLine,
    FuzzyMetricSpace,
    MaxUltrametric,
    ScaleParams,
    TableMetric,
    Window,
    UNIVERSES,
    grid_window,
    int_window,
    pathological_space,
    ratio_minmax_space,
    reciprocal_product_space,
    standard_space,
    ultrametric_space,
)
from .tnorm import tnorm_from_name

_RANGE_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")

SPACE_TAGS = (
    "standard",
    "reciprocal_product",
    "ratio_minmax",
    "pathological",
    "ultrametric_standard",
)


def parse_scale(text: str) -> ScaleParams:
    """Parse "r:t" with both parts rational, e.g. "1/2:1"."""
    if not isinstance(text, str) or ":" not in text:
        raise ParseError(f"scale must look like p/q:p/q, got {text!r}")
    r_s, _, t_s = text.partition(":")
    return ScaleParams(parse_rational(r_s), parse_rational(t_s))


def format_scale(params: ScaleParams) -> str:
    return f"{format_rational(params.r)}:{format_rational(params.t)}"


def scale_to_json(params: ScaleParams) -> dict:
    return {"r": format_rational(params.r), "t": format_rational(params.t)}


def scale_from_json(obj) -> ScaleParams:
    if isinstance(obj, str):
        return parse_scale(obj)
    try:
        return ScaleParams(parse_rational(str(obj["r"])) if isinstance(obj["r"], str) else Fraction(obj["r"]),
                           parse_rational(str(obj["t"])) if isinstance(obj["t"], str) else Fraction(obj["t"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"scale object needs r and t: {obj!r}") from exc


def point_to_json(p):
    if isinstance(p, tuple):
        return list(p)
    if isinstance(p, Fraction):
        return format_rational(p)
    return p


def point_from_json(obj):
    if isinstance(obj, bool):
        raise ParseError("booleans are not points")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        f = parse_rational(obj)
        return int(f) if f.denominator == 1 else f
    if isinstance(obj, list):
        return tuple(point_from_json(c) for c in obj)
    raise ParseError(f"cannot read point {obj!r}")


def window_to_spec(window: Window):
    if window.is_contiguous_ints():
        return f"{window.points[0]}..{window.points[-1]}"
    return [point_to_json(p) for p in window.points]


def parse_window_spec(spec) -> Window:
    if isinstance(spec, str):
        m = _RANGE_RE.match(spec.strip())
        if not m:
            raise ParseError(f"window range must look like a..b, got {spec!r}")
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo > hi:
            raise ParseError(f"empty window range {spec!r}")
        return int_window(lo, hi)
    if isinstance(spec, list):
        if not spec:
            raise ParseError("window list must be non-empty")
        return Window(point_from_json(p) for p in spec)
    if isinstance(spec, dict) and "grid" in spec:
        g = spec["grid"]
        try:
            return grid_window(parse_rational(str(g["lo"])), parse_rational(str(g["hi"])),
                               parse_rational(str(g["step"])))
        except KeyError as exc:
            raise ParseError("grid window needs lo, hi, step") from exc
    raise ParseError(f"cannot read window spec {spec!r}")


def _metric_from_config(cfg):
    if cfg is None or cfg == "euclidean":
        return EuclideanLine()
    if cfg == "max_ultrametric":
        return MaxUltrametric()
    if isinstance(cfg, dict):
        rule = cfg.get("rule")
        if rule == "euclidean":
            return EuclideanLine()
        if rule == "max_ultrametric":
            return MaxUltrametric()
        if rule == "euclidean_lattice":
            try:
                return EuclideanLattice(int(cfg["dim"]))
            except (KeyError, ValueError) as exc:
                raise ParseError("euclidean_lattice metric needs an integer dim") from exc
        if rule == "table":
            try:
                points = [point_from_json(p) for p in cfg["points"]]
                matrix = [[parse_rational(str(v)) if isinstance(v, str) else Fraction(v)
                           for v in row] for row in cfg["matrix"]]
            except (KeyError, TypeError) as exc:
                raise ParseError("table metric needs points and matrix") from exc
            return TableMetric(points, matrix)
    raise ParseError(f"unknown metric config {cfg!r}")


def space_from_config(cfg) -> FuzzyMetricSpace:
    """Build a space from a tag or a {kind, tnorm, metric, universe} object."""
    if isinstance(cfg, str):
        cfg = {"kind": cfg}
    if not isinstance(cfg, dict):
        raise ParseError(f"space config must be a tag or object, got {cfg!r}")
    kind = cfg.get("kind")
    if kind not in SPACE_TAGS:
        raise ParseError(f"unknown space kind {kind!r}; expected one of {list(SPACE_TAGS)}")
    tnorm = tnorm_from_name(cfg["tnorm"]) if "tnorm" in cfg else None
    if kind == "standard":
        metric = _metric_from_config(cfg.get("metric"))
        universe = None
        if "universe" in cfg:
            try:
                universe = UNIVERSES[cfg["universe"]]
            except KeyError:
                raise ParseError(f"unknown universe tag {cfg['universe']!r}") from None
        from .tnorm import PRODUCT

        return standard_space(metric, tnorm or PRODUCT, universe)
    if "metric" in cfg or "universe" in cfg:
        raise ParseError(f"space kind {kind!r} takes no metric/universe overrides")
    if kind == "reciprocal_product":
        from .tnorm import PRODUCT

        return reciprocal_product_space(tnorm or PRODUCT)
    if kind == "ratio_minmax":
        from .tnorm import PRODUCT

        return ratio_minmax_space(tnorm or PRODUCT)
    if kind == "pathological":
        return pathological_space(tnorm)
    from .tnorm import MINIMUM

    return ultrametric_space(tnorm or MINIMUM)


def family_to_json(fam: Family) -> dict:
    return {"label": fam.label,
            "sets": [[point_to_json(p) for p in s] for s in fam.sets]}


def family_from_json(obj) -> Family:
    try:
        sets = [[point_from_json(p) for p in s] for s in obj["sets"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"family object needs sets: {obj!r}") from exc
    return Family.of(sets, obj.get("label", ""))


def witness_to_json(w: DimensionWitness) -> dict:
    return {
        "n": w.n,
        "params": scale_to_json(w.params),
        "bound_params": scale_to_json(w.bound_params),
        "window": window_to_spec(w.window),
        "families": [family_to_json(f) for f in w.families],
    }


def witness_from_json(obj) -> DimensionWitness:
    try:
        return DimensionWitness(
            int(obj["n"]),
            scale_from_json(obj["params"]),
            scale_from_json(obj["bound_params"]),
            tuple(family_from_json(f) for f in obj["families"]),
            parse_window_spec(obj["window"]),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"witness object is malformed: {exc}") from exc


def modulus_from_json(obj) -> ModulusEntry:
    try:
        return ModulusEntry(
            parse_rational(str(obj["level_in"])),
            parse_rational(str(obj["t_in"])),
            parse_rational(str(obj["level_out"])),
            parse_rational(str(obj["t_out"])),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"modulus entry is malformed: {obj!r}") from exc


def map_from_config(cfg) -> CoarseMap:
    """Build a coarse map from {rule, domain, expansive, proper, onto}."""
    if not isinstance(cfg, dict):
        raise ParseError(f"map config must be an object, got {cfg!r}")
    kwargs = {}
    if "domain" in cfg:
        kwargs["domain"] = parse_window_spec(cfg["domain"])
    if "expansive" in cfg:
        kwargs["expansive"] = tuple(modulus_from_json(e) for e in cfg["expansive"])
    if "proper" in cfg:
        kwargs["proper"] = tuple(modulus_from_json(e) for e in cfg["proper"])
    if "onto" in cfg:
        kwargs["onto_params"] = scale_from_json(cfg["onto"])
    rule = cfg.get("rule", "identity")
    if rule == "identity":
        return identity_map(**kwargs)
    if rule == "inclusion":
        return inclusion_map(**kwargs)
    if isinstance(rule, dict) and "affine" in rule:
        a = rule["affine"]
        try:
            return affine_map(parse_rational(str(a["a"])), parse_rational(str(a["b"])), **kwargs)
        except (KeyError, TypeError) as exc:
            raise ParseError("affine rule needs a and b") from exc
    if isinstance(rule, dict) and "table" in rule:
        table = {point_from_json(k_obj): point_from_json(v_obj)
                 for k_obj, v_obj in rule["table"]}
        return table_map(table, **kwargs)
    raise ParseError(f"unknown map rule {rule!r}")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ParseError(f"file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from None
