"""Fuzzy metric spaces with exact rational evaluation.

A space couples a point universe, a continuous t-norm and a closeness
rule M(x, y, t) in (0, 1], read as the degree of certainty that x and y
are within t of each other.  All evaluation is exact; every predicate in
the library reduces to strict or non-strict comparisons of Fractions, so
a certificate can never be an artifact of rounding.

Infinite universes are handled by explicit finite windows supplied per
call.  A verdict is always "on window W", never "on the whole space".

Built-in space kinds
--------------------
standard              t / (t + d(x, y)) for a metric d (product t-norm)
reciprocal_product    1/(xy) off the diagonal, on the positive integers
ratio_minmax          min(x, y)/max(x, y) on the positive integers
pathological          1/2 off the diagonal except 1/x against the point 1
                      (a space where bounded sets do not union well)
ultrametric_standard  t / (t + max(x, y)) off the diagonal, min t-norm
                      (non-Archimedean)
"""

from __future__ import annotations

import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, ExactnessError, UnsupportedOperationError
from .rationals import as_fraction
from .report import CertReport, fmt_pair, fmt_value
from .tnorm import MINIMUM, PRODUCT, TNorm

ONE = Fraction(1)


@dataclass(frozen=True)
class ScaleParams:
    """A scale (r, t) with r in (0, 1) and t > 0."""

    r: Fraction
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))
        object.__setattr__(self, "t", as_fraction(self.t))
        if not (0 < self.r < 1):
            raise DomainError(f"r must lie in (0,1), got {self.r}")
        if self.t <= 0:
            raise DomainError(f"t must be positive, got {self.t}")

    @property
    def threshold(self) -> Fraction:
        """The level 1 - r that strict closeness comparisons run against."""
        return 1 - self.r


class Window:
    """A finite, sorted, duplicate-free tuple of points.

    Windows are how infinite universes are made enumerable: every scan,
    ball and certificate is relative to one.
    """

    __slots__ = ("points", "_set")

    def __init__(self, points):
        pts = sorted(set(points))
        self.points = tuple(pts)
        self._set = frozenset(pts)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return p in self._set

    def __eq__(self, other):
        return isinstance(other, Window) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def between(self, lo, hi, include_lo=False, include_hi=False) -> tuple:
        """Window points inside the interval with the given bound strictness.

        ``None`` on either side means unbounded.
        """
        pts = self.points
        if lo is None:
            i = 0
        else:
            i = bisect_left(pts, lo) if include_lo else bisect_right(pts, lo)
        if hi is None:
            j = len(pts)
        else:
            j = bisect_right(pts, hi) if include_hi else bisect_left(pts, hi)
        return pts[i:j] if i < j else ()

    def count_between(self, lo, hi, include_lo=False, include_hi=False) -> int:
        return len(self.between(lo, hi, include_lo, include_hi))

    def is_contiguous_ints(self) -> bool:
        pts = self.points
        return (
            bool(pts)
            and all(isinstance(p, int) for p in (pts[0], pts[-1]))
            and len(pts) == pts[-1] - pts[0] + 1
            and all(isinstance(p, int) for p in pts)
        )

    def label(self) -> str:
        if not self.points:
            return "empty"
        if self.is_contiguous_ints():
            return f"{self.points[0]}..{self.points[-1]}"
        if len(self.points) <= 8:
            return "{" + ",".join(fmt_value(p) for p in self.points) + "}"
        return (
            f"{fmt_value(self.points[0])}..{fmt_value(self.points[-1])}"
            f"(#{len(self.points)})"
        )

    def __repr__(self):
        return f"Window({self.label()})"


def int_window(lo: int, hi: int) -> Window:
    if lo > hi:
        raise DomainError(f"empty integer window {lo}..{hi}")
    return Window(range(lo, hi + 1))


def grid_window(lo, hi, step) -> Window:
    """Rational sample points lo, lo+step, ..., up to hi."""
    lo, hi, step = as_fraction(lo), as_fraction(hi), as_fraction(step)
    if step <= 0 or lo > hi:
        raise DomainError("grid window needs step > 0 and lo <= hi")
    pts = []
    p = lo
    while p <= hi:
        pts.append(int(p) if p.denominator == 1 else p)
        p += step
    return Window(pts)


# ---------------------------------------------------------------------------
# Point universes
# ---------------------------------------------------------------------------


class Universe:
    """Membership rule for the points a space is defined on."""

    def __init__(self, name: str, contains, description: str):
        self.name = name
        self._contains = contains
        self.description = description

    def __contains__(self, p):
        return self._contains(p)

    def __repr__(self):
        return f"Universe({self.name})"


def _is_scalar(p):
    return isinstance(p, int) and not isinstance(p, bool) or isinstance(p, Fraction)


NATURALS = Universe("naturals", lambda p: isinstance(p, int) and not isinstance(p, bool) and p >= 1,
                    "integers >= 1")
INTEGERS = Universe("integers", lambda p: isinstance(p, int) and not isinstance(p, bool),
                    "all integers")
RATIONALS = Universe("rationals", _is_scalar, "all exact rationals")


def lattice_universe(dim: int) -> Universe:
    if dim < 1:
        raise DomainError("lattice dimension must be positive")
    return Universe(
        f"lattice{dim}",
        lambda p: isinstance(p, tuple) and len(p) == dim
        and all(isinstance(c, int) and not isinstance(c, bool) for c in p),
        f"integer tuples of length {dim}",
    )


def finite_universe(points) -> Universe:
    pts = frozenset(points)
    return Universe("finite", pts.__contains__, f"{len(pts)} fixed points")


UNIVERSES = {"naturals": NATURALS, "integers": INTEGERS, "rationals": RATIONALS}


# ---------------------------------------------------------------------------
# Metrics (for standard spaces)
# ---------------------------------------------------------------------------


class Metric:
    """An exact metric; ``line_compatible`` means the distance respects the
    point order (d grows as pairs nest outward on the sorted line)."""

    name = "metric"
    line_compatible = False

    def distance(self, x, y) -> Fraction:
        raise NotImplementedError


class EuclideanLine(Metric):
    """|x - y| on a totally ordered rational line."""

    name = "euclidean"
    line_compatible = True

    def distance(self, x, y) -> Fraction:
        return as_fraction(abs(x - y))


class EuclideanLattice(Metric):
    """Euclidean distance on integer tuples.

    Only distances whose squared value is a perfect square are exact
    rationals; any other pair raises ``ExactnessError``.  In dimension 1
    every distance is exact.
    """

    name = "euclidean_lattice"
    line_compatible = False

    def __init__(self, dim: int):
        if dim < 1:
            raise DomainError("lattice dimension must be positive")
        self.dim = dim

    def distance(self, x, y) -> Fraction:
        if len(x) != self.dim or len(y) != self.dim:
            raise DomainError(f"points must be {self.dim}-tuples")
        sq = sum((a - b) * (a - b) for a, b in zip(x, y))
        root = math.isqrt(sq)
        if root * root != sq:
            raise ExactnessError(
                f"distance between {x} and {y} is irrational (squared distance {sq}); "
                "exact certification needs rational distances"
            )
        return Fraction(root)


class MaxUltrametric(Metric):
    """d(x, y) = max(x, y) for distinct points of the positive line.

    Satisfies the strong triangle inequality d(x,z) <= max(d(x,y), d(y,z)).
    """

    name = "max_ultrametric"
    line_compatible = True

    def distance(self, x, y) -> Fraction:
        if x == y:
            return Fraction(0)
        return as_fraction(max(x, y))


class TableMetric(Metric):
    """Explicit symmetric table of rational distances over fixed points."""

    name = "table"
    line_compatible = False

    def __init__(self, points, matrix):
        pts = list(points)
        if len(set(pts)) != len(pts):
            raise DomainError("table points must be distinct")
        n = len(pts)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise DomainError("distance matrix shape must match the point list")
        vals = [[as_fraction(v) for v in row] for row in matrix]
        for i in range(n):
            if vals[i][i] != 0:
                raise DomainError(f"d(x,x) must be 0, got {vals[i][i]} at {pts[i]}")
            for j in range(i + 1, n):
                if vals[i][j] != vals[j][i]:
                    raise DomainError(f"table not symmetric at ({pts[i]},{pts[j]})")
                if vals[i][j] <= 0:
                    raise DomainError(f"d must be positive off the diagonal at ({pts[i]},{pts[j]})")
        self.points = tuple(pts)
        self._index = {p: i for i, p in enumerate(pts)}
        self._vals = vals

    def distance(self, x, y) -> Fraction:
        try:
            return self._vals[self._index[x]][self._index[y]]
        except KeyError:
            raise DomainError(f"point outside the table: {x if x not in self._index else y}") from None


def check_metric_axioms(metric: Metric, window: Window) -> CertReport:
    """Certify symmetry, identity, positivity and the triangle inequality
    over all window triples (strong triangle for the max-ultrametric)."""
    rep = CertReport("metric-axioms", metric=metric.name, window=window.label())
    pts = window.points
    d = metric.distance
    bad_sym = bad_zero = bad_pos = None
    for i, x in enumerate(pts):
        if d(x, x) != 0:
            bad_zero = x
        for y in pts[i + 1:]:
            if d(x, y) != d(y, x):
                bad_sym = (x, y)
            if d(x, y) <= 0:
                bad_pos = (x, y)
    rep.add_verdict(bad_zero is None, "zero-diagonal", witness=bad_zero)
    rep.add_verdict(bad_sym is None, "symmetry", witness=fmt_pair(bad_sym))
    rep.add_verdict(bad_pos is None, "positivity", witness=fmt_pair(bad_pos))

    dm = [[d(x, y) for y in pts] for x in pts]
    bad_tri = None
    strong = isinstance(metric, MaxUltrametric)
    n = len(pts)
    for i in range(n):
        for j in range(n):
            dij = dm[i][j]
            for k in range(n):
                bound = max(dij, dm[j][k]) if strong else dij + dm[j][k]
                if dm[i][k] > bound:
                    bad_tri = (pts[i], pts[j], pts[k])
                    break
            if bad_tri:
                break
        if bad_tri:
            break
    rep.add_verdict(bad_tri is None, "strong-triangle" if strong else "triangle", witness=bad_tri)
    return rep


# ---------------------------------------------------------------------------
# Space kinds
# ---------------------------------------------------------------------------


class _Kind:
    """Evaluation strategy for one space kind.

    ``radial`` declares the structural fact that M can only shrink as a
    pair nests outward on the sorted line (x < y < z implies
    M(x,z) <= min(M(x,y), M(y,z))).  ``coordinate_decreasing`` declares
    that M(x, y) is non-increasing in each coordinate off the diagonal.
    Both flags unlock exact fast paths in the covers layer and are
    cross-validated against brute force in the test suite.
    """

    name = "kind"
    t_dependent = True
    radial = False
    coordinate_decreasing = False
    metric: Optional[Metric] = None

    def value(self, x, y, t: Fraction) -> Fraction:
        raise NotImplementedError

    def region(self, x, bound: Fraction, t: Fraction):
        """Open-threshold region {y : M(x,y,t) > bound} as
        (open intervals, extra points), or None when there is no closed
        form and callers must scan."""
        return None


class _StandardKind(_Kind):
    def __init__(self, metric: Metric, name="standard"):
        self.metric = metric
        self.name = name
        self.radial = metric.line_compatible

    def value(self, x, y, t):
        return t / (t + self.metric.distance(x, y))

    def region(self, x, bound, t):
        # M > bound iff d < t(1-bound)/bound
        theta = t * (1 - bound) / bound
        if isinstance(self.metric, EuclideanLine):
            return ((x - theta, x + theta),), ()
        if isinstance(self.metric, MaxUltrametric):
            if x < theta:
                return ((None, theta),), ()
            return (), (x,)
        return None


class _ReciprocalKind(_Kind):
    name = "reciprocal_product"
    t_dependent = False
    coordinate_decreasing = True

    def value(self, x, y, t):
        if x == y:
            return ONE
        return Fraction(1, x * y)

    def region(self, x, bound, t):
        # 1/(xy) > bound iff y < 1/(bound*x); the point itself always qualifies
        return ((None, 1 / (bound * x)),), (x,)


class _RatioKind(_Kind):
    name = "ratio_minmax"
    t_dependent = False
    radial = True

    def value(self, x, y, t):
        if x == y:
            return ONE
        return Fraction(min(x, y), max(x, y))

    def region(self, x, bound, t):
        return ((x * bound, x / bound),), ()


class _PathologicalKind(_Kind):
    name = "pathological"
    t_dependent = False
    radial = True

    def value(self, x, y, t):
        if x == y:
            return ONE
        if x == 1:
            return Fraction(1, y)
        if y == 1:
            return Fraction(1, x)
        return Fraction(1, 2)

    def region(self, x, bound, t):
        if x == 1:
            return ((None, 1 / bound),), ()
        intervals = ((1, None),) if bound < Fraction(1, 2) else ()
        extras = (x,)
        if Fraction(1, x) > bound:
            extras = (1, x)
        return intervals, extras


def _make_ultrametric_kind() -> _StandardKind:
    return _StandardKind(MaxUltrametric(), name="ultrametric_standard")


# ---------------------------------------------------------------------------
# The space itself
# ---------------------------------------------------------------------------


class FuzzyMetricSpace:
    """Immutable triple of universe, closeness rule and t-norm."""

    def __init__(self, kind: _Kind, tnorm: TNorm, universe: Universe):
        self._kind = kind
        self.tnorm = tnorm
        self.universe = universe

    @property
    def kind_name(self) -> str:
        return self._kind.name

    @property
    def t_dependent(self) -> bool:
        return self._kind.t_dependent

    @property
    def radially_monotone(self) -> bool:
        return self._kind.radial

    @property
    def coordinate_decreasing(self) -> bool:
        return self._kind.coordinate_decreasing

    @property
    def metric(self) -> Optional[Metric]:
        return self._kind.metric

    def describe(self) -> str:
        return f"{self.kind_name}[{self.tnorm.name};{self.universe.name}]"

    def __repr__(self):
        return f"FuzzyMetricSpace({self.describe()})"

    def _check_point(self, p):
        if p not in self.universe:
            raise DomainError(f"point {p!r} is outside the {self.universe.name} universe")

    def value(self, x, y, t) -> Fraction:
        """M(x, y, t), exactly."""
        ft = as_fraction(t)
        if ft <= 0:
            raise DomainError(f"t must be positive, got {ft}")
        self._check_point(x)
        self._check_point(y)
        return self._kind.value(x, y, ft)

    def _raw(self, x, y, t) -> Fraction:
        # hot path, arguments already validated
        return self._kind.value(x, y, t)

    def region(self, x, bound: Fraction, t: Fraction):
        return self._kind.region(x, bound, t)

    def ball_points(self, x, bound: Fraction, t: Fraction, window: Window) -> tuple:
        """Window points y with M(x, y, t) > bound, strictly."""
        reg = self._kind.region(x, bound, t)
        if reg is None:
            return tuple(y for y in window if self._kind.value(x, y, t) > bound)
        return materialize_region(reg, window)

    def with_universe(self, universe: Universe) -> "FuzzyMetricSpace":
        return FuzzyMetricSpace(self._kind, self.tnorm, universe)


def materialize_region(region, window: Window) -> tuple:
    """Sorted window points covered by a (intervals, extras) region."""
    intervals, extras = region
    pieces = [window.between(lo, hi) for lo, hi in _merge_open_intervals(intervals)]
    pts = set()
    for piece in pieces:
        pts.update(piece)
    pts.update(p for p in extras if p in window)
    return tuple(sorted(pts))


def _merge_open_intervals(intervals):
    """Merge strictly overlapping open intervals (None = unbounded side)."""
    if not intervals:
        return []

    def key(iv):
        lo, _ = iv
        return (0,) if lo is None else (1, lo)

    merged = []
    for lo, hi in sorted(intervals, key=key):
        if merged:
            plo, phi = merged[-1]
            overlap = phi is None or (lo is not None and lo < phi) or (lo is None)
            if overlap:
                if phi is not None and (hi is None or hi > phi):
                    merged[-1] = (plo, hi)
                continue
        merged.append((lo, hi))
    return merged


def region_intersects(region, sset: frozenset, stuple: tuple) -> bool:
    """Whether a region meets a sorted point set."""
    intervals, extras = region
    for p in extras:
        if p in sset:
            return True
    for lo, hi in intervals:
        i = 0 if lo is None else bisect_right(stuple, lo)
        j = len(stuple) if hi is None else bisect_left(stuple, hi)
        if i < j:
            return True
    return False


def region_within(region, window: Window, sset: frozenset, stuple: tuple) -> bool:
    """Whether every window point of a region belongs to the set.

    Assumes the set is itself a subset of the window, so counting
    suffices on intervals.
    """
    intervals, extras = region
    for p in extras:
        if p in window and p not in sset:
            return False
    for lo, hi in _merge_open_intervals(intervals):
        i = 0 if lo is None else bisect_right(stuple, lo)
        j = len(stuple) if hi is None else bisect_left(stuple, hi)
        if (j - i) != window.count_between(lo, hi):
            return False
    return True


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------


def standard_space(metric: Optional[Metric] = None, tnorm: TNorm = PRODUCT,
                   universe: Optional[Universe] = None) -> FuzzyMetricSpace:
    """The space t/(t + d) induced by a metric (default |x - y| on the integers)."""
    m = metric if metric is not None else EuclideanLine()
    if universe is None:
        if isinstance(m, EuclideanLattice):
            universe = lattice_universe(m.dim)
        elif isinstance(m, TableMetric):
            universe = finite_universe(m.points)
        else:
            universe = INTEGERS
    return FuzzyMetricSpace(_StandardKind(m), tnorm, universe)


def reciprocal_product_space(tnorm: TNorm = PRODUCT) -> FuzzyMetricSpace:
    return FuzzyMetricSpace(_ReciprocalKind(), tnorm, NATURALS)


def ratio_minmax_space(tnorm: TNorm = PRODUCT) -> FuzzyMetricSpace:
    return FuzzyMetricSpace(_RatioKind(), tnorm, NATURALS)


def pathological_space(tnorm: TNorm = None) -> FuzzyMetricSpace:
    from .tnorm import LUKASIEWICZ

    return FuzzyMetricSpace(_PathologicalKind(), tnorm or LUKASIEWICZ, NATURALS)


def ultrametric_space(tnorm: TNorm = MINIMUM) -> FuzzyMetricSpace:
    return FuzzyMetricSpace(_make_ultrametric_kind(), tnorm, NATURALS)


def subspace(space: FuzzyMetricSpace, subset) -> FuzzyMetricSpace:
    """Restrict the universe; values agree with the parent on the subset."""
    pts = sorted(set(subset))
    for p in pts:
        if p not in space.universe:
            raise DomainError(f"point {p!r} is outside the parent universe")
    return space.with_universe(finite_universe(pts))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def threshold_split(d_value, params: ScaleParams) -> tuple:
    """Evaluate both sides of the standard-space closeness threshold.

    Returns (fuzzy_side, metric_side) where fuzzy_side is
    t/(t+d) > 1-r and metric_side is d < rt/(1-r).  The two are provably
    equal; the pair is returned so the equality can be tested.
    """
    d = as_fraction(d_value)
    if d < 0:
        raise DomainError(f"distances are non-negative, got {d}")
    fuzzy = params.t / (params.t + d) > params.threshold
    metric = d < params.r * params.t / (1 - params.r)
    return (fuzzy, metric)


def ball(space: FuzzyMetricSpace, x, params: ScaleParams, window: Window) -> tuple:
    """Window points y with M(x, y, t) > 1 - r."""
    space._check_point(x)
    return space.ball_points(x, params.threshold, params.t, window)


def is_bounded(space: FuzzyMetricSpace, subset, params: ScaleParams) -> bool:
    """Whether every pair of the finite subset is strictly above 1 - r at t."""
    pts = sorted(set(subset))
    for p in pts:
        space._check_point(p)
    b, t = params.threshold, params.t
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            if space._raw(x, y, t) <= b:
                return False
    return True


def union_bound(space: FuzzyMetricSpace, params_a: ScaleParams, params_b: ScaleParams,
                a, b) -> tuple:
    """Bound parameters for the union of two bounded sets.

    Given sets bounded at (rA, tA) and (rB, tB) with anchor points a, b,
    any cross pair satisfies M(x, y, 2tA + tB) >= (1-rA) * M(a,b,tA) * (1-rB)
    computed with the space's t-norm.  Returns (s, t_out) with
    1 - s equal to that lower bound.  Requires a positivity-preserving
    t-norm; otherwise the bound can collapse to 0 and certifies nothing.
    """
    if space.tnorm.positivity_preserving is not True:
        raise UnsupportedOperationError(
            f"t-norm {space.tnorm.name} is not positivity-preserving; "
            "the union bound degenerates"
        )
    mid = space.value(a, b, params_a.t)
    low = space.tnorm(space.tnorm(1 - params_a.r, mid), 1 - params_b.r)
    return (1 - low, 2 * params_a.t + params_b.t)


# -- axiom certification -----------------------------------------------------


def _value_matrices(space, pts, t_values):
    """num/den integer matrices of M over the window, one per t."""
    mats = {}
    for t in t_values:
        vals = [[space._raw(x, y, t) for y in pts] for x in pts]
        mats[t] = (
            vals,
            [[v.numerator for v in row] for row in vals],
            [[v.denominator for v in row] for row in vals],
        )
    return mats


def _scan_product(nA, dA, nB, dB, nC, dC, n, cap):
    out = []
    for i in range(n):
        nAi, dAi = nA[i], dA[i]
        for k in range(i, n):
            nBk, dBk = nB[k], dB[k]
            nc, dc = nC[i][k], dC[i][k]
            for j in range(n):
                if nAi[j] * nBk[j] * dc > nc * dAi[j] * dBk[j]:
                    out.append((i, j, k))
                    if len(out) >= cap:
                        return out
    return out


def _scan_min(nA, dA, nB, dB, nC, dC, n, cap):
    out = []
    for i in range(n):
        nAi, dAi = nA[i], dA[i]
        for k in range(i, n):
            nBk, dBk = nB[k], dB[k]
            nc, dc = nC[i][k], dC[i][k]
            for j in range(n):
                if nAi[j] * dc > nc * dAi[j] and nBk[j] * dc > nc * dBk[j]:
                    out.append((i, j, k))
                    if len(out) >= cap:
                        return out
    return out


def _scan_lukasiewicz(nA, dA, nB, dB, nC, dC, n, cap):
    out = []
    for i in range(n):
        nAi, dAi = nA[i], dA[i]
        for k in range(i, n):
            nBk, dBk = nB[k], dB[k]
            nc, dc = nC[i][k], dC[i][k]
            for j in range(n):
                da, db = dAi[j], dBk[j]
                lhs_num = nAi[j] * db + nBk[j] * da - da * db
                if lhs_num > 0 and lhs_num * dc > nc * da * db:
                    out.append((i, j, k))
                    if len(out) >= cap:
                        return out
    return out


def _scan_generic(rule, vA, vB, vC, n, cap):
    out = []
    for i in range(n):
        rowA = vA[i]
        for k in range(i, n):
            rowB = vB[k]
            c = vC[i][k]
            for j in range(n):
                if rule(rowA[j], rowB[j]) > c:
                    out.append((i, j, k))
                    if len(out) >= cap:
                        return out
    return out


_SCANNERS = {"product": _scan_product, "min": _scan_min, "lukasiewicz": _scan_lukasiewicz}


def check_axioms(space: FuzzyMetricSpace, window: Window, t_grid, violation_cap: int = 3) -> CertReport:
    """Certify the space axioms exactly over a window and a grid of times.

    Checked over all window pairs/triples and all (t, s) from the grid:
    positivity and range of M, the identity-of-indiscernibles in both
    directions, symmetry, and the chain inequality
    M(x,y,t) * M(y,z,s) <= M(x,z,t+s).  Monotonicity of M in t can only
    be sampled on the grid, and continuity in t not at all; both carry
    NOTE lines saying so.
    """
    pts = window.points
    if not pts:
        raise DomainError("window must be non-empty")
    t_list = sorted({as_fraction(t) for t in t_grid})
    if not t_list:
        raise DomainError("t grid must be non-empty")
    if t_list[0] <= 0:
        raise DomainError("t grid values must be positive")
    for p in pts:
        space._check_point(p)

    rep = CertReport(
        "space-axioms",
        space=space.describe(),
        window=window.label(),
        t_grid="{" + ",".join(fmt_value(t) for t in t_list) + "}",
    )
    from .tnorm import is_positivity_preserving

    rep.add_note(
        "tnorm-positivity",
        tnorm=space.tnorm.name,
        positivity_preserving=is_positivity_preserving(space.tnorm),
    )

    sums = sorted({t + s for t in t_list for s in t_list})
    mats = _value_matrices(space, pts, sorted(set(t_list) | set(sums)))
    n = len(pts)

    # (1) range: 0 < M <= 1
    bad = None
    for t in t_list:
        vals = mats[t][0]
        for i in range(n):
            for j in range(i, n):
                v = vals[i][j]
                if not (0 < v <= 1):
                    bad = (pts[i], pts[j], t, v)
                    break
            if bad:
                break
        if bad:
            break
    rep.add_verdict(bad is None, "range",
                    witness=fmt_pair(bad[:2]) if bad else None,
                    t=bad[2] if bad else None, value=bad[3] if bad else None)

    # (2) M = 1 exactly on the diagonal
    bad = None
    for t in t_list:
        vals = mats[t][0]
        for i in range(n):
            if vals[i][i] != 1:
                bad = (pts[i], pts[i], t, vals[i][i])
                break
            for j in range(i + 1, n):
                if vals[i][j] == 1:
                    bad = (pts[i], pts[j], t, vals[i][j])
                    break
            if bad:
                break
        if bad:
            break
    rep.add_verdict(bad is None, "identity-of-indiscernibles",
                    witness=fmt_pair(bad[:2]) if bad else None, t=bad[2] if bad else None)

    # (3) symmetry, evaluated in both argument orders
    bad = None
    for t in t_list:
        for i in range(n):
            for j in range(i + 1, n):
                if space._raw(pts[i], pts[j], t) != space._raw(pts[j], pts[i], t):
                    bad = (pts[i], pts[j], t)
                    break
            if bad:
                break
        if bad:
            break
    rep.add_verdict(bad is None, "symmetry",
                    witness=fmt_pair(bad[:2]) if bad else None, t=bad[2] if bad else None)

    # (4) chain inequality over all triples and (t, s) pairs.  The scan
    # iterates x <= z only; swapping (x, z) and (t, s) together covers the
    # rest by symmetry of M and commutativity of the t-norm.
    scanner = _SCANNERS.get(space.tnorm.name)
    violations = []
    for t in t_list:
        for s in t_list:
            _, nA, dA = mats[t]
            _, nB, dB = mats[s]
            _, nC, dC = mats[t + s]
            if scanner is not None:
                found = scanner(nA, dA, nB, dB, nC, dC, n, violation_cap)
            else:
                found = _scan_generic(space.tnorm.rule, mats[t][0], mats[s][0],
                                      mats[t + s][0], n, violation_cap)
            for (i, j, k) in found:
                lhs = space.tnorm.rule(mats[t][0][i][j], mats[s][0][j][k])
                violations.append((pts[i], pts[j], pts[k], t, s, lhs, mats[t + s][0][i][k]))
            if len(violations) >= violation_cap:
                break
        if len(violations) >= violation_cap:
            break
    if violations:
        x, y, z, t, s, lhs, rhs = violations[0]
        rep.add_fail("chain-inequality", witness=f"{fmt_value(x)}~{fmt_value(y)}~{fmt_value(z)}",
                     t=t, s=s, lhs=lhs, rhs=rhs)
    else:
        rep.add_pass("chain-inequality", triples=n * n * (n + 1) // 2,
                     time_pairs=len(t_list) ** 2)

    # monotonicity in t, on the sampled grid only
    bad = None
    for ta, tb in zip(t_list, t_list[1:]):
        va, vb = mats[ta][0], mats[tb][0]
        for i in range(n):
            for j in range(i + 1, n):
                if va[i][j] > vb[i][j]:
                    bad = (pts[i], pts[j], ta, tb)
                    break
            if bad:
                break
        if bad:
            break
    rep.add_verdict(bad is None, "monotone-in-t",
                    witness=fmt_pair(bad[:2]) if bad else None,
                    t_low=bad[2] if bad else None, t_high=bad[3] if bad else None)
    rep.add_note("monotone-in-t", status="sampled-only", grid_points=len(t_list))
    rep.add_note("continuity-in-t", status="sampled-only")
    return rep


# -- threshold bridge suite ---------------------------------------------------


def threshold_bridge_suite(seed: int = 0, cases: int = 1000) -> CertReport:
    """Randomized agreement suite for the two threshold formulations.

    Draws seeded rational triples (d, r, t), checks that the fuzzy side
    t/(t+d) > 1-r and the metric side d < rt/(1-r) agree exactly, and
    forces exact boundary cases d = rt/(1-r), which must come out
    (false, false) under strictness.
    """
    rng = random.Random(seed)
    rep = CertReport("threshold-bridge", seed=seed, cases=cases)
    disagreements = 0
    first = None
    boundary_bad = None
    for k in range(cases):
        r = Fraction(rng.randint(1, 199), 200)
        t = Fraction(rng.randint(1, 400), rng.randint(1, 20))
        params = ScaleParams(r, t)
        if k % 10 == 0:
            d = params.r * params.t / (1 - params.r)
            got = threshold_split(d, params)
            if got != (False, False):
                boundary_bad = (d, r, t, got)
        else:
            d = Fraction(rng.randint(0, 400), rng.randint(1, 20))
            fuzzy, metric = threshold_split(d, params)
            if fuzzy != metric:
                disagreements += 1
                if first is None:
                    first = (d, r, t)
    rep.add_verdict(disagreements == 0, "agreement", cases=cases,
                    disagreements=disagreements,
                    witness=f"d={fmt_value(first[0])},r={fmt_value(first[1])},t={fmt_value(first[2])}" if first else None)
    rep.add_verdict(boundary_bad is None, "boundary-strictness",
                    witness=None if boundary_bad is None else
                    f"d={fmt_value(boundary_bad[0])},got={boundary_bad[3]}")
    return rep
