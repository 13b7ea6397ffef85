"""Families and covers of point sets, with scale predicates.

All sets are finite and live inside a window, so suprema and infima are
maxima and minima and every predicate is decided exactly.

The extremal helpers (``family_max_cross``, ``family_min_intra``) are
where the library earns its running time: for spaces whose closeness
rule shrinks as pairs nest outward on the sorted line, the worst cross
pair between differently-labeled points is always realized by two
points adjacent in the sorted support, and the worst intra pair of a
set by its endpoints.  For the reciprocal-product rule, which decreases
in each coordinate, the worst cross pair is realized by the two
smallest set minima.  Brute force remains available and the fast paths
are checked against it in the test suite.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PreconditionError, UnsupportedOperationError
from .report import CertReport
from .space import (
    FuzzyMetricSpace,
    ScaleParams,
    Window,
    materialize_region,
    region_intersects,
    region_within,
)

ONE = Fraction(1)


def _clean_set(s) -> tuple:
    return tuple(sorted(set(s)))


@dataclass(frozen=True)
class Family:
    """A labeled list of non-empty finite point sets.

    Empty member sets are dropped on construction; how many were dropped
    is kept so reports can say so.
    """

    sets: tuple
    label: str = ""
    dropped_empty: int = 0

    @classmethod
    def of(cls, sets, label: str = "") -> "Family":
        cleaned = [_clean_set(s) for s in sets]
        kept = tuple(s for s in cleaned if s)
        return cls(kept, label, len(cleaned) - len(kept))

    def support(self) -> tuple:
        pts = set()
        for s in self.sets:
            pts.update(s)
        return tuple(sorted(pts))

    def __len__(self):
        return len(self.sets)


@dataclass(frozen=True)
class Cover:
    """Families whose union is meant to cover a window."""

    families: tuple
    window: Window

    @classmethod
    def of(cls, families, window: Window) -> "Cover":
        return cls(tuple(families), window)

    def all_sets(self) -> tuple:
        out = []
        for fam in self.families:
            out.extend(fam.sets)
        return tuple(out)

    def set_labels(self) -> tuple:
        out = []
        for fam in self.families:
            base = fam.label or "family"
            for i, _ in enumerate(fam.sets):
                out.append(f"{base}[{i}]")
        return tuple(out)


def covers_window(sets, window: Window) -> bool:
    seen = set()
    for s in sets:
        seen.update(s)
    return all(p in seen for p in window)


def missing_points(sets, window: Window) -> tuple:
    seen = set()
    for s in sets:
        seen.update(s)
    return tuple(p for p in window if p not in seen)


# ---------------------------------------------------------------------------
# Extremal pair machinery
# ---------------------------------------------------------------------------


def min_intra_pair(space: FuzzyMetricSpace, s: tuple, t: Fraction):
    """(value, pair) minimizing M over pairs within one set; None if |s| < 2."""
    if len(s) < 2:
        return None
    if space.radially_monotone:
        return (space._raw(s[0], s[-1], t), (s[0], s[-1]))
    if space.coordinate_decreasing:
        return (space._raw(s[-2], s[-1], t), (s[-2], s[-1]))
    best = None
    for i, x in enumerate(s):
        for y in s[i + 1:]:
            v = space._raw(x, y, t)
            if best is None or v < best[0]:
                best = (v, (x, y))
    return best


def max_cross_pair(space: FuzzyMetricSpace, u: tuple, v: tuple, t: Fraction):
    """(value, pair) maximizing M over the cross product of two sorted sets."""
    su = set(u)
    shared = sorted(su.intersection(v))
    if shared:
        p = shared[0]
        return (ONE, (p, p))
    if space.radially_monotone:
        small, big = (u, v) if len(u) <= len(v) else (v, u)
        best = None
        for p in small:
            i = bisect_left(big, p)
            for q in (big[i - 1] if i > 0 else None, big[i] if i < len(big) else None):
                if q is None:
                    continue
                val = space._raw(p, q, t)
                if best is None or val > best[0]:
                    best = (val, (min(p, q), max(p, q)))
        return best
    if space.coordinate_decreasing:
        p, q = u[0], v[0]
        return (space._raw(p, q, t), (min(p, q), max(p, q)))
    best = None
    for p in u:
        for q in v:
            val = space._raw(p, q, t)
            if best is None or val > best[0]:
                best = (val, (p, q))
    return best


def family_min_intra(space: FuzzyMetricSpace, family: Family, t: Fraction):
    """(value, pair, set_index) minimizing M within any one member set."""
    best = None
    for idx, s in enumerate(family.sets):
        cur = min_intra_pair(space, s, t)
        if cur is not None and (best is None or cur[0] < best[0]):
            best = (cur[0], cur[1], idx)
    return best


def family_max_cross(space: FuzzyMetricSpace, family: Family, t: Fraction):
    """(value, pair, (i, j)) maximizing M across distinct member sets."""
    sets = family.sets
    if len(sets) < 2:
        return None
    labeled = sorted((p, i) for i, s in enumerate(sets) for p in s)
    for (p, i), (q, j) in zip(labeled, labeled[1:]):
        if p == q and i != j:
            return (ONE, (p, p), (min(i, j), max(i, j)))
    if space.radially_monotone:
        best = None
        for (p, i), (q, j) in zip(labeled, labeled[1:]):
            if i == j:
                continue
            val = space._raw(p, q, t)
            if best is None or val > best[0]:
                best = (val, (p, q), (min(i, j), max(i, j)))
        return best
    if space.coordinate_decreasing:
        minima = sorted((s[0], i) for i, s in enumerate(sets))
        (p, i), (q, j) = minima[0], minima[1]
        return (space._raw(p, q, t), (min(p, q), max(p, q)), (min(i, j), max(i, j)))
    best = None
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            val, pair = max_cross_pair(space, sets[i], sets[j], t)
            if best is None or val > best[0]:
                best = (val, pair, (i, j))
    return best


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def is_uniformly_bounded_family(space: FuzzyMetricSpace, family: Family,
                                params: ScaleParams) -> bool:
    """Every intra-set pair strictly above 1 - r at time t."""
    worst = family_min_intra(space, family, params.t)
    return worst is None or worst[0] > params.threshold


def cross_sup(space: FuzzyMetricSpace, u, v, t) -> Fraction:
    """Maximum of M over the cross product of two non-empty finite sets."""
    from .rationals import as_fraction

    us, vs = _clean_set(u), _clean_set(v)
    if not us or not vs:
        raise DomainError("cross supremum over an empty set is undefined")
    ft = as_fraction(t)
    if ft <= 0:
        raise DomainError(f"t must be positive, got {ft}")
    for p in us + vs:
        space._check_point(p)
    return max_cross_pair(space, us, vs, ft)[0]


def is_scale_disjoint(space: FuzzyMetricSpace, family: Family,
                      params: ScaleParams) -> bool:
    """Every pair of distinct member sets has cross sup strictly below 1 - r."""
    worst = family_max_cross(space, family, params.t)
    return worst is None or worst[0] < params.threshold


def scale_neighborhood(space: FuzzyMetricSpace, u, params: ScaleParams,
                       window: Window) -> tuple:
    """Window points within strict threshold of some point of u."""
    us = _clean_set(u)
    if not us:
        return ()
    b, t = params.threshold, params.t
    regions = [space.region(p, b, t) for p in us]
    if all(r is not None for r in regions):
        intervals = []
        extras = set()
        for r in regions:
            intervals.extend(r[0])
            extras.update(r[1])
        return materialize_region((tuple(intervals), tuple(sorted(extras))), window)
    out = []
    for x in window:
        if any(space._raw(x, p, t) > b for p in us):
            out.append(x)
    return tuple(out)


def neighborhood_family(space: FuzzyMetricSpace, family: Family, params: ScaleParams,
                        window: Window, input_bound: ScaleParams):
    """Fatten every member set by its strict-threshold neighborhood.

    If the input family is uniformly bounded at ``input_bound``, the
    output is uniformly bounded at the derived scale:
    1 - s = (1-r) * (1-r') * (1-r) at time 2t + t', evaluated with the
    space's t-norm.  Both facts are re-verified, not assumed.  Covering
    is preserved because each set sits inside its own neighborhood.
    """
    if space.tnorm.positivity_preserving is not True:
        raise UnsupportedOperationError(
            f"t-norm {space.tnorm.name} is not positivity-preserving; "
            "the fattening bound degenerates"
        )
    rep = CertReport("neighborhood-family", space=space.describe(),
                     window=window.label(), r=params.r, t=params.t)
    ok_in = is_uniformly_bounded_family(space, family, input_bound)
    rep.add_verdict(ok_in, "input-bounded", r=input_bound.r, t=input_bound.t)

    fat = Family.of(
        [scale_neighborhood(space, s, params, window) for s in family.sets],
        label=f"N({family.label})" if family.label else "N",
    )
    level = space.tnorm(space.tnorm(params.threshold, input_bound.threshold),
                        params.threshold)
    t_out = 2 * params.t + input_bound.t
    if level <= 0:
        raise UnsupportedOperationError("derived boundedness level collapsed to 0")
    derived = ScaleParams(1 - level, t_out)
    ok_out = is_uniformly_bounded_family(space, fat, derived)
    rep.add_verdict(ok_out, "output-bounded", level=level, t_out=t_out)

    if covers_window(family.sets, window):
        rep.add_verdict(covers_window(fat.sets, window), "cover-preserved")
    return fat, rep


def multiplicity(cover: Cover, window: Window) -> int:
    """Largest number of member sets containing any one window point."""
    counts = {}
    for s in cover.all_sets():
        for p in s:
            if p in window:
                counts[p] = counts.get(p, 0) + 1
    return max(counts.values(), default=0)


def scale_multiplicity(space: FuzzyMetricSpace, cover: Cover, params: ScaleParams,
                       window: Window) -> int:
    """Largest number of member sets met by any ball at scale (r, t)."""
    sets = cover.all_sets()
    tuples = [s for s in sets]
    fsets = [frozenset(s) for s in sets]
    b, t = params.threshold, params.t
    best = 0
    for x in window:
        reg = space.region(x, b, t)
        if reg is not None:
            hits = sum(
                1 for st, fs in zip(tuples, fsets) if region_intersects(reg, fs, st)
            )
        else:
            bp = space.ball_points(x, b, t, window)
            hits = sum(1 for fs in fsets if any(p in fs for p in bp))
        if hits > best:
            best = hits
    return best


def first_lebesgue_violation(space: FuzzyMetricSpace, cover: Cover,
                             params: ScaleParams, window: Window):
    """First window point whose ball fits in no member set, or None."""
    sets = cover.all_sets()
    if not covers_window(sets, window):
        raise PreconditionError(
            f"cover misses window points, e.g. {missing_points(sets, window)[:3]}"
        )
    fsets = [frozenset(s) for s in sets]
    owners = {}
    for idx, s in enumerate(sets):
        for p in s:
            owners.setdefault(p, []).append(idx)
    b, t = params.threshold, params.t
    for x in window:
        reg = space.region(x, b, t)
        found = False
        for idx in owners[x]:
            if reg is not None:
                if region_within(reg, window, fsets[idx], sets[idx]):
                    found = True
                    break
            else:
                bp = space.ball_points(x, b, t, window)
                if all(p in fsets[idx] for p in bp):
                    found = True
                    break
        if not found:
            return x
    return None


def has_lebesgue_pair(space: FuzzyMetricSpace, cover: Cover, params: ScaleParams,
                      window: Window) -> bool:
    """Whether every window point's ball fits inside one member set."""
    return first_lebesgue_violation(space, cover, params, window) is None


def first_refinement_violation(cover_v: Cover, cover_u: Cover):
    """First member set of V contained in no member set of U, or None."""
    u_sets = cover_u.all_sets()
    u_frozen = [frozenset(s) for s in u_sets]
    owners = {}
    for idx, s in enumerate(u_sets):
        for p in s:
            owners.setdefault(p, []).append(idx)
    for s in cover_v.all_sets():
        if not s:
            continue
        anchor = s[0]
        if not any(all(p in u_frozen[idx] for p in s) for idx in owners.get(anchor, ())):
            return s
    return None


def refines(cover_v: Cover, cover_u: Cover) -> bool:
    """Whether every member set of V is contained in some member set of U."""
    return first_refinement_violation(cover_v, cover_u) is None
