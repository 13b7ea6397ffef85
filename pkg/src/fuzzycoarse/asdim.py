"""Dimension witnesses at explicit scales, and everything that moves them.

A witness packages n+1 families of point sets together with the scale
(r, t) at which the families are pairwise-separated and the scale
(r', t') at which the union is uniformly bounded, all relative to a
finite window.  ``verify_witness`` decides the three defining conditions
exactly and reports the extremal pairs.

Nothing here claims anything about a whole infinite space: a witness
certifies a dimension bound at its stated scales on its stated window,
and the bound parameters of growing windows are expected to degrade
when no uniform choice exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .covers import (
    Cover,
    Family,
    covers_window,
    family_max_cross,
    family_min_intra,
    first_lebesgue_violation,
    first_refinement_violation,
    has_lebesgue_pair,
    is_uniformly_bounded_family,
    min_intra_pair,
    missing_points,
    multiplicity,
    scale_multiplicity,
    scale_neighborhood,
)
from .errors import (
    CertificationError,
    DomainError,
    NonArchimedeanViolationError,
    OracleSizeError,
    PreconditionError,
    SearchFailureError,
    UnsupportedOperationError,
)
from .rationals import as_fraction, smallest_int_gt
from .report import CertReport, fmt_pair, fmt_value
from .space import FuzzyMetricSpace, ScaleParams, Window

ONE = Fraction(1)


@dataclass(frozen=True)
class DimensionWitness:
    """n+1 families certifying a dimension bound at fixed scales."""

    n: int
    params: ScaleParams
    bound_params: ScaleParams
    families: tuple
    window: Window

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("dimension bound must be non-negative")
        if len(self.families) != self.n + 1:
            raise DomainError(
                f"witness for n={self.n} needs {self.n + 1} families, "
                f"got {len(self.families)}"
            )

    def all_sets(self) -> tuple:
        out = []
        for fam in self.families:
            out.extend(fam.sets)
        return tuple(out)

    def as_cover(self) -> Cover:
        return Cover(self.families, self.window)


@dataclass(frozen=True)
class ScaleGraphReport:
    """Connected components of the closed-threshold graph at one scale.

    Points are joined when M(x, y, t) >= 1 - r, exactly the pairs a
    separated family may never split across distinct sets.  Every
    component must therefore sit inside a single member set of any
    separated family covering the window, which makes the minimum of M
    inside the largest component a lower-bound obstruction: no bound
    level s with that minimum <= 1 - s can certify a one-family witness.
    """

    params: ScaleParams
    components: tuple
    min_internal: Fraction
    min_internal_pair: tuple
    spanning: bool

    @property
    def largest(self) -> tuple:
        return max(self.components, key=len) if self.components else ()


@dataclass(frozen=True)
class BoundSearchGrid:
    """Search grid for bound parameters: levels 1 - 1/k, times 2^j."""

    max_k: int = 64
    max_j: int = 10

    def levels(self):
        return [Fraction(1, k) for k in range(2, self.max_k + 1)]

    def times(self):
        return [Fraction(2) ** j for j in range(0, self.max_j + 1)]


DEFAULT_GRID = BoundSearchGrid()


def derive_bound_params(space: FuzzyMetricSpace, sets, reference_t,
                        grid: BoundSearchGrid = DEFAULT_GRID,
                        exact_fallback: bool = True) -> ScaleParams:
    """Find a scale at which every given set is internally bounded.

    Scans the grid first (deterministically, strongest level first); if
    the grid has no admissible point and ``exact_fallback`` is set, the
    exact worst intra pair m yields the derived level 1 - r' = m/2.
    With the fallback disabled a grid miss raises ``SearchFailureError``,
    which callers treat as inconclusive rather than as a negative fact.
    """
    fam = Family.of(sets, "bound-search")
    times = grid.times() if space.t_dependent else [as_fraction(reference_t)]
    worst_by_t = {}
    for t in times:
        worst = family_min_intra(space, fam, t)
        if worst is None:
            return ScaleParams(Fraction(1, 2), times[0])
        worst_by_t[t] = worst[0]
    for level in grid.levels():
        for t in times:
            if worst_by_t[t] > level:
                return ScaleParams(1 - level, t)
    if exact_fallback:
        t_best = max(worst_by_t, key=lambda t: (worst_by_t[t], -t))
        m = worst_by_t[t_best]
        return ScaleParams(1 - m / 2, t_best)
    raise SearchFailureError(
        "inconclusive: no bound parameters on the search grid "
        f"(worst intra value {fmt_value(min(worst_by_t.values()))}); "
        "a larger grid or exact fallback may still certify"
    )


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_witness(space: FuzzyMetricSpace, w: DimensionWitness) -> CertReport:
    """Decide the three witness conditions exactly, with extremal pairs.

    Conditions: the families jointly cover the window, each family is
    separated at w.params (cross sup strictly below 1 - r), and every
    member set is internally bounded at w.bound_params (intra values
    strictly above 1 - r').
    """
    rep = CertReport(
        "verify-witness",
        space=space.describe(),
        window=w.window.label(),
        n=w.n,
        r=w.params.r,
        t=w.params.t,
    )
    rep.add_pass("families", count=len(w.families))
    dropped = sum(f.dropped_empty for f in w.families)
    if dropped:
        rep.add_note("empty-sets-dropped", count=dropped)

    missing = missing_points(w.all_sets(), w.window)
    rep.add_verdict(not missing, "cover", missing=len(missing),
                    witness=missing[0] if missing else None)

    for idx, fam in enumerate(w.families):
        label = fam.label or f"family{idx}"
        worst = family_max_cross(space, fam, w.params.t)
        if worst is None:
            rep.add_pass("disjoint", family=label, sup=None, note="vacuous")
        else:
            val, pair, _ = worst
            rep.add_verdict(val < w.params.threshold, "disjoint", family=label,
                            sup=val, pair=fmt_pair(pair), bound=w.params.threshold)

    union = Family.of(w.all_sets(), "union")
    worst = family_min_intra(space, union, w.bound_params.t)
    if worst is None:
        rep.add_pass("bounded", min=None, note="vacuous",
                     r=w.bound_params.r, t=w.bound_params.t)
    else:
        val, pair, _ = worst
        rep.add_verdict(val > w.bound_params.threshold, "bounded", min=val,
                        pair=fmt_pair(pair), bound=w.bound_params.threshold,
                        r=w.bound_params.r, t=w.bound_params.t)
    rep.add_note("scope", statement="certified-at-stated-scales-on-window-only")
    return rep


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def witness_whole_window(space: FuzzyMetricSpace, window: Window, params: ScaleParams,
                         bound_params: ScaleParams = None,
                         grid: BoundSearchGrid = DEFAULT_GRID,
                         exact_fallback: bool = True) -> DimensionWitness:
    """The one-family witness {window}: any window bounded somewhere has
    dimension 0 at every scale.  Bound parameters are searched (grid,
    then exact fallback) unless supplied."""
    if bound_params is None:
        bound_params = derive_bound_params(space, [window.points], params.t,
                                           grid, exact_fallback)
    fam = Family.of([window.points], "whole")
    return DimensionWitness(0, params, bound_params, (fam,), window)


def _require_initial_segment(window: Window):
    if not window.is_contiguous_ints() or window.points[0] != 1:
        raise DomainError("this construction needs a window 1..W of integers")
    return window.points[-1]


def witness_reciprocal_product(params: ScaleParams, window: Window) -> DimensionWitness:
    """Head-plus-singletons witness for the reciprocal-product space.

    N is the smallest positive integer with 1/(N+1) < 1 - r; the single
    family is {1..N} together with every later point as a singleton.
    Any cross pair multiplies to at most 1/(N+1), so the family is
    separated at (r, t); the head is internally bounded at level 1/(2N^2)
    and the singletons vacuously.
    """
    top = _require_initial_segment(window)
    q = 1 / params.threshold
    n_head = int(q) if q.denominator == 1 else math.floor(q)
    sets = [tuple(range(1, min(n_head, top) + 1))]
    sets.extend((m,) for m in range(n_head + 1, top + 1))
    fam = Family.of(sets, "head-singletons")
    bound = ScaleParams(1 - Fraction(1, 2 * n_head * n_head), params.t)
    return DimensionWitness(0, params, bound, (fam,), window)


def reciprocal_head_size(r) -> int:
    """Smallest N with 1/(N+1) strictly below 1 - r."""
    q = 1 / (1 - as_fraction(r))
    return int(q) if q.denominator == 1 else math.floor(q)


@dataclass(frozen=True)
class RatioBlocks:
    """The alternating block/gap structure on 1..W at level 1 - r.

    starts[i] is the first point of block i and widths[i] its extra
    length; blocks are {starts[i] .. starts[i] + widths[i]}, gaps are
    what lies between consecutive blocks.
    """

    starts: tuple
    widths: tuple


def ratio_block_structure(r, top: int) -> RatioBlocks:
    """Greedy minimal blocks for the ratio space, by exact arithmetic.

    With b = 1 - r: the next block start is the smallest integer a
    beyond the previous block with prev/a < b, and the block width is
    the smallest m >= 0 with (a - 1)/(a + m + 1) < b.  Strictness
    matters on both: equality at the ratio must not count.
    """
    b = 1 - as_fraction(r)
    starts, widths = [], []
    prev_top = 1
    a = max(2, smallest_int_gt(Fraction(prev_top) / b))
    while a <= top:
        m = max(0, smallest_int_gt(Fraction(a - 1) / b) - a - 1)
        starts.append(a)
        widths.append(m)
        prev_top = a + m
        if prev_top >= top:
            break
        a = smallest_int_gt(Fraction(prev_top) / b)
    return RatioBlocks(tuple(starts), tuple(widths))


def witness_ratio_minmax(params: ScaleParams, window: Window) -> DimensionWitness:
    """Two-family block/gap witness for the ratio space.

    Blocks are chosen greedily so consecutive blocks have boundary ratio
    strictly below 1 - r while each block's own span stays strictly
    above it; the gaps between blocks inherit the same two facts.
    Blocks and gaps each form one family, jointly covering 1..W, with
    the union bounded at the very same (r, t).  Truncation at the window
    edge keeps the final partial set in its family.
    """
    top = _require_initial_segment(window)
    blocks = ratio_block_structure(params.r, top)
    u_sets = [(1,)]
    v_sets = []
    prev_top = 1
    for a, m in zip(blocks.starts, blocks.widths):
        if a > prev_top + 1:
            v_sets.append(tuple(range(prev_top + 1, min(a - 1, top) + 1)))
        u_sets.append(tuple(range(a, min(a + m, top) + 1)))
        prev_top = a + m
    if prev_top < top:
        v_sets.append(tuple(range(prev_top + 1, top + 1)))
    fam_u = Family.of(u_sets, "blocks")
    fam_v = Family.of(v_sets, "gaps")
    return DimensionWitness(1, params, params, (fam_u, fam_v), window)


def _nonarch_violation(space: FuzzyMetricSpace, window: Window, t: Fraction):
    """First triple with M(x,y,t) * M(y,z,t) > M(x,z,t), or None."""
    pts = window.points
    n = len(pts)
    vals = [[space._raw(x, y, t) for y in pts] for x in pts]
    nums = [[v.numerator for v in row] for row in vals]
    dens = [[v.denominator for v in row] for row in vals]
    use_min = space.tnorm.name == "min"
    for i in range(n):
        ni, di = nums[i], dens[i]
        for k in range(i + 1, n):
            nk, dk = nums[k], dens[k]
            nc, dc = nums[i][k], dens[i][k]
            if use_min:
                for j in range(n):
                    if j == i or j == k:
                        continue
                    if ni[j] * dc > nc * di[j] and nk[j] * dc > nc * dk[j]:
                        return (pts[i], pts[j], pts[k])
            else:
                rule = space.tnorm.rule
                c = vals[i][k]
                for j in range(n):
                    if j == i or j == k:
                        continue
                    if rule(vals[i][j], vals[j][k]) > c:
                        return (pts[i], pts[j], pts[k])
    return None


def witness_ball_partition(space: FuzzyMetricSpace, params: ScaleParams,
                           epsilon, window: Window) -> DimensionWitness:
    """Ball-partition witness for non-Archimedean spaces under min.

    The balls at the slightly enlarged scale (r + eps, t) are pairwise
    equal or disjoint, so the distinct ones partition the window into a
    single family: separated at (r, t) and bounded at (r + eps, t).
    The non-Archimedean inequality is checked exhaustively on the window
    first, and the equal-or-disjoint fact is verified, not assumed.
    """
    eps = as_fraction(epsilon) if epsilon is not None else (1 - params.r) / 2
    rho = params.r + eps
    if not (0 < rho < 1):
        raise DomainError(f"r + eps must stay in (0,1), got {rho}")
    if space.tnorm.name != "min":
        raise UnsupportedOperationError(
            "the ball-partition construction needs the minimum t-norm"
        )
    bad = _nonarch_violation(space, window, params.t)
    if bad is not None:
        raise NonArchimedeanViolationError(
            f"M(x,y,t)*M(y,z,t) <= M(x,z,t) fails at {bad} (t={params.t})"
        )
    enlarged = ScaleParams(rho, params.t)
    seen = {}
    for x in window:
        bp = space.ball_points(x, enlarged.threshold, params.t, window)
        seen.setdefault(bp, x)
    balls = sorted(seen, key=lambda s: s[0])
    counts = {}
    for s in balls:
        for p in s:
            counts[p] = counts.get(p, 0) + 1
    overlap = next((p for p, c in counts.items() if c > 1), None)
    if overlap is not None:
        raise NonArchimedeanViolationError(
            f"distinct balls at (r+eps,t)=({fmt_value(rho)},{fmt_value(params.t)}) "
            f"share the point {overlap}; they must be equal or disjoint"
        )
    fam = Family.of(balls, "ball-partition")
    return DimensionWitness(0, params, enlarged, (fam,), window)


def lift_metric_families(space: FuzzyMetricSpace, families, metric_sep,
                         params: ScaleParams, window: Window,
                         grid: BoundSearchGrid = DEFAULT_GRID) -> DimensionWitness:
    """Re-certify metrically separated families inside a standard space.

    With the canonical intermediate level s = (1+r)/2, a cross distance
    of at least s*t/(1-s) forces M(x, y, t) <= 1 - s < 1 - r, so
    families whose distinct sets keep metric distance >= metric_sep are
    separated at (r, t) as soon as metric_sep >= s*t/(1-s).  Both the
    threshold arithmetic and the claimed separation are verified on the
    window.
    """
    if space.metric is None:
        raise UnsupportedOperationError("a standard-metric space is required")
    sep = as_fraction(metric_sep)
    s = (1 + params.r) / 2
    needed = s * params.t / (1 - s)
    if sep < needed:
        raise CertificationError(
            f"separation {fmt_value(sep)} is below the threshold "
            f"{fmt_value(needed)} required at s={fmt_value(s)}"
        )
    d = space.metric.distance
    fams = tuple(f if isinstance(f, Family) else Family.of(f) for f in families)
    for fam in fams:
        for (i, u), (j, v) in combinations(enumerate(fam.sets), 2):
            for x in u:
                for y in v:
                    if d(x, y) < sep:
                        raise CertificationError(
                            f"sets {i} and {j} of family {fam.label or 'family'} "
                            f"are only {fmt_value(d(x, y))} apart at {fmt_pair((x, y))}, "
                            f"below the claimed {fmt_value(sep)}"
                        )
    bound = derive_bound_params(space, [s for f in fams for s in f.sets],
                                params.t, grid)
    return DimensionWitness(len(fams) - 1, params, bound, fams, window)


def restrict_witness(w: DimensionWitness, subset) -> DimensionWitness:
    """Intersect every member set with a subset; separation and
    boundedness are hereditary, so certification survives."""
    keep = set(subset)
    if not keep <= set(w.window.points):
        raise DomainError("subset must lie inside the witness window")
    fams = tuple(
        Family.of([tuple(p for p in s if p in keep) for s in fam.sets], fam.label)
        for fam in w.families
    )
    return DimensionWitness(w.n, w.params, w.bound_params, fams,
                            Window(p for p in w.window if p in keep))


# ---------------------------------------------------------------------------
# The implication pipeline
# ---------------------------------------------------------------------------


def derived_scale(space: FuzzyMetricSpace, params: ScaleParams) -> ScaleParams:
    """Canonical derived scale: t' = 2t and 1 - r' = ((1-r)*(1-r))/2,
    the t-norm square halved to land strictly inside the constraint."""
    level = space.tnorm(params.threshold, params.threshold) / 2
    if level <= 0:
        raise UnsupportedOperationError(
            f"derived level collapsed to 0 under t-norm {space.tnorm.name}"
        )
    return ScaleParams(1 - level, 2 * params.t)


def multiplicity_cover_from_witness(space: FuzzyMetricSpace, w: DimensionWitness,
                                    params: ScaleParams):
    """Witness at the derived scale -> cover with scale multiplicity <= n+1.

    A ball at (r, t) meeting two sets of one family produces a pair at
    (r', t') = derived_scale(r, t) above the separation bound, which the
    witness forbids; so any ball meets at most one set per family.  The
    witness must be supplied at exactly the derived scale and is
    re-verified before use; the multiplicity is then measured, not
    assumed.
    """
    want = derived_scale(space, params)
    if (w.params.r, w.params.t) != (want.r, want.t):
        raise PreconditionError(
            f"witness must be at the derived scale r={fmt_value(want.r)}, "
            f"t={fmt_value(want.t)}; got r={fmt_value(w.params.r)}, "
            f"t={fmt_value(w.params.t)}"
        )
    vrep = verify_witness(space, w)
    if not vrep.passed:
        raise PreconditionError(
            f"witness fails verification: {vrep.failures()[0].line()}"
        )
    cover = w.as_cover()
    measured = scale_multiplicity(space, cover, params, w.window)
    rep = CertReport("multiplicity-cover", space=space.describe(),
                     window=w.window.label(), r=params.r, t=params.t)
    rep.add_pass("witness-verified", r=w.params.r, t=w.params.t)
    rep.add_verdict(measured <= w.n + 1, "scale-multiplicity",
                    measured=measured, bound=w.n + 1)
    return cover, rep


def lebesgue_cover_from_multiplicity(space: FuzzyMetricSpace, cover: Cover,
                                     params: ScaleParams,
                                     input_bound: ScaleParams = None,
                                     max_multiplicity: int = None,
                                     grid: BoundSearchGrid = DEFAULT_GRID):
    """Low-multiplicity cover at the derived scale -> Lebesgue cover at (r, t).

    Fattening every member set by its derived-scale neighborhood turns a
    ball at (r, t) that meets a set into a subset of that set's
    fattening, so (r, t) becomes a Lebesgue pair; the plain multiplicity
    of the output is at most the input's scale multiplicity.  Both facts
    and the boundedness of the output are verified on the window.
    """
    window = cover.window
    want = derived_scale(space, params)
    measured_in = scale_multiplicity(space, cover, want, window)
    if max_multiplicity is not None and measured_in > max_multiplicity:
        raise PreconditionError(
            f"input scale multiplicity {measured_in} exceeds the expected "
            f"{max_multiplicity} at r={fmt_value(want.r)}, t={fmt_value(want.t)}"
        )
    if not covers_window(cover.all_sets(), window):
        raise PreconditionError("input must cover the window")

    fat_families = tuple(
        Family.of([scale_neighborhood(space, s, want, window) for s in fam.sets],
                  f"N({fam.label})" if fam.label else "N")
        for fam in cover.families
    )
    out = Cover(fat_families, window)
    rep = CertReport("lebesgue-cover", space=space.describe(),
                     window=window.label(), r=params.r, t=params.t)
    rep.add_pass("input-scale-multiplicity", measured=measured_in,
                 r=want.r, t=want.t)
    bad_point = first_lebesgue_violation(space, out, params, window)
    rep.add_verdict(bad_point is None, "lebesgue-pair", r=params.r, t=params.t,
                    witness=bad_point)
    out_mult = multiplicity(out, window)
    rep.add_verdict(out_mult <= measured_in, "multiplicity",
                    measured=out_mult, bound=measured_in)

    if input_bound is not None:
        in_fam = Family.of(cover.all_sets(), "input")
        rep.add_verdict(is_uniformly_bounded_family(space, in_fam, input_bound),
                        "input-bounded", r=input_bound.r, t=input_bound.t)
        level = space.tnorm(space.tnorm(want.threshold, input_bound.threshold),
                            want.threshold)
        out_bound = ScaleParams(1 - level, 2 * want.t + input_bound.t)
    else:
        out_bound = derive_bound_params(space, out.all_sets(), params.t, grid)
    out_fam = Family.of(out.all_sets(), "output")
    rep.add_verdict(is_uniformly_bounded_family(space, out_fam, out_bound),
                    "output-bounded", r=out_bound.r, t=out_bound.t)
    return out, rep


def refinement_via_lebesgue(space: FuzzyMetricSpace, cover_u: Cover, cover_v: Cover,
                            params: ScaleParams) -> CertReport:
    """Bounded cover refines Lebesgue cover, verified set by set.

    Hypotheses checked first: every member of U is internally bounded at
    (r, t) (so each U-set sits inside a ball around any of its points),
    and V has (r, t) as a Lebesgue pair.  The conclusion, that every
    U-set is contained in some V-set, is then verified directly.
    """
    rep = CertReport("refinement", space=space.describe(),
                     window=cover_u.window.label(), r=params.r, t=params.t)
    u_fam = Family.of(cover_u.all_sets(), "refining")
    if not is_uniformly_bounded_family(space, u_fam, params):
        worst = family_min_intra(space, u_fam, params.t)
        raise CertificationError(
            "hypothesis failure: refining cover is not uniformly bounded at "
            f"r={fmt_value(params.r)}, t={fmt_value(params.t)} "
            f"(worst pair {fmt_pair(worst[1])} at {fmt_value(worst[0])})"
        )
    rep.add_pass("refining-cover-bounded", r=params.r, t=params.t)
    if not has_lebesgue_pair(space, cover_v, params, cover_v.window):
        raise CertificationError(
            "hypothesis failure: target cover lacks the Lebesgue pair "
            f"r={fmt_value(params.r)}, t={fmt_value(params.t)}"
        )
    rep.add_pass("target-lebesgue-pair", r=params.r, t=params.t)
    loose = first_refinement_violation(cover_u, cover_v)
    rep.add_verdict(loose is None, "refines",
                    refining_sets=len(cover_u.all_sets()),
                    target_sets=len(cover_v.all_sets()),
                    witness=None if loose is None else
                    f"{fmt_value(loose[0])}..{fmt_value(loose[-1])}(#{len(loose)})")
    return rep


@dataclass(frozen=True)
class PipelineResult:
    witness: DimensionWitness
    multiplicity_cover: Cover
    lebesgue_cover: Cover
    reports: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def refinement_ball_level(space: FuzzyMetricSpace, params: ScaleParams,
                          max_k: int = 64) -> Fraction:
    """Deterministic ball radius rho with (1-rho)*(1-rho) above 1 - r,
    so balls at rho are internally bounded at (r, t) for t-independent
    spaces (pairs inside such a ball chain through the center)."""
    for k in range(2, max_k + 1):
        rho = Fraction(1, k)
        if space.tnorm(1 - rho, 1 - rho) > params.threshold:
            return rho
    raise SearchFailureError(
        f"no ball level with squared complement above {fmt_value(params.threshold)}"
    )


def run_dimension_pipeline(space: FuzzyMetricSpace, params: ScaleParams,
                           window: Window, witness_factory,
                           refiner: Cover = None) -> PipelineResult:
    """Drive the full implication chain down to a refinement certificate.

    The multiplicity step consumes a witness at the scale derived from
    its own target, so the chain derives twice: the final target (r, t)
    needs the multiplicity cover at derived(r, t), which needs the
    witness at derived(derived(r, t)).  ``witness_factory`` is called
    with that scale.  The refining cover defaults to the cover of balls
    at a deterministically chosen smaller radius, which is bounded at
    (r, t) for t-independent spaces.
    """
    level1 = derived_scale(space, params)
    level2 = derived_scale(space, level1)
    w = witness_factory(level2)
    c1, rep1 = multiplicity_cover_from_witness(space, w, level1)
    c2, rep2 = lebesgue_cover_from_multiplicity(
        space, c1, params, input_bound=w.bound_params, max_multiplicity=w.n + 1
    )
    if refiner is None:
        if space.t_dependent:
            raise UnsupportedOperationError(
                "supply a refining cover: the default ball cover is only "
                "bounded at (r, t) for t-independent spaces"
            )
        rho = refinement_ball_level(space, params)
        ball_sets = []
        seen = set()
        for x in window:
            bp = space.ball_points(x, 1 - rho, params.t, window)
            if bp not in seen:
                seen.add(bp)
                ball_sets.append(bp)
        refiner = Cover((Family.of(ball_sets, f"balls@{fmt_value(rho)}"),), window)
    rep3 = refinement_via_lebesgue(space, refiner, c2, params)
    return PipelineResult(w, c1, c2, (rep1, rep2, rep3))


# ---------------------------------------------------------------------------
# Zero-dimension search via refinement
# ---------------------------------------------------------------------------


def zero_dim_witness_via_refinement(space: FuzzyMetricSpace, params: ScaleParams,
                                    window: Window, candidate: Cover = None,
                                    grid: BoundSearchGrid = DEFAULT_GRID) -> DimensionWitness:
    """A multiplicity-1 cover refined by slightly smaller balls is a
    one-family witness.

    Distinct members of such a cover can never contain points within the
    smaller ball threshold of each other (the ball around either point
    sits inside one member), so the members are separated at (r, t).
    Without a supplied candidate the finest admissible cover is used:
    the components of the ball-overlap relation.  Boundedness is
    searched on the grid only; a miss raises ``SearchFailureError`` and
    means inconclusive, never a negative certificate.
    """
    inner = ScaleParams((1 + params.r) / 2, params.t)  # 1 - r' = (1-r)/2 < 1-r
    ball_of = {
        x: space.ball_points(x, inner.threshold, params.t, window) for x in window
    }
    if candidate is None:
        parent = {x: x for x in window}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for x, bp in ball_of.items():
            rx = find(x)
            for y in bp:
                ry = find(y)
                if ry != rx:
                    parent[ry] = rx
        comps = {}
        for x in window:
            comps.setdefault(find(x), []).append(x)
        sets = [tuple(sorted(v)) for v in comps.values()]
        sets.sort(key=lambda s: s[0])
    else:
        sets = [s for s in candidate.all_sets() if s]
        if multiplicity(candidate, window) > 1:
            raise CertificationError("candidate cover has multiplicity above 1")
        if not covers_window(sets, window):
            raise CertificationError("candidate cover misses window points")
        fsets = [frozenset(s) for s in sets]
        for x, bp in ball_of.items():
            if not any(all(p in fs for p in bp) for fs in fsets):
                raise CertificationError(
                    f"ball of {fmt_value(x)} at the inner level "
                    f"{fmt_value(inner.threshold)} fits in no candidate member"
                )
    bound = derive_bound_params(space, sets, params.t, grid, exact_fallback=False)
    fam = Family.of(sets, "refined-partition")
    return DimensionWitness(0, params, bound, (fam,), window)


# ---------------------------------------------------------------------------
# Scale graph and the brute-force oracle
# ---------------------------------------------------------------------------


def scale_graph(space: FuzzyMetricSpace, params: ScaleParams, window: Window) -> ScaleGraphReport:
    """Components of the graph joining x, y when M(x, y, t) >= 1 - r."""
    pts = window.points
    n = len(pts)
    b, t = params.threshold, params.t
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    if space.radially_monotone:
        # an edge over a span forces every adjacent edge inside the span,
        # so adjacent pairs decide connectivity
        for i in range(n - 1):
            if space._raw(pts[i], pts[i + 1], t) >= b:
                union(i, i + 1)
    elif space.coordinate_decreasing:
        cap = 1 / b  # edges need x*y <= cap
        for i, x in enumerate(pts):
            hi = cap / x
            j = i + 1
            while j < n and pts[j] <= hi:
                union(i, j)
                j += 1
    else:
        for i in range(n):
            for j in range(i + 1, n):
                if space._raw(pts[i], pts[j], t) >= b:
                    union(i, j)

    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(pts[i])
    components = tuple(sorted((tuple(v) for v in groups.values()), key=lambda c: c[0]))
    largest = max(components, key=len) if components else ()
    worst = min_intra_pair(space, largest, t) if len(largest) >= 2 else None
    if worst is None:
        min_internal, pair = ONE, (largest[0], largest[0]) if largest else None
    else:
        min_internal, pair = worst
    return ScaleGraphReport(params, components, min_internal, pair,
                            spanning=len(components) == 1 and n > 0)


def _partitions(items):
    """All set partitions of a list, deterministically ordered."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _chromatic_number(n_nodes: int, conflicts) -> int:
    """Exact chromatic number of a tiny conflict graph."""
    if n_nodes == 0:
        return 0

    def colorable(k):
        colors = [-1] * n_nodes

        def assign(i):
            if i == n_nodes:
                return True
            used = {colors[j] for j in range(i) if conflicts[i][j]}
            for c in range(min(k, i + 1)):
                if c not in used:
                    colors[i] = c
                    if assign(i + 1):
                        return True
            colors[i] = -1
            return False

        return assign(0)

    for k in range(1, n_nodes + 1):
        if colorable(k):
            return k
    return n_nodes


def oracle_min_families(space: FuzzyMetricSpace, params: ScaleParams,
                        bound_params: ScaleParams, window: Window,
                        max_points: int = 10) -> int:
    """Brute-force minimum number of separated families covering a tiny window.

    Enumerates every set partition of the window into internally bounded
    blocks (at bound_params) and, for each, the minimum number of
    families needed so no family holds two blocks with a cross pair at
    or above 1 - r; that is a chromatic number of the block conflict
    graph.  The result speaks only about the fixed scales given; it is
    deliberately independent of every fast path in the library and
    evaluates M directly.
    """
    pts = list(window.points)
    n = len(pts)
    if n == 0:
        raise DomainError("oracle window must be non-empty")
    if n > max_points:
        raise OracleSizeError(
            f"oracle window limited to {max_points} points, got {n}"
        )
    for p in pts:
        space._check_point(p)

    sep_level, t_sep = params.threshold, params.t
    bnd_level, t_bnd = bound_params.threshold, bound_params.t
    m_sep = [[space.value(x, y, t_sep) for y in pts] for x in pts]
    m_bnd = [[space.value(x, y, t_bnd) for y in pts] for x in pts]
    index = {p: i for i, p in enumerate(pts)}

    bounded_cache = {}

    def block_bounded(block):
        key = tuple(block)
        if key not in bounded_cache:
            idxs = [index[p] for p in block]
            bounded_cache[key] = all(
                m_bnd[i][j] > bnd_level
                for a, i in enumerate(idxs)
                for j in idxs[a + 1:]
            )
        return bounded_cache[key]

    def blocks_conflict(b1, b2):
        return any(m_sep[index[x]][index[y]] >= sep_level for x in b1 for y in b2)

    best = n  # singleton blocks always exist and need at most n families
    for part in _partitions(pts):
        blocks = [tuple(sorted(b)) for b in part]
        if not all(block_bounded(b) for b in blocks):
            continue
        k = len(blocks)
        conflicts = [[False] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if blocks_conflict(blocks[i], blocks[j]):
                    conflicts[i][j] = conflicts[j][i] = True
        best = min(best, _chromatic_number(k, conflicts))
        if best == 1:
            break
    return best
