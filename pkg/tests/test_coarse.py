from fractions import Fraction

import pytest

from fuzzycoarse import (
    LUKASIEWICZ,
    ClosenessCert,
    CoarseMap,
    DimensionWitness,
    Family,
    ModulusEntry,
    ScaleParams,
    affine_map,
    check_close,
    check_coarsely_onto,
    check_effectively_proper,
    check_uniformly_expansive,
    coarse_inverse,
    compose_closeness,
    compose_maps,
    grid_window,
    identity_map,
    inclusion_map,
    int_window,
    lift_metric_families,
    standard_space,
    table_map,
    transport_witness,
    ultrametric_space,
    verify_witness,
)
from fuzzycoarse.space import RATIONALS, FuzzyMetricSpace
from fuzzycoarse.errors import (
    CertificationError,
    DerivationError,
    PreconditionError,
)

F = Fraction
STD = standard_space()
STDQ = standard_space(universe=RATIONALS)


def entry(level_in, t_in, level_out, t_out):
    return ModulusEntry(F(level_in), F(t_in), F(level_out), F(t_out))


# ---------------------------------------------------------------------------
# expansive / proper / onto / close
# ---------------------------------------------------------------------------


def test_identity_modulus_passes():
    f = identity_map(expansive=(entry("1/2", 1, "1/2", 1),),
                     proper=(entry("1/2", 1, "1/2", 1),))
    assert check_uniformly_expansive(STD, STD, f, int_window(-10, 10)).passed
    assert check_effectively_proper(STD, STD, f, int_window(-10, 10)).passed


def test_inclusion_into_rationals_passes():
    f = inclusion_map(expansive=(entry("1/2", 1, "1/2", 1),))
    assert check_uniformly_expansive(STD, STDQ, f, int_window(-10, 10)).passed


def test_doubling_map_moduli():
    """d(2x, 2y) = 2 d(x, y), so doubling time exactly compensates."""
    f = affine_map(2, 0,
                   expansive=(entry("1/2", 1, "1/2", 2),),
                   proper=(entry("1/2", 2, "1/2", 1),))
    w = int_window(-25, 25)
    assert check_uniformly_expansive(STD, STD, f, w).passed
    assert check_effectively_proper(STD, STD, f, w).passed
    # the same entry without the time doubling fails
    bad = affine_map(2, 0, expansive=(entry("1/2", 1, "1/2", 1),))
    rep = check_uniformly_expansive(STD, STD, bad, w)
    assert not rep.passed


def test_constant_map_fails_properness():
    from fuzzycoarse import Window

    const = table_map({0: 0, 100: 0}, proper=(entry("1/2", 1, "1/2", 1),))
    rep = check_effectively_proper(STD, STD, const, Window([0, 100]))
    assert not rep.passed
    fail = rep.failures()[0]
    assert dict(fail.details)["witness"] == "0~100"


def test_empty_modulus_rejected():
    with pytest.raises(PreconditionError):
        check_uniformly_expansive(STD, STD, identity_map(), int_window(0, 3))
    with pytest.raises(PreconditionError):
        check_effectively_proper(STD, STD, identity_map(), int_window(0, 3))


def test_onto_examples():
    w_ints = int_window(-5, 5)
    ident = identity_map(domain=w_ints)
    assert check_coarsely_onto(STD, ident, ScaleParams(F(1, 10), 1), w_ints).passed

    grid = grid_window(-5, 5, F(1, 2))
    incl = inclusion_map(domain=w_ints)
    assert check_coarsely_onto(STDQ, incl, ScaleParams(F(1, 2), 1), grid).passed

    doubling = affine_map(2, 0, domain=int_window(-5, 5))
    rep = check_coarsely_onto(STD, doubling, ScaleParams(F(1, 2), 1), int_window(-9, 9))
    assert not rep.passed  # threshold 1 cannot reach odd points
    rep2 = check_coarsely_onto(STD, doubling, ScaleParams(F(1, 2), 2), int_window(-9, 9))
    assert rep2.passed  # threshold 2 reaches the odd points

    with pytest.raises(PreconditionError):
        check_coarsely_onto(STD, identity_map(), ScaleParams(F(1, 2), 1), w_ints)


def test_close_examples():
    w = int_window(-10, 10)
    f = identity_map()
    assert check_close(STD, f, f, ScaleParams(F(1, 100), 1), w).passed
    g = affine_map(1, 1)
    assert check_close(STD, f, g, ScaleParams(F(1, 2), 2), w).passed
    rep = check_close(STD, f, g, ScaleParams(F(1, 2), 1), w)
    assert not rep.passed  # boundary: 1/2 is not strictly above 1/2
    # the relation is symmetric at identical parameters
    for params in (ScaleParams(F(1, 2), 2), ScaleParams(F(1, 2), 1)):
        assert check_close(STD, f, g, params, w).passed == \
            check_close(STD, g, f, params, w).passed


# ---------------------------------------------------------------------------
# closeness composition
# ---------------------------------------------------------------------------


def test_compose_closeness_arithmetic():
    cert_fg = ClosenessCert(ScaleParams(F(1, 2), 1))
    cert_gg = ClosenessCert(ScaleParams(F(1, 2), 1))
    got = compose_closeness(STD, cert_fg, cert_gg, entry("1/2", 1, "1/2", 4))
    assert got.params.threshold == F(1, 4)
    assert got.params.t == 5

    ult = ultrametric_space()  # minimum t-norm
    got2 = compose_closeness(ult, cert_fg, cert_gg, entry("1/2", 1, "1/3", 4))
    assert got2.params.threshold == F(1, 3)


def test_compose_closeness_validation():
    cert = ClosenessCert(ScaleParams(F(1, 2), 1))
    with pytest.raises(DerivationError):
        compose_closeness(STD, cert, cert, entry("1/2", 2, "1/2", 4))  # wrong time
    with pytest.raises(DerivationError):
        compose_closeness(STD, cert, cert, entry("3/4", 1, "1/2", 4))  # level too high
    with pytest.raises(CertificationError):
        compose_closeness(STD, cert, cert, entry("1/2", 1, "0", 4))  # dead output


def test_compose_closeness_recheck_on_window():
    """The certificate arithmetic, re-verified pointwise on a window."""
    w = int_window(-10, 10)
    f, f2 = identity_map(), affine_map(1, 1)
    g = affine_map(2, 0, expansive=(entry("1/2", 2, "1/2", 4),))
    cert_fg_params = ScaleParams(F(1, 2), 2)
    assert check_close(STD, f, f2, cert_fg_params, w).passed
    cert = compose_closeness(STD, ClosenessCert(cert_fg_params),
                             ClosenessCert(ScaleParams(F(1, 2), 1)),
                             entry("1/2", 2, "1/2", 4))
    gf = compose_maps(f, g, w)
    gf2 = compose_maps(f2, g, w)
    assert check_close(STD, gf, gf2, cert.params, w).passed


# ---------------------------------------------------------------------------
# metric agreement at the canonical level
# ---------------------------------------------------------------------------


def test_checks_match_metric_formulation_at_half():
    """Level-1/2 entries say exactly 'd <= t implies image d <= t-out',
    and the onto check at r = 1/2 is 'every target point strictly within
    t of the image'; verified against direct metric scans."""
    w = int_window(-12, 12)
    maps = [identity_map(), affine_map(2, 0), affine_map(3, 1), table_map({x: 0 for x in w})]
    times = [(1, 1), (1, 2), (2, 1), (3, 7)]
    for m in maps:
        for t_in, t_out in times:
            e = entry("1/2", t_in, "1/2", t_out)
            fuzzy_exp = check_uniformly_expansive(
                STD, STD, CoarseMap(m.rule, m.fn, expansive=(e,)), w).passed
            metric_exp = all(
                abs(m.fn(x) - m.fn(y)) <= t_out
                for x in w for y in w if abs(x - y) <= t_in
            )
            assert fuzzy_exp == metric_exp, (m.rule, t_in, t_out)
            fuzzy_prop = check_effectively_proper(
                STD, STD, CoarseMap(m.rule, m.fn, proper=(e,)), w).passed
            metric_prop = all(
                abs(x - y) <= t_out
                for x in w for y in w if abs(m.fn(x) - m.fn(y)) <= t_in
            )
            assert fuzzy_prop == metric_prop, (m.rule, t_in, t_out)
    wy = int_window(-12, 12)
    for m in maps:
        for t in (1, 2, 5, 40):
            carrier = CoarseMap(m.rule, m.fn, domain=w)
            fuzzy_onto = check_coarsely_onto(
                STD, carrier, ScaleParams(F(1, 2), t), wy).passed
            image = {m.fn(x) for x in w}
            metric_onto = all(
                any(abs(a - y) < t for a in image) for y in wy
            )
            assert fuzzy_onto == metric_onto, (m.rule, t)


# ---------------------------------------------------------------------------
# coarse inverse
# ---------------------------------------------------------------------------


def test_inverse_of_identity():
    w = int_window(-6, 6)
    f = identity_map(domain=w, proper=(entry("1/2", 1, "1/2", 1),))
    g, rep = coarse_inverse(STD, STD, f, ScaleParams(F(1, 2), 1), w, w)
    assert rep.passed
    assert all(g.apply(x) == x for x in w)


def test_inverse_of_inclusion_picks_smallest():
    wx = int_window(-5, 5)
    wy = grid_window(-5, 5, F(1, 2))
    f = inclusion_map(domain=wx, proper=(entry("1/2", 1, "1/2", 1),))
    g, rep = coarse_inverse(STD, STDQ, f, ScaleParams(F(1, 2), 1), wy, wx)
    assert rep.passed
    assert g.apply(F(1, 2)) == 0  # both 0 and 1 qualify; smallest wins
    assert g.apply(F(-1, 2)) == -1
    assert g.apply(3) == 3


def test_inverse_requires_onto():
    f = affine_map(2, 0, domain=int_window(-5, 5), proper=(entry("1/2", 1, "1/2", 1),))
    with pytest.raises(PreconditionError):
        coarse_inverse(STD, STD, f, ScaleParams(F(1, 2), 1), int_window(-9, 9),
                       int_window(-5, 5))


def test_inverse_requires_matching_proper_entry():
    w = int_window(-4, 4)
    f = identity_map(domain=w, proper=(entry("1/2", 7, "1/2", 7),))
    with pytest.raises(DerivationError):
        coarse_inverse(STD, STD, f, ScaleParams(F(1, 2), 1), w, w)


# ---------------------------------------------------------------------------
# witness transport
# ---------------------------------------------------------------------------


def block_witness_factory(space, window):
    """Two families of 100-blocks on 0..399, lifted at the requested scale."""
    fam_a = Family.of([tuple(range(0, 100)), tuple(range(200, 300))], "A")
    fam_b = Family.of([tuple(range(100, 200)), tuple(range(300, 400))], "B")

    def factory(scale):
        s = (1 + scale.r) / 2
        sep = s * scale.t / (1 - s) + 1
        return lift_metric_families(space, [fam_a, fam_b], sep, scale, window)

    return factory


TRANSPORT_MODULI = dict(
    expansive=(entry("1/2", 128, "1/2", 128),),
    proper=(entry("1/8", 3, "1/2", 21),),
    onto_params=ScaleParams(F(1, 2), 1),
)


def test_transport_through_identity():
    wx = int_window(0, 399)
    f = identity_map(domain=wx, **TRANSPORT_MODULI)
    out, rep = transport_witness(
        STD, STD, f, None, ScaleParams(F(1, 3), 1), wx,
        witness_factory=block_witness_factory(STD, wx),
    )
    assert rep.passed
    assert out.n == 1
    assert verify_witness(STD, out).passed
    # threshold 1 on integers fattens by nothing: families unchanged
    src = block_witness_factory(STD, wx)(ScaleParams(F(1, 2), 21))
    assert tuple(f_.sets for f_ in out.families) == tuple(f_.sets for f_ in src.families)


def test_transport_inclusion_into_sampled_rationals():
    wx = int_window(0, 399)
    wy = grid_window(0, 399, F(1, 2))
    f = inclusion_map(domain=wx, **TRANSPORT_MODULI)
    out, rep = transport_witness(
        STD, STDQ, f, None, ScaleParams(F(1, 3), 1), wy,
        witness_factory=block_witness_factory(STD, wx),
    )
    assert rep.passed
    assert out.n == 1
    assert verify_witness(STDQ, out).passed
    assert F(1, 2) in out.families[0].sets[0]  # fattened blocks pick up half-points


def test_transport_singletons_through_doubling():
    wx = int_window(0, 200)
    sparse = [0, 100, 200]
    wy = int_window(-1, 1).points + int_window(199, 201).points + int_window(399, 401).points
    from fuzzycoarse import Window

    wy = Window(wy)
    f = affine_map(
        2, 0, domain=Window(sparse),
        expansive=(entry("1/2", 1, "1/2", 2),),
        proper=(entry("1/8", 7, "1/2", 24),),
        onto_params=ScaleParams(F(1, 2), 3),
    )

    def factory(scale):
        fam = Family.of([[p] for p in sparse], "points")
        return DimensionWitness(0, scale, ScaleParams(F(1, 2), 1), (fam,), Window(sparse))

    out, rep = transport_witness(STD, STD, f, None, ScaleParams(F(1, 3), 1), wy,
                                 witness_factory=factory)
    assert rep.passed
    assert out.n == 0
    assert out.families[0].sets == ((-1, 0, 1), (199, 200, 201), (399, 400, 401))
    assert verify_witness(STD, out).passed


def test_transport_missing_entries_raise():
    wx = int_window(0, 399)
    no_proper = identity_map(domain=wx, expansive=TRANSPORT_MODULI["expansive"],
                             onto_params=ScaleParams(F(1, 2), 1))
    with pytest.raises(DerivationError) as err:
        transport_witness(STD, STD, no_proper, None, ScaleParams(F(1, 3), 1), wx,
                          witness_factory=block_witness_factory(STD, wx))
    assert "properness" in str(err.value)

    no_onto = identity_map(domain=wx, expansive=TRANSPORT_MODULI["expansive"],
                           proper=TRANSPORT_MODULI["proper"])
    with pytest.raises(DerivationError):
        transport_witness(STD, STD, no_onto, None, ScaleParams(F(1, 3), 1), wx)


def test_transport_degenerate_scan_refused():
    """Under the Lukasiewicz norm the scan chain is constant zero."""
    from fuzzycoarse.space import EuclideanLine, INTEGERS, _StandardKind

    luk_space = FuzzyMetricSpace(_StandardKind(EuclideanLine()), LUKASIEWICZ, INTEGERS)
    wx = int_window(0, 20)
    f = identity_map(domain=wx, **TRANSPORT_MODULI)
    with pytest.raises(DerivationError) as err:
        transport_witness(STD, luk_space, f, None, ScaleParams(F(1, 3), 1), wx,
                          witness_factory=block_witness_factory(STD, wx))
    assert "constant" in str(err.value)


def test_transport_wrong_scale_witness_rejected():
    wx = int_window(0, 399)
    f = identity_map(domain=wx, **TRANSPORT_MODULI)
    wrong = block_witness_factory(STD, wx)(ScaleParams(F(1, 2), 5))
    with pytest.raises(DerivationError):
        transport_witness(STD, STD, f, wrong, ScaleParams(F(1, 3), 1), wx)
