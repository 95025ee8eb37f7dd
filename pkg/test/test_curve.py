import pytest

from src.curve import (
    IDENTITY,
    CurvePoint,
    LambdaAut,
    Parabola,
    act_on_parabola,
    act_on_point,
    act_on_point_full,
    compose,
    curve_points,
    is_on_curve,
    lambda_elements,
    make_parabola,
    parabola_orbit,
)
from src.errors import NotOnCurve, ZeroA
from src.gf import ONE, ZERO
from src.oracle import brute_count


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_point_count(field, q):
    """The curve has q^3 affine points."""
    ctx = field(q)
    pts = curve_points(ctx)
    assert len(pts) == q**3
    assert len(set(pts)) == q**3
    assert all(is_on_curve(ctx, p) for p in pts)


def test_fiber_over_alpha(gf2):
    """Points over one x are the solutions of Tr(y) = N(x)."""
    ys = [p.y for p in curve_points(gf2) if p.x == gf2.alpha]
    assert len(ys) == 2


def test_orbit_of_origin_is_whole_curve(gf2):
    """Lambda acts transitively on the points."""
    origin = CurvePoint(ZERO, ZERO)
    images = {act_on_point(gf2, s, origin) for s in lambda_elements(gf2)}
    assert images == set(curve_points(gf2))


@pytest.mark.parametrize("q", [2, 3])
def test_lambda_permutes_points(field, q):
    """Each automorphism is a permutation of the points."""
    ctx = field(q)
    pts = set(curve_points(ctx))
    for sigma in lambda_elements(ctx):
        assert {act_on_point(ctx, sigma, p) for p in pts} == pts


def test_identity(gf3):
    """The identity automorphism fixes every point."""
    for p in curve_points(gf3):
        assert act_on_point(gf3, IDENTITY, p) == p


def test_off_curve_point(gf3):
    """Off-curve points are rejected by the action."""
    bad = CurvePoint(ZERO, ONE)  # Tr(1) = 2 != 0
    with pytest.raises(NotOnCurve):
        act_on_point(gf3, IDENTITY, bad)
    with pytest.raises(NotOnCurve):
        act_on_point_full(gf3, ONE, IDENTITY, bad)


def test_compose_matches_successive_action(gf3):
    """Composition equals acting twice."""
    sigmas = lambda_elements(gf3)[::5]
    pts = curve_points(gf3)[::4]
    for s1 in sigmas:
        for s2 in sigmas:
            both = compose(gf3, s1, s2)
            assert is_on_curve(gf3, CurvePoint(*both))
            for p in pts:
                assert act_on_point(gf3, both, p) == act_on_point(gf3, s1, act_on_point(gf3, s2, p))


def test_full_action(gf3):
    """The scaled action keeps points on the curve."""
    sigma = lambda_elements(gf3)[7]
    for p in curve_points(gf3):
        assert act_on_point_full(gf3, ONE, sigma, p) == act_on_point(gf3, sigma, p)
        assert is_on_curve(gf3, act_on_point_full(gf3, 3, sigma, p))
    with pytest.raises(ZeroA):
        act_on_point_full(gf3, ZERO, sigma, curve_points(gf3)[0])


def test_parabola_action_keeps_count(gf4):
    """Moving a parabola by Lambda keeps its count."""
    par = Parabola(5, 2, ZERO)
    before = brute_count(gf4, par)
    for sigma in lambda_elements(gf4)[::3]:
        image = act_on_parabola(gf4, sigma, par)
        assert image.a == par.a
        assert brute_count(gf4, image) == before


def test_orbit_of_pure_square_has_full_size(gf3):
    """The orbit of a pure square has q^3 members."""
    # Delta != 0 for every a with N(a) != 1/4; at q = 3 that rules out N(a) = 1
    a = next(a for a in range(gf3.n1) if gf3.norm(a) != ONE)
    assert len(parabola_orbit(gf3, Parabola(a, ZERO, ZERO))) == 27


def test_make_parabola_rejects_zero_a():
    """make_parabola needs a nonzero leading coefficient."""
    with pytest.raises(ZeroA):
        make_parabola(ZERO, ONE, ONE)
    assert make_parabola(ONE, ZERO, ZERO) == Parabola(ONE, ZERO, ZERO)
    assert LambdaAut(ZERO, ZERO) == IDENTITY
