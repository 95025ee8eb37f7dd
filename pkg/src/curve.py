"""Affine points of x^(q+1) = y^q + y and the automorphism subgroup Lambda."""

from __future__ import annotations

import logging
from typing import Dict, List, NamedTuple, Set

from .errors import NotOnCurve, ZeroA
from .gf import ZERO, Elem, FieldCtx

logger = logging.getLogger(__name__)


class CurvePoint(NamedTuple):
    x: Elem
    y: Elem


class LambdaAut(NamedTuple):
    """x -> x + gamma, y -> y + gamma^q x + delta, with (gamma, delta) on the curve."""

    gamma: Elem
    delta: Elem


class Parabola(NamedTuple):
    a: Elem
    b: Elem
    c: Elem


IDENTITY = LambdaAut(ZERO, ZERO)


def make_parabola(a: Elem, b: Elem, c: Elem) -> Parabola:
    if a == ZERO:
        raise ZeroA("a parabola needs a nonzero leading coefficient")
    return Parabola(a, b, c)


def trace_fibers(ctx: FieldCtx) -> Dict[Elem, List[Elem]]:
    """Map t in GF(q) to the sorted y with Tr(y) = t (q of each)."""
    fibers: Dict[Elem, List[Elem]] = {t: [] for t in ctx.subfield}
    for y in ctx.elements():
        fibers[ctx.trace(y)].append(y)
    return fibers


def curve_points(ctx: FieldCtx) -> List[CurvePoint]:
    """All q^3 affine points, ordered by (log x, log y) with zero first."""
    fibers = trace_fibers(ctx)
    points = [CurvePoint(x, y) for x in ctx.elements() for y in fibers[ctx.norm(x)]]
    logger.debug("GF(%d): %d affine curve points", ctx.order, len(points))
    return points


def is_on_curve(ctx: FieldCtx, pt: CurvePoint) -> bool:
    return ctx.norm(pt.x) == ctx.trace(pt.y)


def lambda_elements(ctx: FieldCtx) -> List[LambdaAut]:
    """One automorphism per curve point, in curve_points order."""
    return [LambdaAut(pt.x, pt.y) for pt in curve_points(ctx)]


def act_on_point(ctx: FieldCtx, sigma: LambdaAut, pt: CurvePoint) -> CurvePoint:
    if not is_on_curve(ctx, pt):
        raise NotOnCurve(f"({ctx.format(pt.x)},{ctx.format(pt.y)}) is not on the curve")
    g, d = sigma
    x = ctx.add(pt.x, g)
    y = ctx.add(ctx.add(pt.y, ctx.mul(ctx.frobenius(g), pt.x)), d)
    return CurvePoint(x, y)


def act_on_point_full(ctx: FieldCtx, eps: Elem, sigma: LambdaAut, pt: CurvePoint) -> CurvePoint:
    """The Gamma action x -> eps x + gamma, y -> eps^(q+1) y + eps gamma^q x + delta."""
    if eps == ZERO:
        raise ZeroA("epsilon must be nonzero")
    if not is_on_curve(ctx, pt):
        raise NotOnCurve(f"({ctx.format(pt.x)},{ctx.format(pt.y)}) is not on the curve")
    g, d = sigma
    x = ctx.add(ctx.mul(eps, pt.x), g)
    y = ctx.add(
        ctx.add(ctx.mul(ctx.norm(eps), pt.y), ctx.mul(ctx.mul(eps, ctx.frobenius(g)), pt.x)),
        d,
    )
    return CurvePoint(x, y)


def compose(ctx: FieldCtx, outer: LambdaAut, inner: LambdaAut) -> LambdaAut:
    """outer after inner: (g1 + g2, d1 + d2 + g1^q g2)."""
    g1, d1 = outer
    g2, d2 = inner
    return LambdaAut(
        ctx.add(g1, g2),
        ctx.add(ctx.add(d1, d2), ctx.mul(ctx.frobenius(g1), g2)),
    )


def act_on_parabola(ctx: FieldCtx, sigma: LambdaAut, par: Parabola) -> Parabola:
    """Image of y = ax^2+bx+c: (a, 2a g - g^q + b, a g^2 + b g - d + c)."""
    a, b, c = par
    g, d = sigma
    two_a = ctx.mul(ctx.const(2), a)
    b2 = ctx.add(ctx.sub(ctx.mul(two_a, g), ctx.frobenius(g)), b)
    c2 = ctx.add(
        ctx.sub(ctx.add(ctx.mul(a, ctx.mul(g, g)), ctx.mul(b, g)), d),
        c,
    )
    return Parabola(a, b2, c2)


def parabola_orbit(ctx: FieldCtx, par: Parabola) -> Set[Parabola]:
    return {act_on_parabola(ctx, s, par) for s in lambda_elements(ctx)}
