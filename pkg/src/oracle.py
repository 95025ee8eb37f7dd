"""Brute-force intersection counts, used as ground truth for the classifier."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np

from .curve import LambdaAut, Parabola, act_on_parabola, lambda_elements
from .errors import BoundExceeded, ZeroA
from .gf import ZERO, Elem, FieldCtx
from .models import CensusTable, OrbitReport, OrbitViolation
from .parallel import map_ordered

logger = logging.getLogger(__name__)

DEFAULT_MAX_Q = 16


@dataclass(frozen=True, eq=False)
class OracleTables:
    xs: np.ndarray
    norm_x: np.ndarray
    x_sq: np.ndarray
    tr_bx: np.ndarray  # [index of b, index of x] -> Tr(b x)


@lru_cache(maxsize=8)
def oracle_tables(ctx: FieldCtx) -> OracleTables:
    xs = np.asarray(ctx.elements(), dtype=np.int64)
    tr_bx = ctx.vtrace(ctx.vmul(xs[:, None], xs[None, :]))
    return OracleTables(xs=xs, norm_x=ctx.vnorm(xs), x_sq=ctx.vpow(xs, 2), tr_bx=tr_bx)


def _index(x: Elem) -> int:
    # position of x in ctx.elements()
    return x + 1


def fa_values(ctx: FieldCtx, a: Elem) -> np.ndarray:
    """N(x) - Tr(a x^2) for every x; a = 0 gives the norm alone."""
    t = oracle_tables(ctx)
    return ctx.vadd(t.norm_x, ctx.vneg(ctx.vtrace(ctx.vmul(a, t.x_sq))))


def brute_count(ctx: FieldCtx, par: Parabola) -> int:
    """Number of x with x^(q+1) - Tr(a x^2) - Tr(b x) = Tr(c)."""
    a, b, c = par
    if a == ZERO:
        raise ZeroA("a parabola needs a nonzero leading coefficient")
    t = oracle_tables(ctx)
    vals = ctx.vadd(fa_values(ctx, a), ctx.vneg(t.tr_bx[_index(b)]))
    return int(np.count_nonzero(vals == ctx.trace(c)))


def count_matrix(ctx: FieldCtx, a: Elem) -> np.ndarray:
    """counts[b index, t index]: intersections of y = ax^2 + bx + c with Tr(c) = t.

    a = 0 gives the non-vertical lines y = bx + c.
    """
    q = ctx.q
    t = oracle_tables(ctx)
    vals = ctx.vadd(fa_values(ctx, a)[None, :], ctx.vneg(t.tr_bx))
    slots = np.arange(ctx.order, dtype=np.int64)[:, None] * q + ctx.vsub_index(vals)
    counts = np.bincount(slots.ravel(), minlength=ctx.order * q)
    return counts.reshape(ctx.order, q)


def count_histogram(ctx: FieldCtx, a: Elem) -> np.ndarray:
    """hist[k]: number of (b, trace class) pairs with exactly k intersections."""
    return np.bincount(count_matrix(ctx, a).ravel(), minlength=2 * ctx.q + 1)


def _histogram_task(ctx: FieldCtx, _shared, a: Elem) -> List[int]:
    return [int(v) for v in count_histogram(ctx, a)]


def brute_census(ctx: FieldCtx, workers: int = 1, max_q: int = DEFAULT_MAX_Q) -> CensusTable:
    """Exact N_k over all q^4 (q^2 - 1) parabolas by direct counting."""
    if ctx.q > max_q:
        raise BoundExceeded(f"brute census limited to q <= {max_q}, got q = {ctx.q}")
    logger.info("Brute census for q=%d over %d leading coefficients", ctx.q, ctx.n1)
    hists = map_ordered(ctx, _histogram_task, list(range(ctx.n1)), workers=workers)
    merged: Dict[int, int] = {}
    for hist in hists:
        for k, n in enumerate(hist):
            if n:
                # each trace class holds q values of c
                merged[k] = merged.get(k, 0) + n * ctx.q
    return CensusTable.from_counts(ctx.q, "brute", merged, CensusTable.class_keys(ctx.q))


def _sample_parabolas(ctx: FieldCtx, samples: int, seed: int) -> List[Parabola]:
    rng = np.random.default_rng(seed)
    a = rng.integers(0, ctx.n1, size=samples)
    b = rng.integers(-1, ctx.n1, size=samples)
    c = rng.integers(-1, ctx.n1, size=samples)
    return [Parabola(int(x), int(y), int(z)) for x, y, z in zip(a, b, c)]


def orbit_check(
    ctx: FieldCtx, samples: int = 64, seed: int = 0, exhaustive: Optional[bool] = None
) -> OrbitReport:
    """Check brute counts are constant along Lambda-orbits.

    Exhaustive over every parabola for q <= 3 unless told otherwise,
    otherwise over ``samples`` parabolas drawn with ``seed``.
    """
    if exhaustive is None:
        exhaustive = ctx.q <= 3
    if exhaustive:
        parabolas = [
            Parabola(a, b, c) for a in range(ctx.n1) for b in ctx.elements() for c in ctx.elements()
        ]
    else:
        parabolas = _sample_parabolas(ctx, samples, seed)

    sigmas: List[LambdaAut] = lambda_elements(ctx)
    violations: List[OrbitViolation] = []
    for par in parabolas:
        before = brute_count(ctx, par)
        for sigma in sigmas:
            after = brute_count(ctx, act_on_parabola(ctx, sigma, par))
            if after != before:
                violations.append(
                    OrbitViolation(parabola=tuple(par), sigma=tuple(sigma), before=before, after=after)
                )
    if violations:
        logger.error("Orbit check for q=%d found %d violations", ctx.q, len(violations))
    return OrbitReport(
        q=ctx.q,
        exhaustive=exhaustive,
        parabolas=len(parabolas),
        automorphisms=len(sigmas),
        pairs=len(parabolas) * len(sigmas),
        violations=violations,
    )
