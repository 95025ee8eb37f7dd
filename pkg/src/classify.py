"""Closed-form intersection counts of parabolas with the Hermitian curve.

A parabola y = ax^2 + bx + c is first moved along its Lambda-orbit to a
reduced shape. The count then depends on the discriminant of a, on whether
the reduced constant term has trace zero, and, in the degenerate case, on the
image of the GF(q)-linear map x -> x^q - 2ax.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .curve import Parabola
from .errors import BoundExceeded, InternalInconsistency, NoGamma, NoSquareRoot, ZeroA
from .gf import ONE, ZERO, Elem, FieldCtx
from .models import CensusTable, ClassificationResult, DeltaClass
from .oracle import DEFAULT_MAX_Q, brute_count, count_matrix
from .parallel import map_ordered

logger = logging.getLogger(__name__)


def f_a(ctx: FieldCtx, a: Elem, x: Elem) -> Elem:
    """x^(q+1) - Tr(a x^2), always in GF(q)."""
    if a == ZERO:
        raise ZeroA("F_a needs a nonzero a")
    return ctx.sub(ctx.norm(x), ctx.trace(ctx.mul(a, ctx.mul(x, x))))


def delta_class(ctx: FieldCtx, a: Elem) -> DeltaClass:
    """Classify Delta = 1 - 4 N(a)."""
    if a == ZERO:
        raise ZeroA("discriminant needs a nonzero a")
    delta = ctx.sub(ONE, ctx.mul(ctx.const(4), ctx.norm(a)))
    if not ctx.odd:
        return DeltaClass(delta=delta, kind="EvenChar", z=ctx.sqrt(delta))
    if delta == ZERO:
        return DeltaClass(delta=delta, kind="Zero")
    z = ctx.sqrt(delta)
    kind = "SquareInFq" if ctx.frobenius(z) == z else "NonSquareInFq"
    return DeltaClass(delta=delta, kind=kind, z=z)


@dataclass(frozen=True)
class Reduction:
    delta: DeltaClass
    b_image: Elem  # 2a b^q + b; zero iff b is in the image of x -> 2ax - x^q
    gammas: Tuple[Elem, ...]
    t0: Optional[Elem]
    representative: Optional[Parabola]

    @property
    def gamma(self) -> Optional[Elem]:
        return self.gammas[0] if self.gammas else None


def _t0(ctx: FieldCtx, par: Parabola, gamma: Elem) -> Elem:
    return ctx.add(ctx.trace(par.c), f_a(ctx, par.a, gamma))


def _square_representative(ctx: FieldCtx, par: Parabola) -> Optional[Parabola]:
    """Find a Lambda-image of the form a(x + v)^2."""
    a, b, c = par
    two_a = ctx.mul(ctx.const(2), a)
    for g in ctx.elements():
        v = ctx.div(ctx.add(ctx.linmap(a, g), b), two_a)
        av2 = ctx.mul(a, ctx.mul(v, v))
        d = ctx.sub(ctx.add(ctx.add(ctx.mul(a, ctx.mul(g, g)), ctx.mul(b, g)), c), av2)
        if ctx.trace(d) == ctx.norm(g):
            return Parabola(a, ctx.mul(two_a, v), av2)
    return None


def reduce_parabola(
    ctx: FieldCtx, par: Parabola, representative: bool = True, check_all_gamma: bool = False
) -> Reduction:
    """Reduce a parabola to (a, 0, c0) or, when that is impossible, to a(x + v)^2.

    Raises:
        ZeroA: a is zero.
        NoGamma: b lies in the image of the linear map but no gamma was found.
        InternalInconsistency: the admissible gammas disagree on Tr(c0).
    """
    a, b, c = par
    if a == ZERO:
        raise ZeroA("a parabola needs a nonzero leading coefficient")
    dc = delta_class(ctx, a)
    b_image = ctx.add(ctx.mul(ctx.mul(ctx.const(2), a), ctx.frobenius(b)), b)

    if not ctx.odd:
        gammas: List[Elem] = [ctx.frobenius(b)]
    elif dc.kind == "Zero" and b_image != ZERO:
        rep = _square_representative(ctx, par) if representative else None
        if representative and rep is None:
            logger.warning("No a(x+v)^2 representative found for %s", par)
        return Reduction(delta=dc, b_image=b_image, gammas=(), t0=None, representative=rep)
    else:
        gammas = ctx.linmap_solve(a, b)
        if not gammas:
            raise NoGamma(f"no gamma with 2a g - g^q = b for {par}")
        if dc.kind != "Zero" and len(gammas) != 1:
            raise InternalInconsistency(f"expected a unique gamma, found {len(gammas)}")

    t0 = _t0(ctx, par, gammas[0])
    if check_all_gamma:
        for g in gammas[1:]:
            other = _t0(ctx, par, g)
            if other != t0:
                raise InternalInconsistency(
                    f"gammas {ctx.format(gammas[0])} and {ctx.format(g)} give different traces"
                )
    rep = Parabola(a, ZERO, ctx.lift_trace(t0)) if representative else None
    return Reduction(delta=dc, b_image=b_image, gammas=tuple(gammas), t0=t0, representative=rep)


def _degenerate_count(ctx: FieldCtx, a: Elem, t0: Elem) -> Tuple[int, str]:
    """Delta = 0 and b in the image: F_a(x) = -a^q (x^q - 2ax)^2."""
    q = ctx.q
    if t0 == ZERO:
        return q, "Odd/Delta0/B0/T0=0"
    r = ctx.neg(ctx.mul(ctx.mul(ctx.const(4), a), t0))
    if r % 2:
        raise InternalInconsistency(f"-4a T0 = {ctx.format(r)} has an odd exponent")
    try:
        s = ctx.sqrt(r)
    except NoSquareRoot as exc:
        raise InternalInconsistency(str(exc)) from exc
    if ctx.linmap_solve(a, s, sign=-1):
        return 2 * q, "Odd/Delta0/B0/T0!=0/InImage"
    return 0, "Odd/Delta0/B0/T0!=0/NotInImage"


def classify(
    ctx: FieldCtx,
    par: Parabola,
    representative: bool = True,
    check_all_gamma: bool = False,
    brute: bool = False,
) -> ClassificationResult:
    """Intersection count of a parabola with the affine Hermitian curve.

    Args:
        ctx: Field context.
        par: Coefficients (a, b, c), a nonzero.
        representative: Also return a reduced parabola in the same orbit.
        check_all_gamma: Recompute Tr(c0) with every admissible gamma.
        brute: Attach the brute-force count for comparison.

    Returns:
        ClassificationResult with the count and the decision-tree branch taken.
    """
    q = ctx.q
    red = reduce_parabola(ctx, par, representative=representative, check_all_gamma=check_all_gamma)
    t0 = red.t0

    if ctx.odd:
        kind = red.delta.kind
        if kind == "SquareInFq":
            count, branch = (1, "Odd/DeltaSq/T0=0") if t0 == ZERO else (q + 1, "Odd/DeltaSq/T0!=0")
        elif kind == "NonSquareInFq":
            count, branch = (
                (2 * q - 1, "Odd/DeltaNonSq/T0=0") if t0 == ZERO else (q - 1, "Odd/DeltaNonSq/T0!=0")
            )
        elif red.b_image != ZERO:
            count, branch = q, "Odd/Delta0/B!=0"
        else:
            count, branch = _degenerate_count(ctx, par.a, t0)
    else:
        bit = ctx.abs_trace(ctx.norm(par.a))
        if bit == 0:
            count, branch = (1, "Even/Tr0/T0=0") if t0 == ZERO else (q + 1, "Even/Tr0/T0!=0")
        else:
            count, branch = (2 * q - 1, "Even/Tr1/T0=0") if t0 == ZERO else (q - 1, "Even/Tr1/T0!=0")

    result = ClassificationResult(
        count=count,
        branch=branch,
        reduced=tuple(red.representative) if red.representative else None,
        gamma=red.gamma,
        t0=t0,
        brute=brute_count(ctx, par) if brute else None,
    )
    logger.debug("classify %s -> %d via %s", par, count, branch)
    return result


def census_closed(q: int) -> CensusTable:
    """N_k from the closed formulas, exact integers, no enumeration."""
    if q % 2:
        base = q * q * (q + 1)
        counts = {
            0: base * (q - 1) // 2,
            1: base * q * (q - 3) // 2,
            q - 1: base * q * (q - 1) ** 2 // 2,
            q: base * (q * q - q + 1),
            q + 1: base * q * (q - 1) * (q - 3) // 2,
            2 * q - 1: base * q * (q - 1) // 2,
            2 * q: base * (q - 1) // 2,
        }
        table = CensusTable.from_counts(q, "closed", counts, CensusTable.class_keys(q))
    else:
        base = q**3 * (q + 1)
        pairs = [
            (1, base * (q // 2 - 1)),
            (q - 1, base * (q - 1) * q // 2),
            (q + 1, base * (q - 1) * (q // 2 - 1)),
            (2 * q - 1, base * q // 2),
        ]
        # q = 2 sends 1 and q - 1 to the same key
        counts: Dict[int, int] = {}
        for k, n in pairs:
            counts[k] = counts.get(k, 0) + n
        table = CensusTable.from_counts(q, "closed", counts, CensusTable.class_keys(q))
    return table


def _classifier_histogram(ctx: FieldCtx, _shared, a: Elem) -> Dict[int, int]:
    lifts = [ctx.lift_trace(t) for t in ctx.subfield]
    hist: Dict[int, int] = {}
    for b in ctx.elements():
        for c in lifts:
            k = classify(ctx, Parabola(a, b, c), representative=False).count
            hist[k] = hist.get(k, 0) + 1
    return hist


def census_by_classifier(ctx: FieldCtx, workers: int = 1, max_q: int = DEFAULT_MAX_Q) -> CensusTable:
    """N_k by running the classifier once per (a, b, trace class)."""
    if ctx.q > max_q:
        raise BoundExceeded(f"classifier census limited to q <= {max_q}, got q = {ctx.q}")
    logger.info("Classifier census for q=%d", ctx.q)
    merged: Dict[int, int] = {}
    for hist in map_ordered(ctx, _classifier_histogram, list(range(ctx.n1)), workers=workers):
        for k, n in hist.items():
            merged[k] = merged.get(k, 0) + n * ctx.q
    return CensusTable.from_counts(ctx.q, "classifier", merged, CensusTable.class_keys(ctx.q))


def line_count(ctx: FieldCtx, m: Elem, c: Elem) -> int:
    """Intersections of y = mx + c: N(x - m^q) = Tr(c) + N(m)."""
    return 1 if ctx.add(ctx.trace(c), ctx.norm(m)) == ZERO else ctx.q + 1


def line_census(ctx: FieldCtx) -> CensusTable:
    """N_k over the q^4 non-vertical lines y = mx + c, by direct counting."""
    counts: Dict[int, int] = {}
    for k in count_matrix(ctx, ZERO).ravel():
        counts[int(k)] = counts.get(int(k), 0) + ctx.q
    return CensusTable.from_counts(ctx.q, "lines", counts)


def line_census_closed(q: int) -> CensusTable:
    return CensusTable.from_counts(q, "lines", {1: q**3, q + 1: q**3 * (q - 1)})


def check_identities(table: CensusTable, kind: str = "parabola") -> List[str]:
    """Total and incidence counts every census must satisfy; returns the failures."""
    q = table.q
    if kind == "parabola":
        total, incidences = q**4 * (q * q - 1), q**5 * (q * q - 1)
    else:
        total, incidences = q**4, q**5
    problems = []
    if table.total != total:
        problems.append(f"total {table.total} != {total}")
    if table.incidences() != incidences:
        problems.append(f"incidences {table.incidences()} != {incidences}")
    return problems
