"""Exhaustive self-checks of the field identities and of the classifier."""

from __future__ import annotations

import logging
from typing import List

import numpy as np

from .classify import (
    census_by_classifier,
    census_closed,
    check_identities,
    classify,
    delta_class,
    f_a,
    line_census,
    line_census_closed,
)
from .config import Settings
from .curve import Parabola
from .errors import BoundExceeded
from .gf import ONE, ZERO, Elem, FieldCtx
from .models import CheckReport, Mismatch, VerificationReport
from .oracle import DEFAULT_MAX_Q, brute_census, count_matrix, fa_values, oracle_tables, orbit_check
from .parallel import map_ordered

logger = logging.getLogger(__name__)

_MAX_DETAIL = 20


def _report(name: str, checked: int, problems: List[str]) -> CheckReport:
    if problems:
        logger.warning("%s: %d violations", name, len(problems))
    return CheckReport(name=name, checked=checked, violations=len(problems), detail=problems[:_MAX_DETAIL])


def _skipped(name: str, max_q: int) -> CheckReport:
    return CheckReport(name=name, checked=0, violations=0, detail=[f"skipped: q above max_enum_q={max_q}"])


def check_scaling(ctx: FieldCtx) -> CheckReport:
    """F_a(w x) = w^2 F_a(x) for w in GF(q)."""
    problems, checked = [], 0
    for a in range(ctx.n1):
        for x in ctx.elements():
            fx = f_a(ctx, a, x)
            for w in ctx.subfield:
                checked += 1
                if f_a(ctx, a, ctx.mul(w, x)) != ctx.mul(ctx.mul(w, w), fx):
                    problems.append(f"a={ctx.format(a)} x={ctx.format(x)} w={ctx.format(w)}")
    return _report("scaling", checked, problems)


def check_hilbert90(ctx: FieldCtx) -> CheckReport:
    problems, total = [], 0
    for t in range(ctx.n1):
        sols = ctx.hilbert90_solutions(t)
        total += len(sols)
        expected = ctx.q - 1 if ctx.norm(t) == ONE else 0
        if len(sols) != expected or any(ctx.pow(x, ctx.q - 1) != t for x in sols):
            problems.append(f"t={ctx.format(t)}: {len(sols)} solutions")
    if total != ctx.n1:
        problems.append(f"{total} solutions in all, expected {ctx.n1}")
    return _report("hilbert90", ctx.n1, problems)


def check_linmap(ctx: FieldCtx) -> CheckReport:
    """Negation symmetry of x -> x^q - 2ax and the size of its kernel."""
    problems, checked = [], 0
    for a in range(ctx.n1):
        kernel = ctx.linmap_solve(a, ZERO, sign=-1)
        singular = ctx.odd and ctx.norm(ctx.mul(ctx.const(2), a)) == ONE
        if len(kernel) != (ctx.q if singular else 1):
            problems.append(f"a={ctx.format(a)}: kernel of size {len(kernel)}")
        for k in ctx.elements():
            checked += 1
            sols = ctx.linmap_solve(a, k, sign=-1)
            flipped = sorted(ctx.neg(x) for x in ctx.linmap_solve(a, ctx.neg(k), sign=-1))
            if sols != flipped or any(ctx.linmap(a, x, sign=-1) != k for x in sols):
                problems.append(f"a={ctx.format(a)} k={ctx.format(k)}")
    return _report("linmap", checked, problems)


def check_trace_dependence(ctx: FieldCtx, samples: int = 0, seed: int = 0) -> CheckReport:
    """Brute counts depend on c only through Tr(c).

    Every a is checked when ``samples`` is 0, otherwise that many drawn with ``seed``.
    """
    a_values = list(range(ctx.n1))
    if 0 < samples < ctx.n1:
        rng = np.random.default_rng(seed)
        a_values = sorted(int(a) for a in rng.choice(ctx.n1, size=samples, replace=False))
    t = oracle_tables(ctx)
    trc = ctx.vtrace(t.xs)
    problems, checked = [], 0
    for a in a_values:
        fa = fa_values(ctx, a)
        for bi in range(ctx.order):
            vals = ctx.vadd(fa, ctx.vneg(t.tr_bx[bi]))
            per_c = (vals[None, :] == trc[:, None]).sum(axis=1)
            checked += ctx.order
            for tr in np.unique(trc):
                if len(np.unique(per_c[trc == tr])) != 1:
                    problems.append(f"a={ctx.format(a)} b={ctx.format(int(t.xs[bi]))}")
    return _report("trace_dependence", checked, problems)


def check_char_sum(ctx: FieldCtx) -> CheckReport:
    """Sum of eta(a g^2 + b g + c) is -eta(a) or (q-1) eta(a)."""
    if not ctx.odd:
        return CheckReport(name="char_sum", checked=0, violations=0, detail=["skipped: even q"])
    problems, checked = [], 0
    four = ctx.const(4)
    for a in ctx.subfield[1:]:
        for b in ctx.subfield:
            for c in ctx.subfield:
                checked += 1
                disc = ctx.sub(ctx.mul(b, b), ctx.mul(four, ctx.mul(a, c)))
                eta = ctx.quad_char(a)
                expected = (ctx.q - 1) * eta if disc == ZERO else -eta
                if ctx.char_sum(a, b, c) != expected:
                    problems.append(f"a={ctx.format(a)} b={ctx.format(b)} c={ctx.format(c)}")
    return _report("char_sum", checked, problems)


def check_delta_zero(ctx: FieldCtx) -> CheckReport:
    if not ctx.odd:
        return CheckReport(name="delta_zero", checked=0, violations=0, detail=["skipped: even q"])
    n = sum(1 for a in range(ctx.n1) if delta_class(ctx, a).kind == "Zero")
    problems = [] if n == ctx.q + 1 else [f"{n} values of a with Delta = 0, expected {ctx.q + 1}"]
    return _report("delta_zero", ctx.n1, problems)


def image_criterion_report(ctx: FieldCtx) -> CheckReport:
    """For Delta = 0: b is in the image of 2ax - x^q iff 2a b^q + b = 0."""
    if not ctx.odd:
        return CheckReport(name="image_criterion", checked=0, violations=0, detail=["skipped: even q"])
    problems, checked = [], 0
    for a in range(ctx.n1):
        if delta_class(ctx, a).kind != "Zero":
            continue
        two_a = ctx.mul(ctx.const(2), a)
        for b in ctx.elements():
            checked += 1
            in_image = bool(ctx.linmap_solve(a, b))
            criterion = ctx.add(ctx.mul(two_a, ctx.frobenius(b)), b) == ZERO
            if in_image != criterion:
                problems.append(f"a={ctx.format(a)} b={ctx.format(b)}")
    return _report("image_criterion", checked, problems)


def _soundness_task(ctx: FieldCtx, _shared, a: Elem) -> List[tuple]:
    counts = count_matrix(ctx, a)
    bad = []
    for bi, b in enumerate(ctx.elements()):
        for ti, t in enumerate(ctx.subfield):
            par = Parabola(a, b, ctx.lift_trace(t))
            got = classify(ctx, par, representative=False, check_all_gamma=True).count
            if got != int(counts[bi, ti]):
                bad.append((a, b, t, got, int(counts[bi, ti])))
    return bad


def classifier_soundness(ctx: FieldCtx, workers: int = 1, max_q: int = DEFAULT_MAX_Q) -> List[Mismatch]:
    """Compare the classifier with brute counts over every (a, b, trace class)."""
    if ctx.q > max_q:
        raise BoundExceeded(f"classifier soundness limited to q <= {max_q}, got q = {ctx.q}")
    mismatches = []
    for chunk in map_ordered(ctx, _soundness_task, list(range(ctx.n1)), workers=workers):
        mismatches.extend(Mismatch(a=a, b=b, t=t, classified=k, brute=n) for a, b, t, k, n in chunk)
    if mismatches:
        logger.error("Classifier disagrees with brute force on %d classes", len(mismatches))
    return mismatches


def check_orbits(ctx: FieldCtx, settings: Settings) -> CheckReport:
    report = orbit_check(ctx, samples=settings.run.orbit_samples, seed=settings.run.seed)
    problems = [
        f"{v.parabola} under {v.sigma}: {v.before} -> {v.after}" for v in report.violations
    ]
    return _report("orbit_invariance", report.pairs, problems)


def check_census(ctx: FieldCtx, settings: Settings, workers: int = 1) -> CheckReport:
    closed = census_closed(ctx.q)
    problems = [f"closed: {p}" for p in check_identities(closed)]
    checked = 1
    if ctx.q <= settings.limits.max_enum_q:
        for table in (
            census_by_classifier(ctx, workers=workers, max_q=settings.limits.max_enum_q),
            brute_census(ctx, workers=workers, max_q=settings.limits.max_enum_q),
        ):
            checked += 1
            if not table.same_rows(closed):
                problems.append(f"{table.mode} census differs from the closed formulas")
        lines = line_census(ctx)
        checked += 1
        if not lines.same_rows(line_census_closed(ctx.q)):
            problems.append("line census differs from the closed formula")
        problems.extend(f"lines: {p}" for p in check_identities(lines, kind="line"))
    return _report("census", checked, problems)


def run_verification(ctx: FieldCtx, settings: Settings, workers: int = 1) -> VerificationReport:
    """Every self-check for one field, in a fixed order."""
    logger.info("Running verification suite for q=%d", ctx.q)
    max_q = settings.limits.max_enum_q
    bounded = ctx.q <= max_q
    if not bounded:
        logger.warning("q=%d is above max_enum_q=%d, skipping exhaustive sweeps", ctx.q, max_q)
    checks = [
        check_hilbert90(ctx),
        check_scaling(ctx) if bounded else _skipped("scaling", max_q),
        check_linmap(ctx) if bounded else _skipped("linmap", max_q),
        check_char_sum(ctx),
        check_delta_zero(ctx),
        image_criterion_report(ctx),
        check_trace_dependence(
            ctx, samples=0 if ctx.q <= 9 else settings.run.orbit_samples, seed=settings.run.seed
        ),
        check_orbits(ctx, settings),
    ]
    if bounded:
        soundness = classifier_soundness(ctx, workers=workers, max_q=max_q)
        checks.append(
            _report(
                "classifier_soundness",
                ctx.n1 * ctx.order * ctx.q,
                [f"a={m.a} b={m.b} t={m.t}: {m.classified} != {m.brute}" for m in soundness],
            )
        )
    else:
        checks.append(_skipped("classifier_soundness", max_q))
    checks.append(check_census(ctx, settings, workers=workers))
    return VerificationReport(q=ctx.q, checks=checks)
