"""Dual one-point Hermitian codes C(m) and their corner/edge subfamilies.

C(m) is the kernel of the check matrix whose rows are the monomials
x^r y^s (r < q^2, s < q, weight qr + (q+1)s <= m) evaluated at the q^3
affine points of the curve.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .classify import census_closed, line_census
from .curve import CurvePoint, curve_points
from .errors import (
    BoundExceeded,
    DOutOfRange,
    HermitianError,
    InexactDivision,
    InternalInconsistency,
    JOutOfRange,
    MOutOfRange,
    PhaseDecompositionFailed,
    QTooSmall,
)
from .gf import ZERO, Elem, FieldCtx, field_for_q
from .models import CodeSpec, MonomialBasis, Weight4Report
from .parallel import map_ordered

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]

WEIGHT4_CODES = {"H0_3": 0, "H1_3": 1, "H2_3": 2}


def weight(q: int, mono: Monomial) -> int:
    r, s = mono
    return q * r + (q + 1) * s


def max_m(q: int) -> int:
    return q**3 + q * q - q - 2


def _all_monomials(q: int) -> List[Monomial]:
    return [(r, s) for s in range(q) for r in range(q * q)]


def monomial_basis(q: int, m: int) -> MonomialBasis:
    """Monomials of weight <= m, sorted by (s, r)."""
    if not 0 <= m <= max_m(q):
        raise MOutOfRange(f"m must lie in [0, {max_m(q)}], got {m}")
    monos = [mono for mono in _all_monomials(q) if weight(q, mono) <= m]
    return MonomialBasis(q=q, m=m, monomials=monos)


def basis_m(q: int, monomials: Sequence[Monomial]) -> int:
    """Largest weight in a monomial set."""
    return max(weight(q, mono) for mono in monomials)


@dataclass(frozen=True, eq=False)
class CheckMatrix:
    q: int
    m: int
    monomials: Tuple[Monomial, ...]
    points: Tuple[CurvePoint, ...]
    entries: np.ndarray  # logs, one row per monomial, one column per point

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    def columns(self) -> List[Tuple[Elem, ...]]:
        return [tuple(int(v) for v in col) for col in self.entries.T]

    def rank(self, ctx: FieldCtx) -> int:
        return int(np.linalg.matrix_rank(ctx.to_galois(self.entries)))


def check_matrix(
    ctx: FieldCtx, m: Optional[int] = None, monomials: Optional[Sequence[Monomial]] = None
) -> CheckMatrix:
    """Evaluate monomials at every curve point; rows follow the monomial order."""
    if monomials is None:
        if m is None:
            raise MOutOfRange("need either m or an explicit monomial list")
        monomials = monomial_basis(ctx.q, m).monomials
    elif m is None:
        m = basis_m(ctx.q, monomials)
    pts = curve_points(ctx)
    xs = np.array([pt.x for pt in pts], dtype=np.int64)
    ys = np.array([pt.y for pt in pts], dtype=np.int64)
    rows = [ctx.vmul(ctx.vpow(xs, r), ctx.vpow(ys, s)) for r, s in monomials]
    entries = np.vstack(rows) if rows else np.zeros((0, len(pts)), dtype=np.int64)
    logger.debug("Check matrix for q=%d m=%d: %s", ctx.q, m, entries.shape)
    return CheckMatrix(
        q=ctx.q, m=m, monomials=tuple(map(tuple, monomials)), points=tuple(pts), entries=entries
    )


# -- code parameters ---------------------------------------------------------


def _attained(q: int) -> List[int]:
    return sorted({weight(q, mono) for mono in _all_monomials(q)})


def _phase_candidates(q: int, m: int) -> List[CodeSpec]:
    n = q**3
    g = q * (q - 1) // 2
    weights = _attained(q)
    m_lo = max(w for w in weights if w <= m)
    above = [w for w in weights if w > m]
    m_hi = above[0] - 1 if above else max_m(q)
    size = len(monomial_basis(q, m).monomials)

    out: List[CodeSpec] = []

    def spec(phase, a, b, d, k):
        return CodeSpec(q=q, m=m, n=n, phase=phase, a=a, b=b, d=d, k=k, basis_size=size)

    if 0 <= m <= q * q - 2:
        a, b = divmod(m_lo, q)
        if b <= a <= q - 1 and b != q - 1:
            d = a + 1 if a > b else a + 2
            out.append(spec(1, a, b, d, n - a * (a + 1) // 2 - (b + 1)))

    if q * q - 1 <= m <= 2 * q * q - 2 * q - 3:
        for a in range(1, q - 1):
            b = 2 * q * q - q - a * q - 3 - m_lo
            if 0 <= b <= q - 2:
                d = (q - a) * q - b - 1 if a <= b else (q - a) * q
                out.append(spec(2, a, b, d, n - q * (3 * q - 1) // 2 + a * q + b + 2))
                break

    if 2 * q * q - 2 * q - 2 <= m <= n - 2:
        out.append(spec(3, None, None, m_lo - q * q + q + 2, n - m_lo + g - 1))

    if n - 1 <= m <= max_m(q):
        for a in range(q - 1):
            b = max_m(q) - a * q - m_hi
            if 0 <= b <= a:
                out.append(spec(4, a, b, n - a * q - b, a * (a + 1) // 2 + b + 1))
                break
    return out


def phase_params(q: int, m: int) -> CodeSpec:
    """Length, dimension and minimum distance of C(m) from the four-phase table.

    Values of m that are not monomial weights are first moved to the
    nearest weight that defines the same code.

    Raises:
        MOutOfRange: m outside [0, q^3 + q^2 - q - 2].
        PhaseDecompositionFailed: no phase row decomposes m, or two rows disagree.
    """
    if not 0 <= m <= max_m(q):
        raise MOutOfRange(f"m must lie in [0, {max_m(q)}], got {m}")
    candidates = _phase_candidates(q, m)
    if not candidates:
        raise PhaseDecompositionFailed(f"no phase decomposes m={m} for q={q}")
    for c in candidates:
        logger.debug("q=%d m=%d phase %d: a=%s b=%s d=%d k=%d", q, m, c.phase, c.a, c.b, c.d, c.k)
    first = candidates[0]
    if any((c.d, c.k) != (first.d, first.k) for c in candidates[1:]):
        raise PhaseDecompositionFailed(
            f"phases {[c.phase for c in candidates]} disagree for q={q} m={m}"
        )
    if first.k != first.n - first.basis_size:
        logger.warning(
            "q=%d m=%d: table dimension %d but n - |B| = %d",
            q, m, first.k, first.n - first.basis_size,
        )
    return first


# -- corner and edge codes -----------------------------------------------------


def corner_edge_monomials(q: int, d: int, j: int) -> List[Monomial]:
    """Staircase {x^r y^i : r <= d-2-i} plus the j edge monomials x^(d-t) y^(t-1)."""
    if not 2 <= d <= q:
        raise DOutOfRange(f"d must lie in [2, {q}], got {d}")
    if not 0 <= j <= d - 1:
        raise JOutOfRange(f"j must lie in [0, {d - 1}], got {j}")
    monos = [(r, i) for i in range(d - 1) for r in range(d - 1 - i)]
    monos += [(d - t, t - 1) for t in range(1, j + 1)]
    return sorted(monos, key=lambda mono: (mono[1], mono[0]))


def corner_edge_code(ctx: FieldCtx, d: int, j: int) -> Tuple[CodeSpec, CheckMatrix]:
    """The corner code (j = 0) or edge code H^j_d as a one-point code C(m)."""
    q, n = ctx.q, ctx.q**3
    monos = corner_edge_monomials(q, d, j)
    m = basis_m(q, monos)
    if monomial_basis(q, m).monomials != monos:
        raise InternalInconsistency(f"H^{j}_{d} is not a one-point code for q={q}")
    k = n - d * (d - 1) // 2 - j
    spec = CodeSpec(
        q=q, m=m, n=n, phase=phase_params(q, m).phase, d=d, k=k,
        basis_size=len(monos), label=f"H^{j}_{d}",
    )
    return spec, check_matrix(ctx, m=m, monomials=monos)


# -- weight distribution --------------------------------------------------------


def _exact_div(num: int, den: int, what: str) -> int:
    quot, rem = divmod(num, den)
    if rem:
        raise InexactDivision(f"{what}: {num} is not divisible by {den}")
    return quot


def nk_table(ctx: FieldCtx) -> Dict[int, int]:
    """N_k over parabolas and non-vertical lines, the lines counted on the curve."""
    merged = census_closed(ctx.q).as_dict()
    for k, n in line_census(ctx).as_dict().items():
        merged[k] = merged.get(k, 0) + n
    return merged


def weight4_formula(q: int, code: str, n_k: Optional[Dict[int, int]] = None) -> int:
    """Closed-form number of weight-4 codewords of H0_3, H1_3 or H2_3."""
    if q < 3:
        raise QTooSmall(f"weight-4 formulas need q >= 3, got {q}")
    if code == "H0_3":
        bracket = comb(q**3, 3) * (q + 1) - q * q * comb(q + 1, 3) * (3 * q**3 + 2 * q * q - 8)
        return _exact_div(bracket * (q - 1) * (q**3 - 3), 4, code)
    if code == "H1_3":
        if n_k is None:
            n_k = nk_table(field_for_q(q))
        head = q * q * comb(q, 4) * (q**4 - 4 * q * q + 3)
        middle = _exact_div(q**4 * (q * q - 1) ** 2 * (q - 1) ** 2, 8, code)
        tail = (q * q - 1) * sum(n_k.get(k, 0) * comb(k, 4) for k in range(4, 2 * q + 1))
        return head + middle + tail
    if code == "H2_3":
        return q * q * (q - 1) * comb(q + 1, 4) * (2 * q**3 - 3 * q * q - 4 * q + 9)
    raise HermitianError(f"unknown code {code!r}; expected one of {sorted(WEIGHT4_CODES)}")


def _rank(ctx: FieldCtx, vectors: Sequence[Sequence[Elem]]) -> int:
    """Rank over GF(q^2) by Gaussian elimination on log-form rows."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    rank = 0
    for col in range(len(rows[0])):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != ZERO), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = ctx.inv(prow[col])
        for i in range(rank + 1, len(rows)):
            if rows[i][col] == ZERO:
                continue
            f = ctx.mul(rows[i][col], inv)
            rows[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _weight4_task(ctx: FieldCtx, shared, i: int) -> int:
    cols, r1, r2, r3 = shared
    Q = ctx.order
    n = len(cols)
    total = 0
    for j, k, l in itertools.combinations(range(i + 1, n), 3):
        r4 = _rank(ctx, [cols[i], cols[j], cols[k], cols[l]])
        if r4 == 4:
            continue
        acc = Q ** (4 - r4)
        for t in ((i, j, k), (i, j, l), (i, k, l), (j, k, l)):
            acc -= Q ** (3 - r3[t])
        for t in ((i, j), (i, k), (i, l), (j, k), (j, l), (k, l)):
            acc += Q ** (2 - r2[t])
        for t in (i, j, k, l):
            acc -= Q ** (1 - r1[t])
        total += acc + 1
    return total


def weight4_brute(ctx: FieldCtx, H: CheckMatrix, workers: int = 1, max_supports: int = 2_000_000) -> int:
    """Count weight-4 codewords by inclusion-exclusion over 4-element supports."""
    cols = H.columns()
    n = len(cols)
    if comb(n, 4) > max_supports:
        raise BoundExceeded(f"C({n},4) = {comb(n, 4)} supports exceeds {max_supports}")
    logger.info("Weight-4 enumeration over %d supports", comb(n, 4))
    r1 = [_rank(ctx, [c]) for c in cols]
    r2 = {t: _rank(ctx, [cols[x] for x in t]) for t in itertools.combinations(range(n), 2)}
    r3 = {t: _rank(ctx, [cols[x] for x in t]) for t in itertools.combinations(range(n), 3)}
    parts = map_ordered(
        ctx, _weight4_task, list(range(n - 3)), workers=workers, shared=(cols, r1, r2, r3)
    )
    return sum(parts)


def weight4_report(
    ctx: FieldCtx, code: str, brute: bool = False, workers: int = 1, max_supports: int = 2_000_000
) -> Weight4Report:
    n_k = nk_table(ctx) if code == "H1_3" else None
    formula = weight4_formula(ctx.q, code, n_k)
    a4 = None
    if brute:
        _, H = corner_edge_code(ctx, 3, WEIGHT4_CODES[code])
        a4 = weight4_brute(ctx, H, workers=workers, max_supports=max_supports)
        if a4 != formula:
            logger.error("%s at q=%d: formula %d, enumeration %d", code, ctx.q, formula, a4)
    return Weight4Report(code=code, q=ctx.q, a4_formula=formula, a4_brute=a4, n_k=n_k)


# -- minimum distance -----------------------------------------------------------


def min_distance(
    ctx: FieldCtx, H: CheckMatrix, max_codewords: int = 2**20, max_support_checks: int = 5_000_000
) -> int:
    """Minimum distance of the kernel of H.

    Enumerates codewords when the code is small enough, otherwise looks for
    the smallest linearly dependent set of columns.
    """
    n = H.shape[1]
    k = n - H.rank(ctx)
    if k == 0:
        raise HermitianError("the zero code has no minimum distance")
    Q = ctx.order
    if Q**k <= max_codewords:
        basis = ctx.to_galois(H.entries).null_space()
        coeffs = ctx.GF(np.indices((Q,) * k).reshape(k, -1).T)
        weights = np.count_nonzero(np.asarray(coeffs @ basis), axis=1)
        return int(weights[weights > 0].min())

    cols = H.columns()
    checks = 0
    for w in range(1, n + 1):
        for support in itertools.combinations(range(n), w):
            checks += 1
            if checks > max_support_checks:
                raise BoundExceeded(f"more than {max_support_checks} supports checked")
            if _rank(ctx, [cols[i] for i in support]) < w:
                return w
    raise InternalInconsistency("no dependent column set found")
