"""The field tower GF(p) < GF(q) < GF(q^2) in discrete-log form.

Elements are plain ints: ``ZERO`` (-1) for zero, otherwise the exponent k of
alpha^k with 0 <= k <= q^2 - 2. Multiplication, powers and norms are exponent
arithmetic; addition goes through a Zech logarithm table.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import galois
import numpy as np

from .errors import (
    DivisionByZero,
    EvenCharacteristic,
    NoIrreducibleFound,
    NoSquareRoot,
    NotInSubfield,
    NotPrime,
    ParseError,
    TooLarge,
    ZeroA,
    ZeroInput,
)
from .models import FieldSpec

logger = logging.getLogger(__name__)

Elem = int
ZERO: Elem = -1
ONE: Elem = 0

DEFAULT_MAX_ORDER = 2**24

_ELEM_RE = re.compile(r"^a\^(\d+)$")


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """GF(q^2) with primitive element alpha, beta = alpha^(q+1) and lookup tables."""

    p: int
    e: int
    q: int
    modulus: Tuple[int, ...]
    GF: type = field(repr=False)
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)
    zech: np.ndarray = field(repr=False)

    # -- derived constants ---------------------------------------------------

    @property
    def order(self) -> int:
        return self.q * self.q

    @property
    def n1(self) -> int:
        """Multiplicative order q^2 - 1."""
        return self.q * self.q - 1

    @property
    def alpha(self) -> Elem:
        return 1

    @property
    def beta(self) -> Elem:
        return (self.q + 1) % self.n1

    @property
    def odd(self) -> bool:
        return self.p != 2

    @property
    def spec(self) -> FieldSpec:
        return FieldSpec(p=self.p, e=self.e, modulus=list(self.modulus))

    @property
    def subfield(self) -> List[Elem]:
        """GF(q) in canonical order: 0, beta^0, beta^1, ..., beta^(q-2)."""
        return [ZERO] + [(self.q + 1) * j for j in range(self.q - 1)]

    def elements(self) -> List[Elem]:
        """All of GF(q^2), zero first, then alpha^0 .. alpha^(q^2-2)."""
        return [ZERO] + list(range(self.n1))

    # -- scalar arithmetic ---------------------------------------------------

    def const(self, n: int) -> Elem:
        """Image of the integer n in the prime field."""
        n %= self.p
        return ZERO if n == 0 else int(self.log[n])

    def add(self, x: Elem, y: Elem) -> Elem:
        if x == ZERO:
            return y
        if y == ZERO:
            return x
        d = int(self.zech[(y - x) % self.n1])
        return ZERO if d == ZERO else (x + d) % self.n1

    def neg(self, x: Elem) -> Elem:
        if x == ZERO or self.p == 2:
            return x
        return (x + self.n1 // 2) % self.n1

    def sub(self, x: Elem, y: Elem) -> Elem:
        return self.add(x, self.neg(y))

    def mul(self, x: Elem, y: Elem) -> Elem:
        if x == ZERO or y == ZERO:
            return ZERO
        return (x + y) % self.n1

    def inv(self, x: Elem) -> Elem:
        if x == ZERO:
            raise DivisionByZero("zero has no inverse")
        return (-x) % self.n1

    def div(self, x: Elem, y: Elem) -> Elem:
        return self.mul(x, self.inv(y))

    def pow(self, x: Elem, n: int) -> Elem:
        if x == ZERO:
            if n < 0:
                raise DivisionByZero("negative power of zero")
            return ONE if n == 0 else ZERO
        return (x * n) % self.n1

    def frobenius(self, x: Elem) -> Elem:
        """x^q."""
        return self.pow(x, self.q)

    # -- norm, trace and the subfield -----------------------------------------

    def norm(self, x: Elem) -> Elem:
        """N(x) = x^(q+1), an element of GF(q)."""
        return self.pow(x, self.q + 1)

    def trace(self, x: Elem) -> Elem:
        """Tr(x) = x + x^q, an element of GF(q)."""
        return self.add(x, self.frobenius(x))

    def in_subfield(self, x: Elem) -> bool:
        return x == ZERO or x % (self.q + 1) == 0

    def sub_index(self, x: Elem) -> int:
        """Position of a GF(q) element in ``subfield`` order."""
        if not self.in_subfield(x):
            raise NotInSubfield(f"{self.format(x)} is not in GF({self.q})")
        return 0 if x == ZERO else x // (self.q + 1) + 1

    def lift_trace(self, t: Elem) -> Elem:
        """Canonical c with Tr(c) = t, namely t * alpha / Tr(alpha)."""
        if not self.in_subfield(t):
            raise NotInSubfield(f"{self.format(t)} is not in GF({self.q})")
        return self.mul(t, self.div(self.alpha, self.trace(self.alpha)))

    def abs_trace(self, x: Elem) -> int:
        """Trace from GF(q) down to GF(p), returned as a residue in [0, p)."""
        if not self.in_subfield(x):
            raise NotInSubfield(f"{self.format(x)} is not in GF({self.q})")
        acc, y = ZERO, x
        for _ in range(self.e):
            acc = self.add(acc, y)
            y = self.pow(y, self.p)
        return 0 if acc == ZERO else int(self.exp[acc])

    def sqrt(self, x: Elem) -> Elem:
        """Canonical square root: alpha^(k/2) for even k, alpha^((k+q^2-1)/2) otherwise."""
        if x == ZERO:
            return ZERO
        if x % 2 == 0:
            return x // 2
        if (x + self.n1) % 2 == 0:
            return (x + self.n1) // 2
        raise NoSquareRoot(f"{self.format(x)} is not a square in GF({self.order})")

    def quad_char(self, a: Elem) -> int:
        """Quadratic character of GF(q), read off the parity of the beta-exponent."""
        if self.p == 2:
            raise EvenCharacteristic("quadratic character needs odd q")
        if not self.in_subfield(a):
            raise NotInSubfield(f"{self.format(a)} is not in GF({self.q})")
        if a == ZERO:
            return 0
        return 1 if (a // (self.q + 1)) % 2 == 0 else -1

    def char_sum(self, a: Elem, b: Elem, c: Elem) -> int:
        """Sum of eta(a g^2 + b g + c) over g in GF(q)."""
        if a == ZERO:
            raise ZeroA("leading coefficient must be nonzero")
        total = 0
        for g in self.subfield:
            v = self.add(self.add(self.mul(a, self.mul(g, g)), self.mul(b, g)), c)
            total += self.quad_char(v)
        return total

    # -- equation solving ------------------------------------------------------

    def hilbert90_solutions(self, t: Elem) -> List[Elem]:
        """All x with x^(q-1) = t; empty unless N(t) = 1, else exactly q-1 of them."""
        if t == ZERO:
            raise ZeroInput("x^(q-1) = 0 has only the trivial solution")
        if t % (self.q - 1) != 0:
            return []
        base = t // (self.q - 1)
        return sorted((base + j * (self.q + 1)) % self.n1 for j in range(self.q - 1))

    def coords(self, y: Elem) -> Tuple[Elem, Elem]:
        """GF(q)-coordinates (u, v) of y = u + v*alpha."""
        a = self.alpha
        dt = self.sub(a, self.frobenius(a))
        v = self.div(self.sub(y, self.frobenius(y)), dt)
        u = self.sub(y, self.mul(v, a))
        return u, v

    def linmap(self, a: Elem, x: Elem, sign: int = 1) -> Elem:
        """f(x) = 2ax - x^q for sign=+1, x^q - 2ax for sign=-1."""
        v = self.sub(self.mul(self.mul(self.const(2), a), x), self.frobenius(x))
        return v if sign > 0 else self.neg(v)

    def linmap_solve(self, a: Elem, k: Elem, sign: int = 1) -> List[Elem]:
        """All x with f(x) = k, solved as a 2x2 linear system over GF(q)."""
        if a == ZERO:
            raise ZeroA("linear map needs a nonzero a")
        c1 = self.coords(self.linmap(a, ONE, sign))
        ca = self.coords(self.linmap(a, self.alpha, sign))
        rhs = self.coords(k)
        pairs = self._solve2((c1[0], ca[0], c1[1], ca[1]), rhs)
        return sorted({self.add(u, self.mul(v, self.alpha)) for u, v in pairs})

    def _solve2(
        self, m: Tuple[Elem, Elem, Elem, Elem], r: Tuple[Elem, Elem]
    ) -> List[Tuple[Elem, Elem]]:
        m00, m01, m10, m11 = m
        r0, r1 = r
        det = self.sub(self.mul(m00, m11), self.mul(m01, m10))
        if det != ZERO:
            u = self.div(self.sub(self.mul(r0, m11), self.mul(m01, r1)), det)
            v = self.div(self.sub(self.mul(m00, r1), self.mul(r0, m10)), det)
            return [(u, v)]

        rows = [(m00, m01, r0), (m10, m11, r1)]
        live = [row for row in rows if row[0] != ZERO or row[1] != ZERO]
        if not live:
            if r0 == ZERO and r1 == ZERO:
                return [(u, v) for u in self.subfield for v in self.subfield]
            return []
        ra, rb, rr = live[0]
        part = (self.div(rr, ra), ZERO) if ra != ZERO else (ZERO, self.div(rr, rb))
        for x0, x1, rhs in rows:
            if self.add(self.mul(x0, part[0]), self.mul(x1, part[1])) != rhs:
                return []
        w = (rb, self.neg(ra))
        return [
            (self.add(part[0], self.mul(lam, w[0])), self.add(part[1], self.mul(lam, w[1])))
            for lam in self.subfield
        ]

    # -- vectorized arithmetic over numpy arrays of logs -----------------------

    def vmul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        return np.where((x < 0) | (y < 0), ZERO, (x + y) % self.n1)

    def vadd(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        d = self.zech[(y - x) % self.n1]
        s = np.where(d < 0, ZERO, (x + d) % self.n1)
        return np.where(x < 0, y, np.where(y < 0, x, s))

    def vneg(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.p == 2:
            return x
        return np.where(x < 0, ZERO, (x + self.n1 // 2) % self.n1)

    def vpow(self, x: np.ndarray, n: int) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if n == 0:
            return np.zeros_like(x)
        return np.where(x < 0, ZERO, (x * n) % self.n1)

    def vnorm(self, x: np.ndarray) -> np.ndarray:
        return self.vpow(x, self.q + 1)

    def vtrace(self, x: np.ndarray) -> np.ndarray:
        return self.vadd(x, self.vpow(x, self.q))

    def vsub_index(self, x: np.ndarray) -> np.ndarray:
        """Subfield positions for an array of GF(q) values."""
        x = np.asarray(x, dtype=np.int64)
        return np.where(x < 0, 0, x // (self.q + 1) + 1)

    def to_galois(self, x: np.ndarray) -> galois.FieldArray:
        """Convert logs to the polynomial-basis integers galois works with."""
        x = np.asarray(x, dtype=np.int64)
        ints = np.where(x < 0, 0, self.exp[np.where(x < 0, 0, x)])
        return self.GF(ints)

    def from_galois(self, arr: galois.FieldArray) -> np.ndarray:
        return self.log[np.asarray(arr, dtype=np.int64)]

    # -- text format -------------------------------------------------------------

    def format(self, x: Elem) -> str:
        return "0" if x == ZERO else f"a^{x}"

    def parse(self, text: str) -> Elem:
        s = text.strip()
        if s == "0":
            return ZERO
        if s == "1":
            return ONE
        match = _ELEM_RE.match(s)
        if not match:
            raise ParseError(f"expected '0' or 'a^k', got {text!r}")
        return int(match.group(1)) % self.n1


def _least_primitive_modulus(p: int, degree: int) -> galois.Poly:
    try:
        return galois.primitive_poly(p, degree, method="min")
    except Exception as exc:  # pragma: no cover - galois always finds one
        raise NoIrreducibleFound(f"no primitive polynomial of degree {degree} over GF({p})") from exc


def _modulus_poly(p: int, degree: int, coeffs: Sequence[int]) -> galois.Poly:
    if len(coeffs) != degree + 1:
        raise NoIrreducibleFound(
            f"modulus needs {degree + 1} coefficients c0..c{degree}, got {len(coeffs)}"
        )
    poly = galois.Poly([c % p for c in coeffs], field=galois.GF(p), order="asc")
    if poly.degree != degree:
        raise NoIrreducibleFound(f"modulus must have degree {degree}")
    if not poly.is_irreducible():
        raise NoIrreducibleFound(f"modulus {list(coeffs)} is not irreducible over GF({p})")
    lead = int(poly.coeffs[0])
    if lead != 1:
        poly = poly // galois.Poly([lead], field=galois.GF(p))
    return poly


def field_build(
    p: int,
    e: int,
    max_order: int = DEFAULT_MAX_ORDER,
    modulus: Optional[Sequence[int]] = None,
) -> FieldCtx:
    """Build GF(q^2), q = p^e, deterministically.

    Args:
        p: Characteristic.
        e: Degree of GF(q) over GF(p).
        max_order: Upper bound on q^2 (the tables hold q^2 entries).
        modulus: Optional ascending coefficients c0..c_{2e} of an irreducible
            polynomial; by default the lexicographically least primitive one.

    Returns:
        FieldCtx with alpha of order q^2 - 1.
    """
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise NotPrime(f"extension degree must be positive, got {e}")
    q = p**e
    order = q * q
    if order > max_order:
        raise TooLarge(f"q^2 = {order} exceeds the table bound {max_order}")

    degree = 2 * e
    poly = (
        _least_primitive_modulus(p, degree)
        if modulus is None
        else _modulus_poly(p, degree, modulus)
    )
    GF = galois.GF(order, irreducible_poly=poly)
    n1 = order - 1

    alpha = GF.primitive_element
    powers = alpha ** np.arange(n1)
    exp = np.asarray(powers.view(np.ndarray), dtype=np.int64)
    log = np.full(order, ZERO, dtype=np.int64)
    log[exp] = np.arange(n1, dtype=np.int64)
    shifted = np.asarray((powers + GF(1)).view(np.ndarray), dtype=np.int64)
    zech = log[shifted]

    coeffs = tuple(int(c) for c in poly.coeffs[::-1])
    logger.debug("Built GF(%d) with modulus %s, alpha=%d", order, coeffs, int(alpha))
    return FieldCtx(p=p, e=e, q=q, modulus=coeffs, GF=GF, exp=exp, log=log, zech=zech)


def factor_q(q: int) -> Tuple[int, int]:
    """Split a prime power q into (p, e)."""
    if q < 2 or not galois.is_prime_power(q):
        raise NotPrime(f"{q} is not a prime power")
    primes, exps = galois.factors(q)
    return int(primes[0]), int(exps[0])


def field_for_q(
    q: int, max_order: int = DEFAULT_MAX_ORDER, modulus: Optional[Sequence[int]] = None
) -> FieldCtx:
    p, e = factor_q(q)
    return field_build(p, e, max_order=max_order, modulus=modulus)


def field_from_spec(spec: FieldSpec, max_order: int = DEFAULT_MAX_ORDER) -> FieldCtx:
    return field_build(spec.p, spec.e, max_order=max_order, modulus=spec.modulus)
