"""Pydantic models for reports and machine-readable output."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class FieldSpec(BaseModel):
    """Serialized field: enough to rebuild the same tables anywhere."""

    p: int = Field(..., ge=2)
    e: int = Field(..., ge=1)
    modulus: List[int]

    @model_validator(mode="after")
    def modulus_length(self):
        if len(self.modulus) != 2 * self.e + 1:
            raise ValueError("modulus must list c0..c_{2e}")
        return self


DeltaKind = Literal["Zero", "SquareInFq", "NonSquareInFq", "EvenChar"]


class DeltaClass(BaseModel):
    delta: int
    kind: DeltaKind
    z: Optional[int] = None


class ClassificationResult(BaseModel):
    count: int = Field(..., ge=0)
    branch: str
    reduced: Optional[Tuple[int, int, int]] = None
    gamma: Optional[int] = None
    t0: Optional[int] = None
    brute: Optional[int] = None


class CensusRow(BaseModel):
    k: int = Field(..., ge=0)
    count: int = Field(..., ge=0)


class CensusTable(BaseModel):
    """Exact map: intersection count k -> number of curves N_k."""

    q: int
    mode: str
    rows: List[CensusRow]
    total: int

    @field_validator("rows")
    @classmethod
    def rows_sorted(cls, v: List[CensusRow]) -> List[CensusRow]:
        keys = [r.k for r in v]
        if keys != sorted(set(keys)):
            raise ValueError("rows must have distinct, ascending k")
        return v

    @model_validator(mode="after")
    def total_matches(self):
        if self.total != sum(r.count for r in self.rows):
            raise ValueError("total must equal the sum of the rows")
        return self

    @classmethod
    def from_counts(
        cls, q: int, mode: str, counts: Dict[int, int], keys: Tuple[int, ...] = ()
    ) -> "CensusTable":
        merged: Dict[int, int] = {k: 0 for k in keys}
        for k, n in counts.items():
            merged[int(k)] = merged.get(int(k), 0) + int(n)
        rows = [CensusRow(k=k, count=merged[k]) for k in sorted(merged)]
        return cls(q=q, mode=mode, rows=rows, total=sum(merged.values()))

    @staticmethod
    def class_keys(q: int) -> Tuple[int, ...]:
        """Every count a parabola can have, listed even when no parabola attains it."""
        if q % 2:
            keys = {0, 1, q - 1, q, q + 1, 2 * q - 1, 2 * q}
        else:
            keys = {1, q - 1, q + 1, 2 * q - 1}
        return tuple(sorted(keys))

    def as_dict(self) -> Dict[int, int]:
        return {r.k: r.count for r in self.rows}

    def incidences(self) -> int:
        return sum(r.k * r.count for r in self.rows)

    def same_rows(self, other: "CensusTable") -> bool:
        return self.as_dict() == other.as_dict()


class MonomialBasis(BaseModel):
    q: int
    m: int
    monomials: List[Tuple[int, int]]


class CodeSpec(BaseModel):
    q: int
    m: int
    n: int
    phase: int = Field(..., ge=1, le=4)
    a: Optional[int] = None
    b: Optional[int] = None
    d: int
    k: int
    basis_size: int
    label: Optional[str] = None


class Weight4Report(BaseModel):
    code: Literal["H0_3", "H1_3", "H2_3"]
    q: int
    a4_formula: int
    a4_brute: Optional[int] = None
    n_k: Optional[Dict[int, int]] = None

    @property
    def agree(self) -> bool:
        return self.a4_brute is None or self.a4_brute == self.a4_formula


class OrbitViolation(BaseModel):
    parabola: Tuple[int, int, int]
    sigma: Tuple[int, int]
    before: int
    after: int


class OrbitReport(BaseModel):
    q: int
    exhaustive: bool
    parabolas: int
    automorphisms: int
    pairs: int
    violations: List[OrbitViolation] = []


class Mismatch(BaseModel):
    a: int
    b: int
    t: int
    classified: int
    brute: int


class CheckReport(BaseModel):
    name: str
    checked: int
    violations: int
    detail: List[str] = []


class VerificationReport(BaseModel):
    q: int
    checks: List[CheckReport]

    @property
    def ok(self) -> bool:
        return all(c.violations == 0 for c in self.checks)
