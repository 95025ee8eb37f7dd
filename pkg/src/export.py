"""Serialization of census tables, reports and check matrices."""

from __future__ import annotations

import json
import logging
import struct
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel

from .codes import CheckMatrix
from .gf import FieldCtx
from .models import CensusTable

logger = logging.getLogger(__name__)

HMAT_MAGIC = b"HMAT"
ZERO_SENTINEL = 0xFFFFFFFF


def to_json(obj: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent."""
    if isinstance(obj, BaseModel):
        obj = obj.model_dump(mode="json")
    return json.dumps(obj, sort_keys=True, indent=2)


def census_frame(table: CensusTable) -> pd.DataFrame:
    return pd.DataFrame([r.model_dump() for r in table.rows], columns=["k", "count"])


def census_to_csv(table: CensusTable) -> str:
    return census_frame(table).to_csv(index=False)


def matrix_to_csv(ctx: FieldCtx, H: CheckMatrix) -> str:
    """One row per monomial, entries as '0' or 'a^k'."""
    cells = [[ctx.format(int(v)) for v in row] for row in H.entries]
    return pd.DataFrame(cells).to_csv(index=False, header=False)


def matrix_to_bytes(H: CheckMatrix) -> bytes:
    """'HMAT', then u32 q, m, rows, cols, then row-major u32 logs (zero as 0xFFFFFFFF)."""
    rows, cols = H.shape
    header = HMAT_MAGIC + struct.pack("<4I", H.q, H.m, rows, cols)
    body = np.where(H.entries < 0, ZERO_SENTINEL, H.entries).astype("<u4")
    return header + body.tobytes(order="C")


def matrix_from_bytes(data: bytes) -> tuple[int, int, np.ndarray]:
    """Inverse of matrix_to_bytes: (q, m, log entries with -1 for zero)."""
    if data[:4] != HMAT_MAGIC:
        raise ValueError("not an HMAT blob")
    q, m, rows, cols = struct.unpack("<4I", data[4:20])
    body = np.frombuffer(data[20:], dtype="<u4").reshape(rows, cols).astype(np.int64)
    return q, m, np.where(body == ZERO_SENTINEL, -1, body)


def write_bytes(path: Path, data: bytes) -> None:
    path.write_bytes(data)
    logger.info("Wrote %d bytes to %s", len(data), path)
