"""Process pool that rebuilds the field once per worker."""

from __future__ import annotations

import logging
from multiprocessing import Pool
from typing import Any, Callable, List, Optional, Sequence, TypeVar

from .gf import FieldCtx, field_from_spec
from .models import FieldSpec

logger = logging.getLogger(__name__)

T = TypeVar("T")

_CTX: Optional[FieldCtx] = None
_SHARED: Any = None


def _init_worker(spec_json: str, max_order: int, shared: Any) -> None:
    global _CTX, _SHARED
    _CTX = field_from_spec(FieldSpec.model_validate_json(spec_json), max_order=max_order)
    _SHARED = shared


def _invoke(args):
    func, item = args
    return func(_CTX, _SHARED, item)


def map_ordered(
    ctx: FieldCtx,
    func: Callable[[FieldCtx, Any, Any], T],
    items: Sequence[Any],
    workers: int = 1,
    shared: Any = None,
) -> List[T]:
    """Apply ``func(ctx, shared, item)`` to every item, results in item order.

    ``func`` must be a module-level function so it pickles by reference.
    Output never depends on ``workers``: results come back in input order and
    callers merge them with integer addition.
    """
    if workers <= 1 or len(items) <= 1:
        return [func(ctx, shared, item) for item in items]

    logger.info("Dispatching %d tasks to %d workers", len(items), workers)
    with Pool(
        processes=workers,
        initializer=_init_worker,
        initargs=(ctx.spec.model_dump_json(), ctx.order, shared),
    ) as pool:
        return pool.map(_invoke, [(func, item) for item in items])
