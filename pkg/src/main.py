"""CLI entrypoint using Typer: fields, classifications, censuses, codes and self-checks."""

import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError

from .classify import census_by_classifier, census_closed, check_identities, classify as classify_parabola
from .codes import check_matrix, corner_edge_code, min_distance, phase_params, weight4_report
from .config import Settings, load_settings
from .curve import make_parabola
from .database import init_db, save_census, save_weight4
from .errors import HermitianError, ParseError
from .export import census_to_csv, matrix_to_bytes, matrix_to_csv, to_json, write_bytes
from .gf import FieldCtx, field_for_q
from .oracle import brute_census
from .verify import run_verification

app = typer.Typer(help="Hermitian curve versus parabolas over GF(q^2).")
logger = logging.getLogger("hermitian")

LOG_FORMAT = "%(asctime)s %(levelname)s %(message)s"
EXIT_INVALID = 2
EXIT_MISMATCH = 3


class Mode(str, Enum):
    closed = "closed"
    classifier = "classifier"
    brute = "brute"


class OutFormat(str, Enum):
    json = "json"
    csv = "csv"


class Action(str, Enum):
    info = "info"
    matrix = "matrix"
    weight4 = "weight4"


@dataclass
class AppState:
    settings: Settings
    modulus: Optional[List[int]] = None

    def field(self, q: int) -> FieldCtx:
        return field_for_q(q, max_order=self.settings.limits.max_field_order, modulus=self.modulus)

    def workers(self, override: Optional[int]) -> int:
        return override if override is not None else self.settings.run.workers


@contextmanager
def _invalid_input_exits():
    try:
        yield
    except (HermitianError, ValidationError) as exc:
        logger.error("%s", exc)
        raise typer.Exit(code=EXIT_INVALID)


def _parse_modulus(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(c) for c in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"--field-modulus expects comma-separated integers, got {text!r}") from exc


def _emit(text: str) -> None:
    typer.echo(text.rstrip("\n"))


@app.callback()
def main(
    ctx: typer.Context,
    config_path: Path = typer.Option(Path("config.yaml"), "--config", "-c", help="Path to config YAML"),
    field_modulus: Optional[str] = typer.Option(
        None, "--field-modulus", help="Ascending coefficients c0,...,c2e of an irreducible modulus"
    ),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING, ..."),
):
    """Load settings and configure logging for every subcommand."""
    settings = load_settings(config_path if config_path.exists() else None)
    level = (log_level or settings.logging.level).upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    with _invalid_input_exits():
        ctx.obj = AppState(settings=settings, modulus=_parse_modulus(field_modulus))


@app.command()
def field(ctx: typer.Context, q: int = typer.Option(..., "--q", help="Prime power q")):
    """Print the field description {p, e, modulus} as JSON."""
    state: AppState = ctx.obj
    with _invalid_input_exits():
        _emit(to_json(state.field(q).spec))


@app.command()
def census(
    ctx: typer.Context,
    q: int = typer.Option(..., "--q", help="Prime power q"),
    mode: Mode = typer.Option(Mode.closed, "--mode"),
    verify: bool = typer.Option(False, "--verify", help="Cross-check closed, classifier and brute modes"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    out: OutFormat = typer.Option(OutFormat.json, "--out"),
    db_path: Optional[Path] = typer.Option(None, "--db", help="SQLite file to store the rows"),
):
    """Number of parabolas meeting the curve in exactly k points, for every k."""
    state: AppState = ctx.obj
    n_workers = state.workers(workers)
    limit = state.settings.limits.max_enum_q
    with _invalid_input_exits():
        fctx = state.field(q)
        builders = {
            Mode.closed: lambda: census_closed(q),
            Mode.classifier: lambda: census_by_classifier(fctx, workers=n_workers, max_q=limit),
            Mode.brute: lambda: brute_census(fctx, workers=n_workers, max_q=limit),
        }
        table = builders[mode]()
        others = []
        if verify:
            modes = [m for m in Mode if m != mode and (m == Mode.closed or q <= limit)]
            others = [builders[m]() for m in modes]

    problems = check_identities(table)
    for other in others:
        if not other.same_rows(table):
            problems.append(f"{other.mode} census differs from {table.mode}")
        else:
            logger.info("%s census agrees with %s", other.mode, table.mode)

    path = db_path or (Path(state.settings.database.path) if state.settings.database.path else None)
    if path is not None:
        sm = init_db(str(path))
        for t in [table, *others]:
            save_census(sm, t)

    _emit(census_to_csv(table) if out == OutFormat.csv else to_json(table))
    if problems:
        for p in problems:
            logger.error("q=%d: %s", q, p)
        raise typer.Exit(code=EXIT_MISMATCH)


@app.command("classify")
def classify_cmd(
    ctx: typer.Context,
    q: int = typer.Option(..., "--q", help="Prime power q"),
    a: str = typer.Option(..., "--a", help="'0' or 'a^k'"),
    b: str = typer.Option("0", "--b"),
    c: str = typer.Option("0", "--c"),
    brute: bool = typer.Option(False, "--brute", help="Also count by brute force"),
):
    """Intersection count of y = ax^2 + bx + c with the curve."""
    state: AppState = ctx.obj
    with _invalid_input_exits():
        fctx = state.field(q)
        par = make_parabola(fctx.parse(a), fctx.parse(b), fctx.parse(c))
        result = classify_parabola(fctx, par, brute=brute)
    _emit(to_json(result))
    if result.brute is not None and result.brute != result.count:
        logger.error("classifier gives %d, brute force %d", result.count, result.brute)
        raise typer.Exit(code=EXIT_MISMATCH)


@app.command()
def code(
    ctx: typer.Context,
    action: Action = typer.Argument(Action.info),
    q: int = typer.Option(..., "--q", help="Prime power q"),
    m: Optional[int] = typer.Option(None, "--m", help="One-point code C(m)"),
    corner: Optional[int] = typer.Option(None, "--corner", help="Corner code of designed distance d"),
    d: Optional[int] = typer.Option(None, "--d", help="Edge code distance (with --j)"),
    j: int = typer.Option(0, "--j", help="Number of edge monomials"),
    verify: bool = typer.Option(False, "--verify", help="Check formulas against enumeration"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
    out: OutFormat = typer.Option(OutFormat.json, "--out"),
    binary: Optional[Path] = typer.Option(None, "--binary", help="Also write the check matrix as HMAT"),
    db_path: Optional[Path] = typer.Option(None, "--db"),
):
    """Parameters, check matrix or weight-4 count of a Hermitian code."""
    state: AppState = ctx.obj
    limits = state.settings.limits
    n_workers = state.workers(workers)
    problems: List[str] = []

    with _invalid_input_exits():
        fctx = state.field(q)
        if corner is not None:
            d, j = corner, 0
        if m is not None:
            spec = phase_params(q, m)
            H = check_matrix(fctx, m=m) if (verify or action == Action.matrix or binary) else None
        elif d is not None:
            spec, H = corner_edge_code(fctx, d, j)
        else:
            raise ParseError("give --m, --corner or --d")

        if action == Action.weight4:
            if m is not None or d != 3:
                raise ParseError("weight4 is defined for the d = 3 corner and edge codes")
            report = weight4_report(
                fctx, f"H{j}_3", brute=verify, workers=n_workers,
                max_supports=limits.max_weight4_supports,
            )
            if not report.agree:
                problems.append(f"A4 formula {report.a4_formula} != enumeration {report.a4_brute}")
            path = db_path or (Path(state.settings.database.path) if state.settings.database.path else None)
            if path is not None:
                save_weight4(init_db(str(path)), report)
            text = to_json(report)
        elif action == Action.matrix:
            if out == OutFormat.csv:
                text = matrix_to_csv(fctx, H)
            else:
                text = to_json({
                    "q": q,
                    "m": H.m,
                    "monomials": [list(mono) for mono in H.monomials],
                    "entries": [[fctx.format(int(v)) for v in row] for row in H.entries],
                })
        else:
            if verify:
                rank = H.rank(fctx)
                if rank != spec.basis_size or spec.k != spec.n - rank:
                    problems.append(f"rank {rank}, |B| {spec.basis_size}, k {spec.k}")
                dist = min_distance(
                    fctx, H, max_codewords=limits.max_codewords,
                    max_support_checks=limits.max_support_checks,
                )
                if dist != spec.d:
                    problems.append(f"minimum distance {dist} but the table gives {spec.d}")
            text = to_json(spec)

        if binary is not None and H is not None:
            write_bytes(binary, matrix_to_bytes(H))

    _emit(text)
    if problems:
        for p in problems:
            logger.error("q=%d: %s", q, p)
        raise typer.Exit(code=EXIT_MISMATCH)


@app.command()
def verify(
    ctx: typer.Context,
    q: int = typer.Option(..., "--q", help="Prime power q"),
    samples: Optional[int] = typer.Option(None, "--samples", min=1, help="Orbit-check sample size"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
):
    """Run every self-check for one field; exit 3 on any violation."""
    state: AppState = ctx.obj
    settings = state.settings
    if samples is not None:
        settings = settings.model_copy(
            update={"run": settings.run.model_copy(update={"orbit_samples": samples})}
        )
    with _invalid_input_exits():
        report = run_verification(state.field(q), settings, workers=state.workers(workers))
    _emit(to_json(report))
    if not report.ok:
        logger.error("Verification failed for q=%d", q)
        raise typer.Exit(code=EXIT_MISMATCH)
    logger.info("All %d checks passed for q=%d", len(report.checks), q)


if __name__ == "__main__":
    app()
