"""SQLAlchemy ORM + helper functions for idempotent SQLite persistence of results."""

import logging
from typing import Optional

from sqlalchemy import BigInteger, Column, Integer, String, create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from .models import CensusRow, CensusTable, Weight4Report

logger = logging.getLogger(__name__)
Base = declarative_base()


class CensusRecord(Base):
    __tablename__ = "census_rows"
    q = Column(Integer, primary_key=True)
    mode = Column(String, primary_key=True)
    k = Column(Integer, primary_key=True)
    count = Column(BigInteger, nullable=False)


class Weight4Record(Base):
    __tablename__ = "weight4"
    q = Column(Integer, primary_key=True)
    code = Column(String, primary_key=True)
    a4_formula = Column(BigInteger, nullable=False)
    a4_brute = Column(BigInteger, nullable=True)


def init_db(db_path: str = "hermitian_results.db") -> sessionmaker:
    """Initialize SQLite database and return session maker.

    Args:
        db_path: Path to SQLite database file.

    Returns:
        SQLAlchemy sessionmaker instance.
    """
    engine = create_engine(f"sqlite:///{db_path}", connect_args={"check_same_thread": False})
    Base.metadata.create_all(engine)
    return sessionmaker(bind=engine)


def save_census(session_maker: sessionmaker, table: CensusTable) -> None:
    """Upsert every row of a census; re-running the same census changes nothing."""
    session = session_maker()
    try:
        for row in table.rows:
            session.merge(CensusRecord(q=table.q, mode=table.mode, k=row.k, count=row.count))
        session.commit()
        logger.info("Saved %d census rows for q=%d (%s)", len(table.rows), table.q, table.mode)
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def load_census(session_maker: sessionmaker, q: int, mode: str) -> Optional[CensusTable]:
    session = session_maker()
    try:
        recs = (
            session.query(CensusRecord)
            .filter_by(q=q, mode=mode)
            .order_by(CensusRecord.k)
            .all()
        )
        if not recs:
            return None
        rows = [CensusRow(k=r.k, count=r.count) for r in recs]
        return CensusTable(q=q, mode=mode, rows=rows, total=sum(r.count for r in rows))
    finally:
        session.close()


def save_weight4(session_maker: sessionmaker, report: Weight4Report) -> None:
    session = session_maker()
    try:
        session.merge(
            Weight4Record(
                q=report.q,
                code=report.code,
                a4_formula=report.a4_formula,
                a4_brute=report.a4_brute,
            )
        )
        session.commit()
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def load_weight4(session_maker: sessionmaker, q: int, code: str) -> Optional[Weight4Report]:
    session = session_maker()
    try:
        rec = session.get(Weight4Record, (q, code))
        if rec is None:
            return None
        return Weight4Report(code=rec.code, q=rec.q, a4_formula=rec.a4_formula, a4_brute=rec.a4_brute)
    finally:
        session.close()
