# ABOUTME: Database module for the classification catalogue
# ABOUTME: Stores braces and their constructed solutions in SQLite and reads solutions back

import logging
from pathlib import Path
from typing import Any, List, Optional, Sequence

from sqlalchemy import (
    JSON,
    Boolean,
    Column,
    DateTime,
    ForeignKey,
    Integer,
    String,
    create_engine,
)
from sqlalchemy.orm import DeclarativeBase, sessionmaker
from sqlalchemy.sql import func

from .braces import SkewBrace, socle
from .solutions import Solution, is_involutive, is_square_free

logger = logging.getLogger(__name__)


class Base(DeclarativeBase):
    pass


class BraceRecord(Base):
    """SQLAlchemy model for a classified brace."""

    __tablename__ = "braces"

    id = Column(Integer, primary_key=True, autoincrement=True)
    name = Column(String, nullable=False)
    order = Column(Integer, nullable=False)
    star = Column(JSON, nullable=False)
    dot = Column(JSON, nullable=False)
    is_left = Column(Boolean, nullable=False)
    socle_size = Column(Integer, nullable=False)
    created_at = Column(DateTime, default=func.now())


class SolutionRecord(Base):
    """SQLAlchemy model for one solution kept by a classification run."""

    __tablename__ = "solutions"

    id = Column(Integer, primary_key=True, autoincrement=True)
    brace_id = Column(Integer, ForeignKey("braces.id"), nullable=False, index=True)
    position = Column(Integer, nullable=False)
    size = Column(Integer, nullable=False)
    f = Column(JSON, nullable=False)
    g = Column(JSON, nullable=False)
    involutive = Column(Boolean, nullable=False)
    square_free = Column(Boolean, nullable=False)
    spec = Column(JSON)
    created_at = Column(DateTime, default=func.now())


def init_db(db_path: str) -> None:
    """
    Initialize the database and create tables.

    Args:
        db_path: Path to the SQLite database file
    """
    Path(db_path).parent.mkdir(parents=True, exist_ok=True)
    engine = create_engine(f"sqlite:///{db_path}")
    Base.metadata.create_all(engine)


def get_session(db_path: str) -> Any:
    """
    Get a SQLAlchemy session for the database.

    Args:
        db_path: Path to the SQLite database file

    Returns:
        SQLAlchemy session object
    """
    engine = create_engine(f"sqlite:///{db_path}")
    Session = sessionmaker(bind=engine)
    return Session()


def store_classification(
    db_path: str,
    name: str,
    brace: SkewBrace,
    solutions: Sequence[Solution],
    specs: Optional[Sequence[Optional[dict]]] = None,
) -> int:
    """
    Write one brace row and its solutions in a single transaction.

    Args:
        db_path: Path to the SQLite database file
        name: Label for the brace
        brace: The classified brace
        solutions: Solutions in canonical order
        specs: Optional serialised spec per solution

    Returns:
        The id of the new brace row
    """
    init_db(db_path)
    session = get_session(db_path)
    specs = list(specs) if specs is not None else [None] * len(solutions)

    try:
        record = BraceRecord(
            name=name,
            order=brace.order,
            star=brace.star.table.tolist(),
            dot=brace.dot.table.tolist(),
            is_left=brace.is_left,
            socle_size=socle(brace).order,
        )
        session.add(record)
        session.flush()
        for position, (S, spec) in enumerate(zip(solutions, specs)):
            session.add(
                SolutionRecord(
                    brace_id=record.id,
                    position=position,
                    size=S.size,
                    f=S.F.tolist(),
                    g=S.Gt.tolist(),
                    involutive=is_involutive(S),
                    square_free=is_square_free(S),
                    spec=spec,
                )
            )
        session.commit()
        brace_id = int(record.id)
        logger.info(f"Stored brace {name!r} with {len(solutions)} solutions as id {brace_id}")
        return brace_id
    except Exception:
        session.rollback()
        raise
    finally:
        session.close()


def load_solutions(db_path: str, brace_id: int) -> List[Solution]:
    """Solutions stored for a brace, in the order they were written."""
    session = get_session(db_path)

    try:
        rows = (
            session.query(SolutionRecord)
            .filter(SolutionRecord.brace_id == brace_id)
            .order_by(SolutionRecord.position)
            .all()
        )
        return [Solution(row.f, row.g) for row in rows]
    finally:
        session.close()
