"""
Persistent memo table for Hall polynomials.

Interpolating a Hall polynomial means enumerating subrepresentations over
several prime fields, so finished polynomials can be kept in any database
SQLAlchemy can reach (HALL_DATABASE_URL) and reused across runs.
"""

import json
import logging
import os
from contextlib import contextmanager
from datetime import datetime, timezone
from typing import Dict, Optional

from dotenv import load_dotenv
from sqlalchemy import Column, DateTime, Integer, String, Text, UniqueConstraint, create_engine, func
from sqlalchemy.orm import declarative_base, sessionmaker
from sqlalchemy.pool import StaticPool

from exact_arith import LaurentPoly
from fflv_polytope import ExponentVector

load_dotenv()

logger = logging.getLogger(__name__)

Base = declarative_base()


class HallPolynomialRecord(Base):
    """One interpolated Hall polynomial F^X_{M,N}(u)"""
    __tablename__ = 'hall_polynomials'
    __table_args__ = (UniqueConstraint('rank', 'm_key', 'n_key', 'x_key', name='uq_hall_triple'),)

    id = Column(Integer, primary_key=True)
    rank = Column(Integer, nullable=False, index=True)
    m_key = Column(String(200), nullable=False)  # quotient class
    n_key = Column(String(200), nullable=False)  # sub class
    x_key = Column(String(200), nullable=False)  # middle term
    coefficients = Column(Text, nullable=False)  # {"u-exponent": coefficient}
    degree_bound = Column(Integer, nullable=False)
    held_out_prime = Column(Integer, nullable=False)
    created_at = Column(DateTime, default=lambda: datetime.now(timezone.utc))

    def __repr__(self):
        return f"<HallPolynomialRecord(rank={self.rank}, M={self.m_key}, N={self.n_key}, X={self.x_key})>"


def class_key(m: ExponentVector) -> str:
    return json.dumps(m.to_json(), sort_keys=True, separators=(',', ':'))


def encode_polynomial(polynomial: LaurentPoly) -> str:
    return json.dumps({str(e): c for e, c in polynomial.items()}, sort_keys=True)


def decode_polynomial(text: str) -> LaurentPoly:
    return LaurentPoly({int(e): int(c) for e, c in json.loads(text).items()})


class HallPolynomialStore:
    def __init__(self, url: str):
        self.url = url
        options = {'echo': False}
        if url.startswith('sqlite'):
            options['connect_args'] = {'check_same_thread': False}
            if url in ('sqlite://', 'sqlite:///:memory:'):
                options['poolclass'] = StaticPool
        else:
            options['pool_pre_ping'] = True
        try:
            self.engine = create_engine(url, **options)
            logger.info(f"Hall store engine created: {url}")
        except Exception as e:
            logger.error(f"Failed to create Hall store engine: {e}")
            raise
        self.SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=self.engine)

    def create_tables(self):
        try:
            Base.metadata.create_all(bind=self.engine)
            logger.info(f"Tables: {', '.join(Base.metadata.tables.keys())}")
        except Exception as e:
            logger.error(f"Error initializing Hall store: {e}")
            raise

    @contextmanager
    def session(self):
        """
        Session that commits on success and rolls back on error.

        Yields:
            SQLAlchemy Session object
        """
        db = self.SessionLocal()
        try:
            yield db
            db.commit()
        except Exception as e:
            db.rollback()
            logger.error(f"Hall store error, rolled back: {e}")
            raise
        finally:
            db.close()

    def _query(self, db, rank: int, m: ExponentVector, n: ExponentVector, x: ExponentVector):
        return db.query(HallPolynomialRecord).filter(
            HallPolynomialRecord.rank == rank,
            HallPolynomialRecord.m_key == class_key(m),
            HallPolynomialRecord.n_key == class_key(n),
            HallPolynomialRecord.x_key == class_key(x),
        )

    def get(self, rank: int, m: ExponentVector, n: ExponentVector, x: ExponentVector) -> Optional[LaurentPoly]:
        with self.session() as db:
            record = self._query(db, rank, m, n, x).first()
            return decode_polynomial(record.coefficients) if record else None

    def put(self, rank: int, m: ExponentVector, n: ExponentVector, x: ExponentVector,
            polynomial: LaurentPoly, degree_bound: int, held_out_prime: int):
        with self.session() as db:
            record = self._query(db, rank, m, n, x).first()
            if record is None:
                record = HallPolynomialRecord(rank=rank, m_key=class_key(m), n_key=class_key(n),
                                              x_key=class_key(x))
                db.add(record)
            record.coefficients = encode_polynomial(polynomial)
            record.degree_bound = degree_bound
            record.held_out_prime = held_out_prime

    def stats(self) -> Dict[int, int]:
        """Number of stored polynomials per rank."""
        with self.session() as db:
            rows = (db.query(HallPolynomialRecord.rank, func.count(HallPolynomialRecord.id))
                    .group_by(HallPolynomialRecord.rank).all())
            return {rank: count for rank, count in rows}

    def clear(self, rank: Optional[int] = None) -> int:
        with self.session() as db:
            query = db.query(HallPolynomialRecord)
            if rank is not None:
                query = query.filter(HallPolynomialRecord.rank == rank)
            deleted = query.delete()
        logger.info(f"Cleared {deleted} Hall polynomials" + (f" for rank {rank}" if rank else ""))
        return deleted


def init_store(url: Optional[str] = None) -> HallPolynomialStore:
    """
    Open (and create if needed) the Hall polynomial store.

    Args:
        url: SQLAlchemy URL; defaults to HALL_DATABASE_URL, then ./data/hall.db
    """
    url = url or os.getenv('HALL_DATABASE_URL', 'sqlite:///./data/hall.db')
    if url.startswith('sqlite:///./'):
        os.makedirs(os.path.dirname(url[len('sqlite:///'):]) or '.', exist_ok=True)
    store = HallPolynomialStore(url)
    store.create_tables()
    return store
