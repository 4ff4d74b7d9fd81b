"""Shared fixtures: preset extensions, the D4 example and an in-memory cache database."""

import pytest
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

from models import Base
from services.groups import CentralExtension
from services.presets import preset_extension
from services.registry import ExampleBundle, worked_example


@pytest.fixture(scope="session")
def d4() -> CentralExtension:
    return preset_extension("D4")


@pytest.fixture(scope="session")
def q8() -> CentralExtension:
    return preset_extension("Q8")


@pytest.fixture(scope="session")
def d4xz2() -> CentralExtension:
    return preset_extension("D4xZ2")


@pytest.fixture(scope="session")
def d4_example() -> ExampleBundle:
    """O_h ⊕ O_gh over D4 with χ(θ*) = 1."""
    return worked_example("A2-D4-diag")


@pytest.fixture
def db_session():
    engine = create_engine(
        "sqlite://",
        connect_args={"check_same_thread": False},
        poolclass=StaticPool,
    )
    Base.metadata.create_all(engine)
    session = sessionmaker(autocommit=False, autoflush=False, bind=engine)()
    try:
        yield session
    finally:
        session.close()
        engine.dispose()
