from __future__ import annotations

import pytest
from importlib import resources

from sdgraph import Catalog, official_catalog
from sdgraph.service import SqliteStore, hash_password
from sdgraph.survey import Role, UserStatus

import edgesets


@pytest.fixture(scope="session")
def official() -> Catalog:
    return official_catalog()


@pytest.fixture(scope="session")
def official_csv_text() -> str:
    return resources.files("sdgraph").joinpath("data/sdg_targets.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def extended(official_csv_text) -> Catalog:
    """Official catalog plus the 4.8 / 5.8 targets of the reference tables."""
    return edgesets.extended_catalog(official_csv_text)


@pytest.fixture
def store(tmp_path) -> SqliteStore:
    return SqliteStore(tmp_path / "survey.sqlite3")


@pytest.fixture
def seeded_store(store, official) -> SqliteStore:
    store.seed_catalog(official)
    return store


def make_admin(store: SqliteStore, login: str = "root", password: str = "admin-pw"):
    return store.create_user(
        login=login,
        password_hash=hash_password(password),
        full_name="Root Admin",
        years_experience=10,
        status=UserStatus.APPROVED,
        role=Role.ADMIN,
    )


@pytest.fixture
def client(seeded_store):
    """TestClient over a seeded database with one admin (root / admin-pw)."""
    from fastapi.testclient import TestClient

    from sdgraph.service import create_app

    make_admin(seeded_store)
    app = create_app(db_path=seeded_store.path)
    with TestClient(app) as c:
        yield c


def login_token(client, login: str, password: str) -> str:
    response = client.post("/api/v1/login", json={"login": login, "password": password})
    assert response.status_code == 200, response.text
    return response.json()["token"]


def auth(token: str) -> dict:
    return {"Authorization": f"Bearer {token}"}
