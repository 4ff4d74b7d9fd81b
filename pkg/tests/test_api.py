import pytest
from fastapi.testclient import TestClient

from app.main import app
from config.database import get_db

A2_MODULE = {"kind": "diagonal", "factors": [2, 2], "degrees": [[1, 0], [0, 1]], "characters": [[1, 0], [1, 1]]}


@pytest.fixture
def client(db_session):
    def override_get_db():
        yield db_session

    app.dependency_overrides[get_db] = override_get_db
    try:
        yield TestClient(app)
    finally:
        app.dependency_overrides.clear()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_root_system(client):
    response = client.get("/api/v1/root-systems/A4")
    assert response.status_code == 200
    body = response.json()
    assert body["nullity"] == 0
    assert len(body["vectors"]) == 4


def test_root_system_of_unsupported_diagram(client):
    response = client.get("/api/v1/root-systems/B3")
    assert response.status_code == 422
    assert response.headers["X-Error-Code"] == "UnsupportedError"


def test_construct_and_verify(client):
    response = client.post("/api/v1/constructions", json={"group": {"preset": "D4"}, "type": "unramified:A2"})
    assert response.status_code == 200
    bundle = response.json()
    assert bundle["folded_type"] == "A2"
    assert bundle["hilbert"]["dimension"] == 64

    response = client.post("/api/v1/verify", json={"bundle": bundle, "oracle_degree": 2})
    assert response.status_code == 200
    assert response.json()["passed"]


def test_construction_without_symplectic_root_system(client):
    response = client.post("/api/v1/constructions", json={"group": {"preset": "D4"}, "type": "unramified:A3"})
    assert response.status_code == 422
    assert response.headers["X-Error-Code"] == "NoSymplecticRootSystemError"


def test_fold_uses_one_based_orbits(client):
    cartan = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    response = client.post("/api/v1/fold", json={"cartan": cartan, "orbits": [[1, 3], [2]]})
    assert response.status_code == 200
    assert response.json()["folded"]["type"] == "C2"


def test_oracle_profile_is_cached(client):
    payload = {"module": A2_MODULE, "d_max": 3}
    first = client.post("/api/v1/oracle/profile", json=payload)
    assert first.status_code == 200
    assert first.json()["coefficients"] == [1, 2, 2, 2]
    assert first.json()["cached_degrees"] == []

    second = client.post("/api/v1/oracle/profile", json={**payload, "d_max": 4})
    assert second.json()["coefficients"] == [1, 2, 2, 2, 1]
    assert second.json()["cached_degrees"] == [0, 1, 2, 3]


def test_oracle_profile_without_cache(client):
    response = client.post("/api/v1/oracle/profile", json={"module": A2_MODULE, "d_max": 2, "use_cache": False})
    assert response.status_code == 200
    assert response.json()["cached_degrees"] == []


def test_oracle_profile_over_the_bound(client):
    response = client.post("/api/v1/oracle/profile", json={"module": A2_MODULE, "d_max": 16})
    assert response.status_code == 413
    assert response.headers["X-Error-Code"] == "ResourceLimitError"


def test_examples(client):
    listing = client.get("/api/v1/examples").json()
    assert len(listing) == 13
    detail = client.get("/api/v1/examples/A2-D4-diag")
    assert detail.status_code == 200
    assert detail.json()["expected"]["coefficients"] == [1, 4, 8, 12, 14, 12, 8, 4, 1]
    assert client.get("/api/v1/examples/nowhere").status_code == 404


def test_example_check(client):
    response = client.get("/api/v1/examples/A2-D4-diag/check", params={"degree": 2})
    assert response.status_code == 200
    assert response.json()["passed"]


def test_table_and_matsumoto(client):
    assert len(client.get("/api/v1/table").json()) == 5
    response = client.post("/api/v1/matsumoto", json={"h2_group": 2, "h2_base": 2, "p": 2})
    assert response.json() == {"count": 2, "nondiagonal": True}
    response = client.post("/api/v1/matsumoto", json={"h2_group": 1, "h2_base": 4, "p": 2})
    assert response.status_code == 422
