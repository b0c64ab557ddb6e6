"""HTTP surface: health, fixtures and analysis routes."""

import pytest
from fastapi.testclient import TestClient

from focalfront.api.main import app
from focalfront.config import get_settings

PREFIX = get_settings().api_prefix


@pytest.fixture
def client():
    with TestClient(app) as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_root(client):
    body = client.get("/").json()
    assert body["status"] == "operational"
    assert body["schema_version"] == "1.0"


class TestFixtureRoutes:
    def test_list(self, client):
        response = client.get(f"{PREFIX}/fixtures/")
        assert response.status_code == 200
        names = [entry["name"] for entry in response.json()]
        assert "sw-ce" in names

    def test_detail(self, client):
        body = client.get(f"{PREFIX}/fixtures/sw-ce").json()
        assert body["expected_class"] == "Swallowtail"
        assert body["expected_focal_class"] == "CuspidalEdge"
        assert body["spec"].startswith("name = sw-ce")

    def test_unknown(self, client):
        assert client.get(f"{PREFIX}/fixtures/nope").status_code == 404


class TestAnalysisRoute:
    def test_fixture(self, client):
        response = client.post(f"{PREFIX}/analysis/", json={"fixture": "sw-ce"})
        assert response.status_code == 200
        body = response.json()
        assert body["singularity"]["singularity_class"] == "Swallowtail"
        assert body["exit_status"] == 0

    def test_posted_spec(self, client):
        spec = "x = u\ny = v\nz = u^2/2 + v^2\n"
        response = client.post(f"{PREFIX}/analysis/", json={"spec": spec, "point": ["1/10", "1/5"]})
        assert response.status_code == 200
        assert response.json()["singularity"]["singularity_class"] == "Regular"

    def test_unknown_fixture(self, client):
        assert client.post(f"{PREFIX}/analysis/", json={"fixture": "nope"}).status_code == 404

    @pytest.mark.parametrize(
        "payload",
        [
            {"spec": "x = u^-1\ny = v\nz = 0\n"},
            {"spec": "x = u\ny = v\nz = 0\n", "fixture": "sw-ce"},
            {},
            {"fixture": "sw-ce", "order": 2},
            {"fixture": "sw-ce", "outputs": ["movie"]},
        ],
    )
    def test_rejected(self, payload, client):
        assert client.post(f"{PREFIX}/analysis/", json=payload).status_code == 422
