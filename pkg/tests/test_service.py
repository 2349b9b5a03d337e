"""HTTP service tests through the in-process test client."""

import warnings

import pytest

warnings.filterwarnings("ignore", category=DeprecationWarning)

from fastapi.testclient import TestClient

from boxlie.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestEndpoints:
    def test_algebras(self, client):
        labels = client.get("/algebras").json()["algebras"]
        assert "A2" in labels and "D4" in labels and "E8" not in labels

    def test_lr(self, client):
        r = client.post("/lr", json={"algebra": "A2", "lambda": [1, 1],
                                     "mu": [1, 1], "nu": [1, 1]})
        assert r.status_code == 200 and r.json() == {"value": 2}

    def test_kostka_methods_agree(self, client):
        payload = {"algebra": "A2", "lambda": [2, 2], "mu": [1, 1]}
        vals = set()
        for method in ("kostant", "fourier"):
            r = client.post("/kostka", json={**payload, "method": method})
            assert r.status_code == 200
            vals.add(r.json()["value"])
        assert len(vals) == 1

    def test_partition(self, client):
        r = client.post("/partition", json={"algebra": "A2", "point": [1, 1]})
        assert r.json() == {"value": 2}

    def test_boxspline_density_and_table(self, client):
        r = client.post("/boxspline", json={"algebra": "A3", "point": ["0", "0", "0"]})
        assert r.json()["density"] == "1/2"
        r = client.post("/boxspline", json={"algebra": "B2", "table": True})
        data = r.json()
        assert data["table"]["base"] == ["0", "0"]
        assert {"coords": [0, 0], "value": "1/2"} in data["table"]["entries"]
        assert data["r_coeffs"] == {"0,0": "3/8", "1,1": "1/8"}

    def test_volume(self, client):
        r = client.post("/volume", json={"algebra": "A2", "lambda": [1, 1],
                                         "mu": [1, 1], "gamma": ["2", "2"]})
        assert r.json()["value"] == "2"
        r = client.post("/volume", json={"algebra": "A2", "lambda": [1, 0],
                                         "mu": [0, 1], "lattice": True})
        assert r.status_code == 200 and "entries" in r.json()["measure"]

    def test_deconv_table_and_single(self, client):
        payload = {"algebra": "A2", "lambda": [1, 0], "mu": [0, 1]}
        r = client.post("/deconv", json=payload)
        assert {"nu": [1, 1], "C": 1} in r.json()["table"]
        r = client.post("/deconv", json={**payload, "method": "fourier", "nu": [1, 1]})
        assert r.json() == {"method": "fourier", "nu": [1, 1], "C": 1}

    def test_deconv_findiff_rejects_unshielded(self, client):
        r = client.post("/deconv", json={"algebra": "A3", "lambda": [1, 0, 0],
                                         "mu": [0, 1, 0], "method": "findiff",
                                         "nu": [1, 1, 0]})
        assert r.status_code == 422

    def test_rpoly(self, client):
        r = client.post("/rpoly", json={"algebra": "B2",
                                        "point": [3.141592653589793, 3.141592653589793]})
        assert abs(r.json()["value"]) < 1e-9

    def test_verify(self, client):
        r = client.post("/verify", json={"algebra": "A2", "suite": "boxspline"})
        body = r.json()
        assert body["passed"] and all(c["passed"] for c in body["checks"])

    def test_bad_algebra(self, client):
        r = client.post("/lr", json={"algebra": "Q7", "lambda": [1],
                                     "mu": [1], "nu": [1]})
        assert r.status_code == 422

    def test_validation_error(self, client):
        r = client.post("/kostka", json={"algebra": "A2", "lambda": [1, 1],
                                         "mu": [0, 0], "method": "magic"})
        assert r.status_code == 422

    def test_cache_reuse(self, client):
        # two calls against the same algebra reuse the cached root system
        from boxlie.rootsys import build

        rs1 = build("A2")
        client.post("/partition", json={"algebra": "A2", "point": [0, 0]})
        assert build("A2") is rs1
