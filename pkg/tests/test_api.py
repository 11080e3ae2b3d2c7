import math

import pytest
from fastapi.testclient import TestClient

from app.main import app

LOG2, LOG3, LOG5, LOG7 = math.log(2), math.log(3), math.log(5), math.log(7)


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "message" in response.json()


class TestSieveApi:
    def test_psi(self, client):
        response = client.get("/api/sieve/psi", params={"x": 10})
        assert response.status_code == 200
        assert response.json()["value"] == pytest.approx(3 * LOG2 + 2 * LOG3 + LOG5 + LOG7)

    def test_psi_class(self, client):
        response = client.get("/api/sieve/psi", params={"x": 10, "q": 4, "a": 1})
        assert response.json()["value"] == pytest.approx(LOG5 + LOG3)

    def test_progression(self, client):
        response = client.get("/api/sieve/progression", params={"b": 1, "d": 1, "X": 5})
        assert response.status_code == 200
        assert response.json()["values"] == pytest.approx([LOG2, LOG3, LOG2, LOG5, 0.0])

    def test_progression_not_coprime(self, client):
        response = client.get("/api/sieve/progression", params={"b": 2, "d": 4, "X": 5})
        assert response.status_code == 400
        assert response.json()["detail"]["error"] == "DomainError"


class TestFourierApi:
    def test_gauss(self, client):
        response = client.get("/api/gauss", params={"q": 3, "a": 1, "k": 1})
        assert response.status_code == 200
        body = response.json()
        assert body["re"] == pytest.approx(0.5)
        assert body["im"] == pytest.approx(math.sqrt(3) / 2)

    def test_gauss_not_coprime(self, client):
        response = client.get("/api/gauss", params={"q": 6, "a": 2})
        assert response.status_code == 400

    def test_classify(self, client):
        response = client.get("/api/arcs/classify", params={"n": 1000, "cutoff": 10, "alpha": 0.0})
        assert response.status_code == 200
        assert response.json()["kind"] == "major"

    def test_expsum_point(self, client):
        response = client.get("/api/expsum/point", params={"n": 10, "alpha": 0.0})
        assert response.json()["re"] == pytest.approx(3 * LOG2 + 2 * LOG3 + LOG5 + LOG7 + math.log(11))


class TestCountingApi:
    def test_moment_exact(self, client):
        response = client.get("/api/moments/exact", params={"s": 2, "k": 1, "m": 3})
        assert response.status_code == 200
        assert response.json()["value"] == 19

    def test_vinogradov(self, client):
        response = client.get("/api/moments/vinogradov", params={"s": 2, "k": 1, "m": 3})
        assert response.json()["value"] == 19

    def test_singular(self, client):
        response = client.get("/api/singular", params={"q": 1, "a": 1, "k": 1, "prime_limit": 3})
        assert response.status_code == 200
        body = response.json()
        assert body["factor_count"] == 2
        assert body["partial_product"] == pytest.approx(1.5)

    def test_local_factor_rejects_composite(self, client):
        response = client.get("/api/singular/local", params={"p": 9, "q": 1})
        assert response.status_code == 400

    def test_pattern_count(self, client):
        response = client.post("/api/patterns/count", json={"n": 10, "k": 1, "members": [2, 3, 5, 7]})
        assert response.status_code == 200
        body = response.json()
        assert body["unweighted"] == 5
        assert body["prime_pairs"] == 4
        assert body["witnesses"][0] == [2, 2]

    def test_pattern_count_fourier_matches_direct(self, client):
        payload = {"n": 2000, "k": 1}
        direct = client.post("/api/patterns/count", json=payload).json()
        fourier = client.post("/api/patterns/count", json={**payload, "mode": "fourier"}).json()
        assert fourier["exact"] is True
        assert fourier["weighted"] == pytest.approx(direct["weighted"], rel=1e-6)

    def test_pattern_count_rejects_composite(self, client):
        response = client.post("/api/patterns/count", json={"n": 10, "members": [4]})
        assert response.status_code == 400

    def test_pattern_free(self, client):
        response = client.get("/api/patterns/pattern-free", params={"n": 10, "k": 2})
        assert response.status_code == 200
        assert response.json()["subset"]["members"] == [2, 5, 7]

    def test_prime_power_shift_allowed(self, client):
        response = client.get("/api/patterns/pattern-free",
                              params={"n": 12, "strategy": "congruence-filter", "modulus": 8, "residue": 3})
        assert response.status_code == 200
        body = response.json()
        assert body["subset"]["members"] == [3, 11]
        assert body["pattern_free"] is True


class TestIncrementApi:
    def test_all_primes(self, client):
        members = [p for p in range(2, 500) if all(p % d for d in range(2, math.isqrt(p) + 1))]
        response = client.post("/api/increment", json={"n": 500, "members": members})
        assert response.status_code == 200
        body = response.json()
        assert body["stop_reason"] == "patterns-found"
        assert len(body["steps"]) == 1

    def test_generated_subset(self, client):
        response = client.post("/api/increment", json={"n": 2000, "steps": 1})
        assert response.status_code == 200
        assert len(response.json()["steps"]) == 1

    def test_empty_set(self, client):
        response = client.post("/api/increment", json={"n": 500, "members": []})
        assert response.json()["stop_reason"] == "degenerate-input"
