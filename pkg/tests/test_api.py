import inspect
import math

import pytest
from fastapi.testclient import TestClient

from app.api import coeff_routes, solver_routes, specfun_routes, stability_routes
from main import app

client = TestClient(app)


def test_root_and_health():
    assert client.get("/").json()["status"] == "running"
    assert client.get("/health").json() == {"status": "healthy"}


def test_coefficients():
    response = client.get("/api/coeffs", params={"alpha": 0.5, "n": 3})
    assert response.status_code == 200
    assert response.json()["coeffs"] == [1.0, -0.5, -0.125, -0.0625]


def test_coefficients_validation():
    assert client.get("/api/coeffs", params={"alpha": 1.5, "n": 3}).status_code == 422


def test_mittag_leffler():
    response = client.get("/api/specfun/ml", params={"gamma": 1.0, "x": [0.0, 2.0]})
    assert response.status_code == 200
    values = response.json()["values"]
    assert values[0] == 1.0
    assert values[1] == pytest.approx(math.exp(-2.0), abs=1e-10)


def test_wright_out_of_range():
    response = client.get("/api/specfun/wright", params={"nu": 0.25, "z": [10.5]})
    assert response.status_code == 400


def test_bound():
    response = client.get("/api/stability/bound", params={"gamma": 0.5, "m_max": 10})
    assert response.status_code == 200
    body = response.json()
    assert body["delta_S"] == pytest.approx(0.0303030, abs=1e-6)
    assert body["series"]["limit"] == pytest.approx(2 ** -1.5)
    assert len(body["series"]["values"]) == 11


def test_solve_rejects_dt_and_S():
    response = client.post("/api/solve", json={"gamma": 0.5, "dx": 0.1, "dt": 0.01, "S": 0.3, "t_final": 1.0})
    assert response.status_code == 400
    assert response.json()["key"] == "dt"


def test_solve():
    response = client.post(
        "/api/solve", json={"gamma": 1.0, "dx": 0.5, "dt": 0.125, "t_final": 1.0, "ic": "parabolic"},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["S"] == 0.5
    assert body["x"] == [0.5]
    assert body["times"] == [0.0, 1.0]
    assert body["steps_run"] == 8
    assert body["snapshots"][0] == [0.25]
    assert body["unstable"] is False


def test_scan():
    response = client.post("/api/stability/scan", json={"gamma_list": [0.5], "M": 50})
    assert response.status_code == 200
    (report,) = response.json()
    assert report["unstable"] is True
    assert report["S_theory"] == pytest.approx(2 ** -1.5)


def test_convergence():
    response = client.post(
        "/api/convergence", json={"gamma": 1.0, "S": 0.4, "dx_list": [0.1, 0.05, 0.025], "t_measure": 0.5},
    )
    assert response.status_code == 200
    body = response.json()
    assert len(body["levels"]) == 3
    assert 1.8 <= body["order"] <= 2.2


@pytest.mark.parametrize(
    "endpoint",
    [
        coeff_routes.get_coefficients,
        specfun_routes.mittag_leffler,
        specfun_routes.wright,
        stability_routes.get_bound,
        stability_routes.scan,
        solver_routes.solve,
        solver_routes.convergence,
    ],
)
def test_numerical_endpoints_run_in_the_threadpool(endpoint):
    assert not inspect.iscoroutinefunction(endpoint)
