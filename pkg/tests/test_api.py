def test_health(client):
    response = client.get("/api/health")
    assert response.status_code == 200
    body = response.get_json()
    assert body["status"] == "ok"
    assert body["enumeration_budget"] > 0


def test_exact(client):
    response = client.post("/api/exact", json={"a": 5, "b": 2, "mu": "3/2"})
    assert response.status_code == 200
    body = response.get_json()
    assert body["status"] == "success"
    assert body["command"] == "exact"
    assert (body["P"]["num"], body["P"]["den"]) == ("1", "3")
    assert body["P"]["decimal"] == "0.333333333333"


def test_takacs_degenerate_recurrence_envelope(client):
    response = client.post("/api/takacs", json={"a": 5, "b": 2, "mu": "1/2"})
    assert response.status_code == 422
    body = response.get_json()
    assert body["status"] == "error"
    assert body["error"] == "DegenerateRecurrence"


def test_body_must_be_an_object(client):
    response = client.post("/api/exact", json=[5, 2, "3/2"])
    assert response.status_code == 400
    assert response.get_json()["error"] == "ParseError"


def test_float_mu_is_rejected(client):
    response = client.post("/api/bounds", json={"a": 5, "b": 2, "mu": 1.5})
    assert response.status_code == 400
    assert response.get_json()["error"] == "ParseError"


def test_budget_exceeded_status(client):
    response = client.post("/api/exact", json={"a": 3, "b": 2, "mu": 1, "budget": 9})
    assert response.status_code == 413
    assert response.get_json()["error"] == "BudgetExceeded"


def test_bounds_with_check(client):
    response = client.post("/api/bounds", json={"a": 3, "b": 2, "mu": 1, "check": True})
    body = response.get_json()
    assert response.status_code == 200
    assert body["theorem1"]["lower"]["den"] == "5"
    assert body["reflection"]["passed"]


def test_weighted(client):
    response = client.post("/api/weighted", json={"a": 3, "weights": ["1", "1"], "mu": 1})
    body = response.get_json()
    assert response.status_code == 200
    assert (body["P"]["num"], body["P"]["den"]) == ("1", "5")
    assert body["multiplicity"] == 12


def test_cycle(client):
    response = client.post("/api/cycle", json={"sequence": "AABAB", "mu": 1})
    body = response.get_json()
    assert response.status_code == 200
    assert body["analysis"]["desirable_rotation_offsets"] == [5]


def test_sample(client):
    response = client.post("/api/sample", json={"a": 5, "b": 2, "mu": "3/2", "n": 1000, "seed": 9})
    body = response.get_json()
    assert response.status_code == 200
    assert body["n"] == 1000


def test_scan(client):
    response = client.post("/api/scan", json={"a_range": "1:4", "b_range": "0:2", "mu_set": ["1", "3/2"]})
    body = response.get_json()
    assert response.status_code == 200
    assert len(body["instances"]) == 4 * 3 * 2
    assert len(body["summaries"]) == len(body["instances"])
