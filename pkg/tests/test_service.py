import threading
import time

import pytest
from fastapi.testclient import TestClient

from cl1play.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, text, **extra):
    response = client.post("/api/sessions", json={"proof": text, **extra})
    assert response.status_code == 201, response.text
    return response.json()


class TestCheck:
    def test_valid(self, client, merge_text):
        response = client.post("/api/check", json={"proof": merge_text})
        assert response.status_code == 200
        assert response.json()["valid"] is True

    def test_invalid_has_line_diagnostics(self, client, intro_text):
        mutated = intro_text.replace("rule a, 1 2", "rule a, 1")
        response = client.post("/api/check", json={"proof": mutated})
        body = response.json()
        assert body["valid"] is False
        assert body["diagnostics"][0]["line"] == 3

    def test_strict_mode(self, client, merge_text):
        response = client.post("/api/check",
                               json={"proof": merge_text, "mode": "strict"})
        assert {d["line"] for d in response.json()["diagnostics"]
                if d["severity"] == "error"} == {4, 7}

    def test_empty_body(self, client):
        response = client.post("/api/check", content=b"")
        assert response.status_code == 400
        assert response.json()["code"] == "bad_request"

    def test_bad_mode(self, client, merge_text):
        response = client.post("/api/check",
                               json={"proof": merge_text, "mode": "loose"})
        assert response.status_code == 400


class TestSessions:
    def test_create(self, client, merge_text):
        body = make_session(client, merge_text)
        state = body["state"]
        assert state["legal_moves"] == ["2.1", "2.2"]
        assert state["status"] == "awaiting_environment"
        assert state["line"] == 7
        assert state["run"] == []
        assert state["outcome"]["machine_wins_everywhere"] is True

    def test_invalid_proof_422(self, client, unsound_text):
        response = client.post("/api/sessions", json={"proof": unsound_text})
        assert response.status_code == 422
        body = response.json()
        assert body["code"] == "invalid_proof"
        assert {d["line"] for d in body["details"]} == {1, 2}

    def test_axiom_quiescent(self, client):
        body = make_session(client, "1. (p&p)->p, rule a, no premise")
        assert body["state"]["status"] == "quiescent"

    def test_state_tree_flags(self, client, merge_text):
        state = make_session(client, merge_text)["state"]
        tree = state["tree"]
        assert tree["path"] == ""
        consequent = tree["children"][1]
        assert consequent["env_choosable"] is True
        antecedent_choice = tree["children"][0]["children"][0]
        assert antecedent_choice["machine_choosable"] is True
        assert antecedent_choice["env_choosable"] is False

    def test_state_is_self_contained(self, client, intro_text):
        state = make_session(client, intro_text)["state"]
        for key in ("formula", "tree", "legal_moves", "run", "status",
                    "outcome", "elementarization", "atoms", "truth_table",
                    "strategy", "mode"):
            assert key in state
        assert len(state["strategy"]["nodes"]) == 3

    def test_get_after_create(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        response = client.get(f"/api/sessions/{sid}")
        assert response.status_code == 200
        assert response.json()["state"]["status"] == "awaiting_environment"

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/nope").status_code == 404


class TestMoves:
    def test_full_play(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        response = client.post(f"/api/sessions/{sid}/moves", json={"move": "2.2"})
        assert response.status_code == 200
        state = response.json()["state"]
        assert [m["move"] for m in state["run"]] == ["2.2", "1.2.2", "1.1.2"]
        assert [m["role"] for m in state["run"]] == \
            ["environment", "machine", "machine"]
        assert state["status"] == "quiescent"
        assert state["formula"] == "q&q->q"

    def test_illegal_move_409(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        response = client.post(f"/api/sessions/{sid}/moves", json={"move": "1.1.1"})
        assert response.status_code == 409
        body = response.json()
        assert body["code"] == "illegal_move"
        assert body["details"]["legal_moves"] == ["2.1", "2.2"]

    def test_unparseable_move_409(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        response = client.post(f"/api/sessions/{sid}/moves", json={"move": "zap"})
        assert response.status_code == 409

    def test_unknown_session_404(self, client):
        response = client.post("/api/sessions/nope/moves", json={"move": "2.1"})
        assert response.status_code == 404

    def test_forfeit_policy(self, client, merge_text):
        sid = make_session(client, merge_text,
                           illegal_move_policy="forfeit")["id"]
        response = client.post(f"/api/sessions/{sid}/moves", json={"move": "9.9"})
        assert response.status_code == 200
        state = response.json()["state"]
        assert state["status"] == "finished"
        assert state["outcome"]["forfeited"] is True


class TestStopDelete:
    def test_stop_then_get(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        response = client.post(f"/api/sessions/{sid}/stop")
        assert response.json()["state"]["status"] == "finished"
        assert response.json()["state"]["outcome"]["winner_now"] == "machine"
        followup = client.get(f"/api/sessions/{sid}")
        assert followup.json()["state"]["status"] == "finished"

    def test_delete(self, client, merge_text):
        sid = make_session(client, merge_text)["id"]
        assert client.delete(f"/api/sessions/{sid}").status_code == 204
        assert client.get(f"/api/sessions/{sid}").status_code == 404

    def test_delete_unknown(self, client):
        assert client.delete("/api/sessions/nope").status_code == 404


class TestTtl:
    def test_idle_sessions_evicted(self, merge_text):
        client = TestClient(create_app(session_ttl=0.05))
        sid = make_session(client, merge_text)["id"]
        time.sleep(0.1)
        assert client.get(f"/api/sessions/{sid}").status_code == 404


class TestConcurrency:
    def test_parallel_moves_serialize(self, merge_text):
        client = TestClient(create_app())
        sid = make_session(client, merge_text)["id"]
        statuses = []

        def fire(move):
            response = client.post(f"/api/sessions/{sid}/moves",
                                   json={"move": move})
            statuses.append(response.status_code)

        threads = [threading.Thread(target=fire, args=("2.1",)),
                   threading.Thread(target=fire, args=("2.2",))]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        # The lock serializes: exactly one move lands, the other is queued
        # behind it and then rejected against the quiescent position.
        assert sorted(statuses) == [200, 409]
        final = client.get(f"/api/sessions/{sid}").json()["state"]
        assert final["status"] == "quiescent"

    def test_interpretation_outcome(self, merge_text):
        client = TestClient(create_app())
        body = make_session(client, merge_text,
                            interpretation={"p": True, "q": False})
        state = body["state"]
        assert state["outcome"]["winner_now"] == "machine"
        assert state["outcome"]["under"] == "interpretation"


class TestBadInterpretation:
    def test_incomplete_interpretation_400(self, merge_text):
        client = TestClient(create_app())
        response = client.post("/api/sessions", json={
            "proof": merge_text, "interpretation": {"p": True}})
        assert response.status_code == 400
        assert response.json()["code"] == "bad_interpretation"
