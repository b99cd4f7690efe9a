import concurrent.futures

import pytest
from fastapi.testclient import TestClient

from entrench.server import create_app


@pytest.fixture()
def client():
    return TestClient(create_app(static_dir="/nonexistent"))


TWEETY = [
    {"formula": "Bird(tweety)", "degree": "4/5"},
    {"formula": "*X(Bird(X)->Flies(X))", "degree": "3/5"},
    {"formula": "*X(Penguin(X)->-Flies(X))", "degree": "9/10"},
]


def make_session(client, ranking=None, config=None, placement=None):
    payload = {"ranking": ranking if ranking is not None else TWEETY}
    if config:
        payload["config"] = config
    if placement:
        payload["placement"] = placement
    resp = client.post("/sessions", json=payload)
    assert resp.status_code == 201, resp.text
    return resp.json()


class TestSessions:
    def test_create_and_get(self, client):
        s = make_session(client)
        resp = client.get(f"/sessions/{s['id']}")
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["ranking"]["beliefs"]) == 3
        assert body["ranking"]["ordinal"] == [
            ["*X(Penguin(X)->-Flies(X))"],
            ["Bird(tweety)"],
            ["*X(Bird(X)->Flies(X))"],
        ]

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope").status_code == 404

    def test_revise_tweety(self, client):
        s = make_session(client)
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "Penguin(tweety)", "degree": "7/10",
        })
        assert resp.status_code == 200
        out = resp.json()
        assert [b["formula"] for b in out["removed"]] == ["*X(Bird(X)->Flies(X))"]
        assert out["consistent"] is True
        current = client.get(f"/sessions/{s['id']}").json()
        assert {"formula": "Penguin(tweety)", "degree": "7/10"} in \
            current["ranking"]["beliefs"]

    def test_whatif_is_pure_and_repeatable(self, client):
        s = make_session(client)
        body = {"formula": "Penguin(tweety)", "degree": "7/10"}
        first = client.post(f"/sessions/{s['id']}/whatif", json=body).json()
        second = client.post(f"/sessions/{s['id']}/whatif", json=body).json()
        assert first == second
        current = client.get(f"/sessions/{s['id']}").json()
        assert current["history_length"] == 0
        assert current["ranking"] == s["ranking"]

    def test_degree_endpoint(self, client):
        s = make_session(client, ranking=[])
        resp = client.get(f"/sessions/{s['id']}/degree", params={"wff": "p|-p"})
        assert resp.status_code == 200
        assert resp.json()["degree"] == "1"

    def test_degree_of_entailed_belief(self, client):
        s = make_session(client, ranking=[
            {"formula": "a", "degree": "9/10"},
            {"formula": "a->b", "degree": "7/10"},
        ])
        resp = client.get(f"/sessions/{s['id']}/degree", params={"wff": "b"})
        assert resp.json()["degree"] == "7/10"

    def test_undo_replays_history(self, client):
        s = make_session(client)
        client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "Penguin(tweety)", "degree": "7/10"})
        resp = client.post(f"/sessions/{s['id']}/undo")
        assert resp.status_code == 200
        assert resp.json()["ranking"] == s["ranking"]
        # nothing left to undo
        assert client.post(f"/sessions/{s['id']}/undo").status_code == 409

    def test_trace_endpoint(self, client):
        s = make_session(client)
        assert client.get(f"/sessions/{s['id']}/trace").json()["trace"] is None
        client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "Penguin(tweety)", "degree": "7/10"})
        trace = client.get(f"/sessions/{s['id']}/trace").json()["trace"]
        assert trace["strategy"] == "maxi"

    def test_extract_endpoint(self, client):
        s = make_session(client, ranking=[
            {"formula": "p", "degree": "4/5"},
            {"formula": "-p", "degree": "3/5"},
        ])
        resp = client.post(f"/sessions/{s['id']}/extract", json={})
        assert resp.status_code == 200
        out = resp.json()
        assert [b["formula"] for b in out["after"]["beliefs"]] == ["p"]

    def test_integrate_endpoint(self, client):
        s = make_session(client, ranking=[{"formula": "p", "degree": "4/5"}])
        resp = client.post(f"/sessions/{s['id']}/integrate", json={
            "rankings": [[{"formula": "-p", "degree": "3/5"}]],
        })
        assert resp.status_code == 200
        assert [b["formula"] for b in resp.json()["after"]["beliefs"]] == ["p"]


class TestErrors:
    def test_parse_error_400(self, client):
        s = make_session(client, ranking=[])
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "a__b"})
        assert resp.status_code == 400
        assert resp.json()["error"] == "ReservedNameError"

    def test_whitespace_error_400(self, client):
        s = make_session(client, ranking=[])
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "a b"})
        assert resp.status_code == 400
        assert resp.json()["error"] == "WhitespaceError"

    def test_contradictory_input_422(self, client):
        s = make_session(client, ranking=[])
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "p&-p", "degree": "1/2"})
        assert resp.status_code == 422
        assert resp.json()["error"] == "ContradictoryInput"

    def test_bad_degree_400(self, client):
        s = make_session(client, ranking=[])
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "p", "degree": "7/0"})
        assert resp.status_code == 400

    def test_bad_ranking_payload_400(self, client):
        resp = client.post("/sessions", json={
            "ranking": [{"formula": "p", "degree": "2"}]})
        assert resp.status_code == 400


class TestExamplesEndpoint:
    def test_lists_examples_with_expectations(self, client):
        resp = client.get("/examples")
        assert resp.status_code == 200
        names = {e["name"] for e in resp.json()}
        assert "tweety" in names and "contrast-nine" in names
        tweety = next(e for e in resp.json() if e["name"] == "tweety")
        assert tweety["base"] == TWEETY or len(tweety["base"]) == 3

    def test_example_loads_into_session(self, client):
        examples = client.get("/examples").json()
        entry = next(e for e in examples if e["name"] == "tweety")
        s = make_session(client, ranking=entry["base"])
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": entry["incoming"], "degree": entry["degree"]})
        assert resp.status_code == 200
        got = {b["formula"] for b in resp.json()["after"]["beliefs"]}
        assert got == set(entry["expected"]["maxi"])


class TestConcurrency:
    def test_parallel_sessions_replay_identically(self, client):
        def run_one(_):
            s = make_session(client)
            resp = client.post(f"/sessions/{s['id']}/revise", json={
                "formula": "Penguin(tweety)", "degree": "7/10"})
            return tuple(sorted(
                (b["formula"], b["degree"])
                for b in resp.json()["after"]["beliefs"]
            ))

        with concurrent.futures.ThreadPoolExecutor(max_workers=6) as pool:
            results = list(pool.map(run_one, range(6)))
        assert len(set(results)) == 1


class TestCliHttpParity:
    """One engine, two skins: identical operation sequences give identical
    outcomes through the CLI and the HTTP service."""

    def test_revise_parity(self, client, tmp_path):
        import contextlib
        import io

        from entrench.cli import main
        from entrench.ranking import Ranking
        from entrench.formula import parse
        from entrench.storage import load_ranking, save_ranking
        from fractions import Fraction as F

        base = Ranking([
            (parse("Bird(tweety)"), F(4, 5)),
            (parse("*X(Bird(X)->Flies(X))"), F(3, 5)),
            (parse("*X(Penguin(X)->-Flies(X))"), F(9, 10)),
        ])
        src, dst = tmp_path / "in.rk", tmp_path / "out.rk"
        save_ranking(base, src)
        with contextlib.redirect_stdout(io.StringIO()):
            code = main(["revise", "--strategy", "maxi", "--in", str(src),
                         "--out", str(dst), "Penguin(tweety)", "7/10"])
        assert code == 0
        cli_after = load_ranking(dst)

        s = make_session(client)
        resp = client.post(f"/sessions/{s['id']}/revise", json={
            "formula": "Penguin(tweety)", "degree": "7/10",
            "config": {"strategy": "maxi"},
        })
        http_after = {(b["formula"], b["degree"])
                      for b in resp.json()["after"]["beliefs"]}
        from entrench.formula import print_formula
        assert {(print_formula(f), str(d)) for f, d in cli_after} == http_after
