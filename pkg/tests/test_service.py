"""Annotation HTTP API: pending-query protocol, status codes, atomicity."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from senselearn.engine import EngineConfig
from senselearn.sampler import Strategy, build_sampler, gold_oracle, initialize_from_scratch
from senselearn.service import Session, create_app

from .conftest import random_instance


@pytest.fixture()
def client_session():
    thesaurus, corpus = random_instance(83, examples_per_sense=6, confusion=0.2)
    cfg = EngineConfig.thesaurus_backend(thesaurus)
    state = build_sampler(corpus, cfg)
    initialize_from_scratch(state, gold_oracle(corpus), seed=0)
    session = Session(state, Strategy(kind="tu", seed=0), corpus)
    return TestClient(create_app(session)), session


class TestStateEndpoint:
    def test_snapshot_fields(self, client_session):
        client, session = client_session
        response = client.get("/api/state")
        assert response.status_code == 200
        body = response.json()
        assert body["pool"] == session.state.pool_size()
        assert body["config"]["strategy"] == "tu"
        assert body["pending"] is None


class TestNextLabelFlow:
    def test_label_commits_and_increments(self, client_session):
        client, session = client_session
        labeled_before = session.state.labeled_size()
        query = client.get("/api/next").json()
        assert query["candidates"]
        gold = session.corpus.get(query["example"]["id"]).gold_sense
        response = client.post(
            "/api/label", json={"example_id": query["example"]["id"], "sense": gold}
        )
        assert response.status_code == 200
        assert response.json()["labeled"] == labeled_before + 1

    def test_next_is_idempotent_while_pending(self, client_session):
        client, _ = client_session
        first = client.get("/api/next").json()
        second = client.get("/api/next").json()
        assert first["example"]["id"] == second["example"]["id"]

    def test_label_for_non_pending_conflicts(self, client_session):
        client, session = client_session
        query = client.get("/api/next").json()
        other = next(
            i for i in session.state.pool_ids() if i != query["example"]["id"]
        )
        response = client.post("/api/label", json={"example_id": other, "sense": "s01"})
        assert response.status_code == 409

    def test_double_label_conflicts(self, client_session):
        client, session = client_session
        query = client.get("/api/next").json()
        example_id = query["example"]["id"]
        gold = session.corpus.get(example_id).gold_sense
        assert client.post(
            "/api/label", json={"example_id": example_id, "sense": gold}
        ).status_code == 200
        response = client.post("/api/label", json={"example_id": example_id, "sense": gold})
        assert response.status_code == 409

    def test_invalid_sense_rejected_without_commit(self, client_session):
        client, session = client_session
        query = client.get("/api/next").json()
        example_id = query["example"]["id"]
        labeled_before = session.state.labeled_size()
        response = client.post(
            "/api/label", json={"example_id": example_id, "sense": "not-a-sense"}
        )
        assert response.status_code == 422
        assert session.state.labeled_size() == labeled_before
        assert session.pending == example_id  # still answerable

    def test_exhausted_pool_returns_410(self, client_session):
        client, session = client_session
        while session.state.pool_size() > 0:
            query = client.get("/api/next").json()
            example_id = query["example"]["id"]
            gold = session.corpus.get(example_id).gold_sense
            client.post("/api/label", json={"example_id": example_id, "sense": gold})
        assert client.get("/api/next").status_code == 410


class TestCurveAndExample:
    def test_curve_accumulates_points(self, client_session):
        client, session = client_session
        for _ in range(3):
            query = client.get("/api/next").json()
            example_id = query["example"]["id"]
            gold = session.corpus.get(example_id).gold_sense
            client.post("/api/label", json={"example_id": example_id, "sense": gold})
        points = client.get("/api/curve").json()["points"]
        assert [p["labels_used"] for p in points] == [1, 2, 3]

    def test_example_lookup(self, client_session):
        client, session = client_session
        example_id = session.corpus.ids()[0]
        body = client.get(f"/api/example/{example_id}").json()
        assert body["id"] == example_id
        assert client.get("/api/example/zzz").status_code == 404

    def test_shutdown_dumps_state_files(self, tmp_path):
        thesaurus, corpus = random_instance(97, examples_per_sense=5)
        cfg = EngineConfig.thesaurus_backend(thesaurus)
        state = build_sampler(corpus, cfg)
        initialize_from_scratch(state, gold_oracle(corpus), seed=1)
        session = Session(state, Strategy(kind="random", seed=1), corpus)
        prefix = str(tmp_path / "campaign")
        with TestClient(create_app(session, dump_prefix=prefix)) as client:
            query = client.get("/api/next").json()
            example_id = query["example"]["id"]
            gold = corpus.get(example_id).gold_sense
            client.post("/api/label", json={"example_id": example_id, "sense": gold})
        db_dump = (tmp_path / "campaign.database.jsonl").read_text()
        history_dump = (tmp_path / "campaign.history.jsonl").read_text()
        assert example_id in history_dump
        from senselearn.database import parse_seed_database

        assert parse_seed_database(db_dump.splitlines()).verbs() == ["v1"]

    def test_replay_yields_identical_database(self):
        def run():
            thesaurus, corpus = random_instance(89, examples_per_sense=5)
            cfg = EngineConfig.thesaurus_backend(thesaurus)
            state = build_sampler(corpus, cfg)
            initialize_from_scratch(state, gold_oracle(corpus), seed=1)
            session = Session(state, Strategy(kind="uncertainty", seed=3), corpus)
            client = TestClient(create_app(session))
            for _ in range(6):
                query = client.get("/api/next").json()
                example_id = query["example"]["id"]
                gold = corpus.get(example_id).gold_sense
                client.post("/api/label", json={"example_id": example_id, "sense": gold})
            return session.state.db

        assert run().equal_contents(run())
