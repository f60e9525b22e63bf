"""HTTP API for the human-in-the-loop annotation session.

One process hosts one sampling campaign. GETs are idempotent reads; the
pending-query protocol serializes labeling: /api/next selects (or repeats)
the example awaiting a label, /api/label accepts a label for exactly that
example and commits it.
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .corpus import Example, ExampleSet
from .sampler import SamplerState, Strategy


class Session:
    """A sampler, its strategy, and the single pending query."""

    def __init__(
        self,
        state: SamplerState,
        strategy: Strategy,
        corpus: ExampleSet,
        session_id: str = "default",
    ) -> None:
        self.id = session_id
        self.state = state
        self.strategy = strategy
        self.corpus = corpus
        self.pending: str | None = None
        self.lock = threading.Lock()

    def config_snapshot(self) -> dict:
        cfg = self.state.cfg
        return {
            "similarity": cfg.backend,
            "alpha": cfg.alpha,
            "decision": cfg.decision,
            "lambda": cfg.certainty_lambda,
            "smoothing_level": cfg.smoothing_level,
            "strategy": self.strategy.kind,
            "k": self.strategy.k,
            "committee_size": self.strategy.committee_size,
            "member_fraction": self.strategy.member_fraction,
        }

    def labels_sampled(self) -> int:
        return sum(1 for record in self.state.history if record.strategy != "init")

    def query_payload(self, example: Example) -> dict:
        """What the annotator sees: the sentence plus scored candidates."""
        state = self.state
        scores = state.cache.scores.get(example.id, {})
        sims = state.cache.sims.get(example.id, {})
        survivors = set(state.cache.survivors.get(example.id, ()))
        candidates = []
        for sense in state.db.senses(example.verb):
            candidates.append(
                {
                    "sense": sense,
                    "score": scores.get(sense, 0.0),
                    "survivor": sense in survivors,
                    "sims": {case: sims[sense][case][0] for case in sims.get(sense, {})},
                }
            )
        candidates.sort(key=lambda c: (-c["score"], c["sense"]))
        predicted = state.cache.predict(example.id)
        return {
            "example": example.to_record(),
            "candidates": candidates,
            "predicted": predicted,
            "certainty": state.cache.certainty.get(example.id, 0.0),
            "iteration": self.labels_sampled(),
            "pool_remaining": state.pool_size(),
            "labeled": state.labeled_size(),
        }


class LabelRequest(BaseModel):
    example_id: str
    sense: str


def create_app(session: Session, dump_prefix: str | None = None) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if dump_prefix:
            _dump_state(session, dump_prefix)

    app = FastAPI(title="senselearn annotation service", lifespan=lifespan)

    @app.get("/api/state")
    def get_state() -> dict:
        state = session.state
        return {
            "session": session.id,
            "labeled": state.labeled_size(),
            "pool": state.pool_size(),
            "pending": session.pending,
            "config": session.config_snapshot(),
        }

    @app.get("/api/next")
    def get_next() -> dict:
        with session.lock:
            if session.pending is not None:
                return session.query_payload(session.state.pool_example(session.pending))
            if session.state.pool_size() == 0:
                raise HTTPException(status_code=410, detail="pool exhausted")
            example = session.state.select(session.strategy)
            session.pending = example.id
            return session.query_payload(example)

    @app.post("/api/label")
    def post_label(request: LabelRequest) -> dict:
        with session.lock:
            if session.pending is None or request.example_id != session.pending:
                raise HTTPException(
                    status_code=409,
                    detail=f"example {request.example_id!r} is not the pending query",
                )
            example = session.state.pool_example(session.pending)
            if request.sense not in session.state.db.senses(example.verb):
                raise HTTPException(
                    status_code=422,
                    detail=f"invalid sense {request.sense!r} for verb {example.verb!r}",
                )
            session.state.commit_label(
                example, request.sense, strategy=session.strategy.kind
            )
            session.pending = None
            return {
                "labeled": session.state.labeled_size(),
                "pool": session.state.pool_size(),
                "iteration": session.labels_sampled(),
            }

    @app.get("/api/curve")
    def get_curve() -> dict:
        points = []
        labels = 0
        for record in session.state.history:
            if record.strategy == "init":
                continue
            labels += 1
            points.append(
                {
                    "labels_used": labels,
                    "pool_accuracy": record.pool_accuracy,
                    "certainty_mean": record.certainty_mean,
                    "example_id": record.example_id,
                    "assigned_sense": record.assigned_sense,
                }
            )
        return {"points": points}

    @app.get("/api/example/{example_id}")
    def get_example(example_id: str) -> dict:
        if example_id in session.corpus:
            record = session.corpus.get(example_id).to_record()
            record["in_pool"] = example_id in session.state.cache.examples
            return record
        raise HTTPException(status_code=404, detail=f"unknown example {example_id!r}")

    return app


def _dump_state(session: Session, prefix: str) -> None:
    from .sampler import serialize_history

    Path(f"{prefix}.database.jsonl").write_text(
        session.state.db.serialize(), encoding="utf-8"
    )
    Path(f"{prefix}.history.jsonl").write_text(
        serialize_history(session.state.history), encoding="utf-8"
    )


def mount_ui(app: FastAPI, ui_dir: str) -> None:
    """Serve the static annotator UI when a built bundle is available."""
    from fastapi.staticfiles import StaticFiles

    app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
