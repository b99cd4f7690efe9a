"""HTTP JSON service.

One engine, two skins: every endpoint drives the same session operations
as the CLI.  Formulae travel as surface-syntax strings, degrees as strings
of exact rationals ("7/10"; decimal forms are accepted on input).  Requests
to one session are serialized; distinct sessions proceed in parallel.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse, RedirectResponse
from pydantic import BaseModel

from .engine import (
    Placement,
    RevisionOutcome,
    Session,
    commit,
    extraction_outcome,
    integration_outcome,
    revise,
    undo,
    what_if,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    ContradictoryInput,
    DomainError,
    DuplicateBelief,
    EngineError,
    FormulaError,
    InconsistentInput,
    ProtectedInconsistent,
    ProverUnknown,
    RankingParseError,
    StaleOutcome,
)
from .examples import all_examples
from .formula import ensure_closed, parse, print_formula
from .prover import Consistency, ProofBudget, is_consistent
from .ranking import Ranking, degree, to_ordinal
from .strategies import Strategy, StrategyConfig

_STATUS: list[tuple[type, int]] = [
    (StaleOutcome, 409),
    (ContradictoryInput, 422),
    (ProtectedInconsistent, 422),
    (InconsistentInput, 422),
    (BudgetExceeded, 504),
    (ProverUnknown, 504),
    (FormulaError, 400),
    (RankingParseError, 400),
    (DomainError, 400),
    (DuplicateBelief, 400),
    (ConfigError, 400),
    (EngineError, 400),
]


def _status_for(exc: EngineError) -> int:
    for cls, code in _STATUS:
        if isinstance(exc, cls):
            return code
    return 400


# --- wire formats ---------------------------------------------------------------

class BeliefIn(BaseModel):
    formula: str
    degree: str


class ConfigIn(BaseModel):
    strategy: str | None = None
    subsumption: bool | None = None
    recovery: bool | None = None
    half_life: str | None = None
    seed: int | None = None
    budget_depth: int | None = None
    budget_clauses: int | None = None
    budget_seconds: float | None = None


class SessionIn(BaseModel):
    ranking: list[BeliefIn] = []
    config: ConfigIn | None = None
    placement: str | None = None


class ReviseIn(BaseModel):
    formula: str
    degree: str | None = None
    config: ConfigIn | None = None
    trim: bool = False
    auto_close: bool = False


class ExtractIn(BaseModel):
    config: ConfigIn | None = None


class IntegrateIn(BaseModel):
    rankings: list[list[BeliefIn]]
    config: ConfigIn | None = None


def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad {what} {text!r}") from None


def _ranking_from_wire(beliefs: list[BeliefIn]) -> Ranking:
    return Ranking(
        (ensure_closed(parse(b.formula)), _fraction(b.degree, "degree"))
        for b in beliefs
    )


def _merge_config(base: StrategyConfig, patch: ConfigIn | None) -> StrategyConfig:
    if patch is None:
        return base
    budget = base.budget
    if (patch.budget_depth or patch.budget_clauses or patch.budget_seconds):
        budget = ProofBudget(
            patch.budget_depth or budget.max_depth,
            patch.budget_clauses or budget.max_clauses,
            patch.budget_seconds or budget.max_seconds,
        )
    half_life = base.half_life
    if patch.half_life is not None:
        half_life = None if patch.half_life == "" else _fraction(
            patch.half_life, "half-life")
    return StrategyConfig(
        strategy=Strategy(patch.strategy) if patch.strategy else base.strategy,
        subsumption_removal=(base.subsumption_removal
                             if patch.subsumption is None else patch.subsumption),
        recovery=base.recovery if patch.recovery is None else patch.recovery,
        half_life=half_life,
        random_seed=base.random_seed if patch.seed is None else patch.seed,
        budget=budget,
    )


def _ranking_json(r: Ranking) -> dict[str, Any]:
    beliefs = [
        {"formula": print_formula(f), "degree": str(d)}
        for f, d in sorted(r, key=lambda fd: (-fd[1], print_formula(fd[0])))
    ]
    ordinal = [
        sorted(print_formula(f) for f in rank)
        for rank in to_ordinal(r).ranks
    ]
    return {"beliefs": beliefs, "ordinal": ordinal}


def _config_json(cfg: StrategyConfig) -> dict[str, Any]:
    return {
        "strategy": cfg.strategy.value,
        "subsumption": cfg.subsumption_removal,
        "recovery": cfg.recovery,
        "half_life": str(cfg.half_life) if cfg.half_life is not None else None,
        "seed": cfg.random_seed,
        "budget": {
            "depth": cfg.budget.max_depth,
            "clauses": cfg.budget.max_clauses,
            "seconds": cfg.budget.max_seconds,
        },
    }


def _outcome_json(out: RevisionOutcome) -> dict[str, Any]:
    consistent = is_consistent([f for f, _ in out.after]) is Consistency.CONSISTENT
    return {
        "kind": out.kind,
        "incoming": (
            {"formula": print_formula(out.incoming[0]),
             "degree": str(out.incoming[1])}
            if out.incoming else None
        ),
        "removed": [
            {"formula": print_formula(f), "degree": str(d)}
            for f, d in out.removed
        ],
        "recovered": [
            {"formula": print_formula(f), "degree": str(d)}
            for f, d in out.recovered
        ],
        "decay_applied": str(out.decay_applied) if out.decay_applied else None,
        "consistent": consistent,
        "before": _ranking_json(out.before),
        "after": _ranking_json(out.after),
        "trace": out.trace.to_dict(),
    }


def _session_json(s: Session) -> dict[str, Any]:
    return {
        "id": s.id,
        "ranking": _ranking_json(s.current),
        "config": _config_json(s.config),
        "placement": s.placement.value,
        "history_length": len(s.history),
    }


class SessionStore:
    """In-memory sessions with per-session write serialization."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._guard = threading.Lock()

    def add(self, session: Session) -> None:
        with self._guard:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise HTTPException(404, f"no session {session_id!r}") from None

    def lock(self, session_id: str) -> threading.Lock:
        self.get(session_id)
        return self._locks[session_id]

    def replace(self, session: Session) -> None:
        self._sessions[session.id] = session


def create_app(static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="entrench", version="0.1.0")
    store = SessionStore()
    app.state.store = store

    @app.exception_handler(EngineError)
    async def engine_error_handler(request: Request, exc: EngineError):
        body = {"error": exc.category, "message": exc.message}
        if isinstance(exc, (ProverUnknown, BudgetExceeded)):
            body["partial"] = True
        return JSONResponse(status_code=_status_for(exc), content=body)

    @app.post("/sessions", status_code=201)
    def create_session(payload: SessionIn):
        cfg = _merge_config(StrategyConfig(), payload.config)
        placement = Placement(payload.placement) if payload.placement \
            else Placement.BOTTOM
        session = Session.create(_ranking_from_wire(payload.ranking),
                                 cfg, placement)
        store.add(session)
        return _session_json(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_json(store.get(session_id))

    @app.post("/sessions/{session_id}/revise")
    def revise_session(session_id: str, payload: ReviseIn):
        with store.lock(session_id):
            s = store.get(session_id)
            cfg = _merge_config(s.config, payload.config)
            f = ensure_closed(parse(payload.formula, trim=payload.trim),
                              auto_close=payload.auto_close)
            d = _fraction(payload.degree, "degree") if payload.degree else None
            out = revise(s.current, f, d, cfg, s.placement)
            store.replace(commit(s, out))
            return _outcome_json(out)

    @app.post("/sessions/{session_id}/whatif")
    def whatif_session(session_id: str, payload: ReviseIn):
        s = store.get(session_id)
        cfg = _merge_config(s.config, payload.config)
        f = ensure_closed(parse(payload.formula, trim=payload.trim),
                          auto_close=payload.auto_close)
        d = _fraction(payload.degree, "degree") if payload.degree else None
        if cfg is s.config:
            out = what_if(s, f, d)
        else:
            out = revise(s.current, f, d, cfg, s.placement)
        return _outcome_json(out)

    @app.post("/sessions/{session_id}/extract")
    def extract_session(session_id: str, payload: ExtractIn | None = None):
        with store.lock(session_id):
            s = store.get(session_id)
            cfg = _merge_config(s.config, payload.config if payload else None)
            out = extraction_outcome(s.current, cfg)
            store.replace(commit(s, out))
            return _outcome_json(out)

    @app.post("/sessions/{session_id}/integrate")
    def integrate_session(session_id: str, payload: IntegrateIn):
        with store.lock(session_id):
            s = store.get(session_id)
            cfg = _merge_config(s.config, payload.config)
            others = [_ranking_from_wire(beliefs) for beliefs in payload.rankings]
            out = integration_outcome([s.current] + others, cfg,
                                      before=s.current)
            store.replace(commit(s, out))
            return _outcome_json(out)

    @app.get("/sessions/{session_id}/degree")
    def degree_of(session_id: str, wff: str):
        s = store.get(session_id)
        f = ensure_closed(parse(wff))
        return {"wff": print_formula(f),
                "degree": str(degree(s.current, f, s.config.budget))}

    @app.get("/sessions/{session_id}/trace")
    def last_trace(session_id: str):
        s = store.get(session_id)
        if not s.history:
            return {"trace": None}
        return {"trace": s.history[-1].trace.to_dict()}

    @app.post("/sessions/{session_id}/undo")
    def undo_session(session_id: str):
        with store.lock(session_id):
            s = store.get(session_id)
            store.replace(undo(s))
            return _session_json(store.get(session_id))

    @app.get("/examples")
    def examples():
        return [
            {
                "name": e.name,
                "category": e.category,
                "description": e.description,
                "base": [
                    {"formula": text, "degree": str(d)} for text, d in e.base
                ],
                "incoming": e.incoming,
                "degree": str(e.degree),
                "quick_seed": e.quick_seed,
                "expected": {k: sorted(v) for k, v in e.expected.items()},
            }
            for e in all_examples()
        ]

    ui_dir = Path(static_dir) if static_dir else _default_ui_dir()
    if ui_dir is not None and ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True),
                  name="ui")

        @app.get("/", include_in_schema=False)
        def index():
            return RedirectResponse("/ui/")

    return app


def _default_ui_dir() -> Path | None:
    here = Path(__file__).resolve()
    for parent in here.parents:
        candidate = parent / "frontend" / "dist"
        if candidate.is_dir():
            return candidate
    return None
