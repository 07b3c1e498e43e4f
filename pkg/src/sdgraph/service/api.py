"""HTTP API under /api/v1.

Public: signup, login, the two-goal progress graph, and the report
endpoints. Authenticated (Bearer session token): goal selection,
assignment fetching, answering, skipping, progress. Admin (or curator,
for their own recruits): approval; admin only: the CSV export.

Configuration comes from the environment: SDG_DATABASE (SQLite path),
SDG_SESSION_TTL (seconds), and optionally SDG_UI_DIR (a built web UI to
serve at /).
"""

from __future__ import annotations

import os
from datetime import timedelta
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request, Response
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..catalog import Catalog, CatalogError, Target, parse_target_code, targets_for_goals
from ..graph import (
    BeautifulPolicy,
    GraphError,
    GraphSnapshot,
    Interaction,
    PairKey,
    beautiful_subgraph,
    beautiful_targets,
    export_graph,
    longest_positive_path,
    rank_by_negative,
    score_label,
    summarize,
    ugly_edges,
)
from ..survey import (
    AlreadyScoredError,
    ExpertUser,
    MissingMitigationError,
    NotApprovedError,
    NotAssignedError,
    Role,
    SurveyEngine,
    SurveyError,
    UnknownUserError,
    UserStatus,
)
from .auth import hash_password, new_token, token_hash, verify_password
from .store import DuplicateLoginError, SqliteStore, iso_utc, pair_from_text
from .transfer import export_answers_csv

DEFAULT_DB = "sdg.sqlite3"
DEFAULT_SESSION_TTL = timedelta(hours=24)

_ERROR_STATUS = [
    (DuplicateLoginError, 409),
    (AlreadyScoredError, 409),
    (MissingMitigationError, 422),
    (NotAssignedError, 403),
    (NotApprovedError, 403),
    (UnknownUserError, 404),
    (SurveyError, 400),
    (GraphError, 400),
    (CatalogError, 400),
]


class SignupRequest(BaseModel):
    login: str = Field(min_length=1)
    password: str = Field(min_length=1)
    full_name: str = Field(min_length=1)
    years_experience: int = Field(ge=0)
    educational_attainment: str = ""
    affiliations: str = ""
    acknowledgement_opt_in: bool = False
    curator_id: int | None = None


class LoginRequest(BaseModel):
    login: str
    password: str


class GoalsRequest(BaseModel):
    goals: list[int] = Field(min_length=1)


class AnswerRequest(BaseModel):
    target_a: str
    target_b: str
    score: int
    explanation: str | None = None
    mitigation: str | None = None


def _target_json(catalog: Catalog, target: Target) -> dict:
    return {
        "code": str(target.code),
        "goal": target.code.goal,
        "goal_name": catalog.goal(target.code.goal).name,
        "description": target.description,
    }


def _interaction_json(interaction: Interaction) -> dict:
    assert interaction.score is not None and interaction.scored_at is not None
    return {
        "target_a": str(interaction.key.lo),
        "target_b": str(interaction.key.hi),
        "score": interaction.score,
        "label": score_label(interaction.score),
        "class": "negative" if interaction.score < 0 else ("positive" if interaction.score > 0 else "neutral"),
        "explanation": interaction.explanation,
        "mitigation": interaction.mitigation,
        "scored_at": iso_utc(interaction.scored_at),
    }


def create_app(db_path: str | None = None, session_ttl: timedelta | None = None) -> FastAPI:
    """Build the application around the configured SQLite database."""
    db = db_path or os.environ.get("SDG_DATABASE", DEFAULT_DB)
    if session_ttl is None:
        ttl_env = os.environ.get("SDG_SESSION_TTL")
        session_ttl = timedelta(seconds=int(ttl_env)) if ttl_env else DEFAULT_SESSION_TTL

    app = FastAPI(title="SDG target interaction survey", version="0.1.0")
    store = SqliteStore(db)
    app.state.store = store

    def catalog_or_503() -> Catalog:
        catalog = getattr(app.state, "catalog", None)
        if catalog is None:
            catalog = store.load_catalog()
            if catalog is None:
                raise HTTPException(status_code=503, detail="catalog not seeded")
            app.state.catalog = catalog
        return catalog

    def engine() -> SurveyEngine:
        cached = getattr(app.state, "engine", None)
        if cached is None:
            cached = SurveyEngine(catalog_or_503(), store)
            app.state.engine = cached
        return cached

    def current_user(authorization: str | None = Header(default=None)) -> ExpertUser:
        if not authorization or not authorization.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        user = store.session_user(token_hash(authorization.removeprefix("Bearer ").strip()))
        if user is None:
            raise HTTPException(status_code=401, detail="invalid or expired session")
        return user

    def admin_user(user: ExpertUser = Depends(current_user)) -> ExpertUser:
        if user.role is not Role.ADMIN:
            raise HTTPException(status_code=403, detail="admin privileges required")
        return user

    for exc_type, status in _ERROR_STATUS:
        def handler(request: Request, exc: Exception, status: int = status) -> JSONResponse:
            return JSONResponse(status_code=status, content={"detail": str(exc)})

        app.add_exception_handler(exc_type, handler)

    # -- accounts ---------------------------------------------------------

    @app.post("/api/v1/signup", status_code=201)
    def signup(body: SignupRequest) -> dict:
        user = store.create_user(
            login=body.login,
            password_hash=hash_password(body.password),
            full_name=body.full_name,
            years_experience=body.years_experience,
            educational_attainment=body.educational_attainment,
            affiliations=body.affiliations,
            acknowledgement_opt_in=body.acknowledgement_opt_in,
            curator_id=body.curator_id,
        )
        store.add_notification(
            user.curator_id,
            f"sign-up pending approval: {user.login}",
            f"{user.full_name} ({user.years_experience} years of experience) awaits approval.",
        )
        return {"id": user.id, "login": user.login, "status": user.status.value}

    @app.post("/api/v1/login")
    def login(body: LoginRequest) -> dict:
        user = store.user_by_login(body.login)
        # Unknown login and wrong password produce the same error shape.
        if user is None or not verify_password(body.password, user.password_hash):
            raise HTTPException(status_code=401, detail="invalid credentials")
        if not user.approved:
            raise HTTPException(status_code=403, detail="account pending approval")
        token = new_token()
        expires = store.create_session(token_hash(token), user.id, session_ttl)
        return {"token": token, "expires_at": iso_utc(expires), "role": user.role.value}

    @app.post("/api/v1/admin/approve/{user_id}")
    def approve(user_id: int, caller: ExpertUser = Depends(current_user)) -> dict:
        target = store.user_by_id(user_id)
        if target is None:
            raise HTTPException(status_code=404, detail=f"unknown user {user_id}")
        if caller.role is not Role.ADMIN and caller.id != target.curator_id:
            raise HTTPException(status_code=403, detail="only an admin or the user's curator may approve")
        if target.status is UserStatus.APPROVED:
            raise HTTPException(status_code=409, detail="user is already approved")
        approved = target.approve()
        store.update_user(approved)
        return {"id": approved.id, "login": approved.login, "status": approved.status.value}

    @app.get("/api/v1/admin/pending")
    def pending(caller: ExpertUser = Depends(admin_user)) -> dict:
        return {
            "users": [
                {
                    "id": u.id,
                    "login": u.login,
                    "full_name": u.full_name,
                    "years_experience": u.years_experience,
                    "curator_id": u.curator_id,
                }
                for u in store.pending_users()
            ]
        }

    @app.get("/api/v1/admin/users")
    def users(caller: ExpertUser = Depends(admin_user)) -> dict:
        return {
            "users": [
                {
                    "id": u.id,
                    "login": u.login,
                    "full_name": u.full_name,
                    "years_experience": u.years_experience,
                    "status": u.status.value,
                    "role": u.role.value,
                    "acknowledgement_opt_in": u.acknowledgement_opt_in,
                    "curator_id": u.curator_id,
                }
                for u in store.all_users()
            ]
        }

    # -- survey workflow -----------------------------------------------------

    @app.get("/api/v1/goals")
    def get_goals(user: ExpertUser = Depends(current_user)) -> dict:
        with store.transaction() as txn:
            selection = txn.get_selection(user.id)
        return {"goals": sorted(selection)}

    @app.post("/api/v1/goals")
    def post_goals(body: GoalsRequest, user: ExpertUser = Depends(current_user)) -> dict:
        selection, new = engine().choose_goals(user.id, body.goals)
        return {"goals": sorted(selection.goals), "new_assignments": len(new)}

    @app.get("/api/v1/assignments/next")
    def next_assignments(
        limit: int = Query(default=10, ge=1, le=100),
        user: ExpertUser = Depends(current_user),
    ) -> dict:
        catalog = catalog_or_503()
        rows = engine().assignments_for(user.id)
        pending_rows = [a for a in rows if a.state.value == "pending"]
        skipped_rows = [a for a in rows if a.state.value == "skipped"]
        batch = (pending_rows + skipped_rows)[:limit]
        return {
            "assignments": [
                {
                    "pair": str(a.pair),
                    "state": a.state.value,
                    "target_a": _target_json(catalog, catalog.target(a.pair.lo)),
                    "target_b": _target_json(catalog, catalog.target(a.pair.hi)),
                }
                for a in batch
            ],
            "pending": len(pending_rows),
            "skipped": len(skipped_rows),
        }

    @app.get("/api/v1/answers")
    def own_answers(user: ExpertUser = Depends(current_user)) -> dict:
        answered = sorted(
            a.pair for a in engine().assignments_for(user.id) if a.state.value == "answered"
        )
        interactions = engine().snapshot().interactions
        return {
            "answers": [
                _interaction_json(interactions[p]) for p in answered if p in interactions
            ]
        }

    @app.post("/api/v1/answers", status_code=201)
    def submit_answer(body: AnswerRequest, user: ExpertUser = Depends(current_user)) -> dict:
        pair = PairKey.of(parse_target_code(body.target_a), parse_target_code(body.target_b))
        interaction = engine().submit_answer(
            user.id, pair, body.score, body.explanation, body.mitigation
        )
        return _interaction_json(interaction)

    @app.post("/api/v1/answers/{pair}/skip")
    def skip(pair: str, user: ExpertUser = Depends(current_user)) -> dict:
        key = pair_from_text(pair, sep=",")
        assignment = engine().skip(user.id, key)
        return {"pair": str(assignment.pair), "state": assignment.state.value}

    @app.get("/api/v1/progress")
    def progress(user: ExpertUser = Depends(current_user)) -> dict:
        snapshot = engine().progress(user.id)
        return {
            "answered": snapshot.answered,
            "skipped": snapshot.skipped,
            "pending": snapshot.pending,
            "total": snapshot.total,
        }

    # -- public graph and reports ---------------------------------------------

    @app.get("/api/v1/graph")
    def public_graph(goals: str = Query(...)) -> dict:
        catalog = catalog_or_503()
        try:
            ids = {int(part) for part in goals.split(",") if part.strip()}
        except ValueError:
            raise HTTPException(status_code=400, detail=f"malformed goals parameter {goals!r}") from None
        if not 1 <= len(ids) <= 2:
            raise HTTPException(status_code=400, detail="select at least one and at most two SDGs")
        targets = targets_for_goals(catalog, ids)
        codes = {t.code for t in targets}
        snapshot = engine().snapshot()
        restricted = GraphSnapshot.build(
            targets,
            [i for i in snapshot.interactions.values() if i.key.lo in codes and i.key.hi in codes],
        )
        payload = export_graph(restricted, include_unscored_pairs=True)
        payload["goals"] = sorted(ids)
        return payload

    def _policy(value: str = Query(default="strict", alias="policy")) -> BeautifulPolicy:
        return BeautifulPolicy.parse(value)

    @app.get("/api/v1/reports/summary")
    def report_summary() -> dict:
        stats = summarize(engine().snapshot())
        return {
            "total_pairs": stats.total_pairs,
            "colored": stats.colored,
            "positive": stats.positive,
            "negative": stats.negative,
            "neutral": stats.neutral,
            "uncolored": stats.uncolored,
            "negative_share": stats.negative_share,
            "negative_percent": stats.negative_percent,
        }

    @app.get("/api/v1/reports/ugly")
    def report_ugly() -> dict:
        return {"edges": [_interaction_json(i) for i in ugly_edges(engine().snapshot())]}

    @app.get("/api/v1/reports/beautiful")
    def report_beautiful(policy: BeautifulPolicy = Depends(_policy)) -> dict:
        targets = beautiful_targets(engine().snapshot(), policy)
        return {"policy": policy.value, "targets": [str(c) for c in sorted(targets)]}

    @app.get("/api/v1/reports/beautiful-graph")
    def report_beautiful_graph(policy: BeautifulPolicy = Depends(_policy)) -> dict:
        payload = export_graph(beautiful_subgraph(engine().snapshot(), policy))
        payload["policy"] = policy.value
        return payload

    @app.get("/api/v1/reports/ranking")
    def report_ranking() -> dict:
        ranking = rank_by_negative(engine().snapshot())
        return {"ranking": [{"target": str(code), "negative_count": count} for code, count in ranking]}

    @app.get("/api/v1/reports/longest-path")
    def report_longest_path(
        policy: BeautifulPolicy = Depends(_policy),
        restarts: int = Query(default=1, ge=1, le=1000),
        seed: int = 0,
    ) -> dict:
        result = longest_positive_path(engine().snapshot(), policy, restarts=restarts, seed=seed)
        return {
            "policy": policy.value,
            "nodes": [str(code) for code in result.nodes],
            "edge_count": result.edge_count,
        }

    # -- admin export -----------------------------------------------------------

    @app.get("/api/v1/admin/export.csv")
    def export_csv(caller: ExpertUser = Depends(admin_user)) -> Response:
        return Response(content=export_answers_csv(store), media_type="text/csv")

    ui_dir = os.environ.get("SDG_UI_DIR")
    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
