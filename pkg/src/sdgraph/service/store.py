"""SQLite persistence.

Six stores: users, sdg_targets (with goals), user_goal_selections,
survey_answers, assignments, sessions, plus a notifications inbox for
curator sign-up alerts. The UNIQUE primary key on survey_answers.pair is
the final authority on single scoring: even if every application check is
bypassed, a second insert for the same pair surfaces as
:class:`AlreadyScoredError`.

Each transaction runs on its own connection under ``BEGIN IMMEDIATE``, so
concurrent writers are serialized by the database and the workflow rules
stay linearizable per pair.
"""

from __future__ import annotations

import sqlite3
from contextlib import contextmanager
from dataclasses import replace
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Iterator

from ..catalog import Catalog, Goal, Target, parse_target_code
from ..graph import Interaction, PairKey
from ..survey import (
    AlreadyScoredError,
    Assignment,
    AssignmentState,
    ExpertUser,
    Role,
    SurveyError,
    UserStatus,
)

SCHEMA = """
CREATE TABLE IF NOT EXISTS goals (
    id INTEGER PRIMARY KEY,
    name TEXT NOT NULL UNIQUE
);
CREATE TABLE IF NOT EXISTS sdg_targets (
    code TEXT PRIMARY KEY,
    goal_id INTEGER NOT NULL REFERENCES goals(id),
    position INTEGER NOT NULL,
    description TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS users (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    login TEXT NOT NULL UNIQUE,
    password_hash TEXT NOT NULL DEFAULT '',
    full_name TEXT NOT NULL,
    educational_attainment TEXT NOT NULL DEFAULT '',
    years_experience INTEGER NOT NULL,
    affiliations TEXT NOT NULL DEFAULT '',
    acknowledgement_opt_in INTEGER NOT NULL DEFAULT 0,
    curator_id INTEGER REFERENCES users(id),
    status TEXT NOT NULL CHECK (status IN ('pending', 'approved')),
    role TEXT NOT NULL CHECK (role IN ('expert', 'admin'))
);
CREATE TABLE IF NOT EXISTS user_goal_selections (
    user_id INTEGER NOT NULL REFERENCES users(id),
    goal_id INTEGER NOT NULL,
    PRIMARY KEY (user_id, goal_id)
);
CREATE TABLE IF NOT EXISTS assignments (
    pair TEXT PRIMARY KEY,
    user_id INTEGER NOT NULL REFERENCES users(id),
    state TEXT NOT NULL CHECK (state IN ('pending', 'skipped', 'answered'))
);
CREATE TABLE IF NOT EXISTS survey_answers (
    pair TEXT PRIMARY KEY,
    score INTEGER NOT NULL CHECK (score BETWEEN -3 AND 3),
    explanation TEXT,
    mitigation TEXT,
    scorer_id INTEGER NOT NULL REFERENCES users(id),
    scored_at TEXT NOT NULL,
    attribution TEXT
);
CREATE TABLE IF NOT EXISTS sessions (
    token_hash TEXT PRIMARY KEY,
    user_id INTEGER NOT NULL REFERENCES users(id),
    expires_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS notifications (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    recipient_id INTEGER REFERENCES users(id),
    subject TEXT NOT NULL,
    body TEXT NOT NULL,
    created_at TEXT NOT NULL
);
"""


class DuplicateLoginError(SurveyError):
    pass


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


def iso_utc(moment: datetime) -> str:
    """Normalize a datetime to second-resolution ISO 8601 UTC."""
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc).replace(microsecond=0).isoformat()


def parse_iso_utc(text: str) -> datetime:
    cleaned = text.strip()
    if cleaned.endswith("Z"):
        cleaned = cleaned[:-1] + "+00:00"
    moment = datetime.fromisoformat(cleaned)
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.astimezone(timezone.utc)


def pair_text(pair: PairKey) -> str:
    return str(pair)


def pair_from_text(text: str, sep: str = "|") -> PairKey:
    parts = text.split(sep)
    if len(parts) != 2:
        raise SurveyError(f"malformed pair {text!r}: expected '<code>{sep}<code>'")
    return PairKey.of(parse_target_code(parts[0]), parse_target_code(parts[1]))


def _row_to_user(row: sqlite3.Row) -> ExpertUser:
    return ExpertUser(
        id=row["id"],
        login=row["login"],
        full_name=row["full_name"],
        years_experience=row["years_experience"],
        educational_attainment=row["educational_attainment"],
        affiliations=row["affiliations"],
        acknowledgement_opt_in=bool(row["acknowledgement_opt_in"]),
        curator_id=row["curator_id"],
        status=UserStatus(row["status"]),
        role=Role(row["role"]),
        password_hash=row["password_hash"],
    )


class StoreTxn:
    """One open transaction; implements the survey store contract."""

    def __init__(self, conn: sqlite3.Connection) -> None:
        self.conn = conn

    # -- survey contract ---------------------------------------------------

    def get_user(self, user_id: int) -> ExpertUser | None:
        row = self.conn.execute("SELECT * FROM users WHERE id = ?", (user_id,)).fetchone()
        return _row_to_user(row) if row else None

    def put_user(self, user: ExpertUser) -> None:
        self.conn.execute(
            """
            INSERT INTO users (id, login, password_hash, full_name, educational_attainment,
                               years_experience, affiliations, acknowledgement_opt_in,
                               curator_id, status, role)
            VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            ON CONFLICT(id) DO UPDATE SET
                login = excluded.login,
                password_hash = excluded.password_hash,
                full_name = excluded.full_name,
                educational_attainment = excluded.educational_attainment,
                years_experience = excluded.years_experience,
                affiliations = excluded.affiliations,
                acknowledgement_opt_in = excluded.acknowledgement_opt_in,
                curator_id = excluded.curator_id,
                status = excluded.status,
                role = excluded.role
            """,
            (
                user.id,
                user.login,
                user.password_hash,
                user.full_name,
                user.educational_attainment,
                user.years_experience,
                user.affiliations,
                int(user.acknowledgement_opt_in),
                user.curator_id,
                user.status.value,
                user.role.value,
            ),
        )

    def get_selection(self, user_id: int) -> frozenset[int]:
        rows = self.conn.execute(
            "SELECT goal_id FROM user_goal_selections WHERE user_id = ?", (user_id,)
        ).fetchall()
        return frozenset(row["goal_id"] for row in rows)

    def put_selection(self, user_id: int, goals: frozenset[int]) -> None:
        self.conn.execute("DELETE FROM user_goal_selections WHERE user_id = ?", (user_id,))
        self.conn.executemany(
            "INSERT INTO user_goal_selections (user_id, goal_id) VALUES (?, ?)",
            [(user_id, goal) for goal in sorted(goals)],
        )

    def get_assignment(self, pair: PairKey) -> Assignment | None:
        row = self.conn.execute(
            "SELECT * FROM assignments WHERE pair = ?", (pair_text(pair),)
        ).fetchone()
        if row is None:
            return None
        return Assignment(
            user_id=row["user_id"], pair=pair, state=AssignmentState(row["state"])
        )

    def assignments_for(self, user_id: int) -> list[Assignment]:
        rows = self.conn.execute(
            "SELECT * FROM assignments WHERE user_id = ?", (user_id,)
        ).fetchall()
        out = [
            Assignment(
                user_id=row["user_id"],
                pair=pair_from_text(row["pair"]),
                state=AssignmentState(row["state"]),
            )
            for row in rows
        ]
        out.sort(key=lambda a: a.pair)
        return out

    def assigned_pairs(self) -> set[PairKey]:
        rows = self.conn.execute("SELECT pair FROM assignments").fetchall()
        return {pair_from_text(row["pair"]) for row in rows}

    def put_assignment(self, assignment: Assignment) -> None:
        self.conn.execute(
            """
            INSERT INTO assignments (pair, user_id, state) VALUES (?, ?, ?)
            ON CONFLICT(pair) DO UPDATE SET user_id = excluded.user_id, state = excluded.state
            """,
            (pair_text(assignment.pair), assignment.user_id, assignment.state.value),
        )

    def get_interaction(self, pair: PairKey) -> Interaction | None:
        row = self.conn.execute(
            """
            SELECT a.*, u.login AS scorer_login
            FROM survey_answers a JOIN users u ON u.id = a.scorer_id
            WHERE a.pair = ?
            """,
            (pair_text(pair),),
        ).fetchone()
        return self._row_to_interaction(row) if row else None

    def add_interaction(self, interaction: Interaction, attribution: str | None = None) -> None:
        scorer_row = self.conn.execute(
            "SELECT id FROM users WHERE login = ?", (interaction.scorer,)
        ).fetchone()
        if scorer_row is None:
            raise SurveyError(f"unknown scorer {interaction.scorer!r}")
        assert interaction.score is not None and interaction.scored_at is not None
        try:
            self.conn.execute(
                """
                INSERT INTO survey_answers
                    (pair, score, explanation, mitigation, scorer_id, scored_at, attribution)
                VALUES (?, ?, ?, ?, ?, ?, ?)
                """,
                (
                    pair_text(interaction.key),
                    interaction.score,
                    interaction.explanation,
                    interaction.mitigation,
                    scorer_row["id"],
                    iso_utc(interaction.scored_at),
                    attribution,
                ),
            )
        except sqlite3.IntegrityError:
            # The persistence-layer unique constraint is the last line of
            # defense for "each pair can only be scored once".
            raise AlreadyScoredError(f"pair {interaction.key} has already been scored") from None

    def colored_pairs(self) -> set[PairKey]:
        rows = self.conn.execute("SELECT pair FROM survey_answers").fetchall()
        return {pair_from_text(row["pair"]) for row in rows}

    def all_interactions(self) -> list[Interaction]:
        rows = self.conn.execute(
            """
            SELECT a.*, u.login AS scorer_login
            FROM survey_answers a JOIN users u ON u.id = a.scorer_id
            """
        ).fetchall()
        out = [self._row_to_interaction(row) for row in rows]
        out.sort(key=lambda i: i.key)
        return out

    @staticmethod
    def _row_to_interaction(row: sqlite3.Row) -> Interaction:
        return Interaction(
            key=pair_from_text(row["pair"]),
            score=row["score"],
            explanation=row["explanation"],
            mitigation=row["mitigation"],
            scorer=row["scorer_login"],
            scored_at=parse_iso_utc(row["scored_at"]),
        )

    # -- export ------------------------------------------------------------

    def export_rows(self) -> list[dict]:
        """Raw answer rows joined with scorer display data, for the CSV export."""
        rows = self.conn.execute(
            """
            SELECT a.*, u.full_name, u.acknowledgement_opt_in
            FROM survey_answers a JOIN users u ON u.id = a.scorer_id
            """
        ).fetchall()
        out = []
        for row in rows:
            if row["attribution"] is not None:
                scorer = row["attribution"]
            elif row["acknowledgement_opt_in"]:
                scorer = row["full_name"]
            else:
                scorer = "anonymous"
            out.append(
                {
                    "pair": pair_from_text(row["pair"]),
                    "score": row["score"],
                    "explanation": row["explanation"] or "",
                    "mitigation": row["mitigation"] or "",
                    "scorer": scorer,
                    "scored_at": row["scored_at"],
                }
            )
        out.sort(key=lambda r: r["pair"])
        return out


class SqliteStore:
    """Store facade: owns the database file and hands out transactions."""

    def __init__(self, path: str | Path) -> None:
        self.path = str(path)
        with self._connect() as conn:
            conn.executescript(SCHEMA)
            conn.commit()

    def _connect(self) -> sqlite3.Connection:
        # isolation_level=None: transactions are driven explicitly below.
        conn = sqlite3.connect(self.path, timeout=30.0, isolation_level=None)
        conn.row_factory = sqlite3.Row
        conn.execute("PRAGMA foreign_keys = ON")
        return conn

    @contextmanager
    def transaction(self) -> Iterator[StoreTxn]:
        conn = self._connect()
        try:
            conn.execute("BEGIN IMMEDIATE")
            yield StoreTxn(conn)
            conn.commit()
        except BaseException:
            conn.rollback()
            raise
        finally:
            conn.close()

    # -- catalog -------------------------------------------------------------

    def seed_catalog(self, catalog: Catalog) -> int:
        """Replace the persisted goal/target tables with this catalog."""
        with self.transaction() as txn:
            txn.conn.execute("DELETE FROM sdg_targets")
            txn.conn.execute("DELETE FROM goals")
            txn.conn.executemany(
                "INSERT INTO goals (id, name) VALUES (?, ?)",
                [(goal.id, goal.name) for goal in catalog.goals],
            )
            txn.conn.executemany(
                "INSERT INTO sdg_targets (code, goal_id, position, description) VALUES (?, ?, ?, ?)",
                [
                    (str(t.code), t.code.goal, i, t.description)
                    for i, t in enumerate(catalog.targets)
                ],
            )
        return len(catalog)

    def load_catalog(self) -> Catalog | None:
        """Rebuild the catalog from the database, or None if not seeded."""
        with self.transaction() as txn:
            goal_rows = txn.conn.execute("SELECT * FROM goals ORDER BY id").fetchall()
            target_rows = txn.conn.execute("SELECT * FROM sdg_targets ORDER BY position").fetchall()
        if not target_rows:
            return None
        goals = tuple(Goal(row["id"], row["name"]) for row in goal_rows)
        targets = tuple(
            Target(parse_target_code(row["code"]), row["description"]) for row in target_rows
        )
        return Catalog(goals=goals, targets=targets)

    # -- users and sessions ---------------------------------------------------

    def create_user(
        self,
        login: str,
        password_hash: str,
        full_name: str,
        years_experience: int,
        educational_attainment: str = "",
        affiliations: str = "",
        acknowledgement_opt_in: bool = False,
        curator_id: int | None = None,
        status: UserStatus = UserStatus.PENDING,
        role: Role = Role.EXPERT,
    ) -> ExpertUser:
        with self.transaction() as txn:
            if curator_id is not None and txn.get_user(curator_id) is None:
                raise SurveyError(f"unknown curator {curator_id}")
            try:
                cursor = txn.conn.execute(
                    """
                    INSERT INTO users (login, password_hash, full_name, educational_attainment,
                                       years_experience, affiliations, acknowledgement_opt_in,
                                       curator_id, status, role)
                    VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
                    """,
                    (
                        login,
                        password_hash,
                        full_name,
                        educational_attainment,
                        years_experience,
                        affiliations,
                        int(acknowledgement_opt_in),
                        curator_id,
                        status.value,
                        role.value,
                    ),
                )
            except sqlite3.IntegrityError:
                raise DuplicateLoginError(f"login {login!r} is already taken") from None
            user_id = cursor.lastrowid
            assert user_id is not None
            user = txn.get_user(user_id)
            assert user is not None
        return user

    def user_by_login(self, login: str) -> ExpertUser | None:
        with self.transaction() as txn:
            row = txn.conn.execute("SELECT * FROM users WHERE login = ?", (login,)).fetchone()
            return _row_to_user(row) if row else None

    def user_by_id(self, user_id: int) -> ExpertUser | None:
        with self.transaction() as txn:
            return txn.get_user(user_id)

    def update_user(self, user: ExpertUser) -> None:
        with self.transaction() as txn:
            txn.put_user(user)

    def pending_users(self) -> list[ExpertUser]:
        with self.transaction() as txn:
            rows = txn.conn.execute(
                "SELECT * FROM users WHERE status = 'pending' ORDER BY id"
            ).fetchall()
            return [_row_to_user(row) for row in rows]

    def all_users(self) -> list[ExpertUser]:
        with self.transaction() as txn:
            rows = txn.conn.execute("SELECT * FROM users ORDER BY id").fetchall()
            return [_row_to_user(row) for row in rows]

    def create_session(self, token_hash: str, user_id: int, ttl: timedelta) -> datetime:
        expires = utc_now() + ttl
        with self.transaction() as txn:
            txn.conn.execute(
                "INSERT INTO sessions (token_hash, user_id, expires_at) VALUES (?, ?, ?)",
                (token_hash, user_id, iso_utc(expires)),
            )
        return expires

    def session_user(self, token_hash: str) -> ExpertUser | None:
        """Resolve a session to its user; expired tokens are rejected."""
        with self.transaction() as txn:
            row = txn.conn.execute(
                "SELECT * FROM sessions WHERE token_hash = ?", (token_hash,)
            ).fetchone()
            if row is None:
                return None
            if parse_iso_utc(row["expires_at"]) <= utc_now():
                txn.conn.execute("DELETE FROM sessions WHERE token_hash = ?", (token_hash,))
                return None
            return txn.get_user(row["user_id"])

    # -- notifications ---------------------------------------------------------

    def add_notification(self, recipient_id: int | None, subject: str, body: str) -> None:
        with self.transaction() as txn:
            txn.conn.execute(
                "INSERT INTO notifications (recipient_id, subject, body, created_at) VALUES (?, ?, ?, ?)",
                (recipient_id, subject, body, iso_utc(utc_now())),
            )

    def notifications_for(self, recipient_id: int | None) -> list[dict]:
        with self.transaction() as txn:
            if recipient_id is None:
                rows = txn.conn.execute(
                    "SELECT * FROM notifications WHERE recipient_id IS NULL ORDER BY id"
                ).fetchall()
            else:
                rows = txn.conn.execute(
                    "SELECT * FROM notifications WHERE recipient_id = ? ORDER BY id",
                    (recipient_id,),
                ).fetchall()
            return [dict(row) for row in rows]
