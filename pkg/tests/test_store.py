"""SQLite persistence: durability, constraints, sessions, and engine parity."""

from __future__ import annotations

import sqlite3
import threading
from datetime import timedelta, timezone

import pytest

from sdgraph import (
    AlreadyScoredError,
    AssignmentState,
    ExpertUser,
    Interaction,
    SurveyEngine,
    SurveyError,
    UserStatus,
)
from sdgraph.service import (
    DuplicateLoginError,
    SqliteStore,
    hash_password,
    iso_utc,
    pair_from_text,
    parse_iso_utc,
    verify_password,
)

from conftest import make_admin
from edgesets import pair


def new_expert(store, login="ada", years=10, approved=True, **kw):
    return store.create_user(
        login=login,
        password_hash=hash_password("pw"),
        full_name=kw.pop("full_name", login.title()),
        years_experience=years,
        status=UserStatus.APPROVED if approved else UserStatus.PENDING,
        **kw,
    )


class TestTimestamps:
    def test_iso_utc_second_resolution(self):
        moment = parse_iso_utc("2023-04-01T09:00:00.123456+02:00")
        assert iso_utc(moment) == "2023-04-01T07:00:00+00:00"

    def test_z_suffix_accepted(self):
        assert parse_iso_utc("2023-04-01T09:00:00Z").tzinfo == timezone.utc

    def test_naive_treated_as_utc(self):
        assert iso_utc(parse_iso_utc("2023-04-01T09:00:00")) == "2023-04-01T09:00:00+00:00"

    def test_round_trip(self):
        text = "2023-04-01T09:00:00+00:00"
        assert iso_utc(parse_iso_utc(text)) == text


class TestPairText:
    def test_round_trip(self):
        key = pair("13.1", "14.C")
        assert pair_from_text(str(key)) == key

    def test_custom_separator(self):
        assert pair_from_text("13.1,14.C", sep=",") == pair("13.1", "14.C")

    def test_malformed(self):
        with pytest.raises(SurveyError):
            pair_from_text("13.1")


class TestUsers:
    def test_create_and_fetch(self, store):
        user = new_expert(store, "ada", acknowledgement_opt_in=True)
        assert user.id is not None
        fetched = store.user_by_login("ada")
        assert fetched == user
        assert store.user_by_id(user.id) == user

    def test_duplicate_login(self, store):
        new_expert(store, "ada")
        with pytest.raises(DuplicateLoginError):
            new_expert(store, "ada")

    def test_unknown_curator_rejected(self, store):
        with pytest.raises(SurveyError, match="curator"):
            new_expert(store, "ada", curator_id=999)

    def test_curator_link(self, store):
        curator = new_expert(store, "cur")
        recruit = new_expert(store, "rec", approved=False, curator_id=curator.id)
        assert recruit.curator_id == curator.id
        assert [u.login for u in store.pending_users()] == ["rec"]

    def test_update_user(self, store):
        user = new_expert(store, "ada", approved=False)
        store.update_user(user.approve())
        refetched = store.user_by_id(user.id)
        assert refetched is not None and refetched.approved

    def test_password_hashes_verify(self, store):
        new_expert(store, "ada")
        user = store.user_by_login("ada")
        assert verify_password("pw", user.password_hash)
        assert not verify_password("wrong", user.password_hash)
        assert not verify_password("pw", "garbage")


class TestSessions:
    def test_valid_session_resolves(self, store):
        user = new_expert(store, "ada")
        store.create_session("tok-hash", user.id, timedelta(hours=1))
        resolved = store.session_user("tok-hash")
        assert resolved is not None and resolved.login == "ada"

    def test_expired_session_rejected_and_removed(self, store):
        user = new_expert(store, "ada")
        store.create_session("tok-hash", user.id, timedelta(seconds=-1))
        assert store.session_user("tok-hash") is None
        with store.transaction() as txn:
            rows = txn.conn.execute("SELECT COUNT(*) AS n FROM sessions").fetchone()
        assert rows["n"] == 0

    def test_unknown_token(self, store):
        assert store.session_user("nope") is None


class TestCatalogPersistence:
    def test_seed_and_reload(self, store, official):
        assert store.load_catalog() is None
        store.seed_catalog(official)
        loaded = store.load_catalog()
        assert loaded is not None
        assert loaded.codes == official.codes
        assert [g.name for g in loaded.goals] == [g.name for g in official.goals]

    def test_reseed_replaces(self, store, official, extended):
        store.seed_catalog(official)
        store.seed_catalog(extended)
        loaded = store.load_catalog()
        assert len(loaded) == 171


class TestEngineOverSqlite:
    """The survey rules behave identically over SQLite and memory."""

    def test_full_flow_survives_reopen(self, seeded_store, official, tmp_path):
        user = new_expert(seeded_store, "ada")
        engine = SurveyEngine(official, seeded_store)
        _, new = engine.choose_goals(user.id, [13])
        engine.submit_answer(user.id, new[0].pair, -2, "conflict", "mitigate")
        engine.skip(user.id, new[1].pair)

        reopened = SqliteStore(seeded_store.path)
        engine2 = SurveyEngine(official, reopened)
        progress = engine2.progress(user.id)
        assert (progress.answered, progress.skipped) == (1, 1)
        assert progress.total == len(new)
        graph = engine2.snapshot()
        assert graph.interactions[new[0].pair].score == -2

    def test_single_score_across_threads(self, seeded_store, official):
        user = new_expert(seeded_store, "ada")
        engine = SurveyEngine(official, seeded_store)
        _, new = engine.choose_goals(user.id, [13])
        key = new[0].pair

        attempts = 8
        barrier = threading.Barrier(attempts)
        outcomes: list[str] = []
        lock = threading.Lock()

        def submit() -> None:
            barrier.wait()
            try:
                engine.submit_answer(user.id, key, 2)
                outcome = "won"
            except AlreadyScoredError:
                outcome = "lost"
            with lock:
                outcomes.append(outcome)

        threads = [threading.Thread(target=submit) for _ in range(attempts)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert outcomes.count("won") == 1

    def test_constraint_catches_bypassed_checks(self, seeded_store, official):
        """Even raw writes cannot score a pair twice."""
        user = new_expert(seeded_store, "ada")
        engine = SurveyEngine(official, seeded_store)
        _, new = engine.choose_goals(user.id, [13])
        key = new[0].pair
        engine.submit_answer(user.id, key, 2)

        with pytest.raises(AlreadyScoredError):
            with seeded_store.transaction() as txn:
                # Skips every application check and goes straight to the insert.
                txn.add_interaction(Interaction(key=key, score=3, scorer="ada",
                                                scored_at=parse_iso_utc("2023-01-01T00:00:00Z")))

    def test_unique_pair_constraint_in_schema(self, seeded_store):
        with pytest.raises(sqlite3.IntegrityError):
            with seeded_store.transaction() as txn:
                txn.conn.execute(
                    "INSERT INTO users (login, password_hash, full_name, years_experience, status, role)"
                    " VALUES ('x', '', 'X', 9, 'approved', 'expert')"
                )
                uid = txn.conn.execute("SELECT id FROM users WHERE login='x'").fetchone()["id"]
                for _ in range(2):
                    txn.conn.execute(
                        "INSERT INTO survey_answers (pair, score, scorer_id, scored_at)"
                        " VALUES ('1.1|1.2', 1, ?, '2023-01-01T00:00:00+00:00')",
                        (uid,),
                    )

    def test_transaction_rolls_back_on_error(self, seeded_store, official):
        user = new_expert(seeded_store, "ada")
        try:
            with seeded_store.transaction() as txn:
                txn.put_selection(user.id, frozenset({13}))
                raise RuntimeError("boom")
        except RuntimeError:
            pass
        with seeded_store.transaction() as txn:
            assert txn.get_selection(user.id) == frozenset()


class TestNotifications:
    def test_recorded_for_curator(self, store):
        curator = new_expert(store, "cur")
        store.add_notification(curator.id, "sign-up", "someone signed up")
        inbox = store.notifications_for(curator.id)
        assert len(inbox) == 1
        assert inbox[0]["subject"] == "sign-up"

    def test_admin_broadcast_without_recipient(self, store):
        store.add_notification(None, "sign-up", "no curator given")
        assert len(store.notifications_for(None)) == 1
