"""CSV export of colored edges and the bulk edge import.

The export emits one row per colored interaction, ordered by pair, with
the scorer display name honoring the acknowledgement opt-in ("anonymous"
when opted out). Importing accepts both bare fixture files
(target_a,target_b,score,explanation,mitigation) and previously exported
files; scorer and scored_at columns are preserved verbatim so that
export -> wipe -> import -> export round-trips byte-identically.

Imports run under the same validation as live submissions, attributed to
a synthetic "importer" user, and abort as a whole on any invalid row.
"""

from __future__ import annotations

import csv
import io

from ..catalog import Catalog, parse_target_code
from ..graph import Interaction, PairKey, classify_score
from ..survey import (
    Assignment,
    AssignmentState,
    ExpertUser,
    Role,
    SurveyError,
    UserStatus,
    check_submission,
)
from .store import SqliteStore, iso_utc, parse_iso_utc, utc_now

EXPORT_HEADER = ["target_a", "target_b", "score", "class", "explanation", "mitigation", "scorer", "scored_at"]

IMPORTER_LOGIN = "importer"


class ImportFailure(SurveyError):
    """Aggregates row-level validation errors; nothing was imported."""

    def __init__(self, errors: list[tuple[int, str]]) -> None:
        self.errors = errors
        lines = "; ".join(f"row {row}: {message}" for row, message in errors)
        super().__init__(f"import aborted: {lines}")


def export_answers_csv(store: SqliteStore) -> str:
    """Render every colored edge as CSV. Deterministic for a given state."""
    with store.transaction() as txn:
        rows = txn.export_rows()
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(EXPORT_HEADER)
    for row in rows:
        pair: PairKey = row["pair"]
        writer.writerow(
            [
                str(pair.lo),
                str(pair.hi),
                row["score"],
                classify_score(row["score"]).value,
                row["explanation"],
                row["mitigation"],
                row["scorer"],
                row["scored_at"],
            ]
        )
    return buffer.getvalue()


def ensure_importer(store: SqliteStore) -> ExpertUser:
    """The synthetic user that owns imported edges (opted out of credits)."""
    existing = store.user_by_login(IMPORTER_LOGIN)
    if existing is not None:
        return existing
    return store.create_user(
        login=IMPORTER_LOGIN,
        password_hash="",
        full_name="Bulk importer",
        years_experience=5,
        acknowledgement_opt_in=False,
        status=UserStatus.APPROVED,
        role=Role.ADMIN,
    )


def import_edges_csv(store: SqliteStore, catalog: Catalog, text: str) -> int:
    """Bulk-color pairs from CSV text; returns the number of edges imported.

    Raises:
        ImportFailure: listing every offending row number; the database is
            left untouched.
    """
    reader = csv.DictReader(io.StringIO(text))
    fields = reader.fieldnames or []
    required = {"target_a", "target_b", "score"}
    if not required.issubset(fields):
        raise ImportFailure([(1, f"header must contain {sorted(required)}, got {fields}")])

    importer = ensure_importer(store)
    default_stamp = parse_iso_utc(iso_utc(utc_now()))
    errors: list[tuple[int, str]] = []
    parsed: list[dict] = []
    seen: dict[PairKey, int] = {}
    row_number = 1
    for row in reader:
        row_number += 1
        try:
            pair = PairKey.of(
                parse_target_code(row["target_a"] or ""),
                parse_target_code(row["target_b"] or ""),
            )
            for code in (pair.lo, pair.hi):
                if code not in catalog:
                    raise SurveyError(f"target {code} is not in the catalog")
            score = int(row["score"])
            explanation = (row.get("explanation") or "").strip() or None
            mitigation = (row.get("mitigation") or "").strip() or None
            check_submission(score, explanation, mitigation)
            if pair in seen:
                raise SurveyError(f"duplicate pair {pair} (first at row {seen[pair]})")
            seen[pair] = row_number
            stamp = (row.get("scored_at") or "").strip()
            parsed.append(
                {
                    "row": row_number,
                    "pair": pair,
                    "score": score,
                    "explanation": explanation,
                    "mitigation": mitigation,
                    "scored_at": parse_iso_utc(stamp) if stamp else default_stamp,
                    "attribution": (row.get("scorer") or "").strip() or None,
                }
            )
        except (SurveyError, ValueError) as exc:
            errors.append((row_number, str(exc)))
    if not errors:
        try:
            _apply_import(store, importer, parsed)
        except _RowError as exc:
            errors.append((exc.row_number, exc.message))
    if errors:
        raise ImportFailure(sorted(errors))
    return len(parsed)


class _RowError(Exception):
    def __init__(self, row_number: int, message: str) -> None:
        self.row_number = row_number
        self.message = message
        super().__init__(f"row {row_number}: {message}")


def _apply_import(store: SqliteStore, importer: ExpertUser, parsed: list[dict]) -> None:
    with store.transaction() as txn:
        colored = txn.colored_pairs()
        for row in parsed:
            pair: PairKey = row["pair"]
            if pair in colored:
                raise _RowError(row["row"], f"pair {pair} has already been scored")
            existing = txn.get_assignment(pair)
            if existing is not None and existing.user_id != importer.id:
                raise _RowError(
                    row["row"],
                    f"pair {pair} is bound to another user and cannot be imported",
                )
            txn.put_assignment(
                Assignment(user_id=importer.id, pair=pair, state=AssignmentState.ANSWERED)
            )
            txn.add_interaction(
                Interaction(
                    key=pair,
                    score=row["score"],
                    explanation=row["explanation"],
                    mitigation=row["mitigation"],
                    scorer=importer.login,
                    scored_at=row["scored_at"],
                ),
                attribution=row["attribution"],
            )
