"""Persistence, authentication, transfer, and HTTP layers."""

from .api import create_app
from .auth import hash_password, new_token, token_hash, verify_password
from .store import DuplicateLoginError, SqliteStore, iso_utc, pair_from_text, pair_text, parse_iso_utc, utc_now
from .transfer import EXPORT_HEADER, ImportFailure, ensure_importer, export_answers_csv, import_edges_csv

__all__ = [
    "EXPORT_HEADER",
    "DuplicateLoginError",
    "ImportFailure",
    "SqliteStore",
    "create_app",
    "ensure_importer",
    "export_answers_csv",
    "hash_password",
    "import_edges_csv",
    "iso_utc",
    "new_token",
    "pair_from_text",
    "pair_text",
    "parse_iso_utc",
    "token_hash",
    "utc_now",
    "verify_password",
]
