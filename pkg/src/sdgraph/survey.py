"""Expert assignment and scoring workflow.

Approved experts choose the goals matching their expertise; the engine
generates every not-yet-claimed pair among the targets of those goals and
binds it to them. A pair is bound to at most one user, ever, and can be
scored exactly once: the first successful submission wins and later
attempts fail with :class:`AlreadyScoredError`. Negative scores require
both an explanation and a mitigation. Skipped pairs stay answerable.

State lives behind a small store contract (``transaction()`` yielding the
primitive reads/writes) so the same rules run against the in-memory store
here and the SQLite store of the service layer. Stores must serialize
transactions per pair; the bundled :class:`MemoryStore` simply holds a
process-wide lock for the duration of each transaction.
"""

from __future__ import annotations

import enum
import threading
from contextlib import contextmanager
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Iterable, Iterator, Protocol

from .catalog import Catalog, TargetCode, targets_for_goals
from .graph import GraphSnapshot, Interaction, PairKey, all_pairs, validate_score

MIN_YEARS_EXPERIENCE = 5


class SurveyError(Exception):
    """Base class for workflow rule violations."""


class UnknownUserError(SurveyError):
    pass


class NotApprovedError(SurveyError):
    pass


class NotAssignedError(SurveyError):
    """The pair is not assigned to this user (or to anybody)."""


class AlreadyScoredError(SurveyError):
    """Each pair can be scored only once; the existing score is final."""


class MissingMitigationError(SurveyError):
    """Negative scores need a non-empty explanation and mitigation."""


class UserStatus(enum.Enum):
    PENDING = "pending"
    APPROVED = "approved"


class Role(enum.Enum):
    EXPERT = "expert"
    ADMIN = "admin"


@dataclass(frozen=True)
class ExpertUser:
    """A scorer account. Pending until a curator or admin approves it."""

    id: int
    login: str
    full_name: str
    years_experience: int
    educational_attainment: str = ""
    affiliations: str = ""
    acknowledgement_opt_in: bool = False
    curator_id: int | None = None
    status: UserStatus = UserStatus.PENDING
    role: Role = Role.EXPERT
    password_hash: str = ""

    def __post_init__(self) -> None:
        if not self.login.strip():
            raise SurveyError("login must be non-empty")
        if self.years_experience < 0:
            raise SurveyError("years_experience must be non-negative")

    @property
    def approved(self) -> bool:
        return self.status is UserStatus.APPROVED

    def approve(self) -> "ExpertUser":
        """Approval transition; requires the experience bar to be met."""
        if self.years_experience < MIN_YEARS_EXPERIENCE:
            raise SurveyError(
                f"cannot approve {self.login!r}: requires at least "
                f"{MIN_YEARS_EXPERIENCE} years of experience, has {self.years_experience}"
            )
        return replace(self, status=UserStatus.APPROVED)


@dataclass(frozen=True)
class GoalSelection:
    """The goals a user declared expertise in. Never empty."""

    user_id: int
    goals: frozenset[int]

    def __post_init__(self) -> None:
        if not self.goals:
            raise SurveyError("goal selection must be non-empty")


class AssignmentState(enum.Enum):
    PENDING = "pending"
    SKIPPED = "skipped"
    ANSWERED = "answered"


@dataclass(frozen=True)
class Assignment:
    """One pair bound to one user. Answered is terminal; Skipped is not."""

    user_id: int
    pair: PairKey
    state: AssignmentState = AssignmentState.PENDING


@dataclass(frozen=True)
class Progress:
    answered: int
    skipped: int
    pending: int

    @property
    def total(self) -> int:
        return self.answered + self.skipped + self.pending


class SurveyTxn(Protocol):
    """Primitive reads/writes available inside one store transaction."""

    def get_user(self, user_id: int) -> ExpertUser | None: ...
    def put_user(self, user: ExpertUser) -> None: ...
    def get_selection(self, user_id: int) -> frozenset[int]: ...
    def put_selection(self, user_id: int, goals: frozenset[int]) -> None: ...
    def get_assignment(self, pair: PairKey) -> Assignment | None: ...
    def assignments_for(self, user_id: int) -> list[Assignment]: ...
    def assigned_pairs(self) -> set[PairKey]: ...
    def put_assignment(self, assignment: Assignment) -> None: ...
    def get_interaction(self, pair: PairKey) -> Interaction | None: ...
    def add_interaction(self, interaction: Interaction) -> None: ...
    def colored_pairs(self) -> set[PairKey]: ...
    def all_interactions(self) -> list[Interaction]: ...


class SurveyStore(Protocol):
    def transaction(self) -> "Iterator[SurveyTxn]": ...


class MemoryStore:
    """In-memory store; a process lock serializes transactions."""

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self.users: dict[int, ExpertUser] = {}
        self.selections: dict[int, frozenset[int]] = {}
        self.assignments: dict[PairKey, Assignment] = {}
        self.interactions: dict[PairKey, Interaction] = {}

    @contextmanager
    def transaction(self) -> Iterator["MemoryStore"]:
        # Writes are applied in place, so engines must validate before
        # mutating; only add_interaction can fail, and it fails cleanly.
        with self._lock:
            yield self

    def get_user(self, user_id: int) -> ExpertUser | None:
        return self.users.get(user_id)

    def put_user(self, user: ExpertUser) -> None:
        self.users[user.id] = user

    def get_selection(self, user_id: int) -> frozenset[int]:
        return self.selections.get(user_id, frozenset())

    def put_selection(self, user_id: int, goals: frozenset[int]) -> None:
        self.selections[user_id] = goals

    def get_assignment(self, pair: PairKey) -> Assignment | None:
        return self.assignments.get(pair)

    def assignments_for(self, user_id: int) -> list[Assignment]:
        return sorted(
            (a for a in self.assignments.values() if a.user_id == user_id),
            key=lambda a: a.pair,
        )

    def assigned_pairs(self) -> set[PairKey]:
        return set(self.assignments)

    def put_assignment(self, assignment: Assignment) -> None:
        self.assignments[assignment.pair] = assignment

    def get_interaction(self, pair: PairKey) -> Interaction | None:
        return self.interactions.get(pair)

    def add_interaction(self, interaction: Interaction) -> None:
        if interaction.key in self.interactions:
            raise AlreadyScoredError(f"pair {interaction.key} has already been scored")
        self.interactions[interaction.key] = interaction

    def colored_pairs(self) -> set[PairKey]:
        return {k for k, i in self.interactions.items() if i.colored}

    def all_interactions(self) -> list[Interaction]:
        return sorted(self.interactions.values(), key=lambda i: i.key)


def check_submission(score: int, explanation: str | None, mitigation: str | None) -> None:
    """Validate a score and its texts without touching any state."""
    validate_score(score)
    if score < 0:
        if not (explanation or "").strip() or not (mitigation or "").strip():
            raise MissingMitigationError(
                "a negative score requires a non-empty explanation and mitigation"
            )


def candidate_pairs(catalog: Catalog, goals: Iterable[int]) -> set[PairKey]:
    """All pairs whose both endpoints lie in the targets of the given goals."""
    return all_pairs(targets_for_goals(catalog, set(goals)))


class SurveyEngine:
    """The workflow rules, independent of how state is stored."""

    def __init__(self, catalog: Catalog, store: SurveyStore | None = None) -> None:
        self.catalog = catalog
        self.store = store if store is not None else MemoryStore()

    # -- users ------------------------------------------------------------

    def register_user(self, user: ExpertUser) -> ExpertUser:
        with self.store.transaction() as txn:
            txn.put_user(user)
        return user

    def get_user(self, user_id: int) -> ExpertUser:
        with self.store.transaction() as txn:
            return self._require_user(txn, user_id)

    @staticmethod
    def _require_user(txn: SurveyTxn, user_id: int) -> ExpertUser:
        user = txn.get_user(user_id)
        if user is None:
            raise UnknownUserError(f"unknown user {user_id}")
        return user

    # -- goal selection and assignment generation --------------------------

    def choose_goals(self, user_id: int, goals: Iterable[int]) -> tuple[GoalSelection, list[Assignment]]:
        """Add goals to the user's selection and claim the new pairs.

        Adding goals later is incremental: only newly covered pairs that
        are still unclaimed and uncolored are assigned.
        """
        added = frozenset(goals)
        unknown = added - self.catalog.goal_ids
        if unknown:
            raise SurveyError(f"unknown goal ids: {sorted(unknown)}")
        with self.store.transaction() as txn:
            user = self._require_user(txn, user_id)
            if not user.approved:
                raise NotApprovedError(f"user {user.login!r} is not approved")
            combined = txn.get_selection(user_id) | added
            selection = GoalSelection(user_id=user_id, goals=combined)
            txn.put_selection(user_id, combined)
            new = self._generate(txn, user_id, combined)
        return selection, new

    def generate_assignments(self, user_id: int) -> list[Assignment]:
        """(Re-)generate assignments for the user's current selection.

        Pairs already colored, or already bound to any user, are excluded;
        an empty result is not an error. Deterministic: new assignments
        come back in canonical pair order.
        """
        with self.store.transaction() as txn:
            user = self._require_user(txn, user_id)
            if not user.approved:
                raise NotApprovedError(f"user {user.login!r} is not approved")
            goals = txn.get_selection(user_id)
            if not goals:
                return []
            return self._generate(txn, user_id, goals)

    def _generate(self, txn: SurveyTxn, user_id: int, goals: frozenset[int]) -> list[Assignment]:
        candidates = candidate_pairs(self.catalog, goals)
        taken = txn.assigned_pairs() | txn.colored_pairs()
        new = []
        for pair in sorted(candidates - taken):
            assignment = Assignment(user_id=user_id, pair=pair)
            txn.put_assignment(assignment)
            new.append(assignment)
        return new

    # -- scoring ------------------------------------------------------------

    def submit_answer(
        self,
        user_id: int,
        pair: PairKey,
        score: int,
        explanation: str | None = None,
        mitigation: str | None = None,
        now: datetime | None = None,
    ) -> Interaction:
        """Color a pair. The score is final; repeats raise AlreadyScoredError."""
        check_submission(score, explanation, mitigation)
        with self.store.transaction() as txn:
            user = self._require_user(txn, user_id)
            assignment = txn.get_assignment(pair)
            if assignment is None or assignment.user_id != user_id:
                raise NotAssignedError(f"pair {pair} is not assigned to user {user_id}")
            if assignment.state is AssignmentState.ANSWERED or txn.get_interaction(pair) is not None:
                raise AlreadyScoredError(f"pair {pair} has already been scored")
            interaction = Interaction(
                key=pair,
                score=score,
                explanation=explanation,
                mitigation=mitigation,
                scorer=user.login,
                scored_at=now if now is not None else datetime.now(timezone.utc),
            )
            txn.add_interaction(interaction)
            txn.put_assignment(replace(assignment, state=AssignmentState.ANSWERED))
        return interaction

    def skip(self, user_id: int, pair: PairKey) -> Assignment:
        """Set a pair aside; it stays answerable by the same user later."""
        with self.store.transaction() as txn:
            self._require_user(txn, user_id)
            assignment = txn.get_assignment(pair)
            if assignment is None or assignment.user_id != user_id:
                raise NotAssignedError(f"pair {pair} is not assigned to user {user_id}")
            if assignment.state is AssignmentState.ANSWERED:
                raise AlreadyScoredError(f"pair {pair} has already been answered")
            skipped = replace(assignment, state=AssignmentState.SKIPPED)
            txn.put_assignment(skipped)
        return skipped

    # -- reads ---------------------------------------------------------------

    def progress(self, user_id: int) -> Progress:
        with self.store.transaction() as txn:
            self._require_user(txn, user_id)
            counts = {state: 0 for state in AssignmentState}
            for assignment in txn.assignments_for(user_id):
                counts[assignment.state] += 1
        return Progress(
            answered=counts[AssignmentState.ANSWERED],
            skipped=counts[AssignmentState.SKIPPED],
            pending=counts[AssignmentState.PENDING],
        )

    def assignments_for(self, user_id: int) -> list[Assignment]:
        with self.store.transaction() as txn:
            self._require_user(txn, user_id)
            return txn.assignments_for(user_id)

    def snapshot(self) -> GraphSnapshot:
        """Immutable colored-graph view over the whole catalog."""
        with self.store.transaction() as txn:
            interactions = txn.all_interactions()
        return GraphSnapshot.build(self.catalog.targets, interactions)
