"""The immutable catalog of goals and targets that defines the node set.

A full catalog holds the 17 goals and their 169 targets. Target codes are
written "<goal>.<suffix>" where the suffix is either a number ("13.1") or a
single letter ("16.B"). Numeric suffixes sort before letter suffixes within
a goal, so 13.1 < 13.3 < 13.A < 13.B.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import total_ordering
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

GOAL_COUNT = 17
OFFICIAL_TARGET_COUNT = 169


class CatalogError(ValueError):
    """Raised for malformed target codes or invalid catalog data."""


@total_ordering
@dataclass(frozen=True)
class TargetCode:
    """Canonical identity of one target, e.g. goal 13, suffix 1 -> "13.1"."""

    goal: int
    suffix: int | str

    def __post_init__(self) -> None:
        if not 1 <= self.goal <= GOAL_COUNT:
            raise CatalogError(f"goal must be in 1..{GOAL_COUNT}, got {self.goal!r}")
        if isinstance(self.suffix, bool) or not isinstance(self.suffix, (int, str)):
            raise CatalogError(f"suffix must be an int or a letter, got {self.suffix!r}")
        if isinstance(self.suffix, int):
            if self.suffix < 1:
                raise CatalogError(f"numeric suffix must be positive, got {self.suffix}")
        else:
            if len(self.suffix) != 1 or not self.suffix.isalpha():
                raise CatalogError(f"letter suffix must be a single letter, got {self.suffix!r}")
            object.__setattr__(self, "suffix", self.suffix.upper())

    @property
    def sort_key(self) -> tuple[int, int, int | str]:
        # Numeric suffixes sort before letters within a goal.
        if isinstance(self.suffix, int):
            return (self.goal, 0, self.suffix)
        return (self.goal, 1, self.suffix)

    def __lt__(self, other: "TargetCode") -> bool:
        if not isinstance(other, TargetCode):
            return NotImplemented
        a, b = self.sort_key, other.sort_key
        # Mixed int/str third components never compare against each other
        # directly because the middle component differs.
        return a[:2] < b[:2] or (a[:2] == b[:2] and a[2] < b[2])  # type: ignore[operator]

    def __str__(self) -> str:
        return f"{self.goal}.{self.suffix}"


def parse_target_code(text: str) -> TargetCode:
    """Parse "13.1" or "16.b" into a TargetCode, canonicalizing letter case.

    Raises:
        CatalogError: no dot, goal outside 1..17, or an empty/invalid suffix.
    """
    if not isinstance(text, str):
        raise CatalogError(f"target code must be a string, got {text!r}")
    cleaned = text.strip()
    if cleaned.count(".") != 1:
        raise CatalogError(f"malformed target code {text!r}: expected '<goal>.<suffix>'")
    goal_part, suffix_part = cleaned.split(".")
    try:
        goal = int(goal_part)
    except ValueError:
        raise CatalogError(f"malformed target code {text!r}: goal is not a number") from None
    suffix_part = suffix_part.strip()
    if not suffix_part:
        raise CatalogError(f"malformed target code {text!r}: empty suffix")
    suffix: int | str
    if suffix_part.isdigit():
        suffix = int(suffix_part)
    else:
        suffix = suffix_part
    return TargetCode(goal, suffix)


@dataclass(frozen=True)
class Goal:
    """One of the 17 goals: numeric id plus short name."""

    id: int
    name: str

    def __post_init__(self) -> None:
        if not 1 <= self.id <= GOAL_COUNT:
            raise CatalogError(f"goal id must be in 1..{GOAL_COUNT}, got {self.id!r}")
        if not self.name.strip():
            raise CatalogError(f"goal {self.id} has an empty name")


@dataclass(frozen=True)
class Target:
    """A target (node): code plus display description."""

    code: TargetCode
    description: str

    def __post_init__(self) -> None:
        if not self.description.strip():
            raise CatalogError(f"target {self.code} has an empty description")


@dataclass(frozen=True)
class Catalog:
    """Validated, immutable set of goals and targets.

    Target order is preserved as loaded (for display); lookups and
    goal filters use the canonical code ordering.
    """

    goals: tuple[Goal, ...]
    targets: tuple[Target, ...]
    _by_code: dict[TargetCode, Target] = field(init=False, repr=False, compare=False)
    _goal_by_id: dict[int, Goal] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        goal_by_id: dict[int, Goal] = {}
        names = set()
        for goal in self.goals:
            if goal.id in goal_by_id:
                raise CatalogError(f"duplicate goal id {goal.id}")
            if goal.name in names:
                raise CatalogError(f"duplicate goal name {goal.name!r}")
            goal_by_id[goal.id] = goal
            names.add(goal.name)
        by_code: dict[TargetCode, Target] = {}
        for target in self.targets:
            if target.code in by_code:
                raise CatalogError(f"duplicate target code {target.code}")
            if target.code.goal not in goal_by_id:
                raise CatalogError(f"target {target.code} references unknown goal {target.code.goal}")
            by_code[target.code] = target
        object.__setattr__(self, "_by_code", by_code)
        object.__setattr__(self, "_goal_by_id", goal_by_id)

    def __len__(self) -> int:
        return len(self.targets)

    def __contains__(self, code: TargetCode) -> bool:
        return code in self._by_code

    def target(self, code: TargetCode) -> Target:
        try:
            return self._by_code[code]
        except KeyError:
            raise CatalogError(f"unknown target {code}") from None

    def goal(self, goal_id: int) -> Goal:
        try:
            return self._goal_by_id[goal_id]
        except KeyError:
            raise CatalogError(f"unknown goal id {goal_id}") from None

    @property
    def goal_ids(self) -> frozenset[int]:
        return frozenset(self._goal_by_id)

    @property
    def codes(self) -> tuple[TargetCode, ...]:
        return tuple(t.code for t in self.targets)


def load_catalog(source: str | Path | IO[str]) -> Catalog:
    """Load and validate a catalog from CSV.

    Expected header: goal_id,target_code,goal_name,description. The whole
    file is rejected on any invalid row, with the row number in the error.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return _read_catalog(fh)
    return _read_catalog(source)


def _read_catalog(fh: IO[str]) -> Catalog:
    reader = csv.DictReader(fh)
    required = {"goal_id", "target_code", "goal_name", "description"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise CatalogError(f"catalog header must contain {sorted(required)}")
    goals: dict[int, Goal] = {}
    targets: list[Target] = []
    seen: dict[TargetCode, int] = {}
    row_number = 1  # header is row 1
    for row in reader:
        row_number += 1
        try:
            goal_id = int(row["goal_id"])
            code = parse_target_code(row["target_code"])
            goal = Goal(goal_id, (row["goal_name"] or "").strip())
            if code.goal != goal_id:
                raise CatalogError(f"target {code} does not belong to goal {goal_id}")
            known = goals.get(goal_id)
            if known is not None and known != goal:
                raise CatalogError(f"goal {goal_id} named both {known.name!r} and {goal.name!r}")
            target = Target(code, (row["description"] or "").strip())
        except (CatalogError, TypeError, ValueError) as exc:
            raise CatalogError(f"row {row_number}: {exc}") from None
        if code in seen:
            raise CatalogError(f"row {row_number}: duplicate target code {code} (first at row {seen[code]})")
        seen[code] = row_number
        goals.setdefault(goal_id, goal)
        targets.append(target)
    if not targets:
        raise CatalogError("catalog file contains no targets")
    ordered_goals = tuple(goals[g] for g in sorted(goals))
    return Catalog(goals=ordered_goals, targets=tuple(targets))


def load_catalog_text(text: str) -> Catalog:
    """Load a catalog from an in-memory CSV string."""
    return _read_catalog(io.StringIO(text))


def official_catalog() -> Catalog:
    """Load the bundled catalog of all 169 targets across the 17 goals."""
    data = resources.files(__package__).joinpath("data/sdg_targets.csv").read_text(encoding="utf-8")
    catalog = load_catalog_text(data)
    assert len(catalog) == OFFICIAL_TARGET_COUNT
    return catalog


def targets_for_goals(catalog: Catalog, goals: Iterable[int]) -> list[Target]:
    """All targets whose goal is in ``goals``, in canonical code order.

    Raises:
        CatalogError: any goal id not present in the catalog.
    """
    wanted = set(goals)
    unknown = wanted - catalog.goal_ids
    if unknown:
        raise CatalogError(f"unknown goal ids: {sorted(unknown)}")
    chosen = [t for t in catalog.targets if t.code.goal in wanted]
    chosen.sort(key=lambda t: t.code.sort_key)
    return chosen
