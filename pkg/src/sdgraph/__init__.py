"""Survey and analysis toolkit for interactions between SDG targets.

The package is organised in three layers. ``catalog`` names the 169
targets of the 17 Sustainable Development Goals; ``graph`` holds the
scored interaction network and the analyses run over it (summary
statistics, trouble spots, synergy clusters, longest chains of mutual
reinforcement); ``survey`` implements the expert elicitation workflow
that produces the scores. ``service`` adds SQLite persistence, an HTTP
API, and a command line interface on top.
"""

from .catalog import (
    Catalog,
    CatalogError,
    Goal,
    Target,
    TargetCode,
    load_catalog,
    load_catalog_text,
    official_catalog,
    parse_target_code,
    targets_for_goals,
)
from .graph import (
    SCORE_LABELS,
    SCORE_MAX,
    SCORE_MIN,
    BeautifulPolicy,
    CycleError,
    Dag,
    EdgeClass,
    GraphError,
    GraphSnapshot,
    Interaction,
    OrientedEdge,
    PairKey,
    PathResult,
    SummaryStats,
    all_pairs,
    beautiful_subgraph,
    beautiful_targets,
    classify,
    classify_score,
    export_graph,
    longest_positive_path,
    orient_acyclic,
    rank_by_negative,
    score_label,
    summarize,
    topological_sort,
    ugly_edges,
    ugly_targets,
    validate_score,
)
from .survey import (
    MIN_YEARS_EXPERIENCE,
    AlreadyScoredError,
    Assignment,
    AssignmentState,
    ExpertUser,
    GoalSelection,
    MemoryStore,
    MissingMitigationError,
    NotApprovedError,
    NotAssignedError,
    Progress,
    Role,
    SurveyEngine,
    SurveyError,
    UnknownUserError,
    UserStatus,
    candidate_pairs,
    check_submission,
)

__version__ = "0.1.0"

__all__ = [
    "SCORE_LABELS",
    "SCORE_MAX",
    "SCORE_MIN",
    "MIN_YEARS_EXPERIENCE",
    "AlreadyScoredError",
    "Assignment",
    "AssignmentState",
    "BeautifulPolicy",
    "Catalog",
    "CatalogError",
    "CycleError",
    "Dag",
    "EdgeClass",
    "ExpertUser",
    "Goal",
    "GoalSelection",
    "GraphError",
    "GraphSnapshot",
    "Interaction",
    "MemoryStore",
    "MissingMitigationError",
    "NotApprovedError",
    "NotAssignedError",
    "OrientedEdge",
    "PairKey",
    "PathResult",
    "Progress",
    "Role",
    "SummaryStats",
    "SurveyEngine",
    "SurveyError",
    "Target",
    "TargetCode",
    "UnknownUserError",
    "UserStatus",
    "all_pairs",
    "beautiful_subgraph",
    "beautiful_targets",
    "candidate_pairs",
    "check_submission",
    "classify",
    "classify_score",
    "export_graph",
    "load_catalog",
    "load_catalog_text",
    "longest_positive_path",
    "official_catalog",
    "orient_acyclic",
    "parse_target_code",
    "rank_by_negative",
    "score_label",
    "summarize",
    "targets_for_goals",
    "topological_sort",
    "ugly_edges",
    "ugly_targets",
    "validate_score",
]
