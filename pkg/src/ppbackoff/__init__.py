"""Supervised PP-attachment disambiguation with generalized backed-off estimation.

Train frequency databases of verb/noun/preposition head words from
bracketed parse trees, then resolve 1-, 2-, and 3-PP attachment
ambiguities by backed-off frequency ratios, re-using the dense single-PP
statistics competitively when the sparser multi-PP tables run dry.
"""

from .configurations import (
    Configuration,
    Site,
    config_code,
    config_codes,
    enumerate_configurations,
    extension_code,
    first_pp_code,
    leading_pair_code,
    legal_next_sites,
    p3_candidate_sites,
    sites_for,
)
from .corpus import (
    TupleFileError,
    TupleRecord,
    VPClassification,
    build_vp,
    classify_vp,
    extract_tuples,
    read_tuple_file,
    write_tuple_file,
)
from .counts import (
    EvidenceQuery,
    FrequencyDatabase,
    ModelFormatError,
    build_database,
    load_model,
    save_model,
)
from .estimator import (
    AttachmentDecision,
    BackoffLevel,
    competitive_pp2,
    competitive_pp3,
    estimate_cb4,
    estimate_pp1,
    estimate_pp2,
    estimate_pp3,
    find_best_configuration,
)
from .evaluation import (
    DistanceTable,
    EvalReport,
    SplitSpec,
    baseline_chance,
    baseline_most_frequent,
    distance_analysis,
    evaluate,
    stratified_split,
)
from .trees import ParseError, Tree, parse_bracketed_tree, read_treebank

__version__ = "0.1.0"

__all__ = [
    "AttachmentDecision",
    "BackoffLevel",
    "Configuration",
    "DistanceTable",
    "EvalReport",
    "EvidenceQuery",
    "FrequencyDatabase",
    "ModelFormatError",
    "ParseError",
    "Site",
    "SplitSpec",
    "Tree",
    "TupleFileError",
    "TupleRecord",
    "VPClassification",
    "baseline_chance",
    "baseline_most_frequent",
    "build_database",
    "build_vp",
    "classify_vp",
    "competitive_pp2",
    "competitive_pp3",
    "config_code",
    "config_codes",
    "distance_analysis",
    "enumerate_configurations",
    "estimate_cb4",
    "estimate_pp1",
    "estimate_pp2",
    "estimate_pp3",
    "evaluate",
    "extension_code",
    "extract_tuples",
    "find_best_configuration",
    "first_pp_code",
    "leading_pair_code",
    "legal_next_sites",
    "load_model",
    "p3_candidate_sites",
    "parse_bracketed_tree",
    "read_treebank",
    "read_tuple_file",
    "save_model",
    "sites_for",
    "stratified_split",
    "write_tuple_file",
]
