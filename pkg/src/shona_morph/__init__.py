"""Rule-based morphological analyzer for Shona.

A curated lexicon provides verified annotations; tokens it misses go
through a cascaded rule engine covering noun-class prefixes, verbal
concords, tense/aspect markers, derivational suffixes, clitics, and
closed-class word lists. An evaluation harness scores system output
against gold annotations.
"""

from importlib import resources

from .errors import (
    AlignmentError,
    AnalyzerError,
    DuplicateEntryError,
    FeatureError,
    FormatError,
    TableError,
    ValidationError,
)
from .features import MorphFeatureBag, parse_features, serialize_features
from .lexicon import (
    EMPTY_LEXICON,
    LexEntry,
    Lexicon,
    LexiconWarning,
    Violation,
    dump_lexicon,
    load_lexicon,
    validate_entry,
)
from .rules import (
    ConcordAnalysis,
    ConcordRef,
    NounAnalysis,
    RuleTables,
    VerbAnalysis,
    analyze_verb,
    classify_closed_class,
    default_tables,
    default_tables_json,
    detect_clitics,
    detect_concords,
    detect_noun_class,
    detect_tense_aspect,
    load_tables,
    number_for_class,
    strip_derivational_suffixes,
)
from .pipeline import (
    Token,
    TokenAnnotation,
    annotate,
    annotation_from_record,
    annotations_to_json,
    annotations_to_jsonl,
    export_json,
    export_jsonl,
    parse_annotations,
    tokenize,
)
from .evaluation import EvalReport, compute_metrics, load_gold, render_report


def seed_lexicon_path() -> str:
    """Filesystem path of the packaged seed lexicon."""
    return str(resources.files("shona_morph").joinpath("data/seed_lexicon.json"))


def rule_tables_path() -> str:
    """Filesystem path of the packaged rule-table file."""
    return str(resources.files("shona_morph").joinpath("data/rule_tables.json"))


def load_seed_lexicon() -> Lexicon:
    """Load the lexicon shipped with the package."""
    return load_lexicon(seed_lexicon_path())


__all__ = [
    "AlignmentError",
    "AnalyzerError",
    "ConcordAnalysis",
    "ConcordRef",
    "DuplicateEntryError",
    "EMPTY_LEXICON",
    "EvalReport",
    "FeatureError",
    "FormatError",
    "LexEntry",
    "Lexicon",
    "LexiconWarning",
    "MorphFeatureBag",
    "NounAnalysis",
    "RuleTables",
    "TableError",
    "Token",
    "TokenAnnotation",
    "ValidationError",
    "VerbAnalysis",
    "Violation",
    "analyze_verb",
    "annotate",
    "annotation_from_record",
    "annotations_to_json",
    "annotations_to_jsonl",
    "classify_closed_class",
    "compute_metrics",
    "default_tables",
    "default_tables_json",
    "detect_clitics",
    "detect_concords",
    "detect_noun_class",
    "detect_tense_aspect",
    "dump_lexicon",
    "export_json",
    "export_jsonl",
    "load_gold",
    "load_lexicon",
    "load_seed_lexicon",
    "load_tables",
    "number_for_class",
    "parse_annotations",
    "parse_features",
    "render_report",
    "rule_tables_path",
    "seed_lexicon_path",
    "serialize_features",
    "strip_derivational_suffixes",
    "tokenize",
    "validate_entry",
]
