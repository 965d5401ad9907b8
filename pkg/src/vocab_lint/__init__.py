"""vocab-lint: a static analyzer for controlled vocabularies and picklists.

Checks term labels, definitions, identifiers, and deprecation practice;
suggests existing terms to reuse before new ones are minted; and scores
ontology maintenance health from metadata snapshots.
"""

__version__ = "0.1.0"

from .catalog import RULES, RuleInfo
from .engine import (
    ConfigError,
    LintFatalError,
    Report,
    RuleConfig,
    exit_code,
    load_config,
    render_report,
    run_lint,
)
from .health import HealthReport, OntologyMetadata, assess_health, load_metadata
from .ingest import FatalParseError, parse_obo, parse_term_table, serialize_obo
from .model import (
    Definition,
    Finding,
    Iri,
    SourceLocation,
    Synonym,
    Term,
    Vocabulary,
    build_vocabulary,
    merge_vocabularies,
    normalize_label,
)
from .reuse import ReuseIndex, Suggestion, build_index, suggest_terms

__all__ = [
    "__version__",
    "ConfigError",
    "Definition",
    "FatalParseError",
    "Finding",
    "HealthReport",
    "Iri",
    "LintFatalError",
    "OntologyMetadata",
    "Report",
    "ReuseIndex",
    "RuleConfig",
    "RuleInfo",
    "RULES",
    "SourceLocation",
    "Suggestion",
    "Synonym",
    "Term",
    "Vocabulary",
    "assess_health",
    "build_index",
    "build_vocabulary",
    "exit_code",
    "load_config",
    "load_metadata",
    "merge_vocabularies",
    "normalize_label",
    "parse_obo",
    "parse_term_table",
    "render_report",
    "run_lint",
    "serialize_obo",
    "suggest_terms",
]
