"""Run orchestration: configuration loading, parsing inputs, running every
check over the merged vocabulary, filtering and sorting findings, and
rendering deterministic text or JSON reports.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from fnmatch import fnmatchcase
from pathlib import Path
from typing import Sequence

from . import __version__
from .catalog import INFO, RULES, SEVERITIES, SEVERITY_RANK
from .definitions import (
    check_definition_present,
    check_definition_uniqueness,
    check_genus_differentia,
    detect_circular_definitions,
)
from .identity import (
    PrefixMap,
    PrefixMapError,
    check_deprecation,
    check_iri,
    check_iri_uniqueness,
    check_label_collisions,
    check_synonym_collisions,
    default_prefix_map,
    load_prefix_map,
)
from .ingest import FatalParseError, ParseDiagnostic, parse_obo, parse_term_table
from .lexical import (
    ComplexityConfig,
    LexiconError,
    Lexicons,
    apply_lexicon_overrides,
    check_abbreviation,
    check_colloquial,
    check_concept_bomb,
    check_conjunction,
    check_negative_phrasing,
    check_plural,
    check_tag_style,
    check_timeline,
    check_redundant_narrowing,
    default_lexicons,
    detect_word_bombs,
)
from .model import (
    Finding,
    Vocabulary,
    build_vocabulary,
    expand_iri,
    merge_vocabularies,
    normalize_label,
)

FORMATS = ("obo", "tsv")

_SUFFIX_FORMATS = {".obo": "obo", ".tsv": "tsv", ".tab": "tsv"}


class ConfigError(Exception):
    """Unusable configuration (bad JSON, unknown keys, bad values, or an
    unreadable file the configuration points at)."""


class LintFatalError(Exception):
    """An input that cannot be processed at all."""


@dataclass
class RuleConfig:
    enabled_rules: tuple[str, ...] = ("*",)
    severity_overrides: dict[str, str] = field(default_factory=dict)
    suppressions: tuple[tuple[str, str], ...] = ()
    fail_threshold: str = "warning"
    prefix_map_path: str | None = None
    lexicon_overrides: dict[str, str] = field(default_factory=dict)
    reference_paths: tuple[str, ...] = ()
    metadata_path: str | None = None
    health_weights: dict[str, float] | None = None
    complexity: ComplexityConfig = field(default_factory=ComplexityConfig)
    per_file: bool = False


_CONFIG_KEYS = {
    "enabled_rules", "severity_overrides", "suppressions", "fail_threshold",
    "prefix_map_path", "lexicon_overrides", "reference_paths", "metadata_path",
    "health_weights", "concept_bomb_token_threshold", "word_bomb_min_group",
    "per_file",
}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigError(message)


def load_config(path: str) -> RuleConfig:
    """Read a JSON configuration file. Relative paths inside it resolve
    against the file's own directory; unknown keys are rejected so typos
    cannot silently disable anything."""
    config_path = Path(path)
    try:
        raw = json.loads(config_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    _require(isinstance(raw, dict), f"config {path} must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    _require(not unknown, f"config {path} has unknown keys: {sorted(unknown)}")
    base = config_path.resolve().parent

    def resolve(p: str) -> str:
        return str((base / p)) if not Path(p).is_absolute() else p

    cfg = RuleConfig()
    if "enabled_rules" in raw:
        rules = raw["enabled_rules"]
        _require(isinstance(rules, list) and rules
                 and all(isinstance(r, str) for r in rules),
                 "enabled_rules must be a non-empty list of patterns")
        cfg.enabled_rules = tuple(rules)
    if "severity_overrides" in raw:
        overrides = raw["severity_overrides"]
        _require(isinstance(overrides, dict), "severity_overrides must be an object")
        for rule_id, severity in overrides.items():
            _require(rule_id in RULES, f"severity override for unknown rule {rule_id!r}")
            _require(severity in SEVERITIES,
                     f"severity override for {rule_id} must be one of {SEVERITIES}")
        cfg.severity_overrides = dict(overrides)
    if "suppressions" in raw:
        entries = raw["suppressions"]
        _require(isinstance(entries, list), "suppressions must be a list")
        pairs = []
        for entry in entries:
            _require(isinstance(entry, list) and len(entry) == 2
                     and all(isinstance(x, str) for x in entry),
                     "each suppression must be a [rule-id, subject] pair")
            _require(entry[0] in RULES, f"suppression for unknown rule {entry[0]!r}")
            pairs.append((entry[0], entry[1]))
        cfg.suppressions = tuple(pairs)
    if "fail_threshold" in raw:
        _require(raw["fail_threshold"] in SEVERITIES,
                 f"fail_threshold must be one of {SEVERITIES}")
        cfg.fail_threshold = raw["fail_threshold"]
    if "prefix_map_path" in raw:
        _require(isinstance(raw["prefix_map_path"], str), "prefix_map_path must be a string")
        cfg.prefix_map_path = resolve(raw["prefix_map_path"])
    if "lexicon_overrides" in raw:
        overrides = raw["lexicon_overrides"]
        _require(isinstance(overrides, dict)
                 and all(isinstance(v, str) for v in overrides.values()),
                 "lexicon_overrides must map lexicon names to file paths")
        cfg.lexicon_overrides = {name: resolve(p) for name, p in overrides.items()}
    if "reference_paths" in raw:
        refs = raw["reference_paths"]
        _require(isinstance(refs, list) and all(isinstance(r, str) for r in refs),
                 "reference_paths must be a list of paths")
        cfg.reference_paths = tuple(resolve(r) for r in refs)
    if "metadata_path" in raw:
        _require(isinstance(raw["metadata_path"], str), "metadata_path must be a string")
        cfg.metadata_path = resolve(raw["metadata_path"])
    if "health_weights" in raw:
        weights = raw["health_weights"]
        _require(isinstance(weights, dict)
                 and all(isinstance(v, (int, float)) for v in weights.values()),
                 "health_weights must map subscore names to numbers")
        cfg.health_weights = {k: float(v) for k, v in weights.items()}
    tokens = raw.get("concept_bomb_token_threshold",
                     cfg.complexity.concept_bomb_token_threshold)
    group = raw.get("word_bomb_min_group", cfg.complexity.word_bomb_min_group)
    _require(isinstance(tokens, int) and isinstance(group, int),
             "complexity thresholds must be integers")
    try:
        cfg.complexity = ComplexityConfig(concept_bomb_token_threshold=tokens,
                                          word_bomb_min_group=group)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "per_file" in raw:
        _require(isinstance(raw["per_file"], bool), "per_file must be a boolean")
        cfg.per_file = raw["per_file"]
    return cfg


def build_lexicons(config: RuleConfig) -> Lexicons:
    lex = default_lexicons()
    for name in sorted(config.lexicon_overrides):
        path = config.lexicon_overrides[name]
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read lexicon file {path}: {exc}") from exc
        try:
            lex = apply_lexicon_overrides(lex, name, text)
        except LexiconError as exc:
            raise ConfigError(f"lexicon file {path}: {exc}") from exc
    return lex


def build_prefix_map(config: RuleConfig) -> PrefixMap:
    if config.prefix_map_path is None:
        return default_prefix_map()
    try:
        text = Path(config.prefix_map_path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read prefix map {config.prefix_map_path}: {exc}") from exc
    try:
        return load_prefix_map(text)
    except PrefixMapError as exc:
        raise ConfigError(f"prefix map {config.prefix_map_path}: {exc}") from exc


def infer_format(path: str) -> str:
    fmt = _SUFFIX_FORMATS.get(Path(path).suffix.lower())
    if fmt is None:
        raise LintFatalError(
            f"cannot infer format of {path}; pass --format obo or --format tsv")
    return fmt


def parse_input(path: str, fmt: str | None) -> tuple[Vocabulary, list[ParseDiagnostic]]:
    if fmt is None:
        fmt = infer_format(path)
    if fmt not in FORMATS:
        raise LintFatalError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LintFatalError(f"cannot read {path}: {exc}") from exc
    if fmt == "obo":
        return parse_obo(text, path)
    try:
        return parse_term_table(text, path)
    except FatalParseError as exc:
        raise LintFatalError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class InputSummary:
    file: str
    format: str
    term_count: int


@dataclass(frozen=True)
class Report:
    findings: tuple[Finding, ...]
    counts: dict[str, int]
    inputs: tuple[InputSummary, ...]
    tool_version: str = __version__


def _term_scope_findings(unit: Vocabulary, lex: Lexicons, prefixes: PrefixMap,
                         config: RuleConfig) -> list[Finding]:
    out: list[Finding] = []
    for term in unit.terms:
        lexical: list[Finding] = []
        lexical += check_abbreviation(term, lex)
        lexical += check_negative_phrasing(term, lex)
        lexical += check_conjunction(term, lex)
        lexical += check_plural(term, lex)
        lexical += check_colloquial(term, lex)
        lexical += check_timeline(term, lex)
        lexical += check_concept_bomb(term, config.complexity, lex)
        if not term.obsolete:
            tag_values = [term.annotations[key] for key in sorted(term.annotations)
                          if key != "comment"]
            iris = (term.iri,) if term.iri is not None else ()
            for finding in check_tag_style(tag_values, lex):
                lexical.append(dataclasses.replace(
                    finding, location=term.location, subject_iris=iris))
        if term.obsolete:
            # Phrasing complaints about terms already out of service are
            # informational at most.
            lexical = [f if f.severity == INFO else dataclasses.replace(f, severity=INFO)
                       for f in lexical]
        out.extend(lexical)
        out.extend(check_iri(term, prefixes))
        out.extend(check_definition_present(term))
        if term.definition is not None:
            out.extend(check_genus_differentia(term, unit))
    return out


def _vocab_scope_findings(unit: Vocabulary, config: RuleConfig) -> list[Finding]:
    out: list[Finding] = []
    out.extend(detect_word_bombs(unit, config.complexity))
    out.extend(check_redundant_narrowing(unit))
    out.extend(check_definition_uniqueness(unit))
    out.extend(detect_circular_definitions(unit))
    out.extend(check_iri_uniqueness(unit))
    out.extend(check_label_collisions(unit))
    out.extend(check_synonym_collisions(unit))
    out.extend(check_deprecation(unit))
    return out


def _suppressed(finding: Finding, suppressions: tuple[tuple[str, str], ...],
                prefix_map: dict[str, str]) -> bool:
    for rule_id, subject in suppressions:
        if rule_id != finding.rule_id:
            continue
        if normalize_label(subject) == normalize_label(finding.subject_label):
            return True
        for iri in finding.subject_iris:
            if subject in (iri.value, expand_iri(iri, prefix_map)):
                return True
    return False


def _sort_key(finding: Finding):
    loc = finding.location
    return (loc.file if loc else "", loc.line if loc else 0,
            finding.rule_id, finding.subject_label)


def run_lint(config: RuleConfig, inputs: Sequence[tuple[str, str | None]]) -> Report:
    """Parse every input, lint the merged vocabulary (or each file alone when
    per_file is set), and return the filtered, deterministically ordered
    report."""
    lex = build_lexicons(config)
    prefixes = build_prefix_map(config)
    findings: list[Finding] = []
    vocabs: list[Vocabulary] = []
    summaries: list[InputSummary] = []
    for path, fmt in inputs:
        resolved_fmt = fmt if fmt is not None else infer_format(path)
        vocab, diags = parse_input(path, resolved_fmt)
        vocabs.append(vocab)
        summaries.append(InputSummary(file=path, format=resolved_fmt,
                                      term_count=len(vocab.terms)))
        for diag in diags:
            findings.append(Finding(
                rule_id="PARSE", severity=diag.severity, subject_label="",
                message=diag.message, location=diag.location))
    if config.per_file:
        units = [build_vocabulary(v.terms, {**prefixes.entries, **v.prefix_map})
                 for v in vocabs]
    else:
        units = [merge_vocabularies(vocabs, prefixes.entries)]
    for unit in units:
        findings.extend(_term_scope_findings(unit, lex, prefixes, config))
        findings.extend(_vocab_scope_findings(unit, config))

    kept: list[Finding] = []
    for finding in findings:
        if not any(fnmatchcase(finding.rule_id, pattern)
                   for pattern in config.enabled_rules):
            continue
        if _suppressed(finding, config.suppressions, prefixes.entries):
            continue
        override = config.severity_overrides.get(finding.rule_id)
        if override is not None and override != finding.severity:
            finding = dataclasses.replace(finding, severity=override)
        kept.append(finding)
    kept.sort(key=_sort_key)
    counts = {severity: 0 for severity in SEVERITIES}
    for finding in kept:
        counts[finding.severity] += 1
    summaries.sort(key=lambda s: (s.file, s.format))
    return Report(findings=tuple(kept), counts=counts, inputs=tuple(summaries))


def exit_code(report: Report, config: RuleConfig) -> int:
    threshold = SEVERITY_RANK[config.fail_threshold]
    if any(SEVERITY_RANK[f.severity] >= threshold for f in report.findings):
        return 1
    return 0


_ANSI = {"error": "\x1b[31m", "warning": "\x1b[33m", "info": "\x1b[36m"}
_ANSI_RESET = "\x1b[0m"


def render_report(report: Report, output: str = "text", color: bool = False) -> str:
    """Byte-deterministic rendering of a report; color only when asked."""
    if output == "json":
        payload = {
            "tool": "vocab-lint",
            "version": report.tool_version,
            "inputs": [dataclasses.asdict(s) for s in report.inputs],
            "counts": dict(report.counts),
            "findings": [
                {
                    "rule_id": f.rule_id,
                    "severity": f.severity,
                    "subject_label": f.subject_label,
                    "subject_iris": [iri.value for iri in f.subject_iris],
                    "message": f.message,
                    "location": ({"file": f.location.file, "line": f.location.line}
                                 if f.location else None),
                    "suggestion": f.suggestion,
                }
                for f in report.findings
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if output != "text":
        raise ValueError(f"unknown output format {output!r}")
    lines = []
    for f in report.findings:
        where = f"{f.location.file}:{f.location.line}" if f.location else "-"
        severity = f.severity
        if color:
            severity = f"{_ANSI[f.severity]}{f.severity}{_ANSI_RESET}"
        subject = f" {f.subject_label}" if f.subject_label else ""
        message = f.message
        if f.suggestion:
            message = f"{message} (suggestion: {f.suggestion})"
        lines.append(f"{where}: {severity} {f.rule_id}{subject}: {message}")
    lines.append(f"{report.counts['error']} error(s), {report.counts['warning']} "
                 f"warning(s), {report.counts['info']} info note(s) in "
                 f"{len(report.inputs)} input(s)")
    return "\n".join(lines) + "\n"
