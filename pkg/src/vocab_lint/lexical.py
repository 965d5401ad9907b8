"""Label- and value-level checks: negative/conjunction/plural phrasing,
colloquialisms, abbreviations, tag style, redundant narrowing, and the
combinatorial pathologies (word bombs, concept bombs, timeline terms).

All checks are pure functions of (inputs, lexicons, config). Lexicon entries
are stored normalized; built-in defaults are extensible through override
files (see docs/formats.md).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .catalog import INFO, WARNING
from .model import (
    Finding,
    SourceLocation,
    Term,
    Vocabulary,
    expand_iri,
    normalize_label,
    tokens_of,
)


class LexiconError(Exception):
    """A lexicon file or entry violates the lexicon contract."""


_BOOLEAN_VALUES = frozenset({"true", "false", "yes", "no", "y", "n"})


@dataclass(frozen=True)
class Lexicons:
    negative_determiners: frozenset[str]
    negative_prefix_allowlist: frozenset[str]
    accepted_abbreviation_words: frozenset[str]
    proper_noun_allowlist: frozenset[str]
    plural_by_nature: frozenset[str]
    colloquial_map: Mapping[str, str]
    timeline_phrases: frozenset[str]


@dataclass(frozen=True)
class ComplexityConfig:
    concept_bomb_token_threshold: int = 7
    word_bomb_min_group: int = 5

    def __post_init__(self) -> None:
        if self.concept_bomb_token_threshold < 2 or self.word_bomb_min_group < 2:
            raise ValueError("complexity thresholds must be >= 2")


def _norm_set(items: Iterable[str]) -> frozenset[str]:
    return frozenset(normalize_label(x) for x in items) - {""}


def make_lexicons(negative_determiners: Iterable[str] = (),
                  negative_prefix_allowlist: Iterable[str] = (),
                  accepted_abbreviation_words: Iterable[str] = (),
                  proper_noun_allowlist: Iterable[str] = (),
                  plural_by_nature: Iterable[str] = (),
                  colloquial_map: Mapping[str, str] | None = None,
                  timeline_phrases: Iterable[str] = ()) -> Lexicons:
    """Normalize raw entries into a Lexicons value and validate the colloquial
    closure property (no suggested phrase may itself be a colloquial key)."""
    cmap = {normalize_label(k): normalize_label(v) for k, v in (colloquial_map or {}).items()}
    cmap.pop("", None)
    lex = Lexicons(
        negative_determiners=_norm_set(negative_determiners),
        negative_prefix_allowlist=_norm_set(negative_prefix_allowlist),
        accepted_abbreviation_words=_norm_set(accepted_abbreviation_words),
        proper_noun_allowlist=_norm_set(proper_noun_allowlist),
        plural_by_nature=_norm_set(plural_by_nature),
        colloquial_map=cmap,
        timeline_phrases=_norm_set(timeline_phrases),
    )
    for key, preferred in lex.colloquial_map.items():
        if not preferred:
            raise LexiconError(f"colloquial entry {key!r} maps to an empty phrase")
        if preferred in lex.colloquial_map:
            raise LexiconError(
                f"colloquial suggestion {preferred!r} (for {key!r}) is itself a colloquial key")
    return lex


def default_lexicons() -> Lexicons:
    return make_lexicons(
        negative_determiners=["no", "not", "neither", "none", "except", "without"],
        negative_prefix_allowlist=[
            "inorganic", "nonlinear", "non-linear", "nonparametric", "non-parametric",
        ],
        accepted_abbreviation_words=["laser", "radar", "scuba", "sonar"],
        proper_noun_allowlist=["Fisheries and Oceans Canada"],
        plural_by_nature=[
            "goggles", "scissors", "forceps", "tongs", "pants", "glasses",
            "news", "species", "feces",
        ],
        colloquial_map={
            "belly": "abdomen",
            "tummy": "abdomen",
            "wet cough": "productive cough",
            "throwing up": "vomiting",
        },
        timeline_phrases=["most recent", "previous", "last", "current", "latest",
                          "recent", "to date"],
    )


_LEXICON_SET_FIELDS = (
    "negative_determiners", "negative_prefix_allowlist", "accepted_abbreviation_words",
    "proper_noun_allowlist", "plural_by_nature", "timeline_phrases",
)


def apply_lexicon_overrides(lex: Lexicons, name: str, text: str) -> Lexicons:
    """Extend one lexicon from an override file: one entry per line, "#"
    comments, a leading "-" removes a built-in entry, and colloquial_map lines
    use "colloquial -> preferred"."""
    additions: list[str] = []
    removals: list[str] = []
    pairs: dict[str, str] = {}
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        remove = line.startswith("-")
        if remove:
            line = line[1:].strip()
        if name == "colloquial_map":
            if remove:
                removals.append(line)
                continue
            colloquial, sep, preferred = line.partition("->")
            if not sep or not colloquial.strip() or not preferred.strip():
                raise LexiconError(
                    f"{name} line {line_no}: expected 'colloquial -> preferred', got {raw!r}")
            pairs[normalize_label(colloquial)] = normalize_label(preferred)
        else:
            (removals if remove else additions).append(line)
    if name == "colloquial_map":
        merged = dict(lex.colloquial_map)
        for key in removals:
            merged.pop(normalize_label(key), None)
        merged.update(pairs)
        return make_lexicons(
            negative_determiners=lex.negative_determiners,
            negative_prefix_allowlist=lex.negative_prefix_allowlist,
            accepted_abbreviation_words=lex.accepted_abbreviation_words,
            proper_noun_allowlist=lex.proper_noun_allowlist,
            plural_by_nature=lex.plural_by_nature,
            colloquial_map=merged,
            timeline_phrases=lex.timeline_phrases,
        )
    if name not in _LEXICON_SET_FIELDS:
        raise LexiconError(f"unknown lexicon name: {name!r}")
    current: frozenset[str] = getattr(lex, name)
    updated = (current - _norm_set(removals)) | _norm_set(additions)
    return replace(lex, **{name: updated})


def _term_iris(term: Term) -> tuple:
    return (term.iri,) if term.iri is not None else ()


def _phrase_positions(tokens: list[str], phrase: str) -> list[int]:
    """Start positions at which `phrase` (already normalized) occurs in
    `tokens` as a contiguous token subsequence."""
    ptoks = phrase.split()
    if not ptoks or len(ptoks) > len(tokens):
        return []
    return [i for i in range(len(tokens) - len(ptoks) + 1)
            if tokens[i:i + len(ptoks)] == ptoks]


def contains_phrase(tokens: list[str], phrase: str) -> bool:
    return bool(_phrase_positions(tokens, phrase))


_PARENTHETICAL = re.compile(r"\([^()]*\)")
_EXPANSION_STYLE = re.compile(r"^(?P<words>.*\S)\s*\((?P<abbr>[A-Z0-9]{2,5})\)\s*$")


def _is_abbrev_token(token: str) -> bool:
    if not 2 <= len(token) <= 5:
        return False
    if not any(ch.isalpha() for ch in token):
        return False
    return all(ch.isdigit() or ("A" <= ch <= "Z") for ch in token)


def check_abbreviation(term: Term, lex: Lexicons) -> list[Finding]:
    """R05: unexpanded abbreviations in labels; parenthesized-abbreviation
    style gets a milder nudge toward an abbreviation synonym."""
    findings: list[Finding] = []
    stripped = _PARENTHETICAL.sub(" ", term.label)
    offenders = [tok for tok in stripped.split()
                 if _is_abbrev_token(tok) and tok.lower() not in lex.accepted_abbreviation_words]
    if offenders:
        listed = ", ".join(f'"{t}"' for t in offenders)
        findings.append(Finding(
            rule_id="R05-ABBREV", severity=WARNING,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message=f"label contains unexpanded abbreviation {listed}; "
                    "use the fully expanded phrase as the label",
            suggestion="expand the abbreviation and keep the short form as an "
                       "abbreviation synonym"))
    m = _EXPANSION_STYLE.match(term.label)
    if m and any(ch.isalpha() for ch in m.group("abbr")):
        findings.append(Finding(
            rule_id="R05-EXPANSION-STYLE", severity=INFO,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message=f'label embeds the abbreviation "{m.group("abbr")}" in parentheses',
            suggestion=f'keep the label "{m.group("words").strip()}" and record '
                       f'"{m.group("abbr")}" as a synonym with is_abbreviation=true'))
    return findings


def check_negative_phrasing(term: Term, lex: Lexicons) -> list[Finding]:
    """R02: negative determiners (warning) and non- prefixes (info) in labels."""
    tokens = tokens_of(term.label)
    determiners = sorted(set(tok for tok in tokens if tok in lex.negative_determiners))
    if determiners:
        listed = ", ".join(f'"{t}"' for t in determiners)
        return [Finding(
            rule_id="R02-NEGATIVE", severity=WARNING,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message=f"label is phrased negatively (negative determiner {listed}); "
                    "state what the term is, not what it is not")]
    covered: set[int] = set()
    for phrase in lex.negative_prefix_allowlist:
        width = len(phrase.split())
        for start in _phrase_positions(tokens, phrase):
            covered.update(range(start, start + width))
    offenders = sorted(set(
        tok for i, tok in enumerate(tokens)
        if tok.startswith("non") and i not in covered))
    if offenders:
        listed = ", ".join(f'"{t}"' for t in offenders)
        return [Finding(
            rule_id="R02-NEGATIVE", severity=INFO,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message=f"label uses a negative prefix ({listed}); prefer a positive "
                    "phrasing unless the word is standard technical vocabulary")]
    return []


def check_conjunction(term: Term, lex: Lexicons) -> list[Finding]:
    """R02: 'and'/'or' in labels, with a proper-noun escape hatch."""
    tokens = tokens_of(term.label)
    conjunctions = [tok for tok in tokens if tok in ("and", "or")]
    if not conjunctions:
        return []
    if normalize_label(term.label) in lex.proper_noun_allowlist:
        return []
    raw_words = term.label.split()
    conj_positions = [i for i, w in enumerate(raw_words) if normalize_label(w) in ("and", "or")]
    if conj_positions:
        neighbors = []
        for i in conj_positions:
            if i > 0:
                neighbors.append(raw_words[i - 1])
            if i + 1 < len(raw_words):
                neighbors.append(raw_words[i + 1])
        if neighbors and all(w[:1].isupper() for w in neighbors):
            return []  # reads as a proper noun
    if "or" in conjunctions:
        message = ('label offers alternatives with "or"; prefer a broader label '
                   "that encompasses all the alternatives")
    else:
        message = ('label joins concepts with "and"; split the concepts into '
                   "separate terms or fields")
    return [Finding(
        rule_id="R02-CONJUNCTION", severity=WARNING,
        subject_label=term.label, subject_iris=_term_iris(term),
        location=term.location, message=message)]


def check_plural(term: Term, lex: Lexicons) -> list[Finding]:
    """R02: plural head nouns (suffix heuristic with a plural-by-nature list)."""
    tokens = tokens_of(term.label)
    if not tokens:
        return []
    final = tokens[-1]
    if not final.endswith("s") or final.endswith(("ss", "us", "is")):
        return []
    if final in lex.plural_by_nature:
        return []
    return [Finding(
        rule_id="R02-PLURAL", severity=INFO,
        subject_label=term.label, subject_iris=_term_iris(term),
        location=term.location,
        message=f'label ends in the plural "{final}"; use the singular unless '
                "the noun is plural by nature")]


def check_colloquial(term: Term, lex: Lexicons) -> list[Finding]:
    """R03: colloquial phrases with standardized equivalents. A hit on the
    label is a warning; a hit on a synonym alone is info."""
    norm = normalize_label(term.label)
    preferred = lex.colloquial_map.get(norm)
    if preferred is not None:
        return [Finding(
            rule_id="R03-COLLOQUIAL", severity=WARNING,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message=f'label "{term.label}" is colloquial; prefer the standardized '
                    f'phrase "{preferred}"',
            suggestion=preferred)]
    findings: list[Finding] = []
    for phrase in sorted({normalize_label(s.text) for s in term.synonyms}):
        preferred = lex.colloquial_map.get(phrase)
        if preferred is not None:
            findings.append(Finding(
                rule_id="R03-COLLOQUIAL", severity=INFO,
                subject_label=term.label, subject_iris=_term_iris(term),
                location=term.location,
                message=f'synonym "{phrase}" is colloquial; if it must stay, keep '
                        f'it as a synonym of "{preferred}"',
                suggestion=preferred))
    return findings


def check_timeline(term: Term, lex: Lexicons) -> list[Finding]:
    """Timeline pathology: relative-time phrases whose meaning moves as data
    accumulates."""
    tokens = tokens_of(term.label)
    matches = sorted((phrase for phrase in lex.timeline_phrases
                      if contains_phrase(tokens, phrase)),
                     key=lambda p: (-len(p.split()), p))
    if not matches:
        return []
    return [Finding(
        rule_id="C-TIMELINE", severity=WARNING,
        subject_label=term.label, subject_iris=_term_iris(term),
        location=term.location,
        message=f'label is anchored to a moving point in time ("{matches[0]}"); '
                "record an absolute date or interval instead")]


def _has_timeline_phrase(tokens: list[str], lex: Lexicons) -> bool:
    return any(contains_phrase(tokens, phrase) for phrase in lex.timeline_phrases)


def check_concept_bomb(term: Term, cfg: ComplexityConfig, lex: Lexicons) -> list[Finding]:
    """Concept-bomb pathology: one label packing several assertions."""
    tokens = tokens_of(term.label)
    too_long = len(tokens) >= cfg.concept_bomb_token_threshold
    compound_temporal = (any(tok.isdigit() for tok in tokens)
                         and _has_timeline_phrase(tokens, lex))
    if not too_long and not compound_temporal:
        return []
    if too_long:
        reason = (f"{len(tokens)} tokens >= threshold "
                  f"{cfg.concept_bomb_token_threshold}")
    else:
        reason = "combines a relative-time phrase with a numeric quantity"
    return [Finding(
        rule_id="C-CONCEPT-BOMB", severity=WARNING,
        subject_label=term.label, subject_iris=_term_iris(term),
        location=term.location,
        message=f"label packs multiple assertions into one value ({reason}); "
                "recommend separation into individual fields")]


def _min_location(terms: list[Term]) -> SourceLocation | None:
    locations = [t.location for t in terms if t.location is not None]
    if not locations:
        return None
    return min(locations, key=lambda loc: (loc.file, loc.line))


def _sorted_members(terms: list[Term], prefix_map: dict[str, str]) -> list[Term]:
    return sorted(terms, key=lambda t: (normalize_label(t.label), t.identity(prefix_map)))


def detect_word_bombs(vocab: Vocabulary, cfg: ComplexityConfig) -> list[Finding]:
    """Word-bomb pathology: combinatorial label families sharing a head noun.
    Groups live labels by final token; a group of size >= word_bomb_min_group
    qualifies when a member contains a conjunction or when at least that many
    members are strict modifier-extensions of a common base label."""
    groups: dict[str, list[Term]] = {}
    for term in vocab.terms:
        if term.obsolete:
            continue
        tokens = tokens_of(term.label)
        if tokens:
            groups.setdefault(tokens[-1], []).append(term)
    findings: list[Finding] = []
    for head in sorted(groups):
        members = groups[head]
        if len(members) < cfg.word_bomb_min_group:
            continue
        token_lists = [tuple(tokens_of(t.label)) for t in members]
        qualifies = any("and" in toks or "or" in toks for toks in token_lists)
        if not qualifies:
            for base in set(token_lists):
                extensions = sum(
                    1 for toks in token_lists
                    if len(toks) > len(base) and toks[-len(base):] == base)
                if extensions >= cfg.word_bomb_min_group:
                    qualifies = True
                    break
        if not qualifies:
            continue
        ordered = _sorted_members(members, vocab.prefix_map)
        labels = "; ".join(t.label for t in ordered)
        iris = tuple(t.iri for t in ordered if t.iri is not None)
        findings.append(Finding(
            rule_id="C-WORD-BOMB", severity=INFO,
            subject_label=head, subject_iris=iris,
            location=_min_location(ordered),
            message=f'{len(ordered)} labels share the head noun "{head}" ({labels}); '
                    "combinatorial picklist; model the modifiers as separate fields"))
    return findings


def check_redundant_narrowing(vocab: Vocabulary) -> list[Finding]:
    """R04: label A = modifiers + label B for live terms A, B without an A
    is_a B link. Parent-child pairs are exempt."""
    live = [t for t in vocab.terms if not t.obsolete]
    by_norm: dict[str, list[Term]] = {}
    for term in live:
        by_norm.setdefault(normalize_label(term.label), []).append(term)
    results: list[tuple[tuple, Finding]] = []
    for a in live:
        tokens = tokens_of(a.label)
        if len(tokens) < 2:
            continue
        parent_ids = {expand_iri(p, vocab.prefix_map) for p in a.parents}
        parent_labels = set()
        for p in a.parents:
            parent = vocab.term_for(p)
            if parent is not None:
                parent_labels.add(normalize_label(parent.label))
        for cut in range(1, len(tokens)):
            suffix = " ".join(tokens[cut:])
            for b in by_norm.get(suffix, ()):
                if b is a:
                    continue
                if suffix in parent_labels:
                    continue
                if b.iri is not None and expand_iri(b.iri, vocab.prefix_map) in parent_ids:
                    continue
                finding = Finding(
                    rule_id="R04-NARROW", severity=INFO,
                    subject_label=a.label, subject_iris=_term_iris(a),
                    location=a.location,
                    message=f'label narrows "{b.label}" with leading modifiers but '
                            "declares no relation to it; reuse the broader term or "
                            "record the modifier in its own field",
                    suggestion=b.label)
                results.append(((normalize_label(a.label), a.identity(vocab.prefix_map),
                                 normalize_label(b.label), b.identity(vocab.prefix_map)),
                                finding))
    return [f for _, f in sorted(results, key=lambda pair: pair[0])]


def check_tag_style(tag_values: list[str], lex: Lexicons) -> list[Finding]:
    """R09: tag values should be self-describing phrases, not booleans, and
    should tag what is present rather than what is absent."""
    findings: list[Finding] = []
    for value in tag_values:
        norm = normalize_label(value)
        if norm in _BOOLEAN_VALUES:
            findings.append(Finding(
                rule_id="R09-BOOLEAN", severity=WARNING,
                subject_label=value,
                message=f'tag value "{value}" is a bare boolean; replace the '
                        "question-plus-boolean with a tag naming what is asserted"))
            continue
        tokens = norm.split()
        if tokens and tokens[0] in lex.negative_determiners:
            findings.append(Finding(
                rule_id="R09-NEGATIVE-TAG", severity=INFO,
                subject_label=value,
                message=f'tag value "{value}" records an absence; tag what is '
                        "present instead"))
    return findings
