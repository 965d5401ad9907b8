"""Canonical in-memory model: terms, vocabularies, findings, and the shared
label-normalization and replacement-resolution primitives used by every check.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .catalog import KNOWN_RULE_IDS, SEVERITIES

SYNONYM_SCOPES = ("exact", "broad", "narrow", "related")


class VocabError(Exception):
    """Base class for model-level errors."""


class UnknownIriError(VocabError):
    """An IRI was looked up that no term in the vocabulary bears."""


class ReplacementCycleError(VocabError):
    """A replaced_by chain revisited an IRI."""


@dataclass(frozen=True)
class Iri:
    """An absolute IRI or a CURIE of shape PREFIX:LOCALID."""

    value: str

    def __post_init__(self) -> None:
        if not self.value:
            raise ValueError("IRI value must be non-empty")
        if any(ch.isspace() for ch in self.value):
            raise ValueError(f"IRI value contains whitespace: {self.value!r}")

    @property
    def is_absolute(self) -> bool:
        return "://" in self.value

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Synonym:
    text: str
    scope: str = "related"
    is_abbreviation: bool = False

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("synonym text must be non-empty")
        if self.scope not in SYNONYM_SCOPES:
            raise ValueError(f"unknown synonym scope: {self.scope!r}")


@dataclass(frozen=True)
class Definition:
    text: str
    sources: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("definition text must be non-empty")


@dataclass(frozen=True)
class SourceLocation:
    file: str
    line: int

    def __post_init__(self) -> None:
        if self.line < 1:
            raise ValueError("line numbers start at 1")


@dataclass(frozen=True)
class Term:
    """One vocabulary entry, stored exactly as the input file stated it."""

    label: str
    iri: Iri | None = None
    synonyms: tuple[Synonym, ...] = ()
    definition: Definition | None = None
    parents: tuple[Iri, ...] = ()
    obsolete: bool = False
    replaced_by: Iri | None = None
    annotations: dict[str, str] = field(default_factory=dict)
    location: SourceLocation | None = None

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("term label must be non-empty")

    def identity(self, prefix_map: dict[str, str] | None = None) -> str:
        """Stable identity string: the expanded IRI, or a location-derived
        placeholder for IRI-less terms."""
        if self.iri is not None:
            return expand_iri(self.iri, prefix_map or {})
        if self.location is not None:
            return f"no-iri:{self.location.file}:{self.location.line}"
        return f"no-iri::{normalize_label(self.label)}"


@dataclass(frozen=True)
class Finding:
    rule_id: str
    severity: str
    subject_label: str
    message: str
    subject_iris: tuple[Iri, ...] = ()
    location: SourceLocation | None = None
    suggestion: str | None = None

    def __post_init__(self) -> None:
        if self.rule_id not in KNOWN_RULE_IDS:
            raise ValueError(f"rule id not in catalog: {self.rule_id!r}")
        if self.severity not in SEVERITIES:
            raise ValueError(f"unknown severity: {self.severity!r}")
        if not self.message:
            raise ValueError("finding message must be non-empty")


def normalize_label(raw: str) -> str:
    """Shared comparison key: ASCII letters lowercased, punctuation (including
    parentheses and hyphens) turned into spaces, whitespace collapsed.
    Non-Latin characters pass through unchanged. Idempotent."""
    out = []
    for ch in raw:
        if "A" <= ch <= "Z":
            out.append(chr(ord(ch) + 32))
        elif ch.isspace() or unicodedata.category(ch).startswith("P"):
            out.append(" ")
        else:
            out.append(ch)
    return " ".join("".join(out).split())


def tokens_of(raw: str) -> list[str]:
    return normalize_label(raw).split()


def expand_iri(iri: Iri | str, prefix_map: dict[str, str]) -> str:
    """Expand a CURIE against a prefix map (first ":" splits, prefixes are
    case-sensitive); absolute or unexpandable values are returned unchanged."""
    value = iri.value if isinstance(iri, Iri) else iri
    if "://" in value:
        return value
    prefix, sep, local = value.partition(":")
    if sep and prefix in prefix_map:
        return prefix_map[prefix] + local
    return value


@dataclass
class Vocabulary:
    """An ordered, indexed collection of terms. Treated as immutable after
    construction; indexes are keyed by expanded IRI / normalized label."""

    terms: tuple[Term, ...] = ()
    prefix_map: dict[str, str] = field(default_factory=dict)
    by_iri: dict[str, Term] = field(default_factory=dict)
    by_label: dict[str, list[Term]] = field(default_factory=dict)

    def term_for(self, iri: Iri | str) -> Term | None:
        return self.by_iri.get(expand_iri(iri, self.prefix_map))


def build_vocabulary(terms: list[Term] | tuple[Term, ...],
                     prefix_map: dict[str, str] | None = None) -> Vocabulary:
    """Index a term list. On duplicate expanded IRIs the first bearer wins the
    index slot; all bearers stay in the term list so uniqueness checks can
    report them."""
    pm = dict(prefix_map or {})
    by_iri: dict[str, Term] = {}
    by_label: dict[str, list[Term]] = {}
    for term in terms:
        if term.iri is not None:
            key = expand_iri(term.iri, pm)
            by_iri.setdefault(key, term)
        by_label.setdefault(normalize_label(term.label), []).append(term)
    return Vocabulary(terms=tuple(terms), prefix_map=pm, by_iri=by_iri, by_label=by_label)


def merge_vocabularies(vocabs: list[Vocabulary],
                       prefix_map: dict[str, str] | None = None) -> Vocabulary:
    merged_pm: dict[str, str] = dict(prefix_map or {})
    for v in vocabs:
        merged_pm.update(v.prefix_map)
    terms: list[Term] = []
    for v in vocabs:
        terms.extend(v.terms)
    return build_vocabulary(terms, merged_pm)


def resolve_replacement(vocab: Vocabulary, start: Iri) -> Iri:
    """Follow replaced_by links from `start` to the chain terminus.

    Raises UnknownIriError if the start or any link target is absent, and
    ReplacementCycleError if the chain revisits an IRI."""
    key = expand_iri(start, vocab.prefix_map)
    term = vocab.by_iri.get(key)
    if term is None:
        raise UnknownIriError(f"IRI not in vocabulary: {start.value}")
    seen = {key}
    while term.replaced_by is not None:
        next_key = expand_iri(term.replaced_by, vocab.prefix_map)
        if next_key in seen:
            raise ReplacementCycleError(
                f"replaced_by chain from {start.value} revisits {term.replaced_by.value}")
        nxt = vocab.by_iri.get(next_key)
        if nxt is None:
            raise UnknownIriError(f"IRI not in vocabulary: {term.replaced_by.value}")
        seen.add(next_key)
        term = nxt
    assert term.iri is not None
    return term.iri
