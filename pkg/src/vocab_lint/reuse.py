"""Reuse index and term suggester: before minting a new term, look for an
existing one. Matches are scored on a fixed ladder (exact label, exact
synonym, other synonym, token overlap, fuzzy) and tie-broken by how many
reference vocabularies carry the term.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Term, Vocabulary, normalize_label

EXACT_LABEL = "exact_label"
EXACT_SYNONYM = "exact_synonym"
OTHER_SYNONYM = "other_synonym"
TOKEN_OVERLAP = "token_overlap"
FUZZY = "fuzzy"

_KIND_RANK = {EXACT_LABEL: 0, EXACT_SYNONYM: 1, OTHER_SYNONYM: 2,
              TOKEN_OVERLAP: 3, FUZZY: 4}
_EXACT_SCORE = {"label": (1.0, EXACT_LABEL),
                "exact_synonym": (0.9, EXACT_SYNONYM),
                "other_synonym": (0.8, OTHER_SYNONYM)}

FUZZY_DISTANCE_CEILING = 0.25


class EmptyQueryError(ValueError):
    """The query normalizes to nothing."""


@dataclass(frozen=True)
class Suggestion:
    term: Term
    score: float
    match_kind: str
    reuse_count: int


@dataclass
class ReuseIndex:
    # identity -> (term, {normalized phrase -> phrase kind})
    entries: dict[str, tuple[Term, dict[str, str]]] = field(default_factory=dict)
    source_count: dict[str, int] = field(default_factory=dict)
    prefix_map: dict[str, str] = field(default_factory=dict)


def build_index(references: list[Vocabulary]) -> ReuseIndex:
    """Index live terms of the reference vocabularies by normalized label and
    synonyms. A term found in several references keeps one entry but a
    higher source count."""
    prefix_map: dict[str, str] = {}
    for vocab in references:
        prefix_map.update(vocab.prefix_map)
    index = ReuseIndex(prefix_map=prefix_map)
    for vocab in references:
        seen_here: set[str] = set()
        for term in vocab.terms:
            if term.obsolete:
                continue
            identity = term.identity(prefix_map)
            if identity not in index.entries:
                index.entries[identity] = (term, {})
            phrases = index.entries[identity][1]
            label = normalize_label(term.label)
            if label:
                phrases.setdefault(label, "label")
            for syn in term.synonyms:
                phrase = normalize_label(syn.text)
                if not phrase or phrases.get(phrase) == "label":
                    continue
                kind = "exact_synonym" if syn.scope == "exact" else "other_synonym"
                if phrases.get(phrase) == "exact_synonym":
                    continue
                phrases[phrase] = kind
            if identity not in seen_here:
                seen_here.add(identity)
                index.source_count[identity] = index.source_count.get(identity, 0) + 1
    return index


def edit_distance(a: str, b: str) -> int:
    """Unit-cost Levenshtein distance."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(previous[j] + 1,
                               current[j - 1] + 1,
                               previous[j - 1] + (ca != cb)))
        previous = current
    return previous[-1]


def _score_phrase(query: str, query_tokens: frozenset[str], phrase: str,
                  phrase_kind: str) -> tuple[float, str] | None:
    if phrase == query:
        return _EXACT_SCORE[phrase_kind]
    best: tuple[float, str] | None = None
    phrase_tokens = frozenset(phrase.split())
    union = query_tokens | phrase_tokens
    overlap = len(query_tokens & phrase_tokens)
    if union and overlap:
        best = (0.7 * overlap / len(union), TOKEN_OVERLAP)
    longest = max(len(query), len(phrase))
    if longest:
        ratio = edit_distance(query, phrase) / longest
        if ratio <= FUZZY_DISTANCE_CEILING:
            fuzzy = (0.6 * (1.0 - ratio), FUZZY)
            if best is None or fuzzy[0] > best[0]:
                best = fuzzy
    return best


def suggest_terms(index: ReuseIndex, query: str, k: int = 5) -> list[Suggestion]:
    """Top-k candidate terms for a proposed label, best score per term,
    ordered by score desc, reuse count desc, identity asc."""
    normalized = normalize_label(query)
    if not normalized:
        raise EmptyQueryError("query is empty after normalization")
    if k < 1:
        return []
    query_tokens = frozenset(normalized.split())
    scored: list[tuple[float, int, int, str, Term]] = []
    for identity, (term, phrases) in index.entries.items():
        best: tuple[float, str] | None = None
        for phrase, phrase_kind in phrases.items():
            candidate = _score_phrase(normalized, query_tokens, phrase, phrase_kind)
            if candidate is None:
                continue
            if (best is None or candidate[0] > best[0]
                    or (candidate[0] == best[0]
                        and _KIND_RANK[candidate[1]] < _KIND_RANK[best[1]])):
                best = candidate
        if best is not None:
            scored.append((best[0], index.source_count.get(identity, 1),
                           _KIND_RANK[best[1]], identity, term))
    scored.sort(key=lambda row: (-row[0], -row[1], row[3]))
    return [Suggestion(term=term, score=score, match_kind=_kind_name(kind_rank),
                       reuse_count=count)
            for score, count, kind_rank, _, term in scored[:k]]


def _kind_name(rank: int) -> str:
    for name, value in _KIND_RANK.items():
        if value == rank:
            return name
    raise ValueError(f"unknown kind rank {rank}")
