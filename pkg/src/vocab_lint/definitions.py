"""Definition checks: presence and sourcing, genus-differentia form, genus /
parent agreement, uniqueness, and circular-definition detection over a
directed mention graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import islice

import networkx as nx

from .catalog import INFO, WARNING
from .model import Finding, Term, Vocabulary, normalize_label, tokens_of

# Bounded output on pathological inputs.
MAX_REPORTED_CYCLES = 100

_SENTENCE_END = re.compile(r"\.(?=\s|$)")


@dataclass(frozen=True)
class GenusDifferentia:
    subject: tuple[str, ...]
    genus: tuple[str, ...]
    differentia: tuple[str, ...]


@dataclass(frozen=True)
class DefinitionGraph:
    """Mention graph: nodes are term identities, an edge T->U means the
    definition of T contains the label of U as a contiguous token
    subsequence (self-edges allowed)."""

    nodes: dict[str, Term]
    edges: frozenset[tuple[str, str]]


def first_sentence(text: str) -> str:
    m = _SENTENCE_END.search(text)
    return text[:m.start()] if m else text


def parse_genus_differentia(text: str) -> GenusDifferentia | None:
    """Match the first sentence against: optional article, subject phrase,
    "is a"/"is an", genus phrase, "that"/"which", non-empty differentia."""
    tokens = tokens_of(first_sentence(text))
    copula = None
    for i in range(len(tokens) - 1):
        if tokens[i] == "is" and tokens[i + 1] in ("a", "an"):
            copula = i
            break
    if copula is None:
        return None
    subject = tokens[:copula]
    if subject and subject[0] in ("a", "an"):
        subject = subject[1:]
    if not subject:
        return None
    rest = tokens[copula + 2:]
    connective = next((j for j, tok in enumerate(rest) if tok in ("that", "which")), None)
    if connective is None or connective == 0:
        return None
    differentia = rest[connective + 1:]
    if not differentia:
        return None
    return GenusDifferentia(tuple(subject), tuple(rest[:connective]), tuple(differentia))


def _term_iris(term: Term) -> tuple:
    return (term.iri,) if term.iri is not None else ()


def check_definition_present(term: Term) -> list[Finding]:
    """R07: live terms need definitions; definitions need sources."""
    if term.definition is None:
        if term.obsolete:
            return []
        return [Finding(
            rule_id="R07-MISSING-DEF", severity=WARNING,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message="live term has no definition")]
    if not term.definition.sources:
        return [Finding(
            rule_id="R07-MISSING-SOURCE", severity=INFO,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message="definition cites no source; provide sources for definitions")]
    return []


def check_genus_differentia(term: Term, vocab: Vocabulary) -> list[Finding]:
    """R07: the defining sentence should read 'X is a <genus> that <differentia>'
    and, when parents are declared, the genus should mention a parent label.
    The genus test runs only when at least one parent resolves in the
    vocabulary (foreign parents carry no label to compare against)."""
    assert term.definition is not None, "caller must ensure a definition exists"
    parsed = parse_genus_differentia(term.definition.text)
    if parsed is None:
        return [Finding(
            rule_id="R07-FORM", severity=INFO,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message='definition does not follow the "X is a <parent> that/which '
                    '<differentia>" form')]
    if not term.parents:
        return []
    parent_labels = []
    for parent in term.parents:
        target = vocab.term_for(parent)
        if target is not None:
            parent_labels.append(normalize_label(target.label))
    if not parent_labels:
        return []
    genus_tokens = list(parsed.genus)
    for label in parent_labels:
        ltoks = label.split()
        if ltoks and any(genus_tokens[i:i + len(ltoks)] == ltoks
                         for i in range(len(genus_tokens) - len(ltoks) + 1)):
            return []
    genus_text = " ".join(parsed.genus)
    return [Finding(
        rule_id="R07-GENUS-MISMATCH", severity=INFO,
        subject_label=term.label, subject_iris=_term_iris(term),
        location=term.location,
        message=f'definition genus "{genus_text}" does not mention any declared '
                "parent; the defining sentence should state the parent class")]


def _min_location(terms: list[Term]):
    locations = [t.location for t in terms if t.location is not None]
    if not locations:
        return None
    return min(locations, key=lambda loc: (loc.file, loc.line))


def check_definition_uniqueness(vocab: Vocabulary) -> list[Finding]:
    """R07: identical normalized definition text across live terms."""
    groups: dict[str, list[Term]] = {}
    for term in vocab.terms:
        if term.obsolete or term.definition is None:
            continue
        groups.setdefault(normalize_label(term.definition.text), []).append(term)
    findings: list[Finding] = []
    for key in sorted(groups):
        members = groups[key]
        if len(members) < 2:
            continue
        ordered = sorted(members, key=lambda t: (normalize_label(t.label),
                                                 t.identity(vocab.prefix_map)))
        labels = "; ".join(t.label for t in ordered)
        findings.append(Finding(
            rule_id="R07-DUPLICATE-DEF", severity=WARNING,
            subject_label=ordered[0].label,
            subject_iris=tuple(t.iri for t in ordered if t.iri is not None),
            location=_min_location(ordered),
            message=f"{len(ordered)} terms share one definition ({labels}); "
                    "combine them via synonymy or differentiate the definitions"))
    return findings


def build_definition_graph(vocab: Vocabulary) -> DefinitionGraph:
    """Mention edges via token-subsequence matching of labels inside
    definition text (not substring matching, so "cough" never matches inside
    "coughing")."""
    nodes: dict[str, Term] = {}
    for term in vocab.terms:
        nodes.setdefault(term.identity(vocab.prefix_map), term)
    by_first_token: dict[str, list[tuple[tuple[str, ...], str]]] = {}
    for node_id, term in nodes.items():
        tokens = tuple(tokens_of(term.label))
        if tokens:
            by_first_token.setdefault(tokens[0], []).append((tokens, node_id))
    edges: set[tuple[str, str]] = set()
    for node_id, term in nodes.items():
        if term.definition is None:
            continue
        def_tokens = tokens_of(term.definition.text)
        for i, token in enumerate(def_tokens):
            for label_tokens, target_id in by_first_token.get(token, ()):
                if tuple(def_tokens[i:i + len(label_tokens)]) == label_tokens:
                    edges.add((node_id, target_id))
    return DefinitionGraph(nodes=nodes, edges=frozenset(edges))


def _canonical_rotation(cycle: list[str]) -> tuple[str, ...]:
    pivot = cycle.index(min(cycle))
    return tuple(cycle[pivot:] + cycle[:pivot])


def detect_circular_definitions(vocab: Vocabulary) -> list[Finding]:
    """R07: self-mentions and directed mention cycles. Cycles are reported as
    canonical rotations starting from the least identity, at most
    MAX_REPORTED_CYCLES per run."""
    graph = build_definition_graph(vocab)
    findings: list[Finding] = []
    for node_id in sorted(t for t, u in graph.edges if t == u):
        term = graph.nodes[node_id]
        findings.append(Finding(
            rule_id="R07-SELF-REF", severity=WARNING,
            subject_label=term.label, subject_iris=_term_iris(term),
            location=term.location,
            message="definition mentions the term's own label; definitions must "
                    "be non-circular"))
    # Node/edge insertion in sorted order makes cycle enumeration a function
    # of the graph alone, not of input term order.
    digraph = nx.DiGraph()
    digraph.add_nodes_from(sorted(graph.nodes))
    digraph.add_edges_from(sorted((t, u) for t, u in graph.edges if t != u))
    cycles = set()
    for cycle in islice((c for c in nx.simple_cycles(digraph) if len(c) >= 2),
                        MAX_REPORTED_CYCLES):
        cycles.add(_canonical_rotation(cycle))
    for rotation in sorted(cycles):
        members = [graph.nodes[node_id] for node_id in rotation]
        chain = " -> ".join(t.label for t in members)
        findings.append(Finding(
            rule_id="R07-CIRCULAR", severity=WARNING,
            subject_label=chain,
            subject_iris=tuple(t.iri for t in members if t.iri is not None),
            location=_min_location(members),
            message=f"definitions mention each other in a cycle ({chain} -> "
                    f"{members[0].label}); definitions must be non-circular"))
    return findings
