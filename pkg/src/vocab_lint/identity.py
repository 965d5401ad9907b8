"""Identity checks: IRI presence and resolvability, duplicate IRIs, label and
synonym collisions, and deprecation hygiene (obsolete markers, replacement
chains, cycles, dangling pointers).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .catalog import ERROR, INFO, WARNING
from .model import (
    Finding,
    ReplacementCycleError,
    Term,
    UnknownIriError,
    Vocabulary,
    normalize_label,
    resolve_replacement,
)


class PrefixMapError(ValueError):
    """Malformed prefix map file."""


# Prefixes resolvable out of the box; obo-registered ones are additionally
# held to the persistent-URL shape.
DEFAULT_PREFIXES: dict[str, str] = {
    "BFO": "http://purl.obolibrary.org/obo/BFO_",
    "CHEBI": "http://purl.obolibrary.org/obo/CHEBI_",
    "DOID": "http://purl.obolibrary.org/obo/DOID_",
    "ENVO": "http://purl.obolibrary.org/obo/ENVO_",
    "FOODON": "http://purl.obolibrary.org/obo/FOODON_",
    "GO": "http://purl.obolibrary.org/obo/GO_",
    "HP": "http://purl.obolibrary.org/obo/HP_",
    "MONDO": "http://purl.obolibrary.org/obo/MONDO_",
    "NCBITaxon": "http://purl.obolibrary.org/obo/NCBITaxon_",
    "NCIT": "http://purl.obolibrary.org/obo/NCIT_",
    "OBI": "http://purl.obolibrary.org/obo/OBI_",
    "PATO": "http://purl.obolibrary.org/obo/PATO_",
    "UBERON": "http://purl.obolibrary.org/obo/UBERON_",
}

_PURL = re.compile(r"^http://purl\.obolibrary\.org/obo/(?P<prefix>[A-Za-z0-9]+)_.+$")


@dataclass(frozen=True)
class PrefixMap:
    entries: dict[str, str] = field(default_factory=dict)
    obo_prefixes: frozenset[str] = frozenset()

    def __post_init__(self):
        for prefix, base in self.entries.items():
            if not prefix or prefix != prefix.strip():
                raise PrefixMapError(f"invalid prefix {prefix!r}")
            if "://" not in base:
                raise PrefixMapError(f"prefix {prefix!r} maps to a non-absolute base {base!r}")
        unknown = self.obo_prefixes - set(self.entries)
        if unknown:
            raise PrefixMapError(f"obo prefixes without entries: {sorted(unknown)}")


def default_prefix_map() -> PrefixMap:
    return PrefixMap(entries=dict(DEFAULT_PREFIXES),
                     obo_prefixes=frozenset(DEFAULT_PREFIXES))


def load_prefix_map(text: str, extend_defaults: bool = True) -> PrefixMap:
    """Parse tab-separated lines "PREFIX<TAB>IRI-base<TAB>obo|external".
    Blank lines and "#" comments are skipped. A file entry replaces a
    built-in default of the same prefix."""
    entries = dict(DEFAULT_PREFIXES) if extend_defaults else {}
    obo = set(DEFAULT_PREFIXES) if extend_defaults else set()
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 3:
            raise PrefixMapError(f"line {lineno}: expected 3 tab-separated fields")
        prefix, base, kind = parts
        if kind not in ("obo", "external"):
            raise PrefixMapError(f"line {lineno}: kind must be obo or external, got {kind!r}")
        if prefix in seen:
            raise PrefixMapError(f"line {lineno}: duplicate prefix {prefix!r}")
        seen.add(prefix)
        entries[prefix] = base
        if kind == "obo":
            obo.add(prefix)
        else:
            obo.discard(prefix)
    return PrefixMap(entries=entries, obo_prefixes=frozenset(obo))


def _term_iris(term: Term) -> tuple:
    return (term.iri,) if term.iri is not None else ()


def check_iri(term: Term, prefixes: PrefixMap) -> list[Finding]:
    """R06: every term needs an IRI; compact IRIs must use a registered
    prefix; obo-registered terms should sit behind a persistent URL."""
    if term.iri is None:
        return [Finding(
            rule_id="R06-MISSING-IRI", severity=WARNING,
            subject_label=term.label, location=term.location,
            message="term has no IRI; mint a resolvable identifier")]
    value = term.iri.value
    if not term.iri.is_absolute:
        prefix, sep, _ = value.partition(":")
        if not sep or prefix not in prefixes.entries:
            return [Finding(
                rule_id="R06-BAD-IRI", severity=ERROR,
                subject_label=term.label, subject_iris=(term.iri,),
                location=term.location,
                message=f'compact identifier "{value}" uses an unregistered prefix')]
        return []
    m = _PURL.match(value)
    if m and m.group("prefix") in prefixes.obo_prefixes:
        return []
    for prefix in sorted(prefixes.obo_prefixes):
        if f"/{prefix}_" in value or f"#{prefix}_" in value or f"/{prefix}/" in value:
            return [Finding(
                rule_id="R06-NONPURL", severity=INFO,
                subject_label=term.label, subject_iris=(term.iri,),
                location=term.location,
                message=f'IRI mentions the registered ontology prefix "{prefix}" but '
                        "is not its persistent URL form "
                        f"(http://purl.obolibrary.org/obo/{prefix}_...)")]
    return []


def check_iri_uniqueness(vocab: Vocabulary) -> list[Finding]:
    """R06: one IRI, one term."""
    groups: dict[str, list[Term]] = {}
    for term in vocab.terms:
        identity = term.identity(vocab.prefix_map)
        if not identity.startswith("no-iri:"):
            groups.setdefault(identity, []).append(term)
    findings: list[Finding] = []
    for identity in sorted(groups):
        members = groups[identity]
        if len(members) < 2:
            continue
        ordered = sorted(members, key=lambda t: (normalize_label(t.label), t.label))
        labels = "; ".join(t.label for t in ordered)
        location = min((t.location for t in ordered if t.location is not None),
                       key=lambda loc: (loc.file, loc.line), default=None)
        findings.append(Finding(
            rule_id="R06-DUP-IRI", severity=ERROR,
            subject_label=ordered[0].label,
            subject_iris=tuple(t.iri for t in ordered if t.iri is not None),
            location=location,
            message=f"{len(ordered)} terms share the IRI {identity} ({labels})"))
    return findings


def check_label_collisions(vocab: Vocabulary) -> list[Finding]:
    """One label naming several identified concepts is semantic noise."""
    groups: dict[str, list[Term]] = {}
    for term in vocab.terms:
        if not term.obsolete:
            groups.setdefault(normalize_label(term.label), []).append(term)
    findings: list[Finding] = []
    for label in sorted(groups):
        members = groups[label]
        identities = sorted({t.identity(vocab.prefix_map) for t in members
                             if not t.identity(vocab.prefix_map).startswith("no-iri:")})
        if len(identities) < 2:
            continue
        ordered = sorted(members, key=lambda t: t.identity(vocab.prefix_map))
        location = min((t.location for t in ordered if t.location is not None),
                       key=lambda loc: (loc.file, loc.line), default=None)
        findings.append(Finding(
            rule_id="C-SEMANTIC-NOISE", severity=WARNING,
            subject_label=ordered[0].label,
            subject_iris=tuple(t.iri for t in ordered if t.iri is not None),
            location=location,
            message=f'label "{ordered[0].label}" denotes {len(identities)} distinct '
                    f"terms ({', '.join(identities)}); a shared spelling hides "
                    "different meanings"))
    return findings


def check_synonym_collisions(vocab: Vocabulary) -> list[Finding]:
    """A synonym of one term matching the label or a synonym of another live
    term invites mis-selection. A term's own synonyms are exempt."""
    label_map: dict[str, list[Term]] = {}
    syn_map: dict[str, list[Term]] = {}
    for term in vocab.terms:
        if term.obsolete:
            continue
        label_map.setdefault(normalize_label(term.label), []).append(term)
        for syn in term.synonyms:
            syn_map.setdefault(normalize_label(syn.text), []).append(term)

    collisions: dict[tuple[str, str, str], tuple[Term, Term]] = {}
    for term in vocab.terms:
        tid = term.identity(vocab.prefix_map)
        for syn in term.synonyms:
            phrase = normalize_label(syn.text)
            for other in label_map.get(phrase, []) + syn_map.get(phrase, []):
                if other is term:
                    continue
                oid = other.identity(vocab.prefix_map)
                key = (min(tid, oid), max(tid, oid), phrase)
                if key not in collisions:
                    pair = (term, other) if tid <= oid else (other, term)
                    collisions[key] = pair
    findings: list[Finding] = []
    for key in sorted(collisions):
        a, b = collisions[key]
        phrase = key[2]
        iris = tuple(t.iri for t in (a, b) if t.iri is not None)
        location = min((t.location for t in (a, b) if t.location is not None),
                       key=lambda loc: (loc.file, loc.line), default=None)
        findings.append(Finding(
            rule_id="C-SYNONYM-CLASH", severity=INFO,
            subject_label=a.label, subject_iris=iris, location=location,
            message=f'phrase "{phrase}" appears on both "{a.label}" and '
                    f'"{b.label}"; shared synonyms blur term boundaries'))
    return findings


def check_deprecation(vocab: Vocabulary) -> list[Finding]:
    """R08: obsolete terms are labelled as such and forward readers to live
    replacements; replacement pointers resolve, do not cycle, and do not hang
    off live terms; live terms do not sit under obsolete parents."""
    findings: list[Finding] = []
    for term in vocab.terms:
        iris = _term_iris(term)
        if term.obsolete:
            tokens = normalize_label(term.label).split()
            if not tokens or tokens[0] != "obsolete":
                findings.append(Finding(
                    rule_id="R08-LABEL", severity=WARNING,
                    subject_label=term.label, subject_iris=iris,
                    location=term.location,
                    message='obsolete term label does not start with "obsolete"'))
            if term.replaced_by is None:
                findings.append(Finding(
                    rule_id="R08-NO-REPLACEMENT", severity=INFO,
                    subject_label=term.label, subject_iris=iris,
                    location=term.location,
                    message="obsolete term names no replacement"))
        elif term.replaced_by is not None:
            findings.append(Finding(
                rule_id="R08-LIVE-REPLACED", severity=WARNING,
                subject_label=term.label, subject_iris=iris,
                location=term.location,
                message="live term carries a replacement pointer; either obsolete "
                        "the term or drop the pointer"))
        if term.replaced_by is not None:
            target = vocab.term_for(term.replaced_by)
            if target is None:
                findings.append(Finding(
                    rule_id="R08-DANGLING", severity=ERROR,
                    subject_label=term.label, subject_iris=iris,
                    location=term.location,
                    message=f'replacement target "{term.replaced_by.value}" is not '
                            "in the vocabulary"))
            elif target.obsolete:
                start = term.iri if (
                    term.iri is not None
                    and vocab.term_for(term.iri) is term
                ) else term.replaced_by
                try:
                    final = resolve_replacement(vocab, start)
                    final_term = vocab.term_for(final)
                    final_name = final_term.label if final_term is not None else final.value
                    findings.append(Finding(
                        rule_id="R08-CHAIN", severity=INFO,
                        subject_label=term.label, subject_iris=iris,
                        location=term.location,
                        message=f'replacement target "{target.label}" is itself '
                                f'obsolete; the chain resolves to "{final_name}" '
                                f"({final.value}); point directly at the live term",
                        suggestion=final_term.label if final_term is not None else None))
                except ReplacementCycleError:
                    findings.append(Finding(
                        rule_id="R08-CYCLE", severity=ERROR,
                        subject_label=term.label, subject_iris=iris,
                        location=term.location,
                        message="replacement pointers form a cycle; no live "
                                "replacement can be reached"))
                except UnknownIriError:
                    # The broken link is reported as R08-DANGLING on the term
                    # that owns it.
                    pass
        if not term.obsolete:
            for parent in term.parents:
                parent_term = vocab.term_for(parent)
                if parent_term is not None and parent_term.obsolete:
                    findings.append(Finding(
                        rule_id="R08-OBSOLETE-PARENT", severity=WARNING,
                        subject_label=term.label, subject_iris=iris,
                        location=term.location,
                        message=f'live term lists the obsolete term "{parent_term.label}" '
                                "as a parent"))
    return findings
