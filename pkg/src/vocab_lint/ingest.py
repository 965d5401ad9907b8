"""Parsers for the two supported vocabulary carriers: an OBO flat-file subset
and a tab-separated term table. Both return (Vocabulary, diagnostics) with
line-accurate source locations. The grammar details live in docs/formats.md.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    Definition,
    Iri,
    SourceLocation,
    Synonym,
    Term,
    Vocabulary,
    build_vocabulary,
)

_SCOPES = {"EXACT": "exact", "BROAD": "broad", "NARROW": "narrow", "RELATED": "related"}


class FatalParseError(Exception):
    """Input cannot be interpreted at all (e.g. required column missing)."""


@dataclass(frozen=True)
class ParseDiagnostic:
    severity: str  # "error" or "warning"
    message: str
    location: SourceLocation

    def __post_init__(self) -> None:
        if self.severity not in ("error", "warning"):
            raise ValueError(f"diagnostic severity must be error|warning: {self.severity!r}")
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")


@dataclass(frozen=True)
class ColumnMap:
    """Column names used by parse_term_table. Only the label column must be
    present in the header; absent optional columns are simply unused."""

    label_col: str = "label"
    iri_col: str = "iri"
    definition_col: str = "definition"
    def_source_col: str = "definition_source"
    parent_col: str = "parents"
    synonyms_col: str = "synonyms"
    obsolete_col: str = "obsolete"
    replaced_by_col: str = "replaced_by"


def _strip_bom(text: str) -> str:
    return text[1:] if text.startswith("﻿") else text


def _parse_quoted(raw: str) -> tuple[str, str] | None:
    """Parse the first double-quoted string in `raw`, honoring backslash
    escapes for quote and backslash. Returns (text, remainder-after-quote),
    or None when the quote never closes (or never opens)."""
    start = raw.find('"')
    if start == -1:
        return None
    out: list[str] = []
    i = start + 1
    while i < len(raw):
        ch = raw[i]
        if ch == "\\" and i + 1 < len(raw) and raw[i + 1] in ('"', "\\"):
            out.append(raw[i + 1])
            i += 2
        elif ch == '"':
            return "".join(out), raw[i + 1:]
        else:
            out.append(ch)
            i += 1
    return None


def _parse_bracket_list(raw: str) -> list[str]:
    open_idx = raw.find("[")
    if open_idx == -1:
        return []
    close_idx = raw.find("]", open_idx)
    if close_idx == -1:
        return []
    inner = raw[open_idx + 1:close_idx]
    return [part.strip() for part in inner.split(",") if part.strip()]


def _strip_trailing_comment(value: str) -> str:
    return value.split("!", 1)[0].strip()


def _make_iri(value: str) -> Iri | None:
    try:
        return Iri(value)
    except ValueError:
        return None


class _StanzaState:
    """Accumulates one [Term] stanza; mutated line by line."""

    def __init__(self, file_name: str, start_line: int) -> None:
        self.location = SourceLocation(file_name, start_line)
        self.iri: Iri | None = None
        self.label: str | None = None
        self.definition: Definition | None = None
        self.synonyms: list[Synonym] = []
        self.parents: list[Iri] = []
        self.obsolete = False
        self.replaced_by: Iri | None = None
        self.annotations: dict[str, str] = {}
        self.skip = False  # set on irrecoverable structure damage


def parse_obo(text: str, file_name: str) -> tuple[Vocabulary, list[ParseDiagnostic]]:
    """Parse [Term] stanzas from the documented OBO subset. Header lines and
    non-Term stanzas are skipped; unknown tags inside Term stanzas are kept
    as annotations."""
    diags: list[ParseDiagnostic] = []
    terms: list[Term] = []
    seen_ids: dict[str, int] = {}

    def warn(line: int, message: str) -> None:
        diags.append(ParseDiagnostic("warning", message, SourceLocation(file_name, line)))

    def error(line: int, message: str) -> None:
        diags.append(ParseDiagnostic("error", message, SourceLocation(file_name, line)))

    def finish(st: _StanzaState) -> None:
        if st.skip:
            return
        if st.iri is None and st.label is None:
            warn(st.location.line, "[Term] stanza has neither id nor name; skipped")
            return
        if st.iri is None:
            warn(st.location.line, "[Term] stanza has no id")
        if st.label is None:
            warn(st.location.line, "[Term] stanza has no name; id used as label")
            st.label = st.iri.value if st.iri else ""
        if st.iri is not None:
            if st.iri.value in seen_ids:
                error(st.location.line,
                      f"duplicate id {st.iri.value} (first seen on line {seen_ids[st.iri.value]})")
            else:
                seen_ids[st.iri.value] = st.location.line
        terms.append(Term(
            label=st.label,
            iri=st.iri,
            synonyms=tuple(st.synonyms),
            definition=st.definition,
            parents=tuple(st.parents),
            obsolete=st.obsolete,
            replaced_by=st.replaced_by,
            annotations=st.annotations,
            location=st.location,
        ))

    state: _StanzaState | None = None
    in_term = False
    lines = _strip_bom(text).split("\n")
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r")
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            if state is not None:
                finish(state)
                state = None
            in_term = stripped == "[Term]"
            if in_term:
                state = _StanzaState(file_name, line_no)
            continue
        if not in_term or state is None or state.skip:
            continue
        if not stripped or stripped.startswith("!"):
            continue
        tag, sep, value = line.partition(":")
        if not sep:
            warn(line_no, f"line is not a tag: value pair: {stripped!r}")
            continue
        tag = tag.strip()
        value = value.strip()
        _apply_tag(state, tag, value, line_no, warn, error)
    if state is not None:
        finish(state)
    return build_vocabulary(terms), diags


def _apply_tag(st: _StanzaState, tag: str, value: str, line_no: int, warn, error) -> None:
    if tag == "id":
        iri = _make_iri(_strip_trailing_comment(value))
        if iri is None:
            warn(line_no, f"invalid id value: {value!r}")
        elif st.iri is not None:
            warn(line_no, "duplicate id tag in stanza; first kept")
        else:
            st.iri = iri
    elif tag == "name":
        if not value:
            warn(line_no, "empty name value ignored")
        elif st.label is not None:
            warn(line_no, "duplicate name tag in stanza; first kept")
        else:
            st.label = value
    elif tag == "def":
        parsed = _parse_quoted(value)
        if parsed is None:
            error(line_no, "unclosed quote in def; stanza skipped")
            st.skip = True
            return
        text, rest = parsed
        if not text:
            warn(line_no, "empty definition text ignored")
            return
        if st.definition is not None:
            warn(line_no, "duplicate def tag in stanza; first kept")
            return
        st.definition = Definition(text=text, sources=tuple(_parse_bracket_list(rest)))
    elif tag == "synonym":
        parsed = _parse_quoted(value)
        if parsed is None:
            error(line_no, "unclosed quote in synonym; stanza skipped")
            st.skip = True
            return
        text, rest = parsed
        if not text:
            warn(line_no, "empty synonym text ignored")
            return
        bracket = _parse_bracket_list(rest)
        head = rest.split("[", 1)[0].split()
        scope = "related"
        extra: list[str] = []
        if head and head[0] in _SCOPES:
            scope = _SCOPES[head[0]]
            extra = head[1:]
        elif head:
            warn(line_no, f"unknown synonym scope {head[0]!r}; treated as related")
            extra = head[1:]
        is_abbrev = "ABBREVIATION" in bracket or "ABBREVIATION" in extra
        st.synonyms.append(Synonym(text=text, scope=scope, is_abbreviation=is_abbrev))
    elif tag == "is_a":
        iri = _make_iri(_strip_trailing_comment(value))
        if iri is None:
            warn(line_no, f"invalid is_a value: {value!r}")
        else:
            st.parents.append(iri)
    elif tag == "is_obsolete":
        lowered = _strip_trailing_comment(value).lower()
        if lowered == "true":
            st.obsolete = True
        elif lowered != "false":
            warn(line_no, f"is_obsolete expects true/false, got {value!r}; treated as false")
    elif tag == "replaced_by":
        iri = _make_iri(_strip_trailing_comment(value))
        if iri is None:
            warn(line_no, f"invalid replaced_by value: {value!r}")
        elif st.replaced_by is not None:
            warn(line_no, "duplicate replaced_by tag in stanza; first kept")
        else:
            st.replaced_by = iri
    else:
        # comment and all unrecognized tags are preserved opaquely; repeated
        # tags concatenate with "|" so nothing is silently dropped.
        if tag in st.annotations:
            st.annotations[tag] = st.annotations[tag] + "|" + value
        else:
            st.annotations[tag] = value


def parse_term_table(text: str, file_name: str,
                     columns: ColumnMap | None = None,
                     ) -> tuple[Vocabulary, list[ParseDiagnostic]]:
    """Parse a UTF-8 TSV term table. The first row is the header; "|" splits
    list-valued cells; empty cells mean absent fields."""
    columns = columns or ColumnMap()
    diags: list[ParseDiagnostic] = []
    terms: list[Term] = []
    lines = _strip_bom(text).split("\n")
    if not lines or not lines[0].strip():
        raise FatalParseError(f"{file_name}: missing header row")
    header = [cell.strip() for cell in lines[0].rstrip("\r").split("\t")]
    if columns.label_col not in header:
        raise FatalParseError(
            f"{file_name}: required label column {columns.label_col!r} not in header")
    position: dict[str, int] = {}
    for pos, name in enumerate(header):
        position.setdefault(name, pos)

    def cell(cells: list[str], col: str) -> str:
        pos = position.get(col)
        if pos is None or pos >= len(cells):
            return ""
        return cells[pos].strip()

    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        cells = line.split("\t")
        loc = SourceLocation(file_name, line_no)
        label = cell(cells, columns.label_col)
        if not label:
            diags.append(ParseDiagnostic("error", "row has an empty label cell; row skipped", loc))
            continue
        iri: Iri | None = None
        raw_iri = cell(cells, columns.iri_col)
        if raw_iri:
            iri = _make_iri(raw_iri)
            if iri is None:
                diags.append(ParseDiagnostic(
                    "warning", f"invalid IRI value {raw_iri!r}; term kept without IRI", loc))
        definition: Definition | None = None
        def_text = cell(cells, columns.definition_col)
        if def_text:
            sources = [s for s in cell(cells, columns.def_source_col).split("|") if s]
            definition = Definition(text=def_text, sources=tuple(sources))
        parents = []
        for part in cell(cells, columns.parent_col).split("|"):
            part = part.strip()
            if not part:
                continue
            parent = _make_iri(part)
            if parent is None:
                diags.append(ParseDiagnostic("warning", f"invalid parent IRI {part!r}", loc))
            else:
                parents.append(parent)
        synonyms = tuple(
            Synonym(text=s.strip(), scope="exact")
            for s in cell(cells, columns.synonyms_col).split("|") if s.strip())
        obsolete_raw = cell(cells, columns.obsolete_col).lower()
        obsolete = obsolete_raw == "true"
        if obsolete_raw not in ("", "true", "false"):
            diags.append(ParseDiagnostic(
                "warning", f"obsolete expects true/false, got {obsolete_raw!r}; treated as false",
                loc))
        replaced_by: Iri | None = None
        raw_replaced = cell(cells, columns.replaced_by_col)
        if raw_replaced:
            replaced_by = _make_iri(raw_replaced)
            if replaced_by is None:
                diags.append(ParseDiagnostic(
                    "warning", f"invalid replaced_by IRI {raw_replaced!r}", loc))
        terms.append(Term(
            label=label,
            iri=iri,
            synonyms=synonyms,
            definition=definition,
            parents=tuple(parents),
            obsolete=obsolete,
            replaced_by=replaced_by,
            location=loc,
        ))
    return build_vocabulary(terms), diags


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def serialize_obo(vocab: Vocabulary) -> str:
    """Write the supported tag subset back out. Annotations are emitted in
    sorted key order so serialization is deterministic; re-parsing the output
    reproduces every term field-by-field (locations aside)."""
    chunks: list[str] = ["format-version: 1.2"]
    for term in vocab.terms:
        lines = ["[Term]"]
        if term.iri is not None:
            lines.append(f"id: {term.iri.value}")
        lines.append(f"name: {term.label}")
        if term.definition is not None:
            lines.append(f"def: {_quote(term.definition.text)} "
                         f"[{', '.join(term.definition.sources)}]")
        for syn in term.synonyms:
            marker = "[ABBREVIATION]" if syn.is_abbreviation else "[]"
            lines.append(f"synonym: {_quote(syn.text)} {syn.scope.upper()} {marker}")
        for parent in term.parents:
            lines.append(f"is_a: {parent.value}")
        if term.obsolete:
            lines.append("is_obsolete: true")
        if term.replaced_by is not None:
            lines.append(f"replaced_by: {term.replaced_by.value}")
        for key in sorted(term.annotations):
            lines.append(f"{key}: {term.annotations[key]}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"
