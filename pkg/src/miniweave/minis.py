"""Per-section mini-output: the entries a section contributes to its mini-index."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError, UnparseableEntry
from .meanings import Meaning, MeaningTable, SectionIndexState
from .origins import LiteralLabel, Origin, ProgramSection, section_of
from .source import COMMENT_TEXT, IDENTIFIER, Section, inline_spans, tokenize_code


@dataclass(frozen=True)
class MiniEntry:
    """One mini-index line.  The whole triple is the deduplication key."""

    origin: Origin
    ident_markup: str
    type_markup: str

    @property
    def identity(self):
        return (self.origin, self.ident_markup, self.type_markup)

    @property
    def ident(self):
        """The bare identifier, markup and ``\\_`` escapes removed."""
        return self.ident_markup[3:-1].replace(r"\_", "_")


@dataclass
class MiniOutput:
    section: int
    entries: list = field(default_factory=list)


def ident_markup(ident, type_markup):
    """Typeset form of an identifier: bold for typedef names, math italic
    for single letters, text italic otherwise."""
    escaped = ident.replace("_", r"\_")
    if type_markup.startswith(r"=\&{"):
        return rf"\&{{{escaped}}}"
    if len(ident) == 1:
        return rf"\|{{{escaped}}}"
    return rf"\\{{{escaped}}}"


def entry_for(meaning: Meaning) -> MiniEntry:
    return MiniEntry(meaning.origin, ident_markup(meaning.ident, meaning.type_markup), meaning.type_markup)


def _span_identifiers(text):
    out = []
    for span in inline_spans(text):
        try:
            toks = tokenize_code(span)
        except ParseError:
            continue
        out.extend(t.lexeme for t in toks if t.kind == IDENTIFIER)
    return out


def collect_used_identifiers(section: Section):
    """Identifiers used in a section, in first-use order, reserved words excluded.

    Commentary contributes only what sits inside ``|...|`` spans, both in the
    text part and in code comments.
    """
    seen = {}
    for name in _span_identifiers(section.text_part):
        seen.setdefault(name, None)
    for tok in section.code_part:
        if tok.kind == IDENTIFIER:
            seen.setdefault(tok.lexeme, None)
        elif tok.kind == COMMENT_TEXT:
            for name in _span_identifiers(tok.lexeme):
                seen.setdefault(name, None)
    return list(seen)


def emit_section_minis(table: MeaningTable, state: SectionIndexState, section: Section, used=None) -> MiniOutput:
    if used is None:
        used = collect_used_identifiers(section)
    state.used = list(used)
    program = table.program
    temporaries = {}
    for meaning in state.temporaries:
        temporaries.setdefault(meaning.ident, []).append(meaning)

    out = []
    seen = set()

    def add(meaning):
        if section_of(meaning.origin, program) == section.number:
            return
        entry = entry_for(meaning)
        if entry.identity not in seen:
            seen.add(entry.identity)
            out.append(entry)

    for ident in used:
        if ident in temporaries:
            for meaning in temporaries.pop(ident):
                add(meaning)
        elif ident not in state.suppressed:
            add(table.lookup(ident))
    # temporaries are output even for identifiers the code never mentions
    for meanings in temporaries.values():
        for meaning in meanings:
            add(meaning)
    return MiniOutput(section.number, out)


# -- line format ------------------------------------------------------------


def serialize_entry(entry: MiniEntry, program: str) -> str:
    origin = entry.origin
    if isinstance(origin, LiteralLabel):
        where = rf'\]"{origin.text}"'
    elif origin.program == program:
        where = rf"\[{origin.section}"
    else:
        where = rf"\]{{{origin.program}}}{origin.section}"
    return f"{where} {entry.ident_markup} {entry.type_markup}"


def serialize_mini_output(m: MiniOutput, program: str):
    return [serialize_entry(e, program) for e in m.entries]


_ENTRY_RE = re.compile(
    r"""\\(?:
        \[(?P<internal>\d+)
      | \]\{(?P<program>(?:[^{}]|\{[^{}]*\})+)\}(?P<section>\d+)
      | \]"(?P<label>[^"]+)"
    )\ (?P<ident>\\[\\|&]\{[^{}]+\})\ (?P<type>\S.*)$""",
    re.X,
)


def parse_entry(line: str, program: str) -> MiniEntry:
    m = _ENTRY_RE.match(line)
    if not m:
        raise UnparseableEntry(f"cannot parse mini-index entry {line!r}")
    if m["internal"] is not None:
        origin = ProgramSection(program, int(m["internal"]))
    elif m["program"] is not None:
        origin = ProgramSection(m["program"], int(m["section"]))
    else:
        origin = LiteralLabel(m["label"])
    return MiniEntry(origin, m["ident"], m["type"].rstrip())
