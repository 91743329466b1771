"""The `.ref` / `.sref` interchange files and the alphabetic sort between them."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import EntryBeforeSpread, NonMonotoneSpreadNumbers, RefFormatError, UnparseableEntry
from .minis import MiniEntry, parse_entry, serialize_entry
from .origins import LiteralLabel

DONE_PREFIX = r"\donewithpage"


@dataclass
class RefFile:
    # list of (spread number, [MiniEntry, ...])
    spreads: list = field(default_factory=list)

    def __post_init__(self):
        last = 0
        for number, _ in self.spreads:
            if number <= last:
                raise NonMonotoneSpreadNumbers(f"spread {number} follows spread {last}")
            last = number


def parse_ref(text: str, program: str, filename=None) -> RefFile:
    spreads = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith("!"):
            try:
                number = int(line[1:])
            except ValueError:
                raise RefFormatError(f"bad spread marker {line!r}", filename, lineno) from None
            if number < 1 or (spreads and number <= spreads[-1][0]):
                raise NonMonotoneSpreadNumbers(f"spread number {number} out of order", filename, lineno)
            spreads.append((number, []))
        elif line.startswith("+ "):
            if not spreads:
                raise EntryBeforeSpread("entry before the first spread marker", filename, lineno)
            try:
                spreads[-1][1].append(parse_entry(line[2:], program))
            except UnparseableEntry as exc:
                raise UnparseableEntry(exc.message, filename, lineno) from None
        else:
            raise UnparseableEntry(f"unrecognized line {line!r}", filename, lineno)
    return RefFile(spreads)


def serialize_ref(ref: RefFile, program: str) -> str:
    out = []
    for number, entries in ref.spreads:
        out.append(f"!{number}")
        out.extend("+ " + serialize_entry(e, program) for e in entries)
    return "".join(line + "\n" for line in out)


_MARKUP_RE = re.compile(r"\\[\\|&]\{([^{}]*)\}")


def _display_name(ident_markup):
    m = _MARKUP_RE.fullmatch(ident_markup)
    inner = m.group(1) if m else ident_markup
    return inner.replace(r"\_", "").replace("_", "").lower()


def collation_key(entry: MiniEntry, program: str):
    """Primary: lowercased name without underscores; then the raw markup;
    then the origin, external programs and labels before internal sections."""
    origin = entry.origin
    if isinstance(origin, LiteralLabel):
        tertiary = (0, origin.text, 0)
    elif origin.program != program:
        tertiary = (0, origin.program, origin.section)
    else:
        tertiary = (1, "", origin.section)
    return (_display_name(entry.ident_markup), entry.ident_markup, tertiary)


def sort_spread(entries, program: str):
    return sorted(entries, key=lambda e: collation_key(e, program))


def sort_ref(ref: RefFile, program: str) -> RefFile:
    return RefFile([(n, sort_spread(es, program)) for n, es in ref.spreads])


def serialize_sref(ref: RefFile, program: str) -> str:
    out = []
    for number, entries in ref.spreads:
        out.extend(serialize_entry(e, program) for e in entries)
        out.append(f"{DONE_PREFIX}{number}")
    return "".join(line + "\n" for line in out)


def parse_sref(text: str, program: str, filename=None) -> RefFile:
    spreads = []
    pending = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if line.startswith(DONE_PREFIX):
            try:
                number = int(line[len(DONE_PREFIX):])
            except ValueError:
                raise RefFormatError(f"bad page marker {line!r}", filename, lineno) from None
            if number < 1 or (spreads and number <= spreads[-1][0]):
                raise NonMonotoneSpreadNumbers(f"page number {number} out of order", filename, lineno)
            spreads.append((number, pending))
            pending = []
        else:
            try:
                pending.append(parse_entry(line, program))
            except UnparseableEntry as exc:
                raise UnparseableEntry(exc.message, filename, lineno) from None
    if pending:
        raise RefFormatError("entries after the last page marker", filename)
    return RefFile(spreads)


def refsort_text(ref_text: str, program: str, filename=None) -> str:
    """The whole refsort pass: `.ref` text in, `.sref` text out."""
    return serialize_sref(sort_ref(parse_ref(ref_text, program, filename), program), program)
