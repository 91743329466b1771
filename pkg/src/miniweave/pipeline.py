"""The weave pass: source text and meaning files in, aux/ref text and pages out.

Everything here works on strings so the CLI is the only place touching
the file system.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import SrefMismatch
from .meanings import load_meaning_files, process_section, serialize_aux
from .minis import emit_section_minis
from .origins import UNINITIALIZED
from .packer import LayoutConfig, PackItem, pack_document
from .refsort import RefFile, parse_sref, serialize_ref
from .render import PLAIN, chunk_index, check_sref, dump_debug_minis, render_document, render_section_body
from .source import expand_section_includes, parse_source

log = logging.getLogger(__name__)


@dataclass
class Analysis:
    doc: object
    aux_records: list
    minis: list
    states: list


@dataclass
class WeaveResult:
    analysis: Analysis
    aux_text: str
    bodies: dict
    spreads: list
    pages: list
    ref_text: str | None
    final: bool
    warnings: list = field(default_factory=list)

    @property
    def minis(self):
        return self.analysis.minis


def analyze(text, program, *, system_bux=None, aux=None, bux=None, resolver=None, filename=None,
            names=("system.bux", None, None)):
    """Parse the source, seed the meaning table and run every section."""
    resolver = resolver if resolver is not None else {}
    doc = parse_source(text, program, filename)
    table = load_meaning_files(program, system_bux, aux, bux, resolver, names)
    records, minis, states = [], [], []
    for section in doc.sections:
        section = expand_section_includes(section, resolver)
        recs, state = process_section(table, section)
        records.extend(recs)
        minis.append(emit_section_minis(table, state, section))
        states.append(state)
    return Analysis(doc, records, minis, states)


def debug_dump(text, program, **kw):
    a = analyze(text, program, **kw)
    return dump_debug_minis(a.minis, program)


def weave(text, program, *, cfg: LayoutConfig | None = None, sref_text=None, mode=PLAIN,
          legacy_1986=False, **kw) -> WeaveResult:
    """One weave run.  With a matching sorted file the pages are final;
    otherwise they are a preview and `ref_text` holds the unsorted entries."""
    cfg = cfg or LayoutConfig()
    a = analyze(text, program, **kw)
    chunks = chunk_index(a.doc.sections)
    bodies = {s.number: render_section_body(s, cfg, chunks) for s in a.doc.sections}
    items = [PackItem(m.section, len(bodies[m.section]), m.entries) for m in a.minis]
    spreads = pack_document(items, cfg, program, legacy_1986=legacy_1986)
    warnings = []
    for k, s in enumerate(spreads, 1):
        if s.oversized:
            warnings.append(f"spread {k} (section {s.members[0]}) is taller than a page")
    unknown = sorted({e.ident for s in spreads for e in s.entries if e.type_markup == UNINITIALIZED})
    if unknown:
        warnings.append("identifiers with no known meaning: " + ", ".join(unknown))

    sref = None
    if sref_text is not None:
        try:
            sref = parse_sref(sref_text, program)
            check_sref(spreads, sref)
        except SrefMismatch as exc:
            warnings.append(f"sorted file is stale ({exc}); producing a preview")
            sref = None
    pages = render_document(spreads, bodies, cfg, program, sref=sref, mode=mode)
    ref_text = None
    if sref is None:
        ref_text = serialize_ref(RefFile([(k, s.entries) for k, s in enumerate(spreads, 1)]), program)
    for w in warnings:
        log.warning(w)
    return WeaveResult(a, serialize_aux(a.aux_records), bodies, spreads, pages, ref_text, sref is not None, warnings)
