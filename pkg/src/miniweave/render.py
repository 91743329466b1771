"""Display text for markup, entries, section bodies and whole spreads."""

from __future__ import annotations

import html
import re
import textwrap
from collections import Counter
from dataclasses import dataclass, field

from .errors import MalformedMarkup, SrefMismatch
from .minis import MiniEntry, serialize_mini_output
from .origins import UNINITIALIZED, ZIP, LiteralLabel
from .packer import LayoutConfig
from .source import COMMENT_TEXT, KEYWORD, JoinHint, Section

PLAIN = "plain"
HTML = "html"

_FONT_TAGS = {"&": "b", "\\": "i", "|": "var"}


def _closing_brace(s, i):
    """Index of the brace closing the one at s[i]."""
    depth = 0
    for j in range(i, len(s)):
        if s[j] == "{":
            depth += 1
        elif s[j] == "}":
            depth -= 1
            if depth == 0:
                return j
    raise MalformedMarkup(f"unbalanced braces in {s!r}")


def _text(s, mode):
    return html.escape(s, quote=False) if mode == HTML else s


def render_markup(markup: str, mode: str = PLAIN, _math=False) -> str:
    r"""Turn type or identifier markup into display text.

    Understands ``\&{..}`` (bold), ``\\{..}`` (text italic), ``\|{..}``
    (math italic), ``$..$``, ``\,``, ``\_``, grouping braces and the two
    special markers.  Anything else with a backslash is rejected.
    """
    out = []
    i = 0
    n = len(markup)
    while i < n:
        c = markup[i]
        if c == "\\":
            if markup.startswith(ZIP, i) and not markup[i + len(ZIP) : i + len(ZIP) + 1].isalpha():
                i += len(ZIP)
                continue
            if markup.startswith(UNINITIALIZED, i):
                out.append("???")
                i += len(UNINITIALIZED)
                continue
            if i + 1 >= n:
                raise MalformedMarkup(f"dangling backslash in {markup!r}")
            d = markup[i + 1]
            if d in _FONT_TAGS:
                if i + 2 >= n:
                    raise MalformedMarkup(f"missing argument in {markup!r}")
                if markup[i + 2] == "{":
                    end = _closing_brace(markup, i + 2)
                    arg = markup[i + 3 : end]
                    i = end + 1
                else:
                    arg = markup[i + 2]
                    if arg in "\\}$":
                        raise MalformedMarkup(f"bad argument in {markup!r}")
                    i += 3
                inner = render_markup(arg, mode, _math)
                out.append(f"<{_FONT_TAGS[d]}>{inner}</{_FONT_TAGS[d]}>" if mode == HTML else inner)
            elif d == ",":
                out.append(" ")
                i += 2
            elif d in "_ ":
                out.append(_text(" " if d == " " else "_", mode))
                i += 2
            else:
                raise MalformedMarkup(f"unknown control sequence in {markup!r}")
        elif c == "$":
            if _math:
                raise MalformedMarkup(f"nested math in {markup!r}")
            end = markup.find("$", i + 1)
            if end < 0:
                raise MalformedMarkup(f"unclosed math in {markup!r}")
            out.append(render_markup(markup[i + 1 : end], mode, True))
            i = end + 1
        elif c == "{":
            end = _closing_brace(markup, i)
            out.append(render_markup(markup[i + 1 : end], mode, _math))
            i = end + 1
        elif c == "}":
            raise MalformedMarkup(f"unbalanced braces in {markup!r}")
        else:
            out.append(_text(c, mode))
            i += 1
    return "".join(out)


def format_location(origin, program, mode=PLAIN):
    if isinstance(origin, LiteralLabel):
        return _text(origin.text, mode)
    if origin.program == program:
        return f"§{origin.section}"
    return f"{render_markup(origin.program, mode)} §{origin.section}"


def format_entry(entry: MiniEntry, program: str, mode: str = PLAIN) -> str:
    """``ident = rest, LOC`` for equations, ``ident, LOC`` for zip, else
    ``ident: type, LOC``."""
    ident = render_markup(entry.ident_markup, mode)
    loc = format_location(entry.origin, program, mode)
    t = entry.type_markup
    if t == ZIP:
        return f"{ident}, {loc}"
    if t.startswith("="):
        return f"{ident} = {render_markup(t[1:], mode).lstrip()}, {loc}"
    return f"{ident}: {render_markup(t, mode)}, {loc}"


# -- section bodies ---------------------------------------------------------

_CHUNK_RE = re.compile(r"@<(.*?)@>(=?)", re.S)
_SPAN_RE = re.compile(r"\|([^|\n]+)\|")


def _chunk_name(lexeme):
    m = _CHUNK_RE.fullmatch(lexeme)
    return " ".join(m.group(1).split()), bool(m.group(2))


def chunk_index(sections):
    """Map full chunk names to the first section defining them.

    A name ending in ``...`` abbreviates the full name it is a prefix of.
    """
    uses = []
    for s in sections:
        for t in s.code_part:
            if t.lexeme.startswith("@<"):
                name, is_def = _chunk_name(t.lexeme)
                uses.append((name, is_def, s.number))
    found = {name: None for name, _, _ in uses if not name.endswith("...")}
    for name, is_def, number in uses:
        if is_def:
            resolved, _ = _resolve_chunk(name, found)
            if found.get(resolved) is None:
                found[resolved] = number
    return found


def _resolve_chunk(name, chunks):
    if name.endswith("..."):
        prefix = name[:-3]
        for full in chunks:
            if full.startswith(prefix):
                return full, chunks[full]
        return name, None
    return name, chunks.get(name)


def _strip_bars(text):
    """Inline code spans display as their contents."""
    return _SPAN_RE.sub(lambda m: m.group(1), text)


def _chunk_display(lexeme, chunks, defining_section=None):
    name, is_def = _chunk_name(lexeme)
    full, number = _resolve_chunk(name, chunks)
    full = _strip_bars(full)
    if is_def:
        return f"<{full} {defining_section}> ="
    return f"<{full} {number if number is not None else '?'}>"


def render_text_part(section: Section, width: int):
    text = section.text_part
    text = _strip_bars(text)
    text = text.replace("~", " ").replace("@@", "@").replace("@*", "")
    text = " ".join(text.split())
    head = f"§{section.number}."
    if not text:
        return [head]
    return textwrap.wrap(f"{head} {text}", width=width, break_on_hyphens=False) or [head]


def render_code_part(section: Section, chunks=None):
    """Lay the code tokens out in lines; only line breaks are decided here."""
    chunks = chunks or {}
    toks = section.code_part
    joins = {c.position for c in section.controls if isinstance(c, JoinHint)}
    lines = []
    cur = []
    depth = 0
    parens = 0
    state = {"define": False, "pp": False, "indent": 0}
    skip = set()

    def flush():
        if cur:
            lines.append("  " * state["indent"] + "".join(cur))
            cur.clear()

    def put(text, ws):
        if not cur:
            state["indent"] = max(depth, 0)
        elif ws:
            cur.append(" ")
        cur.append(text)

    for i, t in enumerate(toks):
        if i in skip:
            continue
        lex = _strip_bars(t.lexeme) if t.kind == COMMENT_TEXT else t.lexeme
        joined = i in joins
        ws = t.ws or joined
        if state["pp"] and "\n" in t.ws:
            state["pp"] = False
            flush()
        if lex == "@c":
            state["define"] = False
            flush()
            continue
        if lex == "@d":
            state["define"] = True
            flush()
            put("#define", "")
            continue
        if lex.startswith("@<"):
            name, is_def = _chunk_name(lex)
            if is_def:
                state["define"] = False
                flush()
                depth = 0
                lines.append(_chunk_display(lex, chunks, section.number))
                continue
            put(_chunk_display(lex, chunks), ws)
        elif lex.startswith("#") and t.kind != COMMENT_TEXT and len(lex) > 1:
            flush()
            state["pp"] = True
            put(lex, "")
            continue
        elif state["define"] or state["pp"]:
            put(lex, ws)
            continue
        else:
            if lex == "}":
                depth -= 1
                if not joined:
                    flush()
            put(lex, ws)
        if lex == "(":
            parens += 1
        elif lex == ")":
            parens = max(parens - 1, 0)
        nxt = toks[i + 1] if i + 1 < len(toks) else None
        brk = False
        if lex == "{":
            depth += 1
            brk = True
        elif lex == "}":
            brk = nxt is None or nxt.lexeme not in ("else", ";", ",", ")")
        elif lex == ";" and parens == 0:
            brk = True
        elif lex == ")" and parens == 0 and depth == 0 and nxt is not None and nxt.kind == KEYWORD:
            brk = True  # a K&R function head before its parameter declarations
        if brk and (i + 1) not in joins:
            # a comment on the same source line stays with its statement
            j = i + 1
            while j < len(toks) and toks[j].kind == COMMENT_TEXT and "\n" not in toks[j].ws:
                put(_strip_bars(toks[j].lexeme), toks[j].ws)
                skip.add(j)
                j += 1
            flush()
    flush()
    return lines


def render_section_body(section: Section, cfg: LayoutConfig, chunks=None):
    return render_text_part(section, cfg.width) + render_code_part(section, chunks)


# -- pages ------------------------------------------------------------------


@dataclass
class RenderedPage:
    spread_number: int
    lines: list
    rule: list = field(default_factory=list)
    mini_lines: list = field(default_factory=list)
    oversized: bool = False

    def all_lines(self):
        return self.lines + self.rule + self.mini_lines

    def text(self):
        return "\n".join(self.all_lines()) + "\n"


def _mini_block(entries, program, cfg, mode):
    cols = cfg.mini_columns
    colw = max((cfg.width - 2 * (cols - 1)) // cols, 1)
    cells = [format_entry(e, program, mode) for e in entries]
    rows = []
    for k in range(0, len(cells), cols):
        row = cells[k : k + cols]
        if mode == HTML:
            rows.append("<tr>" + "".join(f"<td>{c}</td>" for c in row) + "</tr>")
        else:
            rows.append("  ".join(c.ljust(colw) for c in row).rstrip())
    padded = []
    for r in rows:
        padded.append(r)
        padded.extend([""] * (cfg.mini_baseline - 1))
    return padded


def check_sref(spreads, sref):
    """Raise SrefMismatch unless `sref` holds exactly the spreads' entries."""
    if len(sref.spreads) != len(spreads):
        raise SrefMismatch(f"sorted file has {len(sref.spreads)} spreads, document has {len(spreads)}")
    for k, (spread, (number, entries)) in enumerate(zip(spreads, sref.spreads), 1):
        if number != k:
            raise SrefMismatch(f"sorted file spread {number} where {k} was expected")
        if Counter(e.identity for e in entries) != Counter(e.identity for e in spread.entries):
            raise SrefMismatch(f"entries of spread {k} differ from the sorted file")


def render_document(spreads, bodies, cfg: LayoutConfig, program, sref=None, mode=PLAIN):
    """One page per spread.  `bodies` maps section number to plain body lines.

    Without `sref` the mini-indexes keep packer order (preview); with it
    they follow the sorted file (final copy).
    """
    if sref is not None:
        check_sref(spreads, sref)
    pages = []
    for k, spread in enumerate(spreads, 1):
        lines = []
        for j, s in enumerate(spread.members):
            if j:
                lines.extend([""] * cfg.section_gap)
            body = bodies[s]
            lines.extend(_text(b, mode) for b in body)
        entries = sref.spreads[k - 1][1] if sref is not None else spread.entries
        rule = ["-" * cfg.width] * cfg.rule_allowance
        if mode == HTML:
            rule = ["<hr>"] * cfg.rule_allowance
        pages.append(RenderedPage(k, lines, rule, _mini_block(entries, program, cfg, mode), spread.oversized))
    return pages


def pages_to_text(pages, mode=PLAIN):
    if mode == HTML:
        parts = ["<!DOCTYPE html>", "<html><head><meta charset=\"utf-8\"></head><body>"]
        for p in pages:
            parts.append(f'<div class="spread" id="spread{p.spread_number}">')
            parts.append("<pre>" + "\n".join(p.lines) + "</pre>")
            parts.extend(p.rule)
            parts.append("<table>" + "".join(p.mini_lines) + "</table>")
            parts.append("</div>")
        parts.append("</body></html>")
        return "\n".join(parts) + "\n"
    return "\f\n".join(p.text() for p in pages)


def dump_debug_minis(outputs, program) -> str:
    """Every section's raw mini-output, no packing."""
    out = []
    for m in outputs:
        out.append(f"§{m.section}")
        out.extend(serialize_mini_output(m, program))
    return "".join(line + "\n" for line in out)
