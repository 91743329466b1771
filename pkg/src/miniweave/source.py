"""Reader for LW, the CWEB subset this package weaves.

Layout of an LW file::

    limbo text (ignored)
    @* Title. Commentary ...      starred section
    @ Commentary with |inline code| ...
    @d name replacement           macro definition
    @c                            unnamed code
    @<Chunk name@>=               named code chunk

Index-control commands may appear anywhere inside a section, including
inside comments: ``@$ident {prog}nn type@>``, ``@$ident "label" type@>``,
``@-ident@>``, ``@%``, ``@i file`` and ``@+``.  They are lifted out of the
text before lexing and kept as :class:`ControlCommand` values at the token
position where they occurred.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from .errors import (
    IncludeCycle,
    MalformedDirective,
    MissingInclude,
    ParseError,
    UnterminatedComment,
    UnterminatedDirective,
    UnterminatedString,
)
from .origins import LiteralLabel, Origin, ProgramSection, ZIP

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

# C89 keywords.  Typedef names are not reserved; they index normally.
RESERVED = frozenset(
    """auto break case char const continue default do double else enum extern
    float for goto if int long register return short signed sizeof static
    struct switch typedef union unsigned void volatile while""".split()
)

IDENTIFIER = "identifier"
KEYWORD = "keyword"
PUNCTUATION = "punctuation"
CONSTANT = "constant"
STRING_LITERAL = "string_literal"
COMMENT_TEXT = "comment_text"

TEXT_POSITION = -1  # position of a control found in the commentary


@dataclass(frozen=True)
class CodeToken:
    kind: str
    lexeme: str
    position: tuple = (0, 0)
    ws: str = ""  # whitespace preceding the lexeme in the source


# -- control commands -------------------------------------------------------


@dataclass(frozen=True)
class MeaningDirective:
    ident: str
    origin: Origin
    type_markup: str
    position: int = TEXT_POSITION
    line: int = field(default=0, compare=False)

    @property
    def is_zip(self):
        return self.type_markup == ZIP


@dataclass(frozen=True)
class Suppress:
    ident: str
    position: int = TEXT_POSITION
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ToggleTemporary:
    position: int = TEXT_POSITION
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Include:
    path: str
    position: int = TEXT_POSITION
    line: int = field(default=0, compare=False)


@dataclass(frozen=True)
class JoinHint:
    position: int = TEXT_POSITION
    line: int = field(default=0, compare=False)


ControlCommand = Union[MeaningDirective, Suppress, ToggleTemporary, Include, JoinHint]


@dataclass
class Section:
    number: int
    text_part: str
    code_part: tuple = ()
    controls: tuple = ()
    starred: bool = False
    code_text: str = field(default="", compare=False)
    line: int = field(default=0, compare=False)

    @property
    def title(self):
        if not self.starred:
            return None
        head, dot, _ = self.text_part.partition(".")
        return head.strip() if dot else self.text_part.strip()


@dataclass
class SourceDocument:
    program_name: str
    sections: list = field(default_factory=list)
    limbo: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.program_name or re.search(r"[\s{}]", self.program_name):
            raise ValueError(f"bad program name {self.program_name!r}")


# -- directive scanning -----------------------------------------------------


def _line_of(text, offset, base):
    return base + text.count("\n", 0, offset)


def _parse_meaning_body(body, line, filename):
    m = IDENT_RE.match(body)
    if not m:
        raise MalformedDirective(f"bad identifier in @${body}@>", filename, line)
    ident = m.group()
    i = m.end()
    if i >= len(body) or body[i] not in " \t":
        raise MalformedDirective(f"missing origin in @${body}@>", filename, line)
    while i < len(body) and body[i] in " \t":
        i += 1
    if body.startswith("{", i):
        depth = 0
        j = i
        while j < len(body):
            if body[j] == "{":
                depth += 1
            elif body[j] == "}":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if depth:
            raise MalformedDirective(f"unbalanced braces in @${body}@>", filename, line)
        name = body[i + 1 : j]
        m = re.compile(r"\d+").match(body, j + 1)
        if not name or not m:
            raise MalformedDirective(f"bad program reference in @${body}@>", filename, line)
        origin = ProgramSection(name, int(m.group()))
        i = m.end()
    elif body.startswith('"', i):
        j = body.find('"', i + 1)
        if j <= i + 1:
            raise MalformedDirective(f"bad label in @${body}@>", filename, line)
        origin = LiteralLabel(body[i + 1 : j])
        i = j + 1
    else:
        raise MalformedDirective(f"missing origin in @${body}@>", filename, line)
    if i >= len(body) or body[i] not in " \t":
        raise MalformedDirective(f"missing type in @${body}@>", filename, line)
    type_markup = body[i:].strip()
    if not type_markup:
        raise MalformedDirective(f"missing type in @${body}@>", filename, line)
    return ident, origin, type_markup


def scan_directives(text, filename=None, first_line=1):
    """Remove index-control commands from `text`.

    Returns ``(stripped, found)`` where `found` lists ``(offset, command)``
    pairs, offsets referring to `stripped`.
    """
    out = []
    found = []
    i = 0
    n = len(text)
    size = 0
    while i < n:
        j = text.find("@", i)
        if j < 0 or j + 1 >= n:
            out.append(text[i:])
            break
        out.append(text[i:j])
        size += j - i
        code = text[j + 1]
        line = _line_of(text, j, first_line)
        if code in "$-":
            end = text.find("@>", j + 2)
            if end < 0:
                raise UnterminatedDirective(f"@{code} without closing @>", filename, line)
            body = text[j + 2 : end]
            if code == "$":
                ident, origin, type_markup = _parse_meaning_body(body, line, filename)
                cmd = MeaningDirective(ident, origin, type_markup, line=line)
            else:
                if not IDENT_RE.fullmatch(body):
                    raise MalformedDirective(f"bad identifier in @-{body}@>", filename, line)
                cmd = Suppress(body, line=line)
            found.append((size, cmd))
            i = end + 2
        elif code == "%":
            found.append((size, ToggleTemporary(line=line)))
            i = j + 2
        elif code == "+":
            found.append((size, JoinHint(line=line)))
            i = j + 2
        elif code == "i":
            end = text.find("\n", j)
            end = n if end < 0 else end + 1
            path = text[j + 2 : end].strip()
            if not path:
                raise MalformedDirective("@i without a file name", filename, line)
            found.append((size, Include(path, line=line)))
            i = end
        else:
            # @@ and every other control code pass through untouched
            out.append(text[j : j + 2])
            size += 2
            i = j + 2
    return "".join(out), found


def format_directive(cmd):
    """Source text of a control command (inverse of scanning)."""
    if isinstance(cmd, MeaningDirective):
        return serialize_meaning_directive(cmd.ident, cmd.origin, cmd.type_markup)
    if isinstance(cmd, Suppress):
        return f"@-{cmd.ident}@>"
    if isinstance(cmd, ToggleTemporary):
        return "@%"
    if isinstance(cmd, JoinHint):
        return "@+"
    if isinstance(cmd, Include):
        return f"@i {cmd.path}\n"
    raise TypeError(cmd)


def serialize_meaning_directive(ident, origin, type_markup):
    if isinstance(origin, ProgramSection):
        where = f"{{{origin.program}}}{origin.section}"
    else:
        where = f'"{origin.text}"'
    return f"@${ident} {where} {type_markup}@>"


# -- lexing -----------------------------------------------------------------

_WS = re.compile(r"[ \t\r\n\f\v]+")
_NUMBER = re.compile(r"\.?[0-9](?:[eEpP][+-]|[A-Za-z0-9_.])*")
_PUNCT = re.compile(
    r"->|\+\+|--|<<=|>>=|<<|>>|<=|>=|==|!=|&&|\|\||[-+*/%&^|]=|\.\.\.|##|."
)
_PREPROCESSOR = re.compile(r"#[ \t]*[A-Za-z]+")


def tokenize_code(fragment, section=0):
    """Lex a C-subset code fragment.

    Comments and string literals are single tokens.  Each token records the
    whitespace before it, so joining ``ws + lexeme`` rebuilds the fragment up
    to trailing whitespace.
    """
    tokens = []
    i = 0
    n = len(fragment)
    after_include = False

    def add(kind, end):
        nonlocal i, ws
        tokens.append(CodeToken(kind, fragment[i:end], (section, len(tokens)), ws))
        ws = ""
        i = end

    ws = ""
    while i < n:
        m = _WS.match(fragment, i)
        if m:
            ws += m.group()
            i = m.end()
            continue
        at_line_start = not tokens or "\n" in ws
        c = fragment[i]
        if after_include and c == "<":
            end = fragment.find(">", i)
            nl = fragment.find("\n", i)
            if end < 0 or (0 <= nl < end):
                raise UnterminatedString("unterminated <header> name", line=fragment.count("\n", 0, i) + 1)
            after_include = False
            add(STRING_LITERAL, end + 1)
            continue
        after_include = False
        if fragment.startswith("/*", i):
            end = fragment.find("*/", i + 2)
            if end < 0:
                raise UnterminatedComment("unterminated comment", line=fragment.count("\n", 0, i) + 1)
            add(COMMENT_TEXT, end + 2)
        elif fragment.startswith("//", i):
            end = fragment.find("\n", i)
            add(COMMENT_TEXT, n if end < 0 else end)
        elif c in "\"'":
            j = i + 1
            while j < n and fragment[j] != c:
                if fragment[j] == "\n":
                    break
                j += 2 if fragment[j] == "\\" else 1
            if j >= n or fragment[j] != c:
                raise UnterminatedString("unterminated literal", line=fragment.count("\n", 0, i) + 1)
            add(STRING_LITERAL if c == '"' else CONSTANT, j + 1)
        elif c == "@" and i + 1 < n:
            if fragment[i + 1] == "<":
                end = fragment.find("@>", i + 2)
                if end < 0:
                    raise UnterminatedDirective("@< without closing @>", line=fragment.count("\n", 0, i) + 1)
                end += 2
                if fragment.startswith("=", end):
                    end += 1
                add(PUNCTUATION, end)
            else:
                add(PUNCTUATION, i + 2)
        elif c == "#" and at_line_start and _PREPROCESSOR.match(fragment, i):
            m = _PREPROCESSOR.match(fragment, i)
            after_include = m.group().replace(" ", "").replace("\t", "") == "#include"
            add(PUNCTUATION, m.end())
        elif c.isdigit() or (c == "." and i + 1 < n and fragment[i + 1].isdigit()):
            add(CONSTANT, _NUMBER.match(fragment, i).end())
        elif c.isalpha() or c == "_":
            end = IDENT_RE.match(fragment, i).end()
            add(KEYWORD if fragment[i:end] in RESERVED else IDENTIFIER, end)
        else:
            add(PUNCTUATION, _PUNCT.match(fragment, i).end())
    return tokens


def reconstruct(tokens):
    return "".join(t.ws + t.lexeme for t in tokens)


def inline_spans(text):
    """Contents of the ``|...|`` code spans of commentary text."""
    spans = []
    i = 0
    while True:
        j = text.find("|", i)
        if j < 0:
            return spans
        k = text.find("|", j + 1)
        if k < 0:
            return spans
        spans.append(text[j + 1 : k])
        i = k + 1


# -- sections ---------------------------------------------------------------

_SECTION_START = re.compile(r"^@(?:[ \t*]|$)", re.M)
_CODE_START = re.compile(r"^(?:@[dc]|@<[^\n]*?@>=)", re.M)


def parse_source(text, program_name, filename=None):
    """Split LW text into numbered sections."""
    starts = [m.start() for m in _SECTION_START.finditer(text)]
    doc = SourceDocument(program_name)
    doc.limbo = text[: starts[0]] if starts else text
    for number, start in enumerate(starts, 1):
        end = starts[number] if number < len(starts) else len(text)
        starred = text.startswith("@*", start)
        body = text[start + 2 : end] if text[start + 1 : start + 2] in (" ", "\t", "*") else text[start + 1 : end]
        first_line = _line_of(text, start, 1)
        doc.sections.append(_parse_section(number, body, starred, first_line, filename))
    return doc


def _parse_section(number, body, starred, first_line, filename):
    stripped, found = scan_directives(body, filename, first_line)
    m = _CODE_START.search(stripped)
    split = m.start() if m else len(stripped)
    code_text = stripped[split:]
    try:
        tokens = tokenize_code(code_text, number)
    except ParseError as exc:
        raise type(exc)(exc.message, filename, first_line + stripped.count("\n", 0, split) + (exc.line or 1) - 1)
    offsets = []
    pos = 0
    for t in tokens:
        pos += len(t.ws)
        offsets.append(pos)
        pos += len(t.lexeme)
    controls = []
    for offset, cmd in found:
        if offset < split:
            position = TEXT_POSITION
        else:
            position = sum(1 for o in offsets if o < offset - split)
        controls.append(_with_position(cmd, position))
    return Section(
        number=number,
        text_part=stripped[:split].strip(),
        code_part=tuple(tokens),
        controls=tuple(controls),
        starred=starred,
        code_text=code_text,
        line=first_line,
    )


def _with_position(cmd, position):
    from dataclasses import replace

    return replace(cmd, position=position)


def serialize_source(doc):
    """LW text that parses back to a structurally equal document."""
    parts = [doc.limbo]
    for sec in doc.sections:
        parts.append("@*" if sec.starred else "@ ")
        text_controls = [c for c in sec.controls if c.position == TEXT_POSITION]
        parts.append(sec.text_part)
        if text_controls:
            parts.append("\n" + "".join(format_directive(c) for c in text_controls))
        parts.append("\n")
        code_controls = [c for c in sec.controls if c.position != TEXT_POSITION]
        k = 0
        for idx, tok in enumerate(sec.code_part):
            while k < len(code_controls) and code_controls[k].position <= idx:
                parts.append(format_directive(code_controls[k]))
                k += 1
            parts.append(tok.ws + tok.lexeme)
        for cmd in code_controls[k:]:
            parts.append(format_directive(cmd))
        parts.append("\n")
    return "".join(parts)


# -- includes ---------------------------------------------------------------

Resolver = Union[Mapping[str, str], Callable[[str], str]]


def _resolve(resolver, path):
    try:
        if callable(resolver):
            return resolver(path)
        return resolver[path]
    except (KeyError, FileNotFoundError, OSError):
        raise MissingInclude(f"cannot find include file {path}") from None


def expand_includes(text, resolver, filename=None, _stack=()):
    """Directives of a directive file, with ``@i`` lines expanded in place."""
    stack = _stack + (filename,)
    _, found = scan_directives(text, filename)
    result = []
    for _, cmd in found:
        if isinstance(cmd, Include):
            if cmd.path in stack:
                raise IncludeCycle(f"{cmd.path} includes itself", filename, cmd.line)
            result.extend(expand_includes(_resolve(resolver, cmd.path), resolver, cmd.path, stack))
        else:
            result.append(cmd)
    return result


def expand_section_includes(section: Section, resolver) -> Section:
    """Replace each Include control of a section with the included directives."""
    if not any(isinstance(c, Include) for c in section.controls):
        return section
    controls = []
    for cmd in section.controls:
        if isinstance(cmd, Include):
            for sub in expand_includes(_resolve(resolver, cmd.path), resolver, cmd.path):
                controls.append(_with_position(sub, cmd.position))
        else:
            controls.append(cmd)
    return Section(
        number=section.number,
        text_part=section.text_part,
        code_part=section.code_part,
        controls=tuple(controls),
        starred=section.starred,
        code_text=section.code_text,
        line=section.line,
    )


def identifiers(tokens: Iterable[CodeToken]):
    return [t.lexeme for t in tokens if t.kind == IDENTIFIER]
