"""Current meanings of identifiers and the files that carry them.

Every identifier has exactly one current meaning at a time.  Meanings are
seeded from ``system.bux``, the previous run's ``.aux`` and the user's
``.bux`` (in that order), and change sequentially as sections are read:
there is no block structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .origins import UNINITIALIZED, ZIP, Origin, ProgramSection
from .source import (
    COMMENT_TEXT,
    IDENTIFIER,
    KEYWORD,
    PUNCTUATION,
    Include,
    JoinHint,
    MeaningDirective,
    Section,
    Suppress,
    ToggleTemporary,
    expand_includes,
    serialize_meaning_directive,
)


@dataclass(frozen=True)
class Meaning:
    ident: str
    origin: Origin
    type_markup: str

    def __post_init__(self):
        if not self.ident:
            raise ValueError("empty identifier")
        if not self.type_markup:
            raise ValueError("empty type markup")

    @property
    def is_zip(self):
        return self.type_markup == ZIP

    @property
    def is_equation(self):
        return self.type_markup.startswith("=")

    @property
    def is_typedef(self):
        return self.type_markup.startswith(r"=\&{")


class MeaningTable:
    """Map from identifier to current meaning, with the ``???, §0`` fallback."""

    def __init__(self, program, bindings=None):
        self.program = program
        self.bindings = dict(bindings or {})

    def lookup(self, ident) -> Meaning:
        found = self.bindings.get(ident)
        if found is None:
            return Meaning(ident, ProgramSection(self.program, 0), UNINITIALIZED)
        return found

    def set(self, meaning: Meaning):
        self.bindings[meaning.ident] = meaning

    def is_typedef_name(self, ident):
        found = self.bindings.get(ident)
        return found is not None and found.is_typedef

    def copy(self):
        return MeaningTable(self.program, self.bindings)

    def __contains__(self, ident):
        return ident in self.bindings

    def __len__(self):
        return len(self.bindings)

    def __eq__(self, other):
        return isinstance(other, MeaningTable) and (self.program, self.bindings) == (
            other.program,
            other.bindings,
        )


@dataclass
class SectionIndexState:
    suppressed: set = field(default_factory=set)
    temporaries: list = field(default_factory=list)
    temporary: bool = False
    used: list = field(default_factory=list)


def load_meaning_files(program, system_bux=None, aux=None, bux=None, resolver=None, names=("system.bux", None, None)):
    """Build the initial table: system.bux, then aux, then bux."""
    table = MeaningTable(program)
    resolver = resolver if resolver is not None else {}
    for text, name in zip((system_bux, aux, bux), names):
        if text is None:
            continue
        for cmd in expand_includes(text, resolver, name):
            if isinstance(cmd, MeaningDirective):
                table.set(Meaning(cmd.ident, cmd.origin, cmd.type_markup))
    return table


def apply_directive(table, state, cmd, current_section, aux_records=None):
    """Apply one control command; returns ``(table, state)``.

    A permanent ``@$`` also appends to `aux_records` when a list is given.
    """
    if isinstance(cmd, MeaningDirective):
        meaning = Meaning(cmd.ident, cmd.origin, cmd.type_markup)
        if state.temporary:
            state.temporaries.append(meaning)
        else:
            table.set(meaning)
            if aux_records is not None:
                _record(aux_records, meaning)
    elif isinstance(cmd, Suppress):
        state.suppressed.add(cmd.ident)
    elif isinstance(cmd, ToggleTemporary):
        state.temporary = not state.temporary
    elif isinstance(cmd, (JoinHint, Include)):
        pass
    else:
        raise TypeError(f"not a control command: {cmd!r}")
    return table, state


def _record(aux_records, meaning):
    # the same meaning written twice in a row for one identifier is said once
    for prev in reversed(aux_records):
        if prev.ident == meaning.ident:
            if prev == meaning:
                return
            break
    aux_records.append(meaning)


# -- implicit definitions ---------------------------------------------------

STORAGE = ("register", "static", "extern", "auto")
QUALIFIERS = ("const", "volatile")
BASE_TYPES = ("void", "char", "short", "int", "long", "float", "double", "signed", "unsigned")
TAGGED = ("struct", "union", "enum")


@dataclass(frozen=True)
class Definition:
    ident: str
    type_markup: str
    index: int  # token index the definition is anchored at


def _bold(word):
    return rf"\&{{{word}}}"


def _declarator_suffix(stars, arrays, function):
    if not (stars or arrays or function):
        return ""
    if function and not arrays:
        if stars:
            return " $" + "*" * stars + r"(\,)$"
        return r" (\,)"
    math = "*" * stars
    if arrays and stars:
        math = "{" + math + "}"
    math += r"[\,]" * arrays
    if function:
        math += r"(\,)"
    return f" ${math}$"


def _escape(ident):
    return ident.replace("_", r"\_")


def _is(tok, lexeme):
    return tok is not None and tok.kind in (PUNCTUATION, KEYWORD) and tok.lexeme == lexeme


def _is_region_start(tok):
    return tok is not None and tok.kind == PUNCTUATION and (
        tok.lexeme in ("@d", "@c") or (tok.lexeme.startswith("@<") and tok.lexeme.endswith("@>="))
    )


def _is_define(tok):
    return tok.kind == PUNCTUATION and tok.lexeme.replace(" ", "").replace("\t", "") == "#define"


class _Detector:
    """Recursive-descent scan for defining occurrences in a token list."""

    def __init__(self, tokens, table):
        self.items = [(i, t) for i, t in enumerate(tokens) if t.kind != COMMENT_TEXT]
        self.k = 0
        self.table = table
        self.typedefs = set()
        self.found = []

    # cursor
    def peek(self, ahead=0):
        k = self.k + ahead
        return self.items[k][1] if k < len(self.items) else None

    def index(self):
        return self.items[self.k][0] if self.k < len(self.items) else None

    def next(self):
        tok = self.peek()
        self.k += 1
        return tok

    def done(self):
        return self.k >= len(self.items)

    def is_typedef_name(self, ident):
        return ident in self.typedefs or self.table.is_typedef_name(ident)

    def is_type_start(self, tok):
        if tok is None:
            return False
        if tok.kind == KEYWORD:
            return tok.lexeme in STORAGE + QUALIFIERS + BASE_TYPES + TAGGED + ("typedef",)
        return tok.kind == IDENTIFIER and self.is_typedef_name(tok.lexeme)

    def skip_balanced(self, open_, close):
        depth = 0
        while not self.done():
            tok = self.peek()
            if _is_region_start(tok):
                return
            self.next()
            if _is(tok, open_):
                depth += 1
            elif _is(tok, close):
                depth -= 1
                if depth == 0:
                    return

    # grammar
    def specifiers(self):
        words = []
        has_base = False
        is_typedef = False
        tagged = None
        while True:
            tok = self.peek()
            if tok is None:
                break
            if _is(tok, "typedef"):
                is_typedef = True
            elif tok.kind == KEYWORD and tok.lexeme in STORAGE + QUALIFIERS:
                words.append(_bold(tok.lexeme))
            elif tok.kind == KEYWORD and tok.lexeme in BASE_TYPES:
                words.append(_bold(tok.lexeme))
                has_base = True
            elif tok.kind == KEYWORD and tok.lexeme in TAGGED:
                self.next()
                tagged = tok.lexeme
                words.append(_bold(tok.lexeme))
                tag = self.peek()
                if tag is not None and tag.kind == IDENTIFIER:
                    words.append(rf"\\{{{_escape(tag.lexeme)}}}")
                    self.next()
                if _is(self.peek(), "{"):
                    self.skip_balanced("{", "}")
                has_base = True
                continue
            elif (
                tok.kind == IDENTIFIER
                and not has_base
                and self.is_typedef_name(tok.lexeme)
                and not _is(self.peek(1), "(")
                and not _is(self.peek(1), "=")
            ):
                words.append(_bold(tok.lexeme))
                has_base = True
            else:
                break
            self.next()
        if not has_base:
            return None
        return words, is_typedef, tagged

    def declarator(self):
        stars = 0
        while _is(self.peek(), "*") or _is(self.peek(), "const"):
            if self.next().lexeme == "*":
                stars += 1
        grouped = False
        if _is(self.peek(), "(") and _is(self.peek(1), "*"):
            self.next()
            while _is(self.peek(), "*"):
                self.next()
                stars += 1
            grouped = True
        tok = self.peek()
        if tok is None or tok.kind != IDENTIFIER:
            return None
        name_index = self.index()
        self.next()
        if grouped:
            if not _is(self.peek(), ")"):
                return None
            self.next()
        arrays = 0
        params = None
        while True:
            if _is(self.peek(), "["):
                self.skip_balanced("[", "]")
                arrays += 1
            elif _is(self.peek(), "("):
                start = self.k
                self.skip_balanced("(", ")")
                if params is None:
                    params = (start + 1, self.k - 1)
            else:
                break
        return tok.lexeme, stars, arrays, params, name_index

    def skip_initializer(self):
        depth = 0
        while not self.done():
            tok = self.peek()
            if _is_region_start(tok):
                return
            if tok.kind == PUNCTUATION and tok.lexeme in ("(", "[", "{"):
                depth += 1
            elif tok.kind == PUNCTUATION and tok.lexeme in (")", "]", "}"):
                if depth == 0:
                    return
                depth -= 1
            elif depth == 0 and tok.kind == PUNCTUATION and tok.lexeme in (",", ";"):
                return
            self.next()

    def declaration(self):
        """Consume one declaration at the cursor; False (cursor unmoved) if none."""
        save = self.k
        spec = self.specifiers()
        if spec is None:
            self.k = save
            return False
        words, is_typedef, tagged = spec
        pending = []
        while True:
            d = self.declarator()
            if d is None:
                break
            name, stars, arrays, params, name_index = d
            function = params is not None
            if is_typedef:
                if tagged and not (stars or arrays or function):
                    markup = "=" + _bold(tagged)
                else:
                    markup = "=" + " ".join(words) + _declarator_suffix(stars, arrays, function)
                self.typedefs.add(name)
            else:
                markup = " ".join(words) + _declarator_suffix(stars, arrays, function)
                if function and not (_is(self.peek(), ",") or _is(self.peek(), ";")):
                    self.found.extend(pending)
                    self.function_definition(name, markup, params)
                    return True
            pending.append(Definition(name, markup, name_index))
            if _is(self.peek(), "="):
                self.next()
                self.skip_initializer()
            if _is(self.peek(), ","):
                self.next()
                continue
            break
        if _is(self.peek(), ";"):
            self.next()
        self.found.extend(pending)
        return True

    def parameters(self, span):
        """Declarations inside a prototype's parentheses."""
        start, end = span
        saved = self.items, self.k
        self.items, self.k = self.items[start:end], 0
        while not self.done():
            if not self.declaration():
                self.next()
        self.items, self.k = saved

    def function_definition(self, name, markup, params):
        if params is not None:
            self.parameters(params)
        # K&R parameter declarations sit between the head and the body
        while not self.done() and not _is(self.peek(), "{"):
            tok = self.peek()
            if _is_region_start(tok):
                return
            if not (self.is_type_start(tok) and self.declaration()):
                self.next()
        if _is(self.peek(), "{"):
            self.found.append(Definition(name, markup, self.index()))

    def untyped_function(self):
        """``name(args)`` followed by K&R declarations or a body: implicit int."""
        save = self.k
        name = self.next()
        start = self.k
        self.skip_balanced("(", ")")
        params = (start + 1, self.k - 1)
        follow = self.peek()
        if _is(follow, "{") or (self.is_type_start(follow) and not _is(follow, "typedef")):
            self.function_definition(name.lexeme, _bold("int") + r" (\,)", params)
            return True
        self.k = save
        return False

    def macro(self):
        name = self.peek()
        if name is not None and name.kind == IDENTIFIER:
            paren = self.peek(1)
            args = _is(paren, "(") and paren.ws == ""
            self.found.append(Definition(name.lexeme, r"=macro (\,)" if args else "=macro", self.index()))
            self.next()

    def run(self):
        statement_start = True
        in_macro = False
        braces = parens = 0
        while not self.done():
            tok = self.peek()
            if _is_region_start(tok):
                self.next()
                in_macro = tok.lexeme == "@d"
                statement_start = True
                braces = parens = 0
                if in_macro:
                    self.macro()
                continue
            if in_macro:
                self.next()
                continue
            if tok.kind == PUNCTUATION and tok.lexeme.startswith("#"):
                self.next()
                if _is_define(tok):
                    self.macro()
                while not self.done() and "\n" not in self.peek().ws:
                    self.next()
                statement_start = True
                continue
            if statement_start and parens == 0:
                if tok.kind == IDENTIFIER and _is(self.peek(1), ":") and not _is(self.peek(2), ":"):
                    self.found.append(Definition(tok.lexeme, "label", self.index()))
                    self.next()
                    self.next()
                    continue
                if self.is_type_start(tok) and self.declaration():
                    continue
                if braces == 0 and tok.kind == IDENTIFIER and _is(self.peek(1), "(") and self.untyped_function():
                    continue
            self.next()
            if tok.kind == PUNCTUATION:
                if tok.lexeme == "(":
                    parens += 1
                elif tok.lexeme == ")":
                    parens = max(parens - 1, 0)
                elif tok.lexeme == "{":
                    braces += 1
                elif tok.lexeme == "}":
                    braces = max(braces - 1, 0)
            statement_start = parens == 0 and (
                tok.kind == PUNCTUATION and (tok.lexeme in (";", "{", "}") or tok.lexeme.startswith("@<"))
            )
        self.found.sort(key=lambda d: d.index)
        return self.found


def detect_definitions(section: Section, table: MeaningTable):
    """Implicit definitions in a section's code, in token order.

    Recognized: ``@d``/``#define`` macros, typedefs, declarations of the
    form *storage? base-type declarator-list*, function definitions and
    statement labels.  A function definition is anchored at the brace that
    opens its body, after any K&R parameter declarations.
    """
    return _Detector(section.code_part, table).run()


# -- per-section processing -------------------------------------------------


def process_section(table: MeaningTable, section: Section):
    """Apply the section's directives and implicit definitions in order.

    Returns ``(aux_records, state)``; `table` is updated in place.
    """
    state = SectionIndexState()
    records = []
    events = [((cmd.position, 0, n), cmd) for n, cmd in enumerate(section.controls)]
    events += [((d.index, 1, n), d) for n, d in enumerate(detect_definitions(section, table))]
    events.sort(key=lambda e: e[0])
    here = ProgramSection(table.program, section.number)
    for _, event in events:
        if isinstance(event, Definition):
            if event.ident in state.suppressed:
                present = table.lookup(event.ident)
                if present.type_markup != UNINITIALIZED:
                    _record(records, present)
            else:
                meaning = Meaning(event.ident, here, event.type_markup)
                table.set(meaning)
                _record(records, meaning)
        else:
            apply_directive(table, state, event, section.number, records)
    return records, state


def serialize_aux(records: Iterable[Meaning]) -> str:
    return "".join(
        serialize_meaning_directive(m.ident, m.origin, m.type_markup) + "\n" for m in records
    )


def parse_aux(text, resolver=None, filename=None):
    """Meanings listed in a directive file, includes expanded."""
    return [
        Meaning(cmd.ident, cmd.origin, cmd.type_markup)
        for cmd in expand_includes(text, resolver if resolver is not None else {}, filename)
        if isinstance(cmd, MeaningDirective)
    ]
