"""Hypothesis strategies and small builders shared by the test modules."""

from hypothesis import strategies as st

from miniweave.minis import MiniEntry, ident_markup
from miniweave.origins import LiteralLabel, ProgramSection
from miniweave.packer import PackItem
from miniweave.refsort import RefFile

PROGRAM = "prog"

idents = st.sampled_from(["a", "b", "x", "I", "deg", "not_taken", "Vertex", "arcs", "Arc", "tip", "vertices", "v_2"])
types = st.sampled_from([r"\&{int}", r"=macro", r"=\&{struct}", r"\&{register} \&{Vertex} $*$", r"\zip", "label"])


def origins(max_section=15):
    return st.one_of(
        st.builds(ProgramSection, st.just(PROGRAM), st.integers(0, max_section)),
        st.builds(ProgramSection, st.sampled_from([r"GB\_GRAPH", "OTHER"]), st.integers(1, 30)),
        st.builds(LiteralLabel, st.sampled_from(["<stdio.h>", "<stdlib.h>"])),
    )


@st.composite
def entries(draw, max_section=15):
    name = draw(idents)
    t = draw(types)
    return MiniEntry(draw(origins(max_section)), ident_markup(name, t), t)


@st.composite
def ref_files(draw):
    numbers = sorted(draw(st.sets(st.integers(1, 40), max_size=6)))
    return RefFile([(n, draw(st.lists(entries(), max_size=8))) for n in numbers])


@st.composite
def documents(draw, max_sections=12, max_entries=6):
    """Random packer input: sections with body heights and mini-outputs.

    Entries never refer to their own section, as the emitter guarantees.
    """
    n = draw(st.integers(1, max_sections))
    items = []
    for s in range(1, n + 1):
        minis = []
        seen = set()
        for e in draw(st.lists(entries(max_section=n + 3), max_size=max_entries)):
            if e.origin == ProgramSection(PROGRAM, s) or e.identity in seen:
                continue
            seen.add(e.identity)
            minis.append(e)
        items.append(PackItem(s, draw(st.integers(1, 12)), minis))
    return items


def internal(section, name, t=r"\&{int}"):
    return MiniEntry(ProgramSection(PROGRAM, section), ident_markup(name, t), t)
