import pytest
from hypothesis import given, settings

from miniweave.errors import EntryBeforeSpread, NonMonotoneSpreadNumbers, RefFormatError, UnparseableEntry
from miniweave.minis import parse_entry
from miniweave.refsort import (
    RefFile,
    collation_key,
    parse_ref,
    parse_sref,
    refsort_text,
    serialize_ref,
    serialize_sref,
    sort_ref,
    sort_spread,
)

from strategies import PROGRAM, ref_files

U = r"\]{GB\_GRAPH}9 \|{u} \&{util}"
VERTEX = r"\]{GB\_GRAPH}9 \&{Vertex} =\&{struct}"


def e(line, program="ham"):
    return parse_entry(line, program)


class TestParse:
    def test_spread_with_entry_then_empty(self):
        ref = parse_ref(f"!1\n+ {U}\n!2\n", "ham")
        assert ref.spreads == [(1, [e(U)]), (2, [])]

    def test_empty(self):
        assert parse_ref("", "ham").spreads == []

    def test_entry_first(self):
        with pytest.raises(EntryBeforeSpread):
            parse_ref(f"+ {U}\n", "ham")

    def test_non_monotone(self):
        with pytest.raises(NonMonotoneSpreadNumbers):
            parse_ref("!2\n!2\n", "ham")
        with pytest.raises(NonMonotoneSpreadNumbers):
            RefFile([(3, []), (1, [])])

    def test_bad_lines(self):
        with pytest.raises(UnparseableEntry) as info:
            parse_ref("!1\n+ junk\n", "ham", "ham.ref")
        assert info.value.line == 2
        with pytest.raises(UnparseableEntry):
            parse_ref("!1\nstray\n", "ham")
        with pytest.raises(RefFormatError):
            parse_ref("!x\n", "ham")

    def test_sref_trailing_entries(self):
        with pytest.raises(RefFormatError):
            parse_sref(f"{U}\n\\donewithpage1\n{U}\n", "ham")


class TestSort:
    def test_u_before_vertex(self):
        assert sort_spread([e(VERTEX), e(U)], "ham") == [e(U), e(VERTEX)]

    def test_spec_example(self):
        ents = [
            e(r"\]{GB\_GRAPH}20 \\{vertices} \&{Vertex} $*$"),
            e(r"\[2 \|{a} \&{register} \&{Arc} $*$"),
            e(r"\]{GB\_GRAPH}10 \&{Arc} =\&{struct}"),
        ]
        assert [x.ident for x in sort_spread(ents, "ham")] == ["a", "Arc", "vertices"]

    def test_underscores_ignored_in_primary(self):
        a = e(r"\[4 \\{not\_taken} =macro (\,)")
        b = e(r"\[2 \\{notes} \&{int}")
        assert [x.ident for x in sort_spread([b, a], "ham")] == ["notes", "not_taken"]

    def test_external_before_internal_on_ties(self):
        ext = e(r"\]{GB\_GRAPH}9 \|{v} \&{util}")
        own = e(r"\[2 \|{v} \&{register} \&{Vertex} $*$")
        assert sort_spread([own, ext], "ham") == [ext, own]
        assert collation_key(own, "ham")[2] == (1, "", 2)

    def test_sorted_unchanged(self):
        ents = [e(U), e(VERTEX)]
        assert sort_spread(ents, "ham") == ents


class TestSerialize:
    def test_quoted_ref_lines(self):
        ref = RefFile(
            [
                (
                    1,
                    [
                        e(r"\]{GB\_SAVE}4 \\{restore\_graph} \&{Graph} $*(\,)$"),
                        e(U),
                        e(r"\]{GB\_GRAPH}8 \|{I} \&{long}"),
                    ],
                ),
                (2, [e(r'\]"<stdio.h>" \\{printf} \&{int} (\,)')]),
            ]
        )
        assert serialize_ref(ref, "ham").splitlines() == [
            "!1",
            r"+ \]{GB\_SAVE}4 \\{restore\_graph} \&{Graph} $*(\,)$",
            r"+ \]{GB\_GRAPH}9 \|{u} \&{util}",
            r"+ \]{GB\_GRAPH}8 \|{I} \&{long}",
            "!2",
            r'+ \]"<stdio.h>" \\{printf} \&{int} (\,)',
        ]

    def test_quoted_sref_lines(self):
        ref = RefFile(
            [
                (1, [e(r"\]{GB\_GRAPH}10 \&{Arc} =\&{struct}"), e(U), e(VERTEX)]),
                (5, [e(r"\[2 \|{a} \&{register} \&{Arc} $*$"), e(r"\]{GB\_GRAPH}20 \\{vertices} \&{Vertex} $*$")]),
            ]
        )
        assert serialize_sref(ref, "ham").splitlines() == [
            r"\]{GB\_GRAPH}10 \&{Arc} =\&{struct}",
            U,
            VERTEX,
            r"\donewithpage1",
            r"\[2 \|{a} \&{register} \&{Arc} $*$",
            r"\]{GB\_GRAPH}20 \\{vertices} \&{Vertex} $*$",
            r"\donewithpage5",
        ]

    def test_empty(self):
        assert serialize_sref(RefFile(), "ham") == ""

    def test_ham_sorted_file(self, ham_run1):
        sref = refsort_text(ham_run1.ref_text, "ham").splitlines()
        assert sref[sref.index(r"\donewithpage1") - 2 : sref.index(r"\donewithpage1") + 1] == [U, VERTEX, r"\donewithpage1"]
        assert sref[-1] == r"\donewithpage5"
        assert sref[sref.index(r"\donewithpage4") + 1] == r"\[2 \|{a} \&{register} \&{Arc} $*$"
        assert sref[-2] == r"\]{GB\_GRAPH}20 \\{vertices} \&{Vertex} $*$"


def multiset(entries):
    return sorted(map(repr, entries))


@settings(max_examples=200)
@given(ref_files())
def test_refsort_properties(ref):
    assert parse_ref(serialize_ref(ref, PROGRAM), PROGRAM) == ref
    assert parse_sref(serialize_sref(ref, PROGRAM), PROGRAM) == ref
    once = sort_ref(ref, PROGRAM)
    assert sort_ref(once, PROGRAM) == once
    for (n, before), (m, after) in zip(ref.spreads, once.spreads):
        assert n == m and multiset(before) == multiset(after)
        keys = [collation_key(x, PROGRAM) for x in after]
        assert keys == sorted(keys)
