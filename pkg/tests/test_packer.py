import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from miniweave.errors import WindowExceeded
from miniweave.minis import MiniEntry
from miniweave.origins import LiteralLabel, ProgramSection, section_of
from miniweave.packer import (
    Fit,
    LayoutConfig,
    Overflow,
    PackItem,
    SpreadState,
    estimate_height,
    finalize_spread,
    pack_document,
    spread_height,
    try_append_section,
)
from miniweave.ham.corpus import HAM_LAYOUT

from ham_fixtures import HAM_BODIES, ham_minis
from packer_oracle import greedy_partition, spread_entries
from strategies import PROGRAM, documents, internal

def append_all(state, numbers, cfg=HAM_LAYOUT):
    for n in numbers:
        res = try_append_section(state, n, HAM_BODIES[n], ham_minis(n), cfg)
        assert isinstance(res, Fit)
        state = res.state
    return state


class TestEstimate:
    def test_empty(self):
        assert estimate_height(0, 0, LayoutConfig(rule_allowance=3)) == 3

    def test_formula(self):
        cfg = LayoutConfig(mini_columns=2, mini_baseline=1, rule_allowance=1, section_gap=0)
        assert estimate_height(40, 8, cfg) == 45

    def test_ceiling(self):
        cfg = LayoutConfig(mini_columns=3, rule_allowance=0)
        assert estimate_height(0, 7, cfg) == 3

    def test_gaps_per_boundary(self):
        cfg = LayoutConfig(section_gap=2, rule_allowance=0)
        assert estimate_height(0, 0, cfg, n_sections=1) == 0
        assert estimate_height(0, 0, cfg, n_sections=4) == 6

    def test_validation(self):
        with pytest.raises(ValueError):
            estimate_height(-1, 0, LayoutConfig())
        with pytest.raises(ValueError):
            LayoutConfig(mini_columns=0)
        with pytest.raises(ValueError):
            LayoutConfig(section_gap=-1)


class TestAppend:
    def test_section_10_merge(self):
        state = append_all(SpreadState("ham"), [8, 9])
        before = {e.identity for e in state.scheduled()}
        res = try_append_section(state, 10, HAM_BODIES[10], ham_minis(10), HAM_LAYOUT)
        assert isinstance(res, Fit)
        added = [e for e in res.state.scheduled() if e.identity not in before]
        assert sorted(e.ident for e in added) == ["advance", "ark"]

    def test_section_11_overflows(self):
        state = append_all(SpreadState("ham"), [8, 9, 10])
        res = try_append_section(state, 11, HAM_BODIES[11], ham_minis(11), HAM_LAYOUT)
        assert isinstance(res, Overflow) and res.state is state
        assert state.members == [8, 9, 10]

    def test_member_origin_dropped(self):
        state = try_append_section(SpreadState(PROGRAM), 6, 3, [], LayoutConfig()).state
        incoming = [internal(6, "vert"), internal(6, "ark"), internal(2, "v")]
        new = try_append_section(state, 7, 3, incoming, LayoutConfig()).state
        assert [e.ident for e in new.scheduled()] == ["v"]

    def test_scheduled_entries_erased_when_origin_joins(self):
        state = try_append_section(SpreadState(PROGRAM), 1, 1, [internal(2, "k")], LayoutConfig()).state
        new = try_append_section(state, 2, 1, [], LayoutConfig()).state
        assert new.scheduled() == [] and new.identity_set == set()
        assert finalize_spread(new).entries == []

    def test_overflow_rolls_back(self):
        cfg = LayoutConfig(page_capacity=4, mini_columns=1)
        state = try_append_section(SpreadState(PROGRAM), 1, 1, [internal(2, "k")], cfg).state
        snapshot = (list(state.members), state.scheduled(), set(state.identity_set))
        res = try_append_section(state, 2, 5, [internal(9, "z")], cfg)
        assert isinstance(res, Overflow)
        assert (state.members, state.scheduled(), state.identity_set) == snapshot

    def test_not_consecutive(self):
        state = try_append_section(SpreadState(PROGRAM), 1, 1, [], LayoutConfig()).state
        with pytest.raises(ValueError):
            try_append_section(state, 3, 1, [], LayoutConfig())

    def test_window(self):
        state = SpreadState(PROGRAM)
        cfg = LayoutConfig(page_capacity=10_000)
        for n in range(1, 21):
            state = try_append_section(state, n, 1, [], cfg).state
        with pytest.raises(WindowExceeded):
            try_append_section(state, 21, 1, [], cfg)


class TestFinalize:
    def test_external_only(self):
        ext = MiniEntry(LiteralLabel("<stdio.h>"), r"\\{printf}", r"\&{int} (\,)")
        state = SpreadState(PROGRAM)
        for n in (1, 2, 3):
            state = try_append_section(state, n, 1, [ext], LayoutConfig()).state
        assert finalize_spread(state).entries == [ext]

    def test_bucket_order(self):
        ext = MiniEntry(ProgramSection("G", 1), r"\|{z}", r"\&{int}")
        items = [internal(40, "far"), ext, internal(9, "later"), internal(1, "early")]
        state = try_append_section(SpreadState(PROGRAM), 5, 1, items, LayoutConfig()).state
        assert [e.ident for e in finalize_spread(state).entries] == ["early", "later", "far", "z"]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            finalize_spread(SpreadState(PROGRAM))


def bug_fixture():
    """Section 2 uses k (origin 3) and joins a spread that then erases it when
    section 3 arrives; section 4, in the next spread, uses k again."""
    k = internal(3, "k")
    cfg = LayoutConfig(page_capacity=4, mini_columns=1, rule_allowance=0, section_gap=0)
    return [PackItem(1, 1, []), PackItem(2, 1, [k]), PackItem(3, 1, []), PackItem(4, 3, [k])], cfg, k


class TestPackDocument:
    def test_degenerate_capacity(self):
        cfg = LayoutConfig(page_capacity=3, rule_allowance=1)
        spreads = pack_document([PackItem(n, 2, []) for n in range(1, 5)], cfg, PROGRAM)
        assert [s.members for s in spreads] == [[1], [2], [3], [4]]

    def test_oversized(self):
        cfg = LayoutConfig(page_capacity=5)
        spreads = pack_document([PackItem(1, 2, []), PackItem(2, 50, []), PackItem(3, 1, [])], cfg, PROGRAM)
        assert [s.members for s in spreads] == [[1], [2], [3]]
        assert [s.oversized for s in spreads] == [False, True, False]

    def test_1986_regression(self):
        items, cfg, k = bug_fixture()
        fixed = pack_document(items, cfg, PROGRAM)
        assert [s.members for s in fixed] == [[1, 2, 3], [4]]
        assert fixed[1].entries == [k]
        legacy = pack_document(items, cfg, PROGRAM, legacy_1986=True)
        assert [s.members for s in legacy] == [[1, 2, 3], [4]]
        assert legacy[1].entries == []

    def test_non_optimality(self):
        # 100 and 101 refer to six things 102 defines: together they overflow,
        # all three together would fit, and greedy still splits
        cfg = LayoutConfig(page_capacity=7, mini_columns=1, rule_allowance=0, section_gap=0)
        refs = [internal(102, f"v{i}") for i in range(6)]
        items = [PackItem(100, 1, refs[:3]), PackItem(101, 1, refs[3:]), PackItem(102, 1, [])]
        spreads = pack_document(items, cfg, PROGRAM)
        assert [s.members for s in spreads] == [[100], [101, 102]]
        state = SpreadState(PROGRAM)
        for it in items:
            state = try_append_section(state, it.section, it.body_lines, it.minis, cfg, force=True).state
        assert spread_height(finalize_spread(state), cfg) <= cfg.page_capacity

    def test_ham_corpus(self, ham_run1):
        assert [s.members for s in ham_run1.spreads] == [[1, 2], [3, 4, 5], [6, 7], [8, 9, 10], [11]]


layouts = st.builds(
    LayoutConfig,
    mini_columns=st.integers(1, 3),
    mini_baseline=st.integers(1, 2),
    page_capacity=st.integers(8, 40),
    section_gap=st.integers(0, 2),
    rule_allowance=st.integers(0, 2),
)


@settings(max_examples=300)
@given(documents(), layouts)
def test_packing_properties(items, cfg):
    spreads = pack_document(items, cfg, PROGRAM)
    by_section = {it.section: it for it in items}
    assert [m for s in spreads for m in s.members] == [it.section for it in items]
    for k, s in enumerate(spreads):
        members = set(s.members)
        assert all(section_of(e.origin, PROGRAM) not in members for e in s.entries)
        assert len({e.identity for e in s.entries}) == len(s.entries)
        if not s.oversized:
            assert spread_height(s, cfg) <= cfg.page_capacity
        else:
            assert len(s.members) == 1
        if k + 1 < len(spreads):
            nxt = by_section[spreads[k + 1].members[0]]
            state = SpreadState(PROGRAM)
            for m in s.members:
                it = by_section[m]
                state = try_append_section(state, m, it.body_lines, it.minis, cfg, force=True).state
            try:
                assert isinstance(try_append_section(state, nxt.section, nxt.body_lines, nxt.minis, cfg), Overflow)
            except WindowExceeded:
                pass
        assert {e.identity for e in s.entries} == spread_entries([by_section[m] for m in s.members], PROGRAM)
    assert [s.members for s in spreads] == [[it.section for it in g] for g in greedy_partition(items, PROGRAM, cfg)]
