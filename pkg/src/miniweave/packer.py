"""Greedy assignment of consecutive sections to spreads.

Scheduled entries are bucketed by origin relative to the spread's first
section, the way the original macros kept them in a window of token
registers: one bucket for earlier sections, one per possible member,
one for sections beyond the window and one for external origins.
"""

from __future__ import annotations

import copy
import math
from dataclasses import dataclass, field

from .errors import WindowExceeded
from .origins import section_of

WINDOW = 20


@dataclass(frozen=True)
class LayoutConfig:
    mini_columns: int = 2
    mini_baseline: int = 1
    page_capacity: int = 60
    section_gap: int = 1
    rule_allowance: int = 1
    width: int = 80

    def __post_init__(self):
        for name in ("mini_columns", "mini_baseline", "page_capacity", "width"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("section_gap", "rule_allowance"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.page_capacity < self.rule_allowance + 1:
            raise ValueError("page_capacity must exceed rule_allowance")


def estimate_height(body_lines, n_entries, cfg: LayoutConfig, n_sections=1):
    """Body plus mini-index rows plus fixed spacing; one gap per boundary."""
    if body_lines < 0 or n_entries < 0:
        raise ValueError("inputs must be non-negative")
    rows = math.ceil(n_entries / cfg.mini_columns)
    gaps = cfg.section_gap * max(n_sections - 1, 0)
    return body_lines + rows * cfg.mini_baseline + cfg.rule_allowance + gaps


@dataclass
class SpreadState:
    program: str
    base: int | None = None
    members: list = field(default_factory=list)
    body_lines: int = 0
    pre: list = field(default_factory=list)
    offsets: list = field(default_factory=lambda: [[] for _ in range(WINDOW)])
    far: list = field(default_factory=list)
    ext: list = field(default_factory=list)
    identity_set: set = field(default_factory=set)
    # identities erased because their origin joined the spread
    erased: set = field(default_factory=set)

    @property
    def empty(self):
        return not self.members

    def buckets(self):
        yield self.pre
        yield from self.offsets
        yield self.far
        yield self.ext

    def scheduled(self):
        return [e for bucket in self.buckets() for e in bucket]

    def n_scheduled(self):
        return sum(len(b) for b in self.buckets())

    def bucket_for(self, entry):
        s = section_of(entry.origin, self.program)
        if s is None:
            return self.ext
        if s < self.base:
            return self.pre
        if s < self.base + WINDOW:
            return self.offsets[s - self.base]
        return self.far


@dataclass
class Spread:
    members: list
    body_height: int
    entries: list
    oversized: bool = False


@dataclass
class Fit:
    state: SpreadState


@dataclass
class Overflow:
    state: SpreadState


def try_append_section(state: SpreadState, section_no, body_lines, minis, cfg: LayoutConfig, force=False):
    """Tentatively add a section; commit only if the estimate fits.

    `minis` is a MiniOutput or any iterable of MiniEntry.  With `force` the
    section is committed regardless of height (used for oversized sections).
    """
    entries = getattr(minis, "entries", minis)
    if not state.empty:
        if section_no != state.members[-1] + 1:
            raise ValueError(f"section {section_no} does not follow {state.members[-1]}")
        if len(state.members) + 1 > WINDOW:
            raise WindowExceeded(f"a spread cannot hold more than {WINDOW} sections")
    new = copy.deepcopy(state)
    if new.empty:
        new.base = section_no
    new.members.append(section_no)
    new.body_lines += body_lines
    # (c) previously scheduled entries that refer to this section
    victims = new.offsets[section_no - new.base]
    for e in victims:
        new.identity_set.discard(e.identity)
        new.erased.add(e.identity)
    victims.clear()
    members = set(new.members)
    for e in entries:
        # (a) origin is a member section
        if section_of(e.origin, new.program) in members:
            continue
        # (b) already scheduled
        if e.identity in new.identity_set:
            continue
        new.identity_set.add(e.identity)
        new.bucket_for(e).append(e)
    height = estimate_height(new.body_lines, new.n_scheduled(), cfg, len(new.members))
    if height <= cfg.page_capacity or force:
        return Fit(new)
    return Overflow(state)


def finalize_spread(state: SpreadState, oversized=False) -> Spread:
    """Emit the pre-spread, far-member-offset, far-forward and external buckets.

    Buckets belonging to member sections are erased.  The returned spread
    carries no identity bookkeeping, so everything starts afresh.
    """
    if state.empty:
        raise ValueError("cannot finalize an empty spread")
    p = len(state.members)
    out = list(state.pre)
    for bucket in state.offsets[p:]:
        out.extend(bucket)
    out.extend(state.far)
    out.extend(state.ext)
    for bucket in state.offsets[:p]:
        for e in bucket:
            state.erased.add(e.identity)
    return Spread(list(state.members), state.body_lines, out, oversized)


@dataclass
class PackItem:
    section: int
    body_lines: int
    minis: list


def pack_document(items, cfg: LayoutConfig, program, legacy_1986=False):
    """Longest-fit packing of `items` (PackItem, in section order) into spreads.

    `legacy_1986` reproduces the historical bug where identities erased at
    the end of one spread stayed "defined" and suppressed entries in the
    next; it exists only so the regression can be demonstrated.
    """
    spreads = []
    state = SpreadState(program)
    carry = set()

    def fresh():
        s = SpreadState(program)
        if legacy_1986:
            s.identity_set |= carry
        return s

    def close(st):
        nonlocal carry
        height = estimate_height(st.body_lines, st.n_scheduled(), cfg, len(st.members))
        spreads.append(finalize_spread(st, oversized=height > cfg.page_capacity))
        carry = set(st.erased) if legacy_1986 else set()

    for item in items:
        if not state.empty:
            try:
                result = try_append_section(state, item.section, item.body_lines, item.minis, cfg)
            except WindowExceeded:
                result = Overflow(state)
            if isinstance(result, Fit):
                state = result.state
                continue
            close(state)
            state = fresh()
        # a section too tall for an empty spread gets one to itself anyway
        state = try_append_section(state, item.section, item.body_lines, item.minis, cfg, force=True).state
    if not state.empty:
        close(state)
    return spreads


def spread_height(spread: Spread, cfg: LayoutConfig):
    return estimate_height(spread.body_height, len(spread.entries), cfg, len(spread.members))
