"""Where a meaning comes from, plus the two distinguished type markers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

# Type markup for "no type available": rendered with no colon or equals sign.
ZIP = r"\zip"
# Type markup of an identifier nobody ever defined; rendered as "???".
UNINITIALIZED = r"\uninitialized"


@dataclass(frozen=True, order=True)
class ProgramSection:
    program: str
    section: int

    def __post_init__(self):
        if self.section < 0:
            raise ValueError("section numbers are non-negative")


@dataclass(frozen=True, order=True)
class LiteralLabel:
    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("a literal label cannot be empty")


Origin = Union[ProgramSection, LiteralLabel]


def section_of(origin: Origin, program: str) -> int | None:
    """Section number of `origin` if it points into `program`, else None."""
    if isinstance(origin, ProgramSection) and origin.program == program:
        return origin.section
    return None
