"""A literate-programming weaver with per-spread mini-indexes."""

__version__ = "0.1.0"
