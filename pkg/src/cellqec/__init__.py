"""Topological CSS codes from cellulations of closed surfaces."""

__version__ = "0.1.0"
