"""Exact size statistics of (s, s+1)-core partitions into distinct parts."""

__version__ = "0.1.0"
