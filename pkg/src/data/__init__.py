"""
Bundled data (grid instances, bench suite, sample CNF) and table export.
"""

from .export import export_table

__all__ = ["export_table"]
