"""
Utility functions.

Errors, logging, environment parsing and project paths.
"""
