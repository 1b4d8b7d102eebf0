"""
Core fortcover functionality.

Graph model, junction partition, color-change engines, instance catalog, config and CLI.
"""
