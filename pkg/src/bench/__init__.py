"""Benchmark suite and runner."""
