"""Data package for bundled resources.

This package contains the report stylesheet and example benchmark
configurations that can be passed to ``sweep-hand bench``.
"""
